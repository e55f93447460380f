"""Boolean inverse meet-monoids: finite symmetric and Cuntz models, support
calculus, axiom witnesses and reconstruction of monoids from unit groups."""
from .boolean import Clopen, FiniteSet, ProductSet, canonical_words, equalize
from .core import Model
from .cuntz import CuntzModel, Germ, Point, PrefixBijection
from .errors import TarskiError
from .reconstruction import GroupIso, reconstruct
from .symmetric import PartialPerm, ProductModel, SymmetricModel

__all__ = [
    "Clopen", "FiniteSet", "ProductSet", "canonical_words", "equalize",
    "Model", "CuntzModel", "Germ", "Point", "PrefixBijection", "TarskiError",
    "GroupIso", "reconstruct", "PartialPerm", "ProductModel", "SymmetricModel",
]
__version__ = "0.1.0"
