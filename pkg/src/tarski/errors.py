"""Typed failures raised across the toolkit.

Every error the CLI treats as a "typed failure" (exit code 2) derives from
:class:`TarskiError`; the class name is what gets reported.
"""


class TarskiError(Exception):
    """Base class for all typed failures."""

    @property
    def name(self):
        return type(self).__name__


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagreed.

    Not a TarskiError: this signals a bug, not bad input.
    """


# boolean algebras
class InvalidLetter(TarskiError, ValueError):
    pass


class ArityMismatch(TarskiError, ValueError):
    pass


class ZeroIdempotent(TarskiError, ValueError):
    pass


class ZeroClopen(ZeroIdempotent):
    pass


class IncompatibleCounts(TarskiError, ValueError):
    pass


class AtomObstruction(TarskiError):
    """A construction needs to split an atom, which finite models cannot do."""


# inverse monoid calculus
class IncompatibleParts(TarskiError, ValueError):
    def __init__(self, i, j, msg=None):
        self.pair = (i, j)
        super().__init__(msg or f"parts {i} and {j} are not compatible")


class NotInfinitesimal(TarskiError, ValueError):
    pass


class NotTwoInfinitesimal(TarskiError, ValueError):
    pass


class NotAUnit(TarskiError, ValueError):
    pass


class NotAnInvolution(TarskiError, ValueError):
    pass


class ZeroElement(TarskiError, ValueError):
    pass


# Cuntz model
class ComparableWords(TarskiError, ValueError):
    pass


class NotExtendable(TarskiError, ValueError):
    """A partial map cannot lie beneath any unit (e.g. whole space into a cylinder)."""


class PointOutsideDomain(TarskiError, ValueError):
    pass


class GermsNotComposable(TarskiError, ValueError):
    pass


class NotInjective(TarskiError, ValueError):
    pass


# witnesses
class NotBelowSupport(TarskiError, ValueError):
    pass


class SearchExhausted(TarskiError):
    pass


class PreconditionViolated(TarskiError, ValueError):
    pass


class InfiniteGroup(TarskiError):
    pass


# reconstruction
class _Witnessed(TarskiError):
    def __init__(self, msg, witness=None):
        self.witness = witness
        super().__init__(msg)


class SkeletonNotUltrafilter(_Witnessed):
    pass


class EquivarianceFailure(_Witnessed):
    pass


class OrderTransferFailure(_Witnessed):
    pass


class NotAnIsomorphism(_Witnessed):
    pass


class NotAHomomorphism(_Witnessed):
    pass


class ParseError(TarskiError, ValueError):
    def __init__(self, msg, position=None):
        self.position = position
        if position is not None:
            msg = f"{msg} (at position {position})"
        super().__init__(msg)
