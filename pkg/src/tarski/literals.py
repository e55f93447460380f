"""Model selection, element literals and a small expression language.

Grammar (loosest binding first)::

    expr    := meet ('|' meet)*
    meet    := product ('&' product)*
    product := postfix ('*' postfix)*
    postfix := primary ('^-1')*
    primary := literal | name '(' expr (',' expr)* ')' | '(' expr ')'

Literals follow the active model: ``{u->v, ...}``, ``0``, ``1`` and clopens
``{u, ...}`` for C_n; ``[x:y, ...]`` and sets ``{i, ...}`` for I_n; pairs
``(a, b)`` of component literals for products.
"""
import re

from . import core
from .boolean import BooleanElement
from .cuntz import CuntzModel, Point, act
from .errors import ParseError, TarskiError
from .symmetric import ProductModel, SymmetricModel

_MODEL_RE = re.compile(r"^(cuntz|sym)(\d+)$")
_CLOSE = {"(": ")", "[": "]", "{": "}"}
_POINT_RE = re.compile(r"(?:[0-9]*|e|ε)\s*\(\s*[0-9]+\s*\)\s*\*")


def parse_model(text):
    """``cuntzN``, ``symN`` or ``prod:symA,symB``."""
    text = text.strip()
    if text.startswith("prod:"):
        parts = text[5:].split(",")
        if len(parts) != 2:
            raise ParseError(f"product model needs two factors: {text!r}")
        return ProductModel(parse_model(parts[0]), parse_model(parts[1]))
    match = _MODEL_RE.match(text)
    if not match:
        raise ParseError(f"unknown model {text!r}")
    kind, n = match.group(1), int(match.group(2))
    if kind == "cuntz":
        if n < 2:
            raise ParseError("Cuntz models need arity at least 2")
        return CuntzModel(n)
    if n < 1:
        raise ParseError("symmetric models need n at least 1")
    return SymmetricModel(n)


def _is_idempotent_literal(text):
    text = text.strip()
    if text.startswith("("):
        return all(_is_idempotent_literal(p) for p in _split_top(text[1:-1]))
    return text.startswith("{") and "->" not in text


def _split_top(body):
    out, depth, start = [], 0, 0
    for i, c in enumerate(body):
        if c in "([{":
            depth += 1
        elif c in ")]}":
            depth -= 1
        elif c == "," and depth == 0:
            out.append(body[start:i])
            start = i + 1
    out.append(body[start:])
    return out


def parse_literal(m, text, position=0):
    """Element or Boolean element denoted by a literal of model ``m``."""
    try:
        if _is_idempotent_literal(text):
            return m.parse_idempotent(text)
        return m.parse(text)
    except TarskiError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), position) from exc
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad literal {text.strip()!r}: {exc}", position) from exc


def format_value(m, value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (BooleanElement, Point)):
        return str(value)
    return m.format(value)


def _component_json(x):
    return x.to_json() if hasattr(x, "to_json") else str(x)


def value_json(m, value):
    if isinstance(value, bool):
        return {"kind": "bool", "value": value}
    if isinstance(value, BooleanElement):
        return {"kind": "idempotent", "text": str(value), "value": value.to_json()}
    if isinstance(value, Point):
        return {"kind": "point", "text": str(value), "value": value.to_json()}
    if isinstance(value, tuple):
        data = [_component_json(x) for x in value]
    else:
        data = _component_json(value)
    return {"kind": "element", "text": m.format(value), "value": data}


# -- expressions ---------------------------------------------------------------

def _element(m, v):
    if isinstance(v, bool) or isinstance(v, Point):
        raise ParseError(f"expected an element, got {v}")
    return m.embed(v) if isinstance(v, BooleanElement) else v


def _maybe_bool(m, x):
    """Return idempotents in Boolean form so they print as sets."""
    return m.extract(x) if m.is_idempotent(x) else x


def _meet(m, a, b):
    if isinstance(a, BooleanElement) and isinstance(b, BooleanElement):
        return a.intersect(b)
    return _maybe_bool(m, core.meet(m, _element(m, a), _element(m, b)))


def _join(m, a, b):
    if isinstance(a, BooleanElement) and isinstance(b, BooleanElement):
        return a.union(b)
    return _maybe_bool(m, core.join(m, [_element(m, a), _element(m, b)]))


def _product(m, a, b):
    if isinstance(a, BooleanElement) and isinstance(b, BooleanElement):
        return a.intersect(b)
    return m.mul(_element(m, a), _element(m, b))


def _inverse(m, a):
    return a if isinstance(a, BooleanElement) else m.inv(_element(m, a))


FUNCTIONS = {
    "phi": (1, lambda m, x: m.phi_raw(_element(m, x))),
    "sigma": (1, lambda m, x: core.sigma_raw(m, _element(m, x))),
    "dom": (1, lambda m, x: m.extract(core.dom(m, _element(m, x)))),
    "ran": (1, lambda m, x: m.extract(core.ran(m, _element(m, x)))),
    "leq": (2, lambda m, x, y: core.natural_leq(m, _element(m, x), _element(m, y))),
    "unit?": (1, lambda m, x: core.is_unit(m, _element(m, x))),
}


class _Parser:
    def __init__(self, m, text):
        self.m = m
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        return ParseError(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token):
        self.skip()
        return self.text.startswith(token, self.pos)

    def expect(self, token):
        if not self.peek(token):
            raise self.error(f"expected {token!r}")
        self.pos += len(token)

    def parse(self):
        value = self.expr()
        self.skip()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return value

    def expr(self):
        value = self.meet()
        while self.peek("|"):
            self.pos += 1
            value = _join(self.m, value, self.meet())
        return value

    def meet(self):
        value = self.product()
        while self.peek("&"):
            self.pos += 1
            value = _meet(self.m, value, self.product())
        return value

    def product(self):
        value = self.postfix()
        while self.peek("*"):
            self.pos += 1
            value = _product(self.m, value, self.postfix())
        return value

    def postfix(self):
        value = self.primary()
        while self.peek("^"):
            self.expect("^")
            self.expect("-1")
            value = _inverse(self.m, value)
        return value

    def _bracketed(self):
        start = self.pos
        stack = []
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c in _CLOSE:
                stack.append(_CLOSE[c])
            elif c in ")]}":
                if not stack or stack.pop() != c:
                    raise self.error(f"unbalanced {c!r}")
                if not stack:
                    self.pos += 1
                    return self.text[start:self.pos]
            self.pos += 1
        raise self.error("unterminated literal", start)

    def primary(self):
        self.skip()
        if self.pos >= len(self.text):
            raise self.error("unexpected end of expression")
        start = self.pos
        c = self.text[start]
        if c in "[{":
            return parse_literal(self.m, self._bracketed(), start)
        if c == "(":
            raw = self._bracketed()
            if len(_split_top(raw[1:-1])) > 1:
                return parse_literal(self.m, raw, start)
            return _Parser(self.m, raw[1:-1]).parse_at(start + 1)
        if c in "01" and not self.text[start + 1:start + 2].isalnum():
            self.pos += 1
            return self.m.one if c == "1" else self.m.zero
        match = re.compile(r"[a-z]+\??").match(self.text, start)
        if not match:
            raise self.error(f"unexpected {c!r}")
        name = match.group(0)
        self.pos = match.end()
        if name == "act":
            return self._act(start)
        if name not in FUNCTIONS:
            raise self.error(f"unknown function {name!r}", start)
        arity, fn = FUNCTIONS[name]
        self.expect("(")
        args = [self.expr()]
        while self.peek(","):
            self.pos += 1
            args.append(self.expr())
        self.expect(")")
        if len(args) != arity:
            raise self.error(f"{name} takes {arity} argument(s)", start)
        return fn(self.m, *args)

    def _act(self, start):
        if not isinstance(self.m, CuntzModel):
            raise self.error("act() needs a Cuntz model", start)
        self.expect("(")
        s = _element(self.m, self.expr())
        self.expect(",")
        self.skip()
        match = _POINT_RE.match(self.text, self.pos)
        if not match:
            raise self.error("expected a point such as 01(10)*")
        point = self.m.parse_point(match.group(0))
        self.pos = match.end()
        self.expect(")")
        return act(s, point)

    def parse_at(self, offset):
        try:
            return self.parse()
        except ParseError as exc:
            if exc.position is None:
                raise
            raise ParseError(str(exc).rsplit(" (at position", 1)[0], exc.position + offset) from exc


def evaluate(m, text):
    """Evaluate an expression in model ``m``."""
    return _Parser(m, text).parse()
