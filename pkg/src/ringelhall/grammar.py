"""Parser for the textual element grammar.

Basis literals::

    d[[1,0],[0,1]]     constructible-function class (d[] is the zero class)
    s[[1,1]]           generic Hall algebra, s basis
    dbar[[1,1]]        generic Hall algebra, rescaled basis
    a[1,0]             the algebra A
    b{[1,0],[0,1]}     the algebra B (b{} is the identity)
    c{[1,1]}           the algebra C

Literals combine with ``+``, ``-`` and coefficient expressions in P and L,
e.g. ``(L-1)*s[[1,1]] + s[[1,0],[0,1]]``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .coeffring import RatFunc, RatFuncParser
from .hallalg import CFElem
from .quantumhall import SFElem
from .twistedalg import AElem, BElem, CElem

__all__ = ["parse_element", "GrammarError", "ALGEBRA_PREFIXES"]

ALGEBRA_PREFIXES = {"CF": ("d",), "SF": ("s", "dbar"), "A": ("a",), "B": ("b",), "C": ("c",)}


class GrammarError(SyntaxError):
    """Malformed element text."""


_TOKEN = re.compile(r"\s*(?:(\d+)|(dbar|[dsabc])(?=\s*[\[{])|([PL])|(\S))")


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, var, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif var is not None:
            out.append(("var", var))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


class _Terms:
    """Untyped linear combination {(prefix, key): RatFunc} used while parsing."""

    def __init__(self, terms):
        self.terms = terms

    def _combine(self, other, sign):
        if not isinstance(other, _Terms):
            raise GrammarError("cannot add a scalar to an element")
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, RatFunc.const(0)) + (v if sign > 0 else -v)
        return _Terms(t)

    def __add__(self, other):
        return self._combine(other, 1)

    def __radd__(self, other):
        raise GrammarError("cannot add a scalar to an element")

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        raise GrammarError("cannot add a scalar to an element")

    def __neg__(self):
        return _Terms({k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, _Terms):
            raise GrammarError("products of elements are not part of the grammar")
        return _Terms({k: v * other for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _Terms):
            raise GrammarError("cannot divide by an element")
        return _Terms({k: v / other for k, v in self.terms.items()})

    def __rtruediv__(self, other):
        raise GrammarError("cannot divide by an element")

    def __pow__(self, e):
        raise GrammarError("powers of elements are not part of the grammar")


class _ElementParser(RatFuncParser):
    def atom(self):
        kind, val = self.peek()
        if kind == "name":
            self.take()
            return self.literal(val)
        return super().atom()

    def int_list(self, close):
        out = []
        if self.at_op(close):
            return out
        while True:
            neg = False
            if self.at_op("-"):
                self.take()
                neg = True
            n = self.take("int")[1]
            out.append(-n if neg else n)
            if self.at_op(","):
                self.take()
                continue
            return out

    def vec_list(self, close):
        out = []
        if self.at_op(close):
            return out
        while True:
            self.take("op", "[")
            out.append(tuple(self.int_list("]")))
            self.take("op", "]")
            if self.at_op(","):
                self.take()
                continue
            return out

    def literal(self, name):
        if name == "a":
            self.take("op", "[")
            vec = tuple(self.int_list("]"))
            self.take("op", "]")
            key = vec
        elif name in ("b", "c"):
            self.take("op", "{")
            vecs = self.vec_list("}")
            self.take("op", "}")
            key = tuple(sorted(vecs, reverse=True))
        else:
            self.take("op", "[")
            vecs = self.vec_list("]")
            self.take("op", "]")
            key = tuple(sorted(vecs, reverse=True))
        return _Terms({(name, key): RatFunc.const(1)})


def _to_fraction(c: RatFunc) -> Fraction:
    if len(c.num) > 1 or len(c.den) > 1:
        raise GrammarError(f"coefficient {c} must be a rational number here")
    return Fraction(c.num[0], c.den[0]) if c.num else Fraction(0)


def parse_element(text: str, algebra: str):
    """Parse ``text`` as an element of CF, SF, A, B or C."""
    if algebra not in ALGEBRA_PREFIXES:
        raise GrammarError(f"unknown algebra {algebra!r}")
    try:
        parser = _ElementParser(_tokenize(text))
        val = parser.expr()
        if parser.i != len(parser.toks):
            raise GrammarError(f"trailing input in {text!r}")
    except GrammarError:
        raise
    except (SyntaxError, ZeroDivisionError) as exc:
        raise GrammarError(f"cannot parse {text!r}: {exc}") from exc
    if not isinstance(val, _Terms):
        raise GrammarError(f"{text!r} has no basis literal")
    allowed = ALGEBRA_PREFIXES[algebra]
    for prefix, _ in val.terms:
        if prefix not in allowed:
            raise GrammarError(f"literal {prefix!r} does not belong to algebra {algebra}")
    if algebra == "CF":
        return CFElem({k: _to_fraction(c) for (_, k), c in val.terms.items()})
    if algebra == "C":
        return CElem({k: _to_fraction(c) for (_, k), c in val.terms.items()})
    if algebra == "SF":
        return SFElem({(p, k): c for (p, k), c in val.terms.items()})
    if algebra == "A":
        return AElem({k: c for (_, k), c in val.terms.items()})
    return BElem({k: c for (_, k), c in val.terms.items()})
