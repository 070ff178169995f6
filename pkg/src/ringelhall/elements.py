"""Sparse linear combinations shared by all algebra element types."""

from __future__ import annotations

from fractions import Fraction

from .coeffring import RatFunc

__all__ = ["LinComb", "format_coeff", "label_key", "vec_key", "fmt_label", "fmt_vec"]


def vec_key(v) -> tuple:
    return (sum(v), tuple(-x for x in v))


def label_key(label) -> tuple:
    return (sum(sum(d) for d in label), len(label), tuple(vec_key(d)[1] for d in label))


def fmt_vec(v) -> str:
    return "[" + ",".join(str(x) for x in v) + "]"


def fmt_label(label) -> str:
    return ",".join(fmt_vec(d) for d in label)


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, RatFunc) else c == 0


def format_coeff(c) -> tuple:
    """(sign, text) with text '' for a unit coefficient."""
    if isinstance(c, RatFunc):
        if len(c.num) == 1 and len(c.den) == 1:
            c = Fraction(c.num[0], c.den[0])
        else:
            s = str(c)
            neg = s.startswith("-")
            body = s[1:] if neg else s
            if any(ch in body for ch in "+-/"):
                return "+", f"({s})"
            return ("-" if neg else "+"), body
    c = Fraction(c)
    sign = "-" if c < 0 else "+"
    a = abs(c)
    return sign, ("" if a == 1 else str(a))


class LinComb:
    """A finitely supported map basis -> coefficient with no zero entries."""

    prefix = "?"
    zero_coeff = Fraction(0)

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        if terms:
            for k, v in (terms.items() if isinstance(terms, dict) else terms):
                k = self.normalize_key(k)
                out[k] = out.get(k, self.zero_coeff) + v
        self.terms = {k: v for k, v in out.items() if not _is_zero(v)}

    # hooks ------------------------------------------------------------------
    @staticmethod
    def normalize_key(k):
        return k

    @staticmethod
    def sort_key(k):
        return label_key(k)

    def fmt_basis(self, k) -> str:
        return f"{self.prefix}[{fmt_label(k)}]"

    # construction -----------------------------------------------------------
    @classmethod
    def basis(cls, k, coeff=1):
        if not isinstance(coeff, RatFunc):
            coeff = cls.coerce(coeff)
        return cls({k: coeff})

    @classmethod
    def coerce(cls, c):
        return Fraction(c)

    @classmethod
    def zero(cls):
        return cls()

    def _new(self, terms):
        out = type(self).__new__(type(self))
        out.terms = {k: v for k, v in terms.items() if not _is_zero(v)}
        return out

    # linear structure ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return self._new(t)

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, LinComb):
            return NotImplemented
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, k):
        return self.terms.get(self.normalize_key(k), self.zero_coeff)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: self.sort_key(kv[0]))

    def support(self):
        return [k for k, _ in self.items()]

    def map_coeffs(self, f, cls=None):
        cls = cls or type(self)
        out = cls.__new__(cls)
        out.terms = {k: f(v) for k, v in self.terms.items()}
        out.terms = {k: v for k, v in out.terms.items() if not _is_zero(v)}
        return out

    # text -------------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (k, c) in enumerate(self.items()):
            sign, text = format_coeff(c)
            body = f"{text}*{self.fmt_basis(k)}" if text else self.fmt_basis(k)
            if i == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"
