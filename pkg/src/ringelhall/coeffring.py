"""Exact arithmetic in Q(P), the field of rational functions in P.

The motivic parameter L of the affine line is stored as ``L = P**2`` so that
half-integer powers of L are available without an extension step.  Values are
immutable :class:`RatFunc` instances kept in a canonical reduced form, so
equality and hashing are structural.

The subring of values that stay finite at ``P = +-1`` is exposed through the
predicate :func:`is_lambda_circ`, and :func:`pi_eval` is evaluation at
``P = 1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, comb
import re

__all__ = [
    "RatFunc", "P", "L", "ONE", "ZERO",
    "gauss_binomial", "is_lambda_circ", "pi_eval", "specialize", "specialize_ell",
    "PoleError", "NotInLambdaCirc", "parse_ratfunc",
]


class PoleError(ZeroDivisionError):
    """Division by zero, or evaluation at a pole."""


class NotInLambdaCirc(PoleError):
    """The value has a pole at L = 1 so it cannot be sent to Q."""


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers; polys are tuples, lowest degree first

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return [-c for c in a]


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    """Division over Q; b nonzero."""
    a = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = _trim(a)
    return _trim(q), a


def _pgcd(a, b):
    """Monic gcd over Q."""
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def _content(a):
    return reduce(gcd, (abs(int(c)) for c in a), 0)


def _lowest(a):
    for i, c in enumerate(a):
        if c:
            return i
    return len(a)


def _eval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _canon(num, den):
    """Reduce num/den (rational coefficient lists) to coprime primitive integer form."""
    num, den = _trim(num), _trim(den)
    if not den:
        raise PoleError("zero denominator")
    if not num:
        return (), (1,)
    # strip common powers of P first; this is the common case and is cheap
    k = min(_lowest(num), _lowest(den))
    if k:
        num, den = num[k:], den[k:]
    if len(den) > 1 and len(num) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num, _ = _pdivmod(num, g)
            den, _ = _pdivmod(den, g)
    # clear rational denominators, then the joint integer content
    dens = [Fraction(c).denominator for c in list(num) + list(den)]
    m = reduce(lambda x, y: x * y // gcd(x, y), dens, 1)
    num = [int(Fraction(c) * m) for c in num]
    den = [int(Fraction(c) * m) for c in den]
    g = gcd(_content(num), _content(den))
    if den[-1] < 0:
        g = -g
    num = tuple(c // g for c in num)
    den = tuple(c // g for c in den)
    return num, den


class RatFunc:
    """An element of Q(P) in canonical form.

    ``num`` and ``den`` are integer coefficient tuples (constant term first),
    coprime over Q, jointly primitive, with positive leading denominator
    coefficient.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,), _canonical=False):
        if isinstance(num, (int, Fraction)):
            num = (num,)
        if _canonical:
            self.num, self.den = tuple(num), tuple(den)
        else:
            self.num, self.den = _canon(num, den)
        self._hash = None

    # construction ----------------------------------------------------------
    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        if c == 0:
            return ZERO
        return cls((c.numerator,), (c.denominator,), _canonical=True)

    @classmethod
    def monomial(cls, k: int, c=1) -> "RatFunc":
        """c * P**k for any integer k."""
        c = Fraction(c)
        if c == 0:
            return ZERO
        if k >= 0:
            return cls([0] * k + [c.numerator], (c.denominator,), _canonical=True)
        return cls((c.numerator,), [0] * (-k) + [c.denominator], _canonical=True)

    @classmethod
    def ell_power(cls, k) -> "RatFunc":
        """L**k, where k may be a half integer."""
        k2 = Fraction(k) * 2
        if k2.denominator != 1:
            raise ValueError(f"L^{k} is not a power of P")
        return cls.monomial(int(k2))

    @staticmethod
    def coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    # predicates ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_poly(self) -> bool:
        return self.den == (1,)

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatFunc(_padd(self.num, other.num), self.den)
        return RatFunc(_padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
                       _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _canonical=True) if self.num else self

    def __sub__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if other.den == (1,) and other.num == (1,):
            return self
        if self.den == (1,) and self.num == (1,):
            return other
        return RatFunc(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if not self.num:
            raise PoleError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # evaluation ------------------------------------------------------------
    def __call__(self, x):
        """Evaluate at P = x exactly."""
        x = Fraction(x)
        d = _eval(self.den, x)
        if d == 0:
            raise PoleError(f"pole at P={x}")
        return _eval(self.num, x) / d

    def substitute_inverse(self) -> "RatFunc":
        """The image under P -> 1/P."""
        n = max(len(self.num), len(self.den)) - 1
        num = [0] * (n + 1 - len(self.num)) + list(reversed(self.num))
        den = [0] * (n + 1 - len(self.den)) + list(reversed(self.den))
        return RatFunc(num, den)

    # printing --------------------------------------------------------------
    def __str__(self):
        return format_ratfunc(self)

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)!r})"


ZERO = RatFunc((), (1,), _canonical=True)
ONE = RatFunc((1,), (1,), _canonical=True)
P = RatFunc((0, 1), (1,), _canonical=True)
L = RatFunc((0, 0, 1), (1,), _canonical=True)


# ---------------------------------------------------------------------------
# ring operations named by the contract

def field_ops(x, y, kind: str) -> RatFunc:
    x = RatFunc.coerce(x)
    if kind == "add":
        return x + y
    if kind == "mul":
        return x * y
    if kind == "neg":
        return -x
    if kind == "inv":
        return x.inv()
    raise ValueError(f"unknown operation {kind!r}")


def gauss_binomial(n: int, k: int) -> RatFunc:
    """The Gauss polynomial (n choose k) in L."""
    if k < 0 or n < 0 or k > n:
        raise ValueError(f"gauss_binomial needs 0 <= k <= n, got n={n}, k={k}")
    out = ONE
    for i in range(k):
        out = out * (L ** (n - i) - 1) / (L ** (i + 1) - 1)
    return out


def _divisible_by(poly, root) -> bool:
    return _eval(poly, Fraction(root)) == 0


def is_lambda_circ(x: RatFunc) -> bool:
    """True when neither P - 1 nor P + 1 divides the reduced denominator."""
    x = RatFunc.coerce(x)
    return not (_divisible_by(x.den, 1) or _divisible_by(x.den, -1))


def pi_eval(x) -> Fraction:
    """Evaluate at P = 1 (equivalently L = 1)."""
    x = RatFunc.coerce(x)
    if not is_lambda_circ(x):
        raise NotInLambdaCirc(f"{x} has a pole at P=1 or P=-1")
    return x(1)


def specialize(x, v) -> Fraction:
    """Exact value at P = v."""
    return RatFunc.coerce(x)(v)


def specialize_ell(x, q) -> Fraction:
    """Exact value at L = q for x even in P (a function of L alone)."""
    x = RatFunc.coerce(x)
    if any(c for c in x.num[1::2]) or any(c for c in x.den[1::2]):
        raise ValueError(f"{x} is not a function of L alone")
    q = Fraction(q)
    d = _eval(x.den[::2], q)
    if d == 0:
        raise PoleError(f"pole at L={q}")
    return _eval(x.num[::2], q) / d


# ---------------------------------------------------------------------------
# text form.  Polynomials even in P are written in L.

def _format_poly(coeffs, var):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += sign + body
    return out


def _nterms(coeffs):
    return sum(1 for c in coeffs if c)


def format_ratfunc(x: RatFunc) -> str:
    num, den = x.num, x.den
    var = "P"
    if not any(num[1::2]) and not any(den[1::2]):
        num, den, var = num[::2], den[::2], "L"
    n = _format_poly(num, var)
    if den == (1,):
        return n
    d = _format_poly(den, var)
    if _nterms(num) > 1:
        n = f"({n})"
    if _nterms(den) > 1 or (len(den) > 1 and den[-1] != 1):
        d = f"({d})"
    return f"{n}/{d}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([PL])|(.))")


def tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, var, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif var is not None:
            out.append(("var", var))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


class RatFuncParser:
    """Recursive-descent parser for ``+ - * / ^`` expressions in P and L.

    Subclassed by the element grammar, which adds basis literals as atoms.
    """

    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise SyntaxError(f"unexpected token {tok[1]!r} at position {self.i}")
        self.i += 1
        return tok

    def at_op(self, *ops):
        kind, val = self.peek()
        return kind == "op" and val in ops

    def expr(self):
        val = self.term()
        while self.at_op("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.at_op("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self):
        if self.at_op("-"):
            self.take()
            return -self.unary()
        if self.at_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def exponent(self):
        neg = False
        if self.at_op("("):
            self.take()
            e = self.exponent()
            self.take("op", ")")
            return e
        if self.at_op("-"):
            self.take()
            neg = True
        e = self.take("int")[1]
        return -e if neg else e

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.take()
            base = base ** self.exponent()
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return RatFunc.const(val)
        if kind == "var":
            self.take()
            return P if val == "P" else L
        if self.at_op("("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        raise SyntaxError(f"unexpected token {val!r}")


def parse_ratfunc(text: str) -> RatFunc:
    """Parse the textual coefficient grammar, e.g. ``"(L^-3-1)/(L-1)"``."""
    parser = RatFuncParser(tokenize(text))
    val = parser.expr()
    if parser.i != len(parser.toks):
        raise SyntaxError(f"trailing input in {text!r}")
    return val


def binomial_at_one(n: int, k: int) -> int:
    return comb(n, k)
