"""Quivers, dimension vectors and Euler forms.

A quiver file is line oriented::

    # the A2 quiver
    vertices 2
    arrow 1 2

Vertices are 1-based in files and 0-based in memory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

__all__ = [
    "Quiver", "EulerForm", "QuiverError", "load_quiver", "dump_quiver",
    "euler_form", "antisym_form", "cartan_a", "read_quiver_file", "vec_add", "vec_le",
]

DimVec = tuple


class QuiverError(ValueError):
    """Malformed quiver text or a quiver violating the acyclicity rules."""


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise QuiverError("a quiver needs at least one vertex")
        for s, t in self.arrows:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise QuiverError(f"arrow {s + 1} {t + 1} refers to a missing vertex")
            if s == t:
                raise QuiverError(f"self-loop at vertex {s + 1}")
        if self.topological_order() is None:
            raise QuiverError("quiver has an oriented cycle")

    def topological_order(self):
        indeg = [0] * self.n
        for _, t in self.arrows:
            indeg[t] += 1
        ready = [v for v in range(self.n) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        return order if len(order) == self.n else None

    def euler(self) -> "EulerForm":
        return EulerForm.from_quiver(self)

    def simple(self, i: int) -> tuple:
        return tuple(1 if v == i else 0 for v in range(self.n))

    def arrow_count(self, i: int, j: int) -> int:
        return sum(1 for a in self.arrows if a == (i, j))

    def dump(self) -> str:
        return dump_quiver(self)


@dataclass(frozen=True)
class EulerForm:
    """A biadditive form on Z^n given by its matrix.

    ``explicit`` forms may carry arbitrary rational entries; forms derived
    from a quiver have ones on the diagonal and minus arrow counts elsewhere.
    """

    matrix: tuple
    explicit: bool = True
    quiver: Quiver | None = field(default=None, compare=False)

    @classmethod
    def from_quiver(cls, q: Quiver) -> "EulerForm":
        m = tuple(tuple((1 if i == j else 0) - q.arrow_count(i, j) for j in range(q.n))
                  for i in range(q.n))
        return cls(m, explicit=False, quiver=q)

    @classmethod
    def from_matrix(cls, rows) -> "EulerForm":
        rows = tuple(tuple(Fraction(x) if isinstance(x, Fraction) and x.denominator != 1
                           else int(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("Euler form matrix must be square and nonempty")
        return cls(rows, explicit=True)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __call__(self, a: Sequence, b: Sequence):
        return euler_form(self, a, b)

    def bar(self, a, b):
        return antisym_form(self, a, b)

    def half_antisym(self) -> "EulerForm":
        """The form ½(χ(a,b) - χ(b,a)) as an explicit rational form."""
        n = self.n
        m = tuple(tuple(_norm(Fraction(self.matrix[i][j] - self.matrix[j][i], 2))
                        for j in range(n)) for i in range(n))
        return EulerForm(m, explicit=True)

    def plus(self, other: "EulerForm") -> "EulerForm":
        m = tuple(tuple(_norm(Fraction(x) + y) for x, y in zip(r, s))
                  for r, s in zip(self.matrix, other.matrix))
        return EulerForm(m, explicit=True)


def _norm(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def _check(F: EulerForm, *vs):
    for v in vs:
        if len(v) != F.n:
            raise ValueError(f"dimension vector {tuple(v)} has length {len(v)}, form has {F.n}")


def euler_form(F: EulerForm, a: Sequence, b: Sequence):
    _check(F, a, b)
    m = F.matrix
    total = 0
    for i, x in enumerate(a):
        if x:
            row = m[i]
            for j, y in enumerate(b):
                if y:
                    total += x * row[j] * y
    return _norm(total) if isinstance(total, Fraction) else total


def antisym_form(F: EulerForm, a: Sequence, b: Sequence):
    return euler_form(F, a, b) - euler_form(F, b, a)


def cartan_a(F: EulerForm, i: int, j: int) -> int:
    """a_ij = e_ij + e_ji for distinct vertices."""
    if i == j:
        raise ValueError("cartan_a is defined only for distinct vertices")
    return F.matrix[i][j] + F.matrix[j][i]


def vec_add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vec_le(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def load_quiver(text: str) -> Quiver:
    n = None
    arrows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                if parts[0] != "vertices" or len(parts) != 2:
                    raise QuiverError(f"line {lineno}: expected 'vertices N'")
                n = int(parts[1])
            else:
                if parts[0] != "arrow" or len(parts) != 3:
                    raise QuiverError(f"line {lineno}: expected 'arrow S T'")
                arrows.append((int(parts[1]) - 1, int(parts[2]) - 1))
        except ValueError as exc:
            if isinstance(exc, QuiverError):
                raise
            raise QuiverError(f"line {lineno}: bad integer") from exc
    if n is None:
        raise QuiverError("missing 'vertices N' line")
    return Quiver(n, tuple(arrows))


def read_quiver_file(path) -> Quiver:
    with open(path, encoding="utf-8") as fh:
        return load_quiver(fh.read())


def dump_quiver(q: Quiver) -> str:
    lines = [f"vertices {q.n}"] + [f"arrow {s + 1} {t + 1}" for s, t in q.arrows]
    return "\n".join(lines) + "\n"
