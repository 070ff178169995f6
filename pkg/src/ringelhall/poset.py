"""Finite posets and series-parallel certificates.

A certificate is a nested tuple: ``("leaf", i)``, ``("series", [..])`` with
children in increasing order, or ``("parallel", [..])``.
"""

from __future__ import annotations

from itertools import permutations

__all__ = ["Poset", "UnsupportedPoset", "chain", "antichain", "replay", "evaluate"]


class UnsupportedPoset(ValueError):
    """The poset is not series-parallel."""


class Poset:
    """A partial order on 0..n-1 given by generating pairs (i, j) meaning i <= j."""

    def __init__(self, n: int, relations=()):
        self.n = n
        le = {(i, i) for i in range(n)}
        le |= {(int(i), int(j)) for i, j in relations}
        changed = True
        while changed:
            changed = False
            for a, b in list(le):
                for c, d in list(le):
                    if b == c and (a, d) not in le:
                        le.add((a, d))
                        changed = True
        for a, b in le:
            if a != b and (b, a) in le:
                raise ValueError(f"relations force {a} = {b}")
        self.le = frozenset(le)

    def leq(self, i: int, j: int) -> bool:
        return (i, j) in self.le

    def comparable(self, i: int, j: int) -> bool:
        return (i, j) in self.le or (j, i) in self.le

    def strict_pairs(self):
        """Pairs (i, j) with i != j and i <= j."""
        return sorted((a, b) for a, b in self.le if a != b)

    def __eq__(self, other):
        return isinstance(other, Poset) and self.n == other.n and self.le == other.le

    def __hash__(self):
        return hash((self.n, self.le))

    def __repr__(self):
        return f"Poset({self.n}, {self.strict_pairs()})"

    # series-parallel ------------------------------------------------------
    def certificate(self, elements=None):
        elements = sorted(range(self.n) if elements is None else elements)
        if len(elements) == 1:
            return ("leaf", elements[0])
        comps = _components(elements, self.comparable)
        if len(comps) > 1:
            return ("parallel", [self.certificate(c) for c in comps])
        comps = _components(elements, lambda a, b: not self.comparable(a, b))
        if len(comps) > 1:
            comps.sort(key=lambda c: sum(1 for d in comps if d is not c
                                         and self.leq(d[0], c[0])))
            return ("series", [self.certificate(c) for c in comps])
        raise UnsupportedPoset(f"{self!r} is not series-parallel")

    def is_series_parallel(self) -> bool:
        try:
            self.certificate()
        except UnsupportedPoset:
            return False
        return True

    def linear_extensions(self):
        for perm in permutations(range(self.n)):
            pos = {v: k for k, v in enumerate(perm)}
            if all(pos[a] <= pos[b] for a, b in self.le):
                yield perm


def _components(elements, adjacent):
    left = list(elements)
    comps = []
    while left:
        stack = [left.pop(0)]
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in list(left):
                if adjacent(v, w):
                    left.remove(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def chain(n: int) -> Poset:
    return Poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return Poset(n, [])


def replay(cert, n: int) -> Poset:
    """The poset a certificate describes."""
    rel = []

    def leaves(c):
        if c[0] == "leaf":
            return [c[1]]
        return [x for ch in c[1] for x in leaves(ch)]

    def walk(c):
        if c[0] == "series":
            kids = c[1]
            for a in range(len(kids)):
                for b in range(a + 1, len(kids)):
                    rel.extend((x, y) for x in leaves(kids[a]) for y in leaves(kids[b]))
        if c[0] != "leaf":
            for ch in c[1]:
                walk(ch)

    walk(cert)
    return Poset(n, rel)


def evaluate(cert, inputs, series_op, parallel_op, fold: str = "left"):
    """Evaluate a certificate with two binary operations."""
    if cert[0] == "leaf":
        return inputs[cert[1]]
    vals = [evaluate(c, inputs, series_op, parallel_op, fold) for c in cert[1]]
    op = series_op if cert[0] == "series" else parallel_op
    if fold == "left":
        acc = vals[0]
        for v in vals[1:]:
            acc = op(acc, v)
        return acc
    acc = vals[-1]
    for v in reversed(vals[:-1]):
        acc = op(v, acc)
    return acc
