"""Small dense linear algebra over F_p with lists of ints.

Vectors are lists; a matrix is a list of rows.  Every routine reduces mod p
and leaves its inputs untouched.
"""

from __future__ import annotations

__all__ = ["rref", "rank", "nullspace", "matmul", "matvec", "identity", "zeros",
           "mat_pow", "solve_in_span", "is_invertible", "reduce_mod_rref"]


def zeros(r: int, c: int) -> list:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b, p: int) -> list:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    if inner == 0:
        return [[0] * cols for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def matvec(a, v, p: int) -> list:
    return [sum(x * y for x, y in zip(row, v)) % p for row in a]


def rref(m, p: int, ncols: int | None = None):
    """Row reduce; returns (nonzero rows, pivot columns)."""
    rows = [[x % p for x in r] for r in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = [(x * inv) % p for x in rows[r]]
        rows[r] = pr
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    rows[i] = [(x - f * y) % p for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m, p: int) -> int:
    return len(rref(m, p)[1])


def nullspace(m, p: int, ncols: int) -> list:
    """Basis of {x : m x = 0} as a list of vectors."""
    rows, piv = rref(m, p, ncols) if m else ([], [])
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, c in zip(rows, piv):
            v[c] = (-row[free]) % p
        basis.append(v)
    return basis


def reduce_mod_rref(v, rows, pivots, p: int) -> list:
    """Reduce v modulo the row space of an RREF basis."""
    v = list(v)
    for row, c in zip(rows, pivots):
        f = v[c]
        if f:
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return v


def solve_in_span(v, rows, pivots, p: int):
    """Coefficients of v in an RREF basis, or None when v is outside the span."""
    coeffs = [v[c] % p for c in pivots]
    if any(reduce_mod_rref(v, rows, pivots, p)):
        return None
    return coeffs


def mat_pow(a, k: int, p: int) -> list:
    out = identity(len(a))
    base = a
    while k:
        if k & 1:
            out = matmul(out, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return out


def is_invertible(a, p: int) -> bool:
    return rank(a, p) == len(a)
