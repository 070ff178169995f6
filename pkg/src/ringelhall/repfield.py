"""Quiver representations over small prime fields.

Everything here is brute force: Hom spaces come from one linear system,
subrepresentations are enumerated vertex by vertex in reduced echelon form,
and indecomposables are found by a seeded random search certified by an
orbit-mass count

    sum over classes of |GL(d)| / |Aut X|  =  p ** (sum over arrows of d_s * d_t).

A class label is the sorted multiset of dimension vectors of the
indecomposable summands.  For representation-finite quivers an
indecomposable is fixed by its dimension vector, which is what makes the
label a complete invariant; enumeration checks this instead of assuming it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg as la
from .quiver import Quiver, vec_add, vec_le, vec_sub

__all__ = [
    "Rep", "RepCategory", "RepError", "UnsupportedQuiver", "NotRepresentationFinite",
    "ConsistencyError", "BudgetExceeded",
    "direct_sum", "zero_rep", "hom_basis", "hom_dim", "ext1_dim", "ext1_dim_coker",
    "krull_schmidt", "is_brick", "aut_order", "aut_order_count", "gl_order",
    "subspaces", "subreps", "subrep", "quotient", "enumerate_classes",
    "hall_count", "ext_classify", "direct_sum_splittings", "flag_count",
    "doubled_quiver", "pair_rep", "make_label", "label_dims",
]


class RepError(Exception):
    pass


class UnsupportedQuiver(RepError):
    """The decomposition machinery met an endomorphism ring it cannot split."""


class NotRepresentationFinite(RepError):
    """Orbit counting shows classes beyond one brick per dimension vector."""


class ConsistencyError(RepError):
    """Two independent computations of the same quantity disagree."""


class BudgetExceeded(RepError):
    pass


DEFAULT_TOTAL_BOUND = 8


# ---------------------------------------------------------------------------
# representations

@dataclass(frozen=True)
class Rep:
    quiver: Quiver
    p: int
    dims: tuple
    maps: tuple  # one matrix per arrow, rows indexed by the target

    def __post_init__(self):
        for (s, t), m in zip(self.quiver.arrows, self.maps):
            if len(m) != self.dims[t] or any(len(r) != self.dims[s] for r in m):
                raise ValueError(f"arrow {s + 1}->{t + 1}: matrix shape does not match dims")

    @property
    def total(self) -> int:
        return sum(self.dims)

    def identity(self) -> tuple:
        return tuple(la.identity(d) for d in self.dims)


def _freeze(m) -> tuple:
    return tuple(tuple(r) for r in m)


def make_rep(quiver: Quiver, p: int, dims, maps) -> Rep:
    return Rep(quiver, p, tuple(dims), tuple(_freeze(m) for m in maps))


def zero_rep(quiver: Quiver, p: int) -> Rep:
    return make_rep(quiver, p, (0,) * quiver.n, [[] for _ in quiver.arrows])


def direct_sum(*reps: Rep) -> Rep:
    q, p = reps[0].quiver, reps[0].p
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(q.n))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        m = la.zeros(dims[t], dims[s])
        ro = co = 0
        for r in reps:
            for i, row in enumerate(r.maps[a]):
                m[ro + i][co:co + len(row)] = row
            ro += r.dims[t]
            co += r.dims[s]
        maps.append(m)
    return make_rep(q, p, dims, maps)


def random_rep(quiver: Quiver, p: int, dims, rng: random.Random) -> Rep:
    maps = [[[rng.randrange(p) for _ in range(dims[s])] for _ in range(dims[t])]
            for s, t in quiver.arrows]
    return make_rep(quiver, p, dims, maps)


# ---------------------------------------------------------------------------
# Hom and Ext

def _hom_system(X: Rep, Y: Rep):
    """Rows of the intertwining system f_t X_a = Y_a f_s.

    Unknown f_v is a dY_v x dX_v block, flattened row-major after the
    blocks of smaller vertices.
    """
    q = X.quiver
    offs = []
    n = 0
    for v in range(q.n):
        offs.append(n)
        n += Y.dims[v] * X.dims[v]
    rows = []
    for a, (s, t) in enumerate(q.arrows):
        Xa, Ya = X.maps[a], Y.maps[a]
        dxs, dxt, dys, dyt = X.dims[s], X.dims[t], Y.dims[s], Y.dims[t]
        for i in range(dyt):
            for j in range(dxs):
                row = [0] * n
                # (f_t X_a)[i,j] = sum_k f_t[i,k] X_a[k,j]
                for k in range(dxt):
                    c = Xa[k][j]
                    if c:
                        row[offs[t] + i * dxt + k] += c
                # (Y_a f_s)[i,j] = sum_k Y_a[i,k] f_s[k,j]
                for k in range(dys):
                    c = Ya[i][k]
                    if c:
                        row[offs[s] + k * dxs + j] -= c
                rows.append(row)
    return rows, n, offs


def hom_basis(X: Rep, Y: Rep) -> list:
    """A basis of Hom(X, Y); each morphism is a tuple of matrices per vertex."""
    rows, n, offs = _hom_system(X, Y)
    basis = la.nullspace(rows, X.p, n) if n else []
    out = []
    for vec in basis:
        f = []
        for v in range(X.quiver.n):
            dy, dx = Y.dims[v], X.dims[v]
            o = offs[v]
            f.append([vec[o + i * dx: o + (i + 1) * dx] for i in range(dy)])
        out.append(tuple(f))
    return out


def hom_dim(X: Rep, Y: Rep) -> int:
    rows, n, _ = _hom_system(X, Y)
    if n == 0:
        return 0
    return n - (la.rank(rows, X.p) if rows else 0)


def ext1_dim_coker(X: Rep, Y: Rep) -> int:
    """dim Ext^1(X, Y) as the cokernel of the intertwining map."""
    rows, n, _ = _hom_system(X, Y)
    target = sum(X.dims[s] * Y.dims[t] for s, t in X.quiver.arrows)
    r = la.rank(rows, X.p) if rows and n else 0
    return target - r


def ext1_dim(X: Rep, Y: Rep) -> int:
    """dim Ext^1(X, Y), computed two ways that must agree."""
    from .quiver import euler_form
    via_form = hom_dim(X, Y) - euler_form(X.quiver.euler(), X.dims, Y.dims)
    via_coker = ext1_dim_coker(X, Y)
    if via_form != via_coker:
        raise ConsistencyError(f"Ext^1 routes disagree: {via_form} vs {via_coker}")
    return via_coker


def _morph_pow(f, k: int, p: int) -> tuple:
    return tuple(la.mat_pow(m, k, p) if m else [] for m in f)


def _lin_comb(coeffs, basis, p: int) -> tuple:
    out = []
    for v in range(len(basis[0])):
        rows = len(basis[0][v])
        cols = len(basis[0][v][0]) if rows else 0
        m = [[sum(c * b[v][i][j] for c, b in zip(coeffs, basis)) % p for j in range(cols)]
             for i in range(rows)]
        out.append(m)
    return tuple(out)


# ---------------------------------------------------------------------------
# subspaces and subrepresentations

@lru_cache(maxsize=None)
def subspaces(n: int, k: int, p: int) -> tuple:
    """All k-dimensional subspaces of F_p^n as (rref rows, pivots)."""
    out = []
    for piv in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, c in enumerate(piv):
                rows[r][c] = 1
            for (r, c), x in zip(free, vals):
                rows[r][c] = x
            out.append((tuple(tuple(r) for r in rows), piv))
    return tuple(out)


def _image_in(Z: Rep, a: int, vec):
    """Z_a applied to a column vector."""
    return [sum(x * y for x, y in zip(row, vec)) % Z.p for row in Z.maps[a]]


def _invariant(Z: Rep, U, arrows) -> bool:
    p = Z.p
    for a, (s, t) in arrows:
        rows_t, piv_t = U[t]
        for u in U[s][0]:
            w = _image_in(Z, a, u)
            if any(la.reduce_mod_rref(w, rows_t, piv_t, p)):
                return False
    return True


def subreps(Z: Rep, dX, within=None, containing=None):
    """Yield arrow-invariant subspace tuples U of dimension dX.

    ``within`` and ``containing`` optionally restrict to U inside or around
    another subspace tuple.
    """
    q = Z.quiver
    order = q.topological_order()
    choices = {}
    for v in range(q.n):
        cands = subspaces(Z.dims[v], dX[v], Z.p)
        if within is not None:
            cands = [c for c in cands if _subspace_le(c, within[v], Z.p)]
        if containing is not None:
            cands = [c for c in cands if _subspace_le(containing[v], c, Z.p)]
        choices[v] = cands
    # check an arrow as soon as both ends are fixed
    checks = {v: [] for v in range(q.n)}
    pos = {v: i for i, v in enumerate(order)}
    for a, (s, t) in enumerate(q.arrows):
        checks[order[max(pos[s], pos[t])]].append((a, (s, t)))
    U = [None] * q.n

    def rec(i):
        if i == q.n:
            yield tuple(U)
            return
        v = order[i]
        for c in choices[v]:
            U[v] = c
            if _invariant(Z, U, checks[v]):
                yield from rec(i + 1)
        U[v] = None

    yield from rec(0)


def _subspace_le(A, B, p: int) -> bool:
    rows_b, piv_b = B
    return all(not any(la.reduce_mod_rref(u, rows_b, piv_b, p)) for u in A[0])


def subrep(Z: Rep, U) -> Rep:
    """The subrepresentation on U, in the echelon basis of each U_v."""
    maps = []
    for a, (s, t) in enumerate(Z.quiver.arrows):
        rows_t, piv_t = U[t]
        cols = [[w[c] for c in piv_t] for w in (_image_in(Z, a, u) for u in U[s][0])]
        maps.append([list(r) for r in zip(*cols)] if cols else [[] for _ in piv_t])
    return make_rep(Z.quiver, Z.p, tuple(len(U[v][1]) for v in range(Z.quiver.n)), maps)


def quotient(Z: Rep, U) -> Rep:
    """Z/U in the basis of standard vectors at non-pivot coordinates."""
    q, p = Z.quiver, Z.p
    comp = [[c for c in range(Z.dims[v]) if c not in U[v][1]] for v in range(q.n)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        rows_t, piv_t = U[t]
        cols = []
        for j in comp[s]:
            w = [row[j] for row in Z.maps[a]]
            w = la.reduce_mod_rref(w, rows_t, piv_t, p)
            cols.append([w[c] for c in comp[t]])
        maps.append([list(r) for r in zip(*cols)] if cols else [[] for _ in comp[t]])
    return make_rep(q, p, tuple(len(c) for c in comp), maps)


def _span(vectors, p: int, n: int):
    rows, piv = la.rref(vectors, p, n) if vectors else ([], [])
    return tuple(tuple(r) for r in rows), tuple(piv)


# ---------------------------------------------------------------------------
# decomposition

def _fitting_split(X: Rep, phi):
    """Split X as ker(phi^N) + im(phi^N) when both parts are nonzero."""
    p = X.p
    N = max(X.dims) if X.dims else 0
    f = _morph_pow(phi, max(N, 1), p)
    K, I = [], []
    for v, m in enumerate(f):
        d = X.dims[v]
        if d == 0:
            K.append(((), ()))
            I.append(((), ()))
            continue
        ker = la.nullspace(m, p, d)
        K.append(_span(ker, p, d))
        cols = [list(c) for c in zip(*m)]
        I.append(_span(cols, p, d))
    kd = sum(len(k[1]) for k in K)
    if kd == 0 or kd == X.total:
        return None
    return subrep(X, tuple(K)), subrep(X, tuple(I))


def _end_is_local(X: Rep, basis) -> bool:
    """Exhaustive check that every endomorphism is nilpotent or invertible."""
    p = X.p
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        phi = _lin_comb(coeffs, basis, p)
        if _fitting_split(X, phi) is not None:
            return False
    return True


def krull_schmidt(X: Rep, seed: int = 0, trials: int = 40) -> list:
    """Indecomposable summands of X (each in its own basis), unordered."""
    if X.total == 0:
        return []
    p = X.p
    basis = hom_basis(X, X)
    if len(basis) == 1:
        return [X]
    rng = random.Random(seed)
    candidates = []
    for b in basis:
        for lam in range(min(p, 6)):
            candidates.append(tuple(
                [[(b[v][i][j] - (lam if i == j else 0)) % p for j in range(X.dims[v])]
                 for i in range(X.dims[v])] for v in range(len(b))))
    for _ in range(trials):
        candidates.append(_lin_comb([rng.randrange(p) for _ in basis], basis, p))
    for phi in candidates:
        parts = _fitting_split(X, phi)
        if parts is not None:
            return krull_schmidt(parts[0], seed + 1) + krull_schmidt(parts[1], seed + 2)
    if p ** len(basis) <= 4096 and _end_is_local(X, basis):
        return [X]
    raise UnsupportedQuiver(f"could not split a summand of dims {X.dims} with dim End = {len(basis)}")


def is_brick(X: Rep) -> bool:
    return hom_dim(X, X) == 1


def make_label(dimvecs) -> tuple:
    """Canonical class label: dimension vectors sorted in descending order."""
    return tuple(sorted((tuple(d) for d in dimvecs), reverse=True))


def label_dims(label, n: int) -> tuple:
    out = [0] * n
    for d in label:
        out = [x + y for x, y in zip(out, d)]
    return tuple(out)


def multiplicities(label) -> list:
    counts = {}
    for d in label:
        counts[d] = counts.get(d, 0) + 1
    return list(counts.values())


def gl_order(m: int, p: int) -> int:
    out = 1
    for i in range(m):
        out *= p ** m - p ** i
    return out


def aut_order(X: Rep, label=None) -> int:
    """#Aut(X) from dim End and the multiplicities of its brick summands."""
    if label is None:
        summands = krull_schmidt(X)
        if any(not is_brick(s) for s in summands):
            return aut_order_count(X)
        label = make_label(s.dims for s in summands)
    e = hom_dim(X, X)
    ms = multiplicities(label)
    out = X.p ** (e - sum(m * m for m in ms))
    for m in ms:
        out *= gl_order(m, X.p)
    return out


def aut_order_count(X: Rep, budget: int = 1 << 16) -> int:
    """#Aut(X) by running over End(X); used as an oracle."""
    basis = hom_basis(X, X)
    if X.p ** len(basis) > budget:
        raise BudgetExceeded(f"End has {X.p}^{len(basis)} elements")
    count = 0
    for coeffs in itertools.product(range(X.p), repeat=len(basis)):
        f = _lin_comb(coeffs, basis, X.p) if basis else X.identity()
        if all(la.is_invertible(m, X.p) for m in f if m):
            count += 1
    return count


# ---------------------------------------------------------------------------
# enumeration

def _dim_box(dmax, max_total=None):
    out = [d for d in itertools.product(*(range(x + 1) for x in dmax))
           if any(d) and (max_total is None or sum(d) <= max_total)]
    out.sort(key=lambda d: (sum(d), tuple(-x for x in d)))
    return out


def _multisets(parts, target, min_index=0):
    """Multisets of vectors from ``parts`` (sorted list) summing to target."""
    if not any(target):
        yield ()
        return
    for i in range(min_index, len(parts)):
        d = parts[i]
        if vec_le(d, target):
            for rest in _multisets(parts, vec_sub(target, d), i):
                yield (d,) + rest


class RepCategory:
    """Representations of an acyclic quiver over F_p with bounded dimension.

    Holds one brick representative per indecomposable dimension vector and
    classifies arbitrary representations by their Hom dimensions from the
    indecomposables: for representation-finite quivers the vector
    (dim Hom(I, M))_I determines M.
    """

    def __init__(self, quiver: Quiver, p: int, dmax, max_total=None, seed: int = 0,
                 search_budget: int = 4000, total_bound: int = DEFAULT_TOTAL_BOUND):
        self.quiver, self.p = quiver, p
        self.dmax = tuple(dmax)
        if len(self.dmax) != quiver.n:
            raise ValueError("dimension bound length does not match the quiver")
        bound = sum(self.dmax) if max_total is None else min(max_total, sum(self.dmax))
        if bound > total_bound:
            raise BudgetExceeded(f"total dimension {bound} exceeds the bound {total_bound}")
        self.max_total = max_total
        self.indec = {}  # dimvec -> Rep
        self._rng = random.Random(f"{seed}:{p}")
        self._enumerate(search_budget)
        self._finish()

    # enumeration ----------------------------------------------------------
    def _decomposable_labels(self, d):
        parts = sorted(self.indec, reverse=True)
        for ms in _multisets(parts, d):
            if len(ms) >= 2:
                yield make_label(ms)

    def _orbit_mass(self, label, d) -> Fraction:
        X = self.representative(label)
        return Fraction(self._gl(d), aut_order(X, label))

    def _gl(self, d) -> int:
        out = 1
        for x in d:
            out *= gl_order(x, self.p)
        return out

    def _enumerate(self, budget):
        q, p = self.quiver, self.p
        for d in _dim_box(self.dmax, self.max_total):
            target = p ** sum(d[s] * d[t] for s, t in q.arrows)
            mass = sum((self._orbit_mass(lab, d) for lab in self._decomposable_labels(d)),
                       Fraction(0))
            deficit = target - mass
            if deficit == 0:
                continue
            brick_orbit = Fraction(self._gl(d), p - 1)
            if deficit != brick_orbit:
                raise NotRepresentationFinite(
                    f"dims {d}: orbit deficit {deficit} is not one brick orbit ({brick_orbit})")
            for _ in range(budget):
                X = random_rep(q, p, d, self._rng)
                if is_brick(X):
                    self.indec[d] = X
                    break
            else:
                raise BudgetExceeded(f"dims {d}: no brick found in {budget} random tries")

    def _finish(self):
        self.indec_dims = sorted(self.indec, key=lambda d: (sum(d), tuple(-x for x in d)))
        k = len(self.indec_dims)
        reps = [self.indec[d] for d in self.indec_dims]
        self.hom_matrix = [[hom_dim(a, b) for b in reps] for a in reps]
        hinv = _invert_rational(self.hom_matrix) if k else []
        if all(x.denominator == 1 for row in hinv for x in row):
            hinv = [[int(x) for x in row] for row in hinv]
        self._hinv = hinv
        self._memo = {}
        self.labels = []
        for d in _dim_box(self.dmax, self.max_total):
            for ms in _multisets(sorted(self.indec, reverse=True), d):
                self.labels.append(make_label(ms))
        self._by_dims = {}
        for lab in self.labels:
            self._by_dims.setdefault(label_dims(lab, self.quiver.n), []).append(lab)
        self._rep_cache = {}

    # access ---------------------------------------------------------------
    def representative(self, label) -> Rep:
        label = tuple(label)
        rep = self._rep_cache.get(label) if hasattr(self, "_rep_cache") else None
        if rep is None:
            if not label:
                rep = zero_rep(self.quiver, self.p)
            else:
                rep = direct_sum(*(self.indec[d] for d in label))
            if hasattr(self, "_rep_cache"):
                self._rep_cache[label] = rep
        return rep

    def classes(self) -> list:
        """All nonzero class labels within the bound, with representatives."""
        return [(lab, self.representative(lab)) for lab in self.labels]

    def labels_of_dims(self, d) -> list:
        return self._by_dims.get(tuple(d), [])

    def classify(self, M: Rep) -> tuple:
        if M.total == 0:
            return ()
        opts = self._by_dims.get(M.dims)
        if opts is not None and len(opts) == 1:
            return opts[0]
        key = (M.dims, M.maps)
        label = self._memo.get(key)
        if label is not None:
            return label
        h = [hom_dim(self.indec[d], M) for d in self.indec_dims]
        mult = [sum(r * x for r, x in zip(row, h)) for row in self._hinv]
        if any(Fraction(m).denominator != 1 or m < 0 for m in mult):
            raise ConsistencyError(f"Hom profile {h} of dims {M.dims} matches no class")
        label = make_label(d for d, m in zip(self.indec_dims, mult) for _ in range(int(m)))
        if label_dims(label, self.quiver.n) != M.dims:
            raise ConsistencyError(f"Hom profile {h} gives a class of the wrong dimension")
        self._memo[key] = label
        return label

    def aut(self, label) -> int:
        return aut_order(self.representative(label), label)


def _invert_rational(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ConsistencyError("Hom matrix of indecomposables is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def enumerate_classes(quiver: Quiver, dmax, p: int, **kw) -> list:
    """One representative per isomorphism class of each nonzero d <= dmax."""
    return RepCategory(quiver, p, dmax, **kw).classes()


# ---------------------------------------------------------------------------
# counting

def hall_count(cat: RepCategory, Z: Rep, dX) -> dict:
    """{(X, Y): number of subreps U of Z with dims dX, U ~ X and Z/U ~ Y}."""
    if not vec_le(dX, Z.dims):
        raise ValueError("subobject dimension exceeds the ambient dimension")
    out = {}
    for U in subreps(Z, dX):
        key = (cat.classify(subrep(Z, U)), cat.classify(quotient(Z, U)))
        out[key] = out.get(key, 0) + 1
    return out


def extension_rep(X: Rep, Y: Rep, e) -> Rep:
    """Middle term with maps [[X_a, e_a], [0, Y_a]]; X is the subobject."""
    q = X.quiver
    dims = vec_add(X.dims, Y.dims)
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        m = la.zeros(dims[t], dims[s])
        for i in range(X.dims[t]):
            m[i][:X.dims[s]] = X.maps[a][i]
            m[i][X.dims[s]:] = e[a][i]
        for i in range(Y.dims[t]):
            m[X.dims[t] + i][X.dims[s]:] = Y.maps[a][i]
        maps.append(m)
    return make_rep(q, X.p, dims, maps)


def ext_classes(X: Rep, Y: Rep):
    """Yield one cocycle per class of Ext^1(Y, X)."""
    q, p = X.quiver, X.p
    # cocycle coordinates: for arrow a, entries of e_a (dX_t x dY_s)
    offs = []
    n = 0
    for s, t in q.arrows:
        offs.append(n)
        n += X.dims[t] * Y.dims[s]
    # coboundaries of g = (g_v : Y_v -> X_v): X_a g_s - g_t Y_a
    cob = []
    for v in range(q.n):
        for i in range(X.dims[v]):
            for j in range(Y.dims[v]):
                vec = [0] * n
                for a, (s, t) in enumerate(q.arrows):
                    dys = Y.dims[s]
                    if s == v:  # X_a g_s: column j of g_s hits row i
                        for r in range(X.dims[t]):
                            c = X.maps[a][r][i]
                            if c:
                                vec[offs[a] + r * dys + j] += c
                    if t == v:  # g_t Y_a
                        for k in range(dys):
                            c = Y.maps[a][j][k]
                            if c:
                                vec[offs[a] + i * dys + k] -= c
                cob.append([x % p for x in vec])
    _, piv = la.rref(cob, p, n) if cob and n else ([], [])
    free = [c for c in range(n) if c not in set(piv)]
    for vals in itertools.product(range(p), repeat=len(free)):
        vec = [0] * n
        for c, x in zip(free, vals):
            vec[c] = x
        e = []
        for a, (s, t) in enumerate(q.arrows):
            dys = Y.dims[s]
            e.append([vec[offs[a] + r * dys: offs[a] + (r + 1) * dys] for r in range(X.dims[t])])
        yield e


def ext_classify(cat: RepCategory, X: Rep, Y: Rep) -> dict:
    """{Z: number of classes in Ext^1(Y, X) whose middle term is Z}."""
    out = {}
    total = 0
    for e in ext_classes(X, Y):
        key = cat.classify(extension_rep(X, Y, e))
        out[key] = out.get(key, 0) + 1
        total += 1
    expect = X.p ** ext1_dim(Y, X)
    if total != expect:
        raise ConsistencyError(f"{total} extension classes, expected {expect}")
    return out


def direct_sum_splittings(cat: RepCategory, Z: Rep, dX, budget: int | None = None) -> dict:
    """{(X, Y): ordered pairs (U, V) of subreps with Z = U + V direct}.

    Raises BudgetExceeded when more than ``budget`` candidate pairs would be
    examined.
    """
    dY = vec_sub(Z.dims, dX)
    if any(x < 0 for x in dY):
        raise ValueError("subobject dimension exceeds the ambient dimension")
    p = Z.p
    Vs = list(subreps(Z, dY))
    Us = list(subreps(Z, dX))
    if budget is not None and len(Us) * len(Vs) > budget:
        raise BudgetExceeded(f"{len(Us) * len(Vs)} candidate splittings")
    out = {}
    for U in Us:
        cu = None
        for V in Vs:
            if all(la.rank(list(U[v][0]) + list(V[v][0]), p) == Z.dims[v] if Z.dims[v] else True
                   for v in range(Z.quiver.n)):
                if cu is None:
                    cu = cat.classify(subrep(Z, U))
                key = (cu, cat.classify(subrep(Z, V)))
                out[key] = out.get(key, 0) + 1
    return out


# ---------------------------------------------------------------------------
# pairs S <= Z as representations of the doubled quiver

@lru_cache(maxsize=None)
def doubled_quiver(q: Quiver) -> Quiver:
    """Q x A2: a copy of Q for S (vertices 0..n-1), one for Z, and S_v -> Z_v."""
    n = q.n
    arrows = list(q.arrows) + [(s + n, t + n) for s, t in q.arrows] + [(v, v + n) for v in range(n)]
    return Quiver(2 * n, tuple(arrows))


def pair_rep(Z: Rep, U) -> Rep:
    S = subrep(Z, U)
    n = Z.quiver.n
    incl = [[list(r) for r in zip(*U[v][0])] if U[v][0] else [[] for _ in range(Z.dims[v])]
            for v in range(n)]
    return make_rep(doubled_quiver(Z.quiver), Z.p, S.dims + Z.dims,
                    list(S.maps) + list(Z.maps) + incl)


def pair_label(cat: RepCategory, Z: Rep, U) -> tuple:
    """(class of Z, sorted doubled dimension vectors of the pair's summands)."""
    summands = krull_schmidt(pair_rep(Z, U))
    return (cat.classify(Z), make_label(s.dims for s in summands))


def pair_classes(cat: RepCategory, Z: Rep, dS) -> dict:
    """{pair label: (number of subreps in the class, representative U)}.

    Each class is certified to be a single Aut(Z)-orbit: its size times the
    order of the pair's automorphism group must equal #Aut(Z).
    """
    out = {}
    for U in subreps(Z, dS):
        lab = pair_label(cat, Z, U)
        if lab in out:
            out[lab][0] += 1
        else:
            out[lab] = [1, U]
    autz = aut_order(Z, cat.classify(Z))
    for lab, (count, U) in out.items():
        stab = aut_order(pair_rep(Z, U), lab[1])
        if count * stab != autz:
            raise ConsistencyError(f"pair class {lab} is not a single orbit")
    return {lab: (c, U) for lab, (c, U) in out.items()}


def flag_count(cat: RepCategory, Z: Rep, S, direction: str = "up") -> dict:
    """Count intermediate subreps for the flag actions.

    ``up``: S <= S2 <= Z keyed by (class of S2/S, pair label of S2 <= Z).
    ``down``: S1 <= S <= Z keyed by (class of S/S1, pair label of S1 <= Z).
    """
    n = Z.quiver.n
    dS = tuple(len(S[v][1]) for v in range(n))
    out = {}
    if direction == "up":
        for d in itertools.product(*(range(a, b + 1) for a, b in zip(dS, Z.dims))):
            for S2 in subreps(Z, d, containing=S):
                sub = subrep(Z, S2)
                inner = _coords_in(Z, S, S2)
                key = (cat.classify(quotient(sub, inner)), pair_label(cat, Z, S2))
                out[key] = out.get(key, 0) + 1
    elif direction == "down":
        sub = subrep(Z, S)
        for d in itertools.product(*(range(0, b + 1) for b in dS)):
            for S1 in subreps(Z, d, within=S):
                inner = _coords_in(Z, S1, S)
                key = (cat.classify(quotient(sub, inner)), pair_label(cat, Z, S1))
                out[key] = out.get(key, 0) + 1
    else:
        raise ValueError("direction must be 'up' or 'down'")
    return out


def _coords_in(Z: Rep, A, B):
    """A <= B expressed as a subspace tuple of the subrep on B (echelon coords)."""
    out = []
    for v in range(Z.quiver.n):
        rows_b, piv_b = B[v]
        vecs = [[u[c] for c in piv_b] for u in A[v][0]]
        out.append(_span(vecs, Z.p, len(piv_b)))
    return tuple(out)
