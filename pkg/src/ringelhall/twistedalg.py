"""The explicit algebras A, B and C built from a biadditive form chi.

* A has basis a^alpha with a^alpha * a^beta = L^(-chi(beta, alpha)) a^(alpha + beta).
* B has basis b[I, kappa] indexed by multisets of nonzero dimension vectors.
  Its product has two independent implementations: the alternating sum over
  partitions (``mode="sum"``) and the connected-graph sum (``mode="graph"``).
* C is the value of B at L = 1, with spanning-tree weights -chi(lambda_j, kappa_i).

Multisets are stored as tuples of dimension vectors in descending order.  A
product is a sum over set partitions of I + J whose blocks become the parts
of the output multiset; a block with two or more elements contributes only
when it meets both I and J.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

from .coeffring import RatFunc, ONE, ZERO, pi_eval, is_lambda_circ, NotInLambdaCirc
from .elements import LinComb, fmt_label, fmt_vec, vec_key
from .quiver import EulerForm, euler_form

__all__ = [
    "AElem", "BElem", "CElem", "GraphCapExceeded", "a_basis", "b_basis", "c_basis",
    "a_mult", "a_poset_op", "b_mult", "c_mult", "b_bracket", "c_bracket", "ind_bracket",
    "pi_morphism", "delta_BA", "rescale_basis", "aut_order_multiset", "bipartite_betti",
    "set_partitions", "spanning_trees", "GRAPH_EDGE_CAP",
]

GRAPH_EDGE_CAP = 16


class GraphCapExceeded(ValueError):
    """Graph mode would enumerate more than 2^16 edge subsets."""


def _class(vs) -> tuple:
    return tuple(sorted((tuple(v) for v in vs), reverse=True))


class AElem(LinComb):
    prefix = "a"
    zero_coeff = ZERO

    @staticmethod
    def normalize_key(k):
        return tuple(k)

    @staticmethod
    def sort_key(k):
        return vec_key(k)

    def fmt_basis(self, k) -> str:
        return "a" + fmt_vec(k)

    @classmethod
    def coerce(cls, c):
        return RatFunc.coerce(c)


class BElem(LinComb):
    prefix = "b"
    zero_coeff = ZERO

    @staticmethod
    def normalize_key(k):
        return _class(k)

    def fmt_basis(self, k) -> str:
        return "b{" + fmt_label(k) + "}"

    @classmethod
    def coerce(cls, c):
        return RatFunc.coerce(c)

    def in_lambda_circ(self) -> bool:
        return all(is_lambda_circ(c) for c in self.terms.values())


class CElem(LinComb):
    prefix = "c"

    @staticmethod
    def normalize_key(k):
        return _class(k)

    def fmt_basis(self, k) -> str:
        return "c{" + fmt_label(k) + "}"


def a_basis(alpha, coeff=ONE) -> AElem:
    return AElem({tuple(alpha): RatFunc.coerce(coeff)})


def b_basis(*vs, coeff=ONE) -> BElem:
    return BElem({_class(vs): RatFunc.coerce(coeff)})


def c_basis(*vs, coeff=1) -> CElem:
    return CElem({_class(vs): Fraction(coeff)})


def aut_order_multiset(k) -> int:
    counts = {}
    for v in k:
        counts[v] = counts.get(v, 0) + 1
    out = 1
    for m in counts.values():
        out *= factorial(m)
    return out


def _ell_pow(c) -> RatFunc:
    """L^c for c in (1/2)Z."""
    return RatFunc.ell_power(c)


# ---------------------------------------------------------------------------
# A

def a_mult(x: AElem, y: AElem, F: EulerForm) -> AElem:
    out = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            k = tuple(i + j for i, j in zip(a, b))
            out[k] = out.get(k, ZERO) + ca * cb * _ell_pow(-euler_form(F, b, a))
    return AElem(out)


def a_poset_op(P, inputs, F: EulerForm) -> AElem:
    """P(a^alpha_1, ..., a^alpha_n) = prod over i != j, i <= j of L^(-chi(alpha_j, alpha_i)) a^(sum)."""
    if len(inputs) != P.n:
        raise ValueError("one input per poset element is required")
    pairs = P.strict_pairs()
    out = {}

    def rec(i, vecs, coeff):
        if i == P.n:
            e = 0
            for a, b in pairs:
                e += euler_form(F, vecs[b], vecs[a])
            k = tuple(sum(col) for col in zip(*vecs)) if vecs else ()
            out[k] = out.get(k, ZERO) + coeff * _ell_pow(-e)
            return
        for v, c in inputs[i].terms.items():
            rec(i + 1, vecs + [v], coeff * c)

    rec(0, [], ONE)
    return AElem(out)


# ---------------------------------------------------------------------------
# Laurent polynomials in L with integer coefficients, as {exponent: coeff}

def _lmul(a: dict, b: dict) -> dict:
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _ladd_into(acc: dict, a: dict, scale: int = 1):
    for k, v in a.items():
        acc[k] = acc.get(k, 0) + scale * v
        if not acc[k]:
            del acc[k]


_LM1 = {1: 1, 0: -1}


@lru_cache(maxsize=None)
def _lm1_pow(k: int) -> tuple:
    out = {0: 1}
    for _ in range(k):
        out = _lmul(out, _LM1)
    return tuple(sorted(out.items()))


def _div_lm1(a: dict) -> dict:
    """Exact division by (L - 1); the caller guarantees a(1) = 0."""
    if not a:
        return {}
    lo, hi = min(a), max(a)
    out = {}
    carry = 0
    # a = (L - 1) q: walk from the top degree down
    for e in range(hi, lo, -1):
        carry += a.get(e, 0)
        if carry:
            out[e - 1] = carry
    if carry + a.get(lo, 0) != 0:
        raise ArithmeticError("not divisible by L - 1")
    return out


def _geom(c: int) -> dict:
    """(L^c - 1)/(L - 1) as a Laurent polynomial."""
    if c >= 0:
        return {k: 1 for k in range(c)}
    return {k: -1 for k in range(c, 0)}


def _to_ratfunc(a: dict, denom_power: int) -> RatFunc:
    """a / (L - 1)^denom_power, built directly in canonical form.

    After cancelling (L - 1) the numerator is nonzero at L = 1 and has a
    nonzero lowest coefficient, so it is coprime to (L - 1)^k L^s; the monic
    denominator makes the pair jointly primitive.
    """
    a = dict(a)
    while denom_power > 0 and a and sum(a.values()) == 0:
        a = _div_lm1(a)
        denom_power -= 1
    if not a:
        return ZERO
    lo = min(a)
    num = [0] * (2 * (max(a) - lo) + 1)
    for e, c in a.items():
        num[2 * (e - lo)] = c
    den = [0] * (2 * denom_power + 1)
    for e, c in _lm1_pow(denom_power):
        den[2 * e] = c
    if lo > 0:
        num = [0] * (2 * lo) + num
    elif lo < 0:
        den = [0] * (-2 * lo) + den
    return RatFunc(tuple(num), tuple(den), _canonical=True)


# ---------------------------------------------------------------------------
# partitions and graphs

def set_partitions(n: int):
    """Set partitions of range(n) as lists of blocks."""
    if n == 0:
        yield []
        return
    for rest in set_partitions(n - 1):
        yield [[n - 1]] + rest
        for i in range(len(rest)):
            yield rest[:i] + [rest[i] + [n - 1]] + rest[i + 1:]


def _mixed_partitions(nI: int, nJ: int):
    """Partitions of I + J (I = 0..nI-1) whose blocks of size >= 2 meet both sides.

    The smaller side is split into groups first; each element of the other
    side is then a singleton or joins one group.  A group of two or more
    anchors must receive at least one element from the other side.
    """
    if nI <= nJ:
        anchors, others = list(range(nI)), list(range(nI, nI + nJ))
    else:
        anchors, others = list(range(nI, nI + nJ)), list(range(nI))
    for groups in set_partitions(len(anchors)):
        g = len(groups)
        for choice in product(range(g + 1), repeat=len(others)):
            hit = [False] * g
            for c in choice:
                if c:
                    hit[c - 1] = True
            if any(len(groups[k]) > 1 and not hit[k] for k in range(g)):
                continue
            blocks = [[anchors[a] for a in grp] for grp in groups]
            singles = []
            for o, c in zip(others, choice):
                if c:
                    blocks[c - 1].append(o)
                else:
                    singles.append([o])
            yield blocks + singles


def bipartite_betti(nI: int, nJ: int, edges) -> int:
    """b1 = #edges - #vertices + #components."""
    parent = list(range(nI + nJ))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = nI + nJ
    for i, j in edges:
        a, b = find(i), find(nI + j)
        if a != b:
            parent[a] = b
            comps -= 1
    return len(edges) - (nI + nJ) + comps


def _connected(nI, nJ, edges) -> bool:
    n = nI + nJ
    if n == 1:
        return True
    return bipartite_betti(nI, nJ, edges) == len(edges) - n + 1


def spanning_trees(nI: int, nJ: int):
    """Spanning trees of the complete bipartite graph K(nI, nJ), as edge lists.

    Edges are added one at a time in a fixed order; an edge closing a cycle
    is never added, and a branch stops when too few edges remain.
    """
    n = nI + nJ
    if n == 1:
        yield []
        return
    edges = [(i, j) for i in range(nI) for j in range(nJ)]
    need = n - 1

    def rec(k, chosen, parent):
        if len(chosen) == need:
            yield list(chosen)
            return
        if len(edges) - k < need - len(chosen):
            return
        i, j = edges[k]
        # branch 1: include edge k when it joins two components
        root = parent[:]

        def find(x):
            while root[x] != x:
                x = root[x]
            return x

        a, b = find(i), find(nI + j)
        if a != b:
            root[a] = b
            chosen.append((i, j))
            yield from rec(k + 1, chosen, root)
            chosen.pop()
        yield from rec(k + 1, chosen, parent)

    yield from rec(0, [], list(range(n)))


# ---------------------------------------------------------------------------
# B: per-block weights

def _chi_int(F, a, b) -> int:
    v = euler_form(F, a, b)
    if Fraction(v).denominator != 1:
        raise ValueError("the B algebra needs an integer-valued form")
    return int(v)


@lru_cache(maxsize=None)
def _block_sum(F: EulerForm, kap: tuple, lam: tuple) -> dict:
    """sum over partitions P of the block of (-1)^(|P|-1) (|P|-1)! prod L^(-chi(lambda_j, kappa_i))."""
    nI, nJ = len(kap), len(lam)
    chi = [[_chi_int(F, lam[j], kap[i]) for j in range(nJ)] for i in range(nI)]
    acc = {}
    for part in set_partitions(nI + nJ):
        e = 0
        for b in part:
            I = [x for x in b if x < nI]
            J = [x - nI for x in b if x >= nI]
            for i in I:
                for j in J:
                    e -= chi[i][j]
        m = len(part)
        acc[e] = acc.get(e, 0) + (-1) ** (m - 1) * factorial(m - 1)
    return {k: v for k, v in acc.items() if v}


@lru_cache(maxsize=None)
def _block_graph(F: EulerForm, kap: tuple, lam: tuple) -> dict:
    """sum over connected graphs on the block of (L-1)^b1 prod (L^(-chi) - 1)/(L - 1)."""
    nI, nJ = len(kap), len(lam)
    if nI * nJ > GRAPH_EDGE_CAP:
        raise GraphCapExceeded(f"block with {nI} x {nJ} edge slots exceeds {GRAPH_EDGE_CAP}")
    if nI + nJ == 1:
        return {0: 1}
    edges = [(i, j) for i in range(nI) for j in range(nJ)]
    factor = [_geom(-_chi_int(F, lam[j], kap[i])) for i, j in edges]
    acc = {}
    for mask in range(1 << len(edges)):
        chosen = [edges[k] for k in range(len(edges)) if mask >> k & 1]
        if len(chosen) < nI + nJ - 1:
            continue
        b1 = bipartite_betti(nI, nJ, chosen)
        if b1 != len(chosen) - (nI + nJ) + 1:
            continue  # more than one component
        term = dict(_lm1_pow(b1))
        for k in range(len(edges)):
            if mask >> k & 1:
                term = _lmul(term, factor[k])
                if not term:
                    break
        _ladd_into(acc, term)
    return acc


@lru_cache(maxsize=None)
def _b_basis_product_cached(k1: tuple, k2: tuple, F: EulerForm, mode: str) -> tuple:
    """((class, numerator), ...) and the power D with b[k1] * b[k2] = sum numerator / (L-1)^D."""
    nI, nJ = len(k1), len(k2)
    if mode == "graph" and nI * nJ > GRAPH_EDGE_CAP:
        raise GraphCapExceeded(f"|I| |J| = {nI * nJ} exceeds {GRAPH_EDGE_CAP}")
    labels = list(k1) + list(k2)
    acc = {}
    for part in _mixed_partitions(nI, nJ):
        weight = {0: 1}
        parts = []
        for b in part:
            kap = tuple(sorted(labels[x] for x in b if x < nI))
            lam = tuple(sorted(labels[x] for x in b if x >= nI))
            if mode == "sum":
                w = _block_sum(F, kap, lam)
            elif mode == "graph":
                w = _block_graph(F, kap, lam)
            else:
                raise ValueError("mode must be 'sum' or 'graph'")
            weight = _lmul(weight, w)
            if not weight:
                break
            parts.append(tuple(sum(c) for c in zip(*(kap + lam))))
        if not weight:
            continue
        key = _class(parts)
        if mode == "sum":
            # (L - 1)^(|Q| - |I| - |J|) = (L - 1)^|Q| / (L - 1)^(|I| + |J|)
            weight = _lmul(weight, dict(_lm1_pow(len(part))))
        acc.setdefault(key, {})
        _ladd_into(acc[key], weight)
    denom = nI + nJ if mode == "sum" else 0
    return tuple((k, tuple(sorted(v.items()))) for k, v in acc.items() if v), denom


def b_mult(x: BElem, y: BElem, F: EulerForm, mode: str = "sum") -> BElem:
    # numerators are gathered per (class, input coefficient) over a common
    # power of (L - 1), and turned into rational functions once at the end
    acc = {}
    top = 0
    pieces = []
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            terms, denom = _b_basis_product_cached(k1, k2, F, mode)
            top = max(top, denom)
            pieces.append((c1 * c2, terms, denom))
    for cc, terms, denom in pieces:
        pad = dict(_lm1_pow(top - denom))
        for k, poly in terms:
            slot = acc.setdefault(k, {}).setdefault(cc, {})
            _ladd_into(slot, _lmul(dict(poly), pad) if pad != {0: 1} else dict(poly))
    out = {}
    for k, by_coeff in acc.items():
        total = ZERO
        for cc, poly in by_coeff.items():
            if poly:
                total = total + cc * _to_ratfunc(poly, top)
        out[k] = total
    return BElem(out)


def b_bracket(x: BElem, y: BElem, F: EulerForm, mode: str = "sum") -> BElem:
    return b_mult(x, y, F, mode) - b_mult(y, x, F, mode)


# ---------------------------------------------------------------------------
# C

@lru_cache(maxsize=None)
def _block_trees(F: EulerForm, kap: tuple, lam: tuple) -> Fraction:
    nI, nJ = len(kap), len(lam)
    w = [[-Fraction(euler_form(F, lam[j], kap[i])) for j in range(nJ)] for i in range(nI)]
    total = Fraction(0)
    for tree in spanning_trees(nI, nJ):
        t = Fraction(1)
        for i, j in tree:
            t *= w[i][j]
            if not t:
                break
        total += t
    return total


@lru_cache(maxsize=None)
def _c_basis_product(k1: tuple, k2: tuple, F: EulerForm) -> tuple:
    nI, nJ = len(k1), len(k2)
    labels = list(k1) + list(k2)
    acc = {}
    for part in _mixed_partitions(nI, nJ):
        weight = Fraction(1)
        parts = []
        for b in part:
            kap = tuple(sorted(labels[x] for x in b if x < nI))
            lam = tuple(sorted(labels[x] for x in b if x >= nI))
            weight *= _block_trees(F, kap, lam)
            if not weight:
                break
            parts.append(tuple(sum(c) for c in zip(*(kap + lam))))
        if weight:
            key = _class(parts)
            acc[key] = acc.get(key, 0) + weight
    return tuple((k, v) for k, v in acc.items() if v)


def c_mult(x: CElem, y: CElem, F: EulerForm) -> CElem:
    out = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            for k, c in _c_basis_product(k1, k2, F):
                out[k] = out.get(k, 0) + c * c1 * c2
    return CElem(out)


def c_bracket(x: CElem, y: CElem, F: EulerForm) -> CElem:
    return c_mult(x, y, F) - c_mult(y, x, F)


def ind_bracket(kind: str, alpha, beta, F: EulerForm):
    """Bracket of singleton classes: kind B, C, or CY (C with the form chi-bar / 2)."""
    alpha, beta = tuple(alpha), tuple(beta)
    if kind == "B":
        return b_bracket(b_basis(alpha), b_basis(beta), F)
    if kind == "C":
        return c_bracket(c_basis(alpha), c_basis(beta), F)
    if kind == "CY":
        res = c_bracket(c_basis(alpha), c_basis(beta), F.half_antisym())
        for v in res.terms.values():
            if v.denominator != 1:
                raise ArithmeticError(f"CY bracket coefficient {v} is not an integer")
        return res
    raise ValueError("kind must be B, C or CY")


# ---------------------------------------------------------------------------
# morphisms and rescaled bases

def pi_morphism(x: BElem) -> CElem:
    """Coefficientwise value at L = 1; every coefficient must lie in the subring."""
    out = {}
    for k, c in x.terms.items():
        if not is_lambda_circ(c):
            raise NotInLambdaCirc(f"coefficient {c} of b{{{fmt_label(k)}}} has a pole at L = 1")
        out[k] = pi_eval(c)
    return CElem(out)


def delta_BA(x: BElem) -> AElem:
    """b[I, kappa] -> (L - 1)^(-|I|) a^(kappa(I))."""
    out = {}
    for k, c in x.terms.items():
        if k:
            alpha = tuple(sum(col) for col in zip(*k))
        else:
            raise ValueError("the empty class needs an explicit rank; use delta_BA_rank")
        out[alpha] = out.get(alpha, ZERO) + c / RatFunc((-1, 0, 1)) ** len(k)
    return AElem(out)


def delta_BA_rank(x: BElem, n: int) -> AElem:
    """delta_BA for elements that may involve the empty class on Z^n."""
    out = {}
    for k, c in x.terms.items():
        alpha = tuple(sum(col) for col in zip(*k)) if k else (0,) * n
        out[alpha] = out.get(alpha, ZERO) + c / RatFunc((-1, 0, 1)) ** len(k)
    return AElem(out)


def rescale_basis(kind: str, alpha, F: EulerForm):
    """A-tilde: P^(-chi(alpha, alpha)) a^alpha.  B-tilde: P^(1 - chi(alpha, alpha)) b^alpha."""
    alpha = tuple(alpha)
    c = euler_form(F, alpha, alpha)
    if kind in ("A-tilde", "A"):
        return a_basis(alpha, RatFunc.monomial(-c))
    if kind in ("B-tilde", "B"):
        return b_basis(alpha, coeff=RatFunc.monomial(1 - c))
    raise ValueError("kind must be A-tilde or B-tilde")
