from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import b_product_literal, weighted_tree_sum
from ringelhall.coeffring import L, ONE, P, ZERO, NotInLambdaCirc, RatFunc, is_lambda_circ
from ringelhall.quiver import EulerForm
from ringelhall.twistedalg import (GRAPH_EDGE_CAP, AElem, BElem, CElem, GraphCapExceeded,
                                   _mixed_partitions, a_basis, a_mult, b_basis, b_bracket,
                                   b_mult, bipartite_betti, c_basis, c_bracket, c_mult,
                                   delta_BA, delta_BA_rank, ind_bracket, pi_morphism,
                                   rescale_basis, set_partitions, spanning_trees)

entry = st.integers(-2, 2)
forms = st.tuples(entry, entry, entry, entry).map(
    lambda t: EulerForm.from_matrix([[t[0], t[1]], [t[2], t[3]]]))
vecs = st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any)
classes = st.lists(vecs, min_size=0, max_size=2).map(lambda v: tuple(sorted(v, reverse=True)))
CHI = EulerForm.from_matrix([[1, -1], [0, 1]])
BELL = [1, 1, 2, 5, 15, 52, 203]


def chi_of(F):
    return lambda a, b: F(a, b)


def literal_as_ratfunc(k1, k2, F):
    raw = b_product_literal(k1, k2, chi_of(F))
    den = (L - 1) ** (len(k1) + len(k2))
    out = {}
    for k, poly in raw.items():
        num = ZERO
        for e, c in poly.items():
            num = num + RatFunc.ell_power(e) * RatFunc.const(c)
        out[k] = num / den
    return {k: v for k, v in out.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# combinatorics

@pytest.mark.parametrize("n", range(7))
def test_set_partitions_bell(n):
    parts = list(set_partitions(n))
    assert len(parts) == BELL[n]
    assert len({tuple(sorted(tuple(sorted(b)) for b in p)) for p in parts}) == BELL[n]


@pytest.mark.parametrize("nI,nJ", [(a, b) for a in range(5) for b in range(5)])
def test_mixed_partitions_are_the_filtered_partitions(nI, nJ):
    def canon(p):
        return tuple(sorted(tuple(sorted(b)) for b in p))

    want = {canon(p) for p in set_partitions(nI + nJ)
            if all(len(b) == 1 or (min(b) < nI <= max(b)) for b in p)}
    got = [canon(p) for p in _mixed_partitions(nI, nJ)]
    assert len(got) == len(set(got))
    assert set(got) == want


@pytest.mark.parametrize("nI,nJ", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3), (3, 4)])
def test_spanning_tree_count(nI, nJ):
    trees = list(spanning_trees(nI, nJ))
    assert len(trees) == nI ** (nJ - 1) * nJ ** (nI - 1)
    assert all(bipartite_betti(nI, nJ, t) == 0 for t in trees)


def test_betti():
    full = [(i, j) for i in range(2) for j in range(2)]
    assert bipartite_betti(2, 2, full) == 1
    assert bipartite_betti(2, 3, [(i, j) for i in range(2) for j in range(3)]) == 2


# ---------------------------------------------------------------------------
# A

def test_a_product():
    x = a_mult(a_basis((1, 0)), a_basis((0, 1)), CHI)
    assert x == a_basis((1, 1), L ** -CHI((0, 1), (1, 0)))
    y = a_mult(a_basis((0, 1)), a_basis((1, 0)), CHI)
    assert y == a_basis((1, 1), L)
    assert str(a_mult(a_basis((0,)), a_basis((0,)), EulerForm.from_matrix([[1]]))) == "a[0]"


@given(forms, vecs, vecs, vecs)
def test_a_associative(F, a, b, c):
    x, y, z = a_basis(a), a_basis(b), a_basis(c)
    assert a_mult(a_mult(x, y, F), z, F) == a_mult(x, a_mult(y, z, F), F)


# ---------------------------------------------------------------------------
# B

def test_b_simple_products():
    x = b_mult(b_basis((1, 0)), b_basis((0, 1)), CHI)
    # chi((0,1),(1,0)) = 0, so the merged term vanishes
    assert x == b_basis((1, 0), (0, 1))
    y = b_mult(b_basis((0, 1)), b_basis((1, 0)), CHI)
    assert y == b_basis((1, 0), (0, 1)) + b_basis((1, 1), coeff=ONE)


def test_b_unit():
    x = b_basis((1, 0), (0, 1), coeff=L)
    assert b_mult(b_basis(), x, CHI) == x == b_mult(x, b_basis(), CHI)


@settings(max_examples=40, deadline=None)
@given(forms, classes, classes)
def test_b_matches_literal_enumeration(F, k1, k2):
    got = b_mult(b_basis(*k1), b_basis(*k2), F)
    assert dict(got.terms) == literal_as_ratfunc(k1, k2, F)


@settings(max_examples=40, deadline=None)
@given(forms, classes, classes)
def test_b_sum_equals_graph(F, k1, k2):
    x, y = b_basis(*k1), b_basis(*k2)
    assert b_mult(x, y, F, "sum") == b_mult(x, y, F, "graph")


@settings(max_examples=30, deadline=None)
@given(forms, classes, classes)
def test_b_leading_coefficient_is_one(F, k1, k2):
    prod = b_mult(b_basis(*k1), b_basis(*k2), F)
    assert prod.coeff(tuple(sorted(k1 + k2, reverse=True))) == ONE


@settings(max_examples=25, deadline=None)
@given(forms, classes, classes, classes)
def test_b_associative(F, k1, k2, k3):
    x, y, z = b_basis(*k1), b_basis(*k2), b_basis(*k3)
    assert b_mult(b_mult(x, y, F), z, F) == b_mult(x, b_mult(y, z, F), F)


@settings(max_examples=30, deadline=None)
@given(forms, classes, classes)
def test_b_products_stay_in_lambda_circ(F, k1, k2):
    assert b_mult(b_basis(*k1), b_basis(*k2), F).in_lambda_circ()


def test_graph_cap():
    big = tuple([(1, 0)] * 5)
    assert len(big) * 4 > GRAPH_EDGE_CAP
    with pytest.raises(GraphCapExceeded):
        b_mult(b_basis(*big), b_basis(*[(0, 1)] * 4), CHI, "graph")
    with pytest.raises(ValueError):
        b_mult(b_basis((1, 0)), b_basis((0, 1)), CHI, "other")


def test_b_needs_integer_form():
    with pytest.raises(ValueError):
        b_mult(b_basis((1, 0)), b_basis((0, 1)), CHI.half_antisym())


@given(forms, vecs, vecs)
def test_b_tilde_bracket_is_quantum_integer(F, a, b):
    n = F(a, b) - F(b, a)
    ab = tuple(x + y for x, y in zip(a, b))
    br = b_bracket(rescale_basis("B-tilde", a, F), rescale_basis("B-tilde", b, F), F)
    coeff = br.coeff((ab,)) / rescale_basis("B-tilde", ab, F).coeff((ab,))
    assert coeff == (P ** n - P ** -n) / (P - P ** -1)


@given(forms, vecs, vecs)
def test_a_tilde_product_depends_on_antisymmetric_part(F, a, b):
    ab = tuple(x + y for x, y in zip(a, b))
    prod = a_mult(rescale_basis("A-tilde", a, F), rescale_basis("A-tilde", b, F), F)
    assert prod.coeff(ab) / rescale_basis("A-tilde", ab, F).coeff(ab) == P ** (F(a, b) - F(b, a))


# ---------------------------------------------------------------------------
# C

@settings(max_examples=40, deadline=None)
@given(forms, st.lists(vecs, min_size=1, max_size=3), st.lists(vecs, min_size=1, max_size=3))
def test_c_single_block_is_weighted_tree_sum(F, k1, k2):
    k1, k2 = tuple(sorted(k1, reverse=True)), tuple(sorted(k2, reverse=True))
    total = tuple(sum(c) for c in zip(*(k1 + k2)))
    prod = c_mult(c_basis(*k1), c_basis(*k2), F)
    want = weighted_tree_sum(len(k1), len(k2), lambda i, j: -F(k2[j], k1[i]))
    assert prod.coeff((total,)) == want


@settings(max_examples=25, deadline=None)
@given(forms, classes, classes, classes)
def test_c_associative(F, k1, k2, k3):
    x, y, z = c_basis(*k1), c_basis(*k2), c_basis(*k3)
    assert c_mult(c_mult(x, y, F), z, F) == c_mult(x, c_mult(y, z, F), F)


def test_c_rational_form():
    H = CHI.half_antisym()
    x = c_mult(c_basis((1, 0)), c_basis((0, 1)), H)
    assert x.coeff(((1, 1),)) == Fraction(-1, 2)


# ---------------------------------------------------------------------------
# morphisms and brackets

@settings(max_examples=30, deadline=None)
@given(forms, classes, classes, st.sampled_from([ONE, L, 1 / (L + 1), 2 * L - 3]))
def test_pi_is_a_morphism(F, k1, k2, c):
    x, y = b_basis(*k1, coeff=c), b_basis(*k2)
    assert pi_morphism(b_mult(x, y, F)) == c_mult(pi_morphism(x), pi_morphism(y), F)


@settings(max_examples=30, deadline=None)
@given(forms, classes, classes)
def test_delta_is_a_morphism(F, k1, k2):
    x, y = b_basis(*k1), b_basis(*k2)
    lhs = delta_BA_rank(b_mult(x, y, F), 2)
    assert lhs == a_mult(delta_BA_rank(x, 2), delta_BA_rank(y, 2), F)


def test_pi_rejects_poles():
    with pytest.raises(NotInLambdaCirc):
        pi_morphism(b_basis((1, 0), coeff=1 / (L - 1)))
    assert not is_lambda_circ(1 / (P + 1))


def test_delta_values():
    assert delta_BA(b_basis((1, 0), (0, 1))) == a_basis((1, 1), 1 / (L - 1) ** 2)
    with pytest.raises(ValueError):
        delta_BA(b_basis())


@given(forms, vecs, vecs, vecs)
def test_brackets_jacobi_and_antisymmetry(F, a, b, c):
    H = F.half_antisym()
    for mk, br in ((b_basis, lambda u, v: b_bracket(u, v, F)),
                   (c_basis, lambda u, v: c_bracket(u, v, F)),
                   (c_basis, lambda u, v: c_bracket(u, v, H))):
        x, y, z = mk(a), mk(b), mk(c)
        assert (br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))).is_zero()
        assert br(x, y) == -br(y, x)
        assert all(len(k) == 1 for k in br(x, y).terms)


@given(forms, vecs, vecs, entry, entry, entry)
def test_cy_bracket(F, a, b, s0, s1, s2):
    cy = ind_bracket("CY", a, b, F)
    ab = tuple(x + y for x, y in zip(a, b))
    assert cy.coeff((ab,)) == F.bar(a, b)
    S = EulerForm.from_matrix([[s0, s1], [s1, s2]])
    assert ind_bracket("CY", a, b, F.plus(S)) == cy
    assert ind_bracket("C", a, b, F).coeff((ab,)) == F.bar(a, b)


def test_ind_bracket_kinds():
    with pytest.raises(ValueError):
        ind_bracket("D", (1, 0), (0, 1), CHI)
    with pytest.raises(ValueError):
        rescale_basis("C", (1, 0), CHI)


def test_text_forms():
    assert str(b_basis((1, 0), (0, 1))) == "b{[1,0],[0,1]}"
    assert str(c_basis((1, 1), coeff=Fraction(1, 2))).startswith("1/2")
    assert str(a_basis((1, 0))) == "a[1,0]"
    assert isinstance(b_basis(), BElem) and isinstance(c_basis(), CElem)
    assert isinstance(a_basis((0, 0)), AElem)


def test_a_examples():
    from ringelhall.poset import Poset
    from ringelhall.twistedalg import a_poset_op
    F = EulerForm.from_matrix([[1, -1], [0, 1]])
    e1, e2 = (1, 0), (0, 1)
    x, y = a_basis(e1), a_basis(e2)
    want = a_basis((2, 1), L ** (-F(e2, e1) - F(e1, e2) - F(e1, e1)))
    assert a_mult(a_mult(x, y, F), x, F) == want == a_mult(x, a_mult(y, x, F), F)
    n = Poset(4, [(0, 2), (1, 2), (1, 3)])
    ins = [x, y, x, y]
    e = -sum(F((e1, e2, e1, e2)[j], (e1, e2, e1, e2)[i]) for i, j in n.strict_pairs())
    assert a_poset_op(n, ins, F) == a_basis((2, 2), L ** e)


def test_bracket_examples():
    F = EulerForm.from_matrix([[1, -1], [0, 1]])
    assert ind_bracket("C", (1, 0), (0, 1), F) == c_basis((1, 1), coeff=-1)
    sym = EulerForm.from_matrix([[1, 2], [2, -1]])
    assert ind_bracket("B", (1, 0), (0, 1), sym).is_zero()
    G = EulerForm.from_matrix([[0, 5], [0, 0]])
    assert ind_bracket("CY", (1, 0), (0, 1), G) == c_basis((1, 1), coeff=5)
    for a, b in [((1, 0), (0, 1)), ((2, 1), (1, 1))]:
        ab = tuple(x + y for x, y in zip(a, b))
        prod = a_mult(rescale_basis("A-tilde", a, sym), rescale_basis("A-tilde", b, sym), sym)
        assert prod == rescale_basis("A-tilde", ab, sym)
