"""Acceptance criteria, one test per criterion, exact arithmetic throughout.

Each test prints a single ``criterion N: PASS|FAIL`` line to the terminal.
Suites 5 to 11 are run through the command line entry point on the shipped
quiver fixtures, so criterion 12 can rerun the same commands in fresh
processes and compare the output byte for byte.
"""

import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout
from itertools import product

import pytest

from oracles import a2_aut_count, a2_rep_matrix, gl_count, positive_root_count
from ringelhall.cli import main
from ringelhall.hallnum import DEFAULT_PRIMES, CHECK_PRIME, table_identity_check
from ringelhall.quiver import Quiver
from ringelhall.repfield import (RepCategory, aut_order, ext1_dim_coker, ext_classify,
                                 hall_count, hom_dim)

A2 = Quiver(2, ((0, 1),))
A3 = Quiver(3, ((0, 1), (1, 2)))
TITS = {A2: [[1, -1], [0, 1]], A3: [[1, -1, 0], [0, 1, -1], [0, 0, 1]]}


@pytest.fixture
def report(capsys):
    def emit(n, ok, text):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {text}")
        assert ok, f"criterion {n} failed: {text}"
    return emit


_RUNS = {}


def cli(*argv):
    """Run the CLI in this process once per argument list; (code, stdout, records)."""
    if argv not in _RUNS:
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        text = out.getvalue()
        _RUNS[argv] = (code, text, [json.loads(x) for x in text.splitlines()])
    return _RUNS[argv]


def failing(recs):
    return [r.get("check") for r in recs if r.get("status") == "fail"]


def checks(recs, prefix):
    return [r for r in recs if str(r.get("check", "")).startswith(prefix)]


VERIFY_RUNS = [
    ("serre", "a2.q"), ("serre", "a3.q"), ("pbw", "a2.q"), ("bialgebra", "a2.q"),
    ("qserre", "a2.q"), ("qserre", "a3.q"), ("thm61", "a2.q"), ("thm61", "a3.q"),
    ("pbw", "a3.q"), ("bialgebra", "a3.q"),
    ("thm65", None), ("assoc", None), ("pi", None), ("cy", None),
]


def verify_args(suite, quiver):
    args = ("verify", "--suite", suite)
    return args + ("--quiver", quiver) if quiver else args


# ---------------------------------------------------------------------------

def test_criterion_01_enumeration(report):
    problems = []
    for p in (2, 3):
        cat = RepCategory(A2, p, (2, 2))
        if sorted(cat.indec_dims) != [(0, 1), (1, 0), (1, 1)]:
            problems.append(f"A2 p={p}: {cat.indec_dims}")
        # every representation of A2 is accounted for: sum of orbit sizes
        for a, b in product(range(3), repeat=2):
            mass = 0
            for r in range(min(a, b) + 1):
                aut = a2_aut_count(a, b, a2_rep_matrix(a, b, r), p)
                mass += gl_count(a, p) * gl_count(b, p) // aut
            if mass != p ** (a * b):
                problems.append(f"A2 p={p} dims {(a, b)}: orbit mass {mass}")
        cat3 = RepCategory(A3, p, (2, 2, 2), max_total=4)
        if len(cat3.indec_dims) != 6:
            problems.append(f"A3 p={p}: {cat3.indec_dims}")
    roots = (positive_root_count(TITS[A2], (2, 2)), positive_root_count(TITS[A3], (2, 2, 2)))
    if roots != (3, 6):
        problems.append(f"root oracle gives {roots}")
    report(1, not problems, "A2 has 3 and A3 has 6 indecomposables at p = 2, 3" +
           (f"; {problems}" if problems else ""))


def test_criterion_02_hom_minus_ext(report):
    violations = pairs = 0
    for q, box in ((A2, (2, 2)), (A3, (1, 1, 1))):
        F = q.euler()
        for p in DEFAULT_PRIMES:
            reps = [X for _, X in RepCategory(q, p, box).classes()]
            for X in reps:
                for Y in reps:
                    pairs += 1
                    if hom_dim(X, Y) - ext1_dim_coker(X, Y) != F(X.dims, Y.dims):
                        violations += 1
    report(2, violations == 0, f"hom - ext = chi on {pairs} pairs, {violations} violations")


def test_criterion_03_polynomiality(report, a2_table, a3_small_table):
    problems = []
    for T in (a2_table, a3_small_table):
        if T.primes != tuple(DEFAULT_PRIMES) or T.check_prime != CHECK_PRIME:
            problems.append(f"primes used {T.primes}, check {T.check_prime}")
        # an independent recount at the held-out prime
        p = CHECK_PRIME
        cat = RepCategory(T.quiver, p, T.dmax, max_total=T.max_total)
        for z, Z in cat.classes():
            if aut_order(Z) != T.aut[z](p):
                problems.append(f"aut {z}")
            for dx in product(*(range(d + 1) for d in Z.dims)):
                counted = hall_count(cat, Z, dx)
                predicted = {(x, y): poly(p) for (x, y, zz), poly in T.hall.items()
                             if zz == z and T.dims(x) == dx}
                if counted != {k: v for k, v in predicted.items() if v}:
                    problems.append(f"hall {z} {dx}")
        for (x, y), _ in T.hom.items():
            if not x or not y or not T.in_bound(tuple(a + b for a, b in zip(T.dims(x), T.dims(y)))):
                continue
            counted = ext_classify(cat, cat.representative(x), cat.representative(y))
            predicted = {z: poly(p) for (xx, yy, z), poly in T.ext.items() if (xx, yy) == (x, y)}
            if counted != {k: v for k, v in predicted.items() if v}:
                problems.append(f"ext {x} {y}")
        if any(c != int(c) for poly in T.hall.values() for c in poly.coeffs):
            problems.append("non-integer coefficient")
    report(3, not problems, "Hall, extension and Aut polynomials from {2,3,5,7,11} predict "
           "the counts at 13" + (f"; {problems[:5]}" if problems else ""))


def test_criterion_04_table_identities(report, a2_table, a3_small_table):
    bad = table_identity_check(a2_table) + table_identity_check(a3_small_table)
    report(4, not bad, f"Riedtmann and partition identities, {len(bad)} violations")


def test_criterion_05_serre(report):
    results = [cli(*verify_args("serre", q)) for q in ("a2.q", "a3.q")]
    serre = sum(len(checks(r, "serre ")) for _, _, r in results)
    bad = [f for _, _, r in results for f in failing(r)]
    ok = all(code == 0 for code, _, _ in results) and not bad and serre == 2 + 6 \
        and all(checks(r, "indecomposable-bracket") for _, _, r in results)
    report(5, ok, f"{serre} Serre relations on A2 and A3, bracket closure" +
           (f"; failing {bad}" if bad else ""))


def test_criterion_06_pbw(report):
    code, _, recs = cli(*verify_args("pbw", "a2.q"))
    orders = checks(recs, "pbw ")
    ok = code == 0 and len(orders) == 2 and not failing(recs)
    report(6, ok, "PBW matrices square and invertible up to (2,2) for two orders")


def test_criterion_07_bialgebra(report):
    code, _, recs = cli(*verify_args("bialgebra", "a2.q"))
    names = {r["check"] for r in recs if "check" in r}
    want = {"primitive-indecomposables", "coassociative", "cocommutative", "counital",
            "multiplicative"}
    ok = code == 0 and want <= names and not failing(recs)
    report(7, ok, "coproduct axioms on products of simples of total dimension <= 4")


def test_criterion_08_quantum(report):
    results = [cli(*verify_args("qserre", q)) for q in ("a2.q", "a3.q")]
    need = ("sf-associativity", "composition-span", "qserre ")
    ok = all(code == 0 and not failing(r) and all(checks(r, n) for n in need)
             for code, _, r in results)
    residues = [c for _, _, r in results for c in checks(r, "qserre ")]
    ok &= all(c.get("twisted_residue", "0") == "0" and c.get("limit_matches_classical", True)
              for c in residues)
    report(8, ok, f"associativity, {len(residues)} quantum Serre residues equal to 0, "
           "classical limit, composition span")


def test_criterion_09_integral(report):
    code, _, recs = cli(*verify_args("thm61", "a2.q"))
    need = ("integral-pairs", "integral-chain", "integral-antichain")
    ok = code == 0 and not failing(recs) and all(checks(recs, n) for n in need)
    report(9, ok, "integral identity and morphism on A2 basis pairs, chains and antichains")


def test_criterion_10_sum_equals_graph(report):
    code, _, recs = cli(*verify_args("thm65", None))
    forms = checks(recs, "sum-equals-graph")
    ok = code == 0 and len(forms) == 20 and not failing(recs)
    report(10, ok, f"summed and graph B products agree over {len(forms)} random forms")


def test_criterion_11_explicit_algebras(report):
    names = set()
    bad = []
    codes = []
    for suite in ("assoc", "pi", "cy"):
        code, _, recs = cli(*verify_args(suite, None))
        codes.append(code)
        names |= {r["check"] for r in recs if "check" in r}
        bad += failing(recs)
    want = {"assoc A", "assoc B sum", "assoc B graph", "assoc C", "lambda-circ-closure",
            "pi-morphism", "jacobi B", "jacobi C", "jacobi CY", "antisymmetry B",
            "antisymmetry C", "antisymmetry CY", "a-tilde-invariance", "b-tilde-invariance"}
    ok = codes == [0, 0, 0] and want <= names and not bad
    report(11, ok, "associativity of A, B, C; closure; Pi morphism; Jacobi; rescaled bases" +
           (f"; failing {bad}" if bad else ""))


def test_criterion_12_cli_contract(report, a2_table, tmp_path):
    problems = []
    for suite, q in VERIFY_RUNS:
        args = verify_args(suite, q)
        code, text, _ = cli(*args)
        if code != 0:
            problems.append(f"{suite} {q}: exit {code}")
        rerun = subprocess.run([sys.executable, "-m", "ringelhall.cli", *args],
                               capture_output=True, text=True)
        if rerun.returncode != 0 or rerun.stdout != text:
            problems.append(f"{suite} {q}: rerun differs")
    from ringelhall.hallnum import CountPoly, HallTable
    T = HallTable.from_json(a2_table.to_json())
    key = next(k for k in sorted(T.hall) if k[0] and k[1])
    T.hall[key] = T.hall[key] + CountPoly.of([1])
    path = tmp_path / "corrupt.json"
    path.write_text(T.to_json())
    code, _, recs = cli("verify", "--suite", "serre", "--table", str(path))
    if code != 1 or not any("counterexample" in r for r in recs):
        problems.append(f"corrupted table: exit {code}")
    report(12, not problems, f"{len(VERIFY_RUNS)} verify runs exit 0 and rerun identically; "
           "corrupted table exits 1" + (f"; {problems}" if problems else ""))
