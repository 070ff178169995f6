"""Hall polynomials by counting over several primes and interpolating.

:func:`build_hall_table` counts, for every class in a dimension box and at
each prime of a sample set, subrepresentations (Hall numbers), extension
classes by middle term, and direct-sum splittings.  Each family is
interpolated to an integer polynomial in q and checked against a fresh count
at a held-out prime.  Automorphism orders are assembled from dim End and the
summand multiplicities, then checked prime by prime.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable

from .coeffring import RatFunc, ZERO
from .quiver import Quiver, load_quiver, dump_quiver, vec_add, vec_le
from .repfield import (RepCategory, hall_count, ext_classify, direct_sum_splittings,
                       hom_dim, ext1_dim, BudgetExceeded, RepError,
                       multiplicities, label_dims, pair_classes, flag_count)

__all__ = ["CountPoly", "HallTable", "FlagTable", "NotPolynomialCount", "interpolate_counts",
           "build_hall_table", "build_flag_table", "specialize_table", "gl_poly",
           "DEFAULT_PRIMES", "CHECK_PRIME", "EXTRA_PRIMES", "class_sort_key",
           "table_identity_check"]

DEFAULT_PRIMES = (2, 3, 5, 7, 11)
CHECK_PRIME = 13
EXTRA_PRIMES = (17, 19)
SPLIT_BUDGET = 20000


class NotPolynomialCount(RepError):
    """Counts do not come from one integer polynomial."""


@dataclass(frozen=True)
class CountPoly:
    """Integer polynomial in q, constant term first, no trailing zeros."""

    coeffs: tuple = ()

    @classmethod
    def of(cls, coeffs) -> "CountPoly":
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        return cls(tuple(int(x) for x in c))

    @classmethod
    def monomial(cls, k: int) -> "CountPoly":
        return cls.of([0] * k + [1])

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return CountPoly.of(x + y for x, y in zip(a, b))

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return CountPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return CountPoly.of(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def at_one(self) -> int:
        return sum(self.coeffs)

    def to_ratfunc(self) -> RatFunc:
        """Substitute q = L = P^2."""
        out = [0] * (2 * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return RatFunc(out) if self.coeffs else ZERO

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
                if k and abs(c) == 1:
                    body = mono
                else:
                    body = f"{abs(c)}" + (f"*{mono}" if mono else "")
                terms.append(("-" if c < 0 else "+", body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += sign + body
        return s


def gl_poly(m: int) -> CountPoly:
    """#GL(m, q) = (q^m - 1)(q^m - q)...(q^m - q^(m-1))."""
    out = CountPoly.of([1])
    for i in range(m):
        term = [0] * (m + 1)
        term[m] += 1
        term[i] -= 1
        out = out * CountPoly.of(term)
    return out


def interpolate_counts(samples, check: tuple | None = None) -> CountPoly:
    """Lagrange interpolation of (prime, count) samples.

    ``check`` is an optional held-out (prime, count) sample.
    """
    samples = list(samples)
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    xs = [Fraction(x) for x, _ in samples]
    coeffs = [Fraction(0)] * len(samples)
    for i, (xi, (_, yi)) in enumerate(zip(xs, samples)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += b * yi / denom
    if any(c.denominator != 1 for c in coeffs):
        raise NotPolynomialCount(f"non-integral interpolation of {samples}")
    poly = CountPoly.of(int(c) for c in coeffs)
    if check is not None and poly(check[0]) != check[1]:
        raise NotPolynomialCount(
            f"{poly} predicts {poly(check[0])} at {check[0]}, measured {check[1]}")
    return poly


def class_sort_key(label) -> tuple:
    total = sum(sum(d) for d in label)
    return (total, len(label), tuple(tuple(-x for x in d) for d in label))


# ---------------------------------------------------------------------------
# the table

@dataclass
class HallTable:
    quiver: Quiver
    dmax: tuple
    max_total: int | None
    primes: tuple
    check_prime: int | None
    classes: list                     # labels, zero class first
    indecomposables: list
    hall: dict = field(default_factory=dict)    # (X, Y, Z) -> CountPoly, X the subobject
    ext: dict = field(default_factory=dict)     # (X, Y, Z) -> CountPoly, #E_Z(X, Y)
    aut: dict = field(default_factory=dict)     # X -> CountPoly
    split: dict = field(default_factory=dict)   # (X, Y, Z) -> CountPoly
    hom: dict = field(default_factory=dict)     # (X, Y) -> dim Hom(X, Y)
    ext1: dict = field(default_factory=dict)    # (X, Y) -> dim Ext^1(X, Y)

    def __post_init__(self):
        self._index()

    def _index(self):
        self.classes = sorted((tuple(tuple(d) for d in c) for c in self.classes),
                              key=class_sort_key)
        self.class_set = set(self.classes)
        self.ids = {c: i for i, c in enumerate(self.classes)}
        n = self.quiver.n
        self.dims_of = {c: label_dims(c, n) for c in self.classes}
        self.by_dims = {}
        for c in self.classes:
            self.by_dims.setdefault(self.dims_of[c], []).append(c)
        self.hall_by_z = {}
        for (x, y, z), poly in self.hall.items():
            self.hall_by_z.setdefault(z, []).append((x, y, poly))
        self.hall_by_xy = {}
        for (x, y, z), poly in self.hall.items():
            self.hall_by_xy.setdefault((x, y), []).append((z, poly))
        self.ext_by_xy = {}
        for (x, y, z), poly in self.ext.items():
            self.ext_by_xy.setdefault((x, y), []).append((z, poly))
        self.split_by_xy = {}
        for (x, y, z), poly in self.split.items():
            self.split_by_xy.setdefault((x, y), []).append((z, poly))

    # bounds -----------------------------------------------------------------
    def in_bound(self, d) -> bool:
        d = tuple(d)
        if not vec_le(d, self.dmax):
            return False
        return self.max_total is None or sum(d) <= self.max_total

    def check_label(self, label):
        label = tuple(tuple(x) for x in label)
        if label not in self.class_set:
            raise KeyError(f"class {list(map(list, label))} is not in the table")
        return label

    def dims(self, label) -> tuple:
        return self.dims_of[label]

    def is_indecomposable(self, label) -> bool:
        return len(label) == 1

    def simple(self, i: int) -> tuple:
        return (self.quiver.simple(i),)

    # products ---------------------------------------------------------------
    def hall_terms(self, x, y):
        """[(Z, h^Z_{X,Y})] for the classes in the table."""
        return self.hall_by_xy.get((x, y), [])

    def ext_terms(self, x, y):
        return self.ext_by_xy.get((x, y), [])

    def split_terms(self, x, y):
        return self.split_by_xy.get((x, y), [])

    # JSON -------------------------------------------------------------------
    def to_json(self) -> str:
        ids = self.ids

        def num(v):
            return str(v) if abs(v) > 2 ** 53 else v

        def poly(pv):
            return [num(c) for c in pv.coeffs]

        def triples(d):
            rows = [{"x": ids[x], "y": ids[y], "z": ids[z], "poly": poly(pv)}
                    for (x, y, z), pv in d.items()]
            rows.sort(key=lambda r: (r["x"], r["y"], r["z"]))
            return rows

        doc = {
            "quiver": dump_quiver(self.quiver),
            "dmax": list(self.dmax),
            "max_total": self.max_total,
            "primes": list(self.primes),
            "check_prime": self.check_prime,
            "classes": [{"id": ids[c], "label": [list(d) for d in c]} for c in self.classes],
            "indecomposables": [ids[c] for c in self.indecomposables],
            "hall": triples(self.hall),
            "ext": triples(self.ext),
            "aut": [{"x": ids[x], "poly": poly(pv)} for x, pv in
                    sorted(self.aut.items(), key=lambda kv: ids[kv[0]])],
            "split": triples(self.split),
            "hom": sorted(([ids[x], ids[y], v] for (x, y), v in self.hom.items())),
            "ext1": sorted(([ids[x], ids[y], v] for (x, y), v in self.ext1.items())),
        }
        return json.dumps(doc, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "HallTable":
        doc = json.loads(text)
        classes = {c["id"]: tuple(tuple(d) for d in c["label"]) for c in doc["classes"]}

        def poly(ps):
            return CountPoly.of(int(c) for c in ps)

        def triples(rows):
            return {(classes[r["x"]], classes[r["y"]], classes[r["z"]]): poly(r["poly"])
                    for r in rows}

        return cls(
            quiver=load_quiver(doc["quiver"]),
            dmax=tuple(doc["dmax"]),
            max_total=doc.get("max_total"),
            primes=tuple(doc.get("primes", ())),
            check_prime=doc.get("check_prime"),
            classes=list(classes.values()),
            indecomposables=[classes[i] for i in doc.get("indecomposables", [])],
            hall=triples(doc.get("hall", [])),
            ext=triples(doc.get("ext", [])),
            aut={classes[r["x"]]: poly(r["poly"]) for r in doc.get("aut", [])},
            split=triples(doc.get("split", [])),
            hom={(classes[x], classes[y]): v for x, y, v in doc.get("hom", [])},
            ext1={(classes[x], classes[y]): v for x, y, v in doc.get("ext1", [])},
        )

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path) -> "HallTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())


# ---------------------------------------------------------------------------
# construction

def _structural_aut(cat: RepCategory, label) -> tuple:
    """(dim End, polynomial) for a class whose summands are bricks."""
    rep = cat.representative(label)
    e = hom_dim(rep, rep)
    poly = CountPoly.monomial(e - sum(m * m for m in multiplicities(label)))
    for m in multiplicities(label):
        poly = poly * gl_poly(m)
    return e, poly


def _count_prime(quiver, dmax, max_total, p, splittings: bool, seed: int) -> dict:
    cat = RepCategory(quiver, p, dmax, max_total=max_total, seed=seed)
    labels = [()] + list(cat.labels)
    data = {"cat": cat, "hall": {}, "ext": {}, "split": {}, "hom": {}, "ext1": {}, "aut": {},
            "split_checked": set()}
    in_bound = set(labels)
    n = quiver.n
    for z in labels:
        Z = cat.representative(z)
        for dx in product(*(range(d + 1) for d in Z.dims)):
            for (x, y), c in hall_count(cat, Z, dx).items():
                data["hall"][(x, y, z)] = c
            if splittings:
                try:
                    counts = direct_sum_splittings(cat, Z, dx, budget=SPLIT_BUDGET)
                except BudgetExceeded:
                    continue
                data["split_checked"].add((z, dx))
                for (x, y), c in counts.items():
                    data["split"][(x, y, z)] = c
    bound = cat.dmax
    for x in labels:
        X = cat.representative(x)
        for y in labels:
            Y = cat.representative(y)
            data["hom"][(x, y)] = hom_dim(X, Y)
            data["ext1"][(x, y)] = ext1_dim(X, Y)
            d = vec_add(label_dims(x, n), label_dims(y, n))
            if vec_le(d, bound) and (max_total is None or sum(d) <= max_total):
                for z, c in ext_classify(cat, X, Y).items():
                    if z not in in_bound:
                        raise RepError(f"middle term {z} outside the enumerated classes")
                    data["ext"][(x, y, z)] = c
    for x in labels:
        if not x:
            data["aut"][x] = (0, 1)
            continue
        e, _ = _structural_aut(cat, x)
        data["aut"][x] = (e, cat.aut(x))
    return data


def _interpolate_family(fams, primes, check):
    keys = set()
    for f in fams.values():
        keys |= set(f)
    out = {}
    for k in keys:
        samples = [(p, fams[p].get(k, 0)) for p in primes]
        chk = None if check is None else (check, fams[check].get(k, 0))
        out[k] = interpolate_counts(samples, chk)
    return {k: v for k, v in out.items() if not v.is_zero()}


def build_hall_table(quiver: Quiver, dmax, primes: Iterable[int] = DEFAULT_PRIMES,
                     check_prime: int | None = CHECK_PRIME, max_total: int | None = None,
                     splittings: bool = True, seed: int = 0) -> HallTable:
    """Count at each prime, interpolate, and verify at the held-out prime."""
    dmax = tuple(dmax)
    primes = tuple(primes)
    if len(dmax) != quiver.n:
        raise ValueError("dimension bound length does not match the quiver")
    counted = {}

    def count(p):
        if p not in counted:
            counted[p] = _count_prime(quiver, dmax, max_total, p, splittings, seed)
        return counted[p]

    for p in primes + ((check_prime,) if check_prime else ()):
        count(p)
    ref = counted[primes[0]]["cat"]
    for p, data in counted.items():
        if data["cat"].indec_dims != ref.indec_dims:
            raise RepError(f"indecomposables differ between primes {primes[0]} and {p}")
        if data["hom"] != counted[primes[0]]["hom"] or data["ext1"] != counted[primes[0]]["ext1"]:
            raise RepError(f"Hom/Ext dimensions differ between primes {primes[0]} and {p}")

    def families(use):
        out = {}
        for name in ("hall", "ext"):
            out[name] = _interpolate_family({p: counted[p][name] for p in counted}, use,
                                            check_prime)
        return out

    try:
        fam = families(primes)
    except NotPolynomialCount:
        for p in EXTRA_PRIMES:
            count(p)
        fam = families(primes + EXTRA_PRIMES)
        primes = primes + EXTRA_PRIMES

    labels = [()] + list(ref.labels)
    aut = {}
    for x in labels:
        if not x:
            aut[x] = CountPoly.of([1])
            continue
        e, poly = _structural_aut(ref, x)
        for p, data in counted.items():
            if data["aut"][x][0] != e or poly(p) != data["aut"][x][1]:
                raise NotPolynomialCount(f"Aut{list(x)} does not follow {poly} at p={p}")
        aut[x] = poly
    split = _structural_splits(labels, aut) if splittings else {}
    for p, data in counted.items():
        n = quiver.n
        for z, dx in data["split_checked"]:
            for (x, y, zz), poly in split.items():
                if zz == z and label_dims(x, n) == dx and poly(p) != data["split"].get((x, y, z), 0):
                    raise NotPolynomialCount(f"splitting count of {z} into {x}, {y} at p={p}")
            for (x, y, zz), c in data["split"].items():
                if zz == z and label_dims(x, n) == dx and (x, y, z) not in split:
                    raise NotPolynomialCount(f"unexpected splitting of {z} into {x}, {y}")
    return HallTable(quiver=quiver, dmax=dmax, max_total=max_total, primes=primes,
                     check_prime=check_prime, classes=labels,
                     indecomposables=[(d,) for d in ref.indec_dims],
                     hall=fam["hall"], ext=fam["ext"], aut=aut, split=split,
                     hom=dict(counted[primes[0]]["hom"]), ext1=dict(counted[primes[0]]["ext1"]))


def poly_divide(a: CountPoly, b: CountPoly) -> CountPoly:
    """Exact quotient a / b; raises when b does not divide a over Z."""
    num = list(a.coeffs)
    den = b.coeffs
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    out = [0] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        c, r = divmod(num[-1], den[-1])
        if r:
            raise NotPolynomialCount(f"{b} does not divide {a}")
        out[shift] = c
        for i, d in enumerate(den):
            num[i + shift] -= c * d
        while num and num[-1] == 0:
            num.pop()
    if any(num):
        raise NotPolynomialCount(f"{b} does not divide {a}")
    return CountPoly.of(out)


def _structural_splits(labels, aut) -> dict:
    """#{(U, V): Z = U + V, U ~ X, V ~ Y} = #Aut Z / (#Aut X #Aut Y) when X + Y ~ Z.

    Aut Z acts transitively on such decompositions with stabilizer
    Aut U x Aut V.
    """
    present = set(labels)
    out = {}
    for z in labels:
        for mask in product(*((0, 1) for _ in z)):
            x = tuple(d for d, m in zip(z, mask) if m)
            y = tuple(d for d, m in zip(z, mask) if not m)
            if (x, y, z) in out or x not in present or y not in present:
                continue
            out[(x, y, z)] = poly_divide(aut[z], aut[x] * aut[y])
    return out


def table_identity_check(T: HallTable) -> list:
    """Polynomial identities every consistent table satisfies; returns violations.

    For each pair (X, Y) whose sum fits the bound:

    * h^Z_{X,Y} Aut(X) Aut(Y) q^hom(Y,X) = E_Z(X,Y) Aut(Z) for every Z,
    * sum over Z of E_Z(X, Y) = q^ext1(Y, X).
    """
    bad = []
    zero = CountPoly()
    for x in T.classes:
        for y in T.classes:
            if not T.in_bound(vec_add(T.dims(x), T.dims(y))):
                continue
            h = dict(T.hall_terms(x, y))
            e = dict(T.ext_terms(x, y))
            shift = CountPoly.monomial(T.hom[(y, x)])
            for z in set(h) | set(e):
                lhs = h.get(z, zero) * T.aut[x] * T.aut[y] * shift
                rhs = e.get(z, zero) * T.aut[z]
                if lhs != rhs:
                    bad.append({"identity": "riedtmann", "x": x, "y": y, "z": z,
                                "lhs": str(lhs), "rhs": str(rhs)})
            total = zero
            for poly in e.values():
                total = total + poly
            want = CountPoly.monomial(T.ext1[(y, x)])
            if total != want:
                bad.append({"identity": "partition", "x": x, "y": y,
                            "lhs": str(total), "rhs": str(want)})
    return bad


def specialize_table(T: HallTable, point: str = "one") -> dict:
    """Evaluate every polynomial family at q = 1 or at q = L."""
    if point == "one":
        f = CountPoly.at_one
    elif point == "generic":
        f = CountPoly.to_ratfunc
    else:
        raise ValueError("point must be 'one' or 'generic'")
    return {
        "hall": {k: f(v) for k, v in T.hall.items()},
        "ext": {k: f(v) for k, v in T.ext.items()},
        "aut": {k: f(v) for k, v in T.aut.items()},
        "split": {k: f(v) for k, v in T.split.items()},
    }


# ---------------------------------------------------------------------------
# flags

@dataclass
class FlagTable:
    """Flag polynomials for pairs S <= Z with Z from a list of classes.

    ``up[(P, M, P2)]`` counts S2 with S <= S2 <= Z, S2/S ~ M and pair class P2,
    for S a representative of pair class P.  ``down`` is the same for
    S1 <= S.  Pair labels are (class of Z, summand multiset of the pair).
    """

    base: HallTable
    pairs: list
    up: dict
    down: dict

    def ambient(self, pair) -> tuple:
        return pair[0]


def build_flag_table(T: HallTable, zlabels, primes=DEFAULT_PRIMES,
                     check_prime: int | None = CHECK_PRIME, seed: int = 0) -> FlagTable:
    zlabels = [T.check_label(z) for z in zlabels]
    ups, downs = {}, {}
    pair_sets = {}
    for p in tuple(primes) + ((check_prime,) if check_prime else ()):
        cat = RepCategory(T.quiver, p, T.dmax, max_total=T.max_total, seed=seed)
        up, down = {}, {}
        pairs = set()
        for z in zlabels:
            Z = cat.representative(z)
            for dS in product(*(range(d + 1) for d in Z.dims)):
                for lab, (_, U) in pair_classes(cat, Z, dS).items():
                    pairs.add(lab)
                    for (m, lab2), c in flag_count(cat, Z, U, "up").items():
                        up[(lab, m, lab2)] = c
                    for (m, lab1), c in flag_count(cat, Z, U, "down").items():
                        down[(lab, m, lab1)] = c
        ups[p], downs[p] = up, down
        pair_sets[p] = pairs
    first = primes[0]
    for p, s in pair_sets.items():
        if s != pair_sets[first]:
            raise RepError(f"pair classes differ between primes {first} and {p}")
    up = _interpolate_family(ups, tuple(primes), check_prime)
    down = _interpolate_family(downs, tuple(primes), check_prime)
    pairs = sorted(pair_sets[first], key=lambda pr: (class_sort_key(pr[0]), pr[1]))
    return FlagTable(T, pairs, up, down)
