"""Additive-energy counts: pair products, bilinear forms, and the three-equation
system tying cofactor-vector multiplicities to an eighth-moment quantity.

Each energy has two routes: a value-distribution build (tables keyed by exact
scalars, energies as sums of squared masses) and a literal tuple-by-tuple
brute count kept for cross-validation. The brute routes compare enumerated
values pairwise and never share the table machinery.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PreconditionError, check_budget
from .detcount import _fast_elements, _fast_value, _minor_table, _solve
from .matrices import Matrix, det
from .scalars import GroundSet


@dataclass(frozen=True)
class ValueDistribution:
    """Exact map value -> multiplicity for one generating expression."""

    entries: dict
    provenance: str

    def mass(self) -> int:
        return sum(self.entries.values())

    def sorted_items(self) -> list:
        return sorted(self.entries.items())

    def get(self, t) -> int:
        return self.entries.get(t, 0)


def product_distribution(U: GroundSet) -> ValueDistribution:
    """P(t) = #{(u, v) in U^2 : u*v = t}; mass is |U|^2."""
    elems = _fast_elements(U)
    table: dict = {}
    for u, v in itertools.product(elems, repeat=2):
        t = u * v
        table[t] = table.get(t, 0) + 1
    return ValueDistribution(table, "pair-product")


def r_distribution(U: GroundSet) -> ValueDistribution:
    """R(t) = #{u1*v1 + u2*v2 = t}; the sum-convolution of P with itself."""
    P = product_distribution(U).entries
    table: dict = {}
    for t1, c1 in P.items():
        for t2, c2 in P.items():
            s = t1 + t2
            table[s] = table.get(s, 0) + c1 * c2
    return ValueDistribution(table, "paired-product-sum")


def energy_T(U: GroundSet) -> int:
    """Solutions of v1*u1 + v2*u2 = x1*y1 + x2*y2 over U^8, as sum of R(t)^2."""
    return sum(c * c for c in r_distribution(U).entries.values())


def energy_T_brute(U: GroundSet, *, budget: int | None = None) -> int:
    check_budget(len(U) ** 8, budget, "energy_T_brute")
    elems = _fast_elements(U)
    vals = [u1 * v1 + u2 * v2 for u1, u2, v1, v2 in itertools.product(elems, repeat=4)]
    return sum(1 for a in vals for b in vals if a == b)


def energy_N(U: GroundSet) -> int:
    """Solutions of v1*(u1 - w1) = v2*(u2 - w2) over U^6, as sum of Q(t)^2."""
    elems = _fast_elements(U)
    table: dict = {}
    for v, u, w in itertools.product(elems, repeat=3):
        t = v * (u - w)
        table[t] = table.get(t, 0) + 1
    return sum(c * c for c in table.values())


def energy_N_brute(U: GroundSet, *, budget: int | None = None) -> int:
    check_budget(len(U) ** 6, budget, "energy_N_brute")
    elems = _fast_elements(U)
    vals = [v * (u - w) for v, u, w in itertools.product(elems, repeat=3)]
    return sum(1 for a in vals for b in vals if a == b)


def energy_S(U: GroundSet) -> int:
    """Solutions of u1*v3 - u3*v1 = y1*z3 - y3*z1 over U^8, as sum of Q2(t)^2."""
    return sum(c * c for c in cross_term_distribution(U).entries.values())


def cross_term_distribution(U: GroundSet) -> ValueDistribution:
    """Q2(t) = #{(u1, u3, v1, v3) in U^4 : u1*v3 - u3*v1 = t}; mass |U|^4."""
    elems = _fast_elements(U)
    table: dict = {}
    for u1, u3, v1, v3 in itertools.product(elems, repeat=4):
        t = u1 * v3 - u3 * v1
        table[t] = table.get(t, 0) + 1
    return ValueDistribution(table, "two-by-two-cross")


def energy_S_brute(U: GroundSet, *, budget: int | None = None) -> int:
    check_budget(len(U) ** 8, budget, "energy_S_brute")
    elems = _fast_elements(U)
    vals = [u1 * v3 - u3 * v1 for u1, u3, v1, v3 in itertools.product(elems, repeat=4)]
    return sum(1 for a in vals for b in vals if a == b)


# ---------------------------------------------------------------------------
# inner-product equation <M b, c> = omega


def _prepared_matrix(M: Matrix, B: GroundSet):
    if not M.is_square or M.rows < 2:
        raise PreconditionError("need a square matrix of dimension >= 2")
    if M.field != B.field:
        raise PreconditionError("matrix and sets must share one field")
    if not det(M):
        raise PreconditionError("matrix must be nonsingular")
    return [
        tuple(_fast_value(B, e) for e in M.row_tuple(i)) for i in range(M.rows)
    ]


def count_bilinear(
    M: Matrix, B: GroundSet, C: GroundSet, omega, *, budget: int | None = None
) -> int:
    """#{(b, c) in B^k x C^k : <M b, c> = omega}, pivoting on the last nonzero
    coordinate of M*b; omega = 0 falls outside the counted regime and is rejected."""
    omega_s = B.field.coerce(omega)
    if not omega_s:
        raise PreconditionError("omega must be nonzero")
    k = M.rows
    rows = _prepared_matrix(M, B)
    check_budget(len(B) ** k * len(C) ** (k - 1), budget, "count_bilinear")
    belems = _fast_elements(B)
    celems = _fast_elements(C)
    cmembers = frozenset(celems)
    w = _fast_value(B, omega)
    total = 0
    for b in itertools.product(belems, repeat=k):
        v = []
        for row in rows:
            acc = row[0] * b[0]
            for j in range(1, k):
                acc = acc + row[j] * b[j]
            v.append(acc)
        piv = next((j for j in range(k - 1, -1, -1) if v[j]), None)
        if piv is None:
            continue
        vp = v[piv]
        others = [j for j in range(k) if j != piv]
        for prefix in itertools.product(celems, repeat=k - 1):
            acc = w
            for j, c in zip(others, prefix):
                acc = acc - v[j] * c
            q = _solve(acc, vp)
            if q is not None and q in cmembers:
                total += 1
    return total


def count_bilinear_brute(
    M: Matrix, B: GroundSet, C: GroundSet, omega, *, budget: int | None = None
) -> int:
    """Direct pair enumeration over B^k x C^k; oracle route for count_bilinear."""
    omega_s = B.field.coerce(omega)
    if not omega_s:
        raise PreconditionError("omega must be nonzero")
    k = M.rows
    rows = _prepared_matrix(M, B)
    check_budget((len(B) * len(C)) ** k, budget, "count_bilinear_brute")
    belems = _fast_elements(B)
    celems = _fast_elements(C)
    w = _fast_value(B, omega)
    total = 0
    for b in itertools.product(belems, repeat=k):
        v = []
        for row in rows:
            acc = row[0] * b[0]
            for j in range(1, k):
                acc = acc + row[j] * b[j]
            v.append(acc)
        for c in itertools.product(celems, repeat=k):
            acc = v[0] * c[0]
            for j in range(1, k):
                acc = acc + v[j] * c[j]
            if acc == w:
                total += 1
    return total


# ---------------------------------------------------------------------------
# the three simultaneous cofactor equations


def energy_Estar_mu(X: GroundSet, *, budget: int | None = None, threads: int = 1) -> int:
    """Solution count of the simultaneous equality of the two signed cofactor
    triples over X^12, computed as the sum of squared triple multiplicities
    (the all-zero triple included)."""
    check_budget(len(X) ** 6, budget, "energy_Estar_mu")
    table, zero = _minor_table(X, 3, threads)
    return sum(mu * mu for mu in table.values()) + zero * zero


def energy_Estar_brute(X: GroundSet, *, budget: int | None = None) -> int:
    """Literal 12-tuple check of the three bilinear equations, pair by pair."""
    check_budget(len(X) ** 12, budget, "energy_Estar_brute")
    elems = _fast_elements(X)
    triples = [
        (y2 * z3 - y3 * z2, y3 * z1 - y1 * z3, y1 * z2 - y2 * z1)
        for y1, y2, y3, z1, z2, z3 in itertools.product(elems, repeat=6)
    ]
    return sum(1 for a in triples for b in triples if a == b)


@dataclass(frozen=True)
class DyadicPyramid:
    """Dyadic census of cofactor-triple multiplicities: one (w, class size)
    entry per nonempty class w <= mu < 2w."""

    classes: tuple
    total_mass: int
    max_weighted: int  # max over w of w^2 * class size

    def class_count(self, w: int) -> int:
        for ww, c in self.classes:
            if ww == w:
                return c
        return 0


def dyadic_pyramid(X: GroundSet, *, budget: int | None = None, threads: int = 1) -> DyadicPyramid:
    check_budget(len(X) ** 6, budget, "dyadic_pyramid")
    table, zero = _minor_table(X, 3, threads)
    mults = list(table.values())
    if zero:
        mults.append(zero)
    by_class: dict = {}
    for mu in mults:
        w = 1
        while 2 * w <= mu:
            w *= 2
        by_class[w] = by_class.get(w, 0) + 1
    classes = tuple(sorted(by_class.items()))
    return DyadicPyramid(
        classes=classes,
        total_mass=sum(mults),
        max_weighted=max(w * w * c for w, c in classes),
    )
