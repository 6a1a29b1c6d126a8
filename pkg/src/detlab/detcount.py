"""Counting engines for determinant spectra, rank counts, and block decompositions.

Counts are plain Python ints (arbitrary precision). Two independent routes are
always available: full enumeration with a definition-level determinant (the
master oracle), and a first-row cofactor engine that enumerates the bottom
(n-1) x n block once, aggregates multiplicities of the signed cofactor vector,
and solves a pivot entry of the first row per distinct vector.

Parallel runs split the outer enumeration into contiguous index ranges and
merge worker-local tables by key-wise addition, so totals are identical for
any worker count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, check_budget
from .matrices import Matrix, _det_rows, _rank_rows
from .parallel import merge_tables, run_chunked
from .scalars import MODE_RATIONAL, GroundSet, Scalar


# ---------------------------------------------------------------------------
# fast element views


def _fast_elements(X: GroundSet) -> list:
    """Plain ints when the set is integer-valued rational; same arithmetic, faster."""
    if X.field.mode == MODE_RATIONAL and all(e.denominator == 1 for e in X.elements):
        return [e.numerator for e in X.elements]
    return list(X.elements)


def _fast_value(X: GroundSet, v):
    v = X.field.coerce(v)
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _solve(num, den):
    """Exact num/den, or None when the quotient falls outside the integers
    while both operands are integers (then it cannot lie in an integer set)."""
    if type(num) is int and type(den) is int:
        q, r = divmod(num, den)
        return q if not r else None
    return num / den


# ---------------------------------------------------------------------------
# result types


@dataclass(frozen=True)
class SpectrumHistogram:
    """Full map d -> D_n(X, d); total mass is always X^(n^2)."""

    n: int
    ground_set: GroundSet
    engine: str
    entries: dict

    def total_mass(self) -> int:
        return sum(self.entries.values())

    def distinct_count(self) -> int:
        return len(self.entries)

    def get(self, d) -> int:
        return self.entries.get(self.ground_set.field.coerce(d), 0)

    def sorted_items(self) -> list:
        return sorted(self.entries.items())

    def witness(self, d) -> Matrix | None:
        return find_witness(self.ground_set, self.n, d)


@dataclass(frozen=True)
class MinorMultiplicityMap:
    """Multiplicities of the signed first-row cofactor vector over all
    bottom-block choices; the all-zero vector is tallied separately."""

    n: int
    ground_set: GroundSet
    entries: dict
    zero_count: int

    def total_mass(self) -> int:
        return sum(self.entries.values()) + self.zero_count


@dataclass(frozen=True)
class DecompositionCounts:
    """Det-d matrices split by the bordered form: corner entry zero, corner
    nonzero with singular leading block, corner nonzero with regular block."""

    x_zero: int
    y_singular: int
    y_regular: int

    def total(self) -> int:
        return self.x_zero + self.y_singular + self.y_regular


# ---------------------------------------------------------------------------
# brute-force enumeration (master oracle)


def _brute_count_worker(elems, n, target, start, stop):
    B = len(elems)
    nn = n * n
    count = 0
    for idx in range(start, stop):
        x = idx
        ent = []
        for _ in range(nn):
            x, r = divmod(x, B)
            ent.append(elems[r])
        rows = tuple(tuple(ent[i * n : (i + 1) * n]) for i in range(n))
        if _det_rows(rows) == target:
            count += 1
    return count


def _brute_count_serial(elems, n, target) -> int:
    count = 0
    if n == 1:
        return sum(1 for a in elems if a == target)
    if n == 2:
        for a, b, c, d in itertools.product(elems, repeat=4):
            if a * d - b * c == target:
                count += 1
        return count
    if n == 3:
        for x1, x2, x3, y1, y2, y3, z1, z2, z3 in itertools.product(elems, repeat=9):
            v = x1 * (y2 * z3 - y3 * z2) - x2 * (y1 * z3 - y3 * z1) + x3 * (y1 * z2 - y2 * z1)
            if v == target:
                count += 1
        return count
    for rows in itertools.product(itertools.product(elems, repeat=n), repeat=n):
        if _det_rows(rows) == target:
            count += 1
    return count


def count_det_brute(X: GroundSet, n: int, d, *, budget: int | None = None, threads: int = 1) -> int:
    """Number of n x n matrices over X with determinant d, by full enumeration."""
    if n < 1:
        raise PreconditionError("dimension must be >= 1")
    total = len(X) ** (n * n)
    check_budget(total, budget, "count_det_brute")
    elems = _fast_elements(X)
    target = _fast_value(X, d)
    if threads <= 1:
        return _brute_count_serial(elems, n, target)
    parts = run_chunked(_brute_count_worker, (elems, n, target), total, threads)
    return sum(parts)


def _brute_spectrum_worker(elems, n, start, stop):
    B = len(elems)
    nn = n * n
    hist: dict = {}
    for idx in range(start, stop):
        x = idx
        ent = []
        for _ in range(nn):
            x, r = divmod(x, B)
            ent.append(elems[r])
        rows = tuple(tuple(ent[i * n : (i + 1) * n]) for i in range(n))
        v = _det_rows(rows)
        hist[v] = hist.get(v, 0) + 1
    return hist


def _brute_spectrum_serial(elems, n) -> dict:
    hist: dict = {}
    if n == 1:
        for a in elems:
            hist[a] = hist.get(a, 0) + 1
        return hist
    if n == 2:
        for a, b, c, d in itertools.product(elems, repeat=4):
            v = a * d - b * c
            hist[v] = hist.get(v, 0) + 1
        return hist
    if n == 3:
        for x1, x2, x3, y1, y2, y3, z1, z2, z3 in itertools.product(elems, repeat=9):
            v = x1 * (y2 * z3 - y3 * z2) - x2 * (y1 * z3 - y3 * z1) + x3 * (y1 * z2 - y2 * z1)
            hist[v] = hist.get(v, 0) + 1
        return hist
    for rows in itertools.product(itertools.product(elems, repeat=n), repeat=n):
        v = _det_rows(rows)
        hist[v] = hist.get(v, 0) + 1
    return hist


# ---------------------------------------------------------------------------
# signed cofactor vector multiplicities


def _cofactor_vector(block, n):
    """Signed first-row cofactors from the bottom (n-1) x n block."""
    out = []
    for j in range(n):
        minor = tuple(r[:j] + r[j + 1 :] for r in block)
        c = _det_rows(minor)
        if j % 2:
            c = -c
        out.append(c)
    return tuple(out)


def _minor_map_worker(elems, n, start, stop):
    B = len(elems)
    length = n * (n - 1)
    table: dict = {}
    zero = 0
    for idx in range(start, stop):
        x = idx
        ent = []
        for _ in range(length):
            x, r = divmod(x, B)
            ent.append(elems[r])
        if n == 2:
            y1, y2 = ent
            m = (y2, -y1)
        elif n == 3:
            y1, y2, y3, z1, z2, z3 = ent
            m = (y2 * z3 - y3 * z2, y3 * z1 - y1 * z3, y1 * z2 - y2 * z1)
        else:
            block = tuple(tuple(ent[i * n : (i + 1) * n]) for i in range(n - 1))
            m = _cofactor_vector(block, n)
        if any(m):
            table[m] = table.get(m, 0) + 1
        else:
            zero += 1
    return table, zero


def _minor_map_serial(elems, n):
    table: dict = {}
    zero = 0
    if n == 2:
        for y1, y2 in itertools.product(elems, repeat=2):
            m = (y2, -y1)
            if y1 or y2:
                table[m] = table.get(m, 0) + 1
            else:
                zero += 1
        return table, zero
    if n == 3:
        for y1, y2, y3, z1, z2, z3 in itertools.product(elems, repeat=6):
            m = (y2 * z3 - y3 * z2, y3 * z1 - y1 * z3, y1 * z2 - y2 * z1)
            if m[0] or m[1] or m[2]:
                table[m] = table.get(m, 0) + 1
            else:
                zero += 1
        return table, zero
    for block in itertools.product(itertools.product(elems, repeat=n), repeat=n - 1):
        m = _cofactor_vector(block, n)
        if any(m):
            table[m] = table.get(m, 0) + 1
        else:
            zero += 1
    return table, zero


def _minor_table(X: GroundSet, n: int, threads: int):
    elems = _fast_elements(X)
    total = len(elems) ** (n * (n - 1))
    if threads <= 1:
        return _minor_map_serial(elems, n)
    parts = run_chunked(_minor_map_worker, (elems, n), total, threads)
    table = merge_tables([p[0] for p in parts])
    zero = sum(p[1] for p in parts)
    return table, zero


def minor_multiplicity_map(
    X: GroundSet, n: int, *, budget: int | None = None, threads: int = 1
) -> MinorMultiplicityMap:
    if n < 2:
        raise PreconditionError("cofactor vectors need dimension >= 2")
    check_budget(len(X) ** (n * (n - 1)), budget, "minor_multiplicity_map")
    table, zero = _minor_table(X, n, threads)
    return MinorMultiplicityMap(n, X, table, zero)


# ---------------------------------------------------------------------------
# first-row cofactor engine


def count_det_rowblock(
    X: GroundSet, n: int, d, *, budget: int | None = None, threads: int = 1
) -> int:
    """Same count as count_det_brute, via cofactor-vector multiplicities and a
    pivot solve for one first-row entry per distinct vector."""
    if n < 2:
        raise PreconditionError("rowblock engine needs dimension >= 2")
    B = len(X)
    check_budget(B ** (n * (n - 1)), budget, "count_det_rowblock")
    table, zero = _minor_table(X, n, threads)
    elems = _fast_elements(X)
    members = frozenset(elems)
    target = _fast_value(X, d)
    total = zero * B**n if not target else 0
    positions = range(n)
    for m, mu in table.items():
        piv = next(j for j in positions if m[j])
        mj = m[piv]
        hits = 0
        if n == 2:
            mo = m[1 - piv]
            for r in elems:
                q = _solve(target - mo * r, mj)
                if q is not None and q in members:
                    hits += 1
        elif n == 3:
            o1, o2 = (j for j in positions if j != piv)
            m1, m2 = m[o1], m[o2]
            for r1 in elems:
                t1 = target - m1 * r1
                for r2 in elems:
                    q = _solve(t1 - m2 * r2, mj)
                    if q is not None and q in members:
                        hits += 1
        else:
            others = [j for j in positions if j != piv]
            for combo in itertools.product(elems, repeat=n - 1):
                acc = target
                for j, r in zip(others, combo):
                    acc = acc - m[j] * r
                q = _solve(acc, mj)
                if q is not None and q in members:
                    hits += 1
        total += mu * hits
    return total


def count_det_conv_n2(X: GroundSet, d) -> int:
    """D_2(X, d) as a product-distribution correlation: sum_t P(t) * P(t - d)."""
    elems = _fast_elements(X)
    target = _fast_value(X, d)
    prod: dict = {}
    for u, v in itertools.product(elems, repeat=2):
        t = u * v
        prod[t] = prod.get(t, 0) + 1
    get = prod.get
    return sum(c * get(t - target, 0) for t, c in prod.items())


# ---------------------------------------------------------------------------
# spectra


def det_spectrum(
    X: GroundSet, n: int, engine: str = "brute", *, budget: int | None = None, threads: int = 1
) -> SpectrumHistogram:
    """Full determinant distribution d -> D_n(X, d)."""
    if n < 1:
        raise PreconditionError("dimension must be >= 1")
    B = len(X)
    if engine == "brute":
        check_budget(B ** (n * n), budget, "det_spectrum[brute]")
        elems = _fast_elements(X)
        if threads <= 1:
            hist = _brute_spectrum_serial(elems, n)
        else:
            hist = merge_tables(
                run_chunked(_brute_spectrum_worker, (elems, n), B ** (n * n), threads)
            )
    elif engine == "rowblock":
        if n < 2:
            raise PreconditionError("rowblock engine needs dimension >= 2")
        check_budget(B ** (n * (n - 1)), budget, "det_spectrum[rowblock]")
        table, zero = _minor_table(X, n, threads)
        elems = _fast_elements(X)
        hist = {}
        if n == 3:
            for (m1, m2, m3), mu in table.items():
                for r1 in elems:
                    t1 = r1 * m1
                    for r2 in elems:
                        t12 = t1 + r2 * m2
                        for r3 in elems:
                            v = t12 + r3 * m3
                            hist[v] = hist.get(v, 0) + mu
        else:
            for m, mu in table.items():
                for row in itertools.product(elems, repeat=n):
                    acc = row[0] * m[0]
                    for j in range(1, n):
                        acc = acc + row[j] * m[j]
                    hist[acc] = hist.get(acc, 0) + mu
        if zero:
            zk = X.field.zero()
            hist[zk] = hist.get(zk, 0) + zero * B**n
    else:
        raise PreconditionError(f"unknown spectrum engine {engine!r}")
    canonical = {X.field.coerce(k): v for k, v in hist.items()}
    return SpectrumHistogram(n, X, engine, canonical)


def dsup(
    X: GroundSet,
    n: int,
    exclude_zero: bool,
    *,
    engine: str = "rowblock",
    budget: int | None = None,
    threads: int = 1,
) -> tuple[Scalar, int]:
    """Argmax of the spectrum; ties resolved to the smallest |d| then positive
    sign over the rationals, and to the smallest residue over a prime field."""
    if n < 2 and engine == "rowblock":
        engine = "brute"
    spec = det_spectrum(X, n, engine, budget=budget, threads=threads)
    items = spec.entries.items()
    if exclude_zero:
        items = [(k, v) for k, v in items if k]
        if not items:
            raise PreconditionError("spectrum has no nonzero determinant values")
    best = max(v for _, v in items)
    candidates = [k for k, v in items if v == best]
    if X.field.is_rational:
        d = min(candidates, key=lambda k: (abs(k), 0 if k >= 0 else 1))
    else:
        d = min(candidates)
    return d, best


def find_witness(X: GroundSet, n: int, d, *, budget: int | None = None) -> Matrix | None:
    """First enumerated matrix with determinant d, or None."""
    check_budget(len(X) ** (n * n), budget, "find_witness")
    target = X.field.coerce(d)
    for rows in itertools.product(itertools.product(X.elements, repeat=n), repeat=n):
        if _det_rows(rows) == target:
            return Matrix(n, n, tuple(v for r in rows for v in r), X.field)
    return None


# ---------------------------------------------------------------------------
# rank counting and bordered decomposition


def count_rank(X: GroundSet, m: int, n: int, r: int, *, budget: int | None = None) -> int:
    """Number of m x n matrices over X with rank exactly r."""
    if not (0 <= r <= m <= n):
        raise PreconditionError("need 0 <= r <= m <= n")
    check_budget(len(X) ** (m * n), budget, "count_rank")
    elems = _fast_elements(X)
    count = 0
    for rows in itertools.product(itertools.product(elems, repeat=n), repeat=m):
        if _rank_rows(rows) == r:
            count += 1
    return count


def count_decomposition(
    X: GroundSet, n: int, d, *, budget: int | None = None
) -> DecompositionCounts:
    """Partition the det-d matrices by the bordered block form: corner entry
    x = 0, then x != 0 split by whether the leading (n-1) block is singular."""
    if n < 2:
        raise PreconditionError("decomposition needs dimension >= 2")
    check_budget(len(X) ** (n * n), budget, "count_decomposition")
    elems = _fast_elements(X)
    target = _fast_value(X, d)
    x_zero = y_sing = y_reg = 0
    for rows in itertools.product(itertools.product(elems, repeat=n), repeat=n):
        if _det_rows(rows) != target:
            continue
        corner = rows[-1][-1]
        if not corner:
            x_zero += 1
            continue
        block = tuple(r[: n - 1] for r in rows[: n - 1])
        if _det_rows(block):
            y_reg += 1
        else:
            y_sing += 1
    return DecompositionCounts(x_zero, y_sing, y_reg)
