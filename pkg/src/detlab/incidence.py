"""Point/hyperplane incidence counting over Cartesian grids, with an
instrumented axis-aligned cell decomposition and per-class incidence tallies.

Cuts are placed at exact rational midpoints between consecutive axis elements,
so every grid point is interior to an open cell. Cell decomposition needs an
ordered scalar line and is therefore refused in prime-field mode, where only
brute incidence counting applies.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import PreconditionError, check_budget
from .detcount import _fast_elements, _fast_value, _minor_table, _solve, count_det_brute
from .matrices import _rank_rows
from .scalars import GroundSet, Scalar


@dataclass(frozen=True)
class PointGrid:
    """Cartesian product of per-axis ground sets, all over one field."""

    axes: tuple

    def __post_init__(self):
        if len(self.axes) < 2:
            raise PreconditionError("grids need at least 2 axes")
        field = self.axes[0].field
        if any(ax.field != field for ax in self.axes):
            raise PreconditionError("all axes must share one field")

    @property
    def k(self) -> int:
        return len(self.axes)

    @property
    def field(self):
        return self.axes[0].field

    @property
    def sizes(self) -> tuple:
        return tuple(len(ax) for ax in self.axes)

    @property
    def npoints(self) -> int:
        out = 1
        for s in self.sizes:
            out *= s
        return out

    @property
    def min_size(self) -> int:
        return min(self.sizes)

    @property
    def descending_order(self) -> tuple:
        """Axis indices ordered by decreasing cardinality (recorded, not applied)."""
        return tuple(sorted(range(self.k), key=lambda i: (-len(self.axes[i]), i)))

    def points(self):
        return itertools.product(*(ax.elements for ax in self.axes))

    def _fast_axes(self) -> list:
        return [_fast_elements(ax) for ax in self.axes]


def cube_grid(X: GroundSet, k: int) -> PointGrid:
    return PointGrid(tuple([X] * k))


def normalize_plane(coeffs, offset, field) -> tuple:
    """Scale so the first nonzero coefficient is one; rejects the zero vector."""
    cs = [field.coerce(c) for c in coeffs]
    off = field.coerce(offset)
    lead = next((c for c in cs if c), None)
    if lead is None:
        raise PreconditionError("hyperplane coefficient vector is zero")
    return tuple(c / lead for c in cs), off / lead


@dataclass(frozen=True)
class HyperplaneFamily:
    """Projectively normalized, duplicate-free hyperplanes <a, x> = b."""

    k: int
    planes: tuple  # of (coeffs tuple, offset)

    @classmethod
    def from_coefficients(cls, raw, field) -> "HyperplaneFamily":
        seen: dict = {}
        k = None
        for coeffs, offset in raw:
            coeffs = tuple(coeffs)
            if k is None:
                k = len(coeffs)
            elif len(coeffs) != k:
                raise PreconditionError("mixed hyperplane dimensions")
            seen.setdefault(normalize_plane(coeffs, offset, field), None)
        if k is None:
            raise PreconditionError("empty hyperplane family")
        return cls(k, tuple(seen))

    def __len__(self) -> int:
        return len(self.planes)

    def __iter__(self):
        return iter(self.planes)


def incidences_brute(P: PointGrid, planes: HyperplaneFamily, *, budget: int | None = None) -> int:
    """Exact #{(p, pi) : p on pi} by direct inner products."""
    if planes.k != P.k:
        raise PreconditionError("hyperplane dimension differs from grid dimension")
    check_budget(P.npoints * len(planes), budget, "incidences_brute")
    axes = P._fast_axes()
    total = 0
    for coeffs, offset in planes:
        a = [_fast_value(P.axes[0], c) for c in coeffs]
        b = _fast_value(P.axes[0], offset)
        for point in itertools.product(*axes):
            acc = a[0] * point[0]
            for j in range(1, P.k):
                acc = acc + a[j] * point[j]
            if acc == b:
                total += 1
    return total


def _int_root(x: int, m: int) -> int:
    """Largest r >= 0 with r^m <= x."""
    if x < 0:
        raise PreconditionError("negative radicand")
    if x < 2 or m == 1:
        return x
    lo, hi = 0, 1 << (x.bit_length() // m + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**m <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def choose_r(P: PointGrid, planes: HyperplaneFamily) -> int:
    """Slicing parameter min{max{floor((#P^k / #Pi)^(1/(k^2-1))), 1}, A_k}."""
    if len(planes) < 1:
        raise PreconditionError("need at least one hyperplane")
    k = P.k
    base = P.npoints**k // len(planes)
    r = _int_root(base, k * k - 1)
    return min(max(r, 1), P.min_size)


@dataclass(frozen=True)
class CellDecomposition:
    """r^k open cells from r-1 midpoint cuts per axis, with optional class tallies."""

    grid: PointGrid
    r: int
    cuts: tuple  # per axis: tuple of r-1 strictly increasing thresholds
    group_sizes: tuple  # per axis: tuple of r group sizes
    i1: int | None = None
    i2: int | None = None
    i3: int | None = None

    def cell_of(self, point) -> tuple:
        return tuple(bisect_left(self.cuts[i], point[i]) for i in range(self.grid.k))

    def population(self, cell: tuple) -> int:
        out = 1
        for i, g in enumerate(cell):
            out *= self.group_sizes[i][g]
        return out

    def cell_indices(self):
        return itertools.product(*(range(self.r) for _ in range(self.grid.k)))

    def cell_counts(self) -> dict:
        """Full cell -> point-count table (populations multiply per axis)."""
        return {c: self.population(c) for c in self.cell_indices()}

    def total_population(self) -> int:
        return sum(self.population(c) for c in self.cell_indices())

    def axis_bounds(self, i: int) -> list:
        """Closed slab bounds along axis i; None encodes an unbounded side."""
        return [None, *self.cuts[i], None]


def cell_decompose(P: PointGrid, r: int) -> CellDecomposition:
    """Split every axis into r nearly equal groups; cuts at exact midpoints."""
    if not P.field.is_rational:
        raise PreconditionError("cell decomposition needs the ordered rational line")
    if not 1 <= r <= P.min_size:
        raise PreconditionError(f"slicing parameter must satisfy 1 <= r <= {P.min_size}")
    cuts = []
    sizes = []
    for ax in P.axes:
        elems = ax.elements
        q, extra = divmod(len(elems), r)
        group_sizes = tuple(q + 1 if i < extra else q for i in range(r))
        axis_cuts = []
        pos = 0
        for g in group_sizes[:-1]:
            pos += g
            axis_cuts.append(Fraction(elems[pos - 1] + elems[pos], 2))
        cuts.append(tuple(axis_cuts))
        sizes.append(group_sizes)
    return CellDecomposition(P, r, tuple(cuts), tuple(sizes))


def classify_incidences(
    P: PointGrid, planes: HyperplaneFamily, r: int, *, budget: int | None = None
) -> CellDecomposition:
    """Assign every incidence to a class by the plane's trace in the point's cell:
    fewer than k points -> sparse; affine span equal to the plane -> spanning;
    otherwise degenerate. Tallies always sum to the brute incidence count."""
    if planes.k != P.k:
        raise PreconditionError("hyperplane dimension differs from grid dimension")
    check_budget(P.npoints * len(planes), budget, "classify_incidences")
    D = cell_decompose(P, r)
    k = P.k
    i1 = i2 = i3 = 0
    for coeffs, offset in planes:
        a = [_fast_value(P.axes[0], c) for c in coeffs]
        b = _fast_value(P.axes[0], offset)
        by_cell: dict = {}
        for point in itertools.product(*P._fast_axes()):
            acc = a[0] * point[0]
            for j in range(1, k):
                acc = acc + a[j] * point[j]
            if acc == b:
                by_cell.setdefault(D.cell_of(point), []).append(point)
        for pts in by_cell.values():
            if len(pts) <= k - 1:
                i1 += len(pts)
                continue
            base = pts[0]
            diffs = tuple(
                tuple(p[i] - base[i] for i in range(k)) for p in pts[1:]
            )
            if _rank_rows(diffs) == k - 1:
                i2 += len(pts)
            else:
                i3 += len(pts)
    return replace(D, i1=i1, i2=i2, i3=i3)


def cells_hit(plane, D: CellDecomposition) -> int:
    """Number of cells whose closed bounding slab meets the plane; always
    at most k * r^(k-1)."""
    coeffs, offset = plane
    k = D.grid.k
    field = D.grid.field
    a = [field.coerce(c) for c in coeffs]
    b = field.coerce(offset)
    bounds = [D.axis_bounds(i) for i in range(k)]
    hit = 0
    for cell in D.cell_indices():
        lo_sum = hi_sum = field.zero()
        lo_inf = hi_inf = False
        for i, g in enumerate(cell):
            ai = a[i]
            if not ai:
                continue
            lo_b = bounds[i][g]
            hi_b = bounds[i][g + 1]
            if ai > 0:
                lo_side, hi_side = lo_b, hi_b
            else:
                lo_side, hi_side = hi_b, lo_b
            if lo_side is None:
                lo_inf = True
            else:
                lo_sum = lo_sum + ai * lo_side
            if hi_side is None:
                hi_inf = True
            else:
                hi_sum = hi_sum + ai * hi_side
        if (lo_inf or lo_sum <= b) and (hi_inf or hi_sum >= b):
            hit += 1
    bound = k * D.r ** (k - 1)
    if hit > bound:
        raise AssertionError(f"cells_hit {hit} exceeds the slab bound {bound}")
    return hit


@dataclass(frozen=True)
class MinorPlanes:
    """Weighted plane family built from the cofactor triples of bottom-row pairs."""

    base_set: GroundSet
    d: Scalar
    family: HyperplaneFamily
    weights: tuple  # aligned with family.planes
    zero_multiplicity: int

    def total_weight(self) -> int:
        return sum(self.weights) + self.zero_multiplicity

    def det_count_via_incidences(self, *, budget: int | None = None) -> int:
        """Weighted incidence total over the X^3 grid, plus the degenerate
        bucket when d = 0; reproduces the determinant count D_3(X, d)."""
        P = cube_grid(self.base_set, 3)
        check_budget(P.npoints * max(len(self.family), 1), budget, "minor-plane incidences")
        axes = P._fast_axes()
        total = 0
        for (coeffs, offset), w in zip(self.family, self.weights):
            a = [_fast_value(self.base_set, c) for c in coeffs]
            b = _fast_value(self.base_set, offset)
            cnt = 0
            for p1, p2, p3 in itertools.product(*axes):
                if a[0] * p1 + a[1] * p2 + a[2] * p3 == b:
                    cnt += 1
            total += w * cnt
        if not self.d:
            total += self.zero_multiplicity * len(self.base_set) ** 3
        return total


def planes_from_minors(
    X: GroundSet, d, *, budget: int | None = None, threads: int = 1
) -> MinorPlanes:
    """The plane family <m, x> = d indexed by distinct cofactor triples m != 0,
    weighted by triple multiplicity; the zero triple is reported separately.
    For d != 0 distinct triples give distinct planes; for d = 0 projectively
    equal triples merge and their weights add."""
    check_budget(len(X) ** 6, budget, "planes_from_minors")
    d_s = X.field.coerce(d)
    table, zero = _minor_table(X, 3, threads)
    field = X.field
    merged: dict = {}
    for m, mu in table.items():
        key = normalize_plane(m, d_s, field)
        merged[key] = merged.get(key, 0) + mu
    family = HyperplaneFamily(3, tuple(merged))
    return MinorPlanes(X, d_s, family, tuple(merged.values()), zero)


def curve_incidences_n3(U: GroundSet, *, budget: int | None = None) -> int:
    """Solutions of u1*(v2-w2) - u2*(v1-w1) + v1*w2 - v2*w1 = 0 over U^6,
    counted both by direct enumeration and as point/quadratic-curve incidences
    (pivot-solving one coordinate per curve); the two tallies must agree."""
    B = len(U)
    check_budget(B**6, budget, "curve_incidences_n3")
    elems = _fast_elements(U)
    direct = 0
    for u1, u2, v1, v2, w1, w2 in itertools.product(elems, repeat=6):
        if not (u1 * (v2 - w2) - u2 * (v1 - w1) + v1 * w2 - v2 * w1):
            direct += 1
    members = frozenset(elems)
    via_curves = 0
    for a, b, c in itertools.product(elems, repeat=3):
        den = a - b
        if not den:
            via_curves += (2 * B - 1) * B
            continue
        for r in elems:
            for t in elems:
                q = _solve(r * (t - c) + a * c - t * b, den)
                if q is not None and q in members:
                    via_curves += 1
    if direct != via_curves:
        raise AssertionError(
            f"curve double count disagrees: direct {direct}, curves {via_curves}"
        )
    return direct


def nondegeneracy_ratio(P: PointGrid, plane) -> Fraction | None:
    """Diagnostic only: largest fraction of a plane's grid points lying on one
    lower-dimensional flat. Supported for k in {2, 3}; None when the plane
    carries no points (or for larger k)."""
    k = P.k
    if k > 3:
        return None
    field = P.field
    coeffs = [field.coerce(c) for c in plane[0]]
    offset = field.coerce(plane[1])
    on_plane = []
    for point in P.points():
        acc = field.zero()
        for c, x in zip(coeffs, point):
            acc = acc + c * x
        if acc == offset:
            on_plane.append(point)
    m = len(on_plane)
    if m == 0:
        return None
    if k == 2:
        return Fraction(1, m)
    lines: dict = {}
    for i in range(m):
        for j in range(i + 1, m):
            p, q = on_plane[i], on_plane[j]
            direction = tuple(q[t] - p[t] for t in range(3))
            lead_idx = next(t for t in range(3) if direction[t])
            lead = direction[lead_idx]
            direction = tuple(x / lead for x in direction)
            shift = p[lead_idx]
            base = tuple(p[t] - shift * direction[t] for t in range(3))
            key = (direction, base)
            lines.setdefault(key, set()).update((p, q))
    heaviest = max((len(v) for v in lines.values()), default=1)
    return Fraction(heaviest, m)
