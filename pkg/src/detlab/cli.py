"""Command-line surface: count, spectrum, rank, energy, incidence, scan, fit.

All output is machine-readable (JSON or JSON Lines; CSV mirror for scans),
with counts and scalars rendered as decimal strings. Exit codes: 0 success,
2 precondition violation, 3 budget exceeded, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from .errors import BudgetExceededError, PreconditionError
from .detcount import (
    count_det_brute,
    count_det_conv_n2,
    count_det_rowblock,
    count_rank,
    det_spectrum,
)
from .energy import (
    count_bilinear,
    count_bilinear_brute,
    energy_Estar_brute,
    energy_Estar_mu,
    energy_N,
    energy_N_brute,
    energy_S,
    energy_S_brute,
    energy_T,
    energy_T_brute,
)
from .families import FamilySpec, generate
from .harness import (
    DMODES,
    ResultCache,
    fit_exponent,
    read_jsonl,
    run_scan,
    write_csv,
    write_jsonl,
)
from .incidence import (
    HyperplaneFamily,
    MinorPlanes,
    cells_hit,
    cell_decompose,
    choose_r,
    classify_incidences,
    cube_grid,
    curve_incidences_n3,
    incidences_brute,
    planes_from_minors,
)
from .matrices import Matrix
from .parallel import resolve_threads
from .scalars import FieldSpec, format_scalar, parse_scalar, read_ground_set_file

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_IO = 4


def _parse_field(text: str) -> FieldSpec:
    if text == "rational":
        return FieldSpec.rationals()
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise PreconditionError(f"bad prime in field flag {text!r}") from None
        return FieldSpec.prime(p)
    raise PreconditionError(f"field must be 'rational' or 'fp:<p>', got {text!r}")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", default="rational", help="rational or fp:<p>")
    p.add_argument("--threads", type=int, default=None, help="worker count (DETLAB_THREADS honored)")
    p.add_argument("--budget", type=int, default=None, help="enumeration budget in elementary steps")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl", help="scan report format")


def _add_set_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--set", dest="set_path", default=None, help="ground-set file (one scalar per line)")
    p.add_argument("--family", choices=("interval", "ap", "gp", "random"), default=None)
    p.add_argument("--size", type=int, default=None, help="family cardinality X")
    p.add_argument("--start", default=None, help="AP start")
    p.add_argument("--step", default=None, help="AP step")
    p.add_argument("--ratio", default="2", help="GP ratio (default 2)")
    p.add_argument("--seed", type=int, default=0, help="seed for the random family")
    p.add_argument("--low", type=int, default=None, help="random range lower bound")
    p.add_argument("--high", type=int, default=None, help="random range upper bound")


def _family_from_args(args, size: int) -> FamilySpec:
    kind = args.family
    if kind == "interval":
        return FamilySpec("interval", size)
    if kind == "ap":
        if args.start is None or args.step is None:
            raise PreconditionError("ap family needs --start and --step")
        return FamilySpec("ap", size, start=args.start, step=args.step)
    if kind == "gp":
        return FamilySpec("gp", size, ratio=args.ratio)
    if kind == "random":
        return FamilySpec("random", size, seed=args.seed, low=args.low, high=args.high)
    raise PreconditionError("select a ground set with --set or --family")


def _resolve_set(args, field: FieldSpec):
    if args.set_path is not None:
        return read_ground_set_file(args.set_path, field)
    if args.family is None:
        raise PreconditionError("select a ground set with --set or --family")
    if args.size is None:
        raise PreconditionError("family input needs --size")
    return generate(_family_from_args(args, args.size), field)


@contextmanager
def _open_out(args):
    if args.out is None:
        yield sys.stdout
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            yield fh


def _emit(args, obj: dict) -> None:
    with _open_out(args) as fh:
        fh.write(json.dumps(obj, sort_keys=True) + "\n")


def _parse_matrix(text: str, field: FieldSpec) -> Matrix:
    rows = [
        [parse_scalar(cell, field) for cell in line.split(",")]
        for line in text.split(";")
    ]
    return Matrix.from_rows(rows, field)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_count(args) -> None:
    field = _parse_field(args.field)
    X = _resolve_set(args, field)
    d = parse_scalar(args.d, field)
    threads = resolve_threads(args.threads)
    if args.engine == "brute":
        cnt = count_det_brute(X, args.n, d, budget=args.budget, threads=threads)
    elif args.engine == "rowblock":
        cnt = count_det_rowblock(X, args.n, d, budget=args.budget, threads=threads)
    else:
        if args.n != 2:
            raise PreconditionError("conv engine is the n = 2 path")
        cnt = count_det_conv_n2(X, d)
    _emit(
        args,
        {
            "op": "count",
            "field": field.label(),
            "X": len(X),
            "n": args.n,
            "d": format_scalar(d),
            "engine": args.engine,
            "count": str(cnt),
        },
    )


def _cmd_spectrum(args) -> None:
    field = _parse_field(args.field)
    X = _resolve_set(args, field)
    threads = resolve_threads(args.threads)
    spec = det_spectrum(X, args.n, args.engine, budget=args.budget, threads=threads)
    entries = [[format_scalar(k), str(v)] for k, v in spec.sorted_items()]
    _emit(
        args,
        {
            "op": "spectrum",
            "field": field.label(),
            "X": len(X),
            "n": args.n,
            "engine": args.engine,
            "total_mass": str(spec.total_mass()),
            "distinct": spec.distinct_count(),
            "entries": entries,
        },
    )


def _cmd_rank(args) -> None:
    field = _parse_field(args.field)
    X = _resolve_set(args, field)
    cnt = count_rank(X, args.m, args.n, args.r, budget=args.budget)
    _emit(
        args,
        {
            "op": "rank",
            "field": field.label(),
            "X": len(X),
            "m": args.m,
            "n": args.n,
            "r": args.r,
            "count": str(cnt),
        },
    )


def _cmd_energy(args) -> None:
    field = _parse_field(args.field)
    X = _resolve_set(args, field)
    threads = resolve_threads(args.threads)
    kind = args.kind
    out = {"op": "energy", "kind": kind, "field": field.label(), "X": len(X)}
    if kind == "bilinear":
        if args.matrix is None or args.omega is None:
            raise PreconditionError("bilinear needs --matrix and --omega")
        M = _parse_matrix(args.matrix, field)
        C = read_ground_set_file(args.set2, field) if args.set2 else X
        omega = parse_scalar(args.omega, field)
        fn = count_bilinear_brute if args.engine == "brute" else count_bilinear
        cnt = fn(M, X, C, omega, budget=args.budget)
        out.update({"k": M.rows, "omega": format_scalar(omega), "C": len(C)})
    elif kind == "Estar":
        if args.engine == "brute":
            cnt = energy_Estar_brute(X, budget=args.budget)
        else:
            cnt = energy_Estar_mu(X, budget=args.budget, threads=threads)
    else:
        table = {"N": (energy_N, energy_N_brute), "T": (energy_T, energy_T_brute), "S": (energy_S, energy_S_brute)}
        fast, brute = table[kind]
        cnt = brute(X, budget=args.budget) if args.engine == "brute" else fast(X)
    out["engine"] = args.engine
    out["count"] = str(cnt)
    _emit(args, out)


def _cmd_incidence(args) -> None:
    field = _parse_field(args.field)
    X = _resolve_set(args, field)
    threads = resolve_threads(args.threads)
    kind = args.kind
    out = {"op": "incidence", "kind": kind, "field": field.label(), "X": len(X)}
    if kind == "curves":
        out["count"] = str(curve_incidences_n3(X, budget=args.budget))
        _emit(args, out)
        return
    if args.d is None:
        raise PreconditionError(f"incidence kind {kind!r} needs --d for the plane family")
    d = parse_scalar(args.d, field)
    mp = planes_from_minors(X, d, budget=args.budget, threads=threads)
    out["d"] = format_scalar(d)
    out["planes"] = len(mp.family)
    out["zero_multiplicity"] = str(mp.zero_multiplicity)
    if kind == "minors":
        out["total_weight"] = str(mp.total_weight())
        out["weight_square_sum"] = str(sum(w * w for w in mp.weights))
        out["det_count_via_incidences"] = str(mp.det_count_via_incidences(budget=args.budget))
        _emit(args, out)
        return
    grid = cube_grid(X, 3)
    if kind == "brute":
        out["incidences"] = str(incidences_brute(grid, mp.family, budget=args.budget))
        _emit(args, out)
        return
    r = args.r if args.r is not None else choose_r(grid, mp.family)
    cls = classify_incidences(grid, mp.family, r, budget=args.budget)
    out.update(
        {
            "r": r,
            "chosen_r": choose_r(grid, mp.family),
            "i1": str(cls.i1),
            "i2": str(cls.i2),
            "i3": str(cls.i3),
            "max_cells_hit": max((cells_hit(pl, cls) for pl in mp.family), default=0),
            "cell_bound": grid.k * r ** (grid.k - 1),
        }
    )
    _emit(args, out)


def _parse_sizes(text: str) -> list[int]:
    if ":" in text:
        parts = [int(v) for v in text.split(":")]
        if len(parts) == 2:
            lo, hi, step = parts[0], parts[1], 1
        elif len(parts) == 3:
            lo, hi, step = parts
        else:
            raise PreconditionError(f"bad sizes range {text!r}")
        if step < 1 or hi < lo:
            raise PreconditionError(f"bad sizes range {text!r}")
        return list(range(lo, hi + 1, step))
    return [int(v) for v in text.split(",")]


def _cmd_scan(args) -> None:
    field = _parse_field(args.field)
    if args.family is None:
        raise PreconditionError("scan needs --family")
    sizes = _parse_sizes(args.sizes)
    if not sizes:
        raise PreconditionError("no sizes to scan")
    template = _family_from_args(args, sizes[0])
    cache = ResultCache(args.cache) if args.cache else None
    threads = resolve_threads(args.threads)
    rows = run_scan(
        template,
        sizes,
        field,
        args.n,
        args.dmode,
        args.engine,
        d=None if args.d is None else parse_scalar(args.d, field),
        threads=threads,
        budget=args.budget,
        cache=cache,
    )
    with _open_out(args) as fh:
        if args.format == "csv":
            write_csv(rows, fh)
        else:
            write_jsonl(rows, fh)


def _cmd_fit(args) -> None:
    with open(args.input, "r", encoding="utf-8") as fh:
        rows = read_jsonl(fh)
    fit = fit_exponent(rows)
    _emit(args, {"op": "fit", **fit.to_json_dict()})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detlab",
        description="Exact determinant, energy, and incidence counting over finite scalar sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="matrices over X with a prescribed determinant")
    _add_set_source(p)
    _add_common(p)
    p.add_argument("--n", type=int, required=True, help="matrix dimension")
    p.add_argument("--d", required=True, help="target determinant")
    p.add_argument("--engine", choices=("brute", "rowblock", "conv"), default="rowblock")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("spectrum", help="full determinant distribution")
    _add_set_source(p)
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--engine", choices=("brute", "rowblock"), default="rowblock")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("rank", help="m x n matrices over X of exact rank r")
    _add_set_source(p)
    _add_common(p)
    p.add_argument("--m", type=int, required=True, help="row count")
    p.add_argument("--n", type=int, required=True, help="column count")
    p.add_argument("--r", type=int, required=True, help="target rank")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("energy", help="additive-energy counts")
    _add_set_source(p)
    _add_common(p)
    p.add_argument("--kind", choices=("N", "T", "S", "Estar", "bilinear"), required=True)
    p.add_argument("--engine", choices=("table", "mu", "pivot", "brute"), default="table",
                   help="table/mu/pivot = fast route, brute = oracle route")
    p.add_argument("--matrix", default=None, help="bilinear matrix, rows ';'-separated, entries ','-separated")
    p.add_argument("--omega", default=None, help="bilinear target value")
    p.add_argument("--set2", default=None, help="second ground-set file for bilinear")
    p.set_defaults(func=_cmd_energy)

    p = sub.add_parser("incidence", help="point/hyperplane incidence counting")
    _add_set_source(p)
    _add_common(p)
    p.add_argument("--kind", choices=("brute", "classify", "minors", "curves"), required=True)
    p.add_argument("--d", default=None, help="determinant value generating the plane family")
    p.add_argument("--r", type=int, default=None, help="slicing parameter (default: the admissible formula)")
    p.set_defaults(func=_cmd_incidence)

    p = sub.add_parser("scan", help="family scan across sizes")
    _add_set_source(p)
    _add_common(p)
    p.add_argument("--sizes", required=True, help="comma list (4,6,8) or range lo:hi[:step]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dmode", choices=DMODES, default="zero")
    p.add_argument("--d", default=None, help="determinant for fixed d-mode")
    p.add_argument("--engine", choices=("brute", "rowblock", "conv"), default="rowblock")
    p.add_argument("--cache", default=None, help="JSONL result cache path")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("fit", help="log-log exponent fit of a scan report")
    _add_common(p)
    p.add_argument("--input", required=True, help="JSONL scan report")
    p.set_defaults(func=_cmd_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
