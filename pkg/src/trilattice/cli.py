"""Command-line surface: triples, params, count, analyze.

Exit codes: 0 success, 1 verification mismatch (reference comparison failed
or the growth sequence was not strictly increasing), 2 usage error.  Every
machine-readable output starts with a header comment naming the version and
a short hash of the run configuration, so emitted fixtures can be traced to
the exact invocation that produced them.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from trilattice import __version__
from trilattice.analysis import (
    PLOT_KINDS,
    REFERENCE_DIFFERENCE_FIT,
    REFERENCE_GROWTH_DEVIATION,
    REFERENCE_GROWTH_FIT,
    FitError,
    emit_plot_data,
    finite_difference,
    fit_g_three_points,
    fit_power,
    growth_sequence,
    mean_abs_deviation,
    monotonicity_report,
)
from trilattice.counting import (
    ENGINES,
    CountRecord,
    count_range,
    oracle_count,
    records_from_csv,
    records_to_bfile,
    records_to_csv,
)
from trilattice.diophantine import Triple, degeneracy, enumerate_triples
from trilattice.oeis import compare, fetch_bfile, parse_bfile
from trilattice.parametrization import (
    NonIntegralParametrization,
    build_params,
    canonical_params,
)

# grids larger than this need an explicit --long (hours-scale protection)
LONG_RUN_THRESHOLD = 300
# the brute-force oracle is cubic in the point count; keep it on a leash
ORACLE_THRESHOLD = 10


def _config_hash(args: argparse.Namespace) -> str:
    payload = sorted(
        (key, repr(value))
        for key, value in vars(args).items()
        if key not in ("func",)
    )
    return hashlib.sha256(repr(payload).encode()).hexdigest()[:12]


def _header(args: argparse.Namespace) -> str:
    return f"trilattice {__version__} config={_config_hash(args)}"


def _parse_range(text: str, parser: argparse.ArgumentParser, what: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if sep:
            bounds = (int(lo), int(hi))
        else:
            bounds = (int(text), int(text))
    except ValueError:
        parser.error(f"{what} must be an integer N or a range LO..HI, got {text!r}")
    if bounds[0] > bounds[1]:
        parser.error(f"empty {what} range {text!r}")
    return bounds


def _write_output(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _progress_printer(label: str):
    def emit(done: int, total: int) -> None:
        sys.stderr.write(f"\r{label}: {done}/{total}")
        sys.stderr.flush()
        if done == total:
            sys.stderr.write("\n")

    return emit


def cmd_triples(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    lo, hi = _parse_range(args.d, parser, "d")
    if lo < 1:
        parser.error(f"d must be positive, got {lo}")
    if lo % 2 == 0 and lo == hi:
        parser.error(f"d must be odd, got {lo}")
    lines = [f"# {_header(args)}", "d,a,b,c,zeta_a,zeta_b,zeta_c,degenerate"]
    found = 0
    for d in range(lo if lo % 2 else lo + 1, hi + 1, 2):
        for triple in enumerate_triples(d):
            info = degeneracy(triple)
            if args.degenerate_only and not info.is_degenerate:
                continue
            found += 1
            lines.append(
                f"{d},{triple.a},{triple.b},{triple.c},"
                f"{info.zeta_a},{info.zeta_b},{info.zeta_c},"
                f"{int(info.is_degenerate)}"
            )
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def cmd_params(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        triple = Triple(args.a, args.b, args.c, args.d)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        if args.rs is not None:
            params = build_params(triple, tuple(args.rs))
        else:
            params = canonical_params(triple)
    except (NonIntegralParametrization, ValueError) as exc:
        parser.error(str(exc))

    def term(coef_m: int, coef_n: int) -> str:
        sign = "-" if coef_n >= 0 else "+"
        return f"{coef_m}*m {sign} {abs(coef_n)}*n"

    lines = [
        f"# {_header(args)}",
        f"# family (a, b, c, d) = ({triple.a}, {triple.b}, {triple.c}, {triple.d}); "
        f"companion (r, s) = ({params.rs.r}, {params.rs.s})",
        f"# P(m, n) = ({term(params.m_u, params.n_u)}, {term(params.m_v, params.n_v)}, "
        f"{term(params.m_w, params.n_w)})",
        f"# Q(m, n) = ({term(params.m_x, params.n_x)}, {term(params.m_y, params.n_y)}, "
        f"{term(params.m_z, params.n_z)})",
        "coefficient,value",
    ]
    for name in ("m_u", "n_u", "m_v", "n_v", "m_w", "n_w",
                 "m_x", "n_x", "m_y", "n_y", "m_z", "n_z"):
        lines.append(f"{name},{getattr(params, name)}")
    lines.append(f"r,{params.rs.r}")
    lines.append(f"s,{params.rs.s}")
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def cmd_count(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    lo, hi = _parse_range(args.n, parser, "n")
    if hi > LONG_RUN_THRESHOLD and not args.long:
        parser.error(
            f"counting up to n={hi} exceeds the safety threshold "
            f"({LONG_RUN_THRESHOLD}); pass --long to run it anyway"
        )
    if args.oracle and hi > ORACLE_THRESHOLD and not args.long:
        parser.error(
            f"the oracle is brute force; n={hi} exceeds {ORACLE_THRESHOLD}, "
            "pass --long if you really want it"
        )
    progress = _progress_printer("families") if args.progress else None
    if args.oracle:
        records = [CountRecord(n, oracle_count(n)) for n in range(lo, hi + 1)]
    else:
        records = count_range(lo, hi, engine=args.engine, threads=args.threads, progress=progress)

    header = _header(args)
    if args.format == "csv":
        text = f"# {header}\n" + records_to_csv(records)
    elif args.format == "bfile":
        text = records_to_bfile(records, comments=[header])
    else:
        text = json.dumps(
            {
                "artifact": "trilattice",
                "version": __version__,
                "config": _config_hash(args),
                "records": [{"n": r.n, "count": r.count} for r in records],
            },
            indent=2,
        ) + "\n"
    _write_output(text, args.output)

    if args.compare_oeis is not None:
        try:
            reference_text = fetch_bfile(args.compare_oeis, cache_dir=args.cache_dir)
            reference = parse_bfile(reference_text, args.compare_oeis)
        except (OSError, ValueError) as exc:
            parser.error(str(exc))
        report = compare(records, reference)
        sys.stderr.write(report.summary() + "\n")
        if not report.passed:
            return 1
    return 0


def _read_records(path: str, parser: argparse.ArgumentParser):
    file = Path(path)
    if not file.exists():
        parser.error(f"counts file {path!r} does not exist")
    text = file.read_text()
    try:
        return records_from_csv(text)
    except ValueError:
        pass
    try:
        bfile = parse_bfile(text)
    except ValueError:
        parser.error(f"counts file {path!r} is neither the CSV nor the b-file format")
    return [CountRecord(n, value) for n, value in bfile.entries]


def cmd_analyze(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    records = _read_records(args.counts_file, parser)
    samples = growth_sequence(records)
    if len(samples) < 3:
        parser.error(f"need at least 3 usable growth samples, got {len(samples)}")
    first, last = samples[0].n, samples[-1].n
    if args.fit_points is not None:
        fit_points = tuple(args.fit_points)
    else:
        fit_points = (first, (first + last) // 2, last)
    try:
        own_fit = fit_g_three_points(samples, *fit_points)
    except FitError as exc:
        parser.error(f"growth fit failed: {exc}")
    try:
        deviation = mean_abs_deviation(samples, REFERENCE_GROWTH_FIT, first, last)
    except ValueError as exc:
        parser.error(str(exc))

    counts = [r.count for r in sorted(records, key=lambda r: r.n)]
    diff_start = sorted(r.n for r in records)[0]
    power = None
    try:
        power = fit_power(finite_difference(counts, 1), n_start=diff_start)
    except (FitError, ValueError) as exc:
        sys.stderr.write(f"power fit skipped: {exc}\n")
    mono = monotonicity_report(samples)

    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    kinds = args.emit if args.emit else list(PLOT_KINDS)
    header = _header(args)
    written = []
    for kind in kinds:
        text = emit_plot_data(
            kind, records,
            growth_fit=own_fit if kind == "growth" else None,
            power_fit=power if kind == "first-difference" else None,
        )
        target = out_dir / f"{kind}.csv"
        target.write_text(f"# {header}\n" + text)
        written.append(target)
    if args.figures:
        from trilattice import figures

        if "growth" in kinds:
            written.append(figures.render_growth(records, own_fit, out_dir / "growth.png"))
        if "first-difference" in kinds:
            written.append(
                figures.render_first_difference(records, power, out_dir / "first-difference.png")
            )
        if "third-difference" in kinds:
            written.append(figures.render_third_difference(records, out_dir / "third-difference.png"))

    print(f"# {header}")
    print(f"samples: n in [{first}, {last}] ({len(samples)} points)")
    print(f"growth fit points: {fit_points[0]}, {fit_points[1]}, {fit_points[2]}")
    print(f"growth fit: a={own_fit.a:.9f} b={own_fit.b:.9f} c={own_fit.c:.9f}")
    print(
        f"mean |f - g_ref| over [{first}, {last}]: {deviation:.12f} "
        f"(reference g: a={REFERENCE_GROWTH_FIT.a} b={REFERENCE_GROWTH_FIT.b} "
        f"c={REFERENCE_GROWTH_FIT.c})"
    )
    if (first, last) == (1, 1105):
        print(
            f"reference deviation over [1, 1105]: {REFERENCE_GROWTH_DEVIATION} "
            f"(delta {abs(deviation - REFERENCE_GROWTH_DEVIATION):.2e})"
        )
    if power is not None:
        print(
            f"first-difference power fit (log-log least squares): "
            f"coefficient={power.coefficient:.9f} exponent={power.exponent:.9f} "
            f"(reference: coefficient={REFERENCE_DIFFERENCE_FIT.coefficient} "
            f"exponent={REFERENCE_DIFFERENCE_FIT.exponent})"
        )
    print(f"monotonicity: {mono.checked_pairs} pairs checked, "
          f"{len(mono.violations)} violations")
    for path in written:
        print(f"wrote {path}")
    if not mono.passed:
        sys.stderr.write(
            f"growth sequence is not strictly increasing at n in {mono.violations[:10]}\n"
        )
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trilattice",
        description="Equilateral triangles on the integer lattice: "
        "families, coefficient tables, exact counts, growth analysis.",
    )
    parser.add_argument("--version", action="version", version=f"trilattice {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_triples = sub.add_parser(
        "triples", help="list normal triples (a, b, c, d) for odd d or a d-range"
    )
    p_triples.add_argument("d", help="odd d, or a range LO..HI (even values skipped)")
    p_triples.add_argument(
        "--degenerate-only", action="store_true",
        help="only triples where every gcd(d, component) exceeds 1",
    )
    p_triples.add_argument("--output", help="write to file instead of stdout")
    p_triples.set_defaults(func=cmd_triples)

    p_params = sub.add_parser(
        "params", help="coefficient table for one family (components are sorted)"
    )
    for name in ("a", "b", "c", "d"):
        p_params.add_argument(name, type=int)
    p_params.add_argument(
        "--rs", nargs=2, type=int, metavar=("R", "S"),
        help="use this companion pair instead of the canonical one",
    )
    p_params.add_argument("--output", help="write to file instead of stdout")
    p_params.set_defaults(func=cmd_params)

    p_count = sub.add_parser("count", help="exact triangle counts for grids {0..n}^3")
    p_count.add_argument("n", help="grid size N, or a range LO..HI")
    p_count.add_argument("--engine", choices=ENGINES, default="classes")
    p_count.add_argument("--oracle", action="store_true",
                         help="use the brute-force oracle instead of the fast engines")
    p_count.add_argument("--threads", type=int, default=1)
    p_count.add_argument("--format", choices=("csv", "bfile", "json"), default="csv")
    p_count.add_argument("--output", help="write to file instead of stdout")
    p_count.add_argument(
        "--compare-oeis", metavar="SOURCE",
        help="compare against a b-file: 'fixture', a path, an URL, or a sequence id",
    )
    p_count.add_argument("--cache-dir", help="cache directory for downloaded b-files "
                         "(default: $TRILATTICE_CACHE_DIR)")
    p_count.add_argument("--progress", action="store_true", help="progress meter on stderr")
    p_count.add_argument("--long", action="store_true",
                         help=f"allow runs beyond n={LONG_RUN_THRESHOLD}")
    p_count.set_defaults(func=cmd_count)

    p_analyze = sub.add_parser(
        "analyze", help="growth/difference analysis of a counts file (CSV or b-file)"
    )
    p_analyze.add_argument("counts_file")
    p_analyze.add_argument("--output-dir", default=".", help="where plot data and figures go")
    p_analyze.add_argument(
        "--emit", action="append", choices=PLOT_KINDS, metavar="KIND",
        help="plot-data kind to emit (repeatable; default: all three)",
    )
    p_analyze.add_argument(
        "--fit-points", nargs=3, type=int, metavar=("I", "J", "K"),
        help="the three n values the growth fit must pass through "
        "(default: first, midpoint, last of the usable samples)",
    )
    figs = p_analyze.add_mutually_exclusive_group()
    figs.add_argument("--figures", dest="figures", action="store_true", default=True,
                      help="render PNG figures next to the CSVs (default)")
    figs.add_argument("--no-figures", dest="figures", action="store_false")
    p_analyze.set_defaults(func=cmd_analyze)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
