"""Command-line front end.

Exit status: 0 success, 1 invariant failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time

from squeezestats import export, figures, svg
from squeezestats.errors import DomainError
from squeezestats.joint import joint_pmf_table
from squeezestats.state import SqueezeParams, check_s, s_of_r
from squeezestats.total import total_pmf_table
from squeezestats.verify import run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _format(args, default: str = "csv") -> str:
    if args.format:
        return args.format
    out = args.out or ""
    for ext in ("csv", "json", "svg"):
        if out.endswith("." + ext):
            return ext
    return default


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _total_svg(tables, labels, styles, title) -> str:
    series = []
    for t, label, style in zip(tables, labels, styles):
        ks = range(0, t.n_max + 1, 2)
        series.append(svg.Series(list(ks), [t.values[n] for n in ks], label, style))
    return svg.line_plot_log(series, title, "n = 2k", "W_n")


def run_total(args) -> int:
    if args.r1 is not None or args.r2 is not None:
        s1, s2 = s_of_r(args.r1 or 0.0), s_of_r(args.r2 or 0.0)
    else:
        if args.s1 is None or args.s2 is None:
            raise UsageError("total needs --s1/--s2 or --r1/--r2")
        s1, s2 = check_s(args.s1), check_s(args.s2)
    if args.nmax < 0:
        raise UsageError("--nmax must be non-negative")
    table = total_pmf_table(s1, s2, args.nmax)
    fmt = _format(args)
    if fmt == "csv":
        text = export.total_csv(table)
    elif fmt == "json":
        text = export.dumps(export.total_document(table, {"s1": s1, "s2": s2}))
    else:
        text = _total_svg([table], [f"s1={s1:g}, s2={s2:g}"], ["solid"], "Total photon number")
    _emit(text, args.out)
    return EXIT_OK


def run_joint(args) -> int:
    if args.n1max < 0 or args.n2max < 0:
        raise UsageError("--n1max/--n2max must be non-negative")
    params = SqueezeParams(args.r1, args.r2, args.phi, args.gamma, args.rho)
    table = joint_pmf_table(params, args.n1max, args.n2max)
    fmt = _format(args)
    if fmt == "csv":
        text = export.joint_csv(table)
    elif fmt == "json":
        text = export.dumps(export.joint_document(table))
    else:
        text = svg.heatmap(table.values, "W(n1, n2)", "n1", "n2")
    _emit(text, args.out)
    return EXIT_OK


def run_figure1(args) -> int:
    tables = figures.figure1_tables()
    fmt = _format(args, default="svg")
    if fmt == "csv":
        rows = []
        for (s1, s2, _), t in zip(figures.FIGURE1_SERIES, tables):
            rows += [(s1, s2, n, w) for n, w in export.total_rows(t)]
        text = export.rows_to_csv(["s1", "s2", "n", "W"], rows)
    elif fmt == "json":
        text = export.dumps({
            "preset": "figure1",
            "version": figures.PRESET_VERSION,
            "series": [
                export.total_document(t, {"s1": s1, "s2": s2, "style": style})
                for (s1, s2, style), t in zip(figures.FIGURE1_SERIES, tables)
            ],
        })
    else:
        labels = [f"s1={s1:g}, s2={s2:g}" for s1, s2, _ in figures.FIGURE1_SERIES]
        styles = [style for *_, style in figures.FIGURE1_SERIES]
        text = _total_svg(tables, labels, styles, "Probability of n = 2k photons")
    _emit(text, args.out)
    return EXIT_OK


def run_figure2(args) -> int:
    start = time.perf_counter()
    binned, detail = figures.figure2_tables()
    fmt = _format(args, default="svg")
    if fmt == "csv":
        text = export.joint_csv(binned)
    elif fmt == "json":
        doc = export.joint_document(binned)
        doc.update(preset="figure2", version=figures.PRESET_VERSION, detail=export.joint_document(detail))
        text = export.dumps(doc)
    else:
        text = svg.side_by_side(
            svg.heatmap(detail.values, "W(n1, n2), detail", "n1", "n2"),
            svg.heatmap(
                binned.values,
                f"binned {binned.bin_width}x{binned.bin_width}, mass {binned.captured_mass:.4f}",
                "n1", "n2", cell_size=binned.bin_width, log_decades=6,
            ),
        )
    _emit(text, args.out)
    print(
        f"figure2: captured_mass={binned.captured_mass:.6f} bin_width={binned.bin_width} "
        f"in {time.perf_counter() - start:.1f}s",
        file=sys.stderr,
    )
    return EXIT_OK


def run_verify(args) -> int:
    results = run_checks(args.level, args.seed, args.perturb_norm, report=print)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print("failed: " + ", ".join(failed))
        return EXIT_FAIL
    print("all checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="squeezestats", description="Photon statistics of two-mode squeezed vacua")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_options(p):
        p.add_argument("--format", choices=["csv", "json", "svg"], help="default: from --out extension")
        p.add_argument("--out", help="output path; '-' or omitted writes to stdout")

    p = sub.add_parser("total", help="total photon-number distribution")
    p.add_argument("--s1", type=float)
    p.add_argument("--s2", type=float)
    p.add_argument("--r1", type=float)
    p.add_argument("--r2", type=float)
    p.add_argument("--nmax", type=int, default=40)
    output_options(p)
    p.set_defaults(func=run_total)

    p = sub.add_parser("joint", help="joint per-mode distribution")
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--n1max", type=int, default=20)
    p.add_argument("--n2max", type=int, default=20)
    output_options(p)
    p.set_defaults(func=run_joint)

    for name, func in (("figure1", run_figure1), ("figure2", run_figure2)):
        p = sub.add_parser(name, help=f"reproduce {name}")
        output_options(p)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.add_argument("--perturb-norm", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(func=run_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
