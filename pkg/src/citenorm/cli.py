"""Command-line interface.

Subcommands: ``evaluate``, ``rank``, ``compare``, ``test`` and
``export-fixture``. Exit status is 0 on success, 1 on a data or domain
error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace

from . import __version__
from .display import round_half_away
from .errors import CitenormError
from .indicators import NormalizationBasis, build_report
from .ingest import appendix_csv, load_appendix_fixture, read_csv
from .model import CitableFilter, DocType, SelfCitationMode, apply_filter
from .ranking import compare_rankings, rank_units
from .stats import DEFAULT_ALPHA, kruskal_wallis, pairwise_posthoc, test_against_unity

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2


def _markdown(headers, rows) -> str:
    lines = ["| " + " | ".join(headers) + " |",
             "|" + "|".join("---" for _ in headers) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _csv(headers, rows) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(["" if c is None else (repr(c) if isinstance(c, float) else c)
                         for c in row])
    return out.getvalue()


def _emit(fmt, headers, rows, json_payload, precision) -> str:
    if fmt == "json":
        return json.dumps(json_payload, indent=2) + "\n"
    if fmt == "csv":
        return _csv(headers, rows)
    shown = [[round_half_away(c, precision) if isinstance(c, (float, int)) and not isinstance(c, bool)
              else ("" if c is None else c) for c in row] for row in rows]
    return _markdown(headers, shown)


# ---------------------------------------------------------------------------
# shared loading

def _doc_types(text):
    if not text:
        return []
    return [DocType.parse(part) for part in text.split(",") if part.strip()]


def _load_sets(args):
    if args.fixture:
        fixture = load_appendix_fixture()
        sets = {fixture.unit_id: fixture}
    else:
        sets = read_csv(args.input)
    if args.exclude_doc_types is None:
        citable = CitableFilter()
    else:
        citable = CitableFilter.excluding(_doc_types(args.exclude_doc_types))
    return {unit: apply_filter(es, citable) for unit, es in sorted(sets.items())}


def _mode(args) -> SelfCitationMode:
    return SelfCitationMode(args.self_citations)


def _bases(args):
    return {
        "journal": (NormalizationBasis.JOURNAL,),
        "field": (NormalizationBasis.FIELD,),
        "both": (NormalizationBasis.JOURNAL, NormalizationBasis.FIELD),
    }[args.basis]


def _reports(args):
    return [build_report(es, _bases(args), _mode(args)) for es in _load_sets(args).values()]


# ---------------------------------------------------------------------------
# commands

def cmd_evaluate(args) -> str:
    reports = _reports(args)
    with_field = args.basis in ("field", "both")
    headers = ["unit_id", "P", "C", "CPP", "JCSm", "CPP/JCSm", "MOR", "SEM"]
    if with_field:
        headers += ["FCSm", "CPP/FCSm", "MOR field", "SEM field"]
    headers += ["flag", "self-citations"]
    rows = []
    for r in reports:
        row = [r.unit_id, r.p, r.c, r.cpp, r.jcsm, r.rom_journal, r.mor_journal, r.sem_journal]
        if with_field:
            row += [r.fcsm, r.rom_field, r.mor_field, r.sem_field]
        row += [r.performance_flag.value, r.self_citation_mode.value]
        rows.append(row)
    payload = {"reports": [r.to_dict() for r in reports]}
    text = _emit(args.format, headers, rows, payload, args.precision)
    if args.per_paper and args.format != "json":
        pp_headers = ["unit_id", "pub_id", "basis", "ratio"]
        pp_rows = [[r.unit_id, pid, basis, ratio]
                   for r in reports
                   for basis, pairs in r.per_paper_ratios.items()
                   for pid, ratio in pairs]
        text += "\n" + _emit(args.format, pp_headers, pp_rows, None, args.precision)
    return text


def cmd_rank(args) -> str:
    entries = rank_units(_reports(args), args.indicator)
    headers = ["rank", "unit_id", args.indicator, "P"]
    rows = [[e.rank, e.unit_id, e.indicator_value, e.p] for e in entries]
    payload = {"indicator": args.indicator,
               "entries": [vars(e).copy() for e in entries]}
    return _emit(args.format, headers, rows, payload, args.precision)


PLOT_COLUMNS = ["unit_id", "rom", "mor", "rel_diff_pct", "rank_rom", "rank_mor"]


def plot_data_csv(comparison) -> str:
    """Per-unit rows for plotting rankings and relative differences."""
    rows = [[e.unit_id, e.value_a, e.value_b, 100.0 * e.relative_difference, e.rank_a, e.rank_b]
            for e in comparison.entries]
    return _csv(PLOT_COLUMNS, rows)


def cmd_compare(args) -> str:
    comparison = compare_rankings(_reports(args), "rom", "mor", args.alpha)
    if args.plot_data:
        with open(args.plot_data, "w", encoding="utf-8", newline="") as fh:
            fh.write(plot_data_csv(comparison))
    if args.format == "json":
        return json.dumps(comparison.to_dict(), indent=2) + "\n"
    if args.format == "csv":
        return plot_data_csv(comparison)
    p = args.precision
    rows = [[e.unit_id, e.value_a, e.value_b, 100.0 * e.relative_difference, e.rank_a, e.rank_b]
            for e in comparison.entries]
    text = _emit("md", PLOT_COLUMNS, rows, None, p)
    fit = comparison.regression
    text += (
        f"\nPearson r = {round_half_away(comparison.pearson_r, p)}"
        f" (p = {comparison.pearson.p_value:.3g})\n"
        f"Spearman rho = {round_half_away(comparison.spearman_rho, p)}"
        f" (p = {comparison.spearman.p_value:.3g})\n"
        f"relative difference = {fit.intercept:.4g} + {fit.slope:.4g} * rom (r = {fit.r:.3g})\n"
    )
    return text


def cmd_test(args) -> str:
    if not (args.against_unity or args.kruskal_wallis or args.pairwise):
        raise _UsageError("choose at least one of --against-unity, --kruskal-wallis, --pairwise")
    basis = NormalizationBasis(args.basis)
    reports = [build_report(es, (basis,), _mode(args)) for es in _load_sets(args).values()]
    labels = [r.unit_id for r in reports]
    groups = [[ratio for _, ratio in r.per_paper_ratios[basis.value]] for r in reports]

    results = []
    if args.against_unity:
        for label, ratios in zip(labels, groups):
            res = test_against_unity(ratios, args.alpha)
            results.append(_labelled(res, label))
    if args.kruskal_wallis:
        results.append(_labelled(kruskal_wallis(groups, args.alpha), "all units"))
    if args.pairwise:
        matrix = pairwise_posthoc(groups, args.alpha, labels)
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                results.append(matrix[i][j])

    headers = ["test", "label", "statistic", "df", "p_value", "raw_p_value", "correction",
               "method", "n", "significant"]
    rows = [[r.test_name.value, r.label, r.statistic, r.df, r.p_value, r.raw_p_value,
             "" if r.correction is None else f"Bonferroni(m={r.correction.m})",
             r.method, r.n, "yes" if r.significant else "no"] for r in results]
    payload = {"alpha": args.alpha, "results": [r.to_dict() for r in results]}
    if args.format == "md":
        # p-values need more than two decimals to be useful
        rows = [[c if k not in (4, 5) else f"{c:.4g}" for k, c in enumerate(row)] for row in rows]
    return _emit(args.format, headers, rows, payload, args.precision)


def _labelled(result, label):
    return replace(result, label=label)


def cmd_export_fixture(args) -> str:
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(appendix_csv())
    return ""


# ---------------------------------------------------------------------------
# parser

class _UsageError(Exception):
    pass


def _add_input(p, fixture=True):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="dataset CSV")
    if fixture:
        src.add_argument("--fixture", choices=["appendix"],
                         help="use the bundled 65-publication dataset")
    p.set_defaults(fixture=None)
    p.add_argument("--exclude-doc-types", metavar="LIST", default=None,
                   help="comma-separated doc types to drop (default keeps Article and "
                        "ProceedingsPaper only)")
    p.add_argument("--self-citations", choices=["include", "exclude"], default="include")
    p.add_argument("--format", choices=["json", "csv", "md"], default="md")
    p.add_argument("--precision", type=int, default=2, help="display decimals (md)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citenorm",
        description="Ratio-of-means vs mean-of-ratios citation indicators.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="indicator report per unit")
    _add_input(p)
    p.add_argument("--basis", choices=["journal", "field", "both"], default="journal")
    p.add_argument("--per-paper", action="store_true", help="also list per-paper ratios")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("rank", help="rank units by one indicator")
    _add_input(p)
    p.add_argument("--indicator", choices=["rom", "mor", "rom_field", "mor_field"], default="mor")
    p.set_defaults(func=cmd_rank, basis=None)

    p = sub.add_parser("compare", help="compare rom and mor rankings")
    _add_input(p)
    p.add_argument("--plot-data", metavar="PATH", help="write plot-ready CSV here")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.set_defaults(func=cmd_compare, basis="journal")

    p = sub.add_parser("test", help="nonparametric significance tests on per-paper ratios")
    _add_input(p)
    p.add_argument("--basis", choices=["journal", "field"], default="journal")
    p.add_argument("--against-unity", action="store_true")
    p.add_argument("--kruskal-wallis", action="store_true")
    p.add_argument("--pairwise", action="store_true")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("export-fixture", help="write the bundled dataset as CSV")
    p.add_argument("--out", metavar="PATH", required=True)
    p.set_defaults(func=cmd_export_fixture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.command == "rank":
        args.basis = "both" if args.indicator.endswith("_field") else "journal"
    try:
        if hasattr(args, "alpha") and not 0 < args.alpha < 1:
            raise _UsageError("--alpha must be in (0, 1)")
        out = args.func(args)
    except _UsageError as err:
        parser.print_usage(sys.stderr)
        print(f"citenorm: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (CitenormError, OSError, UnicodeDecodeError) as err:
        print(f"citenorm: error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_DATA
    sys.stdout.write(out)
    return EXIT_OK
