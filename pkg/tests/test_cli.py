import csv
import io
import json
import subprocess
import sys

import pytest

from citenorm.cli import main
from citenorm.display import round_half_away
from citenorm.indicators import build_report
from citenorm.ingest import COLUMNS, load_appendix_fixture, parse_csv

from synth import pairs_csv

HEADER = ",".join(COLUMNS)
TABLE4_PAIRS = [(1.99, 2.03), (1.52, 1.74), (1.54, 1.54), (1.03, 1.50),
                (1.03, 0.93), (0.71, 0.91), (0.54, 0.78)]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def md_rows(text):
    lines = [ln for ln in text.splitlines() if ln.startswith("|")]
    header = [c.strip() for c in lines[0].strip("|").split("|")]
    return [dict(zip(header, (c.strip() for c in ln.strip("|").split("|")))) for ln in lines[2:]]


@pytest.fixture
def write(tmp_path):
    def _write(text, name="data.csv"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return _write


# -- evaluate ---------------------------------------------------------------

def test_evaluate_fixture_markdown(capsys):
    code, out, _ = run(capsys, "evaluate", "--fixture", "appendix", "--format", "md")
    assert code == 0
    row = md_rows(out)[0]
    assert row["P"] == "65" and row["C"] == "698"
    assert (row["CPP"], row["JCSm"], row["CPP/JCSm"], row["MOR"], row["SEM"]) == (
        "10.74", "15.23", "0.71", "0.91", "0.11")
    assert row["flag"] == "BelowBorderline"


def test_evaluate_json_keeps_full_precision(capsys):
    code, out, _ = run(capsys, "evaluate", "--fixture", "appendix", "--format", "json")
    assert code == 0
    report = json.loads(out)["reports"][0]
    ref = build_report(load_appendix_fixture())
    for key in ("cpp", "jcsm", "rom_journal", "mor_journal", "sem_journal"):
        assert report[key] == getattr(ref, key)
    assert report["fcsm"] is None
    assert len(report["per_paper_ratios"]["journal"]) == 65


def test_markdown_numbers_are_rounded_full_precision(capsys, write):
    path = write(pairs_csv(TABLE4_PAIRS))
    _, out, _ = run(capsys, "evaluate", "--input", path, "--precision", "3")
    _, js, _ = run(capsys, "evaluate", "--input", path, "--format", "json")
    reports = {r["unit_id"]: r for r in json.loads(js)["reports"]}
    for row in md_rows(out):
        rep = reports[row["unit_id"]]
        assert row["CPP/JCSm"] == round_half_away(rep["rom_journal"], 3)
        assert row["MOR"] == round_half_away(rep["mor_journal"], 3)


def test_evaluate_missing_file(capsys):
    code, _, err = run(capsys, "evaluate", "--input", "missing.csv")
    assert code == 1
    assert "missing.csv" in err


def test_evaluate_field_on_fixture_fails(capsys):
    code, _, err = run(capsys, "evaluate", "--fixture", "appendix", "--basis", "field")
    assert code == 1
    assert "MissingFieldRate" in err


def test_evaluate_table1_both_bases_csv(capsys, write):
    path = write(HEADER + "\n" + "\n".join(
        f"demo,{i},,Article,{c},,{j},{f}" for i, (c, j, f) in
        enumerate([(17, 16.9, 23.7), (4, 3.1, 3.0), (6, 4.8, 4.1), (8, 4.8, 4.1)], 1)) + "\n")
    code, out, _ = run(capsys, "evaluate", "--input", path, "--basis", "both", "--format", "md")
    assert code == 0
    row = md_rows(out)[0]
    assert (row["CPP"], row["JCSm"], row["FCSm"], row["CPP/JCSm"], row["CPP/FCSm"]) == (
        "8.75", "7.40", "8.73", "1.18", "1.00")
    assert (row["MOR"], row["SEM"], row["MOR field"], row["SEM field"]) == (
        "1.30", "0.14", "1.37", "0.25")
    code, out, _ = run(capsys, "evaluate", "--input", path, "--basis", "both", "--format", "csv")
    rec = next(csv.DictReader(io.StringIO(out)))
    assert float(rec["CPP"]) == 8.75


def test_evaluate_per_paper_table(capsys):
    code, out, _ = run(capsys, "evaluate", "--fixture", "appendix", "--per-paper")
    tables = out.split("\n\n")
    assert code == 0 and len(tables) == 2
    rows = md_rows(tables[1])
    assert len(rows) == 65 and rows[19]["ratio"] == "4.92"


def test_evaluate_self_citation_exclude(capsys, write):
    path = write(HEADER + "\nu,1,,Article,10,3,2.0,\nu,2,,Article,4,0,2.0,\n")
    code, out, _ = run(capsys, "evaluate", "--input", path, "--self-citations", "exclude")
    assert code == 0 and md_rows(out)[0]["C"] == "11"
    code, _, err = run(capsys, "evaluate", "--fixture", "appendix", "--self-citations", "exclude")
    assert code == 1 and "MissingSelfCitationData" in err


def test_evaluate_doc_type_filter(capsys, write):
    path = write(HEADER + "\nu,1,,Article,10,,2.0,\nu,2,,Review,40,,5.0,\nu,3,,Editorial,1,,1.0,\n")
    _, out, _ = run(capsys, "evaluate", "--input", path)
    assert md_rows(out)[0]["P"] == "1"
    _, out, _ = run(capsys, "evaluate", "--input", path, "--exclude-doc-types", "Editorial")
    assert md_rows(out)[0]["P"] == "2"


def test_bad_row_reports_row_number(capsys, write):
    path = write(HEADER + "\nu,1,,Article,10,,2.0,\nu,2,,Article,4,,0,\n")
    code, _, err = run(capsys, "evaluate", "--input", path)
    assert code == 1 and "row 2" in err


# -- usage errors ------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    [],
    ["evaluate"],
    ["evaluate", "--fixture", "appendix", "--input", "x.csv"],
    ["evaluate", "--fixture", "appendix", "--format", "xml"],
    ["rank", "--fixture", "appendix", "--indicator", "h"],
    ["test", "--fixture", "appendix"],
    ["test", "--fixture", "appendix", "--against-unity", "--alpha", "2"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


# -- rank -------------------------------------------------------------------

def test_rank_distinct(capsys, write):
    path = write(pairs_csv([(1.0, 0.8), (1.0, 1.2), (1.0, 0.9), (1.0, 1.5)], ids=list("abcd")))
    code, out, _ = run(capsys, "rank", "--input", path, "--indicator", "mor")
    rows = md_rows(out)
    assert code == 0
    assert [(r["rank"], r["unit_id"]) for r in rows] == [("1", "d"), ("2", "b"), ("3", "c"),
                                                          ("4", "a")]


def test_rank_tied_units_share_rank(capsys, write):
    body = "\n".join([
        "a,1,,Article,3,,2.0,", "b,1,,Article,3,,2.0,", "c,1,,Article,1,,2.0,",
        "d,1,,Article,9,,2.0,"])
    path = write(HEADER + "\n" + body + "\n")
    code, out, _ = run(capsys, "rank", "--input", path, "--indicator", "rom", "--format", "json")
    entries = json.loads(out)["entries"]
    assert [(e["unit_id"], e["rank"]) for e in entries] == [("d", 1), ("a", 2), ("b", 2), ("c", 4)]


def test_rank_single_unit(capsys):
    code, out, _ = run(capsys, "rank", "--fixture", "appendix", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1 and rows[0]["rank"] == "1"


# -- compare ----------------------------------------------------------------

def test_compare_table4_negative_slope(capsys, write, tmp_path):
    path = write(pairs_csv(TABLE4_PAIRS))
    plot = tmp_path / "plot.csv"
    code, out, _ = run(capsys, "compare", "--input", path, "--format", "json",
                       "--plot-data", str(plot))
    assert code == 0
    result = json.loads(out)
    assert result["regression"]["slope"] < 0
    rows = list(csv.DictReader(plot.open()))
    assert list(rows[0]) == ["unit_id", "rom", "mor", "rel_diff_pct", "rank_rom", "rank_mor"]
    u6 = next(r for r in rows if r["unit_id"] == "u6")
    assert float(u6["rel_diff_pct"]) == pytest.approx(100 * (0.91 - 0.71) / 0.71, rel=1e-9)


def test_compare_identical_indicators(capsys, write):
    path = write(pairs_csv([(0.5, 0.5), (1.2, 1.2), (2.0, 2.0)]))
    code, out, _ = run(capsys, "compare", "--input", path, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert all(abs(float(r["rel_diff_pct"])) < 1e-9 for r in rows)


def test_compare_markdown_summary(capsys, write):
    path = write(pairs_csv(TABLE4_PAIRS))
    code, out, _ = run(capsys, "compare", "--input", path)
    assert code == 0 and "Pearson r" in out and "Spearman rho" in out


def test_compare_two_units_fails(capsys, write):
    path = write(pairs_csv([(0.5, 0.6), (1.2, 1.0)]))
    code, _, err = run(capsys, "compare", "--input", path)
    assert code == 1 and "TooFewUnits" in err


# -- test -------------------------------------------------------------------

def test_test_against_unity_fixture(capsys):
    code, out, _ = run(capsys, "test", "--fixture", "appendix", "--against-unity",
                       "--format", "json")
    assert code == 0
    (res,) = json.loads(out)["results"]
    assert res["test_name"] == "WilcoxonSignedRank" and res["n"] == 65
    assert res["method"] == "asymptotic"
    assert res["label"] == "appendix"


def test_test_pairwise_identical_units(capsys, write):
    body = "\n".join(f"{u},{i},,Article,{c},,2.0," for u in "ab" for i, c in enumerate([1, 4, 9]))
    path = write(HEADER + "\n" + body + "\n")
    code, out, _ = run(capsys, "test", "--input", path, "--pairwise", "--format", "json")
    (res,) = json.loads(out)["results"]
    assert code == 0
    assert res["p_value"] == 1.0 and res["correction"] == {"name": "Bonferroni", "m": 1}


def test_test_kruskal_one_unit_fails(capsys):
    code, _, err = run(capsys, "test", "--fixture", "appendix", "--kruskal-wallis")
    assert code == 1 and "TooFewGroups" in err


def test_test_all_flags_markdown(capsys, write):
    path = write(pairs_csv(TABLE4_PAIRS[:3]))
    code, out, _ = run(capsys, "test", "--input", path, "--against-unity", "--kruskal-wallis",
                       "--pairwise", "--alpha", "0.1")
    rows = md_rows(out)
    assert code == 0 and len(rows) == 3 + 1 + 3
    assert rows[-1]["correction"] == "Bonferroni(m=3)"


# -- export -----------------------------------------------------------------

def test_export_fixture_round_trip(capsys, tmp_path):
    out = tmp_path / "appendix.csv"
    code, _, _ = run(capsys, "export-fixture", "--out", str(out))
    assert code == 0
    text = out.read_text(encoding="utf-8")
    lines = text.splitlines()
    assert len(lines) == 66
    assert "55" in lines[1] and "58.31" in lines[1]
    assert parse_csv(text)["appendix"] == load_appendix_fixture()


def test_export_fixture_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "export-fixture", "--out", str(tmp_path / "no" / "such" / "f.csv"))
    assert code == 1 and err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "citenorm", "evaluate", "--fixture", "appendix"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "0.71" in proc.stdout
