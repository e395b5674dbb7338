from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gchain.cli import ChainRecord, UsageError, main, parse, parse_grid, parse_levels, render
from oracles import brute_counts


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines()]


# -- chain


def test_chain_factor(capsys):
    code, out, _ = run(capsys, "chain", "--g", "5", "--method", "factor", "36")
    assert code == 0
    assert "elements: 1, 4, 12, 36" in out
    assert "length=3" in out


def test_chain_mary_json(capsys):
    code, out, _ = run(capsys, "chain", "--g", "3", "--method", "mary", "--m", "3", "--json", "48")
    assert code == 0
    (rec,) = records(out)
    assert rec["length"] == 5 and rec["m"] == 3
    assert rec["elements"] == [1, 3, 5, 15, 16, 48]


def test_chain_optimal(capsys):
    code, out, _ = run(capsys, "chain", "--g", "2", "--method", "optimal", "--json", "15")
    assert code == 0
    rec = records(out)[0]
    assert rec["length"] == 5
    assert rec["bounds"] == {"lower": 4, "upper": 7}
    ChainRecord.from_dict(rec)


@pytest.mark.parametrize("method", ["factor", "mary", "tree", "optimal", "best"])
def test_chain_records_round_trip(capsys, method):
    code, out, _ = run(capsys, "chain", "--g", "3", "--method", method, "--json", "200")
    assert code == 0
    (rec,) = records(out)
    assert parse(render(rec)) == rec
    assert render(rec) == out.strip()
    assert ChainRecord.from_dict(rec).to_dict() == rec


def test_tampered_record_rejected(capsys):
    _, out, _ = run(capsys, "chain", "--g", "2", "--method", "factor", "--json", "15")
    rec = records(out)[0]
    rec["elements"][2] = 4
    with pytest.raises(Exception):
        ChainRecord.from_dict(rec)


def test_m_without_mary_is_usage_error(capsys):
    code, _, err = run(capsys, "chain", "--g", "2", "--method", "factor", "--m", "4", "15")
    assert code == 1 and "--m" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["chain", "--g", "2", "15"],
        ["chain", "--g", "x", "--method", "factor", "15"],
        ["chain", "--g", "2", "--method", "nope", "15"],
        ["chain", "--g", "1", "--method", "factor", "15"],
        ["chain", "--g", "2", "--method", "factor", "0"],
        ["stats", "ratio", "--g", "2", "--levels", "5..3"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_overflow_exit(capsys):
    code, _, err = run(capsys, "chain", "--g", "2", "--method", "factor", str(2**63))
    assert code == 2 and "limit" in err


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("GCHAIN_BUDGET", "20")
    code, _, err = run(capsys, "chain", "--g", "2", "--method", "optimal", "4919")
    assert code == 2 and "exact search nodes" in err


def test_bad_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("GCHAIN_BUDGET", "lots")
    assert run(capsys, "stats", "bounds", "--g", "2", "15")[0] == 1


# -- compare


def test_compare_row1(capsys):
    code, out, _ = run(capsys, "compare", "--row", "1", "--g", "5")
    assert code == 0
    assert out.strip().endswith("factor 3 < g-ary 4: PASS")


def test_compare_row7(capsys):
    code, out, _ = run(capsys, "compare", "--row", "7", "--g", "3", "--k", "0", "--json")
    assert code == 0
    rec = records(out)[0]
    assert rec["a"]["method"] == "tree" and rec["a"]["length"] <= 4
    assert rec["b"]["length"] == 5
    assert rec["verdict"] is True


def test_compare_condition_unmet(capsys):
    code, _, err = run(capsys, "compare", "--row", "1", "--g", "4")
    assert code == 1
    assert "prime power" in err


def test_compare_finding_exit(capsys):
    # g+1 = 7 prime: the factor method only ties the g-ary method
    code, out, _ = run(capsys, "compare", "--row", "3", "--g", "6")
    assert code == 3
    assert "FAIL" in out


def test_compare_all_rows(capsys):
    code, out, _ = run(capsys, "compare", "--all-rows", "--json")
    assert code == 0
    recs = records(out)
    assert len(recs) == 14
    assert sorted(r["row"] for r in recs) == [r for r in range(1, 8) for _ in range(2)]


def test_parse_grid():
    assert parse_grid("2:5:1,1:5") == [(1, 5, 0), (2, 5, 1)]
    with pytest.raises(UsageError):
        parse_grid("1-5")


# -- stats


def test_stats_bounds(capsys):
    code, out, _ = run(capsys, "stats", "bounds", "--g", "2", "15")
    assert (code, out.strip()) == (0, "4 ≤ l ≤ 7")


def test_stats_sb(capsys):
    code, out, _ = run(capsys, "stats", "sb", "--g", "2", "--n", "3")
    assert (code, out.strip()) == (0, "d=7, l=4, rhs=4, holds")


def test_stats_sb_finding_exits_zero(capsys):
    code, out, _ = run(capsys, "stats", "sb", "--g", "3", "--n", "2")
    assert code == 0
    assert "l=3, rhs=2, exceeds" in out


def test_stats_nmc(capsys):
    code, out, _ = run(capsys, "stats", "nmc", "--g", "2", "--max", "3")
    assert code == 0
    assert "NMC_2(3) = 1" in out


def test_stats_cg_json(capsys):
    code, out, _ = run(capsys, "stats", "cg", "--g", "2", "--max", "100", "--json")
    assert code == 0
    least: dict[int, int] = {}
    for n, (r, _) in sorted(brute_counts(2, 100, 9).items()):
        least.setdefault(r, n)
    assert {r["r"]: r["value"] for r in records(out)} == least


def test_stats_partial_on_budget(capsys, monkeypatch):
    monkeypatch.setenv("GCHAIN_BUDGET", "2000")
    code, out, err = run(capsys, "stats", "dg", "--g", "2", "--max", "500")
    assert code == 2
    assert "PARTIAL" in err
    assert "(partial)" in out


def test_stats_ratio(capsys):
    code, out, _ = run(capsys, "stats", "ratio", "--g", "2", "--levels", "6..7", "--samples", "5", "--json")
    assert code == 0
    recs = records(out)
    levels = [r for r in recs if r["type"] == "ratio_level"]
    assert [r["lambda"] for r in levels] == [6, 7]
    assert all(isinstance(r["mean"], str) and len(r["mean"].split(".")[1]) == 6 for r in levels)


def test_parse_levels():
    assert parse_levels("10..40") == (10, 40)
    assert parse_levels("7") == (7, 7)
    with pytest.raises(UsageError):
        parse_levels("a..b")


# -- powerprog


def test_powerprog(capsys):
    code, out, _ = run(capsys, "powerprog", "--g", "5", "--method", "factor", "--base", "7", "--mod", "101", "36")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert lines[-1] == f"verified: 7^36 mod 101 = {pow(7, 36, 101)}"


@pytest.mark.parametrize("base, mod, value", [(0, 101, 0), (1, 2, 1)])
def test_powerprog_trivial(capsys, base, mod, value):
    code, out, _ = run(capsys, "powerprog", "--g", "3", "--method", "best", "--base", str(base), "--mod", str(mod), "50")
    assert code == 0
    assert out.strip().endswith(f"= {value}")


def test_powerprog_overflow(capsys):
    code, _, _ = run(capsys, "powerprog", "--g", "2", "--method", "factor", "--base", "3", "--mod", str(2**40), "50")
    assert code == 2


# -- output file and determinism


def test_out_file_matches_stdout(capsys, tmp_path):
    path = tmp_path / "rows.jsonl"
    code, out, _ = run(capsys, "compare", "--all-rows", "--json", "--out", str(path))
    assert code == 0
    assert path.read_text(encoding="utf-8") == out


def test_out_file_without_json_flag(capsys, tmp_path):
    path = tmp_path / "c.jsonl"
    run(capsys, "chain", "--g", "2", "--method", "tree", "--out", str(path), "77")
    (rec,) = records(path.read_text(encoding="utf-8"))
    assert rec["d"] == 77


@pytest.mark.parametrize(
    "argv",
    [
        ["compare", "--all-rows", "--json"],
        ["stats", "ratio", "--g", "3", "--levels", "4..6", "--samples", "8", "--seed", "5", "--json"],
        ["stats", "nmc", "--g", "3", "--max", "80", "--json"],
    ],
)
def test_deterministic_output(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gchain", "stats", "bounds", "--g", "3", "9"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "2 ≤ l ≤ 3"
