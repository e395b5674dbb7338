"""Acceptance criteria, one test each.  Every test prints a PASS or FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed even
without ``-s``).  The first test fills the shared exact grid and takes the
bulk of the runtime.
"""

from __future__ import annotations

import random

import pytest

import gchain
from gchain import analysis
from gchain.analysis import constructive_upper, prescribed_k, ratio_scan, scholz_brauer_probe, table1_row
from gchain.chain import validate
from gchain.cli import main
from gchain.errors import Overflow
from gchain.factorize import is_prime
from gchain.methods import best_method, factor_method, m_ary_method, tree_method
from gchain.optimal import enumerate, l_g_exact, subadditivity_check
from gchain.powerprog import compile, evaluate_mod
from oracles import brute_lengths, power_mod


@pytest.fixture
def report(capsys):
    def emit(num: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, f"criterion {num}: {detail}"

    return emit


def ceil_log(d: int, g: int) -> int:
    r, p = 0, 1
    while p < d:
        p *= g
        r += 1
    return r


def upper(d: int, g: int) -> int:
    # floor log plus nonzero base-g digits, straight from the digit string
    digits = []
    while d:
        d, q = divmod(d, g)
        digits.append(q)
    return len(digits) - 1 + sum(1 for q in digits if q)


def test_c01_sandwich(exact_grid, report):
    bad = [
        (g, d, l)
        for g, table in exact_grid.items()
        for d, l in table.items()
        if not ceil_log(d, g) <= l <= upper(d, g)
    ]
    n = sum(len(t) for t in exact_grid.values())
    report(1, not bad, f"{n} (g, d) pairs, {len(bad)} violations {bad[:3]}")


def test_c02_powers_of_g(report):
    bad = [(g, r) for g in (2, 3, 5) for r in range(9) if l_g_exact(g**r, g).l != r]
    report(2, not bad, f"l_g(g^r) = r for g in (2, 3, 5), r <= 8; wrong: {bad}")


def test_c03_factor_square(report):
    got = {g: factor_method((g + 1) ** 2, g).length for g in (5, 11, 13, 2, 4, 6)}
    want = {5: 3, 11: 3, 13: 3, 2: 4, 4: 4, 6: 4}
    report(3, got == want, f"lengths {got}")


def test_c04_factor_vs_gary_powers(report):
    bad = []
    for g in (6, 10, 12):
        for e in (0, 1, 2):
            d = g ** (2 + e)
            f, m = factor_method(d, g).length, m_ary_method(d, g, g).length
            if f < 3 + e or m != 2 + e or not table1_row(4, g, e).verdict:
                bad.append((g, e, f, m))
    report(4, not bad, f"g in (6, 10, 12), e in (0, 1, 2); wrong: {bad}")


def test_c05_gary_lengths(report):
    bad = []
    for g in (3, 5):
        for k in range(3):
            a = m_ary_method(g**k * (g + 1) ** 2, g, g).length
            b = m_ary_method(g ** (2 + k) * (2 * g + 1), g, g).length
            if (a, b) != (k + 4, k + 5):
                bad.append((g, k, a, b))
    report(5, not bad, f"g in (3, 5), k in (0, 1, 2); wrong: {bad}")


def test_c06_tree_lengths(report):
    got = {(g, k): tree_method(g ** (2 + k) * (2 * g + 1), g).length for g in (3, 5) for k in (0, 1)}
    bad = {gk: n for gk, n in got.items() if n > 4 + gk[1]}
    report(6, not bad, f"tree lengths {got}")


def test_c07_table_all_rows(report, capsys):
    code = main(["compare", "--all-rows"])
    out = capsys.readouterr().out
    fails = [line for line in out.splitlines() if line.endswith("FAIL")]
    report(7, code == 0 and not fails, f"exit {code}, {len(out.splitlines())} lines, failing: {fails}")


def test_c08_exact_matches_enumeration(exact_grid, report):
    bad = []
    for g in (2, 3):
        table = enumerate(g, 2000).l
        bad += [(g, n) for n in range(1, 2001) if table[n] != exact_grid[g][n]]
    brute = brute_lengths(2, 100, 9)
    anchors = (brute[15], brute[7], brute[23])
    bad += [(2, n, "brute") for n in range(1, 101) if brute[n] != exact_grid[2][n]]
    report(8, not bad and anchors == (5, 4, 6), f"n <= 2000 for g in (2, 3), brute force n <= 100; anchors {anchors}; mismatches {bad[:5]}")


def test_c09_subadditivity(report):
    reps = [subadditivity_check(g, 30) for g in (2, 3)]
    report(9, all(r.ok for r in reps), "; ".join(f"g={r.g}: {r.checked} pairs, {len(r.violations)} violations" for r in reps))


def test_c10_constructive_bound(report):
    rows = [constructive_upper(2**e, 2) for e in (40, 50, 60)]
    ok = all(r.ok and r.k == (prescribed_k(r.n, 2) if not r.fallback else 1) for r in rows)
    report(10, ok, "; ".join(f"2^{r.n.bit_length() - 1}: k={r.k} length {r.achieved} <= {r.ceiling}" for r in rows))


def test_c11_ratio_trend(report):
    details, ok = [], True
    for g in (2, 3):
        try:
            scan = ratio_scan(g, 10, 40, samples_per_level=50, seed=0)
        except Overflow as exc:
            ok = False
            details.append(f"g={g}: {exc}")
            continue
        means = scan.means()
        ge1 = all(s.ratio >= 1 for s in scan.samples)
        rises = [lv for lv in means if lv + 1 in means and means[lv + 1] > means[lv]]
        ok = ok and ge1 and not rises
        details.append(f"g={g}: mean {means[10]:.4f} at 10, {means[40]:.4f} at 40, rises after levels {rises}, all >= 1: {ge1}")
    report(11, ok, "; ".join(details))


def test_c12_scholz_brauer_probe(report, capsys):
    probes = [scholz_brauer_probe(2, n) for n in range(1, 11)]
    g2 = all(p.exact and p.lhs <= p.n - 1 + l_g_exact(p.n, 2).l for p in probes)
    p3 = scholz_brauer_probe(3, 2)
    code = main(["stats", "sb", "--g", "3", "--n", "2"])
    out = capsys.readouterr().out.strip()
    finding = (p3.lhs, p3.rhs, p3.holds, code) == (3, 2, False, 0)
    report(12, g2 and finding, f"g=2 holds for n <= 10: {g2}; g=3, n=2 recorded as '{out}' with exit {code}")


def _random_prime(rng: random.Random) -> int:
    while True:
        p = rng.randrange(3, 2**31)
        if is_prime(p):
            return p


def test_c13_powerprog_round_trip(report):
    rng = random.Random(13)
    makers = [
        lambda d, g: factor_method(d, g),
        lambda d, g: m_ary_method(d, g, g ** rng.randrange(1, 4)),
        lambda d, g: best_method(d, g),
        lambda d, g: tree_method(d % 5000 + 1, g),
        lambda d, g: l_g_exact(d % 300 + 1, g).witness,
    ]
    bad = []
    for i in range(1000):
        g = rng.randrange(2, 8)
        chain = rng.choice(makers)(rng.randrange(1, 10**15), g)
        validate(chain.elements, g)
        p = _random_prime(rng)
        b = rng.randrange(p)
        if evaluate_mod(compile(chain), b, p) != power_mod(b, chain.d, p):
            bad.append((i, chain.d, g, b, p))
    report(13, not bad, f"1000 cases, {len(bad)} mismatches {bad[:3]}")


def test_c14_counting_bound_out_of_scope(report):
    # nothing to verify: the counting bound is non-constructive and no code claims it
    claims = [name for mod in (gchain, analysis) for name in dir(mod) if "counting" in name.lower()]
    report(14, not claims, "out of scope by design; no public name claims the counting bound")
