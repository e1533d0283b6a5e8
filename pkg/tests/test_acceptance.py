"""The nine acceptance criteria at their stated tolerances.

Each test prints one ``ACCEPTANCE <n> PASS|FAIL <summary>`` line; the lines
are repeated in an "acceptance criteria" section at the end of the run.
"""

import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

from rieszfact.cli import main
from rieszfact.kernel import radial_profile
from rieszfact.multiplier import GUARD_BAND, arch_decomposition, crossover, m_eval, m_hyp, m_integral
from rieszfact.norms import growth_ratio, l1_norm, laguerre_constant
from rieszfact.theorems import (
    check_arch_order,
    check_contraction,
    check_factorization,
    check_multiplier_bound,
    check_radial_omega,
    count_zeros,
    log_grid,
)

KS = range(1, 7)
DS = (2, 3, 5, 10, 20)


def test_criterion_1_normalisation(acceptance):
    worst = max(abs(m_eval(k, d, 0.0) - 1.0) for k in KS for d in DS)
    acceptance(1, worst <= 1e-8, f"max |m(0) - 1| = {worst:.3e}")


def test_criterion_2_multiplier_bound_and_arch_order(acceptance):
    grid = log_grid(1e-3, 1e3, 300)
    sup = max(float(np.max(np.abs(m_eval(k, d, grid)))) for k in KS for d in DS)
    order_ok = all(check_multiplier_bound(k, d, grid).passed for k in KS for d in DS if k >= 3)
    acceptance(2, sup <= 1 + 1e-9 and order_ok, f"sup |m| = {sup:.15f}, arch ordering over 8 zeros: {order_ok}")


def test_criterion_3_route_agreement(acceptance):
    worst = 0.0
    for k, d in ((1, 2), (3, 3), (4, 6), (5, 8)):
        rs = crossover(k, d)
        r = np.linspace(rs / GUARD_BAND, rs * GUARD_BAND, 41)
        worst = max(worst, float(np.max(np.abs(m_integral(k, d, r) - m_hyp(k, d, r)))))
    acceptance(3, worst <= 1e-8, f"max route gap on guard band = {worst:.3e}")


def test_criterion_4_sign_structure(acceptance):
    r = np.linspace(0.0, 1.0, 10_001)[:-1]
    low = min(float(np.min(radial_profile(k, d, r))) for k in (1, 2) for d in range(2, 21))
    expected = {3: 1, 4: 1, 5: 2, 6: 2, 7: 3, 8: 3}
    counts_ok = True
    for k, want in expected.items():
        for d in DS:
            rep = count_zeros(k, d)
            counts_ok &= rep.passed and rep.value("zero_count") == want
    acceptance(4, low >= -1e-12 and counts_ok, f"min B_1, B_2 = {low:.3e}; zero counts 1,1,2,2,3,3: {counts_ok}")


def test_criterion_5_l1_norms(acceptance):
    unit1 = max(abs(l1_norm(1, d) - 1) for d in (2, 3, 5))
    unit2 = max(abs(l1_norm(2, d) - 1) for d in (2, 3, 5))
    increasing = True
    for k in (3, 4):
        vals = [l1_norm(k, d) for d in (4, 8, 16, 32)]
        increasing &= all(b > a for a, b in zip(vals, vals[1:]))
    lag = laguerre_constant(4)
    ratio = growth_ratio(4, 64)
    ok = unit1 <= 1e-6 and unit2 <= 1e-8 and increasing and ratio >= 0.9 * lag and abs(lag - 2 / math.e) < 1e-12
    acceptance(5, ok, f"|l1-1| k=1 {unit1:.2e}, k=2 {unit2:.2e}; increasing {increasing}; "
                      f"growth_ratio(4,64) = {ratio:.6f} vs 0.9*2/e = {0.9 * lag:.6f}")


def test_criterion_6_arch_monotonicity(acceptance):
    ok = True
    worst = math.inf
    for k, d in ((3, 3), (5, 4), (4, 6)):
        rep = check_arch_order(k, d, n_max=10)
        dec = arch_decomposition(k, d, 13)
        a = np.asarray(dec.arch_integrals)
        ok &= rep.passed and bool(np.all(a[:11] > 0))
        for order in (1, 2, 3):
            worst = min(worst, float(dec.differences(order)[:11].min()))
    ok &= worst >= -1e-10
    acceptance(6, ok, f"min signed difference (orders 1..3) = {worst:.3e}; area bracket holds: {ok}")


def test_criterion_7_factorization(acceptance):
    worst_gap, worst_shrink = 0.0, math.inf
    ok = True
    for k in (1, 2, 3, 4):
        for t in (0.25, 0.5, 1.0):
            rep = check_factorization(k, t, n=128, L=8.0, refine=True)
            ok &= rep.passed
            worst_gap = max(worst_gap, rep.value("gap"))
            worst_shrink = min(worst_shrink, rep.value("shrink_factor"))
    ok &= worst_gap <= 1e-2 and worst_shrink >= 1.5
    acceptance(7, ok, f"max gap at n=128 = {worst_gap:.3e}; min shrink at n=256 = {worst_shrink:.2f}")


def test_criterion_8_contraction(acceptance):
    worst = 0.0
    ok = True
    for d, n in ((1, 256), (2, 64), (3, 32)):
        for k in ((1,) if d == 1 else (1, 2, 3, 4)):
            for t in (0.25, 0.5, 1.0):
                rep = check_contraction(k, d, t, n)
                ok &= rep.passed
                worst = max(worst, max(m.value for m in rep.measured))
    for t in (0.25, 0.5, 1.0):
        rep = check_radial_omega(t, n=128)
        ok &= rep.passed
        worst = max(worst, rep.value("ratio_radial"))
    ok &= worst <= 1 + 1e-9
    acceptance(8, ok, f"max truncated/untruncated norm ratio = {worst:.12f}")


@pytest.mark.slow
def test_criterion_9_determinism(acceptance, tmp_path):
    docs = []
    for name in ("first.json", "second.json"):
        res = CliRunner().invoke(main, ["verify", "--out", str(tmp_path / name), "--no-table"])
        docs.append((tmp_path / name).read_bytes())
    passed = json.loads(docs[0])["passed"]
    same = docs[0] == docs[1]
    acceptance(9, same and res.exit_code == 0 and passed,
               f"default verify twice: byte-identical {same}, all claims passed {passed}")
