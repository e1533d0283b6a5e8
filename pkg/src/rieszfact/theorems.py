"""Machine-checkable verdicts for the kernel, multiplier and operator claims."""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import lab
from .kernel import HarmonicSpec, radial_profile
from .multiplier import (
    arch_decomposition,
    arch_order_holds,
    bessel_integral_total,
    bessel_order,
    m_eval,
    m_tilde,
    values_at_zeros,
)
from .norms import l1_norm, profile_roots
from .specfun import bessel_j_zeros, hyp2f1

log = logging.getLogger(__name__)

THREADS_ENV = "RIESZFACT_THREADS"


class ClaimId(str, Enum):
    SIGN_CHANGE = "SIGN_CHANGE"
    ZERO_COUNT = "ZERO_COUNT"
    L1_GROWTH = "L1_GROWTH"
    MULTIPLIER_BOUND = "MULTIPLIER_BOUND"
    ARCH_ORDER = "ARCH_ORDER"
    FACTORIZATION = "FACTORIZATION"
    L2_CONTRACTION = "L2_CONTRACTION"
    RADIAL_OMEGA = "RADIAL_OMEGA"


DEFAULT_TOLERANCE = {
    ClaimId.SIGN_CHANGE: 1e-12,
    ClaimId.ZERO_COUNT: 0.0,
    ClaimId.L1_GROWTH: 1e-6,
    ClaimId.MULTIPLIER_BOUND: 1e-9,
    ClaimId.ARCH_ORDER: 1e-10,
    ClaimId.FACTORIZATION: 1e-2,
    ClaimId.L2_CONTRACTION: 1e-9,
    ClaimId.RADIAL_OMEGA: 1e-9,
}


@dataclass(frozen=True)
class Measurement:
    """A named number and, unless it is a diagnostic, the inequality it must meet.

    ``relation`` is one of "<=", ">=", "<", ">", "==" or None.  The slack is
    the report tolerance times ``slack`` (0 keeps the comparison exact).
    """

    name: str
    value: float
    relation: str | None = None
    bound: float | None = None
    slack: float = 1.0

    def holds(self, tol: float) -> bool:
        if self.relation is None:
            return True
        v, b, s = self.value, self.bound, tol * self.slack
        if not math.isfinite(v):
            return False
        return {
            "<=": v <= b + s,
            ">=": v >= b - s,
            "<": v < b + s,
            ">": v > b - s,
            "==": abs(v - b) <= s,
        }[self.relation]

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "relation": self.relation, "bound": self.bound}


@dataclass(frozen=True)
class VerificationReport:
    claim_id: ClaimId
    params: dict
    measured: tuple[Measurement, ...]
    tolerance: float
    passed: bool = field(init=False)
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "passed", all(m.holds(self.tolerance) for m in self.measured))

    def value(self, name: str) -> float:
        for m in self.measured:
            if m.name == name:
                return m.value
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id.value,
            "params": dict(self.params),
            "measured": [m.to_dict() for m in self.measured],
            "passed": self.passed,
            "tolerance": self.tolerance,
            "note": self.note,
        }


def _tol(claim: ClaimId, tolerance: float | None) -> float:
    return DEFAULT_TOLERANCE[claim] if tolerance is None else float(tolerance)


def _need_k3(k: int) -> None:
    if k < 3:
        raise ValueError("the claim concerns k >= 3 (b_1 and b_2 are non-negative)")


def _hyp_factor(k: int, d: int):
    # 2F1(l, m; n; x) with l = (d+k)/2, m = 1 - k/2, n = d/2 + 1; B_k(r) is a positive multiple at x = r^2
    return lambda x: hyp2f1(0.5 * (d + k), 1.0 - 0.5 * k, 0.5 * d + 1.0, np.asarray(x, dtype=float))


def expected_zero_count(k: int) -> int:
    """E(k/2): the largest integer strictly smaller than k/2."""
    return math.ceil(k / 2) - 1


# ---------------------------------------------------------------------------
# kernel claims


def check_sign_change(k: int, d: int, tolerance: float | None = None) -> VerificationReport:
    """Bracket a root of the inner hypergeometric factor in (0, 1) and check
    that it is a strict sign change."""
    _need_k3(k)
    tol = _tol(ClaimId.SIGN_CHANGE, tolerance)
    f = _hyp_factor(k, d)
    roots = profile_roots(f, 0.0, 1.0, points=SCAN_POINTS, near_b=k % 2 == 1)
    measured = [Measurement("roots_found", float(len(roots)), ">=", 1.0, 0.0)]
    if roots:
        x0 = roots[0]
        delta = max(1e-9, 1e-7 * x0)
        left, right = float(f([x0 - delta])[0]), float(f([x0 + delta])[0])
        measured += [
            Measurement("x0", x0),
            Measurement("sign_product", math.copysign(1.0, left) * math.copysign(1.0, right), "<", 0.0, 0.0),
            Measurement("left_value", left),
            Measurement("right_value", right),
        ]
    return VerificationReport(ClaimId.SIGN_CHANGE, {"k": k, "d": d}, tuple(measured), tol)


def check_nonnegative(k: int, d: int, points: int = 10_000, tolerance: float | None = None) -> VerificationReport:
    """For k in {1, 2}: min of B_k over a grid of (0, 1) and (1, 4) is >= -tol."""
    if k > 2:
        raise ValueError("non-negativity is claimed only for k in {1, 2}")
    tol = _tol(ClaimId.SIGN_CHANGE, tolerance)
    r = np.linspace(0.0, 4.0, points + 1)
    r = r[r != 1.0]
    vals = radial_profile(k, d, r)
    measured = (Measurement("min_profile", float(np.min(vals)), ">=", 0.0),)
    return VerificationReport(ClaimId.SIGN_CHANGE, {"k": k, "d": d, "expect": "nonnegative"}, measured, tol)


SCAN_POINTS = 10_000


def count_zeros(k: int, d: int) -> VerificationReport:
    """Zeros of the inner hypergeometric factor in (0, 1) against E(k/2)."""
    _need_k3(k)
    roots = profile_roots(_hyp_factor(k, d), 0.0, 1.0, points=SCAN_POINTS, near_b=k % 2 == 1)
    measured = (
        Measurement("zero_count", float(len(roots)), "==", float(expected_zero_count(k)), 0.0),
        *(Measurement(f"root_{i}", x) for i, x in enumerate(roots)),
    )
    return VerificationReport(ClaimId.ZERO_COUNT, {"k": k, "d": d}, measured, 0.0)


def check_l1_growth(k: int, d: int, tolerance: float | None = None) -> VerificationReport:
    """l1 = 1 for k <= 2; l1 >= 1 and l1(k, 2d) > l1(k, d) for k >= 3."""
    tol = _tol(ClaimId.L1_GROWTH, tolerance)
    here = l1_norm(k, d)
    if k <= 2:
        measured = (Measurement("l1_norm", here, "==", 1.0),)
    else:
        there = l1_norm(k, 2 * d)
        measured = (
            Measurement("l1_norm", here, ">=", 1.0),
            Measurement("l1_norm_2d", there),
            Measurement("increment", there - here, ">", 0.0, 0.0),
        )
    return VerificationReport(ClaimId.L1_GROWTH, {"k": k, "d": d}, measured, tol)


# ---------------------------------------------------------------------------
# multiplier claims


def log_grid(r_min: float = 1e-3, r_max: float = 1e3, points: int = 300) -> np.ndarray:
    return np.geomspace(r_min, r_max, points)


ORDER_ZEROS = 8
ARCH_SAMPLES = 20


def arch_monotonicity_defect(k: int, d: int, arches: int = ORDER_ZEROS) -> float:
    """Largest violation of monotonicity of m~ on each of the first arches."""
    zs = np.concatenate([[0.0], bessel_j_zeros(bessel_order(k, d), arches)])
    worst = 0.0
    for a, b in zip(zs[:-1], zs[1:]):
        v = m_tilde(k, d, np.linspace(a, b, ARCH_SAMPLES))
        step = np.diff(v)
        direction = np.sign(v[-1] - v[0])
        worst = max(worst, float(np.max(-direction * step, initial=0.0)))
    return worst


def check_multiplier_bound(k: int, d: int, r_grid=None, tolerance: float | None = None) -> VerificationReport:
    """sup |m_k| <= 1 on the grid; for k >= 3 also the ordering of m~ at Bessel zeros."""
    tol = _tol(ClaimId.MULTIPLIER_BOUND, tolerance)
    r = log_grid() if r_grid is None else np.asarray(r_grid, dtype=float)
    vals = np.abs(m_eval(k, d, r))
    i = int(np.argmax(vals))
    measured = [
        Measurement("sup_abs_m", float(vals[i]), "<=", 1.0),
        Measurement("sup_location", float(r[i])),
        Measurement("m_at_zero", m_eval(k, d, 0.0), "==", 1.0),
    ]
    if k >= 3:
        zvals = values_at_zeros(k, d, ORDER_ZEROS)
        measured += [
            Measurement("arch_order", float(arch_order_holds(zvals, slack=tol)), "==", 1.0, 0.0),
            Measurement("arch_monotonicity_defect", arch_monotonicity_defect(k, d), "<=", 0.0, 0.1),
        ]
    params = {"k": k, "d": d, "grid_points": int(r.size), "r_min": float(r.min()), "r_max": float(r.max())}
    return VerificationReport(ClaimId.MULTIPLIER_BOUND, params, tuple(measured), tol)


def check_arch_order(k: int, d: int, n_max: int = 10, tolerance: float | None = None) -> VerificationReport:
    """Positivity and complete monotonicity of the arch integrals, and
    a_0/2 < int_0^oo t^(1/2 - alpha) J_nu < a_0."""
    _need_k3(k)
    tol = _tol(ClaimId.ARCH_ORDER, tolerance)
    dec = arch_decomposition(k, d, n_max + 3)
    a = np.asarray(dec.arch_integrals)
    total = bessel_integral_total(k, d)
    measured = [
        Measurement("min_arch", float(a[: n_max + 1].min()), ">", 0.0, 0.0),
        Measurement("integral", total),
        Measurement("integral_by_arches", dec.total_integral(), "==", total, 10.0),
        Measurement("lower_gap", total - a[0] / 2, ">", 0.0, 0.0),
        Measurement("upper_gap", a[0] - total, ">", 0.0, 0.0),
    ]
    for order in (1, 2, 3):
        diffs = dec.differences(order)[: n_max + 1]
        measured.append(Measurement(f"min_signed_diff_{order}", float(diffs.min()), ">=", 0.0))
    params = {"k": k, "d": d, "n_max": n_max}
    return VerificationReport(ClaimId.ARCH_ORDER, params, tuple(measured), tol)


# ---------------------------------------------------------------------------
# operator-lab claims


def factorization_gaps(k: int, t: float, n: int = 128, L: float = 8.0, d: int = 2, refine: bool = True):
    """Relative L2 gaps between the direct and multiplier routes at n (and 2n)."""
    spec = HarmonicSpec(k, d)
    gaps = []
    for size in (n, 2 * n) if refine else (n,):
        f = lab.modulated_gaussian(d, size, L)
        via_multiplier = lab.truncated_riesz_apply_multiplier(f, spec, t)
        direct = lab.truncated_riesz_apply_direct(f, spec, t)
        gaps.append(lab.relative_gap(direct.field, via_multiplier))
    return gaps


REFINE_FACTOR = 1.5


def check_factorization(k: int, t: float, n: int = 128, L: float = 8.0, refine: bool = True,
                        tolerance: float | None = None) -> VerificationReport:
    tol = _tol(ClaimId.FACTORIZATION, tolerance)
    gaps = factorization_gaps(k, t, n, L, refine=refine)
    measured = [Measurement("gap", gaps[0], "<=", 0.0)]
    if refine:
        measured += [
            Measurement("gap_refined", gaps[1]),
            Measurement("shrink_factor", gaps[0] / gaps[1], ">=", REFINE_FACTOR, 0.0),
        ]
    params = {"k": k, "d": 2, "t": t, "n": n, "L": L, "field": "modulated_gaussian"}
    return VerificationReport(ClaimId.FACTORIZATION, params, tuple(measured), tol)


def contraction_fields(d: int, n: int, L: float, seed: int = 7):
    """Named test fields: Gaussian, modulated Gaussian and a seeded random field."""
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((n,) * d) + 1j * rng.standard_normal((n,) * d)
    return {
        "gaussian": lab.gaussian(d, n, L),
        "modulated_gaussian": lab.modulated_gaussian(d, n, L),
        "random": lab.GridField(d, n, L, noise),
    }


def check_contraction(k: int, d: int, t: float, n: int = 64, L: float = 8.0,
                      tolerance: float | None = None) -> VerificationReport:
    """||R^t f|| <= ||R f|| on the grid, for several test fields."""
    tol = _tol(ClaimId.L2_CONTRACTION, tolerance)
    spec = HarmonicSpec(k, d)
    measured = []
    for name, f in contraction_fields(d, n, L).items():
        full = lab.riesz_apply(f, spec).l2_norm()
        trunc = lab.truncated_riesz_apply_multiplier(f, spec, t).l2_norm()
        measured.append(Measurement(f"ratio_{name}", trunc / full, "<=", 1.0))
    params = {"k": k, "d": d, "t": t, "n": n, "L": L}
    return VerificationReport(ClaimId.L2_CONTRACTION, params, tuple(measured), tol)


def check_radial_omega(t: float, n: int = 128, L: float = 8.0, omega: lab.OmegaSpec | None = None,
                       tolerance: float | None = None) -> VerificationReport:
    """||T_Omega^t f|| <= ||T_Omega f|| for radial f; a non-radial field is a diagnostic."""
    tol = _tol(ClaimId.RADIAL_OMEGA, tolerance)
    omega = lab.default_omega() if omega is None else omega
    radial = lab.gaussian(omega.d, n, L)
    ratio = lab.omega_apply(radial, omega, t).l2_norm() / lab.omega_apply(radial, omega).l2_norm()
    skew = lab.gaussian(omega.d, n, L, shift=[1.0] + [0.0] * (omega.d - 1), freq=[0.3] + [0.2] * (omega.d - 1))
    diag = lab.omega_apply(skew, omega, t).l2_norm() / lab.omega_apply(skew, omega).l2_norm()
    measured = (
        Measurement("ratio_radial", ratio, "<=", 1.0),
        Measurement("ratio_nonradial", diag),
    )
    params = {"d": omega.d, "t": t, "n": n, "L": L, "orders": [k for k, _, _ in omega.terms]}
    return VerificationReport(ClaimId.RADIAL_OMEGA, params, measured, tol)


# ---------------------------------------------------------------------------
# suite


@dataclass(frozen=True)
class LabConfig:
    k: tuple[int, ...] = (1, 2, 3, 4)
    t: tuple[float, ...] = (0.25, 0.5, 1.0)
    n: int = 128
    L: float = 8.0
    refine: bool = True


@dataclass(frozen=True)
class SuiteConfig:
    pairs: tuple[tuple[int, int], ...] = ()
    r_grid: tuple[float, float, int] = (1e-3, 1e3, 300)
    tolerance: float | None = None
    lab: LabConfig | None = None

    @classmethod
    def default(cls) -> "SuiteConfig":
        pairs = tuple((k, d) for k in range(1, 7) for d in (2, 3, 5, 10, 20))
        return cls(pairs=pairs, lab=LabConfig())

    @classmethod
    def from_dict(cls, raw: dict) -> "SuiteConfig":
        """Build from the JSON config format (see README)."""
        if not isinstance(raw, dict):
            raise ValueError("config must be a JSON object")
        known = {"schema_version", "pairs", "k", "d", "r_grid", "tolerance", "lab"}
        extra = set(raw) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        pairs = [tuple(p) for p in raw.get("pairs", [])]
        if "k" in raw or "d" in raw:
            pairs += [(k, d) for k in raw.get("k", []) for d in raw.get("d", [])]
        for p in pairs:
            if len(p) != 2 or not all(isinstance(v, int) and v >= 1 for v in p):
                raise ValueError(f"bad (k, d) pair: {p!r}")
        grid = raw.get("r_grid", {})
        r_grid = (float(grid.get("min", 1e-3)), float(grid.get("max", 1e3)), int(grid.get("points", 300)))
        if not 0 < r_grid[0] < r_grid[1] or r_grid[2] < 1:
            raise ValueError("bad r_grid")
        tol = raw.get("tolerance")
        if tol is not None and (not isinstance(tol, (int, float)) or tol < 0):
            raise ValueError("tolerance must be a non-negative number")
        lab_cfg = None
        if raw.get("lab") is not None:
            lb = raw["lab"]
            base = LabConfig()
            lab_cfg = LabConfig(
                k=tuple(int(v) for v in lb.get("k", base.k)),
                t=tuple(float(v) for v in lb.get("t", base.t)),
                n=int(lb.get("n", base.n)),
                L=float(lb.get("L", base.L)),
                refine=bool(lb.get("refine", base.refine)),
            )
        return cls(tuple(pairs), r_grid, tol, lab_cfg)


def _dedupe(pairs):
    seen, out = set(), []
    for p in pairs:
        if p in seen:
            log.warning("duplicate (k, d) = %s ignored", p)
            continue
        seen.add(p)
        out.append(p)
    return out


def _tasks(config: SuiteConfig):
    """(claim, params, thunk) triples in report order."""
    tol = config.tolerance
    grid = log_grid(*config.r_grid)
    C = ClaimId
    tasks = []
    for k, d in _dedupe(config.pairs):
        kd = {"k": k, "d": d}
        if k >= 3:
            tasks.append((C.SIGN_CHANGE, kd, lambda k=k, d=d: check_sign_change(k, d, tol)))
            tasks.append((C.ZERO_COUNT, kd, lambda k=k, d=d: count_zeros(k, d)))
        else:
            tasks.append((C.SIGN_CHANGE, kd, lambda k=k, d=d: check_nonnegative(k, d, tolerance=tol)))
        tasks.append((C.L1_GROWTH, kd, lambda k=k, d=d: check_l1_growth(k, d, tol)))
        tasks.append((C.MULTIPLIER_BOUND, kd, lambda k=k, d=d: check_multiplier_bound(k, d, grid, tol)))
        if k >= 3:
            tasks.append((C.ARCH_ORDER, kd, lambda k=k, d=d: check_arch_order(k, d, tolerance=tol)))
    if config.lab is not None:
        lc = config.lab
        for k in lc.k:
            for t in lc.t:
                p = {"k": k, "d": 2, "t": t}
                tasks.append((C.FACTORIZATION, p, lambda k=k, t=t: check_factorization(k, t, lc.n, lc.L, lc.refine, tol)))
        for d, n in ((1, 256), (2, 64), (3, 32)):
            for k in lc.k:
                if d == 1 and k > 1:
                    continue
                for t in lc.t:
                    p = {"k": k, "d": d, "t": t}
                    tasks.append((C.L2_CONTRACTION, p,
                                  lambda k=k, d=d, n=n, t=t: check_contraction(k, d, t, n, lc.L, tol)))
        for t in lc.t:
            tasks.append((C.RADIAL_OMEGA, {"d": 2, "t": t}, lambda t=t: check_radial_omega(t, lc.n, lc.L, tolerance=tol)))
    return tasks


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        log.warning("ignoring non-integer %s=%r", THREADS_ENV, raw)
        return 1


def run_suite(config: SuiteConfig | None = None, threads: int | None = None) -> list[VerificationReport]:
    """Run every check implied by ``config``; order follows the config.

    Failing claims come back as failed reports.  Checks that raise are turned
    into failed reports carrying the error message.
    """
    config = SuiteConfig.default() if config is None else config
    tasks = _tasks(config)
    threads = thread_count() if threads is None else threads

    def run(task):
        claim, params, thunk = task
        try:
            return thunk()
        except Exception as exc:  # noqa: BLE001 - a failure is data, not an abort
            log.error("%s %s raised %s", claim.value, params, exc)
            return VerificationReport(claim, dict(params), (Measurement("raised", 1.0, "==", 0.0, 0.0),), 0.0,
                                      note=f"{type(exc).__name__}: {exc}")

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(run, tasks))
    return [run(t) for t in tasks]


__all__ = [
    "ClaimId",
    "LabConfig",
    "Measurement",
    "SuiteConfig",
    "VerificationReport",
    "check_arch_order",
    "check_contraction",
    "check_factorization",
    "check_l1_growth",
    "check_multiplier_bound",
    "check_nonnegative",
    "check_radial_omega",
    "check_sign_change",
    "count_zeros",
    "expected_zero_count",
    "run_suite",
]
