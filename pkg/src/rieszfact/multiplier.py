"""Radial profile m_k of the Fourier transform of b_k, by two routes.

Integral route::

    m_k(r) = C * int_{2 pi r}^oo t^(-d/2) J_nu(t) dt,
    nu = d/2 + k - 1,   C = 2^(d/2) Gamma((d+k)/2) / Gamma(k/2)

evaluated arch by arch between consecutive zeros of J_nu, plus a tail.  The
tail uses the exact integration-by-parts identity

    int_T^oo t^-mu J_nu = T^-mu J_{nu-1}(T) + (nu - 1 - mu) int_T^oo t^-(mu+1) J_{nu-1}

iterated; with nu - 1 - mu = k - 2 the coefficients are k-2, k-4, ..., so the
sum is finite for even k and asymptotic (used only at large T) for odd k.

Closed-form route::

    m_k(r) = 1 - G (pi r)^k 1F2(k/2; d/2 + k, k/2 + 1; -(pi r)^2),
    G = Gamma((d+k)/2) / (Gamma(d/2 + k) Gamma(k/2 + 1))

which is exact but cancels for large r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .quadrature import integrate_panels, panel_nodes
from .specfun import (
    CANCELLATION_LIMIT,
    BesselOrder,
    CancellationError,
    ConvergenceError,
    bessel_j,
    bessel_j_zeros,
    bessel_j_zeros_below,
    hankel_bessel_j,
    hyp1f2,
)

ARCH_NODES = 32
ARCH_RTOL = 1e-9
GUARD_TOL = 1e-7
GUARD_BAND = 1.15


class QuadratureError(RuntimeError):
    """Refinement check of a Gauss-Legendre panel failed."""


class RouteDisagreement(RuntimeError):
    """The two multiplier routes disagree inside the guard band."""


def bessel_order(k: int, d: int) -> float:
    return 0.5 * d + k - 1.0


def log_scale_constant(k: int, d: int) -> float:
    """log C with C = 2^(d/2) Gamma((d+k)/2) / Gamma(k/2)."""
    return 0.5 * d * math.log(2.0) + math.lgamma(0.5 * (d + k)) - math.lgamma(0.5 * k)


def crossover(k: int, d: int) -> float:
    """Default route switch r* = (d/2 + k) / (2 pi)."""
    return (0.5 * d + k) / (2.0 * math.pi)


def _integrand(k: int, d: int):
    nu = bessel_order(k, d)
    mu = 0.5 * d

    def g(t):
        t = np.asarray(t, dtype=float)
        return t ** (-mu) * bessel_j(nu, t)

    return g


def tail_start(k: int, d: int) -> float:
    nu = bessel_order(k, d)
    return max(100.0, 2.0 * nu * nu)


def bessel_tail(k: int, d: int, T) -> np.ndarray:
    """int_T^oo t^(-d/2) J_nu(t) dt by iterated integration by parts.

    Exact for even k at any T > 0; for odd k an asymptotic series requiring
    T >= tail_start(k, d).
    """
    T = np.atleast_1d(np.asarray(T, dtype=float))
    nu = bessel_order(k, d)
    mu = 0.5 * d
    total = np.zeros_like(T)
    coef = 1.0
    if k % 2 == 0:
        for j in range(k // 2):
            total += coef * T ** (-(mu + j)) * bessel_j(nu - 1.0 - j, T)
            coef *= k - 2 - 2 * j
        return total
    if np.any(T < tail_start(k, d) * (1 - 1e-12)):
        raise ValueError("odd-k asymptotic tail needs T >= tail_start")
    active = np.ones(T.shape, dtype=bool)
    prev = np.full_like(T, np.inf)
    for j in range(200):
        bound = abs(coef) * T ** (-(mu + j))
        active &= bound < prev  # optimal truncation of the asymptotic series
        term = coef * T ** (-(mu + j)) * hankel_bessel_j(nu - 1.0 - j, T)
        total = np.where(active, total + term, total)
        active &= bound > 1e-18 * np.maximum(np.abs(total), 1e-300)
        prev = bound
        if not active.any():
            break
        coef *= k - 2 - 2 * j
    return total


def _checked(g, edges, rtol=ARCH_RTOL):
    """Panel integrals with the 32 vs 64 node refinement check; panels that
    fail are split (up to 16 pieces) before giving up."""
    edges = np.asarray(edges, dtype=float)
    out = np.empty(len(edges) - 1)
    coarse = integrate_panels(g, edges, ARCH_NODES)
    fine = integrate_panels(g, edges, 2 * ARCH_NODES)
    scale = np.maximum(np.abs(fine), 1e-300)
    bad = np.abs(fine - coarse) > 1e-13 * scale
    out[~bad] = fine[~bad]
    for i in np.nonzero(bad)[0]:
        a, b = edges[i], edges[i + 1]
        for pieces in (2, 4, 8, 16):
            sub = np.linspace(a, b, pieces + 1)
            c = integrate_panels(g, sub, ARCH_NODES).sum()
            f = integrate_panels(g, sub, 2 * ARCH_NODES).sum()
            if abs(f - c) <= 1e-13 * max(abs(f), 1e-300):
                break
        if abs(f - c) > rtol * max(abs(f), 1e-300):
            raise QuadratureError(f"panel [{a}, {b}] disagrees by {abs(f - c):.3e}")
        out[i] = f
    return out


@dataclass(frozen=True)
class _ArchTable:
    zeros: np.ndarray  # 0, j_1, ..., j_N with j_N >= tail_start
    suffix: np.ndarray  # suffix[n] = int_{zeros[n]}^oo, n = 0..N
    log_c: float


@lru_cache(maxsize=256)
def _arch_table(k: int, d: int) -> _ArchTable:
    nu = bessel_order(k, d)
    zs = bessel_j_zeros_below(nu, tail_start(k, d) + 2 * math.pi)
    zs = zs[: int(np.searchsorted(zs, tail_start(k, d))) + 1]
    zeros = np.concatenate([[0.0], zs])
    arches = _checked(_integrand(k, d), zeros)
    tail = float(bessel_tail(k, d, zeros[-1])[0])
    suffix = np.empty(len(zeros))
    suffix[-1] = tail
    for n in range(len(arches) - 1, -1, -1):
        suffix[n] = math.fsum([arches[n], suffix[n + 1]])
    zeros.setflags(write=False)
    suffix.setflags(write=False)
    return _ArchTable(zeros, suffix, log_scale_constant(k, d))


def _validate(k: int, d: int) -> None:
    if int(k) != k or k < 1 or int(d) != d or d < 1:
        raise ValueError("k and d must be positive integers")
    BesselOrder(bessel_order(k, d))


def m_integral(k: int, d: int, r):
    """m_k(r) via the oscillatory Bessel integral (vectorised over r)."""
    _validate(k, d)
    scalar = np.ndim(r) == 0
    ra = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(ra < 0):
        raise ValueError("r must be >= 0")
    tab = _arch_table(k, d)
    T = 2.0 * math.pi * ra
    out = np.empty_like(T)
    far = T >= tab.zeros[-1]
    if far.any():
        out[far] = bessel_tail(k, d, T[far])
    near = ~far
    if near.any():
        Tn = T[near]
        idx = np.searchsorted(tab.zeros, Tn, side="right")  # first zero > T
        upper = tab.zeros[idx]
        g = _integrand(k, d)
        partial = np.zeros_like(Tn)
        live = upper > Tn
        if live.any():
            lo, hi = Tn[live], upper[live]
            res = []
            for nn in (ARCH_NODES, 2 * ARCH_NODES):
                nodes, w = panel_nodes(np.array([0.0, 1.0]), nn)
                tt = lo[:, None] + (hi - lo)[:, None] * nodes
                vals = g(tt.ravel()).reshape(tt.shape)
                res.append(np.sum(vals * w, axis=1) * (hi - lo))
            gap = np.abs(res[1] - res[0])
            if np.any(gap > ARCH_RTOL * np.maximum(np.abs(res[1]), 1e-12)):
                raise QuadratureError("partial-arch refinement check failed")
            partial[live] = res[1]
        out[near] = partial + tab.suffix[idx]
    out *= math.exp(tab.log_c)
    return float(out[0]) if scalar else out


def m_hyp(k: int, d: int, r, check: bool = True):
    """m_k(r) via the 1F2 closed form (vectorised over r).

    Raises CancellationError when the alternating series loses more than
    twelve digits (``check=False`` returns the value regardless).
    """
    _validate(k, d)
    scalar = np.ndim(r) == 0
    ra = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(ra < 0):
        raise ValueError("r must be >= 0")
    z = math.pi * ra
    val, ratio = hyp1f2(0.5 * k, 0.5 * d + k, 0.5 * k + 1.0, -(z * z))
    if check and np.any(ratio[ra > 0] > CANCELLATION_LIMIT):
        raise CancellationError("1F2 series cancels; use m_integral")
    log_g = math.lgamma(0.5 * (d + k)) - math.lgamma(0.5 * d + k) - math.lgamma(0.5 * k + 1.0)
    with np.errstate(divide="ignore"):
        out = 1.0 - np.exp(log_g + k * np.log(z)) * val
    out = np.where(ra == 0, 1.0, out)
    return float(out[0]) if scalar else out


def m_eval(k: int, d: int, r, r_star: float | None = None, with_route: bool = False):
    """Route-selecting evaluation of m_k(r).

    m_hyp below the crossover r*, m_integral above it; inside the guard band
    [r*/1.15, 1.15 r*] both are evaluated and must agree to 1e-7.
    """
    _validate(k, d)
    scalar = np.ndim(r) == 0
    ra = np.atleast_1d(np.asarray(r, dtype=float))
    rs = crossover(k, d) if r_star is None else float(r_star)
    low = ra <= rs
    out = np.empty_like(ra)
    if low.any():
        out[low] = m_hyp(k, d, ra[low])
    if (~low).any():
        out[~low] = m_integral(k, d, ra[~low])
    band = (ra >= rs / GUARD_BAND) & (ra <= rs * GUARD_BAND)
    if band.any():
        other = np.where(low[band], m_integral(k, d, ra[band]), m_hyp(k, d, ra[band], check=False))
        gap = np.abs(other - out[band])
        if np.any(gap > GUARD_TOL):
            raise RouteDisagreement(f"routes disagree by {gap.max():.3e} near r* = {rs:.4f}")
    routes = np.where(low, "hyp", "integral")
    if scalar:
        return (float(out[0]), str(routes[0])) if with_route else float(out[0])
    return (out, routes) if with_route else out


def m_tilde(k: int, d: int, s):
    """m_k(s / (2 pi)), the multiplier in the Bessel variable."""
    return m_eval(k, d, np.asarray(s, dtype=float) / (2.0 * math.pi))


def bessel_integral_total(k: int, d: int) -> float:
    """Closed form of int_0^oo t^(-d/2) J_nu(t) dt = Gamma(k/2) / (2^(d/2) Gamma((d+k)/2))."""
    return math.exp(-log_scale_constant(k, d))


@dataclass(frozen=True)
class ArchDecomposition:
    nu: float
    alpha: float
    zeros: tuple[float, ...]  # j_{nu,0} = 0, j_{nu,1}, ...
    arch_integrals: tuple[float, ...]  # a_n = (-1)^n int_{j_n}^{j_{n+1}}

    def differences(self, order: int) -> np.ndarray:
        """(-1)^order (Delta^order a)_n."""
        a = np.asarray(self.arch_integrals)
        return (-1) ** order * np.diff(a, n=order) if order else a

    def total_integral(self) -> float:
        """int_0^oo t^(1/2 - alpha) J_nu(t) dt as the alternating arch sum plus tail."""
        k = int(round(self.nu - self.alpha + 1.5))
        d = int(round(2 * self.alpha - 1))
        return float(_arch_table(k, d).suffix[0])


def arch_decomposition(k: int, d: int, n_max: int) -> ArchDecomposition:
    """Zeros j_{nu,0..n_max+1} and arch integrals a_0..a_{n_max}."""
    _validate(k, d)
    if n_max > 64 or n_max < 0:
        raise ValueError("n_max must lie in [0, 64]")
    nu = bessel_order(k, d)
    zs = np.concatenate([[0.0], bessel_j_zeros(nu, n_max + 1)])
    arches = _checked(_integrand(k, d), zs)
    signed = arches * (-1.0) ** np.arange(len(arches))
    return ArchDecomposition(nu, 0.5 * (d + 1), tuple(zs.tolist()), tuple(signed.tolist()))


def values_at_zeros(k: int, d: int, count: int) -> np.ndarray:
    """m~ at j_{nu,0}, ..., j_{nu,count}."""
    nu = bessel_order(k, d)
    zs = np.concatenate([[0.0], bessel_j_zeros(nu, count)])
    return m_tilde(k, d, zs)


def arch_order_holds(vals: np.ndarray, slack: float = 1e-12) -> bool:
    """Check 1 = m~(j_0) >= m~(j_2) >= ... >= 0 >= ... >= m~(j_3) >= m~(j_1) >= -1."""
    even = vals[0::2]
    odd = vals[1::2]
    ok = abs(even[0] - 1.0) <= 1e-8
    ok &= bool(np.all(np.diff(even) <= slack)) and bool(np.all(even >= -slack))
    ok &= bool(np.all(np.diff(odd) >= -slack)) and bool(np.all(odd <= slack))
    ok &= bool(odd[0] >= -1.0 - slack) if len(odd) else True
    return bool(ok)


__all__ = [
    "ArchDecomposition",
    "ConvergenceError",
    "QuadratureError",
    "RouteDisagreement",
    "arch_decomposition",
    "arch_order_holds",
    "bessel_integral_total",
    "bessel_tail",
    "crossover",
    "m_eval",
    "m_hyp",
    "m_integral",
    "m_tilde",
    "values_at_zeros",
]
