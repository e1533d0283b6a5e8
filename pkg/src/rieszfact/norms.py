"""L1 norms of b_k and the asymptotic quantities behind their growth in d."""

from __future__ import annotations

import math

import numpy as np

from .kernel import _check_order, even_poly_coeffs, inner_profile, outer_profile
from .quadrature import graded_edges, integrate_panels
from .specfun import laguerre, laguerre_coeffs, sphere_area_log

SCAN_POINTS = 2000
GRADE_LEVELS = 40
PANEL_NODES = 24


class RootIsolationError(RuntimeError):
    """Sign changes of the radial profile could not be separated."""


def _bisect(f, a: float, b: float, fa: float, iters: int = 80) -> float:
    for _ in range(iters):
        m = 0.5 * (a + b)
        if m in (a, b):
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _sign_changes(f, grid: np.ndarray) -> list[tuple[float, float, float]]:
    vals = f(grid)
    s = np.sign(vals)
    out = [(grid[i], grid[i + 1], vals[i]) for i in np.nonzero(s[:-1] * s[1:] < 0)[0]]
    # a root landing exactly on a grid point is a sign change across its neighbours
    hits = np.nonzero((s[1:-1] == 0) & (s[:-2] * s[2:] < 0))[0] + 1
    out += [(grid[i], grid[i], 0.0) for i in hits]
    return sorted(out)


def profile_roots(f, a: float = 0.0, b: float = 1.0, points: int = SCAN_POINTS, near_b: bool = True) -> list[float]:
    """Roots of ``f`` in (a, b): sign scan then bisection.

    The scan is repeated on grids refined twice; if the count keeps changing
    the roots are considered unresolved.  With ``near_b`` geometric points
    accumulating at ``b`` are added (the profile may be singular there).
    """
    counts = []
    brackets = []
    for level in range(3):
        grid = np.linspace(a, b, points * 2**level + 1)[:-1]
        if near_b:
            grid = np.union1d(grid, graded_edges(a, b, GRADE_LEVELS, "b")[1:-1])
        brackets = _sign_changes(f, grid)
        counts.append(len(brackets))
        if level and counts[-1] == counts[-2]:
            break
    else:
        raise RootIsolationError(f"sign-change count unstable under refinement: {counts}")
    scalar = lambda x: float(f(np.array([x]))[0])  # noqa: E731
    return [_bisect(scalar, lo, hi, flo) for lo, hi, flo in brackets]


def _segment_integral(g, lo: float, hi: float, singular_hi: bool) -> float:
    if singular_hi:
        edges = graded_edges(lo, hi, GRADE_LEVELS, "b")
    else:
        edges = np.linspace(lo, hi, 9)
    return math.fsum(integrate_panels(g, edges, PANEL_NODES))


def _even_l1(k: int, d: int) -> float:
    # B_k(r) = sum_j c_j r^(2j) on [0, 1); integrate exactly per signed segment
    coeffs = np.array(even_poly_coeffs(k, d))
    powers = d + 2.0 * np.arange(len(coeffs))
    prim = lambda r: float(np.sum(coeffs * r**powers / powers))  # noqa: E731
    poly = lambda r: np.polynomial.polynomial.polyval(np.asarray(r) ** 2, coeffs)  # noqa: E731
    cuts = [0.0, *profile_roots(poly, 0.0, 1.0, near_b=False), 1.0]
    return math.fsum(abs(prim(b) - prim(a)) for a, b in zip(cuts[:-1], cuts[1:]))


def _odd_l1(k: int, d: int) -> float:
    inner = lambda r: inner_profile(k, d, r)  # noqa: E731
    g_in = lambda r: r ** (d - 1) * inner_profile(k, d, r)  # noqa: E731
    cuts = [0.0, *profile_roots(inner, 0.0, 1.0), 1.0]
    parts = []
    for i, (a, b) in enumerate(zip(cuts[:-1], cuts[1:])):
        parts.append(abs(_segment_integral(g_in, a, b, singular_hi=i == len(cuts) - 2)))
    # outer branch keeps the sign sin(k pi/2): [1, 2] graded toward 1, then r = 1/s
    g_out = lambda r: r ** (d - 1) * outer_profile(k, d, r)  # noqa: E731
    near = math.fsum(integrate_panels(g_out, graded_edges(1.0, 2.0, GRADE_LEVELS, "a")[1:], PANEL_NODES))
    far_g = lambda s: s ** (-d - 1.0) * outer_profile(k, d, 1.0 / s)  # noqa: E731
    far = math.fsum(integrate_panels(far_g, np.linspace(0.0, 0.5, 9), PANEL_NODES))
    parts.append(abs(near + far))
    return math.fsum(parts)


def l1_norm(k: int, d: int) -> float:
    """||b_k||_{L^1(R^d)} = |S^{d-1}| int_0^oo r^(d-1) |B_k(r)| dr."""
    _check_order(k, d)
    radial = _even_l1(k, d) if k % 2 == 0 else _odd_l1(k, d)
    return math.exp(sphere_area_log(d)) * radial


def odd_tail_integral(k: int, eps: float) -> float:
    """int_{1+eps}^oo (1 - r^-2)^(-k/2) r^-(k+1) dr for odd k >= 3.

    With u = 1 - r^-2 this is (1/2) int_{u0}^1 u^(-k/2) (1-u)^((k-2)/2) du.
    """
    if k < 3 or k % 2 == 0:
        raise ValueError("k must be odd and >= 3")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    u0 = 1.0 - (1.0 + eps) ** -2
    g = lambda u: 0.5 * u ** (-0.5 * k) * (1.0 - u) ** (0.5 * (k - 2))  # noqa: E731
    mid = max(0.5, u0)
    left = np.geomspace(u0, mid, 60) if mid > u0 else np.array([u0])
    right = graded_edges(mid, 1.0, GRADE_LEVELS, "b")
    total = 0.0
    if len(left) > 1:
        total += math.fsum(integrate_panels(g, left, PANEL_NODES))
    return total + math.fsum(integrate_panels(g, right, PANEL_NODES))


def laguerre_constant(k: int, panels: int = 4) -> float:
    """(1/(k/2-1)!) int_0^oo |L_{k/2-1}(s)| e^-s ds.

    Roots of the Laguerre polynomial split the half-line; finite segments use
    Gauss-Legendre panels and the last one Gauss-Laguerre (exact here).
    """
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    n = k // 2 - 1
    roots = np.sort(np.real(np.polynomial.polynomial.polyroots(laguerre_coeffs(n))))
    g = lambda s: np.abs(laguerre(n, s)) * np.exp(-s)  # noqa: E731
    cuts = [0.0, *roots.tolist()]
    parts = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        parts.append(math.fsum(integrate_panels(g, np.linspace(a, b, panels + 1), 2 * n + 8)))
    x, w = np.polynomial.laguerre.laggauss(n + 2)
    last = cuts[-1]
    parts.append(math.exp(-last) * float(np.sum(w * np.abs(laguerre(n, last + x)))))
    return math.fsum(parts) / math.factorial(n)


def growth_ratio(k: int, d: int) -> float:
    """l1_norm(k, d) / (d/2)^(k/2 - 1) for even k >= 4."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    return l1_norm(k, d) / (0.5 * d) ** (0.5 * k - 1.0)


__all__ = [
    "RootIsolationError",
    "growth_ratio",
    "l1_norm",
    "laguerre_constant",
    "odd_tail_integral",
    "profile_roots",
]
