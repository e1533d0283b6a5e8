"""Gauss-Legendre panel quadrature helpers."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_nodes(edges, n: int = 32):
    """Nodes and weights for Gauss-Legendre on each panel [edges[i], edges[i+1]].

    Returns arrays of shape (panels, n).
    """
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(n)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def integrate_panels(func, edges, n: int = 32) -> np.ndarray:
    """Integral of ``func`` over each panel; ``func`` is called once on all nodes."""
    nodes, weights = panel_nodes(edges, n)
    vals = np.asarray(func(nodes.ravel()), dtype=float).reshape(nodes.shape)
    return np.sum(vals * weights, axis=1)


def checked_panels(func, edges, n: int = 32, rtol: float = 1e-9, atol: float = 1e-15):
    """Panel integrals at order ``n`` verified against order ``2n``.

    Returns ``(integrals, max_disagreement)``; the higher-order values are
    returned.
    """
    coarse = integrate_panels(func, edges, n)
    fine = integrate_panels(func, edges, 2 * n)
    gap = np.abs(fine - coarse)
    scale = np.maximum(np.abs(fine), atol / rtol)
    return fine, float(np.max(gap / scale)) if gap.size else 0.0


def graded_edges(a: float, b: float, levels: int = 48, toward: str = "b") -> np.ndarray:
    """Panel edges on [a, b] refined geometrically toward one endpoint.

    Each panel halves the distance to the singular end, which suits
    integrable logarithmic or algebraic endpoint singularities.  The last
    sliver of width ``(b - a) 2^-levels`` is left out; keep ``levels`` small
    enough that the edges stay distinct in double precision.
    """
    fr = 0.5 ** np.arange(levels + 1)
    if toward == "b":
        return b - (b - a) * fr
    return a + (b - a) * fr[::-1]
