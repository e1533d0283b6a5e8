"""Concrete homogeneous harmonic polynomials (zonal family)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import gegenbauer_coeffs


@dataclass(frozen=True)
class HarmonicPolynomial:
    """P(x) = sum_m coeffs[m] * <x, axis>^(k-2m) * |x|^(2m).

    Every zonal harmonic about ``axis`` has this form; for d = 2 it is
    Re((x . axis + i x . axis_perp)^k).
    """

    k: int
    d: int
    axis: tuple[float, ...]
    coeffs: tuple[float, ...]

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.d:
            raise ValueError(f"expected points with last axis {self.d}, got shape {x.shape}")
        s = x @ np.asarray(self.axis)
        rho2 = np.sum(x * x, axis=-1)
        out = np.zeros_like(s)
        for m, c in enumerate(self.coeffs):
            out = out + c * s ** (self.k - 2 * m) * rho2**m
        return out

    def on_sphere(self, cos_angle):
        """P evaluated at unit vectors with <theta, axis> = cos_angle."""
        t = np.asarray(cos_angle, dtype=float)
        return sum(c * t ** (self.k - 2 * m) for m, c in enumerate(self.coeffs))

    def sup_on_sphere(self) -> float:
        t = np.linspace(-1.0, 1.0, 4001)
        return float(np.max(np.abs(self.on_sphere(t))))

    def laplacian_residual(self, points, h: float = 1e-3) -> np.ndarray:
        """Central-difference Laplacian at ``points`` (shape (m, d))."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        lap = -2.0 * self.d * self(points)
        for i in range(self.d):
            e = np.zeros(self.d)
            e[i] = h
            lap = lap + self(points + e) + self(points - e)
        return lap / (h * h)


def _chebyshev_coeffs(k: int) -> list[float]:
    # T_k(t) = (k/2) sum_m (-1)^m (k-m-1)! / (m! (k-2m)!) (2t)^(k-2m)
    out = []
    for m in range(k // 2 + 1):
        c = 0.5 * k * (-1) ** m * math.factorial(k - m - 1) / (math.factorial(m) * math.factorial(k - 2 * m))
        out.append(c * 2.0 ** (k - 2 * m))
    return out


def zonal_harmonic(k: int, d: int, axis=None, part: str = "real") -> HarmonicPolynomial:
    """Degree-k zonal harmonic on R^d about ``axis`` (default e_1).

    d >= 3: |x|^k C_k^{(d-2)/2}(<x, axis>/|x|).
    d = 2: Re (or Im, with ``part="imag"``) of (x_1 + i x_2)^k in the frame
    of ``axis``.
    d = 1: only k = 1, P(x) = x.
    """
    if k < 1:
        raise ValueError("order k must be >= 1")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if axis is None:
        axis = np.eye(d)[0]
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (d,):
        raise ValueError("axis must have length d")
    axis = axis / np.linalg.norm(axis)
    if d == 1:
        if k != 1:
            raise ValueError("in d = 1 only k = 1 (Hilbert transform) exists")
        return HarmonicPolynomial(1, 1, tuple(axis), (1.0,))
    if d == 2:
        if part == "imag":
            phi = -math.pi / (2 * k)
            c, s = math.cos(phi), math.sin(phi)
            # Im(z^k) = Re((e^{-i pi/(2k)} z)^k): rotate the frame by -phi
            axis = np.array([c * axis[0] + s * axis[1], -s * axis[0] + c * axis[1]])
        return HarmonicPolynomial(k, 2, tuple(axis), tuple(_chebyshev_coeffs(k)))
    if part != "real":
        raise ValueError("part='imag' is only meaningful in d = 2")
    return HarmonicPolynomial(k, d, tuple(axis), tuple(c for _, c in gegenbauer_coeffs(k, 0.5 * (d - 2))))

