"""The factorization kernel b_{k,d} and the truncated Riesz kernel.

The radial profile B_k of b_k is given on two branches:

* r in [0, 1):  A_in * 2F1((d+k)/2, 1 - k/2; d/2 + 1; r^2)
* r in (1, oo): A_out * r^-(d+k) * 2F1((d+k)/2, k/2; d/2 + k; r^-2) * sin(k pi / 2)

with A_in = Gamma((d+k)/2)^2 / (pi^{d/2} Gamma(d/2+1) Gamma(k/2)^2) and
A_out = Gamma((d+k)/2)^2 / (pi^{d/2+1} Gamma(d/2+k)).  For even k the outer
branch vanishes and the inner one is a polynomial in r^2; for odd k both
branches blow up logarithmically at r = 1, where B_k is left undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .harmonics import HarmonicPolynomial, zonal_harmonic
from .specfun import hyp2f1


class KernelDomainError(ValueError):
    """Evaluation requested where the kernel is not defined."""


def log_gamma_kd(k: int, d: int) -> float:
    return math.lgamma(0.5 * (k + d)) - 0.5 * d * math.log(math.pi) - math.lgamma(0.5 * k)


def gamma_kd(k: int, d: int) -> float:
    """Normaliser of the order-k Riesz kernel on R^d."""
    return math.exp(log_gamma_kd(k, d))


def _check_order(k: int, d: int) -> None:
    if int(k) != k or k < 1:
        raise ValueError(f"order k must be a positive integer, got {k!r}")
    if int(d) != d or d < 1:
        raise ValueError(f"dimension d must be a positive integer, got {d!r}")


@dataclass(frozen=True)
class HarmonicSpec:
    """Order, dimension and a concrete P in H_k (zonal about e_1 by default)."""

    k: int
    d: int
    polynomial: HarmonicPolynomial | None = None
    gamma_kd: float = field(init=False)

    def __post_init__(self):
        _check_order(self.k, self.d)
        if self.polynomial is None:
            object.__setattr__(self, "polynomial", zonal_harmonic(self.k, self.d))
        p = self.polynomial
        if p.k != self.k or p.d != self.d:
            raise ValueError("polynomial degree/dimension does not match (k, d)")
        object.__setattr__(self, "gamma_kd", gamma_kd(self.k, self.d))


def log_prefactors(k: int, d: int) -> tuple[float, float]:
    """log A_in, log A_out (computed in log space; the squares overflow otherwise)."""
    lg = 2.0 * math.lgamma(0.5 * (d + k))
    log_in = lg - 0.5 * d * math.log(math.pi) - math.lgamma(0.5 * d + 1.0) - 2.0 * math.lgamma(0.5 * k)
    log_out = lg - (0.5 * d + 1.0) * math.log(math.pi) - math.lgamma(0.5 * d + k)
    return log_in, log_out


def inner_profile(k: int, d: int, r):
    r = np.asarray(r, dtype=float)
    log_in, _ = log_prefactors(k, d)
    return math.exp(log_in) * hyp2f1(0.5 * (d + k), 1.0 - 0.5 * k, 0.5 * d + 1.0, r * r)


def outer_profile(k: int, d: int, r):
    r = np.asarray(r, dtype=float)
    if k % 2 == 0:
        return np.zeros_like(r) if r.ndim else 0.0
    _, log_out = log_prefactors(k, d)
    sign = 1.0 if k % 4 == 1 else -1.0  # sin(k pi / 2)
    inv2 = 1.0 / (r * r)
    f = hyp2f1(0.5 * (d + k), 0.5 * k, 0.5 * d + k, inv2)
    return sign * np.exp(log_out - (d + k) * np.log(r)) * f


def radial_profile(k: int, d: int, r):
    """B_k(r) for r >= 0, r != 1.  Scalar in, scalar out; arrays are vectorised."""
    _check_order(k, d)
    scalar = np.ndim(r) == 0
    ra = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(ra < 0) or not np.all(np.isfinite(ra)):
        raise KernelDomainError("radius must be finite and >= 0")
    if np.any(ra == 1.0):
        raise KernelDomainError("B_k(1) is not defined")
    out = np.zeros_like(ra)
    inside = ra < 1.0
    if inside.any():
        out[inside] = inner_profile(k, d, ra[inside])
    if (~inside).any() and k % 2 == 1:
        out[~inside] = outer_profile(k, d, ra[~inside])
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class RadialProfile:
    k: int
    d: int
    branch: str  # "inner" or "outer"
    support_note: str
    singular_at_one: bool
    eval: Callable = field(repr=False, compare=False)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if self.branch == "inner" and np.any((r < 0) | (r >= 1)):
            raise KernelDomainError("inner branch lives on [0, 1)")
        if self.branch == "outer" and np.any(r <= 1):
            raise KernelDomainError("outer branch lives on (1, oo)")
        return self.eval(r)


def profile(k: int, d: int, branch: str) -> RadialProfile:
    _check_order(k, d)
    odd = k % 2 == 1
    note = "full half-line" if odd else "compact: unit ball"
    if branch == "inner":
        return RadialProfile(k, d, "inner", note, odd, lambda r: inner_profile(k, d, r))
    if branch == "outer":
        return RadialProfile(k, d, "outer", note, odd, lambda r: outer_profile(k, d, r))
    raise ValueError("branch must be 'inner' or 'outer'")


def even_poly_coeffs(k: int, d: int) -> list[float]:
    """Coefficients c_j with B_k(r) = sum_j c_j r^(2j) on [0, 1), for even k."""
    _check_order(k, d)
    if k % 2:
        raise ValueError("even_poly_coeffs needs even k")
    log_in, _ = log_prefactors(k, d)
    a, b, c = 0.5 * (d + k), 1.0 - 0.5 * k, 0.5 * d + 1.0
    coef = math.exp(log_in)
    out = [coef]
    for j in range(k // 2 - 1):
        coef *= (a + j) * (b + j) / ((c + j) * (j + 1))
        out.append(coef)
    return out


def kernel_value(spec: HarmonicSpec, x) -> float:
    """b_k(x) = B_k(|x|)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != spec.d:
        raise ValueError("point dimension does not match spec.d")
    return radial_profile(spec.k, spec.d, np.linalg.norm(x, axis=-1))


def scaled_kernel_value(spec: HarmonicSpec, t: float, x):
    """b^t(x) = t^-d B_k(|x| / t)."""
    if not t > 0:
        raise ValueError("t must be positive")
    x = np.asarray(x, dtype=float)
    rho = np.linalg.norm(x, axis=-1) / t
    return t ** (-spec.d) * radial_profile(spec.k, spec.d, rho)


def truncated_riesz_kernel(spec: HarmonicSpec, t: float, y):
    """gamma_{k,d} P(y) / |y|^(d+k) for |y| > t, else 0."""
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != spec.d:
        raise ValueError("point dimension does not match spec.d")
    rho = np.linalg.norm(y, axis=-1)
    if np.any(rho == 0):
        raise KernelDomainError("the Riesz kernel is singular at y = 0")
    val = spec.gamma_kd * spec.polynomial(y) / rho ** (spec.d + spec.k)
    out = np.where(rho > t, val, 0.0)
    return float(out) if out.ndim == 0 else out
