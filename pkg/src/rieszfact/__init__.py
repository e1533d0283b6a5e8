"""Factorization kernels b_{k,d} of truncated higher-order Riesz transforms.

Modules:

* ``specfun``: gamma, Bessel J and zeros, hypergeometric series, orthogonal polynomials
* ``kernel``: the radial profile B_k and the truncated Riesz kernel
* ``multiplier``: m_k by the Bessel integral and by the 1F2 closed form
* ``norms``: L1 norms of b_k and the asymptotic constants of their growth
* ``theorems``: named claim checks and the verification suite
* ``lab``: Riesz-type operators on periodic grids
* ``cli``: command-line front end
"""

from .kernel import HarmonicSpec, radial_profile
from .multiplier import m_eval, m_hyp, m_integral
from .norms import growth_ratio, l1_norm, laguerre_constant

__version__ = "0.1.0"

__all__ = [
    "HarmonicSpec",
    "growth_ratio",
    "l1_norm",
    "laguerre_constant",
    "m_eval",
    "m_hyp",
    "m_integral",
    "radial_profile",
]
