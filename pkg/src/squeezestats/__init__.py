"""Photon-number statistics of two-mode squeezed vacua.

The public surface is split by topic:

* :mod:`squeezestats.specfun` -- log-factorials, the terminating Gauss
  hypergeometric series and associated Legendre functions of complex argument.
* :mod:`squeezestats.state` -- squeezing parameters and the Gaussian
  wavefunction coefficients they produce.
* :mod:`squeezestats.total` -- distribution of the total photon number.
* :mod:`squeezestats.joint` -- joint per-mode distribution.
* :mod:`squeezestats.oracle` -- brute-force Fock-space reconstruction used for
  validation.
"""

from squeezestats.errors import DomainError, TruncationError
from squeezestats.state import GaussianForm, SqueezeParams, gaussian_form, s_of_r, wavefunction
from squeezestats.total import (
    Pmf1D,
    single_mode_pmf,
    total_pmf_closed,
    total_pmf_convolution,
    total_pmf_table,
)
from squeezestats.joint import Pmf2D, joint_pmf, joint_pmf_table, moments, total_from_joint

__all__ = [
    "DomainError",
    "TruncationError",
    "GaussianForm",
    "SqueezeParams",
    "gaussian_form",
    "s_of_r",
    "wavefunction",
    "Pmf1D",
    "single_mode_pmf",
    "total_pmf_closed",
    "total_pmf_convolution",
    "total_pmf_table",
    "Pmf2D",
    "joint_pmf",
    "joint_pmf_table",
    "moments",
    "total_from_joint",
]
