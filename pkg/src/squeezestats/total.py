"""Distribution of the total photon number ``n = n1 + n2``.

Only the two squeezing ratios ``s_j = tanh(r_j)**2`` enter: the rotation and
phase-shift factors of the state act on a sphere of constant ``n1 + n2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from squeezestats.errors import DomainError
from squeezestats.specfun import binomial, log_binomial, log_hyp2f1_terminating
from squeezestats.state import check_s

_LINEAR_LIMIT = 60


@dataclass(frozen=True)
class Pmf1D:
    """``values[n] = W_n`` for ``n = 0 .. n_max``; the omitted mass is at most
    ``tail_bound``."""

    values: np.ndarray
    n_max: int
    tail_bound: float
    s1: float = 0.0
    s2: float = 0.0

    @property
    def total(self) -> float:
        return float(math.fsum(self.values))

    def mean(self) -> float:
        return float(math.fsum(np.arange(self.n_max + 1) * self.values))


def single_mode_log_pmf(s: float, n: int) -> float:
    s = check_s(s)
    if n < 0:
        raise DomainError(f"photon number must be >= 0, got {n}")
    if n % 2:
        return -math.inf
    if s == 0.0:
        return 0.0 if n == 0 else -math.inf
    return 0.5 * math.log1p(-s) + (n // 2) * math.log(s) + log_binomial(n, n // 2) - n * math.log(2.0)


def single_mode_pmf(s: float, n: int) -> float:
    """Photon-number distribution of a single-mode squeezed vacuum with ratio ``s``."""
    s = check_s(s)
    if n < 0:
        raise DomainError(f"photon number must be >= 0, got {n}")
    if n % 2:
        return 0.0
    if n <= _LINEAR_LIMIT:
        return math.sqrt(1.0 - s) * s ** (n // 2) * 2.0**-n * binomial(n, n // 2)
    return math.exp(single_mode_log_pmf(s, n))


def single_mode_pmf_array(s: float, n_max: int) -> np.ndarray:
    """Vectorised :func:`single_mode_pmf` for ``n = 0 .. n_max``."""
    s = check_s(s)
    out = np.zeros(n_max + 1)
    k = np.arange(n_max // 2 + 1, dtype=float)
    if s == 0.0:
        out[0] = 1.0
        return out
    log_vals = (
        0.5 * math.log1p(-s) + k * math.log(s) + gammaln(2 * k + 1) - 2 * gammaln(k + 1) - 2 * k * math.log(2.0)
    )
    out[::2] = np.exp(log_vals)
    return out


def total_pmf_convolution(s1: float, s2: float, n: int) -> float:
    """``sum_{n1} W_{n1}(s1) W_{n - n1}(s2)`` summed term by term."""
    if n < 0:
        raise DomainError(f"photon number must be >= 0, got {n}")
    if n % 2:
        return 0.0
    p1 = single_mode_pmf_array(s1, n)
    p2 = single_mode_pmf_array(s2, n)
    return math.fsum(p1 * p2[::-1])


def log_total_pmf_closed(s1: float, s2: float, k: int) -> float:
    s1, s2 = check_s(s1), check_s(s2)
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if s1 > s2:
        # mode exchange symmetry; keeps the hypergeometric argument in [0, 1)
        s1, s2 = s2, s1
    log_norm = 0.5 * (math.log1p(-s1) + math.log1p(-s2))
    if s2 == 0.0:
        return 0.0 if k == 0 else -math.inf
    log_f, sign = log_hyp2f1_terminating(k, 0.5, 1.0, 1.0 - s1 / s2)
    if sign <= 0:
        return -math.inf
    return log_norm + k * math.log(s2) + log_f


def total_pmf_closed(s1: float, s2: float, k: int) -> float:
    """Probability of ``2k`` photons in total, ``N s2**k 2F1(-k, 1/2; 1; 1 - s1/s2)``
    with ``N = sqrt((1 - s1)(1 - s2))``."""
    return math.exp(log_total_pmf_closed(s1, s2, k))


def tail_bound(s1: float, s2: float, n_max: int) -> float:
    """Certified bound on ``sum_{n > n_max} W_n``.

    Write ``W_2k = N sum_j a_j a_{k-j} s1**j s2**(k-j)`` with
    ``a_j = binom(2j, j) / 4**j``.  Bounding both powers by ``q = max(s1, s2)``
    leaves ``N q**k sum_j a_j a_{k-j}``, and that sum is exactly 1 because it
    is the ``t**k`` coefficient of ``(1 - t)**(-1/2) (1 - t)**(-1/2)``.  Hence
    ``W_2k <= N q**k`` and the tail past ``K = n_max // 2`` is at most
    ``N q**(K + 1) / (1 - q)``.  The bound is exact when ``s1 == s2``.
    """
    s1, s2 = check_s(s1), check_s(s2)
    q = max(s1, s2)
    if q == 0.0:
        return 0.0
    norm = math.sqrt((1.0 - s1) * (1.0 - s2))
    return min(1.0, norm * q ** (n_max // 2 + 1) / (1.0 - q))


def mean_tail_bound(s1: float, s2: float, n_max: int) -> float:
    """Bound on ``sum_{n > n_max} n W_n`` from the same envelope ``W_2k <= N q**k``."""
    s1, s2 = check_s(s1), check_s(s2)
    q = max(s1, s2)
    if q == 0.0:
        return 0.0
    norm = math.sqrt((1.0 - s1) * (1.0 - s2))
    k0 = n_max // 2 + 1
    # sum_{k >= k0} k q**k = q**k0 (k0 - (k0 - 1) q) / (1 - q)**2
    return 2.0 * norm * q**k0 * (k0 - (k0 - 1) * q) / (1.0 - q) ** 2


def certified_nmax(s1: float, s2: float, mass_tol: float = 1e-12, mean_tol: float | None = None) -> int:
    """Smallest even ``n_max`` whose certified tail (and, if asked, mean tail)
    is below the given tolerances."""
    n = 0
    while tail_bound(s1, s2, n) > mass_tol or (mean_tol is not None and mean_tail_bound(s1, s2, n) > mean_tol):
        n += 2
    return n


def mean_total_photons(s1: float, s2: float) -> float:
    """Exact mean ``s1/(1 - s1) + s2/(1 - s2)`` (= ``sinh(r1)**2 + sinh(r2)**2``)."""
    s1, s2 = check_s(s1), check_s(s2)
    return s1 / (1.0 - s1) + s2 / (1.0 - s2)


def total_pmf_table(s1: float, s2: float, n_max: int, method: str = "closed") -> Pmf1D:
    """Tabulate ``W_n`` for ``n = 0 .. n_max``.

    ``method="closed"`` evaluates the hypergeometric closed form per entry;
    ``method="convolution"`` convolves the two single-mode tables at once,
    which is much faster for tables with tens of thousands of entries.
    """
    s1, s2 = check_s(s1), check_s(s2)
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    if method == "closed":
        values = np.zeros(n_max + 1)
        for k in range(n_max // 2 + 1):
            values[2 * k] = total_pmf_closed(s1, s2, k)
    elif method == "convolution":
        values = np.convolve(single_mode_pmf_array(s1, n_max), single_mode_pmf_array(s2, n_max))[: n_max + 1]
        values[1::2] = 0.0
    else:
        raise ValueError(f"unknown method {method!r}")
    return Pmf1D(values, n_max, tail_bound(s1, s2, n_max), s1, s2)
