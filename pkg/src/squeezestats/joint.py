r"""Joint photon-number distribution ``W(n1, n2)`` of a two-mode squeezed vacuum.

For the Gaussian ``exp(-A x1^2 - B x2^2 + 2 C x1 x2)`` put ``D = AB - C^2`` and

    E1 = 4D + 2A - 2B - 1        E2 = 4D - 2A + 2B - 1
    E3 = 4D - 2A - 2B + 1        E4 = 4D + 2A + 2B + 1

With ``l = (n1 + n2)/2`` and ``m = |n1 - n2|/2`` the distribution is

    W = 8 (l-m)!/(l+m)! sqrt(A1 B1 - C1^2) / |E4|
        * |E1/E2|^((n1-n2)/2) * |E3/E4|^l * |P_l^m(zeta)|^2,
    zeta = -4C / (sqrt(E4) sqrt(-E3)).

Evaluated literally this has removable singularities: ``zeta`` blows up on
``E3 = 0`` (e.g. one squeezed mode mixed with vacuum) and ``E1/E2`` is 0/0 for
diagonal forms.  Using ``E1 E2 = E3 E4 + 16 C^2`` one finds
``|E3|^l |P_l^m(zeta)|^2 = |E1 E2 / E4|^m |R_l^m(y, tau)|^2`` where
``R`` is the homogenised Legendre polynomial of
:func:`squeezestats.specfun.legendre_reduced` with ``y = -4C / sqrt(E4)`` and
``tau = -E3``.  Hence

    W = 8 (l-m)!/(l+m)! sqrt(A1 B1 - C1^2) |E4|^(-1-l-m) |E_s|^(2m) |R_l^m(y, tau)|^2

with ``E_s = E1`` for ``n1 >= n2`` and ``E2`` otherwise.  Every factor is
finite for a normalisable form (``E4 = 4 det(M + I/2)`` never vanishes), and
everything is assembled in log space.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

from squeezestats.errors import DomainError
from squeezestats.specfun import assoc_legendre, legendre_reduced, legendre_reduced_diagonals, log_factorial
from squeezestats.state import GaussianForm, SqueezeParams, gaussian_form

_LN8 = math.log(8.0)
LOW_COVERAGE = 0.999


@dataclass(frozen=True)
class Pmf2D:
    """Table of ``W(n1, n2)``.

    With ``bin_width > 1`` entry ``[i, j]`` holds the summed probability of
    ``n1 in [i*w, (i+1)*w)`` and ``n2 in [j*w, (j+1)*w)``.
    """

    values: np.ndarray
    params: SqueezeParams
    captured_mass: float
    bin_width: int = 1

    @property
    def n1_max(self) -> int:
        return self.values.shape[0] - 1

    @property
    def n2_max(self) -> int:
        return self.values.shape[1] - 1


class _Bases(NamedTuple):
    log_prefactor: float  # ln 8 + 1/2 ln(A1 B1 - C1^2) - ln|E4|
    log_e1: float
    log_e2: float
    log_e4: float
    y: complex
    tau: complex


def _log_abs(z: complex) -> float:
    return -math.inf if z == 0 else math.log(abs(z))


def _bases(form: GaussianForm) -> _Bases:
    form.check()
    A, B, C = complex(form.A), complex(form.B), complex(form.C)
    D4 = 4 * (A * B - C * C)
    e1 = D4 + 2 * A - 2 * B - 1
    e2 = D4 - 2 * A + 2 * B - 1
    e3 = D4 - 2 * A - 2 * B + 1
    e4 = D4 + 2 * A + 2 * B + 1
    log_e4 = math.log(abs(e4))
    return _Bases(
        _LN8 + 0.5 * math.log(form.real_det) - log_e4,
        _log_abs(e1),
        _log_abs(e2),
        log_e4,
        -4 * C / cmath.sqrt(e4),
        -e3,
    )


def log_joint_pmf(form: GaussianForm, n1: int, n2: int) -> float:
    if n1 < 0 or n2 < 0:
        raise DomainError(f"photon numbers must be >= 0, got ({n1}, {n2})")
    b = _bases(form)
    if (n1 + n2) % 2:
        return -math.inf
    l, m = (n1 + n2) // 2, abs(n1 - n2) // 2
    log_r = legendre_reduced(l, m, b.y, b.tau).log_magnitude
    if log_r == -math.inf:
        return -math.inf
    out = b.log_prefactor - (log_factorial(l + m) - log_factorial(l - m)) - (l + m) * b.log_e4 + 2 * log_r
    if m:
        out += 2 * m * (b.log_e1 if n1 >= n2 else b.log_e2)
    return out


def joint_pmf(form: GaussianForm, n1: int, n2: int) -> float:
    """Probability of ``n1`` photons in mode 1 and ``n2`` in mode 2."""
    return math.exp(log_joint_pmf(form, n1, n2))


def joint_pmf_literal(form: GaussianForm, n1: int, n2: int) -> float:
    """The four-factor formula assembled factor by factor, without regularisation.

    Kept as an independent cross-check of :func:`joint_pmf`; it raises
    :class:`DomainError` on the removable singularities that the regularised
    form handles (``E3 = 0``, ``E1 = E2 = 0``).
    """
    form.check()
    if (n1 + n2) % 2:
        return 0.0
    A, B, C = complex(form.A), complex(form.B), complex(form.C)
    D4 = 4 * (A * B - C * C)
    e1, e2 = D4 + 2 * A - 2 * B - 1, D4 - 2 * A + 2 * B - 1
    ratio2_num, ratio2_den = D4 - 2 * A - 2 * B + 1, D4 + 2 * A + 2 * B + 1
    root = cmath.sqrt(4 * A * B + 2 * A + 2 * B + 1 - 4 * C * C) * cmath.sqrt(4 * C * C - 4 * A * B + 2 * A + 2 * B - 1)
    if root == 0 or (n1 != n2 and (e1 == 0 or e2 == 0)):
        raise DomainError("the unregularised formula is singular for this form")
    ratio1 = e1 / e2 if n1 != n2 else 1.0
    zeta = -4 * C / root
    l, m = (n1 + n2) // 2, abs(n1 - n2) // 2
    log_w = (
        _LN8
        - abs(log_factorial(n1) - log_factorial(n2))
        - math.log(abs((2 * A + 1) * (2 * B + 1) - 4 * C * C))
        + 0.5 * math.log(form.real_det)
        + 0.5 * (n1 - n2) * _log_abs(ratio1)
        + l * (_log_abs(ratio2_num) - math.log(abs(ratio2_den)))
        + 2 * assoc_legendre(l, m, zeta).log_magnitude
    )
    return math.exp(log_w)


def _iter_log_entries(form: GaussianForm, l_max: int):
    """Yield ``(n1, n2, log W)`` arrays covering every even-total entry with
    ``n1 + n2 <= 2 l_max``, one Legendre diagonal ``l - m = d`` at a time."""
    b = _bases(form)
    log_fact = gammaln(np.arange(2 * l_max + 2, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        for d, log_r in legendre_reduced_diagonals(l_max, b.y, b.tau):
            m = np.arange(log_r.size)
            l = m + d
            common = b.log_prefactor - (log_fact[l + m + 1] - log_fact[d + 1]) - (l + m) * b.log_e4 + 2 * log_r
            lower = np.where(m > 0, 2 * m * b.log_e1, 0.0)
            yield l + m, l - m, common + lower
            if log_r.size > 1:
                mm = m[1:]
                yield l[1:] - mm, l[1:] + mm, common[1:] + 2 * mm * b.log_e2


def joint_pmf_table(params: SqueezeParams, n1_max: int, n2_max: int) -> Pmf2D:
    """Dense table of ``W(n1, n2)`` for ``n1 <= n1_max``, ``n2 <= n2_max``."""
    if n1_max < 0 or n2_max < 0:
        raise DomainError("table bounds must be non-negative")
    form = gaussian_form(params)
    values = np.zeros((n1_max + 1, n2_max + 1))
    for n1, n2, log_w in _iter_log_entries(form, (n1_max + n2_max) // 2):
        keep = (n1 <= n1_max) & (n2 <= n2_max)
        values[n1[keep], n2[keep]] = np.exp(log_w[keep])
    return Pmf2D(values, params, math.fsum(values.ravel()))


def joint_pmf_binned(params: SqueezeParams, n_total_max: int, bin_width: int) -> Pmf2D:
    """Coarse-grained table over the triangle ``n1 + n2 <= n_total_max``.

    Every entry is computed exactly and summed into ``bin_width``-square
    cells, so distributions spread over tens of thousands of photons fit in
    memory.  ``captured_mass`` is the exact sum over the triangle.
    """
    if n_total_max < 0 or bin_width < 1:
        raise DomainError("need n_total_max >= 0 and bin_width >= 1")
    form = gaussian_form(params)
    side = n_total_max // bin_width + 1
    values = np.zeros((side, side))
    for n1, n2, log_w in _iter_log_entries(form, n_total_max // 2):
        # each diagonal block has one of n1, n2 fixed (= l - m)
        weights = np.exp(log_w)
        if n2[0] == n2[-1]:
            values[:, n2[0] // bin_width] += np.bincount(n1 // bin_width, weights=weights, minlength=side)
        else:
            values[n1[0] // bin_width, :] += np.bincount(n2 // bin_width, weights=weights, minlength=side)
    return Pmf2D(values, params, math.fsum(values.ravel()), bin_width)


def total_from_joint(table: Pmf2D, n: int) -> float:
    """``sum_{n1 + n2 = n} W(n1, n2)`` read off a per-entry table."""
    if table.bin_width != 1:
        raise DomainError("total_from_joint needs an unbinned table")
    if n < 0 or n > min(table.n1_max, table.n2_max):
        raise DomainError(f"n={n} is outside the table's complete diagonals")
    n1 = np.arange(n + 1)
    return math.fsum(table.values[n1, n - n1])


class Moments(NamedTuple):
    mean_n1: float
    mean_n2: float
    covariance: float
    captured_mass: float
    warning: str | None = None


def moments(table: Pmf2D) -> Moments:
    """First moments and the photon-number covariance of a truncated table.

    Sums are taken over the table as is (no renormalisation).  When less than
    0.999 of the probability is captured the result carries a warning.
    """
    if table.bin_width != 1:
        raise DomainError("moments need an unbinned table")
    w = table.values
    n1 = np.arange(w.shape[0])[:, None]
    n2 = np.arange(w.shape[1])[None, :]
    mean1 = math.fsum((n1 * w).ravel())
    mean2 = math.fsum((n2 * w).ravel())
    cross = math.fsum((n1 * n2 * w).ravel())
    note = None
    if table.captured_mass < LOW_COVERAGE:
        note = f"low coverage: table captures only {table.captured_mass:.6f} of the probability"
        warnings.warn(note, RuntimeWarning, stacklevel=2)
    return Moments(mean1, mean2, cross - mean1 * mean2, table.captured_mass, note)
