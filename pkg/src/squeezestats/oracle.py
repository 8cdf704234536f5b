"""Brute-force reconstruction of the two-mode squeezed vacuum.

Two routes, independent of the closed forms and of each other:

* :func:`build_state_operator` applies the operator product
  ``exp(i rho) exp(-i phi M) Gamma(gamma) S1(r1) S2(r2)`` to ``|0,0>`` with
  truncated ladder matrices and matrix exponentials;
* :func:`quadrature_amplitudes` projects the closed-form wavefunction onto
  Fock states by two-dimensional Gauss-Hermite quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from squeezestats.errors import DomainError, TruncationError
from squeezestats.state import GaussianForm, SqueezeParams

DEFAULT_MARGIN = 12
MAX_NORM_DEFICIT = 1e-6


@dataclass(frozen=True)
class FockAmplitudes:
    amplitudes: np.ndarray
    cutoff: int
    norm_captured: float

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def recommended_cutoff(r_max: float) -> int:
    return int(math.ceil(20 + 40 * math.sinh(abs(r_max)) ** 2))


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)


def squeezed_vacuum_vector(r: float, dim: int, margin: int = DEFAULT_MARGIN) -> np.ndarray:
    """``exp(r (a**2 - a^dag**2) / 2) |0>`` on levels ``0 .. dim-1``.

    The exponential is taken on ``dim + margin`` levels and cropped so the
    truncation edge does not touch the returned levels.
    """
    a = annihilation(dim + margin)
    generator = 0.5 * r * (a @ a - a.T @ a.T)
    full = expm(generator)[:, 0]
    cropped = full[:dim]
    deficit = 1.0 - float(np.sum(cropped**2))
    if deficit > MAX_NORM_DEFICIT:
        raise TruncationError(
            f"single-mode squeeze r={r} loses {deficit:.2e} of its norm beyond level {dim - 1}"
        )
    return cropped


def _rotation_block(total: int, phi: float) -> np.ndarray:
    """``exp(-i phi M)`` on the states ``|n1, total - n1>``, ``n1 = 0 .. total``."""
    n1 = np.arange(total)
    # a^dag b |n1, n2> = sqrt(n1 + 1) sqrt(n2) |n1 + 1, n2 - 1>
    hop = np.sqrt((n1 + 1.0) * (total - n1))
    g = np.zeros((total + 1, total + 1))
    g[n1 + 1, n1] = hop
    g[n1, n1 + 1] = -hop
    # -i phi M = -i phi * i (a^dag b - b^dag a) = phi * g
    return expm(phi * g)


def build_state_operator(
    params: SqueezeParams, cutoff: int, margin: int = DEFAULT_MARGIN
) -> FockAmplitudes:
    """Amplitudes ``<n1, n2|Psi>`` for ``n1, n2 <= cutoff`` by operator action.

    The rotation conserves ``n1 + n2``, so it is exponentiated block by block;
    every block with ``n1 + n2 <= 2 cutoff`` is complete, which makes the
    returned window free of two-mode truncation error.
    """
    if cutoff < 0:
        raise DomainError("cutoff must be non-negative")
    dim = 2 * cutoff + 1
    levels = np.arange(dim)
    v1 = squeezed_vacuum_vector(params.r1, dim, margin) * np.exp(-1j * params.gamma * levels)
    v2 = squeezed_vacuum_vector(params.r2, dim, margin) * np.exp(1j * params.gamma * levels)
    product = np.outer(v1, v2)

    rotated = np.zeros((dim, dim), dtype=complex)
    for total in range(2 * cutoff + 1):
        n1 = np.arange(total + 1)
        block = product[n1, total - n1]
        rotated[n1, total - n1] = _rotation_block(total, params.phi) @ block

    window = np.exp(1j * params.rho) * rotated[: cutoff + 1, : cutoff + 1]
    return FockAmplitudes(window, cutoff, float(np.sum(np.abs(window) ** 2)))


def hermite_functions(n_max: int, x, gaussian: bool = True) -> np.ndarray:
    """Oscillator eigenfunctions ``psi_n(x)`` for ``n = 0 .. n_max``.

    Normalised three-term recurrence on mantissas with an exact power-of-two
    rescale per point, so neither ``exp(-x**2/2)`` nor the polynomial growth
    overflows.  ``gaussian=False`` drops the ``exp(-x**2/2)`` factor.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((n_max + 1, x.size))
    log_base = -0.25 * math.log(math.pi) - (0.5 * x**2 if gaussian else 0.0)
    log_base = np.broadcast_to(log_base, x.shape)
    exponent = np.zeros(x.shape)
    prev = np.zeros(x.shape)
    cur = np.ones(x.shape)
    out[0] = np.exp(log_base)
    for n in range(1, n_max + 1):
        prev, cur = cur, math.sqrt(2.0 / n) * x * cur - math.sqrt((n - 1) / n) * prev
        _, shift = np.frexp(np.maximum(np.abs(prev), np.abs(cur)))
        scale = np.ldexp(1.0, -shift)
        prev, cur = prev * scale, cur * scale
        exponent += shift
        with np.errstate(under="ignore"):
            out[n] = cur * np.exp(log_base + exponent * math.log(2.0))
    return out


def position_wavefunction(fock: FockAmplitudes, x1, x2) -> np.ndarray:
    """``sum amp[n1, n2] psi_n1(x1) psi_n2(x2)`` at the points ``(x1, x2)``."""
    x1 = np.atleast_1d(np.asarray(x1, dtype=float))
    x2 = np.atleast_1d(np.asarray(x2, dtype=float))
    h1 = hermite_functions(fock.cutoff, x1)
    h2 = hermite_functions(fock.cutoff, x2)
    return np.einsum("ip,ij,jp->p", h1, fock.amplitudes, h2)


def _quadrature_nodes(form: GaussianForm, order: int):
    """Gauss-Hermite nodes adapted to the real Gaussian envelope of the integrand.

    The integrand ``psi_n1 psi_n2 Psi`` decays as ``exp(-x^T K x)`` with
    ``K = Re M + I/2``; mapping ``x = V diag(K_eig**-1/2) y`` turns that into
    the Gauss-Hermite weight ``exp(-|y|**2)``.
    """
    y, w = np.polynomial.hermite.hermgauss(order)
    m = np.array([[form.A, -form.C], [-form.C, form.B]])
    k = m.real + 0.5 * np.eye(2)
    evals, evecs = np.linalg.eigh(k)
    scale = evecs / np.sqrt(evals)
    y1, y2 = np.meshgrid(y, y, indexing="ij")
    pts = scale @ np.vstack([y1.ravel(), y2.ravel()])
    weights = np.outer(w, w).ravel() / math.sqrt(evals[0] * evals[1])
    chirp = np.einsum("ip,ij,jp->p", pts, m.imag, pts)
    return pts[0], pts[1], weights * np.exp(-1j * chirp)


def quadrature_amplitudes(
    form: GaussianForm, n_max: int, order: int | None = None, rho: float = 0.0
) -> np.ndarray:
    """Matrix of ``<n1, n2|Psi>`` for ``n1, n2 <= n_max`` by quadrature."""
    if not form.is_normalizable:
        raise DomainError(f"Gaussian form is not normalisable: {form}")
    if order is None:
        order = 4 * n_max + 40
    x1, x2, weights = _quadrature_nodes(form, order)
    norm = math.sqrt(2.0 / math.pi) * form.real_det**0.25 * np.exp(1j * rho)
    h1 = hermite_functions(n_max, x1, gaussian=False)
    h2 = hermite_functions(n_max, x2, gaussian=False)
    return norm * (h1 * weights) @ h2.T


def overlap_quadrature(
    form: GaussianForm, n1: int, n2: int, order: int | None = None, rho: float = 0.0
) -> complex:
    """``<n1, n2|Psi>`` by Gauss-Hermite quadrature of order at least ``2 (n1 + n2) + 40``."""
    minimum = 2 * (n1 + n2) + 40
    order = minimum if order is None else max(order, minimum)
    if not form.is_normalizable:
        raise DomainError(f"Gaussian form is not normalisable: {form}")
    x1, x2, weights = _quadrature_nodes(form, order)
    norm = math.sqrt(2.0 / math.pi) * form.real_det**0.25 * np.exp(1j * rho)
    h1 = hermite_functions(n1, x1, gaussian=False)[n1]
    h2 = hermite_functions(n2, x2, gaussian=False)[n2]
    return complex(norm * np.sum(h1 * h2 * weights))
