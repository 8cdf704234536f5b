"""Squeezing parameters and the Gaussian wavefunction they generate.

Units are hbar = 1 with unit mass and frequency; the vacuum is
``pi**(-1/2) * exp(-(x1**2 + x2**2) / 2)``, i.e. coefficient 1/2 per mode.

The state is built as ``exp(i rho) exp(-i phi M) Gamma(gamma) S1(r1) S2(r2) |0,0>``
with ``M = i (a^dag b - b^dag a)`` and
``Gamma(gamma) = exp(i gamma (b^dag b - a^dag a))``.  In the position
representation each factor acts on the quadratic form of the exponent:

* ``S_j(r)`` turns the vacuum coefficient 1/2 into ``exp(2 r) / 2``;
* ``exp(-i theta n)`` maps ``w = 2 * coefficient`` to
  ``(w cos theta + i sin theta) / (cos theta + i w sin theta)``; Gamma applies
  ``theta = +gamma`` to mode 1 and ``theta = -gamma`` to mode 2;
* ``exp(-i phi M) = exp(i phi (x1 p2 - x2 p1))`` maps ``psi(x)`` to
  ``psi(R x)`` with ``R = [[cos phi, -sin phi], [sin phi, cos phi]]``.

These sign conventions are checked against the Fock-space construction in
:mod:`squeezestats.oracle`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from squeezestats.errors import DomainError


@dataclass(frozen=True)
class SqueezeParams:
    """Two squeezing strengths, the rotation angle, the half phase shift and
    the (inert) global phase."""

    r1: float
    r2: float
    phi: float = 0.0
    gamma: float = 0.0
    rho: float = 0.0

    def __post_init__(self):
        for name in ("r1", "r2", "phi", "gamma", "rho"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value}")

    @property
    def s1(self) -> float:
        return s_of_r(self.r1)

    @property
    def s2(self) -> float:
        return s_of_r(self.r2)

    def as_dict(self) -> dict:
        return {"r1": self.r1, "r2": self.r2, "phi": self.phi, "gamma": self.gamma, "rho": self.rho}


VACUUM = SqueezeParams(0.0, 0.0)


def s_of_r(r: float) -> float:
    """``tanh(r)**2``, the geometric ratio of a squeezed vacuum's pair counts."""
    if not math.isfinite(r):
        raise DomainError(f"squeezing must be finite, got {r}")
    return math.tanh(r) ** 2


def check_s(s: float) -> float:
    s = float(s)
    if not 0.0 <= s < 1.0:
        raise DomainError(f"s must lie in [0, 1), got {s}")
    return s


@dataclass(frozen=True)
class GaussianForm:
    """Coefficients of ``exp(-A x1**2 - B x2**2 + 2 C x1 x2)``."""

    A: complex
    B: complex
    C: complex

    @property
    def A1(self) -> float:
        return self.A.real

    @property
    def B1(self) -> float:
        return self.B.real

    @property
    def C1(self) -> float:
        return self.C.real

    @property
    def real_det(self) -> float:
        """``A1 B1 - C1**2``, positive iff the Gaussian is normalisable."""
        return self.A1 * self.B1 - self.C1**2

    @property
    def is_normalizable(self) -> bool:
        return self.A1 > 0 and self.B1 > 0 and self.real_det > 0

    def check(self) -> "GaussianForm":
        if not self.is_normalizable:
            raise DomainError(f"Gaussian form is not normalisable: {self}")
        return self

    @classmethod
    def vacuum(cls) -> "GaussianForm":
        return cls(0.5 + 0j, 0.5 + 0j, 0j)


def rotate_mode_coefficient(w: complex, theta: float) -> complex:
    """Action of ``exp(-i theta n)`` on ``w`` in ``exp(-w x**2 / 2)``.

    Written in terms of ``w`` and ``1/w`` so strong squeezing does not square
    into overflow.
    """
    c, s = math.cos(theta), math.sin(theta)
    if w == 0:
        raise DomainError("mode coefficient must be non-zero")
    w = complex(w)
    if s == 0.0:
        return w
    if w.imag == 0.0 and w.real > 0.0:
        # real positive input: separate real and imaginary parts explicitly
        w = w.real
        denom = c * c / w + w * s * s
        return complex(1.0 / denom, s * c * (1.0 / w - w) / denom)
    return (w * c + 1j * s) / (c + 1j * w * s)


def gaussian_form(params: SqueezeParams) -> GaussianForm:
    """Quadratic-form coefficients of the squeezed vacuum described by ``params``."""
    alpha1 = rotate_mode_coefficient(math.exp(2 * params.r1), params.gamma) / 2
    alpha2 = rotate_mode_coefficient(math.exp(2 * params.r2), -params.gamma) / 2
    c, s = math.cos(params.phi), math.sin(params.phi)
    A = c * c * alpha1 + s * s * alpha2
    B = s * s * alpha1 + c * c * alpha2
    C = c * s * (alpha1 - alpha2)
    return GaussianForm(complex(A), complex(B), complex(C))


def wavefunction(form: GaussianForm, rho: float, x1, x2):
    """Normalised two-mode wavefunction; accepts scalars or numpy arrays."""
    norm = math.sqrt(2.0 / math.pi) * form.real_det**0.25
    exponent = -form.A * x1**2 - form.B * x2**2 + 2 * form.C * x1 * x2 + 1j * rho
    if np.ndim(exponent) == 0:
        return norm * cmath.exp(exponent)
    return norm * np.exp(exponent)
