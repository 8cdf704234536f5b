"""Overflow-safe special functions.

Everything here works at large indices: factorials live in log space, the
terminating hypergeometric series is summed from exactly rescaled terms, and
the associated Legendre recurrence is renormalised by powers of two at every
step so that neither degree nor argument can overflow an intermediate.

Legendre convention
-------------------
``P_l^m(z) = (z**2 - 1)**(m/2) * d^m P_l / dz^m`` with no Condon-Shortley
phase.  The branch of ``(z**2 - 1)**(1/2)`` is ``sqrt(z - 1) * sqrt(z + 1)``
with principal square roots, so ``P_1^1(z)`` equals that product exactly.
Only ``|P_l^m|`` is used downstream, and ``|P_l^m|`` is independent of the
branch and of the phase convention.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np
from scipy.special import gammaln

from squeezestats.errors import DomainError

_LN2 = math.log(2.0)
_EXACT_FACTORIAL_LIMIT = 1024
_EXACT_BINOMIAL_LIMIT = 60
# Relative error budget that triggers the exact-rational fallback of the
# hypergeometric sum.
_HYP_TOLERANCE = 1e-12
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class LogComplex:
    """A complex number stored as ``exp(log_magnitude) * phase``.

    ``log_magnitude == -inf`` encodes an exact zero; ``phase`` is then
    meaningless and conventionally 1.
    """

    log_magnitude: float
    phase: complex = 1.0 + 0.0j

    @classmethod
    def from_complex(cls, value: complex) -> "LogComplex":
        value = complex(value)
        if value == 0:
            return cls.zero()
        # rescale first so subnormal components keep full precision
        _, shift = math.frexp(max(abs(value.real), abs(value.imag)))
        scaled = complex(math.ldexp(value.real, -shift), math.ldexp(value.imag, -shift))
        mag = abs(scaled)
        return cls(math.log(mag) + shift * _LN2, scaled / mag)

    @classmethod
    def zero(cls) -> "LogComplex":
        return cls(-math.inf, 1.0 + 0.0j)

    @property
    def is_zero(self) -> bool:
        return self.log_magnitude == -math.inf

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        return math.exp(self.log_magnitude) * self.phase

    def __abs__(self) -> float:
        return 0.0 if self.is_zero else math.exp(self.log_magnitude)

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        phase = self.phase * other.phase
        return LogComplex(self.log_magnitude + other.log_magnitude, phase / abs(phase))

    def __pow__(self, n: int) -> "LogComplex":
        if n == 0:
            return LogComplex(0.0)
        if self.is_zero:
            return LogComplex.zero()
        return LogComplex(n * self.log_magnitude, self.phase**n)


@lru_cache(maxsize=None)
def _log_factorial_exact(n: int) -> float:
    return math.log(math.factorial(n))


def log_factorial(n: int) -> float:
    """Return ``ln(n!)``."""
    n = int(n)
    if n < 0:
        raise DomainError(f"log_factorial needs n >= 0, got {n}")
    if n < 2:
        return 0.0
    if n < _EXACT_FACTORIAL_LIMIT:
        return _log_factorial_exact(n)
    return math.lgamma(n + 1.0)


def log_binomial(n: int, k: int) -> float:
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"binomial needs 0 <= k <= n, got n={n}, k={k}")
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k)


def binomial(n: int, k: int) -> float:
    """Binomial coefficient as a float; exact integer arithmetic for n <= 60."""
    n, k = int(n), int(k)
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"binomial needs 0 <= k <= n, got n={n}, k={k}")
    if n <= _EXACT_BINOMIAL_LIMIT:
        return float(math.comb(n, k))
    return math.exp(log_binomial(n, k))


def log_double_factorial_odd(m: int) -> float:
    """``ln((2m - 1)!!)``, with ``(-1)!! = 1``."""
    return log_factorial(2 * m) - m * _LN2 - log_factorial(m)


# ---------------------------------------------------------------------------
# Terminating Gauss hypergeometric series
# ---------------------------------------------------------------------------

def _check_hyp_args(k: int, c: float) -> None:
    if k < 0:
        raise DomainError(f"terminating 2F1 needs k >= 0, got {k}")
    if c <= 0 and float(c).is_integer() and -c < k:
        raise DomainError(f"c = {c} makes (c)_m vanish inside the terminating range")


def _scaled_terms(k: int, b: float, c: float, z: float) -> tuple[list[float], list[int]]:
    """Terms of 2F1(-k, b; c; z) as mantissas with separate binary exponents.

    Consecutive terms are generated from their ratio; the running term is
    renormalised by an exact power of two whenever it leaves [2**-256, 2**256],
    so the only rounding is one multiply and one divide per step.
    """
    mants = [1.0]
    exps = [0]
    t, e = 1.0, 0
    for m in range(k):
        t *= (m - k) * (b + m) * z / ((c + m) * (m + 1))
        if t == 0.0:
            break
        a = abs(t)
        if a > 2.0**256 or a < 2.0**-256:
            _, shift = math.frexp(a)
            t = math.ldexp(t, -shift)
            e += shift
        mants.append(t)
        exps.append(e)
    return mants, exps


def _sum_scaled(mants: list[float], exps: list[int]) -> tuple[float, int, float]:
    """Return (mantissa, exponent, condition number) of the exact sum."""
    top = max(e + math.frexp(t)[1] for t, e in zip(mants, exps))
    shifted = [math.ldexp(t, e - top) for t, e in zip(mants, exps)]
    total = math.fsum(shifted)
    size = math.fsum(abs(x) for x in shifted)
    cond = math.inf if total == 0.0 else size / abs(total)
    return total, top, cond


def _log_of_sum(total: float, top: int) -> tuple[float, float]:
    if total == 0.0:
        return -math.inf, 0.0
    return math.log(abs(total)) + top * _LN2, math.copysign(1.0, total)


def _exact_hyp2f1(k: int, b: float, c: float, z: float) -> tuple[float, float]:
    fb, fc, fz = Fraction(b), Fraction(c), Fraction(z)
    term = Fraction(1)
    total = Fraction(1)
    for m in range(k):
        term *= (m - k) * (fb + m) * fz / ((fc + m) * (m + 1))
        if term == 0:
            break
        total += term
    if total == 0:
        return -math.inf, 0.0
    sign = 1.0 if total > 0 else -1.0
    total = abs(total)
    return math.log(total.numerator) - math.log(total.denominator), sign


def log_hyp2f1_terminating(k: int, b: float, c: float, z: float) -> tuple[float, float]:
    """Return ``(ln|F|, sign F)`` for ``F = 2F1(-k, b; c; z)``.

    The direct series and its Pfaff transform
    ``(1 - z)**k * 2F1(-k, c - b; c; z / (z - 1))`` are both exact finite sums.
    Whichever has the smaller cancellation ratio ``sum|t| / |sum t|`` is used;
    if even that one cannot meet the error budget, the series is summed in
    exact rational arithmetic from the (exactly representable) float inputs.
    """
    k = int(k)
    _check_hyp_args(k, c)
    budget = _HYP_TOLERANCE / (2.0 * (k + 1) * _EPS)

    def direct():
        total, top, cond = _sum_scaled(*_scaled_terms(k, b, c, z))
        return _log_of_sum(total, top), cond

    def pfaff():
        total, top, cond = _sum_scaled(*_scaled_terms(k, c - b, c, z / (z - 1.0)))
        log_abs, sign = _log_of_sum(total, top)
        if z > 1.0 and k % 2:
            sign = -sign
        return (log_abs + k * math.log(abs(1.0 - z)), sign), cond

    # for 0 < z < 1 the direct series alternates while the transformed one
    # does not, so the transform is tried first there
    candidates = [pfaff, direct] if 0.0 < z < 1.0 else [direct, pfaff]
    for candidate in candidates:
        if candidate is pfaff and z == 1.0:
            continue
        result, cond = candidate()
        if cond <= budget:
            return result
    return _exact_hyp2f1(k, b, c, z)


def hyp2f1_terminating(k: int, b: float, c: float, z: float) -> float:
    """Evaluate the degree-``k`` polynomial ``2F1(-k, b; c; z)``.

    Raises :class:`DomainError` when ``c`` is a non-positive integer that makes
    a denominator Pochhammer symbol vanish before the series terminates.
    """
    log_abs, sign = log_hyp2f1_terminating(k, b, c, z)
    if sign == 0.0:
        return 0.0
    return sign * math.exp(log_abs)


# ---------------------------------------------------------------------------
# Associated Legendre functions
# ---------------------------------------------------------------------------

def _rescale(prev: complex, cur: complex) -> tuple[complex, complex, int]:
    size = max(abs(prev), abs(cur))
    if size == 0.0 or 2.0**-128 < size < 2.0**128:
        return prev, cur, 0
    _, shift = math.frexp(size)
    # ldexp per component: 2.0**-shift itself overflows for subnormal sizes
    return _ldexp_complex(prev, -shift), _ldexp_complex(cur, -shift), shift


def _ldexp_complex(z: complex, e: int) -> complex:
    return complex(math.ldexp(z.real, e), math.ldexp(z.imag, e))


def _ldexp_complex_array(z: np.ndarray, e: np.ndarray) -> np.ndarray:
    return np.ldexp(z.real, e) + 1j * np.ldexp(z.imag, e)


def legendre_reduced(l: int, m: int, y: complex, tau: complex = 1.0) -> LogComplex:
    """Homogenised derivative part of the associated Legendre function.

    Returns ``R_l^m(y, tau) = t**(l-m) * (d^m P_l / dz^m)(y / t)`` with
    ``t**2 = tau``.  This is a polynomial in ``y`` and ``tau`` (only powers
    ``y**(l-m-2j) * tau**j`` appear), so it stays finite as ``tau -> 0``.
    It obeys

        (l - m + 1) R_{l+1} = (2l + 1) y R_l - (l + m) tau R_{l-1}

    with ``R_m = (2m - 1)!!`` and ``R_{m+1} = (2m + 1) y R_m``.  With
    ``tau = 1`` it is ``d^m P_l / dz^m`` evaluated at ``z = y``.
    """
    l, m = int(l), int(m)
    if m < 0 or m > l:
        raise DomainError(f"associated Legendre needs 0 <= m <= l, got l={l}, m={m}")
    log_seed = log_double_factorial_odd(m)
    if l == m:
        return LogComplex(log_seed)
    y, tau = complex(y), complex(tau)
    prev, cur = 1.0 + 0.0j, (2 * m + 1) * y
    binary_exp = 0
    for deg in range(m + 1, l):
        prev, cur = cur, ((2 * deg + 1) * y * cur - (deg + m) * tau * prev) / (deg - m + 1)
        prev, cur, shift = _rescale(prev, cur)
        binary_exp += shift
        if prev == 0 and cur == 0:
            return LogComplex.zero()
    if cur == 0:
        return LogComplex.zero()
    value = LogComplex.from_complex(cur)
    return LogComplex(value.log_magnitude + log_seed + binary_exp * _LN2, value.phase)


def legendre_sqrt_factor(z: complex) -> complex:
    """The branch ``sqrt(z - 1) * sqrt(z + 1)`` of ``(z**2 - 1)**(1/2)``."""
    z = complex(z)
    return cmath.sqrt(z - 1) * cmath.sqrt(z + 1)


def assoc_legendre(l: int, m: int, z: complex) -> LogComplex:
    """Associated Legendre function ``P_l^m(z)`` of complex argument.

    Evaluated by upward recurrence in degree (see :func:`legendre_reduced`)
    and returned in log-magnitude form, so ``l`` in the thousands is fine.
    """
    reduced = legendre_reduced(l, m, z, 1.0)
    if m == 0:
        return reduced
    root = LogComplex.from_complex(legendre_sqrt_factor(z))
    return reduced * root**m


def legendre_reduced_diagonals(
    l_max: int, y: complex, tau: complex
) -> Iterator[tuple[int, np.ndarray]]:
    """Vectorised ``ln|R_{m+d}^m(y, tau)|`` for all ``m + d <= l_max``.

    Yields ``(d, logs)`` for ``d = 0 .. l_max`` where ``logs[m]`` belongs to
    degree ``l = m + d`` and order ``m = 0 .. l_max - d``.  Each order carries
    its own power-of-two scale; exact zeros come out as ``-inf``.
    """
    l_max = int(l_max)
    if l_max < 0:
        raise DomainError("l_max must be non-negative")
    y, tau = complex(y), complex(tau)
    m = np.arange(l_max + 1, dtype=float)
    log_seed = gammaln(2 * m + 1) - m * _LN2 - gammaln(m + 1)

    yield 0, log_seed.copy()
    if l_max == 0:
        return

    prev = np.ones(l_max + 1, dtype=complex)
    cur = (2 * m + 1) * y * prev
    binary_exp = np.zeros(l_max + 1)
    with np.errstate(divide="ignore"):
        for d in range(1, l_max + 1):
            n = l_max - d + 1
            if d > 1:
                mm = m[:n]
                prev, cur = cur[:n], (
                    (2 * mm + 2 * d - 1) * y * cur[:n] - (2 * mm + d - 1) * tau * prev[:n]
                ) / d
                binary_exp = binary_exp[:n]
                size = np.maximum(np.abs(prev), np.abs(cur))
                _, shift = np.frexp(size)
                prev = _ldexp_complex_array(prev, -shift)
                cur = _ldexp_complex_array(cur, -shift)
                binary_exp = binary_exp + shift
            else:
                prev, cur, binary_exp = prev[:n], cur[:n], binary_exp[:n]
            yield d, np.log(np.abs(cur)) + log_seed[:n] + binary_exp * _LN2
