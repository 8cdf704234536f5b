"""Cross-module invariant checks behind the ``verify`` command."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from squeezestats.joint import joint_pmf_table
from squeezestats.oracle import build_state_operator
from squeezestats.state import SqueezeParams
from squeezestats.total import (
    certified_nmax,
    mean_total_photons,
    single_mode_pmf_array,
    total_pmf_closed,
    total_pmf_convolution,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: worst={self.worst:.3e} tol={self.tolerance:.0e}"


def _result(name: str, worst: float, tol: float) -> CheckResult:
    return CheckResult(name, bool(worst <= tol), float(worst), tol)


def s_grid(points: int) -> np.ndarray:
    """``points`` equally spaced values over (0, 0.99]."""
    return 0.99 * np.arange(1, points + 1) / points


def random_params(rng: np.random.Generator, count: int, r_max: float = 1.2) -> list[SqueezeParams]:
    out = []
    for _ in range(count):
        r1, r2 = rng.uniform(-r_max, r_max, size=2)
        phi, gamma = rng.uniform(0.0, math.pi, size=2)
        out.append(SqueezeParams(float(r1), float(r2), float(phi), float(gamma)))
    return out


def check_closed_vs_convolution(points: int, k_max: int, perturb_norm: float = 0.0) -> CheckResult:
    worst = 0.0
    for s1 in s_grid(points):
        for s2 in s_grid(points):
            for k in range(k_max + 1):
                closed = total_pmf_closed(s1, s2, k) * (1.0 + perturb_norm)
                conv = total_pmf_convolution(s1, s2, 2 * k)
                worst = max(worst, abs(closed - conv) / max(conv, 1e-300))
    return _result("closed_vs_convolution", worst, 1e-10)


def check_symmetric_law(k_max: int = 100) -> tuple[CheckResult, CheckResult]:
    worst_value, worst_step = 0.0, 0.0
    for s in (0.5, 0.99):
        w = np.array([total_pmf_closed(s, s, k) for k in range(k_max + 1)])
        exact = (1.0 - s) * s ** np.arange(k_max + 1)
        worst_value = max(worst_value, float(np.max(np.abs(w - exact) / exact)))
        steps = np.diff(np.log(w))
        worst_step = max(worst_step, float(np.max(np.abs(steps - math.log(s)))))
    return _result("symmetric_law", worst_value, 1e-12), _result("exponential_steps", worst_step, 1e-10)


def check_oracle_equivalence(params_list: list[SqueezeParams], cutoff: int) -> tuple[CheckResult, CheckResult]:
    worst, worst_parity = 0.0, 0.0
    n1, n2 = np.indices((cutoff + 1, cutoff + 1))
    in_range = n1 + n2 <= cutoff
    odd = (n1 + n2) % 2 == 1
    for p in params_list:
        oracle = build_state_operator(p, cutoff).probabilities
        closed = joint_pmf_table(p, cutoff, cutoff).values
        worst = max(worst, float(np.max(np.abs(closed - oracle)[in_range])))
        if np.any(closed[odd] != 0.0):
            worst_parity = math.inf
        worst_parity = max(worst_parity, float(np.max(oracle[odd])))
    return _result("oracle_equivalence", worst, 1e-8), _result("parity", worst_parity, 1e-10)


def check_rotation_invariance(r1: float = 0.8, r2: float = 1.1, grid: int = 5, n_max: int = 40) -> CheckResult:
    s1, s2 = math.tanh(r1) ** 2, math.tanh(r2) ** 2
    closed = np.array([total_pmf_closed(s1, s2, k) for k in range(n_max // 2 + 1)])
    worst = 0.0
    angles = np.arange(grid) * math.pi / grid
    for phi in angles:
        for gamma in angles:
            w = joint_pmf_table(SqueezeParams(r1, r2, float(phi), float(gamma)), n_max, n_max).values
            for k in range(n_max // 2 + 1):
                n = 2 * k
                diag = math.fsum(w[np.arange(n + 1), n - np.arange(n + 1)])
                worst = max(worst, abs(diag - closed[k]))
    return _result("rotation_invariance", worst, 1e-9)


def check_factorization(rng: np.random.Generator, count: int, n_max: int = 40) -> CheckResult:
    worst = 0.0
    for _ in range(count):
        r1, r2 = rng.uniform(-1.2, 1.2, size=2)
        gamma = rng.uniform(0.0, math.pi)
        p = SqueezeParams(float(r1), float(r2), 0.0, float(gamma))
        w = joint_pmf_table(p, n_max, n_max).values
        product = np.outer(single_mode_pmf_array(p.s1, n_max), single_mode_pmf_array(p.s2, n_max))
        worst = max(worst, float(np.max(np.abs(w - product))))
    return _result("factorization", worst, 1e-10)


def check_moments(params_list: list[SqueezeParams]) -> CheckResult:
    worst = 0.0
    for p in params_list:
        n_max = certified_nmax(p.s1, p.s2, mass_tol=1e-12, mean_tol=1e-8)
        w = joint_pmf_table(p, n_max, n_max).values
        n1, n2 = np.indices(w.shape)
        keep = n1 + n2 <= n_max
        mean_total = math.fsum(((n1 + n2) * w)[keep])
        worst = max(worst, abs(mean_total - mean_total_photons(p.s1, p.s2)))
    return _result("moments", worst, 1e-6)


def run_checks(level: str = "quick", seed: int = 0, perturb_norm: float = 0.0,
               report: Callable[[str], None] | None = None) -> list[CheckResult]:
    """Run every invariant check; ``perturb_norm`` scales the closed form by
    ``1 + perturb_norm`` inside the closed-vs-convolution check (mutation hook)."""
    full = level == "full"
    rng = np.random.default_rng(seed)
    results = []

    def record(result: CheckResult):
        results.append(result)
        if report:
            report(result.line())

    record(check_closed_vs_convolution(10 if full else 4, 200 if full else 40, perturb_norm))
    for r in check_symmetric_law():
        record(r)
    for r in check_oracle_equivalence(random_params(rng, 25 if full else 3), 60 if full else 30):
        record(r)
    record(check_rotation_invariance(grid=5 if full else 2))
    record(check_factorization(rng, 10 if full else 3))
    record(check_moments(random_params(rng, 5 if full else 2)))
    return results
