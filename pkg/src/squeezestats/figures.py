"""Named, versioned parameter presets for the two reference plots."""

from __future__ import annotations

import math

import numpy as np

from squeezestats.joint import Pmf2D, joint_pmf_binned, joint_pmf_table
from squeezestats.state import SqueezeParams
from squeezestats.total import Pmf1D, total_pmf_table

PRESET_VERSION = 1

# (s1, s2, line style): dashed weak, solid strong, dotted asymmetric
FIGURE1_SERIES = (
    (0.5, 0.5, "dashed"),
    (0.99, 0.99, "solid"),
    (0.5, 0.99, "dotted"),
)
FIGURE1_NMAX = 200

FIGURE2_PARAMS = SqueezeParams(r1=3.0, r2=5.0, phi=math.pi / 5, gamma=2 * math.pi / 9)
FIGURE2_MASS = 0.99
# window is sized for this much total-number mass so the captured mass clears FIGURE2_MASS
FIGURE2_WINDOW_MASS = 0.995
FIGURE2_MAX_SIDE = 400
FIGURE2_DETAIL = 60


def figure1_tables() -> list[Pmf1D]:
    return [total_pmf_table(s1, s2, FIGURE1_NMAX) for s1, s2, _ in FIGURE1_SERIES]


def window_for_mass(params: SqueezeParams, mass: float) -> int:
    """Smallest even ``n`` with ``sum_{n' <= n} W_n' >= mass``."""
    n_max = 64
    while True:
        table = total_pmf_table(params.s1, params.s2, n_max, method="convolution")
        cumulative = np.cumsum(table.values)
        if cumulative[-1] >= mass:
            n = int(np.searchsorted(cumulative, mass))
            return n + n % 2
        n_max *= 2


def figure2_tables(params: SqueezeParams = FIGURE2_PARAMS) -> tuple[Pmf2D, Pmf2D]:
    """Binned table over a window holding at least FIGURE2_MASS, and a
    per-entry detail table for ``n1, n2 <= FIGURE2_DETAIL``."""
    n_total = window_for_mass(params, FIGURE2_WINDOW_MASS)
    bin_width = max(1, math.ceil((n_total + 1) / FIGURE2_MAX_SIDE))
    binned = joint_pmf_binned(params, n_total, bin_width)
    detail = joint_pmf_table(params, FIGURE2_DETAIL, FIGURE2_DETAIL)
    return binned, detail
