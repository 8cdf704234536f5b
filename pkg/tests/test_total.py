import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squeezestats.errors import DomainError
from squeezestats.oracle import build_state_operator
from squeezestats.state import SqueezeParams
from squeezestats.total import (
    certified_nmax,
    mean_tail_bound,
    mean_total_photons,
    single_mode_pmf,
    single_mode_pmf_array,
    tail_bound,
    total_pmf_closed,
    total_pmf_convolution,
    total_pmf_table,
)

s_values = st.floats(0.0, 0.99)


def single_mode_exact(s, n):
    """Single-mode term in rationals: sqrt(1-s) s^(n/2) C(n, n/2) / 2^n."""
    if n % 2:
        return 0.0
    k = n // 2
    return math.sqrt(1 - s) * float(Fraction(s) ** k * math.comb(n, k) / 2**n)


def test_single_mode_examples():
    assert single_mode_pmf(0.3, 1) == 0.0
    assert single_mode_pmf(0.0, 0) == 1.0
    assert single_mode_pmf(0.0, 4) == 0.0
    assert single_mode_pmf(0.5, 2) == pytest.approx(math.sqrt(0.5) * 0.5 * 0.25 * 2, rel=1e-15)
    assert single_mode_pmf(0.5, 2) == pytest.approx(0.1767767, abs=1e-7)


@given(s_values, st.integers(0, 400))
def test_single_mode_against_rational_terms(s, n):
    ref = single_mode_exact(s, n)
    assert single_mode_pmf(s, n) == pytest.approx(ref, rel=1e-12, abs=1e-300)
    assert single_mode_pmf_array(s, n)[n] == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_single_mode_large_n_no_overflow():
    assert 0 < single_mode_pmf(0.999, 5000) < 1


def test_single_mode_against_operator_oracle():
    for r in (0.3, 0.8, 1.2):
        probs = build_state_operator(SqueezeParams(r, 0.0), 60).probabilities[:, 0]
        exact = single_mode_pmf_array(math.tanh(r) ** 2, 60)
        assert np.max(np.abs(probs - exact)) <= 1e-9


def test_convolution_examples():
    assert total_pmf_convolution(0.5, 0.7, 5) == 0.0
    assert total_pmf_convolution(0.0, 0.0, 0) == 1.0
    expected = math.sqrt(0.5) * math.sqrt(0.01) * (0.5 + 0.99) / 2
    assert total_pmf_convolution(0.5, 0.99, 2) == pytest.approx(expected, rel=1e-14)
    assert total_pmf_convolution(0.5, 0.99, 2) == pytest.approx(0.0526795, abs=1e-7)


def test_closed_examples():
    for s1, s2 in ((0.1, 0.7), (0.99, 0.0), (0.5, 0.5)):
        assert total_pmf_closed(s1, s2, 0) == pytest.approx(math.sqrt((1 - s1) * (1 - s2)), rel=1e-15)
    assert total_pmf_closed(0.5, 0.99, 1) == pytest.approx(total_pmf_convolution(0.5, 0.99, 2), rel=1e-14)
    assert total_pmf_closed(0.0, 0.0, 3) == 0.0


@given(st.floats(0.0, 0.999), st.integers(0, 300))
def test_equal_squeezing_is_geometric(s, k):
    assert total_pmf_closed(s, s, k) == pytest.approx((1 - s) * s**k, rel=1e-12, abs=1e-300)


@given(s_values, s_values, st.integers(0, 200))
def test_symmetry(s1, s2, k):
    a, b = total_pmf_closed(s1, s2, k), total_pmf_closed(s2, s1, k)
    assert a == pytest.approx(b, rel=1e-12, abs=1e-300)


@settings(max_examples=100, deadline=None)
@given(s_values, s_values, st.integers(0, 200))
def test_closed_matches_convolution(s1, s2, k):
    conv = total_pmf_convolution(s1, s2, 2 * k)
    assert abs(total_pmf_closed(s1, s2, k) - conv) <= 1e-10 * max(conv, 1e-300)


def test_one_mode_unsqueezed_reduces_to_single_mode():
    for k in range(50):
        assert total_pmf_closed(0.0, 0.6, k) == pytest.approx(single_mode_pmf(0.6, 2 * k), rel=1e-12)


def test_table_examples():
    t = total_pmf_table(0.0, 0.0, 4)
    assert list(t.values) == [1, 0, 0, 0, 0]
    assert t.tail_bound == 0.0
    s = 0.5
    t = total_pmf_table(s, s, 200)
    k = np.arange(101)
    assert np.allclose(np.cumsum(t.values[::2]), 1 - s ** (k + 1), rtol=0, atol=1e-14)


@given(s_values, s_values, st.integers(0, 300))
@settings(deadline=None)
def test_table_normalisation(s1, s2, n_max):
    t = total_pmf_table(s1, s2, n_max)
    total = t.total
    assert total <= 1 + 1e-12
    assert total + t.tail_bound >= 1 - 1e-12
    assert np.all(t.values[1::2] == 0.0)
    assert np.all((t.values >= 0) & (t.values <= 1))


@given(s_values, s_values, st.integers(0, 200))
@settings(deadline=None)
def test_table_methods_agree(s1, s2, n_max):
    a = total_pmf_table(s1, s2, n_max).values
    b = total_pmf_table(s1, s2, n_max, method="convolution").values
    assert np.allclose(a, b, rtol=1e-10, atol=1e-300)


def test_tail_bound_exact_for_equal_squeezing():
    s = 0.7
    for n_max in (0, 2, 10, 51):
        true_tail = s ** (n_max // 2 + 1)
        assert tail_bound(s, s, n_max) == pytest.approx(true_tail, rel=1e-12)


def test_tail_bound_dominates_true_tail():
    s1, s2 = 0.2, 0.9
    full = total_pmf_table(s1, s2, 2000, method="convolution").values
    for n_max in (0, 10, 40, 100):
        true_tail = math.fsum(full[n_max + 1:])
        assert true_tail <= tail_bound(s1, s2, n_max)
    assert tail_bound(0.5, 0.99, 4) <= 1.0


@pytest.mark.parametrize("s1, s2", [(0.1, 0.3), (0.5, 0.99), (0.0, 0.8), (0.7, 0.7)])
def test_mean_total_photons(s1, s2):
    n_max = certified_nmax(s1, s2, mass_tol=1e-14, mean_tol=1e-10)
    assert mean_tail_bound(s1, s2, n_max) <= 1e-10
    t = total_pmf_table(s1, s2, n_max, method="convolution")
    assert t.mean() == pytest.approx(mean_total_photons(s1, s2), abs=1e-8)
    r1, r2 = math.atanh(math.sqrt(s1)), math.atanh(math.sqrt(s2))
    assert mean_total_photons(s1, s2) == pytest.approx(math.sinh(r1) ** 2 + math.sinh(r2) ** 2, rel=1e-12)


def test_mean_against_operator_oracle():
    p = SqueezeParams(0.7, 1.0, 0.9, 0.4)
    probs = build_state_operator(p, 80).probabilities
    n1, n2 = np.indices(probs.shape)
    keep = n1 + n2 <= 80
    mean = math.fsum(((n1 + n2) * probs)[keep])
    assert mean == pytest.approx(math.sinh(0.7) ** 2 + math.sinh(1.0) ** 2, abs=1e-8)


def test_domain_errors():
    with pytest.raises(DomainError):
        total_pmf_closed(1.0, 0.5, 1)
    with pytest.raises(DomainError):
        total_pmf_closed(0.5, 0.5, -1)
    with pytest.raises(DomainError):
        total_pmf_convolution(0.5, 0.5, -2)
    with pytest.raises(DomainError):
        single_mode_pmf(-0.1, 2)
    with pytest.raises(DomainError):
        total_pmf_table(0.5, 0.5, -1)
    with pytest.raises(ValueError):
        total_pmf_table(0.5, 0.5, 4, method="magic")
