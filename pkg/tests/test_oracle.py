import math

import numpy as np
import pytest

from conftest import align_phase
from squeezestats.errors import DomainError, TruncationError
from squeezestats.oracle import (
    annihilation,
    build_state_operator,
    hermite_functions,
    overlap_quadrature,
    quadrature_amplitudes,
    recommended_cutoff,
    squeezed_vacuum_vector,
)
from squeezestats.state import GaussianForm, SqueezeParams, gaussian_form
from squeezestats.total import single_mode_pmf_array


def test_vacuum_amplitudes():
    fock = build_state_operator(SqueezeParams(0, 0, 0.4, 1.0), 10)
    assert abs(fock.amplitudes[0, 0]) == pytest.approx(1.0, abs=1e-12)
    rest = np.abs(fock.amplitudes).copy()
    rest[0, 0] = 0
    assert rest.max() <= 1e-12


@pytest.mark.parametrize("r", [0.2, -0.7, 1.2])
def test_single_mode_matches_closed_pmf(r):
    fock = build_state_operator(SqueezeParams(r, 0.0), 60)
    expected = single_mode_pmf_array(math.tanh(r) ** 2, 60)
    assert np.max(np.abs(fock.probabilities[:, 0] - expected)) <= 1e-9
    assert np.max(fock.probabilities[:, 1:]) <= 1e-24


def test_squeezed_vector_is_real_and_normalised():
    v = squeezed_vacuum_vector(0.8, 80)
    assert v.dtype.kind == "f"
    assert np.sum(v**2) == pytest.approx(1.0, abs=1e-10)
    assert np.all(v[1::2] == 0)


def test_truncation_error_when_cutoff_too_small():
    with pytest.raises(TruncationError):
        squeezed_vacuum_vector(1.5, 10)
    with pytest.raises(TruncationError):
        build_state_operator(SqueezeParams(1.5, 0.3), 4)


def test_annihilation_matrix():
    a = annihilation(5)
    assert a[0, 1] == 1 and a[3, 4] == 2
    comm = a @ a.T - a.T @ a
    assert np.allclose(np.diag(comm)[:-1], 1.0)


def test_unitarity_at_recommended_cutoff(generic_params):
    for p in generic_params[:2]:
        cutoff = recommended_cutoff(max(abs(p.r1), abs(p.r2)))
        fock = build_state_operator(p, cutoff)
        assert fock.norm_captured >= 1 - 1e-9
        assert fock.norm_captured <= 1 + 1e-10


def test_parity_emerges(generic_params):
    for p in generic_params:
        fock = build_state_operator(p, 40)
        n1, n2 = np.indices(fock.amplitudes.shape)
        assert np.max(np.abs(fock.amplitudes[(n1 + n2) % 2 == 1])) <= 1e-10


def test_global_phase_only_changes_amplitudes():
    p = SqueezeParams(0.4, 0.9, 0.5, 1.0)
    a = build_state_operator(p, 20)
    b = build_state_operator(SqueezeParams(0.4, 0.9, 0.5, 1.0, rho=0.7), 20)
    assert np.allclose(b.amplitudes, np.exp(0.7j) * a.amplitudes, rtol=0, atol=1e-15)


def test_hermite_functions_normalised():
    n_max = 200
    x, w = np.polynomial.hermite.hermgauss(260)
    h = hermite_functions(n_max, x, gaussian=False)
    norms = (h**2) @ w
    assert np.max(np.abs(norms - 1.0)) <= 1e-10
    gram = (h * w) @ h.T
    assert np.max(np.abs(gram - np.eye(n_max + 1))) <= 1e-10


def test_hermite_functions_no_overflow_far_out():
    h = hermite_functions(200, np.array([0.0, 25.0, 60.0]))
    assert np.all(np.isfinite(h))
    assert h[0, 0] == pytest.approx(math.pi**-0.25)


def test_quadrature_vacuum_overlap():
    assert overlap_quadrature(GaussianForm.vacuum(), 0, 0) == pytest.approx(1.0, abs=1e-14)
    assert abs(overlap_quadrature(GaussianForm.vacuum(), 2, 0)) <= 1e-14


def test_quadrature_factorises_for_diagonal_form():
    r1, r2 = 0.9, -0.4
    form = gaussian_form(SqueezeParams(r1, r2))
    p1 = single_mode_pmf_array(math.tanh(r1) ** 2, 20)
    p2 = single_mode_pmf_array(math.tanh(r2) ** 2, 20)
    for n1, n2 in ((0, 0), (2, 0), (4, 6), (12, 2)):
        amp = overlap_quadrature(form, n1, n2)
        assert abs(amp) ** 2 == pytest.approx(p1[n1] * p2[n2], rel=1e-9, abs=1e-15)


def test_two_oracles_agree(rng):
    cutoff = 60
    n1, n2 = np.indices((cutoff + 1, cutoff + 1))
    in_range = n1 + n2 <= cutoff
    for _ in range(6):
        r1, r2 = rng.uniform(-1.2, 1.2, size=2)
        phi, gamma = rng.uniform(0, math.pi, size=2)
        p = SqueezeParams(float(r1), float(r2), float(phi), float(gamma))
        operator = build_state_operator(p, cutoff).amplitudes
        quad = quadrature_amplitudes(gaussian_form(p), cutoff)
        quad = align_phase(operator[in_range], quad[in_range])
        assert np.max(np.abs(operator[in_range] - quad)) <= 1e-8


def test_scalar_overlap_matches_matrix():
    form = gaussian_form(SqueezeParams(0.6, 0.2, 1.0, 0.5))
    matrix = quadrature_amplitudes(form, 12)
    for n1, n2 in ((0, 0), (3, 5), (12, 0), (6, 6)):
        assert overlap_quadrature(form, n1, n2) == pytest.approx(matrix[n1, n2], abs=1e-12)


def test_quadrature_rejects_bad_form():
    with pytest.raises(DomainError):
        quadrature_amplitudes(GaussianForm(-0.5, 0.5, 0), 3)
    with pytest.raises(DomainError):
        overlap_quadrature(GaussianForm(0.5, 0.5, 0.9), 0, 0)
