import numpy as np
import pytest

from dielquant import fields, quantization as qz
from dielquant.quantization import CORRECTED, GINZBURG, ModeSet

GRID = 8


def three_modes(n=1.0, c=1.0):
    return ModeSet((1.0, 1.0, 1.0), [(0, 0, 1), (1, 0, 0), (1, 1, 0)], n=n, c=c)


@pytest.mark.parametrize("k", [(0, 0, 1), (1, 0, 0), (1, 1, 0), (0.3, -2.0, 0.7)])
def test_polarization_basis_orthonormal_and_transverse(k):
    e1, e2 = qz.polarization_basis(k)
    khat = np.asarray(k) / np.linalg.norm(k)
    np.testing.assert_allclose([e1 @ e1, e2 @ e2, e1 @ e2, e1 @ khat, e2 @ khat], [1, 1, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(np.cross(e1, e2), khat, atol=1e-15)


def test_modeset_basics():
    modes = three_modes(n=2.0)
    assert len(modes) == 6
    assert modes.volume == 1.0
    assert modes.min_grid() == 3
    assert modes.omega(2) == pytest.approx(2 * np.pi * np.sqrt(2) / 2.0)


def test_modeset_rejects_zero_wavevector_and_bad_index():
    with pytest.raises(ValueError):
        ModeSet((1, 1, 1), [(0, 0, 0)])
    with pytest.raises(ValueError):
        ModeSet((1, 1, 1), [(1, 0, 0)], n=0.5)
    with pytest.raises(ValueError):
        three_modes().polarization(0, 3)


def test_single_mode_value():
    modes = ModeSet((1, 1, 1), [(1, 0, 0)])
    u = qz.mode_function(modes, 0, 1, [0.25, 0, 0])
    e = modes.polarization(0, 1)
    np.testing.assert_allclose(u, e * np.exp(1j * np.pi / 2), atol=1e-15)


def test_mode_function_rejects_outside_box():
    with pytest.raises(ValueError):
        qz.mode_function(three_modes(), 0, 1, [1.5, 0, 0])


def test_grid_below_nyquist_rejected():
    with pytest.raises(ValueError, match="need G >= 3"):
        qz.orthonormality_residual(three_modes(), 2)


def test_orthonormality():
    assert qz.orthonormality_residual(three_modes(), GRID) < 1e-12


def test_overlap_is_hermitian_identity_with_asymmetric_box():
    modes = ModeSet((1.0, 2.0, 0.5), [(1, 0, 0), (0, 2, 1), (-1, 1, 0)])
    S = qz.overlap_matrix(modes, 6)
    np.testing.assert_allclose(S, np.eye(6), atol=1e-12)


def test_curl_identity_all_pairs():
    modes = three_modes()
    worst = max(qz.curl_identity_residual(modes, l, a, m, b, GRID)
                for l, a in modes.labels() for m, b in modes.labels())
    assert worst < 1e-12


@pytest.mark.parametrize("n", [1.0, 1.5, 2.4])
def test_discrete_lagrangian_coefficients(n):
    modes = three_modes(n)
    M, K = qz.discrete_lagrangian_matrices(modes, GRID)
    omegas = np.array([modes.omega(l) for l, _ in modes.labels()])
    np.testing.assert_allclose(np.diag(M).real, n ** 2, rtol=1e-10)
    np.testing.assert_allclose(np.diag(K).real, n ** 2 * omegas ** 2, rtol=1e-10)
    np.testing.assert_allclose(M - np.diag(np.diag(M)), 0, atol=1e-10)


def test_field_lagrangian_matches_mode_sum():
    modes = three_modes(1.7, c=2.0)
    rng = np.random.default_rng(11)
    q, qdot = rng.normal(size=(2, 6))
    assert qz.field_lagrangian(modes, q, qdot, GRID) == pytest.approx(qz.mode_lagrangian(modes, q, qdot), rel=1e-10)


def test_momentum_coefficients():
    assert qz.conjugate_momentum_coefficient(GINZBURG, 1.5) == 2.25
    assert qz.conjugate_momentum_coefficient(CORRECTED, 1.5) == 1.5
    assert qz.conjugate_momentum_coefficient("Corrected", 1.0) == qz.conjugate_momentum_coefficient("Ginzburg", 1.0)


def test_transform_is_canonical():
    # a scaling P = s p, Q = q / s preserves the Poisson bracket
    for scheme in (GINZBURG, CORRECTED):
        sp, sq = qz.transform_scales(scheme, 2.0)
        assert sp * sq == pytest.approx(1.0, rel=1e-15)


def test_corrected_transform_example():
    P, Q = qz.canonical_transform(CORRECTED, 4.0, 1.0, 1.0)
    assert (P, Q) == (2.0, 0.5)


@pytest.mark.parametrize("n", [1.0, 1.5, 2.4])
def test_ginzburg_reaches_normal_form(n):
    a, b = qz.transformed_hamiltonian_coefficients(GINZBURG, n, 1.3)
    assert a == pytest.approx(1.0, rel=1e-14)
    assert b == pytest.approx(1.3 ** 2, rel=1e-14)


@pytest.mark.parametrize("n", [1.0, 1.5, 2.4])
def test_corrected_oscillator_quantum(n):
    a, b = qz.transformed_hamiltonian_coefficients(CORRECTED, n, 0.8)
    assert qz.oscillator_quantum(a, b, hbar=1.1) == pytest.approx(n * 1.1 * 0.8, rel=1e-14)


def test_prefactor_values():
    assert qz.field_prefactor(GINZBURG, 2.0, 1.0, 1.0) == pytest.approx(np.sqrt(1 / 8))
    assert qz.field_prefactor(CORRECTED, 2.0, 1.0, 1.0) == pytest.approx(0.5)
    assert qz.field_prefactor(CORRECTED, 1.0, 1.0, 1.0) == qz.field_prefactor(GINZBURG, 1.0, 1.0, 1.0)


def test_prefactor_rejects_nonpositive():
    with pytest.raises(ValueError):
        qz.field_prefactor(CORRECTED, 1.5, 0.0, 1.0)


def test_correspondence_headline():
    assert qz.correspondence_residual(GINZBURG, 1.0, 2.0) == pytest.approx(abs(2 - np.sqrt(2)), abs=1e-9)
    assert qz.correspondence_residual(CORRECTED, 1.0, 2.0) < 1e-12


def test_correspondence_matches_classical_refraction():
    # Corrected ratio equals the classical amplitude ratio from the fields module
    for n1, n2 in [(1.0, 1.33), (1.5, 2.4), (2.0, 1.2)]:
        ratio = qz.field_prefactor(CORRECTED, n2, 1.0, 1.0) / qz.field_prefactor(CORRECTED, n1, 1.0, 1.0)
        classical = fields.refracted_amplitude(1.0, fields.MediumInterface(n1, n2))
        assert ratio == pytest.approx(classical, rel=1e-14)


def test_correspondence_same_medium_zero():
    assert qz.correspondence_residual(GINZBURG, 1.7, 1.7) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("n", [1.0, 1.7, 3.0])
def test_energy_ratios(n):
    assert qz.energy_ratio(CORRECTED, n) == pytest.approx(n, rel=1e-12)
    assert qz.energy_ratio(GINZBURG, n) == pytest.approx(1.0, rel=1e-12)


def test_compare_schemes_order_and_reference():
    reports = qz.compare_schemes([2.0, 1.0])
    assert [(r.scheme, r.n) for r in reports] == [("Ginzburg", 1.0), ("Ginzburg", 2.0),
                                                   ("Corrected", 1.0), ("Corrected", 2.0)]
    assert all(r.n_ref == 2.0 for r in reports)
    assert all(r.commutator_scale == pytest.approx(1.0, abs=1e-12) for r in reports)


def test_compare_schemes_headline_row():
    g2 = [r for r in qz.compare_schemes([1.0, 2.0]) if r.scheme == "Ginzburg" and r.n == 2.0][0]
    assert g2.correspondence_residual == pytest.approx(0.585786437627, abs=1e-9)
    assert g2.momentum_coeff == 4.0


def test_compare_schemes_rejects_empty_and_bad_index():
    with pytest.raises(ValueError):
        qz.compare_schemes([])
    with pytest.raises(ValueError):
        qz.compare_schemes([1.0, 0.5])


def test_report_as_dict():
    d = qz.build_report("Corrected", 1.5).as_dict()
    assert d["scheme"] == "Corrected"
    assert d["transform"] == "P = sqrt(n) p, Q = q/sqrt(n)"


@pytest.mark.parametrize("scheme,n,p,q,expected", [
    (GINZBURG, 1.5, 3.0, 2.0, (2.0, 3.0)),
    (CORRECTED, 4.0, 1.0, 2.0, (2.0, 1.0)),
    (GINZBURG, 1.0, 0.3, -0.7, (0.3, -0.7)),
    (CORRECTED, 1.0, 0.3, -0.7, (0.3, -0.7)),
])
def test_canonical_transform_examples(scheme, n, p, q, expected):
    np.testing.assert_allclose(qz.canonical_transform(scheme, n, p, q), expected, rtol=1e-15)


def test_vacuum_prefactor_value():
    assert qz.field_prefactor(GINZBURG, 1.0, 1.0, 1.0) == pytest.approx(np.sqrt(0.5), rel=1e-15)


def test_prefactor_ratio_between_schemes():
    for n in (1.0, 1.33, 2.4):
        ratio = qz.field_prefactor(GINZBURG, n, 0.9, 2.0) / qz.field_prefactor(CORRECTED, n, 0.9, 2.0)
        assert ratio == pytest.approx(1 / np.sqrt(n), rel=1e-12)


def test_build_report_examples():
    c = qz.build_report(CORRECTED, 2.0, n_ref=1.0)
    g = qz.build_report(GINZBURG, 2.0, n_ref=1.0)
    assert c.correspondence_residual < 1e-12
    assert c.energy_ratio == pytest.approx(2.0, rel=1e-12)
    assert c.commutator_scale == pytest.approx(1.0, abs=1e-12)
    assert g.correspondence_residual == pytest.approx(0.585786437627, abs=1e-9)
    assert g.energy_ratio == pytest.approx(1.0, rel=1e-12)


def test_reports_coincide_in_vacuum():
    skip = {"scheme", "transform"}
    c = {k: v for k, v in qz.build_report(CORRECTED, 1.0).as_dict().items() if k not in skip}
    g = {k: v for k, v in qz.build_report(GINZBURG, 1.0).as_dict().items() if k not in skip}
    assert c == g
