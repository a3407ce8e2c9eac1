import numpy as np
import pytest

from dielquant import fock
from dielquant.fock import FockSpace, QuantizationScheme


def number_state(dim, m):
    v = np.zeros(dim)
    v[m] = 1.0
    return v


def test_ladder_dim2():
    a = fock.ladder_matrix(2)
    assert a[0, 1] == 1
    assert np.count_nonzero(a) == 1


def test_annihilator_dim3_entries():
    a = fock.annihilator(FockSpace(3)).entries
    expected = np.zeros((3, 3))
    expected[0, 1] = 1.0
    expected[1, 2] = np.sqrt(2)
    np.testing.assert_array_equal(a, expected)


def test_annihilator_acts_on_number_states():
    # brute force: a|m> = sqrt(m)|m-1>
    dim = 12
    a = fock.annihilator(FockSpace(dim)).entries
    for m in range(1, dim):
        np.testing.assert_allclose(a @ number_state(dim, m), np.sqrt(m) * number_state(dim, m - 1), atol=0)
    np.testing.assert_array_equal(a @ number_state(dim, 0), 0)


def test_number_operator_dim20():
    a, ad = fock.boson_pair(FockSpace(20))
    num = (ad @ a).entries
    np.testing.assert_allclose(num, np.diag(np.arange(20.0)), atol=1e-13)


def test_creator_is_conjugate_transpose():
    space = FockSpace(7)
    np.testing.assert_array_equal(fock.creator(space).entries, fock.annihilator(space).entries.conj().T)


def test_fock_space_rejects_small_dim():
    with pytest.raises(ValueError):
        FockSpace(2)


def test_commutator_self_is_zero():
    a = fock.annihilator(FockSpace(6))
    assert np.all(fock.commutator(a, a).entries == 0)


def test_commutator_a_adag_dim20():
    a, ad = fock.boson_pair(FockSpace(20))
    c = fock.commutator(a, ad).entries
    expected = np.eye(20)
    expected[19, 19] = -19
    np.testing.assert_allclose(c, expected, atol=1e-12)


def test_diagonal_operators_commute():
    space = FockSpace(5)
    A = fock.OperatorMatrix(space, np.diag([1, 2, 3, 4, 5]))
    B = fock.OperatorMatrix(space, np.diag([0.5, -1, 7, 2, 0]))
    assert np.all(fock.commutator(A, B).entries == 0)


def test_commutator_dimension_mismatch():
    with pytest.raises(ValueError):
        fock.commutator(fock.annihilator(FockSpace(4)), fock.annihilator(FockSpace(5)))


def test_operator_matrix_shape_checked():
    with pytest.raises(ValueError):
        fock.OperatorMatrix(FockSpace(4), np.eye(3))


def test_operator_entries_read_only():
    a = fock.annihilator(FockSpace(4))
    with pytest.raises(ValueError):
        a.entries[0, 0] = 1.0


def test_polariton_vacuum_limit():
    space = FockSpace(10)
    zeta, zeta_dag = fock.polariton_pair(space, 1.0)
    a, ad = fock.boson_pair(space)
    np.testing.assert_array_equal(zeta.entries, a.entries)
    np.testing.assert_array_equal(zeta_dag.entries, ad.entries)


@pytest.mark.parametrize("n", [1.5, 2.4])
def test_polariton_commutator_is_n(n):
    zeta, zeta_dag = fock.polariton_pair(FockSpace(20), n)
    block = fock.commutator(zeta, zeta_dag).safe_block()
    np.testing.assert_allclose(block, n * np.eye(19), atol=1e-12)


def test_polariton_rejects_index_below_one():
    with pytest.raises(ValueError):
        fock.polariton_pair(FockSpace(5), 0.9)


def test_quadratures_boson_commutator():
    P, Q = fock.quadratures(fock.boson_pair(FockSpace(20)), omega=1.0, hbar=1.0)
    np.testing.assert_allclose(fock.commutator(Q, P).safe_block(), 1j * np.eye(19), atol=1e-12)


def test_quadratures_polariton_commutator():
    P, Q = fock.quadratures(fock.polariton_pair(FockSpace(20), 2.0), omega=1.0, hbar=1.0)
    np.testing.assert_allclose(fock.commutator(Q, P).safe_block(), 2j * np.eye(19), atol=1e-12)


def test_quadratures_hermitian():
    for ladder in (fock.boson_pair(FockSpace(9)), fock.polariton_pair(FockSpace(9), 1.7)):
        for op in fock.quadratures(ladder, omega=2.3, hbar=0.7):
            assert op.hermiticity_error() == 0.0


def test_quadratures_reject_nonpositive():
    pair = fock.boson_pair(FockSpace(4))
    with pytest.raises(ValueError):
        fock.quadratures(pair, omega=0.0)
    with pytest.raises(ValueError):
        fock.quadratures(pair, omega=1.0, hbar=-1.0)


def test_corrected_spectrum_n15():
    H = fock.hamiltonian(QuantizationScheme.CORRECTED, fock.boson_pair(FockSpace(20)), 1.5, 1.0, 1.0)
    # oracle: eigenvalues of the dense matrix straight from numpy
    oracle = np.sort(np.linalg.eigvals(H.entries).real)
    np.testing.assert_allclose(fock.spectrum(H)[:3], oracle[:3], rtol=1e-12)
    np.testing.assert_allclose(fock.spectrum(H)[:3], [0.75, 2.25, 3.75], rtol=1e-12)


@pytest.mark.parametrize("n", [1.0, 1.5, 2.0, 3.0])
def test_ginzburg_with_boson_zeta_independent_of_n(n):
    H = fock.hamiltonian("Ginzburg", fock.boson_pair(FockSpace(20)), n, 1.0, 1.0)
    np.testing.assert_allclose(fock.spectrum(H)[:3], [0.5, 1.5, 2.5], rtol=1e-12)


def test_schemes_coincide_in_vacuum():
    pair = fock.boson_pair(FockSpace(8))
    g = fock.hamiltonian("Ginzburg", pair, 1.0, 1.3, 0.9)
    c = fock.hamiltonian("Corrected", pair, 1.0, 1.3, 0.9)
    np.testing.assert_array_equal(g.entries, c.entries)


def test_spectrum_zero_matrix():
    Z = fock.OperatorMatrix(FockSpace(5), np.zeros((5, 5)))
    np.testing.assert_array_equal(fock.spectrum(Z), np.zeros(5))


def test_spectrum_number_hamiltonian_omega2():
    a, ad = fock.boson_pair(FockSpace(20))
    H = 2.0 * (ad @ a + 0.5 * fock.identity(FockSpace(20)))
    np.testing.assert_allclose(fock.spectrum(H)[:3], [1, 3, 5], rtol=1e-12)


def test_spectrum_sorts_diagonal():
    entries = [3.0, -1.0, 7.5, 0.0, 2.0]
    D = fock.OperatorMatrix(FockSpace(5), np.diag(entries))
    np.testing.assert_array_equal(fock.spectrum(D), sorted(entries))


def test_spectrum_rejects_non_hermitian():
    with pytest.raises(ValueError):
        fock.spectrum(fock.annihilator(FockSpace(5)))


def test_certified_levels_is_lower_half():
    H = fock.hamiltonian("Corrected", fock.boson_pair(FockSpace(20)), 2.0, 1.0)
    assert fock.certified_levels(H).size == 10


def test_scheme_parse():
    assert QuantizationScheme.parse("corrected") is QuantizationScheme.CORRECTED
    assert QuantizationScheme.parse("GINZBURG") is QuantizationScheme.GINZBURG
    with pytest.raises(ValueError):
        QuantizationScheme.parse("hopfield")
