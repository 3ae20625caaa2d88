import numpy as np
import pytest

from parabraid.parafermions import (
    build_parafermions,
    check_defining_relations,
    check_parity_algebra,
    overall_parity,
    parity,
    parity_eigenbasis,
)
from parabraid.systems import SizeBoundError, pauli_x, pauli_z


def test_majorana_pair():
    sys_ = build_parafermions(2, 1)
    assert sys_.gamma(1).max_diff(pauli_z(sys_.system, 1)) < 1e-14
    expected = -1j * (pauli_x(sys_.system, 1) @ pauli_z(sys_.system, 1))
    assert sys_.gamma(2).max_diff(expected) < 1e-14
    assert sys_.gamma(2).power(2).max_diff(sys_.gamma(1).power(2)) < 1e-14


@pytest.mark.parametrize("d,n_pairs", [(d, n) for d in range(2, 7) for n in range(1, 5)
                                       if d ** n <= 4096])
def test_defining_relations_full_table(d, n_pairs):
    sys_ = build_parafermions(d, n_pairs)
    assert check_defining_relations(sys_) < 1e-12


def test_exchange_example_d3():
    sys_ = build_parafermions(3, 2)
    omega = np.exp(2j * np.pi / 3)
    g1, g3 = sys_.gamma(1).mat, sys_.gamma(3).mat
    assert np.max(np.abs(g1 @ g3 - omega * (g3 @ g1))) < 1e-12


def test_gamma_monomial_structure():
    sys_ = build_parafermions(4, 2)
    for j in range(1, sys_.n_modes + 1):
        assert sys_.gamma(j).is_monomial(1e-12)
    for i in range(1, sys_.n_modes):
        assert parity(sys_, i).is_monomial(1e-12)


@pytest.mark.parametrize("d", range(2, 7))
def test_parity_closed_forms(d):
    sys_ = build_parafermions(d, 2)
    assert parity(sys_, 1).max_diff(pauli_x(sys_.system, 1).dag()) < 1e-12
    zz = pauli_z(sys_.system, 1) @ pauli_z(sys_.system, 2).dag()
    assert parity(sys_, 2).max_diff(zz) < 1e-12
    assert parity(sys_, 3).max_diff(pauli_x(sys_.system, 2).dag()) < 1e-12


@pytest.mark.parametrize("d", range(2, 7))
def test_parity_powers_and_algebra(d):
    sys_ = build_parafermions(d, 2)
    eye = np.eye(sys_.system.dim)
    for i in range(1, sys_.n_modes):
        assert np.max(np.abs(parity(sys_, i).power(d).mat - eye)) < 1e-12
    report = check_parity_algebra(sys_)
    assert report.max_residual < 1e-12
    # distant parities on disjoint qudits commute exactly in the closed form
    x1 = pauli_x(sys_.system, 1).dag()
    x2 = pauli_x(sys_.system, 2).dag()
    assert np.array_equal(x1.mat @ x2.mat, x2.mat @ x1.mat)


def test_adjacent_exchange_d3():
    sys_ = build_parafermions(3, 2)
    omega = np.exp(2j * np.pi / 3)
    l1, l2 = parity(sys_, 1).mat, parity(sys_, 2).mat
    assert np.max(np.abs(l1 @ l2 - omega * (l2 @ l1))) < 1e-12


@pytest.mark.parametrize("d,n_pairs", [(2, 2), (3, 2), (4, 2), (5, 2), (3, 3)])
def test_parity_spectrum_multiplicity(d, n_pairs):
    sys_ = build_parafermions(d, n_pairs)
    for i in range(1, sys_.n_modes):
        eigs = np.linalg.eigvals(parity(sys_, i).mat)
        labels = np.round(np.angle(eigs) * d / (2 * np.pi)).astype(int) % d
        counts = np.bincount(labels, minlength=d)
        assert np.all(counts == d ** (n_pairs - 1))


def test_eigenbasis_properties():
    sys_ = build_parafermions(2, 1)
    basis = parity_eigenbasis(sys_, 1)
    assert np.allclose(basis.vector(0), [1, 1] / np.sqrt(2))
    assert np.allclose(basis.vector(1), [1, -1] / np.sqrt(2))
    for d in range(2, 7):
        sys_ = build_parafermions(d, 2)
        for i in (1, 3):
            basis = parity_eigenbasis(sys_, i)
            gram = basis.vectors.conj().T @ basis.vectors
            assert np.max(np.abs(gram - np.eye(d))) < 1e-12
            assert basis.vectors[0, :].real == pytest.approx([1 / np.sqrt(d)] * d)
    with pytest.raises(ValueError):
        parity_eigenbasis(sys_, 2)


def test_eigenbasis_full_space_action():
    for d in (2, 3, 5):
        sys_ = build_parafermions(d, 2)
        basis = parity_eigenbasis(sys_, 3)
        lam = parity(sys_, 3)
        for m in range(d):
            vec = np.kron(np.eye(d)[:, 0], basis.vector(m))
            residual = lam.mat @ vec - np.exp(2j * np.pi * m / d) * vec
            assert np.max(np.abs(residual)) < 1e-12


def test_overall_parity_structure():
    sys_ = build_parafermions(3, 2)
    total = overall_parity(sys_)
    assert total.is_monomial(1e-12)
    assert np.max(np.abs(total.power(3).mat - np.eye(9))) < 1e-12


def test_index_and_bound_errors():
    sys_ = build_parafermions(3, 2)
    with pytest.raises(IndexError):
        sys_.gamma(5)
    with pytest.raises(IndexError):
        parity(sys_, 4)
    with pytest.raises(SizeBoundError):
        build_parafermions(5, 7)
