import numpy as np
import pytest

from parabraid.braiding import (
    CANONICAL_WORD_ENTRIES,
    CANONICAL_WORD_TEXTS,
    BraidRepresentation,
    BraidWord,
    canonical_word,
    check_representation,
    compose_braid,
    conjugation_action,
    diagonal_phases,
)
from parabraid.constraints import CoefficientVector, d4_family, trivial_vector
from parabraid.parafermions import build_parafermions, parity
from parabraid.phases import CyclotomicPhase
from parabraid.systems import DenseOperator

from oracles import eigenspace_scalars


def test_word_parsing_and_roundtrip():
    word = BraidWord.from_text("4 3 | 5 4 6 5 | -3 -4")
    assert word.entries[0] == (4, -1)       # rightmost token acts first
    assert word.entries[-1] == (4, 1)
    assert BraidWord.from_text(word.to_text()).entries == word.entries


def test_word_algebra():
    w = BraidWord.from_text("1 2")
    assert (w * w.inverse()).entries == ((2, 1), (1, 1), (1, -1), (2, -1))
    assert w.power(0).entries == ()
    assert w.power(-1).entries == w.inverse().entries
    assert w.max_index() == 2
    with pytest.raises(ValueError):
        BraidWord.from_text("0 1")


def test_canonical_word_fixtures_consistent():
    # both stored notations agree for every canonical word
    for name in CANONICAL_WORD_TEXTS:
        assert canonical_word(name).entries == CANONICAL_WORD_ENTRIES[name]


def test_majorana_braid_operator():
    rep = BraidRepresentation.from_fzc(2, 1, 0, +1)
    lam = parity(rep.system, 1)
    expected = (DenseOperator.identity(rep.system.system) - 1j * lam) * (1 / np.sqrt(2))
    assert rep.generator(1).max_diff(expected) < 1e-14


def test_generator_parity_commutation():
    rep = BraidRepresentation.from_fzc(3, 2, 0, +1)
    u1, u2 = rep.generator(1), rep.generator(2)
    l1 = parity(rep.system, 1)
    l3 = parity(rep.system, 3)
    assert u1.commutator_norm(l1) < 1e-12
    assert u2.commutator_norm(l1 @ l3) < 1e-12


def test_non_unitary_coefficients_rejected():
    with pytest.raises(ValueError):
        BraidRepresentation(build_parafermions(3, 2), CoefficientVector(3, [1, 1, 1]))


@pytest.mark.parametrize("d,n_pairs", [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3)])
def test_representation_relations_fzc(d, n_pairs):
    for r in range(d):
        for sign in (+1, -1):
            rep = BraidRepresentation.from_fzc(d, n_pairs, r, sign)
            report = check_representation(rep)
            assert report.max_residual < 1e-10


def test_representation_relations_trivial_and_family():
    rep = BraidRepresentation(build_parafermions(3, 2), trivial_vector(3))
    assert check_representation(rep).max_residual < 1e-12
    rep = BraidRepresentation(build_parafermions(4, 2), d4_family(np.pi / 3, +1))
    assert check_representation(rep).max_residual < 1e-10


def test_conjugation_law_majorana_case():
    rep = BraidRepresentation.from_fzc(2, 1, 0, +1)
    res = conjugation_action(rep, 1)
    assert res.residual < 1e-12
    g1, g2 = rep.system.gamma(1), rep.system.gamma(2)
    u = rep.generator(1)
    assert (u @ g1 @ u.dag()).max_diff(g2) < 1e-12
    assert (u @ g2 @ u.dag()).max_diff(-1.0 * g1) < 1e-12


@pytest.mark.parametrize("d", range(2, 7))
def test_conjugation_law_exact_phases(d):
    for r in range(d):
        rep = BraidRepresentation.from_fzc(d, 2, r, +1)
        res = conjugation_action(rep, 1)
        assert res.residual < 1e-10
        assert res.phase_first == CyclotomicPhase.omega(d, -r)
        assert res.phase_second == CyclotomicPhase.omega(d, 1 - r)


def test_conjugation_minus_sign_is_inverse_braid():
    # the dagger of a minus-family generator is the plus family at -r
    for d in (2, 3, 5):
        for r in range(d):
            rep = BraidRepresentation.from_fzc(d, 2, r, -1)
            u = rep.generator(1)
            g1, g2 = rep.system.gamma(1), rep.system.gamma(2)
            image = u.dag() @ g1 @ u
            target = CyclotomicPhase.omega(d, r).as_complex() * g2
            assert image.max_diff(target) < 1e-12


def test_conjugation_non_fzc_returns_raw_images():
    rep = BraidRepresentation(build_parafermions(4, 2), d4_family(0.7, +1))
    res = conjugation_action(rep, 1)
    assert res.residual is None
    assert res.image_first.is_unitary(1e-10)


def test_diagonal_phases_closed_form():
    rep = BraidRepresentation.from_fzc(2, 1, 0, +1)
    dp = diagonal_phases(rep, 1)
    assert abs(dp.phases[0] - np.exp(-1j * np.pi / 4)) < 1e-14
    assert abs(dp.phases[0] ** 2 - (-1j)) < 1e-14
    assert dp.prefactor == CyclotomicPhase(-4 * 0 - 2, 2)

    for d in range(2, 8):
        for r in range(d):
            rep = BraidRepresentation.from_fzc(d, 2, r, +1)
            dp = diagonal_phases(rep, 1)
            assert dp.relation_residual < 1e-12
            assert dp.prefactor_residual < 1e-12
            assert dp.eigenbasis_residual < 1e-12
            assert dp.prefactor.num == (-4 * r * (r + d) + d * (1 - d)) % (8 * d)


def test_diagonal_phases_match_eigendecomposition_oracle():
    for d, r in ((2, 0), (3, 1), (4, 2), (5, 3)):
        rep = BraidRepresentation.from_fzc(d, 2, r, +1)
        dp = diagonal_phases(rep, 1)
        scalars = eigenspace_scalars(rep.generator(1).mat, parity(rep.system, 1).mat, d)
        assert np.max(np.abs(scalars - dp.phases)) < 1e-9


def test_diagonal_phases_requires_odd_index():
    rep = BraidRepresentation.from_fzc(3, 2, 0, +1)
    with pytest.raises(ValueError):
        diagonal_phases(rep, 2)


def test_compose_braid_basics():
    rep = BraidRepresentation.from_fzc(3, 2, 0, +1)
    eye = DenseOperator.identity(rep.system.system)
    assert compose_braid(rep, BraidWord.identity()).max_diff(eye) == 0.0
    assert compose_braid(rep, BraidWord.from_text("1 -1")).max_diff(eye) < 1e-12
    assert compose_braid(rep, BraidWord.from_text("2 -2")).max_diff(eye) < 1e-12
    with pytest.raises(IndexError):
        compose_braid(rep, BraidWord.from_text("7"))


def test_compose_braid_order_convention():
    # operator-order text "1 2" must equal the matrix product U1 @ U2
    rep = BraidRepresentation.from_fzc(3, 2, 0, +1)
    u1, u2 = rep.generator(1), rep.generator(2)
    word = BraidWord.from_text("1 2")
    assert compose_braid(rep, word).max_diff(u1 @ u2) < 1e-13
