import numpy as np
import pytest

from parabraid.braiding import BraidWord, canonical_word, diagonal_phases
from parabraid.constraints import FZCParams, dft_prefactor
from parabraid.encoding import (
    build_encoding,
    certificate_r,
    entangling_words,
    identify_gate,
    parity_conjugation_table,
    pauli_conjugation,
    restrict,
    restrict_word,
)
from parabraid.parafermions import parity
from parabraid.systems import controlled_phase, controlled_shift, equal_up_to_phase, fourier_gate


@pytest.mark.parametrize("d", (2, 3, 4, 5))
def test_encoding_restriction_dictionary(d):
    enc = build_encoding(d, 1, r=0)
    assert enc.isometry.shape == (d * d, d)
    # parities restrict to the logical Paulis; validated at build, re-check one
    lam2, leak = restrict(enc, parity(enc.rep.system, 2))
    assert leak < 1e-12
    assert np.max(np.abs(lam2.mat - np.roll(np.eye(d), 1, axis=0))) < 1e-12


def test_two_qudit_encoding_dimensions():
    enc = build_encoding(3, 2, r=0)
    assert enc.isometry.shape == (81, 9)


@pytest.mark.parametrize("d", (2, 3, 4, 5))
def test_generators_preserve_code_space(d):
    enc = build_encoding(d, 1, r=0)
    for i in (1, 2, 3):
        _, leak = restrict_word(enc, BraidWord.from_text(str(i)))
        assert leak < 1e-10


@pytest.mark.parametrize("d", (2, 3, 4, 5))
def test_single_braid_restrictions(d):
    enc = build_encoding(d, 1, r=0)
    dp = diagonal_phases(enc.rep, 1)

    t1, _ = restrict_word(enc, BraidWord.from_text("1"))
    assert np.max(np.abs(t1.mat - np.diag(dp.phases))) < 1e-12

    t2, _ = restrict_word(enc, BraidWord.from_text("2"))
    expected = np.array([[enc.rep.coefficients.at(k - l) for l in range(d)]
                         for k in range(d)]) / np.sqrt(d)
    assert np.max(np.abs(t2.mat - expected)) < 1e-12

    t3, _ = restrict_word(enc, BraidWord.from_text("3"))
    hat = np.diag([dp.phases[(-k) % d] for k in range(d)])
    assert np.max(np.abs(t3.mat - hat)) < 1e-12


@pytest.mark.parametrize("d", (2, 3, 4, 5))
def test_three_exchange_composite_is_inverse_fourier(d):
    """The composite braid realizes the inverse DFT gate exactly.

    The product of the verified diagonal and hopping restrictions forces
    diag(ph) * (c_{k-l}/sqrt(d)) * diag(ph) = pref**2 * conj(F), so the
    composite is the inverse Fourier gate, not the forward one.
    """
    enc = build_encoding(d, 1, r=0)
    composite, leak = restrict_word(enc, canonical_word("F"))
    assert leak < 1e-10
    pref2 = dft_prefactor(FZCParams(d, 0, +1)).as_complex() ** 2
    assert composite.max_diff(pref2 * fourier_gate(d).dag()) < 1e-12
    gate = identify_gate(enc, canonical_word("F"))
    assert gate.name == ("F" if d == 2 else "F_dagger")  # F is self-adjoint at d = 2
    assert gate.phase_exact is not None
    assert abs(gate.phase - pref2) < 1e-9


def test_inverse_composite_gives_forward_fourier():
    for d in (2, 3, 4, 5):
        enc = build_encoding(d, 1, r=0)
        word = canonical_word("F").inverse()
        composite, _ = restrict_word(enc, word)
        pref2 = np.conj(dft_prefactor(FZCParams(d, 0, +1)).as_complex() ** 2)
        assert composite.max_diff(pref2 * fourier_gate(d)) < 1e-12


def test_identify_gate_dictionary_entries():
    enc = build_encoding(3, 1, r=0)
    assert identify_gate(enc, BraidWord.identity()).name == "identity"
    assert identify_gate(enc, BraidWord.from_text("1")).name == "quadratic_phase"
    # three identical exchanges yield a logical Pauli for d = 3
    gate = identify_gate(enc, BraidWord.from_text("1 1 1"))
    assert gate.name in {"identity"} | {f"X^{a}Z^{b}" for a in range(3) for b in range(3)}


def test_pauli_conjugation_single_braid():
    for d in (2, 3, 4, 5):
        for r in range(d):
            enc = build_encoding(d, 1, r=r)
            images = {im.source: im for im in pauli_conjugation(enc, BraidWord.from_text("1"))}
            x_img = images["X"]
            assert x_img.label is not None
            assert x_img.label.x == (1,) and x_img.label.z == (d - 1,)
            assert x_img.label.phase == (-(2 * r + d + 1)) % (2 * d)
            z_img = images["Z"]
            assert z_img.label is not None
            assert z_img.label.x == (0,) and z_img.label.z == (1,)
            assert z_img.label.phase == 0


def test_pauli_conjugation_composite_braid():
    # measured action of the three-exchange composite: X -> Zdag, Z -> X
    for d in (2, 3, 4, 5):
        enc = build_encoding(d, 1, r=0)
        images = {im.source: im for im in pauli_conjugation(enc, canonical_word("F"))}
        assert images["X"].label.x == (0,)
        assert images["X"].label.z == ((d - 1) % d,)
        assert images["X"].label.phase == 0
        assert images["Z"].label.x == (1,)
        assert images["Z"].label.z == (0,)
        assert images["Z"].label.phase == 0


def test_pauli_conjugation_non_clifford_word_reports_none():
    # a continuous-family braid at generic angle is not a Clifford gate;
    # build the encoding by hand around the non-FZC representation
    from parabraid.braiding import BraidRepresentation
    from parabraid.constraints import d4_family
    from parabraid.encoding import Encoding
    from parabraid.parafermions import build_parafermions, parity_eigenbasis
    from parabraid.systems import QuditSystem

    rep = BraidRepresentation(build_parafermions(4, 2), d4_family(0.9, +1))
    bases = [parity_eigenbasis(rep.system, i) for i in (1, 3)]
    columns = [np.kron(bases[0].vector(k), bases[1].vector((4 - k) % 4)) for k in range(4)]
    enc = Encoding(4, 1, rep, np.column_stack(columns), QuditSystem(4, 1))
    images = pauli_conjugation(enc, BraidWord.from_text("1"))
    assert any(im.label is None for im in images)


@pytest.mark.parametrize("d", (2, 3, 4, 5))
def test_entangling_identities(d):
    enc = build_encoding(d, 2, r=0)
    cx = controlled_shift(d)
    cz = controlled_phase(d)
    ts, leak_s = restrict_word(enc, canonical_word("S"))
    tsd, leak_sd = restrict_word(enc, canonical_word("S_dagger"))
    tt, leak_t = restrict_word(enc, canonical_word("T"))
    assert max(leak_s, leak_sd, leak_t) < 1e-10
    assert equal_up_to_phase(ts, cx.power((d - 2) % d), 1e-9) is not None
    assert equal_up_to_phase(tsd, cx.power(2), 1e-9) is not None
    assert equal_up_to_phase(tt, cz.power(2), 1e-9) is not None


@pytest.mark.parametrize("d", (3, 5))
def test_odd_dimension_controlled_shift(d):
    enc = build_encoding(d, 2, r=0)
    word = entangling_words(d)["CX"]
    tcx, leak = restrict_word(enc, word)
    assert leak < 1e-10
    lam = equal_up_to_phase(tcx, controlled_shift(d), 1e-9)
    assert lam is not None and abs(lam - 1) < 1e-9


def test_identify_entangling_gate_names():
    enc = build_encoding(3, 2, r=0)
    assert identify_gate(enc, canonical_word("S_dagger")).name == "CX^2"
    assert identify_gate(enc, canonical_word("T")).name == "CZ^2"
    assert identify_gate(enc, entangling_words(3)["CX"]).name == "CX^1"


@pytest.mark.parametrize("d", (2, 3, 4))
def test_parity_conjugation_table(d):
    from parabraid.braiding import BraidRepresentation

    rep = BraidRepresentation.from_fzc(d, 4, 0, +1)
    table = parity_conjugation_table(rep, canonical_word("S"))
    assert table.all_matched
    assert all(e.residual < 1e-9 for e in table.entries.values())
    # every recorded phase is exactly 1 at r = 0
    assert all(abs(e.phase - 1) < 1e-9 for e in table.entries.values())
    assert table.neutral_a_residual < 1e-9
    assert table.neutral_b_residual < 1e-9


def test_parity_table_requires_eight_modes():
    from parabraid.braiding import BraidRepresentation

    rep = BraidRepresentation.from_fzc(3, 2, 0, +1)
    with pytest.raises(ValueError):
        parity_conjugation_table(rep, canonical_word("S"))


def test_entangling_sweep_recorded_not_asserted():
    """Exploratory: the exact controlled-shift identity is special to r = 0
    (and r = d/2 for even d); other representations still satisfy the parity
    table up to phases.  Recorded for reference, nothing asserted beyond
    structure."""
    rows = []
    d = 3
    for sign in (+1, -1):
        for r in range(d):
            enc = build_encoding(d, 2, r=r, sign=sign)
            tsd, leak = restrict_word(enc, canonical_word("S_dagger"))
            match = equal_up_to_phase(tsd, controlled_shift(d).power(2), 1e-9) is not None
            table = parity_conjugation_table(enc.rep, canonical_word("S"))
            rows.append((d, r, sign, match, table.all_matched, leak))
    assert all(row[4] for row in rows)          # parity table holds for all r, signs
    assert all(row[5] < 1e-10 for row in rows)  # subspace always preserved
    assert [row[3] for row in rows if row[1] == 0] == [True, True]


def test_certificate_r_value():
    assert [certificate_r(d) for d in (2, 3, 4, 5)] == [1, 1, 2, 2]


def test_leakage_error_on_non_preserving_word():
    enc = build_encoding(3, 2, r=0)
    with pytest.raises(ValueError):
        identify_gate(enc, BraidWord.from_text("4"))
