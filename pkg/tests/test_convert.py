import math

import numpy as np
import pytest

from conftest import random_matrix
from qencode import convert, encode, verify
from qencode.circuit import Circuit, adjoint, compose, cost
from qencode.pauli import dense_to_pauli, lex_index, pauli_matrix


@pytest.mark.parametrize("n", [1, 2, 3])
def test_basis_change_rows(n):
    u = verify.unitary_of(convert.basis_change_circuit(n))
    np.testing.assert_allclose(u, convert.basis_change_oracle(n), atol=1e-10)
    both = compose(convert.basis_change_circuit(n), adjoint(convert.basis_change_circuit(n)))
    np.testing.assert_allclose(verify.unitary_of(both), np.eye(4**n), atol=1e-10)


def test_basis_change_single_pair_printed_matrix():
    printed = np.array(
        [
            [1, 0, 0, 1],
            [0, 1, 1, 0],
            [0, 1j, -1j, 0],
            [1, 0, 0, -1],
        ]
    ) / math.sqrt(2)
    np.testing.assert_allclose(verify.unitary_of(convert.basis_change_circuit(1)), printed, atol=1e-12)


def test_pair_phase_layer_is_not_clifford():
    # diag(1,1,i,1) maps Z (x) I to itself but X (x) I to a non-Pauli
    d = np.diag([1, 1, 1j, 1])
    out = d @ np.kron(pauli_matrix("X"), np.eye(2)) @ d.conj().T
    coeffs = dense_to_pauli(out).flat()
    assert np.sum(np.abs(coeffs) > 1e-12) > 1
    rep = cost(convert.basis_change_circuit(2))
    assert rep.t_count == 2 and rep.t_depth == 1


def test_msp_of_pauli_word_goes_to_basis_state():
    sp, claim = encode.matrix_msp(pauli_matrix("X"))
    out, new = convert.msp_to_pauli_msp(sp, claim)
    psi = verify.statevector_of(out)
    assert abs(abs(psi[lex_index("X")]) - 1) < 1e-12
    assert new.scale == pytest.approx(1.0)


def test_pauli_basis_state_goes_back_to_vec_z():
    e = np.zeros(4)
    e[lex_index("Z")] = 1
    sp, _ = encode.state_prep(e)
    claim = encode.EncodingClaim("HSP", 1.0, 2, 0, (4,))
    out, new = convert.pauli_msp_to_msp(sp, claim)
    rep = verify.check_state_prep(out, pauli_matrix("Z"))
    assert rep.ok and abs(rep.measured_scale - math.sqrt(2)) < 1e-12 and new.scale == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize("n", [1, 2])
def test_msp_roundtrip_is_exact(rng, n):
    a = random_matrix(rng, n)
    sp, claim = encode.matrix_msp(a)
    there, c1 = convert.msp_to_pauli_msp(sp, claim)
    back, c2 = convert.pauli_msp_to_msp(there, c1)
    np.testing.assert_allclose(verify.statevector_of(back), verify.statevector_of(sp), atol=1e-10)
    assert c2.scale == pytest.approx(claim.scale)
    assert c1.scale == pytest.approx(claim.scale / math.sqrt(2**n))


def test_identity_msp_padded():
    psi = verify.statevector_of(convert.identity_msp_padded(1))
    np.testing.assert_allclose(psi, np.array([1, 0, 0, 1]) / math.sqrt(2), atol=1e-15)
    psi = verify.statevector_of(convert.identity_msp_padded(1, pad=1))
    assert np.allclose(psi[4:], 0) and np.allclose(psi[[0, 3]], 1 / math.sqrt(2))
    assert cost(convert.identity_msp_padded(3, 2)).depth == 2


def test_trivial_block_encoding_to_msp():
    claim = encode.EncodingClaim("BE", 1.0, 2, 0)
    out, new = convert.be_to_msp(Circuit(2), claim)
    rep = verify.check_state_prep(out, np.eye(4))
    assert rep.ok and abs(rep.measured_scale - 2) < 1e-12 and new.scale == 2


@pytest.mark.parametrize("hermitian", [False, True])
def test_be_to_msp_and_pauli_msp(rng, hermitian):
    a = random_matrix(rng, 1, hermitian=hermitian)
    be, claim = encode.matrix_to_be(a)
    out, new = convert.be_to_msp(be, claim)
    rep = verify.check_state_prep(out, a)
    assert rep.ok and rep.measured_scale == pytest.approx(new.scale)
    out, new = convert.be_to_pauli_msp(be, claim)
    rep = verify.check_state_prep(out, dense_to_pauli(a).coeffs)
    assert rep.ok and rep.measured_scale == pytest.approx(new.scale) and new.scale == pytest.approx(claim.scale)


def test_pauli_word_to_be_has_scale_n():
    e = np.zeros(16)
    e[lex_index("YX")] = 1
    sp, _ = encode.state_prep(e)
    claim = encode.EncodingClaim("HSP", 1.0, 4, 0, (4, 4))
    out, new = convert.pauli_msp_to_be(sp, claim)
    rep = verify.check_block_encoding(out, pauli_matrix("YX"))
    assert rep.ok and rep.measured_scale == pytest.approx(4) and new.scale == 4


@pytest.mark.parametrize("n", [1, 2])
def test_msp_to_be_and_surplus(rng, n):
    a = random_matrix(rng, n)
    sp, claim = encode.matrix_msp(a)
    out, new = convert.msp_to_be(sp, claim)
    rep = verify.check_block_encoding(out, a)
    assert rep.ok and rep.measured_scale == pytest.approx(new.scale)
    extra = convert.surplus(sp, out)
    assert extra.qubits == n and extra.depth <= 18 and extra.t_depth <= 1


def test_be_msp_be_roundtrip_on_z():
    be, claim = encode.matrix_to_be(pauli_matrix("Z"))
    msp, mclaim = convert.be_to_msp(be, claim)
    again, aclaim = convert.msp_to_be(msp, mclaim)
    rep = verify.check_block_encoding(again, pauli_matrix("Z"))
    assert rep.ok and rep.measured_scale == pytest.approx(aclaim.scale)
    assert aclaim.scale == pytest.approx(2 * claim.scale)


def test_eliminate_flag_keeps_swaps():
    sp, claim = encode.matrix_msp(np.eye(4))
    out, _ = convert.msp_to_pauli_msp(sp, claim, eliminate=False)
    assert "swap" in {g.kind for g in out.gates}
    out, _ = convert.msp_to_pauli_msp(sp, claim)
    assert "swap" not in {g.kind for g in out.gates}


def test_claim_mismatch_rejected(rng):
    be, claim = encode.matrix_to_be(random_matrix(rng, 1))
    with pytest.raises(encode.ContractError):
        convert.msp_to_pauli_msp(be, claim)
    sp, mclaim = encode.matrix_msp(np.eye(2))
    with pytest.raises(encode.ContractError):
        convert.pauli_msp_to_be(sp, mclaim)
    with pytest.raises(encode.ContractError):
        convert.be_to_msp(sp, mclaim)


def test_inputs_are_not_mutated(rng):
    sp, claim = encode.matrix_msp(random_matrix(rng, 1))
    before = (sp.gates, claim.to_json())
    convert.msp_to_be(sp, claim)
    assert (sp.gates, claim.to_json()) == before
