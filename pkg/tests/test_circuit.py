import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qencode import circuit as qc
from qencode.verify import run, statevector_of, unitary_of

QUBITS = 4
angles = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)
special = st.sampled_from([0.0, math.pi / 4, math.pi / 2, math.pi, -math.pi / 2, 3 * math.pi / 4])


@st.composite
def gates(draw, swaps=True):
    kinds = ["h", "x", "s", "sdg", "t", "tdg", "ry", "rz", "p", "cx", "cp", "fanout_cx", "diag"]
    if swaps:
        kinds.append("swap")
    kind = draw(st.sampled_from(kinds))
    qs = draw(st.permutations(range(QUBITS)))
    if kind in qc.SINGLE:
        return qc.Gate(kind, (qs[0],))
    if kind in qc.ROTATIONS:
        return qc.Gate(kind, (qs[0],), angle=draw(st.one_of(angles, special)))
    if kind == "cx":
        return qc.cx(qs[0], qs[1])
    if kind == "cp":
        return qc.cp(qs[0], qs[1], draw(st.one_of(angles, special)))
    if kind == "swap":
        return qc.swap(qs[0], qs[1])
    if kind == "fanout_cx":
        return qc.fanout_cx(qs[0], qs[1 : 1 + draw(st.integers(1, 3))])
    width = draw(st.integers(1, 3))
    return qc.diag(qs[:width], draw(st.lists(angles, min_size=2**width, max_size=2**width)))


circuits = st.lists(gates(), max_size=25).map(lambda gs: qc.Circuit(QUBITS, tuple(gs)))


def explicit_matrix(c):
    """Oracle: embed each gate matrix with np.kron and a qubit permutation."""
    n = c.qubits
    u = np.eye(2**n, dtype=complex)
    for g in qc.expand_fanout(c).gates:
        m = g.matrix()
        k = len(g.qubits)
        rest = [q for q in range(n) if q not in g.qubits]
        order = list(g.qubits) + rest
        full = np.kron(m, np.eye(2 ** (n - k)))
        perm = np.zeros(2**n, dtype=int)
        for idx in range(2**n):
            bits = [(idx >> (n - 1 - q)) & 1 for q in range(n)]
            reordered = [bits[q] for q in order]
            perm[idx] = int("".join(map(str, reordered)), 2)
        full = full[np.ix_(perm, perm)]
        u = full @ u
    return u


def test_qubit_zero_is_most_significant():
    c = qc.Circuit(2, (qc.x(0),))
    psi = statevector_of(c)
    assert abs(psi[2] - 1) < 1e-15


def test_gate_matrices():
    np.testing.assert_allclose(qc.ry_matrix(math.pi), [[0, -1], [1, 0]], atol=1e-15)
    np.testing.assert_allclose(qc.rz_matrix(math.pi), np.diag([-1j, 1j]), atol=1e-15)
    np.testing.assert_allclose(qc.cp(0, 1, math.pi / 2).matrix(), np.diag([1, 1, 1, 1j]))
    np.testing.assert_allclose(qc.cx(0, 1).matrix(), np.eye(4)[[0, 1, 3, 2]])


@given(circuits)
def test_simulator_matches_kron_oracle(c):
    np.testing.assert_allclose(unitary_of(c), explicit_matrix(c), atol=1e-10)


@given(circuits)
def test_adjoint_conjugate_transpose(c):
    u = unitary_of(c)
    np.testing.assert_allclose(unitary_of(qc.adjoint(c)), u.conj().T, atol=1e-10)
    np.testing.assert_allclose(unitary_of(qc.conjugate(c)), u.conj(), atol=1e-10)
    np.testing.assert_allclose(unitary_of(qc.transpose(c)), u.T, atol=1e-10)


@given(circuits)
def test_peephole_preserves_unitary(c):
    simplified = qc.peephole_simplify(c)
    assert len(simplified) <= len(c)
    np.testing.assert_allclose(unitary_of(simplified), unitary_of(c), atol=1e-10)


@given(circuits)
def test_eliminate_permutations_preserves_state(c):
    out = qc.eliminate_permutations(c)
    assert "swap" not in {g.kind for g in out.gates}
    np.testing.assert_allclose(statevector_of(out), statevector_of(c), atol=1e-10)


@given(circuits)
def test_lowering_preserves_unitary(c):
    lowered = qc.expand_fanout(qc.lower_diagonals(c))
    assert {"diag", "fanout_cx"}.isdisjoint(g.kind for g in lowered.gates)
    np.testing.assert_allclose(unitary_of(lowered), unitary_of(c), atol=1e-10)


@given(circuits)
def test_json_roundtrip(c):
    again = qc.circuit_from_json(qc.circuit_to_json(c))
    assert again == c


def test_peephole_cancels_through_commuting_gates():
    c = qc.Circuit(3, (qc.cx(0, 1), qc.t(0), qc.rz(2, 0.3), qc.cx(0, 2), qc.cx(0, 1), qc.ry(1, 0.0)))
    out = qc.peephole_simplify(c)
    assert [g.kind for g in out.gates] == ["t", "rz", "cx"]


def test_permutation_circuit_moves_qubits():
    p = qc.interlace_permutation(2)
    assert p.map == (0, 2, 1, 3)
    c = qc.permutation_circuit(p)
    assert [g.kind for g in c.gates] == ["swap"]
    # qubit i content lands on p(i)
    for i in range(4):
        psi = statevector_of(qc.Circuit(4, (qc.x(i),) + c.gates))
        assert abs(psi[1 << (3 - p.map[i])]) > 0.99


def test_cost_counts():
    c = qc.Circuit(3, (qc.h(0), qc.t(0), qc.fanout_cx(0, [1, 2]), qc.t(1), qc.tdg(2), qc.ry(1, 0.3), qc.rz(2, math.pi / 2)))
    rep = qc.cost(c)
    assert rep.depth == 5
    assert rep.t_count == 3 and rep.t_depth == 2
    assert rep.generic_rotation_count == 1 and rep.rotation_count == 2
    assert rep.cnot_count == 1


def test_special_angle_rules():
    assert qc.t_cost(qc.rz(0, math.pi / 2)) == (0, False)
    assert qc.t_cost(qc.rz(0, -math.pi / 4)) == (1, False)
    assert qc.t_cost(qc.phase(0, 3 * math.pi / 4)) == (1, False)
    assert qc.t_cost(qc.ry(0, 0.1)) == (0, True)
    assert qc.t_cost(qc.cp(0, 1, -math.pi / 2)) == (1, False)
    assert qc.t_cost(qc.cp(0, 1, math.pi)) == (0, False)
    with pytest.raises(qc.CostModelError):
        qc.cost(qc.Circuit(1, (qc.diag([0], [0, 1]),)))


def test_gate_validation():
    with pytest.raises(qc.CircuitError):
        qc.Gate("cx", (1, 1))
    with pytest.raises(qc.CircuitError):
        qc.Circuit(2, (qc.h(2),))
    with pytest.raises(qc.CircuitError):
        qc.Gate("ry", (0,))
    with pytest.raises(qc.CircuitError):
        qc.compose(qc.Circuit(1), qc.Circuit(2))


def test_qasm_export():
    c = qc.Circuit(3, (qc.h(0), qc.fanout_cx(0, [1, 2]), qc.diag([1], [0, 0.5])))
    with pytest.raises(qc.CircuitError):
        qc.to_openqasm3(c)
    text = qc.to_openqasm3(c, lower=True)
    assert text.startswith("OPENQASM 3.0;")
    assert "most significant" in text
    assert "cx q[0], q[1];" in text and "cx q[0], q[2];" in text
    assert "diag" not in text


def test_batched_run_matches_columns(rng):
    c = qc.Circuit(2, (qc.h(0), qc.cx(0, 1), qc.ry(1, 0.4)))
    states = rng.normal(size=(4, 3)) + 0j
    np.testing.assert_allclose(run(c, states), unitary_of(c) @ states, atol=1e-12)
