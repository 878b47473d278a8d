"""Multiplexer constructions.

Layout convention: the selector (control) register sits on the low qubit
indices and the block register below it, so M(mux) = direct sum of the block
unitaries, ordered by the selector value with qubit 0 most significant.
"""

from __future__ import annotations

import math

import numpy as np

from . import numkit
from .circuit import (
    Circuit,
    CircuitError,
    Gate,
    cp,
    cx,
    diag,
    expand_fanout,
    fanout_cx,
    gate_matrix,
    lower_diagonals,
    peephole_simplify,
    phase,
    ry,
    rz,
    shifted,
    x,
)
from .pauli import as_word, word_from_index

HALF_PI = math.pi / 2


def _cascade_control(step: int, m: int) -> int:
    """Index of the control driving the CNOT after rotation ``step``.

    Following the Gray code: the bit that flips between gray(step) and
    gray(step+1), wrapping to control 0 after the last step.
    """
    if step == 2**m - 1:
        return 0
    lowbit = ((step + 1) & -(step + 1)).bit_length() - 1
    return m - 1 - lowbit


def rotation_mux_gates(axis: str, theta, controls, targets) -> list:
    """Gate list of a K x M rotation multiplexer on explicit qubits."""
    theta = np.atleast_2d(np.asarray(theta, dtype=float))
    rows, cols = theta.shape
    m = numkit.log2_exact(cols)
    controls, targets = list(controls), list(targets)
    if len(controls) != m or len(targets) != rows:
        raise numkit.ShapeError(f"{rows}x{cols} angles need {m} controls and {rows} targets")
    if axis not in ("y", "z"):
        raise ValueError(f"axis must be 'y' or 'z', got {axis!r}")
    make = ry if axis == "y" else rz
    hat = numkit.angle_transform(theta)
    gates = []
    for step in range(cols):
        for r, tq in enumerate(targets):
            gates.append(make(tq, hat[r, step]))
        if m == 0:
            break
        ctrl = controls[_cascade_control(step, m)]
        gates.append(cx(ctrl, targets[0]) if rows == 1 else fanout_cx(ctrl, targets))
    return gates


def rotation_multiplexer(axis: str, theta) -> Circuit:
    """Controls on qubits 0..m-1, one target per angle row below them."""
    theta = np.atleast_2d(np.asarray(theta, dtype=float))
    rows, cols = theta.shape
    m = numkit.log2_exact(cols)
    gates = rotation_mux_gates(axis, theta, range(m), range(m, m + rows))
    return Circuit(m + rows, tuple(gates))


def global_phase_gates(q: int, gamma: float) -> list:
    """e^{i gamma} I on qubit q, as P(gamma) X P(gamma) X."""
    if abs(math.remainder(gamma, 2 * math.pi)) < 1e-15:
        return []
    return [x(q), phase(q, gamma), x(q), phase(q, gamma)]


def _diagonal_gates(phases: np.ndarray, qubits: list):
    """Recursive Rz-multiplexer split; returns (gates, leftover global phase)."""
    if not qubits:
        return [], float(phases[0])
    pairs = phases.reshape(-1, 2)
    mean = pairs.mean(axis=1)
    diff = pairs[:, 1] - pairs[:, 0]
    gates, gamma = _diagonal_gates(mean, qubits[:-1])
    if np.max(np.abs(diff)) > 1e-15:
        gates += rotation_mux_gates("z", diff, qubits[:-1], [qubits[-1]])
    return gates, gamma


def diagonal_gate(phases, exact: bool = True) -> Circuit:
    """Circuit with M = diag(e^{i phi_0}, ..., e^{i phi_{M-1}}).

    With ``exact=False`` the global phase is left out and only recorded in the
    metadata.
    """
    phases = np.asarray(phases, dtype=float)
    k = numkit.log2_exact(phases.size)
    gates, gamma = _diagonal_gates(phases, list(range(k)))
    if exact:
        if k == 0:
            if abs(math.remainder(gamma, 2 * math.pi)) > 1e-15:
                raise CircuitError("cannot place a global phase on zero qubits")
        else:
            gates += global_phase_gates(0, gamma)
    c = peephole_simplify(Circuit(k, tuple(gates)))
    return c.with_metadata(global_phase=0.0 if exact else gamma)


def cnot_comb(q: int) -> Circuit:
    if q < 1:
        raise ValueError("comb needs q >= 1")
    return Circuit(2 * q, tuple(cx(i, q + i) for i in range(q)))


def zyz(u: np.ndarray):
    """u = e^{i gamma} Rz(a) Ry(b) Rz(d); returns (gamma, a, b, d)."""
    gamma = float(np.angle(np.linalg.det(u))) / 2
    v = u * np.exp(-1j * gamma)
    b = 2 * math.atan2(abs(v[1, 0]), abs(v[0, 0]))
    total = 2 * float(np.angle(v[1, 1])) if abs(v[1, 1]) > 1e-12 else 0.0
    delta = 2 * float(np.angle(v[1, 0])) if abs(v[1, 0]) > 1e-12 else 0.0
    return gamma, (total + delta) / 2, b, (total - delta) / 2


def _selected_on(g: Gate, state: int, controls: list, total: int) -> list:
    """Gates applying ``g`` only when ``controls`` hold ``state``."""
    k = len(controls)
    if g.kind in ("s", "sdg", "t", "tdg", "rz", "p", "cp", "diag"):
        inner = np.angle(np.diag(gate_matrix(g)))
        phases = np.zeros((2**k, inner.size))
        phases[state] = inner
        return [diag(controls + list(g.qubits), phases.reshape(-1))]
    if g.kind == "swap":
        a, b = g.qubits
        out = []
        for c in (cx(a, b), cx(b, a), cx(a, b)):
            out += _selected_on(c, state, controls, total)
        return out
    if g.kind == "cx":
        ctrl, tq = g.qubits
        return _selected_on(x(tq), 2 * state + 1, controls + [ctrl], total)
    gamma, a, b, d = zyz(gate_matrix(g))
    target = g.qubits[0]
    out = []
    for axis, angle in (("z", d), ("y", b), ("z", a)):
        if abs(angle) > 1e-15:
            row = np.zeros(2**k)
            row[state] = angle
            out += rotation_mux_gates(axis, row, controls, [target])
    if abs(gamma) > 1e-15:
        ph = np.zeros(2**k)
        ph[state] = gamma
        out.append(diag(controls, ph))
    return out


def generic_multiplexer(blocks) -> Circuit:
    """Naive multiplexer: every block gate is wrapped in a selection on the control state."""
    blocks = list(blocks)
    k = numkit.log2_exact(len(blocks))
    width = blocks[0].qubits
    if any(b.qubits != width for b in blocks):
        raise CircuitError("all blocks must share a qubit count")
    total = k + width
    if k == 0:
        return blocks[0]
    controls = list(range(k))
    gates = []
    for state, block in enumerate(blocks):
        for g in expand_fanout(shifted(block, k, total)).gates:
            gates += _selected_on(g, state, controls, total)
    return peephole_simplify(lower_diagonals(Circuit(total, tuple(gates))))


def pauli_angle_tables(words):
    """(theta_y, theta_z) with rows = letter positions, columns = words."""
    words = [as_word(w) for w in words]
    q = len(words[0])
    ty = np.zeros((q, len(words)))
    tz = np.zeros((q, len(words)))
    for j, w in enumerate(words):
        for i, letter in enumerate(w.letters):
            ty[i, j] = math.pi if letter in "XY" else 0.0
            tz[i, j] = math.pi if letter in "XZ" else 0.0
    return ty, tz


def pauli_word_multiplexer(words) -> Circuit:
    """M = direct sum of sigma_w over ``words``.

    Ry(theta_y) Rz(theta_z) gives (-i)^{#non-I} sigma_w for every word, so a
    selector diagonal with phase (pi/2) * #non-I restores the exact blocks.
    """
    words = [as_word(w) for w in words]
    q = len(words[0])
    if any(len(w) != q for w in words):
        raise CircuitError("all words must have the same length")
    k = numkit.log2_exact(len(words))
    ty, tz = pauli_angle_tables(words)
    controls, targets = list(range(k)), list(range(k, k + q))
    gates = rotation_mux_gates("z", tz, controls, targets)
    gates += rotation_mux_gates("y", ty, controls, targets)
    fix = np.array([HALF_PI * w.weight() for w in words])
    if k:
        gates += shifted(diagonal_gate(fix), 0, k + q).gates
    else:
        gates += global_phase_gates(0, float(fix[0]))
    return peephole_simplify(Circuit(k + q, tuple(gates)))


def pmx_dense_angles(n: int):
    """Dense 0/pi tables over all 4^n words in lex order: (theta_z, theta_y)."""
    ty, tz = pauli_angle_tables([word_from_index(j, n) for j in range(4**n)])
    return tz, ty


def pmx_sparse_angles(n: int):
    """Closed form of the transformed PMX tables: (z_hat, y_hat)."""
    if n < 1:
        raise ValueError("n >= 1")
    cols = 4**n
    zh = np.zeros((n, cols))
    yh = np.zeros((n, cols))
    zh[:, 0] = yh[:, 0] = HALF_PI
    for i in range(n):
        zh[i, 2 * 4 ** (n - i - 1) - 1] = -HALF_PI
        yh[i, 2 * 4 ** (n - i - 1)] = -HALF_PI
    return zh, yh


# phases of the selector-pair correction diag(1, i, i, i), indexed by (a b)
PAIR_FIX = (0.0, HALF_PI, HALF_PI, HALF_PI)


def _phase_gate(q: int, angle: float):
    units = round(angle / (math.pi / 4))
    if abs(angle - units * math.pi / 4) < 1e-12:
        units %= 8
        if units == 0:
            return []
        named = {2: "s", 6: "sdg", 1: "t", 7: "tdg"}
        if units in named:
            return [Gate(named[units], (q,))]
    return [phase(q, angle)]


def pair_phase_gates(a: int, b: int, phases) -> tuple:
    """Single-qubit part and the controlled-phase part of diag(e^{i phases}) on (a, b)."""
    p00, p01, p10, p11 = phases
    if abs(math.remainder(p00, 2 * math.pi)) > 1e-12:
        raise ValueError("pair phase table must fix |00>")
    singles = _phase_gate(a, p10) + _phase_gate(b, p01)
    coupling = math.remainder(p11 - p10 - p01, 2 * math.pi)
    coupled = [cp(a, b, coupling)] if abs(coupling) > 1e-12 else []
    return singles, coupled


def pmx_all(n: int, pair_phases=PAIR_FIX) -> Circuit:
    """Constant-depth multiplexer of all 4^n Pauli words in lex order.

    Qubits: controls c_0..c_{2n-1}, then targets t_0..t_{n-1}.  Letter i of the
    selected word is read from the pair (c_{2i}, c_{2i+1}) and acts on t_i.  The
    selector-pair phase fix is diagonal on controls, so it commutes with the
    rows; its gates are slotted into idle control layers to keep depth 10.
    """
    if n < 1:
        raise ValueError("n >= 1")
    gates = []
    for i in range(n):
        a, b, tq = 2 * i, 2 * i + 1, 2 * n + i
        singles, coupled = pair_phase_gates(a, b, pair_phases)
        gates += [rz(tq, HALF_PI)] + singles
        gates += [cx(b, tq)]
        gates += [rz(tq, -HALF_PI)] + coupled
        gates += [cx(b, tq)]
        gates += [ry(tq, HALF_PI), cx(b, tq), cx(a, tq), ry(tq, -HALF_PI), cx(b, tq), cx(a, tq)]
    return Circuit(3 * n, tuple(gates))
