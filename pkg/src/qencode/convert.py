"""Circuit-level conversions between MSP, Pauli MSP and block encodings.

Each conversion takes a circuit with its EncodingClaim and returns a new
circuit and claim without looking at the encoded matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numkit
from .circuit import (
    Circuit,
    adjoint,
    cost,
    cp,
    cx,
    eliminate_permutations,
    h,
    interlace_permutation,
    permutation_circuit,
    s,
    sequence,
    shifted,
)
from .encode import ContractError, EncodingClaim, attach
from .mux import PAIR_FIX, cnot_comb, pmx_all
from .pauli import pauli_matrix, word_from_index

# diag(1, 1, i, 1) on each interlaced pair, indexed by (a b)
BASIS_PAIR_PHASES = (0.0, 0.0, math.pi / 2, 0.0)


def basis_change_circuit(n: int, phase_layer: bool = True) -> Circuit:
    """Unitary on 2n qubits taking vec(A) to sqrt(N) * vec(A_P).

    Row w of its matrix is vec(sigma_w^T)^T / sqrt(N).  Built as a CNOT comb,
    Hadamards on the first register, a second comb, the interlacing SWAPs and a
    diag(1, 1, i, 1) on every pair (2i, 2i+1).
    """
    if n < 1:
        raise ValueError("n >= 1")
    comb = cnot_comb(n)
    parts = [comb, [h(i) for i in range(n)], comb, permutation_circuit(interlace_permutation(n))]
    if phase_layer:
        for i in range(n):
            parts.append([s(2 * i), cp(2 * i, 2 * i + 1, -math.pi / 2)])
    return sequence(2 * n, *parts)


def basis_change_oracle(n: int) -> np.ndarray:
    """Dense reference: rows vec(sigma_w^T)^T / sqrt(N) in lex order."""
    size = 2**n
    rows = [numkit.vec(pauli_matrix(word_from_index(j, n)).T) for j in range(4**n)]
    return np.array(rows) / math.sqrt(size)


def _require(claim: EncodingClaim, kinds, what: str):
    if claim.kind not in kinds:
        raise ContractError(f"{what} expects {'/'.join(kinds)}, got {claim.kind}")


def _matrix_n(claim: EncodingClaim) -> int:
    dims = claim.target_dims
    if len(dims) != 2 or dims[0] != dims[1]:
        raise ContractError(f"MSP claim needs square target dims, got {dims}")
    return numkit.log2_exact(dims[0])


def _pauli_n(claim: EncodingClaim) -> int:
    if not claim.target_dims or any(d != 4 for d in claim.target_dims):
        raise ContractError(f"Pauli MSP claim needs dims (4, ..., 4), got {claim.target_dims}")
    return len(claim.target_dims)


def _check_width(c: Circuit, claim: EncodingClaim):
    if c.qubits != claim.qubits:
        raise ContractError(f"circuit has {c.qubits} qubits, claim says {claim.qubits}")


def msp_to_pauli_msp(sp: Circuit, claim: EncodingClaim, eliminate: bool = True) -> tuple:
    _require(claim, ("MSP",), "msp_to_pauli_msp")
    _check_width(sp, claim)
    n = _matrix_n(claim)
    out = sequence(sp.qubits, sp, shifted(basis_change_circuit(n), claim.ancilla_qubits, sp.qubits))
    if eliminate:
        out = eliminate_permutations(out)
    new = EncodingClaim("HSP", claim.scale / math.sqrt(2**n), 2 * n, claim.ancilla_qubits, (4,) * n)
    return attach(out, new), new


def pauli_msp_to_msp(sp: Circuit, claim: EncodingClaim, eliminate: bool = True) -> tuple:
    _require(claim, ("HSP",), "pauli_msp_to_msp")
    _check_width(sp, claim)
    n = _pauli_n(claim)
    undo = adjoint(basis_change_circuit(n))
    out = sequence(sp.qubits, sp, shifted(undo, claim.ancilla_qubits, sp.qubits))
    if eliminate:
        out = eliminate_permutations(out)
    size = 2**n
    new = EncodingClaim("MSP", claim.scale * math.sqrt(size), 2 * n, claim.ancilla_qubits, (size, size))
    return attach(out, new), new


def identity_msp_padded(n: int, pad: int = 0) -> Circuit:
    """sum_i |i>|i> / sqrt(N) on qubits [pad][row n][col n]; depth 2."""
    total = pad + 2 * n
    gates = [h(pad + i) for i in range(n)] + [cx(pad + i, pad + n + i) for i in range(n)]
    return Circuit(total, tuple(gates))


def be_to_msp(be: Circuit, claim: EncodingClaim) -> tuple:
    """Apply the block encoding to the row register of a maximally entangled pair."""
    _require(claim, ("BE", "HBE"), "be_to_msp")
    _check_width(be, claim)
    n = claim.data_qubits
    pad = claim.ancilla_qubits
    total = be.qubits + n
    out = sequence(total, identity_msp_padded(n, pad), shifted(be, 0, total))
    size = 2**n
    new = EncodingClaim("MSP", claim.scale * math.sqrt(size), 2 * n, pad, (size, size))
    return attach(out, new), new


def _pauli_select(sp: Circuit, n: int, pad: int, pair_phases) -> Circuit:
    total = sp.qubits + n
    mux = shifted(pmx_all(n, pair_phases), pad, total)
    hadamards = [h(q) for q in range(pad, pad + 2 * n)]
    return sequence(total, shifted(sp, 0, total), mux, hadamards)


def pauli_msp_to_be(sp: Circuit, claim: EncodingClaim) -> tuple:
    """Pauli-coefficient preparation, all-words multiplexer, Hadamards on the selector."""
    _require(claim, ("HSP",), "pauli_msp_to_be")
    _check_width(sp, claim)
    n = _pauli_n(claim)
    pad = claim.ancilla_qubits
    out = _pauli_select(sp, n, pad, PAIR_FIX)
    new = EncodingClaim("BE", claim.scale * 2**n, n, pad + 2 * n)
    return attach(out, new), new


def msp_to_be(sp: Circuit, claim: EncodingClaim, eliminate: bool = True) -> tuple:
    """MSP to block encoding through the Pauli basis.

    The basis change ends in a per-pair diagonal and the multiplexer starts with
    one, so the two are fused into a single Clifford diagonal per pair.
    """
    _require(claim, ("MSP",), "msp_to_be")
    _check_width(sp, claim)
    n = _matrix_n(claim)
    pad = claim.ancilla_qubits
    staged = sequence(sp.qubits, sp, shifted(basis_change_circuit(n, phase_layer=False), pad, sp.qubits))
    if eliminate:
        staged = eliminate_permutations(staged)
    fused = tuple(a + b for a, b in zip(BASIS_PAIR_PHASES, PAIR_FIX))
    out = _pauli_select(staged, n, pad, fused)
    new = EncodingClaim("BE", claim.scale * math.sqrt(2**n), n, pad + 2 * n)
    return attach(out, new), new


def be_to_pauli_msp(be: Circuit, claim: EncodingClaim, eliminate: bool = True) -> tuple:
    msp, mclaim = be_to_msp(be, claim)
    return msp_to_pauli_msp(msp, mclaim, eliminate)


CONVERSIONS = {
    "msp-to-pauli-msp": msp_to_pauli_msp,
    "pauli-msp-to-msp": pauli_msp_to_msp,
    "be-to-msp": be_to_msp,
    "pauli-msp-to-be": pauli_msp_to_be,
    "msp-to-be": msp_to_be,
    "be-to-pauli-msp": be_to_pauli_msp,
}


@dataclass
class Surplus:
    """Cost added by a conversion, output minus input."""

    depth: int
    t_count: int
    t_depth: int
    qubits: int
    gate_count: int

    def to_dict(self) -> dict:
        return dict(vars(self))


def surplus(before: Circuit, after: Circuit) -> Surplus:
    a, b = cost(before), cost(after)
    return Surplus(
        b.depth - a.depth,
        b.t_count - a.t_count,
        b.t_depth - a.t_depth,
        after.qubits - before.qubits,
        b.gate_count - a.gate_count,
    )
