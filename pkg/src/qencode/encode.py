"""State preparation and block-encoding synthesis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import numkit
from .circuit import Circuit, adjoint, h, peephole_simplify, sequence, shifted, transpose
from .mux import diagonal_gate, pmx_all, rotation_mux_gates
from .pauli import PauliCoefficients, dense_to_pauli

KINDS = ("BE", "HBE", "MSP", "HSP")
HERMITIAN_TOL = 1e-12


class ContractError(ValueError):
    pass


@dataclass
class EncodingClaim:
    """What a circuit encodes.

    For BE/HBE the top-left 2^data_qubits block is target / scale.  For MSP/HSP
    the leading prod(target_dims) amplitudes of the prepared state are
    vec(target) / scale; ancillas are the top qubits.
    """

    kind: str
    scale: float
    data_qubits: int
    ancilla_qubits: int
    target_dims: tuple = ()
    global_phase: float | None = None
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown claim kind {self.kind!r}")
        self.scale = float(self.scale)
        self.target_dims = tuple(int(d) for d in self.target_dims)

    @property
    def qubits(self) -> int:
        return self.data_qubits + self.ancilla_qubits

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "scale": self.scale,
            "data_qubits": self.data_qubits,
            "ancilla_qubits": self.ancilla_qubits,
            "target_dims": list(self.target_dims),
        }
        if self.global_phase is not None:
            out["global_phase"] = self.global_phase
        if self.notes:
            out["notes"] = dict(self.notes)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "EncodingClaim":
        return cls(
            obj["kind"],
            obj["scale"],
            int(obj["data_qubits"]),
            int(obj["ancilla_qubits"]),
            tuple(obj.get("target_dims", ())),
            obj.get("global_phase"),
            dict(obj.get("notes", {})),
        )


def attach(c: Circuit, claim: EncodingClaim) -> Circuit:
    return c.with_metadata(claim=claim.to_json())


def claim_of(c: Circuit) -> EncodingClaim:
    if "claim" not in c.metadata:
        raise ContractError("circuit carries no claim")
    return EncodingClaim.from_json(c.metadata["claim"])


def state_prep(v) -> tuple:
    """Exact state preparation of v / ||v|| (up to global phase), no ancillas.

    A cascade of Ry multiplexers sets the magnitudes level by level, then one
    diagonal fixes the relative phases.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    n = numkit.log2_exact(v.size)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ContractError("cannot prepare the zero vector")
    probs = np.abs(v / norm) ** 2
    gates = []
    for level in range(n):
        split = probs.reshape(2**level, 2, -1).sum(axis=2)
        angles = 2 * np.arctan2(np.sqrt(split[:, 1]), np.sqrt(split[:, 0]))
        if np.max(np.abs(angles)) > 1e-15:
            gates += rotation_mux_gates("y", angles, range(level), [level])
    phases = np.where(np.abs(v) > 0, np.angle(v), 0.0)
    phases = phases - phases[np.argmax(np.abs(v))]
    if np.max(np.abs(phases)) > 1e-15 and n > 0:
        gates += diagonal_gate(phases, exact=False).gates
    c = peephole_simplify(Circuit(n, tuple(gates)))
    claim = EncodingClaim("HSP", norm, n, 0, (v.size,))
    return attach(c, claim), claim


def matrix_msp(a) -> tuple:
    a = numkit.as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise numkit.ShapeError(f"square matrix required, got {a.shape}")
    n = numkit.log2_exact(a.shape[0])
    c, inner = state_prep(numkit.vec(a))
    claim = EncodingClaim("MSP", inner.scale, 2 * n, 0, a.shape)
    return attach(c, claim), claim


def pauli_msp(source) -> tuple:
    coeffs = source if isinstance(source, PauliCoefficients) else dense_to_pauli(source)
    c, inner = state_prep(coeffs.flat())
    claim = EncodingClaim("HSP", inner.scale, 2 * coeffs.n, 0, (4,) * coeffs.n)
    return attach(c, claim), claim


def _selector_width(nu, mux: Circuit) -> tuple:
    k = numkit.log2_exact(len(nu))
    if mux.qubits < k:
        raise numkit.ShapeError("multiplexer narrower than its selector")
    return k, mux.qubits - k


def lcu_be(nu, mux: Circuit, sp_claim: EncodingClaim | None = None) -> tuple:
    """Prepare sqrt(nu), select, then the gate-level transpose of the preparation."""
    if sp_claim is not None and sp_claim.ancilla_qubits:
        raise ContractError("this construction needs an exact, ancilla-free preparation")
    nu = np.asarray(nu, dtype=complex)
    k, n = _selector_width(nu, mux)
    sp, _ = state_prep(np.sqrt(nu))
    total = mux.qubits
    body = sequence(total, shifted(sp, 0, total), mux, shifted(transpose(sp), 0, total))
    claim = EncodingClaim("BE", float(np.sum(np.abs(nu))), n, k)
    return attach(body, claim), claim


def lcu_hbe(nu, mux: Circuit) -> tuple:
    """Hermitian variant for real weights: signs go into a selector diagonal."""
    nu = np.asarray(nu)
    if np.iscomplexobj(nu):
        if np.max(np.abs(nu.imag), initial=0.0) > HERMITIAN_TOL:
            raise ContractError("Hermitian construction needs real weights")
        nu = nu.real
    nu = nu.astype(float)
    k, n = _selector_width(nu, mux)
    sp, _ = state_prep(np.sqrt(np.abs(nu)))
    total = mux.qubits
    parts = [shifted(sp, 0, total), mux]
    if np.any(nu < 0) and k:
        signs = diagonal_gate(np.where(nu < 0, math.pi, 0.0), exact=True)
        parts.append(shifted(signs, 0, total))
    parts.append(shifted(adjoint(sp), 0, total))
    claim = EncodingClaim("HBE", float(np.sum(np.abs(nu))), n, k)
    return attach(sequence(total, *parts), claim), claim


def lcu_hadamard_be(sp: Circuit, sp_claim: EncodingClaim, mux: Circuit) -> tuple:
    """Prepare nu (garbage allowed), select, then Hadamards on the selector."""
    p = sp_claim.ancilla_qubits
    k = sp_claim.data_qubits
    if sp.qubits != p + k:
        raise numkit.ShapeError("preparation width disagrees with its claim")
    n = mux.qubits - k
    if n < 0:
        raise numkit.ShapeError("multiplexer narrower than the selector")
    total = p + mux.qubits
    hadamards = [h(q) for q in range(p, p + k)]
    body = sequence(total, shifted(sp, 0, total), shifted(mux, p, total), hadamards)
    claim = EncodingClaim("BE", math.sqrt(2**k) * sp_claim.scale, n, p + k)
    return attach(body, claim), claim


def pauli_to_hbe(c: PauliCoefficients) -> tuple:
    if not c.is_real():
        raise ContractError("Hermitian block encoding needs real Pauli coefficients")
    return lcu_hbe(c.flat().real, pmx_all(c.n))


def pauli_to_be(c: PauliCoefficients) -> tuple:
    sp, spc = pauli_msp(c)
    return lcu_hadamard_be(sp, spc, pmx_all(c.n))


def matrix_to_be(a, force: str | None = None) -> tuple:
    """Pauli route to a block encoding; Hermitian inputs get the HBE path.

    ``force`` may be "hbe" or "be" to override the Hermitian detection.
    """
    a = numkit.as_matrix(a)
    coeffs = dense_to_pauli(a)
    hermitian = bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= HERMITIAN_TOL)
    use_hbe = hermitian if force is None else force == "hbe"
    if use_hbe:
        if not hermitian:
            raise ContractError("matrix is not Hermitian")
        return pauli_to_hbe(PauliCoefficients(coeffs.n, coeffs.flat().real))
    return pauli_to_be(coeffs)
