"""Dense brute-force simulator and the encoding contract checkers."""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass

import numpy as np

from . import numkit
from .circuit import Circuit, Gate, gate_matrix

DEFAULT_TOL = 1e-9


class CapExceeded(ValueError):
    pass


def _caps():
    unitary = numkit.LIMITS.unitary_qubits
    state = numkit.LIMITS.statevector_qubits
    env = os.environ.get("QENCODE_QUBIT_CAP")
    if env:
        unitary = int(env)
        state = max(state, unitary)
    return unitary, state


def _apply(psi: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """Apply ``g`` to a tensor whose first n axes are qubits (extra axes batch)."""
    qs = g.qubits
    if g.kind == "fanout_cx":
        for tq in qs[1:]:
            psi = _apply_matrix(psi, gate_matrix(Gate("cx", (qs[0], tq))), (qs[0], tq))
        return psi
    if g.kind in ("s", "sdg", "t", "tdg", "rz", "p", "cp", "diag"):
        d = np.diag(gate_matrix(g))
        shape = [1] * psi.ndim
        for q in qs:
            shape[q] = 2
        # reshape puts the first listed qubit as most significant
        table = d.reshape((2,) * len(qs))
        order = np.argsort(qs)
        table = np.transpose(table, order).reshape(shape)
        return psi * table
    if g.kind == "cx":
        return _apply_cx(psi, *qs)
    if g.kind == "swap":
        return np.ascontiguousarray(np.swapaxes(psi, *qs))
    if len(qs) == 1:
        return _apply_single(psi, gate_matrix(g), qs[0])
    return _apply_matrix(psi, gate_matrix(g), qs)


def _index(ndim, **fixed):
    idx = [slice(None)] * ndim
    for axis, value in fixed.values():
        idx[axis] = value
    return tuple(idx)


def _apply_cx(psi, control, target):
    out = psi.copy()
    on0 = _index(psi.ndim, c=(control, 1), t=(target, 0))
    on1 = _index(psi.ndim, c=(control, 1), t=(target, 1))
    out[on0] = psi[on1]
    out[on1] = psi[on0]
    return out


def _apply_single(psi, u, q):
    lo = psi[_index(psi.ndim, t=(q, 0))]
    hi = psi[_index(psi.ndim, t=(q, 1))]
    return np.stack([u[0, 0] * lo + u[0, 1] * hi, u[1, 0] * lo + u[1, 1] * hi], axis=q)


def _apply_matrix(psi, u, qs):
    k = len(qs)
    ut = u.reshape((2,) * (2 * k))
    out = np.tensordot(ut, psi, axes=(list(range(k, 2 * k)), list(qs)))
    return np.moveaxis(out, list(range(k)), list(qs))


def run(c: Circuit, states: np.ndarray) -> np.ndarray:
    """Apply ``c`` to the columns of ``states`` (shape 2^q or 2^q x B)."""
    n = c.qubits
    batch = states.ndim == 2
    cols = states.shape[1] if batch else None
    psi = states.reshape((2,) * n + ((cols,) if batch else ()))
    psi = psi.astype(complex, copy=True)
    for g in c.gates:
        psi = _apply(psi, g, n)
    return psi.reshape((2**n, cols) if batch else (2**n,))


def unitary_of(c: Circuit) -> np.ndarray:
    cap, _ = _caps()
    if c.qubits > cap:
        raise CapExceeded(f"{c.qubits} qubits exceeds unitary cap {cap}")
    return run(c, np.eye(2**c.qubits, dtype=complex))


def statevector_of(c: Circuit) -> np.ndarray:
    _, cap = _caps()
    if c.qubits > cap:
        raise CapExceeded(f"{c.qubits} qubits exceeds statevector cap {cap}")
    psi = np.zeros(2**c.qubits, dtype=complex)
    psi[0] = 1.0
    return run(c, psi)


def leading_columns(c: Circuit, count: int) -> np.ndarray:
    """First ``count`` columns of M(c), without building the full unitary."""
    _, cap = _caps()
    if c.qubits > cap:
        raise CapExceeded(f"{c.qubits} qubits exceeds statevector cap {cap}")
    basis = np.zeros((2**c.qubits, count), dtype=complex)
    basis[np.arange(count), np.arange(count)] = 1.0
    return run(c, basis)


@dataclass
class VerificationReport:
    ok: bool
    measured_scale: float
    global_phase: float
    max_residual: float
    details: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _fit(observed: np.ndarray, target: np.ndarray, tol: float, what: str) -> VerificationReport:
    """Find c = beta * e^{i theta} with c * observed ~ target."""
    ob = observed.reshape(-1)
    tg = target.reshape(-1)
    tnorm = float(np.linalg.norm(tg))
    onorm = float(np.linalg.norm(ob))
    if tnorm == 0.0:
        ok = onorm <= tol
        return VerificationReport(ok, 0.0, 0.0, onorm, f"{what}: zero target, block norm {onorm:.3e}")
    if onorm == 0.0:
        return VerificationReport(False, math.inf, 0.0, tnorm, f"{what}: block is zero")
    c = np.vdot(ob, tg) / np.vdot(ob, ob)
    resid = float(np.max(np.abs(c * ob - tg)))
    rel = float(np.linalg.norm(c * ob - tg)) / tnorm
    ok = rel <= tol
    details = f"{what}: relative residual {rel:.3e}, scale {abs(c):.12g}"
    return VerificationReport(bool(ok), float(abs(c)), float(np.angle(c)), resid, details)


def block_of(c: Circuit, n_data: int) -> np.ndarray:
    size = 2**n_data
    return leading_columns(c, size)[:size, :]


def check_block_encoding(c: Circuit, a, tol: float = DEFAULT_TOL) -> VerificationReport:
    a = numkit.as_matrix(a)
    n = numkit.log2_exact(a.shape[0])
    if a.shape[0] != a.shape[1] or n > c.qubits:
        raise numkit.ShapeError(f"matrix {a.shape} does not fit a {c.qubits}-qubit circuit")
    return _fit(block_of(c, n), a, tol, "block encoding")


def check_state_prep(c: Circuit, h, tol: float = DEFAULT_TOL) -> VerificationReport:
    h = np.asarray(h, dtype=complex)
    size = h.size
    if 2**c.qubits % size:
        raise numkit.ShapeError(f"dims {h.shape} do not divide 2^{c.qubits}")
    psi = statevector_of(c)
    lead = psi[:size]
    rep = _fit(lead, h, tol, "state preparation")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > tol:
        rep.ok = False
        rep.details += f"; state norm {norm:.3e}"
    garbage = float(np.linalg.norm(psi[size:]))
    rep.details += f"; garbage norm {garbage:.3e}"
    return rep


def check_multiplexer(c: Circuit, blocks, tol: float = DEFAULT_TOL) -> VerificationReport:
    target = numkit.direct_sum(blocks)
    if target.shape[0] != 2**c.qubits:
        raise numkit.ShapeError("blocks do not match circuit size")
    u = unitary_of(c)
    resid = float(np.max(np.abs(u - target)))
    return VerificationReport(resid <= tol, 1.0, 0.0, resid, f"multiplexer: max deviation {resid:.3e}")


def hermitian_residual(c: Circuit) -> float:
    u = unitary_of(c)
    return float(np.max(np.abs(u - u.conj().T)))
