"""Dense complex linear algebra helpers and the Walsh-Hadamard / Gray-code kernels.

Conventions used throughout the package:

* indices are 0-based and arrays are row-major (last index fastest);
* ``vec`` flattens row-major, so ``vec(A)[i*N + j] == A[i, j]``;
* qubit 0 is the most significant bit of a basis index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np


class ShapeError(ValueError):
    pass


class SizeLimitError(ValueError):
    pass


@dataclass
class Limits:
    """Size caps protecting the dense code paths."""

    dense_side: int = 2**13
    unitary_qubits: int = 12
    statevector_qubits: int = 22


LIMITS = Limits()

ATOL = 1e-10


def is_power_of_two(k: int) -> bool:
    return k >= 1 and (k & (k - 1)) == 0


def log2_exact(k: int) -> int:
    if not is_power_of_two(k):
        raise ShapeError(f"{k} is not a power of two")
    return k.bit_length() - 1


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeError(f"expected a matrix, got shape {m.shape}")
    return m


def _check_side(side: int) -> None:
    if side > LIMITS.dense_side:
        raise SizeLimitError(f"dense side {side} exceeds cap {LIMITS.dense_side}")


def kron(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_side(max(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))
    return np.kron(a, b)


def direct_sum(blocks) -> np.ndarray:
    blocks = [as_matrix(b) for b in blocks]
    for b in blocks:
        if b.shape[0] != b.shape[1]:
            raise ShapeError(f"direct_sum needs square blocks, got {b.shape}")
    size = sum(b.shape[0] for b in blocks)
    _check_side(size)
    out = np.zeros((size, size), dtype=complex)
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return out


def vec(h) -> np.ndarray:
    return np.asarray(h, dtype=complex).reshape(-1)


def frobenius_norm(a) -> float:
    v = vec(a)
    return float(np.sqrt(np.real(np.vdot(v, v))))


def wht_rows(m) -> np.ndarray:
    """Multiply every row on the right by the orthonormal Hadamard matrix.

    In-place radix-2 butterfly over the last axis, O(M log M) per row.
    """
    out = np.array(m, dtype=complex if np.iscomplexobj(m) else float, copy=True)
    squeeze = out.ndim == 1
    if squeeze:
        out = out[None, :]
    rows, cols = out.shape
    log2_exact(cols)
    h = 1
    while h < cols:
        view = out.reshape(rows, cols // (2 * h), 2, h)
        top = view[:, :, 0, :].copy()
        bottom = view[:, :, 1, :]
        view[:, :, 0, :] = top + bottom
        view[:, :, 1, :] = top - bottom
        h *= 2
    out /= math.sqrt(cols)
    return out[0] if squeeze else out


def hadamard_matrix(size: int) -> np.ndarray:
    """Explicit orthonormal Sylvester Hadamard matrix, for oracles."""
    log2_exact(size)
    idx = np.arange(size)
    parity = np.array([[bin(i & j).count("1") & 1 for j in idx] for i in idx])
    return (1 - 2 * parity) / math.sqrt(size)


def gray_permutation(size: int) -> np.ndarray:
    log2_exact(size)
    j = np.arange(size)
    return j ^ (j >> 1)


def gray_matrix(size: int) -> np.ndarray:
    """Permutation matrix G with (x @ G)[j] == x[gray(j)]."""
    g = gray_permutation(size)
    out = np.zeros((size, size))
    out[g, np.arange(size)] = 1.0
    return out


def angle_transform(theta) -> np.ndarray:
    """Rotation-multiplexer angle transform (1/sqrt(M)) * Theta * H_M * G_M.

    Column j of the result holds the Walsh coefficient at index gray(j),
    which is the angle applied at step j of the CNOT cascade.
    """
    t = np.asarray(theta, dtype=float)
    squeeze = t.ndim == 1
    if squeeze:
        t = t[None, :]
    cols = t.shape[1]
    out = wht_rows(t) / math.sqrt(cols)
    out = out[:, gray_permutation(cols)]
    return out[0] if squeeze else out


def kron_permutation_matrix(k: int, l: int) -> np.ndarray:
    """P_{K,L} = sum_ij E_ij (K x L) kron E_ji (L x K).

    For x of length K and y of length L it maps y kron x to x kron y.
    """
    size = k * l
    _check_side(size)
    out = np.zeros((size, size))
    for i in range(k):
        for j in range(l):
            # row index of E_ij (x) E_ji: i*L + j, column: j*K + i
            out[i * l + j, j * k + i] = 1.0
    return out


@dataclass(frozen=True)
class Permutation:
    """Entry i of ``map`` is the image of i."""

    map: tuple

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"not a permutation: {m}")
        object.__setattr__(self, "map", m)

    def __len__(self):
        return len(self.map)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.map)
        for i, p in enumerate(self.map):
            inv[p] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.map))


# JSON carriers ---------------------------------------------------------------


def _reject_constant(name):
    raise ValueError(f"non-finite number {name} in input")


def loads(text: str):
    return json.loads(text, parse_constant=_reject_constant)


def _pairs(values) -> list:
    out = []
    for z in values:
        z = complex(z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError("non-finite value")
        out.append([z.real, z.imag])
    return out


def _unpairs(data, expected: int) -> np.ndarray:
    if len(data) != expected:
        raise ShapeError(f"expected {expected} entries, got {len(data)}")
    vals = []
    for item in data:
        if isinstance(item, (int, float)):
            re, im = float(item), 0.0
        else:
            re, im = float(item[0]), float(item[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError("non-finite value")
        vals.append(complex(re, im))
    return np.array(vals, dtype=complex)


def matrix_to_json(a) -> dict:
    a = as_matrix(a)
    return {"rows": a.shape[0], "cols": a.shape[1], "data": _pairs(a.reshape(-1))}


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    return _unpairs(obj["data"], rows * cols).reshape(rows, cols)


def hypermatrix_to_json(h) -> dict:
    h = np.asarray(h, dtype=complex)
    return {"dims": list(h.shape), "data": _pairs(h.reshape(-1))}


def hypermatrix_from_json(obj: dict) -> np.ndarray:
    dims = tuple(int(d) for d in obj["dims"])
    return _unpairs(obj["data"], int(np.prod(dims))).reshape(dims)
