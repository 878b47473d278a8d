"""Pauli words, higher-order Pauli matrices and the classical A <-> A_P conversions.

Coefficients follow alpha_A(w) = Tr(sigma_w A) / N, so that
A = sum_w alpha_A(w) sigma_w and ||A||_F^2 = N * sum_w |alpha_A(w)|^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import numkit

LETTERS = "IXYZ"

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliWord:
    letters: str

    def __post_init__(self):
        if any(ch not in LETTERS for ch in self.letters):
            raise ValueError(f"bad Pauli word {self.letters!r}")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters

    def weight(self) -> int:
        return sum(ch != "I" for ch in self.letters)


def as_word(w) -> PauliWord:
    return w if isinstance(w, PauliWord) else PauliWord(str(w))


def word_from_index(idx: int, n: int) -> PauliWord:
    if not 0 <= idx < 4**n:
        raise ValueError(f"index {idx} out of range for {n} letters")
    letters = []
    for _ in range(n):
        letters.append(LETTERS[idx % 4])
        idx //= 4
    return PauliWord("".join(reversed(letters)))


def lex_index(w) -> int:
    idx = 0
    for ch in as_word(w).letters:
        idx = 4 * idx + LETTERS.index(ch)
    return idx


def pauli_matrix(w) -> np.ndarray:
    w = as_word(w)
    return reduce(numkit.kron, (PAULI[ch] for ch in w.letters), np.eye(1, dtype=complex))


@dataclass(frozen=True)
class PauliCoefficients:
    """Order-n hypermatrix of coefficients, dims (4, ..., 4)."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.size != 4**self.n:
            raise numkit.ShapeError(f"{c.size} coefficients for n={self.n}")
        object.__setattr__(self, "coeffs", c.reshape((4,) * self.n))

    def flat(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def __getitem__(self, w) -> complex:
        return complex(self.flat()[lex_index(w)])

    def is_real(self, tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self.flat().imag), initial=0.0) < tol)

    def to_json(self) -> dict:
        obj = numkit.hypermatrix_to_json(self.coeffs if self.n else self.coeffs.reshape(1))
        obj["dims"] = [4] * self.n
        obj["kind"] = "pauli-coefficients"
        obj["n"] = self.n
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "PauliCoefficients":
        n = int(obj["n"])
        data = numkit.hypermatrix_from_json({"dims": [4**n], "data": obj["data"]})
        return cls(n, data)


def _decompose_batched(a: np.ndarray) -> np.ndarray:
    """Block recursion on a stack of matrices; returns coefficients in lex order."""
    side = a.shape[0]
    stack = a[None, :, :]
    while side > 1:
        half = side // 2
        a11 = stack[:, :half, :half]
        a12 = stack[:, :half, half:]
        a21 = stack[:, half:, :half]
        a22 = stack[:, half:, half:]
        parts = (
            (a11 + a22) / 2,  # I
            (a12 + a21) / 2,  # X
            1j * (a12 - a21) / 2,  # Y
            (a11 - a22) / 2,  # Z
        )
        # new word index = old index * 4 + letter
        stack = np.stack(parts, axis=1).reshape(-1, half, half)
        side = half
    return stack.reshape(-1)


def _is_hermitian(a: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def dense_to_pauli(a) -> PauliCoefficients:
    a = numkit.as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise numkit.ShapeError(f"square matrix required, got {a.shape}")
    n = numkit.log2_exact(a.shape[0])
    if _is_hermitian(a):
        flat = _decompose_batched(a)
    else:
        h1 = (a.conj().T + a) / 2
        h2 = (a.conj().T - a) / 2j
        flat = _decompose_batched(h1) - 1j * _decompose_batched(h2)
    return PauliCoefficients(n, flat)


def coeff_oracle(a, w) -> complex:
    a = numkit.as_matrix(a)
    s = pauli_matrix(w)
    if s.shape != a.shape:
        raise numkit.ShapeError(f"word {w} does not match matrix {a.shape}")
    return complex(np.trace(s @ a) / a.shape[0])


def pauli_to_dense(c: PauliCoefficients) -> np.ndarray:
    stack = c.flat().reshape(-1, 1, 1)
    side = 1
    while stack.shape[0] > 1:
        parts = stack.reshape(-1, 4, side, side)
        ci, cx, cy, cz = (parts[:, k] for k in range(4))
        top = np.concatenate([ci + cz, cx - 1j * cy], axis=2)
        bottom = np.concatenate([cx + 1j * cy, ci - cz], axis=2)
        stack = np.concatenate([top, bottom], axis=1)
        side *= 2
    return stack[0]
