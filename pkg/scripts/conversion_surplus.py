"""Measured surplus (qubits, depth, T-count, T-depth) of every conversion on random inputs."""

import argparse

import numpy as np

from qencode import convert, encode, verify
from qencode.pauli import dense_to_pauli


def cases(a):
    herm = (a + a.conj().T) / 2
    msp, mc = encode.matrix_msp(a)
    hsp, hc = encode.pauli_msp(a)
    be, bc = encode.matrix_to_be(a, force="be")
    hbe, hbc = encode.matrix_to_be(herm, force="hbe")
    return [
        ("Msp2PauliMsp", msp, mc, convert.msp_to_pauli_msp, a, "pauli"),
        ("PauliMsp2Msp", hsp, hc, convert.pauli_msp_to_msp, a, "matrix"),
        ("PauliMsp2Be", hsp, hc, convert.pauli_msp_to_be, a, "matrix"),
        ("Msp2Be", msp, mc, convert.msp_to_be, a, "matrix"),
        ("Be2Msp", be, bc, convert.be_to_msp, a, "matrix"),
        ("Be2Msp (HBE)", hbe, hbc, convert.be_to_msp, herm, "matrix"),
        ("Be2PauliMsp", be, bc, convert.be_to_pauli_msp, a, "pauli"),
        ("Be2PauliMsp (HBE)", hbe, hbc, convert.be_to_pauli_msp, herm, "pauli"),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=[1, 2, 3])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'conversion':<20} n  +qubits +depth +t_count +t_depth  verified")
    for n in args.n:
        side = 2**n
        a = rng.normal(size=(side, side)) + 1j * rng.normal(size=(side, side))
        for name, circ, claim, fn, target, form in cases(a):
            out, new = fn(circ, claim)
            if new.kind in ("BE", "HBE"):
                rep = verify.check_block_encoding(out, target, tol=1e-7)
            else:
                goal = dense_to_pauli(target).coeffs if form == "pauli" else target
                rep = verify.check_state_prep(out, goal, tol=1e-7)
            s = convert.surplus(circ, out)
            print(f"{name:<20} {n}  {s.qubits:<7} {s.depth:<6} {s.t_count:<8} {s.t_depth:<8}  {rep.ok}")


if __name__ == "__main__":
    main()
