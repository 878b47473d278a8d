"""Timing of the batched Pauli decomposition against the trace-formula oracle."""

import argparse
import time

import numpy as np

from qencode.pauli import coeff_oracle, dense_to_pauli, word_from_index


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--oracle-max-n", type=int, default=4)
    args = parser.parse_args()
    rng = np.random.default_rng(0)
    print("n  side   decompose_s  oracle_s    max_err")
    for n in range(1, args.max_n + 1):
        side = 2**n
        a = rng.normal(size=(side, side)) + 1j * rng.normal(size=(side, side))
        t0 = time.perf_counter()
        c = dense_to_pauli(a)
        t1 = time.perf_counter()
        if n <= args.oracle_max_n:
            oracle = np.array([coeff_oracle(a, word_from_index(j, n)) for j in range(4**n)])
            t2 = time.perf_counter()
            err = f"{np.max(np.abs(oracle - c.flat())):.1e}"
            otime = f"{t2 - t1:.4f}"
        else:
            err, otime = "-", "-"
        print(f"{n:<2} {side:<6} {t1 - t0:<12.4f} {otime:<11} {err}")


if __name__ == "__main__":
    main()
