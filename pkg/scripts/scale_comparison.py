"""Compare block-encoding scales: measured vs the stored claim and textbook formulas.

For every random matrix this prints the measured scale next to
  l1      sum |alpha_w|  (what the Hermitian LCU path achieves)
  fro2/N  ||A||_F^2 / N
  sqrtN.F sqrt(N) ||A||_F  (Hadamard path with an exact Pauli preparation)
  N.F     N ||A||_F
"""

import argparse
import math

import numpy as np

from qencode import encode, verify
from qencode.pauli import dense_to_pauli


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--count", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)
    side = 2**args.n
    print(f"{'path':<4} {'measured':>10} {'claim':>10} {'l1':>10} {'fro2/N':>10} {'sqrtN.F':>10} {'N.F':>10}")
    for _ in range(args.count):
        a = rng.normal(size=(side, side)) + 1j * rng.normal(size=(side, side))
        for label, m in (("BE", a), ("HBE", a + a.conj().T)):
            c, claim = encode.matrix_to_be(m)
            rep = verify.check_block_encoding(c, m)
            fro = np.linalg.norm(m)
            l1 = np.sum(np.abs(dense_to_pauli(m).flat()))
            print(f"{label:<4} {rep.measured_scale:10.5f} {claim.scale:10.5f} {l1:10.5f} "
                  f"{fro**2 / side:10.5f} {math.sqrt(side) * fro:10.5f} {side * fro:10.5f}")
    # homogeneity: doubling A must double a scale
    z = np.diag([1.0, -1.0])
    for k in (1, 2, 4):
        c, _ = encode.matrix_to_be(k * z)
        rep = verify.check_block_encoding(c, k * z)
        print(f"A = {k}Z: measured {rep.measured_scale:.3f}, ||A||_F^2/N = {np.linalg.norm(k * z) ** 2 / 2:.3f}")


if __name__ == "__main__":
    main()
