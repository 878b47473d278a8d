"""Resource table of the all-Pauli multiplexer for n = 1..N."""

import argparse
import json

from qencode.circuit import cost
from qencode.mux import pmx_all


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--json", action="store_true", help="print JSON lines instead of a table")
    args = parser.parse_args()
    print("n  qubits depth rotations cx t_count t_depth")
    for n in range(1, args.max_n + 1):
        r = cost(pmx_all(n))
        if args.json:
            print(json.dumps({"n": n, **r.to_dict()}, sort_keys=True))
        else:
            print(f"{n:<2} {3 * n:<6} {r.depth:<5} {r.rotation_count:<9} {r.cnot_count:<3} {r.t_count:<7} {r.t_depth}")


if __name__ == "__main__":
    main()
