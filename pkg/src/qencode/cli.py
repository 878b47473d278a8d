"""qencode command line.

Every command prints one JSON object on stdout (sorted keys, shortest
round-trip floats) that includes the encoding claim of the circuit involved,
or null when there is none.  Exit status: 0 success, 1 failed verification,
2 bad arguments or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import convert, encode, numkit, verify
from .circuit import Circuit, CircuitError, CostModelError, circuit_from_json, circuit_to_json, cost, to_openqasm3
from .mux import pmx_all
from .pauli import PauliCoefficients, dense_to_pauli, pauli_to_dense

CONVERT_KINDS = {
    "msp2paulimsp": convert.msp_to_pauli_msp,
    "paulimsp2msp": convert.pauli_msp_to_msp,
    "msp2be": convert.msp_to_be,
    "paulimsp2be": convert.pauli_msp_to_be,
    "be2msp": convert.be_to_msp,
    "be2paulimsp": convert.be_to_pauli_msp,
}
ELIMINATING = ("msp2paulimsp", "paulimsp2msp", "msp2be", "be2paulimsp")


class UsageError(Exception):
    pass


def _default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_default) + "\n"


def _read_json(path: str):
    try:
        with open(path) as fh:
            return numkit.loads(fh.read())
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err}") from err
    except ValueError as err:
        raise UsageError(f"bad JSON in {path}: {err}") from err


def _write(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def _input_path(args) -> str:
    path = args.input or args.path
    if not path:
        raise UsageError("no input file given")
    return path


def _read_matrix(path: str) -> np.ndarray:
    obj = _read_json(path)
    if "rows" in obj:
        return numkit.matrix_from_json(obj)
    if obj.get("kind") == "pauli-coefficients":
        return pauli_to_dense(PauliCoefficients.from_json(obj))
    raise UsageError(f"{path} is not a matrix file")


def _read_circuit(path: str) -> Circuit:
    obj = _read_json(path)
    if "gates" not in obj:
        raise UsageError(f"{path} is not a circuit file")
    return circuit_from_json(obj)


def _claim_json(c: Circuit):
    return c.metadata.get("claim")


def _emit_circuit(args, c: Circuit, report: dict):
    text = dumps(circuit_to_json(c))
    if args.output:
        _write(args.output, text)
        report["output"] = args.output
        sys.stdout.write(dumps(report))
    else:
        sys.stdout.write(text)


def cmd_decompose(args) -> int:
    a = _read_matrix(_input_path(args))
    coeffs = dense_to_pauli(a)
    _write(args.output, dumps(coeffs.to_json()))
    if args.output:
        sys.stdout.write(dumps({"claim": None, "command": "decompose", "n": coeffs.n, "output": args.output}))
    return 0


def cmd_reconstruct(args) -> int:
    obj = _read_json(_input_path(args))
    if obj.get("kind") != "pauli-coefficients":
        raise UsageError("input is not a Pauli coefficient file")
    a = pauli_to_dense(PauliCoefficients.from_json(obj))
    _write(args.output, dumps(numkit.matrix_to_json(a)))
    if args.output:
        sys.stdout.write(dumps({"claim": None, "command": "reconstruct", "output": args.output}))
    return 0


def cmd_synth(args) -> int:
    path = _input_path(args)
    if args.kind == "pauli-msp":
        obj = _read_json(path)
        source = PauliCoefficients.from_json(obj) if obj.get("kind") == "pauli-coefficients" else _read_matrix(path)
        c, claim = encode.pauli_msp(source)
    else:
        a = _read_matrix(path)
        if args.kind == "msp":
            c, claim = encode.matrix_msp(a)
        elif args.kind == "hbe":
            c, claim = encode.matrix_to_be(a, force="hbe")
        else:
            force = "hbe" if args.force_hbe else "be" if args.force_be else None
            c, claim = encode.matrix_to_be(a, force=force)
    _emit_circuit(args, c, {"claim": claim.to_json(), "command": f"synth {args.kind}", "cost": cost(c).to_dict()})
    return 0


def cmd_convert(args) -> int:
    c = _read_circuit(_input_path(args))
    claim = encode.claim_of(c)
    fn = CONVERT_KINDS[args.kind]
    if args.kind in ELIMINATING:
        out, new = fn(c, claim, eliminate=not args.no_eliminate_perms)
    else:
        out, new = fn(c, claim)
    report = {
        "claim": new.to_json(),
        "command": f"convert {args.kind}",
        "input_claim": claim.to_json(),
        "surplus": convert.surplus(c, out).to_dict(),
    }
    _emit_circuit(args, out, report)
    return 0


def cmd_pmx(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("pmx needs --n >= 1")
    c = pmx_all(args.n)
    _emit_circuit(args, c, {"claim": None, "command": "pmx", "cost": cost(c).to_dict(), "n": args.n})
    return 0


def cmd_cost(args) -> int:
    c = _read_circuit(_input_path(args))
    sys.stdout.write(dumps({"claim": _claim_json(c), "command": "cost", "cost": cost(c).to_dict()}))
    return 0


def _target_for(claim: encode.EncodingClaim, path: str):
    obj = _read_json(path)
    if claim.kind == "HSP" and claim.target_dims and all(d == 4 for d in claim.target_dims):
        if obj.get("kind") == "pauli-coefficients":
            return PauliCoefficients.from_json(obj).coeffs
        if "rows" in obj:
            return dense_to_pauli(numkit.matrix_from_json(obj)).coeffs
    if "rows" in obj:
        return numkit.matrix_from_json(obj)
    if obj.get("kind") == "pauli-coefficients":
        return pauli_to_dense(PauliCoefficients.from_json(obj))
    if "dims" in obj:
        return numkit.hypermatrix_from_json(obj)
    raise UsageError(f"{path} holds no matrix or hypermatrix")


def cmd_verify(args) -> int:
    c = _read_circuit(_input_path(args))
    claim = encode.claim_of(c)
    if not args.against:
        raise UsageError("verify needs --against")
    target = _target_for(claim, args.against)
    if claim.kind in ("BE", "HBE"):
        rep = verify.check_block_encoding(c, target, tol=args.tol)
    else:
        rep = verify.check_state_prep(c, target, tol=args.tol)
    out = {
        "analytic_scale": claim.scale,
        "claim": claim.to_json(),
        "command": "verify",
        "report": rep.to_dict(),
    }
    if claim.kind == "HBE":
        try:
            herm = verify.hermitian_residual(c)
        except verify.CapExceeded:
            herm = None
        out["hermitian_residual"] = herm
        if herm is not None and herm > args.tol:
            rep.ok = False
            out["report"] = rep.to_dict()
    sys.stdout.write(dumps(out))
    return 0 if rep.ok else 1


def cmd_export_qasm(args) -> int:
    c = _read_circuit(_input_path(args))
    try:
        text = to_openqasm3(c, lower=args.lower)
    except CircuitError as err:
        raise UsageError(f"{err} (pass --lower)") from err
    _write(args.output, text)
    if args.output:
        sys.stdout.write(dumps({"claim": _claim_json(c), "command": "export-qasm", "output": args.output}))
    return 0


def _io(p, positional=True):
    if positional:
        p.add_argument("path", nargs="?", help="input file (same as -i)")
    p.add_argument("-i", "--input")
    p.add_argument("-o", "--output", "--out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qencode", description="Synthesize, convert and verify matrix encodings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="matrix -> Pauli coefficients")
    _io(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("reconstruct", help="Pauli coefficients -> matrix")
    _io(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("synth", help="matrix -> encoding circuit")
    p.add_argument("kind", choices=["msp", "pauli-msp", "be", "hbe"])
    _io(p)
    force = p.add_mutually_exclusive_group()
    force.add_argument("--force-hbe", action="store_true")
    force.add_argument("--force-be", action="store_true")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("convert", help="circuit -> circuit conversion")
    p.add_argument("kind", choices=sorted(CONVERT_KINDS))
    _io(p)
    p.add_argument("--no-eliminate-perms", action="store_true")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("pmx", help="multiplexer of all Pauli words")
    p.add_argument("--n", type=int, required=True)
    _io(p, positional=False)
    p.set_defaults(func=cmd_pmx)

    p = sub.add_parser("cost", help="resource report")
    _io(p)
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("verify", help="simulate and check the circuit's claim")
    _io(p)
    p.add_argument("--against", required=True)
    p.add_argument("--tol", type=float, default=verify.DEFAULT_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-qasm", help="OpenQASM 3 output")
    _io(p)
    p.add_argument("--lower", action="store_true", help="lower diagonals and fan-out CNOTs first")
    p.set_defaults(func=cmd_export_qasm)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"qencode: {err}", file=sys.stderr)
        return 2
    except (numkit.ShapeError, encode.ContractError, CircuitError, CostModelError, KeyError, ValueError) as err:
        print(f"qencode: {type(err).__name__}: {err}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
