"""Gate-level IR, composition algebra, cost accounting and rewrite passes.

Gate sequences are in time order: ``gates[0]`` is applied first.  Qubit 0 is
the most significant bit of every basis index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .numkit import Permutation

SINGLE = ("h", "x", "s", "sdg", "t", "tdg")
ROTATIONS = ("ry", "rz", "p")
DIAGONAL_KINDS = ("s", "sdg", "t", "tdg", "rz", "p", "cp", "diag")
KINDS = SINGLE + ROTATIONS + ("cx", "cp", "fanout_cx", "swap", "diag")


class CircuitError(ValueError):
    pass


class CostModelError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    """One gate.

    ``qubits`` holds (target,) for one-qubit gates, (control, target) for cx
    and cp, (control, *targets) for fanout_cx, (a, b) for swap and the target
    list for diag.
    """

    kind: str
    qubits: tuple
    angle: float | None = None
    phases: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        qs = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qs)
        if len(set(qs)) != len(qs):
            raise CircuitError(f"repeated qubit in {self.kind} {qs}")
        arity = {"cx": 2, "cp": 2, "swap": 2}
        if self.kind in SINGLE + ROTATIONS and len(qs) != 1:
            raise CircuitError(f"{self.kind} acts on one qubit")
        if self.kind in arity and len(qs) != arity[self.kind]:
            raise CircuitError(f"{self.kind} acts on two qubits")
        if self.kind == "fanout_cx" and len(qs) < 2:
            raise CircuitError("fanout_cx needs a control and at least one target")
        if self.kind in ROTATIONS + ("cp",):
            if self.angle is None:
                raise CircuitError(f"{self.kind} needs an angle")
            object.__setattr__(self, "angle", float(self.angle))
        if self.kind == "diag":
            if self.phases is None or len(self.phases) != 2 ** len(qs):
                raise CircuitError("diag needs 2^k phases for k targets")
            object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))

    def matrix(self) -> np.ndarray:
        return gate_matrix(self)

    def relabel(self, mapping) -> "Gate":
        return replace(self, qubits=tuple(mapping[q] for q in self.qubits))


def h(q):
    return Gate("h", (q,))


def x(q):
    return Gate("x", (q,))


def s(q):
    return Gate("s", (q,))


def sdg(q):
    return Gate("sdg", (q,))


def t(q):
    return Gate("t", (q,))


def tdg(q):
    return Gate("tdg", (q,))


def ry(q, angle):
    return Gate("ry", (q,), angle=angle)


def rz(q, angle):
    return Gate("rz", (q,), angle=angle)


def phase(q, angle):
    return Gate("p", (q,), angle=angle)


def cx(control, target):
    return Gate("cx", (control, target))


def cp(control, target, angle):
    return Gate("cp", (control, target), angle=angle)


def fanout_cx(control, targets):
    return Gate("fanout_cx", (control, *targets))


def swap(a, b):
    return Gate("swap", (a, b))


def diag(targets, phases):
    return Gate("diag", tuple(targets), phases=tuple(phases))


_FIXED = {
    "h": np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "s": np.diag([1, 1j]),
    "sdg": np.diag([1, -1j]),
    "t": np.diag([1, np.exp(1j * math.pi / 4)]),
    "tdg": np.diag([1, np.exp(-1j * math.pi / 4)]),
}


def ry_matrix(angle):
    c, sn = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -sn], [sn, c]], dtype=complex)


def rz_matrix(angle):
    return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])


def gate_matrix(g: Gate) -> np.ndarray:
    """Unitary on ``g.qubits`` (first listed qubit is the most significant)."""
    k = g.kind
    if k in _FIXED:
        return _FIXED[k].copy()
    if k == "ry":
        return ry_matrix(g.angle)
    if k == "rz":
        return rz_matrix(g.angle)
    if k == "p":
        return np.diag([1, np.exp(1j * g.angle)])
    if k == "cx":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    if k == "cp":
        return np.diag([1, 1, 1, np.exp(1j * g.angle)])
    if k == "swap":
        return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    if k == "diag":
        return np.diag(np.exp(1j * np.array(g.phases)))
    if k == "fanout_cx":
        m = len(g.qubits) - 1
        half = 2**m
        out = np.eye(2 * half, dtype=complex)
        out[half:, half:] = np.fliplr(np.eye(half))
        return out
    raise CircuitError(k)


@dataclass(frozen=True)
class Circuit:
    qubits: int
    gates: tuple = ()
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if not isinstance(g, Gate):
                raise CircuitError(f"not a gate: {g!r}")
            if any(q < 0 or q >= self.qubits for q in g.qubits):
                raise CircuitError(f"{g.kind} on {g.qubits} outside {self.qubits} qubits")

    def __len__(self):
        return len(self.gates)

    def with_gates(self, gates, **meta) -> "Circuit":
        md = dict(self.metadata)
        md.update(meta)
        return Circuit(self.qubits, tuple(gates), md)

    def with_metadata(self, **meta) -> "Circuit":
        return self.with_gates(self.gates, **meta)


def compose(a: Circuit, b: Circuit) -> Circuit:
    """Run ``a`` then ``b``."""
    if a.qubits != b.qubits:
        raise CircuitError(f"compose: {a.qubits} vs {b.qubits} qubits")
    return Circuit(a.qubits, a.gates + b.gates)


def sequence(qubits: int, *parts) -> Circuit:
    gates = []
    for p in parts:
        if isinstance(p, Circuit):
            if p.qubits != qubits:
                raise CircuitError(f"sequence: part has {p.qubits} qubits, expected {qubits}")
            gates.extend(p.gates)
        elif isinstance(p, Gate):
            gates.append(p)
        else:
            gates.extend(p)
    return Circuit(qubits, tuple(gates))


def embed(c: Circuit, qubit_map, total: int) -> Circuit:
    """Place ``c`` on a larger register; qubit i of ``c`` becomes ``qubit_map[i]``."""
    qubit_map = list(qubit_map)
    if len(qubit_map) != c.qubits:
        raise CircuitError("embed: map length differs from circuit width")
    return Circuit(total, tuple(g.relabel(qubit_map) for g in c.gates))


def shifted(c: Circuit, offset: int, total: int) -> Circuit:
    return embed(c, range(offset, offset + c.qubits), total)


def tensor(a: Circuit, b: Circuit) -> Circuit:
    """``a`` on the low (most significant) indices, ``b`` below it."""
    total = a.qubits + b.qubits
    return Circuit(total, shifted(a, 0, total).gates + shifted(b, a.qubits, total).gates)


_INVERSE = {"s": "sdg", "sdg": "s", "t": "tdg", "tdg": "t"}


def _inverse_gate(g: Gate) -> Gate:
    if g.kind in _INVERSE:
        return replace(g, kind=_INVERSE[g.kind])
    if g.kind in ROTATIONS + ("cp",):
        return replace(g, angle=-g.angle)
    if g.kind == "diag":
        return replace(g, phases=tuple(-p for p in g.phases))
    return g


def _conjugate_gate(g: Gate) -> Gate:
    if g.kind in _INVERSE:
        return replace(g, kind=_INVERSE[g.kind])
    if g.kind in ("rz", "p", "cp"):
        return replace(g, angle=-g.angle)
    if g.kind == "diag":
        return replace(g, phases=tuple(-p for p in g.phases))
    return g


def adjoint(c: Circuit) -> Circuit:
    return Circuit(c.qubits, tuple(_inverse_gate(g) for g in reversed(c.gates)))


def conjugate(c: Circuit) -> Circuit:
    """Entry-wise complex conjugate of M(c)."""
    return Circuit(c.qubits, tuple(_conjugate_gate(g) for g in c.gates))


def transpose(c: Circuit) -> Circuit:
    """Circuit for M(c)^T: adjoint of the conjugate, gate by gate."""
    return adjoint(conjugate(c))


def permutation_circuit(p) -> Circuit:
    """SWAP network moving the state of qubit i to qubit p(i)."""
    if not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    n = len(p)
    inv = p.inverse().map
    content = list(range(n))
    where = list(range(n))
    gates = []
    for pos in range(n):
        want = inv[pos]
        cur = where[want]
        if cur != pos:
            gates.append(swap(pos, cur))
            other = content[pos]
            content[pos], content[cur] = want, other
            where[want], where[other] = pos, cur
    return Circuit(n, tuple(gates))


def interlace_permutation(q: int) -> Permutation:
    """Qubit i of register one goes to 2i, qubit i of register two to 2i+1."""
    return Permutation(tuple([2 * i for i in range(q)] + [2 * i + 1 for i in range(q)]))


# Cost accounting -------------------------------------------------------------

_EPS = 1e-9


def _angle_units(angle: float, unit: float):
    """Return k if angle == k*unit (mod 2pi) for an integer k, else None."""
    r = math.remainder(angle, 2 * math.pi) / unit
    k = round(r)
    if abs(r - k) < _EPS:
        return k % round(2 * math.pi / unit)
    return None


def t_cost(g: Gate):
    """(t_count, is_generic_rotation) for a single gate."""
    k = g.kind
    if k in ("t", "tdg"):
        return 1, False
    if k in ROTATIONS:
        quarter = _angle_units(g.angle, math.pi / 2)
        if quarter is not None:
            return 0, False
        if _angle_units(g.angle, math.pi / 4) is not None:
            return 1, False
        return 0, True
    if k == "cp":
        units = _angle_units(g.angle, math.pi / 2)
        if units in (0, 2):
            return 0, False
        if units in (1, 3):
            return 1, False
        return 0, True
    if k == "diag":
        raise CostModelError("lower Diagonal gates before costing")
    return 0, False


@dataclass
class CostReport:
    gate_count: int = 0
    depth: int = 0
    t_count: int = 0
    t_depth: int = 0
    rotation_count: int = 0
    cnot_count: int = 0
    generic_rotation_count: int = 0
    kinds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "gate_count": self.gate_count,
            "depth": self.depth,
            "t_count": self.t_count,
            "t_depth": self.t_depth,
            "rotation_count": self.rotation_count,
            "cnot_count": self.cnot_count,
            "generic_rotation_count": self.generic_rotation_count,
            "kinds": dict(sorted(self.kinds.items())),
        }


def cost(c: Circuit) -> CostReport:
    """Every gate kind costs depth 1 (fanout included); T from the angle rules."""
    rep = CostReport()
    level = [0] * c.qubits
    tlevel = [0] * c.qubits
    for g in c.gates:
        tc, generic = t_cost(g)
        rep.gate_count += 1
        rep.kinds[g.kind] = rep.kinds.get(g.kind, 0) + 1
        rep.t_count += tc
        rep.generic_rotation_count += int(generic)
        if g.kind in ROTATIONS:
            rep.rotation_count += 1
        if g.kind in ("cx", "fanout_cx"):
            rep.cnot_count += 1
        d = 1 + max(level[q] for q in g.qubits)
        td = (1 if tc else 0) + max(tlevel[q] for q in g.qubits)
        for q in g.qubits:
            level[q] = d
            tlevel[q] = td
    rep.depth = max(level, default=0)
    rep.t_depth = max(tlevel, default=0)
    return rep


# Rewrite passes --------------------------------------------------------------


def expand_fanout(c: Circuit) -> Circuit:
    gates = []
    for g in c.gates:
        if g.kind == "fanout_cx":
            ctrl = g.qubits[0]
            gates.extend(cx(ctrl, tq) for tq in g.qubits[1:])
        else:
            gates.append(g)
    return c.with_gates(gates)


def lower_diagonals(c: Circuit) -> Circuit:
    from .mux import diagonal_gate

    gates = []
    for g in c.gates:
        if g.kind == "diag":
            sub = diagonal_gate(g.phases)
            gates.extend(embed(sub, g.qubits, c.qubits).gates)
        else:
            gates.append(g)
    return c.with_gates(gates)


def eliminate_permutations(c: Circuit) -> Circuit:
    """Drop SWAP gates from a state-preparation circuit.

    For a circuit run on |0...0>, ``B . SWAP . A |0>`` equals ``B . A' |0>`` where
    A' is A with the two swapped labels exchanged, so every SWAP (leading,
    trailing or in between) can be absorbed by relabeling the gates before it.
    """
    labels = list(range(c.qubits))
    kept = []
    for g in reversed(c.gates):
        if g.kind == "swap":
            a, b = g.qubits
            labels[a], labels[b] = labels[b], labels[a]
        else:
            kept.append(g.relabel(labels))
    return c.with_gates(reversed(kept))


def _zero_gate(g: Gate) -> bool:
    if g.kind in ("ry", "rz"):
        return abs(math.remainder(g.angle, 4 * math.pi)) < 1e-12
    if g.kind in ("p", "cp"):
        return abs(math.remainder(g.angle, 2 * math.pi)) < 1e-12
    if g.kind == "diag":
        return all(abs(math.remainder(p, 2 * math.pi)) < 1e-12 for p in g.phases)
    return False


def _commutes_with_cx(g: Gate, a: int, b: int) -> bool:
    qs = g.qubits
    if a not in qs and b not in qs:
        return True
    if g.kind == "cx":
        return qs[0] != b and qs[1] != a
    if g.kind == "fanout_cx":
        return qs[0] != b and a not in qs[1:]
    if g.kind in DIAGONAL_KINDS:
        return b not in qs
    if g.kind == "x":
        return qs[0] == b
    return False


def _cx_pairs(g: Gate):
    if g.kind == "cx":
        return [g.qubits]
    return [(g.qubits[0], tq) for tq in g.qubits[1:]]


def _cancel_partner(gates, i):
    g = gates[i]
    pairs = _cx_pairs(g)
    for j in range(i + 1, len(gates)):
        other = gates[j]
        if other == g:
            return j
        if not all(_commutes_with_cx(other, a, b) for a, b in pairs):
            return None
    return None


def peephole_simplify(c: Circuit) -> Circuit:
    """Remove zero-angle gates and cancel CX pairs separated by commuting gates."""
    gates = [g for g in c.gates if not _zero_gate(g)]
    i = 0
    while i < len(gates):
        j = _cancel_partner(gates, i) if gates[i].kind in ("cx", "fanout_cx") else None
        if j is None:
            i += 1
            continue
        del gates[j]
        del gates[i]
        # a cancellation can expose an earlier pair
        i = 0
    return c.with_gates(gates)


# JSON ------------------------------------------------------------------------


def gate_to_json(g: Gate) -> dict:
    k = g.kind
    if k in SINGLE + ROTATIONS:
        out = {"kind": k, "target": g.qubits[0]}
        if g.angle is not None:
            out["angle"] = g.angle
        return out
    if k in ("cx", "cp"):
        out = {"kind": k, "control": g.qubits[0], "target": g.qubits[1]}
        if k == "cp":
            out["angle"] = g.angle
        return out
    if k == "fanout_cx":
        return {"kind": k, "control": g.qubits[0], "targets": list(g.qubits[1:])}
    if k == "swap":
        return {"kind": k, "targets": list(g.qubits)}
    return {"kind": k, "targets": list(g.qubits), "phases": list(g.phases)}


def gate_from_json(obj: dict) -> Gate:
    k = obj["kind"]
    if k in SINGLE:
        return Gate(k, (obj["target"],))
    if k in ROTATIONS:
        return Gate(k, (obj["target"],), angle=obj["angle"])
    if k == "cx":
        return Gate(k, (obj["control"], obj["target"]))
    if k == "cp":
        return Gate(k, (obj["control"], obj["target"]), angle=obj["angle"])
    if k == "fanout_cx":
        return Gate(k, (obj["control"], *obj["targets"]))
    if k == "swap":
        return Gate(k, tuple(obj["targets"]))
    if k == "diag":
        return Gate(k, tuple(obj["targets"]), phases=tuple(obj["phases"]))
    raise CircuitError(f"unknown gate kind {k!r}")


def circuit_to_json(c: Circuit) -> dict:
    return {
        "qubits": c.qubits,
        "gates": [gate_to_json(g) for g in c.gates],
        "metadata": c.metadata,
    }


def circuit_from_json(obj: dict) -> Circuit:
    return Circuit(
        int(obj["qubits"]),
        tuple(gate_from_json(g) for g in obj["gates"]),
        dict(obj.get("metadata", {})),
    )


# OpenQASM 3 ------------------------------------------------------------------

QASM_KINDS = SINGLE + ROTATIONS + ("cx", "cp", "swap")


def to_openqasm3(c: Circuit, lower: bool = False) -> str:
    """OpenQASM 3 text.  Qubit 0 is the MOST significant bit of a basis index,
    the reverse of the convention most toolchains use when printing states.
    """
    if lower:
        c = expand_fanout(lower_diagonals(c))
    bad = sorted({g.kind for g in c.gates if g.kind not in QASM_KINDS})
    if bad:
        raise CircuitError(f"cannot export {', '.join(bad)} gates; lower them first")
    lines = [
        "OPENQASM 3.0;",
        'include "stdgates.inc";',
        "// qubit 0 is the most significant bit: |q[0] q[1] ... q[n-1]>",
        f"qubit[{c.qubits}] q;",
    ]
    for g in c.gates:
        args = ", ".join(f"q[{i}]" for i in g.qubits)
        name = g.kind if g.angle is None else f"{g.kind}({float(g.angle)!r})"
        lines.append(f"{name} {args};")
    return "\n".join(lines) + "\n"
