"""Gate-level circuit IR.

A circuit is an ordered gate list over named registers.  Each register is a
block of equally sized subregisters; bit 0 of a subregister is the least
significant bit of the integer it stores.  Gates are primitives from
{X, H, RY, RZ, SWAP} plus an arbitrary list of control conditions, each of
which requires a qubit to be 0 or 1 (negative controls are first-class, so
value-controlled gates need no X-conjugation until full lowering).

Also provides greedy ASAP layer scheduling (circuit depth under the
"disjoint gates run in parallel" convention) and weighted primitive counting.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace

PRIMITIVES = ("X", "H", "RY", "RZ", "SWAP")
ROTATIONS = ("RY", "RZ")
_TARGET_COUNT = {"X": 1, "H": 1, "RY": 1, "RZ": 1, "SWAP": 2}


@dataclass(frozen=True)
class Register:
    """A named block of ``count`` subregisters, ``width`` qubits each."""

    name: str
    count: int
    width: int


@dataclass(frozen=True)
class QubitRef:
    """A qubit addressed as (register, subregister, bit).

    ``sub=None`` is accepted and means subregister 0, for single-subregister
    registers.  ``bit`` counts from the least significant bit.
    """

    reg: str
    sub: int | None
    bit: int


@dataclass(frozen=True)
class Control:
    qubit: QubitRef
    value: int  # required bit value, 0 or 1


@dataclass(frozen=True)
class Gate:
    primitive: str
    angle: float | None
    targets: tuple[QubitRef, ...]
    controls: tuple[Control, ...] = ()

    def with_controls(self, extra: tuple[Control, ...]) -> "Gate":
        return replace(self, controls=self.controls + tuple(extra))


def qref(reg: str, sub: int, bit: int) -> QubitRef:
    return QubitRef(reg, sub, bit)


def ctrl(qubit: QubitRef, value: int = 1) -> Control:
    return Control(qubit, value)


def gate_x(target: QubitRef, controls: tuple[Control, ...] = ()) -> Gate:
    return Gate("X", None, (target,), tuple(controls))


def gate_h(target: QubitRef, controls: tuple[Control, ...] = ()) -> Gate:
    return Gate("H", None, (target,), tuple(controls))


def gate_ry(angle: float, target: QubitRef, controls: tuple[Control, ...] = ()) -> Gate:
    return Gate("RY", angle, (target,), tuple(controls))


def gate_rz(angle: float, target: QubitRef, controls: tuple[Control, ...] = ()) -> Gate:
    return Gate("RZ", angle, (target,), tuple(controls))


def gate_swap(a: QubitRef, b: QubitRef, controls: tuple[Control, ...] = ()) -> Gate:
    return Gate("SWAP", None, (a, b), tuple(controls))


def value_controls(reg: str, sub: int, value: int, width: int) -> tuple[Control, ...]:
    """Controls requiring subregister (reg, sub) to hold ``value`` on its low ``width`` bits."""
    if value < 0 or value >= (1 << width):
        raise ValueError(f"control value {value} does not fit in {width} bits")
    return tuple(Control(QubitRef(reg, sub, k), (value >> k) & 1) for k in range(width))


class Circuit:
    """Ordered gate list over a fixed register table.

    Global qubit numbering is a pure function of the table: registers in
    declaration order, subregisters ascending, bits ascending from the LSB.
    """

    def __init__(self, registers, metadata: dict | None = None):
        regs = []
        for r in registers:
            regs.append(r if isinstance(r, Register) else Register(*r))
        names = [r.name for r in regs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate register name in {names}")
        for r in regs:
            if r.count < 1 or r.width < 1:
                raise ValueError(f"register {r.name!r} must have count >= 1 and width >= 1")
        self.registers: tuple[Register, ...] = tuple(regs)
        self.metadata: dict = dict(metadata or {})
        self.gates: list[Gate] = []
        self._offsets: dict[str, int] = {}
        offset = 0
        for r in regs:
            self._offsets[r.name] = offset
            offset += r.count * r.width
        self.num_qubits: int = offset

    def register(self, name: str) -> Register:
        for r in self.registers:
            if r.name == name:
                return r
        raise ValueError(f"unknown register {name!r}")

    def qubit_index(self, ref: QubitRef) -> int:
        reg = self.register(ref.reg)
        sub = 0 if ref.sub is None else ref.sub
        if not 0 <= sub < reg.count:
            raise ValueError(f"subregister {ref.reg}:{sub} out of range (count {reg.count})")
        if not 0 <= ref.bit < reg.width:
            raise ValueError(f"bit {ref.bit} out of range for register {ref.reg} (width {reg.width})")
        return self._offsets[ref.reg] + sub * reg.width + ref.bit

    def ref_of(self, index: int) -> QubitRef:
        """Inverse of qubit_index."""
        if not 0 <= index < self.num_qubits:
            raise ValueError(f"qubit index {index} out of range")
        for r in self.registers:
            base = self._offsets[r.name]
            if index < base + r.count * r.width:
                local = index - base
                return QubitRef(r.name, local // r.width, local % r.width)
        raise AssertionError("unreachable")

    def subregister_qubits(self, name: str, sub: int) -> list[int]:
        reg = self.register(name)
        base = self._offsets[name] + sub * reg.width
        return list(range(base, base + reg.width))

    def register_qubits(self, name: str) -> list[int]:
        reg = self.register(name)
        base = self._offsets[name]
        return list(range(base, base + reg.count * reg.width))

    def gate_qubits(self, gate: Gate) -> tuple[int, ...]:
        """Global indices touched by a gate: targets then control qubits."""
        return tuple(self.qubit_index(t) for t in gate.targets) + tuple(
            self.qubit_index(c.qubit) for c in gate.controls
        )

    def append(self, gate: Gate) -> "Circuit":
        if gate.primitive not in PRIMITIVES:
            raise ValueError(f"unknown primitive {gate.primitive!r}")
        want = _TARGET_COUNT[gate.primitive]
        if len(gate.targets) != want:
            raise ValueError(f"{gate.primitive} takes {want} target(s), got {len(gate.targets)}")
        if (gate.angle is not None) != (gate.primitive in ROTATIONS):
            raise ValueError(f"angle must be present iff primitive is a rotation ({gate.primitive})")
        for c in gate.controls:
            if c.value not in (0, 1):
                raise ValueError(f"control value must be 0 or 1, got {c.value}")
        touched = self.gate_qubits(gate)
        if len(set(touched)) != len(touched):
            raise ValueError(f"gate targets/controls overlap: {gate}")
        self.gates.append(gate)
        return self

    def extend(self, gates) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def copy_empty(self) -> "Circuit":
        return Circuit(self.registers, self.metadata)

    def __len__(self) -> int:
        return len(self.gates)


def new_circuit(registers, metadata: dict | None = None) -> Circuit:
    return Circuit(registers, metadata)


def emit_value_controlled(
    circuit: Circuit, gate: Gate, reg: str, sub: int, value: int, width: int
) -> Circuit:
    """Append ``gate`` controlled on subregister (reg, sub) holding ``value``.

    One control per bit position 0..width-1; bits of ``value`` that are 0
    become negative controls.
    """
    if width > circuit.register(reg).width:
        raise ValueError(f"control width {width} exceeds register {reg!r} width")
    return circuit.append(gate.with_controls(value_controls(reg, sub, value, width)))


@dataclass(frozen=True)
class LayeredCircuit:
    """ASAP layering: gates within one layer touch pairwise disjoint qubits."""

    layers: tuple[tuple[int, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.layers)


def schedule_asap(circuit: Circuit) -> LayeredCircuit:
    """Greedy as-soon-as-possible layering, deterministic in gate-list order.

    Each gate lands in the earliest layer after the last layer touching any
    of its qubits (targets and controls alike).
    """
    layers: list[list[int]] = []
    busy: dict[int, int] = {}
    for idx, gate in enumerate(circuit.gates):
        qubits = circuit.gate_qubits(gate)
        layer = 1 + max((busy.get(q, -1) for q in qubits), default=-1)
        if layer == len(layers):
            layers.append([])
        layers[layer].append(idx)
        for q in qubits:
            busy[q] = layer
    return LayeredCircuit(tuple(tuple(layer) for layer in layers))


def primitive_class(gate: Gate) -> str:
    """Cost class of a gate in the counting alphabet.

    Classes: X, CX, C{m}X (m >= 2), H, CH, RY, CRY, RZ.  Controlled SWAPs,
    bare SWAPs, controlled RZ and multiply-controlled H/RY have no class and
    must be decomposed before counting.
    """
    m = len(gate.controls)
    p = gate.primitive
    if p == "X":
        if m == 0:
            return "X"
        if m == 1:
            return "CX"
        return f"C{m}X"
    if p == "SWAP":
        raise ValueError("SWAP has no cost class; lower controlled swaps first")
    if m == 0:
        return p
    if m == 1 and p in ("H", "RY"):
        return "C" + p
    raise ValueError(f"no cost class for {p} with {m} controls")


def primitive_multiset(circuit: Circuit) -> Counter:
    """Multiset of counting-alphabet classes over the gate list."""
    return Counter(primitive_class(g) for g in circuit.gates)


def count_primitives(circuit: Circuit, profile) -> int | float:
    """Total weighted gate count: sum of profile costs per (primitive, arity) class."""
    return sum(profile.cost(g.primitive, len(g.controls)) for g in circuit.gates)
