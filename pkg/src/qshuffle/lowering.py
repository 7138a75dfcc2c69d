"""Lowering of value-controlled gates to the primitive alphabet.

Two levels:

* "counting" rewrites every (controlled) SWAP into three CX-shaped gates,
  only the middle one carrying the controls, and stops at the alphabet
  {X, H, RY, RZ, CX, CH, CRY, C^mX} in which the closed-form gate counts
  are stated.  Mixed-polarity controls stay as they are; the count classes
  do not distinguish polarity.

* "full" additionally rewrites every multiply-controlled X: negative
  controls are X-conjugated away, X with m >= 3 controls becomes a Toffoli
  ladder (clean or borrowed-qubit mode), and every Toffoli becomes the
  ancilla-free 6-CX + 9-single-qubit network (equal to the Toffoli up to
  global phase).

Borrowed-qubit mode uses a toggle ladder of 4(m-2) Toffolis that restores
the m-2 helper qubits for *any* initial helper state.  Clean mode assumes
m-2 helpers in |0>: an AND chain of m-3 Toffolis feeds a 4-Toffoli toggle
block on the last helper, then uncomputes, for 2(m-1) Toffolis total.
"""

from __future__ import annotations

from dataclasses import replace
from math import pi

from .circuit import Circuit, Control, Gate, QubitRef, ctrl, gate_h, gate_rz, gate_x

MCX_MODES = ("abstract", "borrowed", "clean")
LOWERING_LEVELS = ("counting", "full")


def lower_controlled_swap(gate: Gate) -> list[Gate]:
    """SWAP(a, b) with k >= 0 controls -> CX(a->b), controlled X on a, CX(a->b).

    Only the middle gate carries the swap's controls (plus b), so a swap
    controlled on c qubits costs 2 CX + one X with c+1 controls.
    """
    if gate.primitive != "SWAP":
        raise ValueError(f"expected SWAP, got {gate.primitive}")
    a, b = gate.targets
    outer = gate_x(b, (ctrl(a, 1),))
    middle = gate_x(a, gate.controls + (ctrl(b, 1),))
    return [outer, middle, outer]


def eliminate_negative_controls(gate: Gate) -> list[Gate]:
    """X-conjugate away 0-valued controls, leaving an all-positive gate."""
    flips = [gate_x(c.qubit) for c in gate.controls if c.value == 0]
    positive = replace(gate, controls=tuple(Control(c.qubit, 1) for c in gate.controls))
    return flips + [positive] + list(reversed(flips))


def lower_toffoli(gate: Gate) -> list[Gate]:
    """X with exactly 2 positive controls -> 6 CX + 9 single-qubit gates.

    The T gates of the textbook network are written as RZ(pi/4), so the
    result equals the Toffoli only up to a global phase.
    """
    if gate.primitive != "X" or len(gate.controls) != 2:
        raise ValueError("lower_toffoli expects an X gate with exactly 2 controls")
    if any(c.value != 1 for c in gate.controls):
        raise ValueError("lower_toffoli expects positive controls; eliminate negatives first")
    a, b = gate.controls[0].qubit, gate.controls[1].qubit
    t = gate.targets[0]
    quarter = pi / 4.0
    cx = lambda c, tgt: gate_x(tgt, (ctrl(c, 1),))
    return [
        gate_h(t),
        cx(b, t),
        gate_rz(-quarter, t),
        cx(a, t),
        gate_rz(quarter, t),
        cx(b, t),
        gate_rz(-quarter, t),
        cx(a, t),
        gate_rz(quarter, b),
        gate_rz(quarter, t),
        gate_h(t),
        cx(a, b),
        gate_rz(quarter, a),
        gate_rz(-quarter, b),
        cx(a, b),
    ]


def _toffoli(c1: QubitRef, c2: QubitRef, t: QubitRef) -> Gate:
    return gate_x(t, (ctrl(c1, 1), ctrl(c2, 1)))


def _toggle_ladder(controls: list[QubitRef], helpers: list[QubitRef], target: QubitRef) -> list[Gate]:
    """One toggle pass: applied twice it implements C^mX with arbitrary helpers."""
    m = len(controls)
    half = [_toffoli(controls[m - 1], helpers[m - 3], target)]
    for k in range(m - 3, 0, -1):
        half.append(_toffoli(controls[k + 1], helpers[k - 1], helpers[k]))
    half.append(_toffoli(controls[0], controls[1], helpers[0]))
    for k in range(1, m - 2):
        half.append(_toffoli(controls[k + 1], helpers[k - 1], helpers[k]))
    return half


def lower_mcx(gate: Gate, mode: str, idle_qubits) -> list[Gate]:
    """X with m >= 3 positive controls -> Toffoli network using idle qubits.

    borrowed: 4(m-2) Toffolis on m-2 helpers in an arbitrary state; the
    helpers are restored exactly.  clean: 2(m-1) Toffolis on m-2 helpers
    that must start in |0> and are returned to |0>.
    """
    if gate.primitive != "X" or len(gate.controls) < 3:
        raise ValueError("lower_mcx expects an X gate with at least 3 controls")
    if any(c.value != 1 for c in gate.controls):
        raise ValueError("lower_mcx expects positive controls; eliminate negatives first")
    if mode not in ("borrowed", "clean"):
        raise ValueError(f"unknown mcx mode {mode!r}")
    m = len(gate.controls)
    helpers = list(idle_qubits)
    if len(helpers) < m - 2:
        raise ValueError(f"C^{m}X needs {m - 2} idle qubits, got {len(helpers)}")
    helpers = helpers[: m - 2]
    controls = [c.qubit for c in gate.controls]
    target = gate.targets[0]
    if mode == "borrowed":
        half = _toggle_ladder(controls, helpers, target)
        return half + half
    # clean: AND chain over the first m-2 controls onto helpers[0..m-4],
    # then a borrowed-style toggle block on helpers[m-3], then uncompute.
    if m == 3:
        chain = []
        block_controls = controls
    else:
        chain = [_toffoli(controls[0], controls[1], helpers[0])]
        for k in range(1, m - 3):
            chain.append(_toffoli(controls[k + 1], helpers[k - 1], helpers[k]))
        block_controls = [helpers[m - 4], controls[m - 2], controls[m - 1]]
    block_half = _toggle_ladder(block_controls, [helpers[m - 3]], target)
    return chain + block_half + block_half + list(reversed(chain))


def lower_circuit(circuit: Circuit, level: str = "counting", mode: str = "borrowed") -> Circuit:
    """Rewrite a circuit to the requested lowering level.

    counting lowers only (controlled) swaps; full additionally lowers every
    X with >= 2 controls down to {X, H, RY, RZ, CX, CH, CRY}, borrowing or
    requiring clean idle qubits per ``mode``.
    """
    if level not in LOWERING_LEVELS:
        raise ValueError(f"unknown lowering level {level!r}")
    out = circuit.copy_empty()
    out.metadata["lowering"] = level
    if level == "full":
        out.metadata["mcx_mode"] = mode
    for gate in circuit.gates:
        seq = lower_controlled_swap(gate) if gate.primitive == "SWAP" else [gate]
        if level == "counting":
            out.extend(seq)
            continue
        for g in seq:
            _lower_full(out, g, mode)
    return out


def _lower_full(out: Circuit, gate: Gate, mode: str) -> None:
    if gate.primitive != "X" or len(gate.controls) < 2:
        out.append(gate)
        return
    if any(c.value == 0 for c in gate.controls):
        flips = [gate_x(c.qubit) for c in gate.controls if c.value == 0]
        out.extend(flips)
        _lower_full(out, replace(gate, controls=tuple(Control(c.qubit, 1) for c in gate.controls)), mode)
        out.extend(reversed(flips))
        return
    if len(gate.controls) == 2:
        out.extend(lower_toffoli(gate))
        return
    support = set(out.gate_qubits(gate))
    idle = [out.ref_of(q) for q in range(out.num_qubits) if q not in support]
    for toffoli in lower_mcx(gate, mode, idle):
        out.extend(lower_toffoli(toffoli))
