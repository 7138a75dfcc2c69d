"""Closed-form qubit/gate/cycle counts and their circuit-measured counterparts.

A ``CostProfile`` assigns a nonnegative cost to each class of the counting
alphabet {X, H, RY, RZ, CX, CH, CRY, C^mX}.  Multi-controlled X costs come
from an explicit per-arity table, the unit rule (cost 1, the "abstract"
bookkeeping used for formula/measured equality checks) or the derived rule
  cost(C^2 X) = 6 cx + 7 rz + 2 h                 (Toffoli network)
  cost(C^m X) = 4 (m-2) (6 cx + 7 rz + 2 h)       (borrowed-qubit ladder).

The gate/qubit formulas are exact for the builders in this package: under
unit costs and counting-level lowering the formula equals the measured gate
count integer-for-integer.  Cycle formulas are upper bounds: they serialise
iterations and subroutines (only the permutation-register initialisation
and, for entangling variants, the per-iteration preparations parallelise),
so measured ASAP depth must never exceed them.

Notation: b(i) = bitlen(i) ancilla bits carry iteration i's draw,
hamming(k) counts set bits (the X-cascade writing or clearing |k>), and
w = ceil(log2 n) is the permutation subregister width.  Every controlled
subregister swap costs width * (2 cx + one X with b(i)+1 controls); the
one-hot encoding replaces b(i)+1 ancilla-plus-partner controls by 2.
The per-iteration uncompute costs sum(hamming(j), j <= i) X gates with b(i)
controls in binary, or i such gates in one-hot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .builders import BuildSpec
from .circuit import Circuit, count_primitives, schedule_asap


def hamming(k: int) -> int:
    return bin(k).count("1")


def ceil_log2(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n - 1).bit_length()


@dataclass
class CostProfile:
    x: int = 1
    h: int = 1
    ry: int = 1
    rz: int = 1
    cx: int = 1
    ch: int = 1
    cry: int = 1
    mcx: dict[int, int] = field(default_factory=dict)  # explicit per-arity overrides
    mcx_rule: str = "unit"  # "unit" | "derived"

    def __post_init__(self):
        for name in ("x", "h", "ry", "rz", "cx", "ch", "cry"):
            if getattr(self, name) < 0:
                raise ValueError(f"cost {name} must be nonnegative")
        if self.mcx_rule not in ("unit", "derived"):
            raise ValueError(f"unknown mcx rule {self.mcx_rule!r}")

    def mcx_cost(self, m: int) -> int:
        if m < 2:
            raise ValueError("mcx cost is defined for m >= 2 controls")
        if m in self.mcx:
            return self.mcx[m]
        if self.mcx_rule == "unit":
            return 1
        toffoli = 6 * self.cx + 7 * self.rz + 2 * self.h
        return toffoli if m == 2 else 4 * (m - 2) * toffoli

    def cost(self, primitive: str, num_controls: int) -> int:
        if primitive == "X":
            if num_controls == 0:
                return self.x
            if num_controls == 1:
                return self.cx
            return self.mcx_cost(num_controls)
        if primitive == "H":
            if num_controls == 0:
                return self.h
            if num_controls == 1:
                return self.ch
        elif primitive == "RY":
            if num_controls == 0:
                return self.ry
            if num_controls == 1:
                return self.cry
        elif primitive == "RZ":
            if num_controls == 0:
                return self.rz
        elif primitive == "SWAP":
            raise ValueError("SWAP has no cost class; lower controlled swaps first")
        raise ValueError(f"no cost assigned to {primitive} with {num_controls} controls")

    @classmethod
    def unit(cls) -> "CostProfile":
        return cls()

    @classmethod
    def from_dict(cls, data: dict) -> "CostProfile":
        known = {"X": "x", "H": "h", "RY": "ry", "RZ": "rz", "CX": "cx", "CH": "ch", "CRY": "cry"}
        kwargs = {attr: data[key] for key, attr in known.items() if key in data}
        if "mcx" in data:
            kwargs["mcx"] = {int(k): v for k, v in data["mcx"].items()}
        if "mcx_rule" in data:
            kwargs["mcx_rule"] = data["mcx_rule"]
        return cls(**kwargs)


def _bit_positions(m: int) -> list[int]:
    return [bit for bit in range(m.bit_length()) if (m >> bit) & 1]


def u_gate_count_formula(i: int, profile: CostProfile | None = None) -> int:
    """Gate count of the binary uniform prep over 0..i."""
    p = profile or CostProfile.unit()
    m = i + 1
    if m & (m - 1) == 0:
        return i.bit_length() * p.h
    s = _bit_positions(m)
    k = len(s)
    return s[0] * p.h + p.ry + (k - 1) * p.cry + (s[-1] - s[0]) * p.ch


def u_cycle_count_formula(i: int, profile: CostProfile | None = None) -> int:
    """Cycle count of the binary uniform prep: only the H prefix parallelises."""
    p = profile or CostProfile.unit()
    m = i + 1
    if m & (m - 1) == 0:
        return p.h
    s = _bit_positions(m)
    k = len(s)
    return min(1, s[0]) * p.h + p.ry + (k - 1) * p.cry + (s[-1] - s[0]) * p.ch


def v_gate_count_formula(i: int, profile: CostProfile | None = None) -> int:
    """Gate count of the one-hot uniform prep: 1 RY plus (CRY, CX) per extra state."""
    p = profile or CostProfile.unit()
    return p.ry + (i - 1) * (p.cry + p.cx)


def v_cycle_count_formula(i: int, profile: CostProfile | None = None) -> int:
    """The one-hot prep chain is fully sequential."""
    p = profile or CostProfile.unit()
    return p.ry + (i - 1) * (p.cry + p.cx)


def qubit_count_formula(variant: str, n: int, m: int | None = None, encoding: str = "binary") -> int:
    spec = BuildSpec(variant, n, m, encoding)
    w = ceil_log2(n)
    if encoding == "binary":
        ancilla = w if spec.disentangling else sum(i.bit_length() for i in range(1, n))
    else:
        ancilla = (n - 1) if spec.disentangling else n * (n - 1) // 2
    total = ancilla
    if spec.has_perm:
        total += n * w
    if spec.has_data:
        total += m * n
    return total


def _swap_width(spec: BuildSpec) -> int:
    width = 0
    if spec.has_perm:
        width += ceil_log2(spec.n)
    if spec.has_data:
        width += spec.m
    return width


def _swap_mcx_arity(spec: BuildSpec, i: int) -> int:
    # ancilla controls plus the swap partner qubit
    return (i.bit_length() + 1) if spec.encoding == "binary" else 2


def gate_count_formula(variant: str, n: int, m: int | None = None, encoding: str = "binary",
                       profile: CostProfile | None = None) -> int:
    spec = BuildSpec(variant, n, m, encoding)
    p = profile or CostProfile.unit()
    if n == 1:
        return 0
    prep = u_gate_count_formula if encoding == "binary" else v_gate_count_formula
    sw = _swap_width(spec)
    total = 0
    for i in range(1, n):
        if spec.has_perm:
            total += hamming(i) * p.x
        total += prep(i, p)
        total += i * sw * (2 * p.cx + p.cost("X", _swap_mcx_arity(spec, i)))
        if spec.disentangling:
            uncompute_arity = p.cost("X", i.bit_length())
            if encoding == "binary":
                total += sum(hamming(j) for j in range(1, i + 1)) * uncompute_arity
            else:
                total += i * uncompute_arity
    return total


def cycle_count_formula(variant: str, n: int, m: int | None = None, encoding: str = "binary",
                        profile: CostProfile | None = None) -> int:
    spec = BuildSpec(variant, n, m, encoding)
    p = profile or CostProfile.unit()
    if n == 1:
        return 0
    prep = u_cycle_count_formula if encoding == "binary" else v_cycle_count_formula
    sw = _swap_width(spec)
    total = p.x if spec.has_perm else 0  # one layer initialises the whole register
    if not spec.disentangling:
        total += max(prep(i, p) for i in range(1, n))  # fresh subregisters run in parallel
    for i in range(1, n):
        if spec.disentangling:
            total += prep(i, p)
        total += i * sw * (2 * p.cx + p.cost("X", _swap_mcx_arity(spec, i)))
        if spec.disentangling:
            uncompute_arity = p.cost("X", i.bit_length())
            if encoding == "binary":
                total += sum(hamming(j) for j in range(1, i + 1)) * uncompute_arity
            else:
                total += i * uncompute_arity
    return total


@dataclass(frozen=True)
class MeasuredResources:
    gates: int
    depth: int
    qubits: int


def weighted_depth(circuit: Circuit, profile: CostProfile) -> int:
    """ASAP depth where each layer lasts as long as its most expensive gate."""
    layered = schedule_asap(circuit)
    total = 0
    for layer in layered.layers:
        total += max(profile.cost(circuit.gates[k].primitive, len(circuit.gates[k].controls))
                     for k in layer)
    return total


def measure_circuit(circuit: Circuit, profile: CostProfile | None = None) -> MeasuredResources:
    """Weighted gate count, weighted ASAP depth and qubit total of a
    counting-level circuit."""
    p = profile or CostProfile.unit()
    return MeasuredResources(
        gates=count_primitives(circuit, p),
        depth=weighted_depth(circuit, p) if circuit.gates else 0,
        qubits=circuit.num_qubits,
    )


@dataclass(frozen=True)
class ResourceReport:
    variant: str
    n: int
    m: int | None
    encoding: str
    qubits_formula: int
    gates_formula: int
    cycles_formula: int
    qubits_measured: int
    gates_measured: int
    depth_measured: int

    @property
    def gates_consistent(self) -> bool:
        return self.gates_formula == self.gates_measured

    @property
    def depth_bounded(self) -> bool:
        return self.depth_measured <= self.cycles_formula

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "n": self.n,
            "m": self.m,
            "encoding": self.encoding,
            "qubits_formula": self.qubits_formula,
            "gates_formula": self.gates_formula,
            "cycles_formula": self.cycles_formula,
            "qubits_measured": self.qubits_measured,
            "gates_measured": self.gates_measured,
            "depth_measured": self.depth_measured,
            "gates_consistent": self.gates_consistent,
            "depth_bounded": self.depth_bounded,
        }


def resource_report(spec: BuildSpec, profile: CostProfile | None = None,
                    circuit: Circuit | None = None) -> ResourceReport:
    from .builders import build

    p = profile or CostProfile.unit()
    measured = measure_circuit(circuit if circuit is not None else build(spec), p)
    return ResourceReport(
        variant=spec.variant,
        n=spec.n,
        m=spec.m,
        encoding=spec.encoding,
        qubits_formula=qubit_count_formula(spec.variant, spec.n, spec.m, spec.encoding),
        gates_formula=gate_count_formula(spec.variant, spec.n, spec.m, spec.encoding, p),
        cycles_formula=cycle_count_formula(spec.variant, spec.n, spec.m, spec.encoding, p),
        qubits_measured=measured.qubits,
        gates_measured=measured.gates,
        depth_measured=measured.depth,
    )


def scaling_table(variant: str, n_values, encoding: str = "binary", m: int | None = None,
                  profile: CostProfile | None = None) -> list[tuple[int, int, int, int]]:
    """Rows (n, qubits, gates, cycles) from the formulas alone.

    A single incremental sweep keeps the per-iteration sums, so a full table
    up to n = 10^4 stays O(n) overall.
    """
    p = profile or CostProfile.unit()
    wanted = sorted(set(int(n) for n in n_values))
    if not wanted:
        return []
    if wanted[0] < 1:
        raise ValueError("n must be >= 1")
    spec_probe = BuildSpec(variant, max(wanted[-1], 2), m, encoding)
    prep_gate = u_gate_count_formula if encoding == "binary" else v_gate_count_formula
    prep_cycle = u_cycle_count_formula if encoding == "binary" else v_cycle_count_formula
    rows: dict[int, tuple[int, int, int, int]] = {}
    if 1 in wanted:
        rows[1] = (1, qubit_count_formula(variant, 1, m, encoding), 0, 0)
    wanted_set = set(wanted)
    # running sums over iterations i = 1..n-1
    init_x = 0          # sum hamming(i) * x
    prep_g = 0          # sum prep gate counts
    prep_c = 0          # sum prep cycle counts
    prep_c_max = 0      # max prep cycle count
    swaps = 0           # sum i * (2 cx + mcx(arity_i)), per unit of swapped width
    uncompute = 0       # sum of per-iteration uncompute costs
    cum_hamming = 0     # sum hamming(j), j <= i
    for n in range(2, wanted[-1] + 1):
        i = n - 1
        init_x += hamming(i) * p.x
        prep_g += prep_gate(i, p)
        c = prep_cycle(i, p)
        prep_c += c
        prep_c_max = max(prep_c_max, c)
        swaps += i * (2 * p.cx + p.cost("X", _swap_mcx_arity(spec_probe, i)))
        cum_hamming += hamming(i)
        unc = p.cost("X", i.bit_length())
        uncompute += (cum_hamming if encoding == "binary" else i) * unc
        if n in wanted_set:
            spec = BuildSpec(variant, n, m, encoding)
            w = ceil_log2(n)
            sw = (w if spec.has_perm else 0) + (m if spec.has_data else 0)
            gates = prep_g + sw * swaps
            cycles = sw * swaps
            if spec.has_perm:
                gates += init_x
                cycles += p.x
            if spec.disentangling:
                gates += uncompute
                cycles += prep_c + uncompute
            else:
                cycles += prep_c_max
            rows[n] = (n, qubit_count_formula(variant, n, m, encoding), gates, cycles)
    return [rows[n] for n in wanted]
