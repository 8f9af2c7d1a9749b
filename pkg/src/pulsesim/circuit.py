"""Gate-level circuits: gate objects, exact unitaries, and rewriting passes.

A circuit is an ordered gate list on a qubit register.  The passes here are
purely algebraic: native-set decomposition and nearest-neighbour routing for
a 1-D chain.  Pulse-level concerns live in the device compilers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .core import Operator, QuantumState, expand_operator

__all__ = [
    "Gate",
    "QubitCircuit",
    "register_gate",
    "gate_unitary",
    "circuit_unitary",
    "run_gate_level",
    "decompose_to_native",
    "insert_chain_swaps",
    "deutsch_jozsa_circuit",
    "qft_circuit",
]

_SQ2 = 1.0 / math.sqrt(2.0)

# fixed matrices; rotation conventions: RX(theta) = exp(-i theta X / 2) etc.
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)


def _rot(axis: np.ndarray, theta: float) -> np.ndarray:
    return math.cos(theta / 2) * np.eye(2) - 1j * math.sin(theta / 2) * axis


# name -> (num_qubits, takes_arg, matrix builder)
_GATE_DEFS: dict[str, tuple[int, bool, Callable[[Optional[float]], np.ndarray]]] = {
    "X": (1, False, lambda arg: _X),
    "Y": (1, False, lambda arg: _Y),
    "Z": (1, False, lambda arg: _Z),
    "H": (1, False, lambda arg: _H),
    "RX": (1, True, lambda arg: _rot(_X, arg)),
    "RY": (1, True, lambda arg: _rot(_Y, arg)),
    "RZ": (1, True, lambda arg: _rot(_Z, arg)),
    "CNOT": (
        2,
        False,
        lambda arg: np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
        ),
    ),
    "CZ": (2, False, lambda arg: np.diag([1, 1, 1, -1]).astype(complex)),
    "SWAP": (
        2,
        False,
        lambda arg: np.array(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
        ),
    ),
    "ISWAP": (
        2,
        False,
        lambda arg: np.array(
            [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex
        ),
    ),
    # GLOBALPHASE acts on no qubits; handled specially everywhere
    "GLOBALPHASE": (0, True, lambda arg: np.array([[np.exp(1j * arg)]])),
}

# gates whose two qubit arguments are interchangeable (for commutation checks)
SYMMETRIC_GATES = frozenset({"CZ", "SWAP", "ISWAP"})


def register_gate(
    name: str, num_qubits: int, builder: Callable[[Optional[float]], np.ndarray]
) -> None:
    """Register a custom gate so circuits and compilers can resolve it.

    ``builder(arg)`` must return the ``2**num_qubits`` square unitary.
    """
    if name in _GATE_DEFS:
        raise ValueError(f"gate {name!r} is already defined")
    _GATE_DEFS[name] = (num_qubits, True, builder)


@dataclass(frozen=True)
class Gate:
    """One gate application; ``controls`` precede ``targets`` in the unitary."""

    name: str
    targets: tuple[int, ...] = ()
    controls: tuple[int, ...] = ()
    arg: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "controls", tuple(int(c) for c in self.controls))
        if self.name not in _GATE_DEFS:
            raise ValueError(f"unknown gate name {self.name!r}")
        nq, takes_arg, _ = _GATE_DEFS[self.name]
        if len(self.qubits) != nq:
            raise ValueError(
                f"{self.name} acts on {nq} qubit(s), got {self.qubits}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.name} with repeated qubit in {self.qubits}")
        if takes_arg and self.arg is None:
            raise ValueError(f"{self.name} requires an angle argument")
        if not takes_arg and self.arg is not None:
            raise ValueError(f"{self.name} takes no argument")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    def __str__(self):
        arg = "" if self.arg is None else f"({self.arg:g})"
        qubits = ", ".join(str(q) for q in self.qubits)
        return f"{self.name}{arg} {qubits}".rstrip()


def _cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", targets=(target,), controls=(control,))


class QubitCircuit:
    """An ordered list of gates on ``num_qubits`` qubits."""

    def __init__(self, num_qubits: int, gates: Optional[Iterable[Gate]] = None):
        if num_qubits < 1:
            raise ValueError("need at least one qubit")
        self.num_qubits = int(num_qubits)
        self.gates: list[Gate] = []
        for g in gates or ():
            self.append(g)

    def append(self, gate: Gate) -> None:
        for q in gate.qubits:
            if not 0 <= q < self.num_qubits:
                raise ValueError(
                    f"qubit {q} out of range for {self.num_qubits}-qubit circuit"
                )
        self.gates.append(gate)

    def add_gate(self, name, targets=(), controls=(), arg=None) -> None:
        if isinstance(targets, int):
            targets = (targets,)
        if isinstance(controls, int):
            controls = (controls,)
        self.append(Gate(name, tuple(targets), tuple(controls), arg))

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __repr__(self):
        return f"QubitCircuit({self.num_qubits} qubits, {len(self.gates)} gates)"


def gate_unitary(gate: Gate) -> Operator:
    """The gate's unitary on its own qubits (controls first, then targets)."""
    nq, _, builder = _GATE_DEFS[gate.name]
    if gate.name == "GLOBALPHASE":
        raise ValueError("GLOBALPHASE has no qubit-space unitary; handle the scalar")
    return Operator(builder(gate.arg), (2,) * nq)


def circuit_unitary(circ: QubitCircuit) -> Operator:
    """Full 2**n unitary of the circuit, global phase included."""
    n = circ.num_qubits
    dims = (2,) * n
    u = np.eye(2**n, dtype=complex)
    for g in circ.gates:
        if g.name == "GLOBALPHASE":
            u = np.exp(1j * g.arg) * u
            continue
        full = expand_operator(gate_unitary(g), dims, list(g.qubits))
        u = full.data @ u
    return Operator(u, dims)


def _apply_local_ket(tens: np.ndarray, mat: np.ndarray, axes: Sequence[int]):
    k = len(axes)
    d = [tens.shape[a] for a in axes]
    mt = mat.reshape(d + d)
    out = np.tensordot(mt, tens, axes=(list(range(k, 2 * k)), list(axes)))
    cur = list(axes) + [a for a in range(tens.ndim) if a not in axes]
    inv = [0] * tens.ndim
    for pos, a in enumerate(cur):
        inv[a] = pos
    return out.transpose(inv)


def run_gate_level(circ: QubitCircuit, state: QuantumState) -> QuantumState:
    """Apply the circuit exactly, gate by gate.

    Gates are applied locally (no full-register matrices), so this scales to
    ~20 qubits for kets.  Density matrices evolve as U rho U^dag; the global
    phase then drops out.
    """
    n = circ.num_qubits
    if state.dims != (2,) * n:
        raise ValueError(f"state dims {state.dims} do not match {n} qubits")
    if state.kind == "ket":
        tens = state.data.reshape((2,) * n).copy()
        for g in circ.gates:
            if g.name == "GLOBALPHASE":
                tens = tens * np.exp(1j * g.arg)
                continue
            tens = _apply_local_ket(tens, gate_unitary(g).data, list(g.qubits))
        return QuantumState(tens.reshape(-1), (2,) * n, "ket")
    tens = state.data.reshape((2,) * (2 * n)).copy()
    for g in circ.gates:
        if g.name == "GLOBALPHASE":
            continue
        u = gate_unitary(g).data
        tens = _apply_local_ket(tens, u, list(g.qubits))
        tens = _apply_local_ket(tens, u.conj(), [n + q for q in g.qubits])
    return QuantumState(tens.reshape(2**n, 2**n), (2,) * n, "density")


# ---------------------------------------------------------------------------
# native-set decomposition
#
# The fixed sequences below were found by exhaustive search over Clifford
# angles and are verified against the exact unitaries in the test suite.

_HALF_PI = math.pi / 2


def _expand_gate(g: Gate, native: frozenset[str]) -> Optional[list[Gate]]:
    """One rewriting step; returns None if no rule applies."""
    name = g.name
    has = native.__contains__
    if name == "X" and has("RX"):
        (q,) = g.targets
        return [Gate("RX", (q,), arg=math.pi), Gate("GLOBALPHASE", arg=_HALF_PI)]
    if name == "Y":
        (q,) = g.targets
        if has("RY"):
            return [Gate("RY", (q,), arg=math.pi), Gate("GLOBALPHASE", arg=_HALF_PI)]
        if has("RX") and has("RZ"):
            return [
                Gate("RZ", (q,), arg=-_HALF_PI),
                Gate("RX", (q,), arg=math.pi),
                Gate("RZ", (q,), arg=_HALF_PI),
                Gate("GLOBALPHASE", arg=_HALF_PI),
            ]
    if name == "Z":
        (q,) = g.targets
        if has("RZ"):
            return [Gate("RZ", (q,), arg=math.pi), Gate("GLOBALPHASE", arg=_HALF_PI)]
        if has("RX") and has("RY"):
            return [
                Gate("RY", (q,), arg=math.pi),
                Gate("RX", (q,), arg=math.pi),
                Gate("GLOBALPHASE", arg=_HALF_PI),
            ]
    if name == "H":
        (q,) = g.targets
        if has("RZ") and has("RX"):
            return [
                Gate("RZ", (q,), arg=_HALF_PI),
                Gate("RX", (q,), arg=_HALF_PI),
                Gate("RZ", (q,), arg=_HALF_PI),
                Gate("GLOBALPHASE", arg=_HALF_PI),
            ]
        if has("RX") and has("RY"):
            return [
                Gate("RY", (q,), arg=_HALF_PI),
                Gate("RX", (q,), arg=math.pi),
                Gate("GLOBALPHASE", arg=_HALF_PI),
            ]
    if name == "RY" and has("RX") and has("RZ"):
        (q,) = g.targets
        return [
            Gate("RZ", (q,), arg=-_HALF_PI),
            Gate("RX", (q,), arg=g.arg),
            Gate("RZ", (q,), arg=_HALF_PI),
        ]
    if name == "RZ" and has("RX") and has("RY"):
        (q,) = g.targets
        return [
            Gate("RX", (q,), arg=-_HALF_PI),
            Gate("RY", (q,), arg=g.arg),
            Gate("RX", (q,), arg=_HALF_PI),
        ]
    if name == "CNOT" and has("ISWAP"):
        (c,), (t,) = g.controls, g.targets
        return [
            Gate("RZ", (t,), arg=math.pi),
            Gate("ISWAP", (c, t)),
            Gate("RY", (c,), arg=_HALF_PI),
            Gate("ISWAP", (c, t)),
            Gate("RX", (t,), arg=_HALF_PI),
            Gate("RZ", (c,), arg=-_HALF_PI),
            Gate("GLOBALPHASE", arg=math.pi / 4),
        ]
    if name == "SWAP":
        a, b = g.targets
        return [_cnot(a, b), _cnot(b, a), _cnot(a, b)]
    if name == "ISWAP" and has("CNOT"):
        a, b = g.targets
        return [
            Gate("RX", (a,), arg=-_HALF_PI),
            _cnot(a, b),
            Gate("RX", (a,), arg=-_HALF_PI),
            Gate("RY", (b,), arg=_HALF_PI),
            _cnot(a, b),
            Gate("RX", (a,), arg=_HALF_PI),
        ]
    if name == "CZ":
        a, b = g.qubits
        return [Gate("H", (b,)), _cnot(a, b), Gate("H", (b,))]
    return None


def decompose_to_native(circ: QubitCircuit, native: Iterable[str]) -> QubitCircuit:
    """Rewrite every gate into the given native names (plus GLOBALPHASE).

    The result equals the input circuit's unitary exactly, global phase
    included.  Raises ValueError for gates with no route into the set.
    """
    native = frozenset(native) | {"GLOBALPHASE"}
    out = QubitCircuit(circ.num_qubits)

    def emit(g: Gate, depth: int) -> None:
        if g.name in native:
            out.append(g)
            return
        if depth > 12:
            raise ValueError(f"decomposition of {g.name} does not terminate")
        expansion = _expand_gate(g, native)
        if expansion is None:
            raise ValueError(f"no decomposition of {g.name} into {sorted(native)}")
        for sub in expansion:
            emit(sub, depth + 1)

    for g in circ.gates:
        emit(g, 0)
    return out


def insert_chain_swaps(circ: QubitCircuit) -> QubitCircuit:
    """Route two-qubit gates for nearest-neighbour 1-D chain connectivity.

    A gate on distant qubits (lo, hi) is wrapped in SWAP ladders that walk
    lo up to hi-1 and mirror back afterwards.
    """
    out = QubitCircuit(circ.num_qubits)
    for g in circ.gates:
        qs = g.qubits
        if len(qs) != 2 or abs(qs[0] - qs[1]) <= 1:
            out.append(g)
            continue
        lo, hi = min(qs), max(qs)
        ladder = [Gate("SWAP", (k, k + 1)) for k in range(lo, hi - 1)]
        for s in ladder:
            out.append(s)
        remap = {q: (hi - 1 if q == lo else q) for q in qs}
        out.append(
            Gate(
                g.name,
                tuple(remap[q] for q in g.targets),
                tuple(remap[q] for q in g.controls),
                g.arg,
            )
        )
        for s in reversed(ladder):
            out.append(s)
    return out


# ---------------------------------------------------------------------------
# circuit library


def deutsch_jozsa_circuit() -> QubitCircuit:
    """Three-qubit Deutsch-Jozsa instance with a balanced two-CNOT oracle."""
    qc = QubitCircuit(3)
    qc.add_gate("X", 2)
    qc.add_gate("H", 0)
    qc.add_gate("H", 1)
    qc.add_gate("H", 2)
    qc.add_gate("CNOT", targets=2, controls=0)
    qc.add_gate("CNOT", targets=2, controls=1)
    qc.add_gate("H", 0)
    qc.add_gate("H", 1)
    return qc


def _controlled_phase(qc: QubitCircuit, theta: float, a: int, b: int) -> None:
    # diag(1,1,1,e^{i theta}) from CNOTs and RZ, standard two-CNOT form
    qc.add_gate("RZ", a, arg=theta / 2)
    qc.add_gate("CNOT", targets=b, controls=a)
    qc.add_gate("RZ", b, arg=-theta / 2)
    qc.add_gate("CNOT", targets=b, controls=a)
    qc.add_gate("RZ", b, arg=theta / 2)
    qc.add_gate("GLOBALPHASE", arg=theta / 4)


def qft_circuit(n: int, final_swaps: bool = True) -> QubitCircuit:
    """Quantum Fourier transform on n qubits via H, CNOT and RZ."""
    qc = QubitCircuit(n)
    for j in range(n):
        qc.add_gate("H", j)
        for k in range(j + 1, n):
            _controlled_phase(qc, math.pi / 2 ** (k - j), k, j)
    if final_swaps:
        for j in range(n // 2):
            qc.add_gate("SWAP", (j, n - 1 - j))
    return qc
