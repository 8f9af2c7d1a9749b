"""Static scheduling of gates and pulse instructions.

Gates are packed into cycles (unit duration) or start times (real durations)
by list scheduling on a dependency DAG.  Two gates acting on overlapping
qubits only stay ordered when they fail to commute; commutation is decided
by a rule table (the test suite checks the table against a brute-force
matrix commutator on all gate pairs over three qubits).

ALAP scheduling reverses the instruction list, runs the ASAP pass, and
reflects the result; priority ties break toward the lower original circuit
index in both modes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .circuit import Gate, QubitCircuit, SYMMETRIC_GATES

__all__ = [
    "Instruction",
    "DependencyGraph",
    "commute",
    "build_dependency_graph",
    "schedule_gates",
    "schedule_instructions",
]


@dataclass(frozen=True)
class Instruction:
    """A gate with a duration, as handed to the pulse scheduler."""

    gate: Gate
    duration: float = 1.0

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError("duration must be non-negative")


# single-qubit rotation axis implied by each gate, per qubit role
_AXIS_1Q = {"X": "x", "RX": "x", "Y": "y", "RY": "y", "Z": "z", "RZ": "z"}

# gates that commute pairwise on the same qubit pair (exchange-symmetric
# generators: SWAP ~ XX+YY+ZZ, ISWAP ~ XX+YY, CZ ~ projector on |11>)
_EXCHANGE_FAMILY = frozenset({"SWAP", "ISWAP", "CZ"})


def _axes(g: Gate) -> dict[int, str]:
    if g.name in _AXIS_1Q:
        return {g.targets[0]: _AXIS_1Q[g.name]}
    if g.name == "CNOT":
        return {g.controls[0]: "z", g.targets[0]: "x"}
    if g.name == "CZ":
        return {q: "z" for q in g.qubits}
    return {}


def commute(g1: Gate, g2: Gate) -> bool:
    """True when the rule table certifies [U1, U2] = 0.

    Conservative: unclassified overlapping pairs return False.
    """
    s1, s2 = set(g1.qubits), set(g2.qubits)
    if not (s1 & s2):
        return True
    if g1.name == g2.name and g1.arg == g2.arg:
        if g1.name in SYMMETRIC_GATES and s1 == s2:
            return True
        if g1.targets == g2.targets and g1.controls == g2.controls:
            return True
    if g1.name in _EXCHANGE_FAMILY and g2.name in _EXCHANGE_FAMILY and s1 == s2:
        return True
    a1, a2 = _axes(g1), _axes(g2)
    return all(q in a1 and q in a2 and a1[q] == a2[q] for q in s1 & s2)


@dataclass
class DependencyGraph:
    """Edges i -> j meaning instruction j must run after instruction i."""

    num_nodes: int
    children: list[list[int]]
    parents: list[list[int]]
    priorities: list[float] = field(default_factory=list)


def build_dependency_graph(
    instructions: Sequence[Instruction], allow_permutation: bool = True
) -> DependencyGraph:
    n = len(instructions)
    children: list[list[int]] = [[] for _ in range(n)]
    parents: list[list[int]] = [[] for _ in range(n)]
    for j in range(n):
        gj = instructions[j].gate
        qj = set(gj.qubits)
        for i in range(j):
            gi = instructions[i].gate
            if not (qj & set(gi.qubits)):
                continue
            if allow_permutation and commute(gi, gj):
                continue
            children[i].append(j)
            parents[j].append(i)
    # priority of a node: total duration of the longest chain strictly after it
    pri = [0.0] * n
    for i in range(n - 1, -1, -1):
        best = 0.0
        for j in children[i]:
            cand = instructions[j].duration + pri[j]
            if cand > best:
                best = cand
        pri[i] = best
    return DependencyGraph(n, children, parents, pri)


def _list_schedule_asap(
    instructions: Sequence[Instruction],
    orig_index: Sequence[int],
    allow_permutation: bool,
) -> list[float]:
    graph = build_dependency_graph(instructions, allow_permutation)
    n = len(instructions)
    start = [0.0] * n
    unscheduled_parents = [len(p) for p in graph.parents]
    ready = [i for i in range(n) if unscheduled_parents[i] == 0]
    qubit_free: dict[int, float] = {}
    done = [False] * n
    for _ in range(n):
        # highest priority first, then lowest original circuit index
        best = min(ready, key=lambda i: (-graph.priorities[i], orig_index[i]))
        ready.remove(best)
        inst = instructions[best]
        t = 0.0
        for p in graph.parents[best]:
            t = max(t, start[p] + instructions[p].duration)
        for q in inst.gate.qubits:
            t = max(t, qubit_free.get(q, 0.0))
        start[best] = t
        for q in inst.gate.qubits:
            qubit_free[q] = t + inst.duration
        done[best] = True
        for j in graph.children[best]:
            unscheduled_parents[j] -= 1
            if unscheduled_parents[j] == 0:
                ready.append(j)
    if not all(done):
        raise RuntimeError("dependency graph is not a DAG")
    return start


def schedule_instructions(
    instructions: Sequence[Instruction],
    mode: str = "ASAP",
    allow_permutation: bool = True,
) -> list[float]:
    """Start times for each instruction, preserving input order in the output."""
    if mode not in ("ASAP", "ALAP"):
        raise ValueError(f"mode must be 'ASAP' or 'ALAP', got {mode!r}")
    n = len(instructions)
    if n == 0:
        return []
    if mode == "ASAP":
        return _list_schedule_asap(instructions, list(range(n)), allow_permutation)
    rev = list(reversed(instructions))
    rev_orig = list(reversed(range(n)))
    rev_start = _list_schedule_asap(rev, rev_orig, allow_permutation)
    makespan = max(s + inst.duration for s, inst in zip(rev_start, rev))
    start = [0.0] * n
    for pos, i in enumerate(rev_orig):
        start[i] = makespan - rev_start[pos] - rev[pos].duration
    return start


def schedule_gates(
    circ: QubitCircuit,
    mode: str = "ASAP",
    allow_permutation: bool = True,
) -> list[int]:
    """Cycle index per gate, treating every gate as unit duration.

    GLOBALPHASE gates are pinned to cycle 0 (they occupy no qubit).
    """
    positions = [k for k, g in enumerate(circ.gates) if g.name != "GLOBALPHASE"]
    instructions = [Instruction(circ.gates[k], 1.0) for k in positions]
    starts = schedule_instructions(instructions, mode, allow_permutation)
    cycles = [0] * len(circ.gates)
    for pos, s in zip(positions, starts):
        cycles[pos] = int(round(s))
    return cycles
