import itertools
import numpy as np
import sys

sys.path.insert(0, "/root/pkg/src")
from pulsesim.circuit import Gate, QubitCircuit, gate_unitary
from pulsesim.core import Operator, expand_operator, qeye, tensor
from pulsesim.scheduler import Instruction, commute, schedule_gates, schedule_instructions

# ---- golden 1: Deutsch-Jozsa, gate cycles, ASAP ----
dj = QubitCircuit(3)
dj.add_gate("X", 2)
dj.add_gate("H", 0)
dj.add_gate("H", 1)
dj.add_gate("H", 2)
dj.add_gate("CNOT", 2, controls=0)
dj.add_gate("CNOT", 2, controls=1)
dj.add_gate("H", 0)
dj.add_gate("H", 1)
for perm in (True, False):
    print("DJ ASAP perm=%s:" % perm, schedule_gates(dj, "ASAP", perm))
    print("DJ ALAP perm=%s:" % perm, schedule_gates(dj, "ALAP", perm))

# ---- golden 2: instruction mode, ALAP, permutation on ----
g = [
    Gate("RZ", (0,), arg=0.3),
    Gate("CNOT", (1,), (0,)),
    Gate("RX", (2,), arg=0.6),
    Gate("RZ", (0,), arg=0.1),
    Gate("CNOT", (2,), (1,)),
    Gate("RX", (0,), arg=0.2),
    Gate("RX", (1,), arg=0.9),
    Gate("RZ", (2,), arg=0.4),
]
instrs = [Instruction(x, 2.0 if x.name == "CNOT" else 1.0) for x in g]
print("instr ALAP perm=True :", schedule_instructions(instrs, "ALAP", True))
print("instr ASAP perm=True :", schedule_instructions(instrs, "ASAP", True))

# ---- commute rule table vs brute force over <=3 qubits ----
ANGLES = {"RX": 0.813, "RY": 1.23, "RZ": 0.55}


def gate_specs():
    # every placement of every gate type within 3 qubits
    for name in ("X", "Y", "Z", "H", "RX", "RY", "RZ"):
        for q in range(3):
            yield Gate(name, (q,), arg=ANGLES.get(name))
    for a, b in itertools.permutations(range(3), 2):
        yield Gate("CNOT", (b,), (a,))
        for name in ("CZ", "SWAP", "ISWAP"):
            yield Gate(name, (a, b))


def full_unitary(gate):
    u = gate_unitary(gate)
    return expand_operator(u, [2, 2, 2], list(gate.qubits)).data


bad = 0
total = 0
for g1, g2 in itertools.product(list(gate_specs()), repeat=2):
    u1, u2 = full_unitary(g1), full_unitary(g2)
    truth = np.allclose(u1 @ u2, u2 @ u1, atol=1e-12)
    table = commute(g1, g2)
    total += 1
    if truth != table:
        bad += 1
        if bad < 25:
            print("MISMATCH", g1, g2, "truth", truth, "table", table)
print(f"commute oracle: {total} pairs, {bad} mismatches")
