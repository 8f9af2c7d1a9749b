"""Smoke checks for the device models and compilers."""
import itertools
import math
import numpy as np

from pulsesim import (
    Operator, QubitCircuit, Gate, sesolve, assemble, SolverOptions,
)
from pulsesim.circuit import (
    circuit_unitary, deutsch_jozsa_circuit, gate_unitary, run_gate_level,
    qft_circuit,
)
from pulsesim.core import QuantumState, basis, state_fidelity
from pulsesim.devices import (
    CavityQEDModel, SCQubitsModel, SpinChainModel,
    compile_cavityqed, compile_scqubits, compile_spinchain, compile_circuit,
    model_from_config,
)

ok = fail = 0


import time as _time
_T0 = _time.time()
def check(name, cond, detail=""):
    global ok, fail
    if cond:
        ok += 1
        print(f"  ok  {name} {detail} [t={_time.time()-_T0:.1f}s]", flush=True)
    else:
        fail += 1
        print(f"FAIL  {name} {detail} [t={_time.time()-_T0:.1f}s]", flush=True)


def propagator(program):
    dims = program.dims
    d = int(np.prod(dims))
    ham, _ = assemble(program, with_noise=False)
    eye = Operator(np.eye(d), dims)
    tmax = program.total_time
    if tmax == 0.0:
        return np.eye(d, dtype=complex)
    res = sesolve(ham, eye, [0.0, tmax])
    return res.final_state.data


def comp_isometry(dims, qubit_axes, qubit_level=(0, 1)):
    """Columns embed computational basis states into the full space."""
    n = len(qubit_axes)
    P = np.zeros((int(np.prod(dims)), 2 ** n))
    for bits in itertools.product((0, 1), repeat=n):
        multi = [0] * len(dims)
        for ax, b in zip(qubit_axes, bits):
            multi[ax] = qubit_level[b]
        flat = np.ravel_multi_index(multi, dims)
        col = int("".join(str(b) for b in bits), 2)
        P[flat, col] = 1.0
    return P


def proj_fidelity(U_full, V_ideal, dims, qubit_axes):
    P = comp_isometry(dims, qubit_axes)
    W = P.T @ U_full @ P
    d = V_ideal.shape[0]
    return abs(np.trace(V_ideal.conj().T @ W)) / d


# ----------------------------------------------------------- spin: basics
m = SpinChainModel(3)
op, tg = m.get_control("sx0")
check("spin sx0", tg == (0,) and np.allclose(
    op.data, 2 * np.pi * np.array([[0, 1], [1, 0]])))
check("spin same tuple", m.get_control("sx0") is m.get_control("sx0"))
try:
    m.get_control("g2")
    check("spin g2 open error", False)
except ValueError as e:
    check("spin g2 open error", "g2" in str(e))
check("spin labels", m.get_control_labels() == [
    "sx0", "sz0", "sx1", "sz1", "sx2", "sz2", "g0", "g1"])
mc = SpinChainModel(3, boundary="closed")
check("closed has g2", mc.get_control("g2")[1] == (2, 0))

qc = QubitCircuit(1)
qc.add_gate("RX", 0, arg=math.pi)
prog = compile_spinchain(qc, SpinChainModel(1))
p = prog.pulses[0]
check("RX(pi) duration 1.0", abs(p.coeff.end_time - 1.0) < 1e-12,
      f"end={p.coeff.end_time}")
U = propagator(prog)
check("RX(pi) propagator",
      proj_fidelity(U, gate_unitary(Gate("RX", (0,), arg=math.pi)).data,
                    (2,), [0]) > 1 - 1e-8)

# every native spin gate
m1 = SpinChainModel(2)
for gate in [Gate("RX", (0,), arg=0.7), Gate("RZ", (1,), arg=-1.2),
             Gate("ISWAP", (0, 1))]:
    qc = QubitCircuit(2, [gate])
    U = propagator(compile_spinchain(qc, m1))
    f = proj_fidelity(U, circuit_unitary(qc).data, (2, 2), [0, 1])
    check(f"spin native {gate}", f > 1 - 1e-6, f"fid={f:.12f}")

# spin DJ vs gate level
dj = deutsch_jozsa_circuit()
mdj = SpinChainModel(3)
prog = compile_spinchain(dj, mdj)
U = propagator(prog)
ideal = circuit_unitary(dj).data
f = abs(np.trace(ideal.conj().T @ U)) / 8
check("spin DJ propagator", f > 0.999, f"fid={f:.10f}")
psi0 = basis(8, 0, dims=(2, 2, 2))
gate_out = run_gate_level(dj, psi0)
ham, _ = assemble(prog, with_noise=False)
res = sesolve(ham, psi0, [0.0, prog.total_time])
fs = state_fidelity(res.final_state, gate_out)
check("spin DJ state fid", fs > 0.999, f"fid={fs:.10f}")

# g0 pulses both before and after the first g1 block (routing swaps around
# the distant CNOT); the circuit ends with a second CNOT(1,2), so the last
# g-line activity is g1.
g0_times = [pl.coeff.knots[0] for pl in prog.pulses if pl.label == "g0"]
g1_times = [pl.coeff.knots[0] for pl in prog.pulses if pl.label == "g1"]
check("g0 brackets first g1 block",
      len(g0_times) > 0 and len(g1_times) > 0 and
      min(g0_times) < min(g1_times) and max(g0_times) > min(g1_times),
      f"g0 n={len(g0_times)} g1 n={len(g1_times)}")

# ----------------------------------------------------------- cavity
cm = CavityQEDModel(2)
op, tg = cm.get_control("g0")
check("cavity g0 targets", tg == (0, 1) and op.dims == (10, 2))
qc = QubitCircuit(2)
qc.add_gate("ISWAP", (0, 1))
prog = compile_cavityqed(qc, cm)
U = propagator(prog)
ISWAP = gate_unitary(Gate("ISWAP", (0, 1))).data
f = proj_fidelity(U, ISWAP, (10, 2, 2), [1, 2])
check("cavity ISWAP", f > 1 - 1e-4, f"fid={1-f:.3e} infid")

# resonator stays empty for 1q circuits
qc = QubitCircuit(2)
qc.add_gate("RX", 0, arg=1.1)
qc.add_gate("RY", 1, arg=-0.4)
qc.add_gate("RX", 1, arg=2.2)
prog = compile_cavityqed(qc, cm)
ham, _ = assemble(prog, with_noise=False)
res = sesolve(ham, basis(40, 0, dims=(10, 2, 2)), [0.0, prog.total_time])
vec = res.final_state.data.reshape(10, 4)
pop_r = 1.0 - np.linalg.norm(vec[0]) ** 2
check("resonator stays empty", pop_r < 1e-4, f"pop={pop_r:.2e}")
fid1q = proj_fidelity(propagator(prog), circuit_unitary(qc).data,
                      (10, 2, 2), [1, 2])
check("cavity 1q circuit", fid1q > 1 - 1e-6, f"fid={fid1q:.10f}")

for gate in [Gate("RX", (0,), arg=0.9), Gate("RY", (1,), arg=-2.0)]:
    qcg = QubitCircuit(2, [gate])
    f = proj_fidelity(propagator(compile_cavityqed(qcg, cm)),
                      circuit_unitary(qcg).data, (10, 2, 2), [1, 2])
    check(f"cavity native {gate}", f > 1 - 1e-6, f"fid={f:.10f}")

# a CNOT via decomposition (uses ISWAPs)
qc = QubitCircuit(2)
qc.add_gate("CNOT", targets=1, controls=0)
prog = compile_cavityqed(qc, cm)
f = proj_fidelity(propagator(prog), circuit_unitary(qc).data,
                  (10, 2, 2), [1, 2])
check("cavity CNOT", f > 1 - 1e-4, f"infid={1-f:.3e}")

# ----------------------------------------------------------- transmons
sm = SCQubitsModel(2)
op, tg = sm.get_control("cr10")
z3 = np.diag([1.0, -1.0, 0.0])
x3 = np.zeros((3, 3)); x3[0, 1] = x3[1, 0] = 1
check("cr10 matrix", np.allclose(op.data, 2 * np.pi * np.kron(z3, x3))
      and tg == (0, 1))

qc = QubitCircuit(1)
qc.add_gate("RX", 0, arg=math.pi / 2)
prog = compile_scqubits(qc, SCQubitsModel(1))
U = propagator(prog)
P = comp_isometry((3,), [0])
W = P.T @ U @ P
fx = abs(np.trace(gate_unitary(Gate("RX", (0,), arg=math.pi/2)).data.conj().T
                  @ W)) / 2
leak = 1 - np.linalg.norm(U[:, 0][[0, 1]]) ** 2
check("sc RX(pi/2)", fx > 1 - 1e-4, f"infid={1-fx:.2e}")
check("sc RX leakage", leak < 1e-2, f"leak={leak:.2e}")

qc = QubitCircuit(2)
qc.add_gate("CNOT", targets=1, controls=0)
prog = compile_scqubits(qc, sm)
CN = circuit_unitary(qc).data
f = proj_fidelity(propagator(prog), CN, (3, 3), [0, 1])
check("sc CNOT", f > 1 - 1e-4, f"infid={1-f:.3e}")
cr_dur = [p.coeff.end_time - p.coeff.knots[0] for p in prog.pulses
          if p.label == "cr10"]
check("cr duration ~0.19us", abs(cr_dur[0] - 0.1868) < 2e-3,
      f"dur={cr_dur[0]:.5f}")

# reversed CNOT uses only cr1
qc = QubitCircuit(2)
qc.add_gate("CNOT", targets=0, controls=1)
prog = compile_scqubits(qc, sm)
labels = {p.label for p in prog.pulses}
check("reversed CNOT cr1 only", not any(l.startswith("cr2") for l in labels),
      str(sorted(labels)))
f = proj_fidelity(propagator(prog), circuit_unitary(qc).data, (3, 3), [0, 1])
check("sc reversed CNOT", f > 1 - 1e-4, f"infid={1-f:.3e}")

# sc DJ: state-level comparison vs gate-level execution from |000>
dj = deutsch_jozsa_circuit()
smdj = SCQubitsModel(3)
prog = compile_scqubits(dj, smdj)
ham_dj, _ = assemble(prog, with_noise=False)
psi0_27 = np.zeros(27, dtype=complex)
psi0_27[0] = 1.0
res_dj = sesolve(ham_dj, psi0_27,
                 [0.0, prog.total_time],
                 options=SolverOptions(rtol=1e-6, atol=1e-6))
iso = comp_isometry((3, 3, 3), [0, 1, 2])
gate_dj = run_gate_level(dj, QuantumState(basis(8, 0, dims=(2, 2, 2)).data,
                                          (2, 2, 2)))
overlap = np.vdot(iso @ gate_dj.data, res_dj.final_state.data)
f = abs(overlap) ** 2
check("sc DJ state", f > 0.999, f"fid={f:.8f}")
labels = {p.label for p in prog.pulses}
check("sc DJ cr1 only", not any(l.startswith("cr2") for l in labels))

# amplitude bounds
peak = max(p.coeff.max_abs for p in prog.pulses)
check("sc drive limit", peak <= 20.0 + 1e-9, f"peak={peak:.3f}")

# ----------------------------------------------------------- config
mdl, t1, t2 = model_from_config(
    {"model": "spinchain", "num_qubits": 3,
     "params": {"sx": 0.3}, "t1": 50.0})
check("config dict", isinstance(mdl, SpinChainModel)
      and mdl.params["sx"] == (0.3, 0.3, 0.3) and t1 == 50.0 and t2 is None)
import tempfile, os, json as _json
with tempfile.TemporaryDirectory() as td:
    pj = os.path.join(td, "c.json")
    with open(pj, "w") as fh:
        _json.dump({"model": "scqubits", "num_qubits": 2, "t2": 30}, fh)
    mdl, t1, t2 = model_from_config(pj)
    check("config json", isinstance(mdl, SCQubitsModel) and t2 == 30)
    pt = os.path.join(td, "c.toml")
    with open(pt, "w") as fh:
        fh.write('model = "cavityqed"\nnum_qubits = 2\n[params]\ng = 2.0\n')
    mdl, t1, t2 = model_from_config(pt)
    check("config toml", isinstance(mdl, CavityQEDModel)
          and mdl.params["g"] == (2.0, 2.0))
try:
    model_from_config({"model": "nope", "num_qubits": 1})
    check("bad model error", False)
except ValueError:
    check("bad model error", True)

# compile_circuit dispatch + zero-angle
qc = QubitCircuit(1)
qc.add_gate("RX", 0, arg=0.0)
prog = compile_circuit(qc, SpinChainModel(1))
check("zero angle -> no pulses", len(prog.pulses) == 0)

print(f"\n{ok} ok, {fail} failed")
raise SystemExit(1 if fail else 0)
