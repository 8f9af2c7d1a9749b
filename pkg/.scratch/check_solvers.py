"""Smoke checks for solvers.py against closed-form results."""
import sys, time
import numpy as np

sys.path.insert(0, "/root/pkg/src")
from pulsesim.core import (
    Operator, QuantumState, basis, sigmax, sigmay, sigmaz, sigmam, qeye,
)
from pulsesim.pulse import (
    ControlCoefficient, Pulse, HamiltonianProgram, assemble,
    AssembledHamiltonian, CollapseTerm,
)
from pulsesim.solvers import sesolve, mesolve, mcsolve, SolverOptions

ok = True
def check(name, cond, detail=""):
    global ok
    print(f"{'PASS' if cond else 'FAIL'}  {name}  {detail}")
    ok = ok and cond

# --- 1. Rabi: H = 2*pi*0.25*sx/2 (i.e. pulse coeff 0.25, op 2*pi*sx/2) ------
# spin-chain convention: control op = 2*pi*sx/2? Check: sx coefficient c, op
# 2*pi*sigmax, RX duration T = theta/(4*pi*c).  Simple direct test instead:
# H = pi/2 * sigmax -> at t=1, |0> -> -i|1>, population 1.
H = Operator(np.pi / 2 * sigmax().data)
tlist = np.linspace(0.0, 1.0, 11)
res = sesolve(H, basis(2, 0), tlist, e_ops=[Operator(np.diag([0.0, 1.0]))])
p1 = res.expect[0][-1]
check("rabi pop", abs(p1 - 1.0) < 1e-8, f"p1={p1!r}")
amp = res.final_state.data
check("rabi phase", np.allclose(amp, [0, -1j], atol=1e-8), f"psi={amp}")

# halfway point: population sin^2(pi t/2) at t=0.5 -> 0.5
mid = res.expect[0][5]
check("rabi midpoint", abs(mid - 0.5) < 1e-8, f"={mid}")

# --- 2. H=0 identity ---------------------------------------------------------
res = sesolve(Operator(np.zeros((2, 2))), basis(2, 0), [0.0, 5.0])
check("H=0", np.allclose(res.final_state.data, [1, 0], atol=1e-14))

# --- 3. propagator mode ------------------------------------------------------
res = sesolve(H, qeye(2), tlist)
U = res.final_state.data
expected = np.array([[0, -1j], [-1j, 0]])  # exp(-i*pi/2*sx)
check("propagator", np.allclose(U, expected, atol=1e-8), f"U={U.round(6)}")

# --- 4. time-dependent (step) ------------------------------------------------
# coeff 0.5 on [0,1): H = 0.5*pi*sx -> still a pi rotation over [0,1]... no:
# angle = 2*0.5*pi*1/2... Let's do: op = pi*sx, coeff step [0,1]->0.5 =>
# integral H dt = 0.5*pi*sx => U = exp(-i pi/2 sx) => |0> -> -i|1>... that's a
# pi rotation? exp(-i (pi/2) sx)|0> = cos(pi/2)|0> - i sin(pi/2)|1> = -i|1>. yes
prog = HamiltonianProgram([2])
cc = ControlCoefficient([0.0, 1.0], [0.5], kind="step")
prog.add_pulse(Pulse(Operator(np.pi * sigmax().data), [0], cc, label="x"))
ham, c_terms = assemble(prog)
res = sesolve(ham, basis(2, 0), [0.0, 0.5, 1.0, 2.0])
check("step pulse end", np.allclose(res.final_state.data, [0, -1j], atol=1e-8),
      f"{res.final_state.data}")
# after pulse off (t in [1,2]) state frozen
res2 = sesolve(ham, basis(2, 0), [0.0, 1.0])
check("step freeze", np.allclose(res.final_state.data, res2.final_state.data, atol=1e-9))

# --- 5. amplitude damping:  <sz>(t) = 2 e^{-t} - 1 from |1> ------------------
gamma = 1.0
c = Operator(np.sqrt(gamma) * sigmam().data)
H0 = Operator(np.zeros((2, 2)))
tl = np.linspace(0, 3, 31)
res = mesolve(H0, basis(2, 1), [c], tl, e_ops=[sigmaz()])
anal = 1 - 2 * np.exp(-tl)
err = np.max(np.abs(res.expect[0] - anal))
check("mesolve damping", err < 1e-6, f"maxerr={err:.2e}")

# trace preserved / hermitian
rho = res.final_state.data
check("mesolve trace", abs(np.trace(rho) - 1) < 1e-8, f"tr={np.trace(rho)}")
check("mesolve herm", np.allclose(rho, rho.conj().T, atol=1e-10))

# --- 6. dephasing: coherence e^{-t/T2'} --------------------------------------
# c = sqrt(2/T2p)*num? for qubit: L = sqrt(2/T2p)*|1><1| -> rho01 decays e^{-t/T2p}
T2p = 2.0
L = Operator(np.sqrt(2.0 / T2p) * np.diag([0.0, 1.0]))
plus = QuantumState(np.array([1, 1]) / np.sqrt(2))
res = mesolve(H0, plus, [L], tl, e_ops=[sigmax()])
anal = np.exp(-tl / T2p)
err = np.max(np.abs(res.expect[0] - anal))
check("mesolve dephase", err < 1e-6, f"maxerr={err:.2e}")

# --- 7. time-dependent collapse: Gamma(t) = sqrt(g)*step on [0,1] only ------
ccg = ControlCoefficient([0.0, 1.0], [1.0], kind="step")
term = CollapseTerm(sigmam().data, ccg)
res = mesolve(H0, basis(2, 1), [term], [0.0, 1.0, 2.0], e_ops=[sigmaz()])
# on [0,1]: rate 1 -> <sz>(1)=1-2e^{-1}; on [1,2]: frozen
check("td collapse", abs(res.expect[0][1] - (1 - 2 * np.e**-1)) < 1e-6
      and abs(res.expect[0][2] - res.expect[0][1]) < 1e-9,
      f"{res.expect[0]}")

# --- 8. mcsolve: no collapse == sesolve --------------------------------------
opts = SolverOptions(ntraj=3, seed=42)
res = mcsolve(H, basis(2, 0), [], tlist, e_ops=[Operator(np.diag([0.0, 1.0]))],
              options=opts)
check("mcsolve no-c", abs(res.expect[0][-1] - 1) < 1e-8, f"{res.expect[0][-1]}")

# --- 9. mcsolve damping statistics -------------------------------------------
t0 = time.time()
opts = SolverOptions(ntraj=500, seed=7)
tl2 = np.linspace(0, 2, 21)
res = mcsolve(H0, basis(2, 1), [c], tl2, e_ops=[sigmaz()], options=opts)
anal = 1 - 2 * np.exp(-tl2)
# binomial std on p=e^{-t}: sigma_sz = 2*sqrt(p(1-p)/N)
p = np.exp(-tl2)
sig = 2 * np.sqrt(p * (1 - p) / 500) + 1e-12
dev = np.abs(res.expect[0] - anal) / sig
check("mcsolve stats 3sig", np.max(dev[1:]) < 3.5, f"max dev={np.max(dev[1:]):.2f} sigma, {time.time()-t0:.1f}s")
njumps = sum(len(j) for j in res.jump_records)
check("mcsolve jumps recorded", 0 < njumps <= 500, f"n={njumps}")

# --- 10. determinism across worker counts ------------------------------------
opts1 = SolverOptions(ntraj=20, seed=11, num_workers=1)
opts8 = SolverOptions(ntraj=20, seed=11, num_workers=4)
r1 = mcsolve(H0, basis(2, 1), [c], tl2, e_ops=[sigmaz()], options=opts1)
t0 = time.time()
r8 = mcsolve(H0, basis(2, 1), [c], tl2, e_ops=[sigmaz()], options=opts8)
same = np.array_equal(r1.expect[0], r8.expect[0]) and np.array_equal(
    r1.final_state.data, r8.final_state.data)
check("worker determinism", same, f"pool time {time.time()-t0:.1f}s")
check("jump records equal", r1.jump_records == r8.jump_records)

# --- 11. norm drift over long unitary run ------------------------------------
res = sesolve(H, basis(2, 0), np.linspace(0, 50, 26))
drift = abs(res.final_state.norm() - 1)
check("norm drift", drift < 1e-6, f"{drift:.2e}")

# --- 12. integrator accuracy scales with tolerance ---------------------------
def final_err(rtol):
    o = SolverOptions(rtol=rtol, atol=rtol)
    r = sesolve(H, basis(2, 0), np.linspace(0, 21, 8), options=o)
    # exact: angle pi*21/2 -> psi = cos(10.5pi)|0> - i sin(10.5pi)|1> = -i^... compute
    th = np.pi * 21 / 2
    exact = np.array([np.cos(th / 1), -1j * np.sin(th)])
    # note exp(-i th sx /1)? H = pi/2 sx, t=21 -> U=exp(-i 21 pi/2 sx)
    # angle a = 21*pi/2; psi = cos(a)|0> - i sin a |1>
    return np.linalg.norm(r.final_state.data - exact)

e6, e8 = final_err(1e-6), final_err(1e-8)
check("tolerance scaling", e8 < e6 / 10, f"e6={e6:.2e} e8={e8:.2e}")

# --- 13. mcsolve -> mesolve convergence --------------------------------------
o100 = SolverOptions(ntraj=100, seed=3)
o400 = SolverOptions(ntraj=400, seed=3)
ex = mesolve(H0, basis(2, 1), [c], tl2, e_ops=[sigmaz()]).expect[0]
e100 = np.max(np.abs(mcsolve(H0, basis(2, 1), [c], tl2, e_ops=[sigmaz()], options=o100).expect[0] - ex))
e400 = np.max(np.abs(mcsolve(H0, basis(2, 1), [c], tl2, e_ops=[sigmaz()], options=o400).expect[0] - ex))
check("mc convergence", e400 < e100, f"e100={e100:.3f} e400={e400:.3f}")

print("\nALL OK" if ok else "\nFAILURES")
sys.exit(0 if ok else 1)
