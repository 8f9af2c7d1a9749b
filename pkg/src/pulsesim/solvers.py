"""Time-evolution solvers for piecewise-smooth time-dependent Hamiltonians.

Three engines share one adaptive Dormand-Prince 5(4) core (scipy's RK45):

- :func:`sesolve` — Schrödinger equation for kets and propagators,
- :func:`mesolve` — Lindblad master equation for density matrices, with
  optionally time-dependent collapse coefficients Γ(t) = c(t)·Op,
- :func:`mcsolve` — Monte-Carlo quantum trajectories with exact jump-time
  bisection on the integrator's dense output.

The integrator restarts at every knot of every step-kind coefficient, so the
adaptive order never sees a derivative discontinuity.  Between two restart
points every step coefficient is a single constant and every cubic
coefficient is either smooth or identically zero, so each segment folds its
constant terms into one matrix up front and only genuinely time-varying terms
are evaluated inside the stepper.  Monte-Carlo trajectory ``i`` draws its
randomness from ``SeedSequence([seed, i])``, making results bitwise-identical
for any worker count; trajectories are merged by index.
"""

from __future__ import annotations

import os
import pickle
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import RK45

from .core import Operator, QuantumState
from .pulse import AssembledHamiltonian, CollapseTerm

__all__ = [
    "SolverError",
    "SolverOptions",
    "SolverResult",
    "sesolve",
    "mesolve",
    "mcsolve",
]


class SolverError(RuntimeError):
    """Integration failure (step-size underflow or non-finite state)."""


# RK45 controls error per step, so the accumulated error over a run is a
# modest multiple of the tolerance.  The stepper therefore runs two orders
# tighter than requested, making options.rtol/atol result-level targets.
_TOL_SAFETY = 1e-2
_MIN_RTOL = 1e-13


def _stepper_tols(options: "SolverOptions") -> tuple[float, float]:
    return (
        max(options.rtol * _TOL_SAFETY, _MIN_RTOL),
        options.atol * _TOL_SAFETY,
    )


@dataclass
class SolverOptions:
    rtol: float = 1e-8
    atol: float = 1e-8
    max_step: Optional[float] = None
    ntraj: int = 500
    seed: Optional[int] = None
    store_states: bool = False
    num_workers: Optional[int] = None

    def __post_init__(self):
        if self.rtol <= 0 or self.atol <= 0:
            raise ValueError("tolerances must be positive")
        if self.ntraj < 1:
            raise ValueError("ntraj must be at least 1")


@dataclass
class SolverResult:
    times: np.ndarray
    final_state: object = None
    states: Optional[list] = None
    expect: Optional[list] = None
    ntraj_used: Optional[int] = None
    jump_records: Optional[list] = None


# ---------------------------------------------------------------------------
# shared machinery
# ---------------------------------------------------------------------------


def _as_hamiltonian(H) -> AssembledHamiltonian:
    if isinstance(H, AssembledHamiltonian):
        return H
    if isinstance(H, Operator):
        return AssembledHamiltonian(H.dims, [(H.data, None)])
    raise TypeError(
        "H must be an AssembledHamiltonian (from pulse.assemble) or a "
        "constant Operator"
    )


def _as_collapse_terms(c_ops, dim: int) -> list[CollapseTerm]:
    terms = []
    for c in c_ops or ():
        if isinstance(c, CollapseTerm):
            term = c
        elif isinstance(c, Operator):
            term = CollapseTerm(c.data)
        else:
            term = CollapseTerm(np.asarray(c, dtype=complex))
        if term.mat.shape != (dim, dim):
            raise ValueError(
                f"collapse operator shape {term.mat.shape} does not match "
                f"Hilbert-space dimension {dim}"
            )
        terms.append(term)
    return terms


def _prepare_e_ops(e_ops, dim: int):
    mats, herm = [], []
    for op in e_ops or ():
        if isinstance(op, Operator):
            if op.data.shape != (dim, dim):
                raise ValueError("observable dimension mismatch")
            mats.append(op.data)
            herm.append(op.isherm)
        else:
            arr = np.asarray(op, dtype=complex)
            if arr.shape != (dim, dim):
                raise ValueError("observable dimension mismatch")
            mats.append(arr)
            herm.append(bool(np.allclose(arr, arr.conj().T, atol=1e-12)))
    return mats, herm


def _segment_boundaries(t0: float, tf: float, knots: np.ndarray) -> list[float]:
    scale = max(abs(t0), abs(tf), 1.0)
    inner = [float(k) for k in np.asarray(knots, dtype=float)
             if t0 + 1e-12 * scale < k < tf - 1e-12 * scale]
    bounds = [t0]
    for k in sorted(inner):
        if k - bounds[-1] > 1e-12 * scale:
            bounds.append(k)
    bounds.append(tf)
    return bounds


def _check_tlist(tlist) -> np.ndarray:
    tlist = np.asarray(tlist, dtype=float)
    if tlist.ndim != 1 or len(tlist) == 0:
        raise ValueError("tlist must be a non-empty 1-D array")
    if not np.all(np.isfinite(tlist)):
        raise ValueError("tlist must be finite")
    if len(tlist) > 1 and not np.all(np.diff(tlist) > 0):
        raise ValueError("tlist must be strictly increasing")
    return tlist


def _fold_hamiltonian(ham: AssembledHamiltonian, a: float, b: float):
    """Split H(t) on [a, b) into a constant matrix plus truly varying terms.

    Segments never straddle a coefficient knot, so a step coefficient is one
    constant on the whole segment and a cubic coefficient is either smooth
    inside its sampled window or identically zero outside it.
    """
    mid = 0.5 * (a + b)
    extra = None
    dyn = []
    for mat, coeff in ham.terms:
        tlist = coeff.tlist
        if b <= tlist[0] or a >= tlist[-1]:
            continue  # both kinds clamp to zero outside their grid
        if coeff.kind == "step":
            c = coeff.value(mid)
            if c != 0.0:
                if extra is None:
                    extra = np.zeros_like(ham.static)
                extra += c * mat
        else:
            dyn.append((mat, coeff))
    hconst = ham.static if extra is None else ham.static + extra
    return hconst, dyn


def _is_hermitian(mat: np.ndarray) -> bool:
    scale = float(np.max(np.abs(mat))) if mat.size else 0.0
    return bool(np.allclose(mat, mat.conj().T, rtol=0.0,
                            atol=1e-12 * max(scale, 1.0)))


def _evolve(make_rhs, y0: np.ndarray, tlist: np.ndarray, knots: np.ndarray,
            options: SolverOptions):
    """Integrate dy/dt = rhs(t, y), restarting at knots; sample y at tlist.

    ``make_rhs(a, b)`` builds the right-hand side for one knot-free segment,
    letting callers fold segment-constant terms out of the inner loop.  It
    may instead return ``("unitary", H, shape)`` for a segment on which the
    generator is the constant Hermitian matrix H; such segments advance by an
    exact eigendecomposition instead of adaptive stepping.
    """
    t0, tf = float(tlist[0]), float(tlist[-1])
    samples: list[np.ndarray] = [None] * len(tlist)
    pointer = 0
    while pointer < len(tlist) and tlist[pointer] <= t0:
        samples[pointer] = y0.copy()
        pointer += 1
    y = np.asarray(y0, dtype=complex).copy()
    if tf > t0:
        max_step = options.max_step if options.max_step else np.inf
        rtol, atol = _stepper_tols(options)
        scale = max(abs(t0), abs(tf), 1.0)
        bounds = _segment_boundaries(t0, tf, knots)
        for a, b in zip(bounds[:-1], bounds[1:]):
            if b - a <= 1e-14 * scale:
                continue
            item = make_rhs(a, b)
            if not callable(item):
                _, hmat, shape = item
                lam, vecs = np.linalg.eigh(hmat)
                vecs_h = vecs.conj().T

                def advance(tau, vec):
                    phases = np.exp(-1j * lam * tau)
                    if shape is None:
                        return vecs @ (phases * (vecs_h @ vec))
                    rot = phases[:, None] * (vecs_h @ vec.reshape(shape))
                    return (vecs @ rot).ravel()

                while pointer < len(tlist) and tlist[pointer] <= b:
                    samples[pointer] = advance(tlist[pointer] - a, y)
                    pointer += 1
                y = advance(b - a, y)
                continue
            solver = RK45(item, a, y, t_bound=b, rtol=rtol,
                          atol=atol, max_step=max_step)
            while solver.status == "running":
                message = solver.step()
                if solver.status == "failed":
                    raise SolverError(f"integration failed at t={solver.t}: {message}")
                if pointer < len(tlist) and tlist[pointer] <= solver.t:
                    dense = solver.dense_output()
                    while pointer < len(tlist) and tlist[pointer] <= solver.t:
                        samples[pointer] = dense(tlist[pointer])
                        pointer += 1
            y = solver.y
            if not np.all(np.isfinite(y)):
                raise SolverError(f"state became non-finite at t={b}")
    while pointer < len(tlist):
        samples[pointer] = y.copy()
        pointer += 1
    return samples, y


# ---------------------------------------------------------------------------
# sesolve
# ---------------------------------------------------------------------------


def sesolve(H, init, tlist, e_ops=None, options: Optional[SolverOptions] = None
            ) -> SolverResult:
    """Unitary evolution of a ket or a propagator matrix under H(t)."""
    options = options or SolverOptions()
    ham = _as_hamiltonian(H)
    tlist = _check_tlist(tlist)
    d = ham.dim

    if isinstance(init, QuantumState):
        if init.kind != "ket":
            raise ValueError("sesolve evolves kets; use mesolve for densities")
        y0 = init.data.astype(complex)
        dims = init.dims
        matrix_input = False
    elif isinstance(init, Operator):
        y0 = init.data.astype(complex)
        dims = init.dims
        matrix_input = True
    else:
        arr = np.asarray(init, dtype=complex)
        matrix_input = arr.ndim == 2
        y0 = arr
        dims = ham.dims
    if y0.shape[0] != d:
        raise ValueError(f"initial state dimension {y0.shape[0]} != H dimension {d}")
    if matrix_input and y0.shape[1] != d:
        raise ValueError("matrix initial values must be square propagators")

    shape = (d, y0.shape[1]) if matrix_input else None

    def make_rhs(a, b):
        hconst, dyn = _fold_hamiltonian(ham, a, b)
        if not dyn and _is_hermitian(hconst):
            return ("unitary", hconst, shape)
        A = -1j * hconst
        if shape is None:
            if not dyn:
                return lambda t, y: A @ y

            def rhs(t, y):
                out = A @ y
                for mat, coeff in dyn:
                    c = coeff.value(t)
                    if c != 0.0:
                        out = out - (1j * c) * (mat @ y)
                return out

            return rhs
        if not dyn:
            return lambda t, yflat: (A @ yflat.reshape(shape)).ravel()

        def rhs(t, yflat):
            ymat = yflat.reshape(shape)
            out = A @ ymat
            for mat, coeff in dyn:
                c = coeff.value(t)
                if c != 0.0:
                    out = out - (1j * c) * (mat @ ymat)
            return out.ravel()

        return rhs

    flat0 = y0.ravel() if matrix_input else y0

    samples, yf = _evolve(make_rhs, flat0, tlist, ham.knots, options)

    k = shape[1] if matrix_input else 0

    def wrap(flat):
        if matrix_input:
            return Operator(flat.reshape(d, k), dims)
        return QuantumState(flat, dims, kind="ket")

    e_mats, e_herm = _prepare_e_ops(e_ops, d)
    expect = None
    if e_mats and not matrix_input:
        expect = []
        for mat, isherm in zip(e_mats, e_herm):
            vals = np.array([np.vdot(s, mat @ s) for s in samples])
            expect.append(vals.real if isherm else vals)
    states = [wrap(s) for s in samples] if options.store_states else None
    return SolverResult(
        times=tlist, final_state=wrap(yf), states=states, expect=expect
    )


# ---------------------------------------------------------------------------
# mesolve
# ---------------------------------------------------------------------------


def mesolve(H, rho0, c_ops=None, tlist=None, e_ops=None,
            options: Optional[SolverOptions] = None) -> SolverResult:
    """Lindblad master equation with optionally time-dependent collapse terms."""
    options = options or SolverOptions()
    ham = _as_hamiltonian(H)
    tlist = _check_tlist(tlist)
    d = ham.dim

    if isinstance(rho0, QuantumState):
        state = rho0 if rho0.kind == "density" else rho0.to_density()
        rho = state.data.astype(complex)
        dims = state.dims
    else:
        arr = np.asarray(rho0, dtype=complex)
        if arr.ndim == 1:
            arr = np.outer(arr, arr.conj())
        rho = arr
        dims = ham.dims
    if rho.shape != (d, d):
        raise ValueError(f"density matrix shape {rho.shape} != ({d}, {d})")

    terms = _as_collapse_terms(c_ops, d)
    constant = [(c.mat, c.mat.conj().T, c.matdagmat) for c in terms if c.is_constant]
    dynamic = [(c.mat, c.mat.conj().T, c.matdagmat, c.coeff)
               for c in terms if not c.is_constant]

    def make_rhs(a, b):
        hconst, hdyn = _fold_hamiltonian(ham, a, b)
        mid = 0.5 * (a + b)
        seg_const = list(constant)
        seg_dyn = []
        for L, Ld, LdL, coeff in dynamic:
            if coeff.kind == "step" or b <= coeff.tlist[0] or a >= coeff.tlist[-1]:
                s = coeff.value(mid) ** 2  # one constant rate on this segment
                if s != 0.0:
                    seg_const.append((s * L, Ld, s * LdL))
            else:
                seg_dyn.append((L, Ld, LdL, coeff))

        def rhs(t, yflat):
            r = yflat.reshape(d, d)
            if hdyn:
                h = hconst.copy()
                for mat, coeff in hdyn:
                    c = coeff.value(t)
                    if c != 0.0:
                        h += c * mat
            else:
                h = hconst
            out = -1j * (h @ r - r @ h)
            for L, Ld, LdL in seg_const:
                out += L @ r @ Ld - 0.5 * (LdL @ r + r @ LdL)
            for L, Ld, LdL, coeff in seg_dyn:
                s = coeff.value(t) ** 2
                if s != 0.0:
                    out += s * (L @ r @ Ld - 0.5 * (LdL @ r + r @ LdL))
            return out.ravel()

        return rhs

    knots = [np.asarray(ham.knots)] + [c.knots for c in terms]
    knots = np.unique(np.concatenate(knots)) if knots else np.empty(0)
    samples, yf = _evolve(make_rhs, rho.ravel(), tlist, knots, options)

    def wrap(flat):
        return QuantumState(flat.reshape(d, d), dims, kind="density")

    e_mats, e_herm = _prepare_e_ops(e_ops, d)
    expect = None
    if e_mats:
        expect = []
        for mat, isherm in zip(e_mats, e_herm):
            vals = np.array([np.trace(mat @ s.reshape(d, d)) for s in samples])
            expect.append(vals.real if isherm else vals)
    states = [wrap(s) for s in samples] if options.store_states else None
    return SolverResult(
        times=tlist, final_state=wrap(yf), states=states, expect=expect
    )


# ---------------------------------------------------------------------------
# mcsolve
# ---------------------------------------------------------------------------

_JUMP_TIME_RTOL = 1e-6


def _run_trajectory(ham: AssembledHamiltonian, c_terms: Sequence[CollapseTerm],
                    psi0: np.ndarray, tlist: np.ndarray,
                    rtol: float, atol: float, max_step: float,
                    seed: int, index: int):
    """One Monte-Carlo trajectory; returns normalized kets at tlist and jumps."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    d = ham.dim
    mats = [c.mat for c in c_terms]
    matdagmats = [c.matdagmat for c in c_terms]
    coeffs = [c.coeff for c in c_terms]

    def rate2(k: int, t: float) -> float:
        c = coeffs[k]
        return 1.0 if c is None else c.value(t) ** 2

    def make_rhs(a, b):
        # effective drift -iH - (1/2)ΣΓ†Γ with segment-constant parts folded
        hconst, hdyn = _fold_hamiltonian(ham, a, b)
        mid = 0.5 * (a + b)
        B = -1j * hconst
        dyn_rates = []
        for k in range(len(mats)):
            c = coeffs[k]
            if c is None or c.kind == "step" or b <= c.tlist[0] or a >= c.tlist[-1]:
                s = rate2(k, mid)
                if s != 0.0:
                    B = B - (0.5 * s) * matdagmats[k]
            else:
                dyn_rates.append((matdagmats[k], c))
        if not hdyn and not dyn_rates:
            return lambda t, y: B @ y

        def rhs(t, y):
            out = B @ y
            for mat, coeff in hdyn:
                c = coeff.value(t)
                if c != 0.0:
                    out = out - (1j * c) * (mat @ y)
            for LdL, coeff in dyn_rates:
                s = coeff.value(t) ** 2
                if s != 0.0:
                    out = out - (0.5 * s) * (LdL @ y)
            return out

        return rhs

    t0, tf = float(tlist[0]), float(tlist[-1])
    nt = len(tlist)
    kets = np.empty((nt, d), dtype=complex)
    pointer = 0
    while pointer < nt and tlist[pointer] <= t0:
        kets[pointer] = psi0
        pointer += 1

    knots = [np.asarray(ham.knots)] + [c.knots for c in c_terms]
    knots = np.unique(np.concatenate(knots))
    bounds = _segment_boundaries(t0, tf, knots)
    scale = max(abs(t0), abs(tf), 1.0)

    y = psi0.astype(complex).copy()
    t = t0
    r = rng.random()
    jumps: list[tuple[float, int]] = []

    def do_jump(tj: float, psi: np.ndarray):
        nonlocal y, t, r
        weights = np.array(
            [rate2(k, tj) * float(np.linalg.norm(mats[k] @ psi) ** 2)
             for k in range(len(mats))]
        )
        total = weights.sum()
        if total <= 0.0:
            # decay without an active channel at this instant (can only occur
            # through interpolation round-off); lower the target and move on
            r = float(np.linalg.norm(psi) ** 2) * rng.random()
            return False
        u = rng.random() * total
        channel = int(np.searchsorted(np.cumsum(weights), u))
        channel = min(channel, len(mats) - 1)
        phi = mats[channel] @ psi
        y = phi / np.linalg.norm(phi)
        t = tj
        jumps.append((tj, channel))
        r = rng.random()
        return True

    for a, b in zip(bounds[:-1], bounds[1:]):
        if b - a <= 1e-14 * scale:
            continue
        if t < a:
            t = a
        rhs = make_rhs(a, b)
        while t < b - 1e-14 * scale:
            solver = RK45(rhs, t, y, t_bound=b, rtol=rtol, atol=atol,
                          max_step=max_step)
            jumped = False
            while solver.status == "running":
                message = solver.step()
                if solver.status == "failed":
                    raise SolverError(
                        f"trajectory {index} failed at t={solver.t}: {message}"
                    )
                norm2 = float(np.linalg.norm(solver.y) ** 2)
                if norm2 < r:
                    dense = solver.dense_output()
                    lo, hi = solver.t_old, solver.t
                    while hi - lo > _JUMP_TIME_RTOL * max(1.0, abs(hi)):
                        mid = 0.5 * (lo + hi)
                        if np.linalg.norm(dense(mid)) ** 2 < r:
                            hi = mid
                        else:
                            lo = mid
                    tj = hi
                    # pre-jump samples strictly before the jump time
                    while pointer < nt and tlist[pointer] < tj:
                        val = dense(tlist[pointer])
                        kets[pointer] = val / np.linalg.norm(val)
                        pointer += 1
                    do_jump(tj, dense(tj))
                    jumped = True
                    break
                if pointer < nt and tlist[pointer] <= solver.t:
                    dense = solver.dense_output()
                    while pointer < nt and tlist[pointer] <= solver.t:
                        val = dense(tlist[pointer])
                        kets[pointer] = val / np.linalg.norm(val)
                        pointer += 1
            if not jumped:
                y = solver.y
                t = b
                if not np.all(np.isfinite(y)):
                    raise SolverError(f"trajectory {index} non-finite at t={b}")
    while pointer < nt:
        kets[pointer] = y / np.linalg.norm(y)
        pointer += 1
    return index, kets, jumps


def _trajectory_star(args):
    return _run_trajectory(*args)


def _resolve_workers(options: SolverOptions) -> int:
    if options.num_workers is not None:
        return max(1, int(options.num_workers))
    env = os.environ.get("PULSESIM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def mcsolve(H, psi0, c_ops=None, tlist=None, e_ops=None,
            options: Optional[SolverOptions] = None) -> SolverResult:
    """Monte-Carlo quantum trajectories.

    Evolves unnormalized kets under H_eff = H − (i/2)·Σ Γ†Γ, locating each
    quantum jump by bisection on the step's dense output and selecting the
    channel proportionally to ⟨ψ|Γ†Γ|ψ⟩.  Deterministic for a fixed
    (seed, ntraj) regardless of worker count.
    """
    options = options or SolverOptions()
    ham = _as_hamiltonian(H)
    tlist = _check_tlist(tlist)
    d = ham.dim

    if isinstance(psi0, QuantumState):
        if psi0.kind != "ket":
            raise ValueError("mcsolve requires a ket initial state")
        y0 = psi0.data.astype(complex)
        dims = psi0.dims
    else:
        y0 = np.asarray(psi0, dtype=complex).reshape(-1)
        dims = ham.dims
    if y0.shape[0] != d:
        raise ValueError(f"initial state dimension {y0.shape[0]} != H dimension {d}")

    terms = _as_collapse_terms(c_ops, d)
    seed = options.seed if options.seed is not None else 0
    max_step = options.max_step if options.max_step else np.inf
    rtol, atol = _stepper_tols(options)
    ntraj = options.ntraj

    jobs = [
        (ham, terms, y0, tlist, rtol, atol, max_step, seed, i)
        for i in range(ntraj)
    ]
    workers = _resolve_workers(options)
    results = [None] * ntraj
    if workers > 1 and ntraj > 1:
        try:
            pickle.dumps((ham, terms))
            picklable = True
        except Exception:
            picklable = False
        if picklable:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for index, kets, jumps in pool.map(
                    _trajectory_star, jobs, chunksize=max(1, ntraj // (4 * workers))
                ):
                    results[index] = (kets, jumps)
        else:
            workers = 1
    if workers <= 1 or ntraj == 1:
        for job in jobs:
            index, kets, jumps = _run_trajectory(*job)
            results[index] = (kets, jumps)

    nt = len(tlist)
    e_mats, e_herm = _prepare_e_ops(e_ops, d)
    expect = None
    if e_mats:
        acc = [np.zeros(nt, dtype=complex) for _ in e_mats]
        for kets, _ in results:  # fixed index order -> deterministic sums
            for k, mat in enumerate(e_mats):
                acc[k] += np.einsum("ti,ij,tj->t", kets.conj(), mat, kets)
        expect = [
            (a / ntraj).real if isherm else a / ntraj
            for a, isherm in zip(acc, e_herm)
        ]

    states = None
    if options.store_states:
        dens = np.zeros((nt, d, d), dtype=complex)
        for kets, _ in results:
            dens += np.einsum("ti,tj->tij", kets, kets.conj())
        dens /= ntraj
        states = [QuantumState(dens[i], dims, kind="density") for i in range(nt)]

    final = np.zeros((d, d), dtype=complex)
    for kets, _ in results:
        final += np.outer(kets[-1], kets[-1].conj())
    final_state = QuantumState(final / ntraj, dims, kind="density")

    return SolverResult(
        times=tlist,
        final_state=final_state,
        states=states,
        expect=expect,
        ntraj_used=ntraj,
        jump_records=[jumps for _, jumps in results],
    )
