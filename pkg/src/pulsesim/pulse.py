"""Pulse-level program representation.

A compiled circuit becomes a :class:`HamiltonianProgram`: a static/drift part
plus a list of :class:`Pulse` objects, each pairing one local control operator
with a sampled, interpolated coefficient and any noise attached to that
control line.  :func:`assemble` lowers a program to flat, picklable solver
inputs — a callable time-dependent Hamiltonian on the full Hilbert space and a
list of collapse terms.

Unit convention: coefficients are plain frequencies in MHz, times are in µs,
and control operators carry the 2π factor, so a coefficient ``c`` on operator
2π·σx/2 applied for 1/(2c) µs produces a π rotation.
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import CubicSpline

from .core import Operator, expand_operator

__all__ = [
    "ControlCoefficient",
    "Pulse",
    "HamiltonianProgram",
    "AssembledHamiltonian",
    "CollapseTerm",
    "assemble",
    "export_pulse_schedule",
]


class ControlCoefficient:
    """A real control coefficient sampled on a time grid.

    ``kind="step"`` holds per-interval values (one fewer than time points):
    the value on [tlist[i], tlist[i+1]) is coeff[i], and 0 outside the grid.
    ``kind="cubic"`` holds per-point samples interpolated by a natural cubic
    spline, clamped to 0 outside the grid.
    """

    __slots__ = ("tlist", "coeff", "kind", "_spline")

    def __init__(self, tlist, coeff, kind: str = "step"):
        tlist = np.asarray(tlist, dtype=float)
        coeff = np.asarray(coeff, dtype=float)
        if kind not in ("step", "cubic"):
            raise ValueError(f"kind must be 'step' or 'cubic', got {kind!r}")
        if tlist.ndim != 1 or coeff.ndim != 1:
            raise ValueError("tlist and coeff must be one-dimensional")
        if len(tlist) < 2:
            raise ValueError("need at least two time points")
        if not np.all(np.diff(tlist) > 0):
            raise ValueError("tlist must be strictly increasing")
        if not (np.all(np.isfinite(tlist)) and np.all(np.isfinite(coeff))):
            raise ValueError("tlist and coeff must be finite")
        expected = len(tlist) - 1 if kind == "step" else len(tlist)
        if len(coeff) != expected:
            raise ValueError(
                f"{kind} coefficient needs {expected} values for "
                f"{len(tlist)} time points, got {len(coeff)}"
            )
        self.tlist = tlist
        self.coeff = coeff
        self.kind = kind
        self._spline = None

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        out = np.zeros_like(t)
        if self.kind == "step":
            inside = (t >= self.tlist[0]) & (t < self.tlist[-1])
            idx = np.searchsorted(self.tlist, t[inside], side="right") - 1
            out[inside] = self.coeff[idx]
        else:
            if self._spline is None:
                self._spline = CubicSpline(self.tlist, self.coeff, bc_type="natural")
            inside = (t >= self.tlist[0]) & (t <= self.tlist[-1])
            out[inside] = self._spline(t[inside])
        return float(out[0]) if scalar else out

    def value(self, t: float) -> float:
        """Scalar evaluation on the solver's hot path (same result as __call__)."""
        tlist = self.tlist
        if self.kind == "step":
            if t < tlist[0] or t >= tlist[-1]:
                return 0.0
            i = int(np.searchsorted(tlist, t, side="right")) - 1
            return float(self.coeff[i])
        if t < tlist[0] or t > tlist[-1]:
            return 0.0
        spline = self._spline
        if spline is None:
            spline = self._spline = CubicSpline(self.tlist, self.coeff,
                                                bc_type="natural")
        x = spline.x
        i = int(np.searchsorted(x, t, side="right")) - 1
        if i < 0:
            i = 0
        elif i > len(x) - 2:
            i = len(x) - 2
        dt = t - x[i]
        c = spline.c
        return float(((c[0, i] * dt + c[1, i]) * dt + c[2, i]) * dt + c[3, i])

    @property
    def knots(self) -> np.ndarray:
        """Times where the coefficient loses smoothness (integrator restarts)."""
        if self.kind == "step":
            return self.tlist
        return np.array([self.tlist[0], self.tlist[-1]])

    @property
    def end_time(self) -> float:
        return float(self.tlist[-1])

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeff))) if len(self.coeff) else 0.0

    def __getstate__(self):
        return (self.tlist, self.coeff, self.kind)

    def __setstate__(self, state):
        self.tlist, self.coeff, self.kind = state
        self._spline = None

    def __repr__(self):
        return (
            f"ControlCoefficient({self.kind}, {len(self.tlist)} points, "
            f"t ∈ [{self.tlist[0]:g}, {self.tlist[-1]:g}])"
        )


def _validate_local_term(op: Operator, targets) -> tuple[Operator, tuple[int, ...]]:
    if not isinstance(op, Operator):
        raise TypeError("operator term must be an Operator")
    targets = tuple(int(q) for q in targets)
    if len(set(targets)) != len(targets):
        raise ValueError("duplicate target subsystem")
    if len(op.dims) != len(targets):
        raise ValueError(
            f"operator acts on {len(op.dims)} subsystem(s) but "
            f"{len(targets)} target(s) given"
        )
    return op, targets


class Pulse:
    """One control line: a local operator, its coefficient, and attached noise."""

    def __init__(self, op: Operator, targets, coeff: ControlCoefficient, label: str = ""):
        op, targets = _validate_local_term(op, targets)
        if not isinstance(coeff, ControlCoefficient):
            raise TypeError("coeff must be a ControlCoefficient")
        self.op = op
        self.targets = targets
        self.coeff = coeff
        self.label = label
        # (op, targets, ControlCoefficient)
        self.control_noise: list[tuple[Operator, tuple[int, ...], ControlCoefficient]] = []
        # (op, targets, ControlCoefficient | float)
        self.lindblad_noise: list[tuple[Operator, tuple[int, ...], object]] = []

    def add_control_noise(self, op: Operator, targets, coeff: ControlCoefficient):
        """Attach a coherent noise Hamiltonian term evaluated alongside this pulse."""
        op, targets = _validate_local_term(op, targets)
        if not isinstance(coeff, ControlCoefficient):
            raise TypeError("coeff must be a ControlCoefficient")
        self.control_noise.append((op, targets, coeff))

    def add_lindblad_noise(self, op: Operator, targets, coeff=None):
        """Attach a collapse operator tied to this pulse.

        ``coeff`` may be a ControlCoefficient (time-dependent rate envelope),
        a number (constant scale), or None (the bare operator).
        """
        op, targets = _validate_local_term(op, targets)
        if coeff is not None and not isinstance(coeff, ControlCoefficient):
            coeff = float(coeff)
        self.lindblad_noise.append((op, targets, coeff))

    @property
    def end_time(self) -> float:
        ends = [self.coeff.end_time]
        ends += [c.end_time for _, _, c in self.control_noise]
        ends += [
            c.end_time for _, _, c in self.lindblad_noise
            if isinstance(c, ControlCoefficient)
        ]
        return max(ends)

    def __repr__(self):
        return f"Pulse({self.label!r}, targets={list(self.targets)}, {self.coeff!r})"


class HamiltonianProgram:
    """Drift terms plus compiled pulses over a fixed subsystem layout."""

    def __init__(self, dims):
        dims = [int(d) for d in dims]
        if not dims or any(d < 2 for d in dims):
            raise ValueError("dims must be a non-empty list of integers >= 2")
        self.dims = dims
        # (op, targets, ControlCoefficient | float)
        self.drift: list[tuple[Operator, tuple[int, ...], object]] = []
        self.pulses: list[Pulse] = []

    def add_drift(self, op: Operator, targets, coeff=1.0):
        op, targets = _validate_local_term(op, targets)
        self._check_targets(op, targets)
        if coeff is not None and not isinstance(coeff, ControlCoefficient):
            coeff = float(coeff)
        self.drift.append((op, targets, coeff))

    def add_pulse(self, pulse: Pulse):
        if not isinstance(pulse, Pulse):
            raise TypeError("expected a Pulse")
        self._check_targets(pulse.op, pulse.targets)
        for op, targets, _ in pulse.control_noise:
            self._check_targets(op, targets)
        for op, targets, _ in pulse.lindblad_noise:
            self._check_targets(op, targets)
        self.pulses.append(pulse)

    def _check_targets(self, op: Operator, targets):
        for q, d in zip(targets, op.dims):
            if not 0 <= q < len(self.dims):
                raise ValueError(f"target {q} out of range for {len(self.dims)} subsystems")
            if self.dims[q] != d:
                raise ValueError(
                    f"operator dimension {d} does not match subsystem {q} "
                    f"of dimension {self.dims[q]}"
                )

    @property
    def total_time(self) -> float:
        ends = [0.0]
        ends += [p.end_time for p in self.pulses]
        ends += [
            c.end_time for _, _, c in self.drift if isinstance(c, ControlCoefficient)
        ]
        return max(ends)

    def __repr__(self):
        return (
            f"HamiltonianProgram(dims={self.dims}, {len(self.pulses)} pulses, "
            f"total_time={self.total_time:g})"
        )


class AssembledHamiltonian:
    """H(t) on the full Hilbert space: a static part plus coefficient terms.

    Instances are picklable and immutable, safe to share across workers.
    """

    def __init__(self, dims, terms):
        self.dims = list(dims)
        self.dim = int(np.prod(self.dims))
        static = np.zeros((self.dim, self.dim), dtype=complex)
        dynamic: list[tuple[np.ndarray, ControlCoefficient]] = []
        knots: list[np.ndarray] = []
        for mat, coeff in terms:
            if coeff is None:
                static = static + mat
            elif isinstance(coeff, ControlCoefficient):
                dynamic.append((np.asarray(mat, dtype=complex), coeff))
                knots.append(coeff.knots)
            else:
                static = static + float(coeff) * mat
        self.static = static
        self.terms = dynamic
        self.knots = (
            np.unique(np.concatenate(knots)) if knots else np.empty(0, dtype=float)
        )

    def __call__(self, t: float) -> np.ndarray:
        h = self.static.copy()
        for mat, coeff in self.terms:
            c = coeff(t)
            if c != 0.0:
                h += c * mat
        return h

    @property
    def is_static(self) -> bool:
        return not self.terms


class CollapseTerm:
    """A collapse operator Γ(t) = coeff(t)·Op on the full Hilbert space."""

    def __init__(self, mat: np.ndarray, coeff=None):
        mat = np.asarray(mat, dtype=complex)
        if coeff is not None and not isinstance(coeff, ControlCoefficient):
            mat = float(coeff) * mat  # constant scale folds into the operator
            coeff = None
        self.mat = mat
        self.coeff = coeff
        self.matdagmat = mat.conj().T @ mat

    def rate_coeff(self, t: float) -> float:
        """Scalar multiplier c(t) of the operator at time t."""
        if self.coeff is None:
            return 1.0
        return self.coeff(t)

    @property
    def is_constant(self) -> bool:
        return self.coeff is None

    @property
    def knots(self) -> np.ndarray:
        if self.coeff is None:
            return np.empty(0, dtype=float)
        return self.coeff.knots


def assemble(program: HamiltonianProgram, with_noise: bool = True):
    """Lower a program to (AssembledHamiltonian, collapse terms).

    With ``with_noise=False`` all control-noise and Lindblad entries are
    stripped, leaving the ideal Hermitian Hamiltonian.
    """
    dims = program.dims
    terms = []
    for op, targets, coeff in program.drift:
        terms.append((expand_operator(op, dims, list(targets)).data, coeff))
    c_ops: list[CollapseTerm] = []
    for pulse in program.pulses:
        terms.append(
            (expand_operator(pulse.op, dims, list(pulse.targets)).data, pulse.coeff)
        )
        if not with_noise:
            continue
        for op, targets, coeff in pulse.control_noise:
            terms.append((expand_operator(op, dims, list(targets)).data, coeff))
        for op, targets, coeff in pulse.lindblad_noise:
            c_ops.append(
                CollapseTerm(expand_operator(op, dims, list(targets)).data, coeff)
            )
    return AssembledHamiltonian(dims, terms), c_ops


def export_pulse_schedule(program: HamiltonianProgram) -> list[dict]:
    """JSON-ready view of the ideal pulse schedule (noise not included)."""
    out = []
    for pulse in program.pulses:
        out.append(
            {
                "label": pulse.label,
                "targets": [int(q) for q in pulse.targets],
                "kind": pulse.coeff.kind,
                "tlist": [float(t) for t in pulse.coeff.tlist],
                "coeff": [float(c) for c in pulse.coeff.coeff],
            }
        )
    return out
