"""Hardware models and gate-to-pulse compilers.

A hardware model owns the subsystem layout of a device: always-on drift
terms, a table of labelled control lines (each a Hermitian operator acting
on specific subsystems), the parameter values that set pulse amplitudes,
and the set of gate names its compiler accepts natively.  Three predefined
families are provided:

``SpinChainModel``
    Qubits on a 1-D chain with local ``sx``/``sz`` drives and an XX+YY
    exchange line between neighbours (optionally wrapped into a ring).
    Gates compile to square pulses.

``CavityQEDModel``
    A single resonator dispersively shared by all qubits.  Single-qubit
    drives are square pulses; two-qubit ISWAPs are executed by swapping one
    qubit into the resonator and back around a composite resonator-qubit
    pulse sequence on the partner that closes the doubly-excited subspace
    exactly (see ``_iswap_composite``).

``SCQubitsModel``
    Fixed-frequency three-level transmons with Gaussian drive envelopes,
    a cross-resonance line between neighbours, and an anharmonicity drift
    that detunes the leakage level.

All control operators carry the 2*pi factor, so a constant coefficient
``c`` on a line with operator ``2*pi*P`` rotates by ``exp(-i*theta*P/2)``
with ``theta = 4*pi*integral(c dt)``.  Coefficients are in MHz and times
in microseconds throughout.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .circuit import Gate, QubitCircuit, decompose_to_native, insert_chain_swaps
from .core import Operator, destroy, sigmax, sigmay, sigmaz
from .pulse import ControlCoefficient, HamiltonianProgram, Pulse
from .scheduler import Instruction, schedule_instructions

__all__ = [
    "HardwareModel",
    "SpinChainModel",
    "CavityQEDModel",
    "SCQubitsModel",
    "compile_spinchain",
    "compile_cavityqed",
    "compile_scqubits",
    "compile_circuit",
    "model_from_config",
]

_TWO_PI = 2.0 * math.pi

# Gaussian envelopes use sigma = duration/4, truncated at +-2 sigma and
# shifted so they vanish at the edges:  e(x) = exp(-8(x-1/2)^2) - exp(-2)
# on x in [0, 1].  The area of the peak-normalised envelope per unit
# duration is then (sqrt(pi/8)*erf(sqrt(2)) - exp(-2)) / (1 - exp(-2)).
_GAUSS_EDGE = math.exp(-2.0)
_GAUSS_EFF = (math.sqrt(math.pi / 8.0) * math.erf(math.sqrt(2.0))
              - _GAUSS_EDGE) / (1.0 - _GAUSS_EDGE)
_GAUSS_SAMPLES = 65

# angles below this are compiled to nothing (the rotation is the identity)
_ANGLE_EPS = 1e-12


def _per_site(value, n: int, name: str) -> tuple[float, ...]:
    """Broadcast a positive scalar, or validate a length-``n`` sequence."""
    if isinstance(value, (int, float)):
        values = [float(value)] * n
    else:
        values = [float(v) for v in value]
        if len(values) != n:
            raise ValueError(f"{name} needs {n} entries, got {len(values)}")
    for v in values:
        if not math.isfinite(v) or v <= 0:
            raise ValueError(f"{name} entries must be positive, got {v}")
    return tuple(values)


def _per_site_any(value, n: int, name: str) -> tuple[float, ...]:
    """Broadcast a finite scalar (any sign), or validate a sequence."""
    if isinstance(value, (int, float)):
        values = [float(value)] * n
    else:
        values = [float(v) for v in value]
        if len(values) != n:
            raise ValueError(f"{name} needs {n} entries, got {len(values)}")
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} entries must be finite, got {v}")
    return tuple(values)


class HardwareModel:
    """Subsystem layout, drift terms and labelled control lines of a device.

    ``get_control`` returns the same ``(Operator, targets)`` tuple object on
    every call for a given label, so callers may key caches on identity.
    """

    def __init__(
        self,
        num_qubits: int,
        subsystem_dims: Sequence[int],
        params: dict,
        native_gates: Sequence[str],
        drive_limit: Optional[float] = None,
    ):
        if num_qubits < 1:
            raise ValueError("need at least one qubit")
        self.num_qubits = int(num_qubits)
        self.subsystem_dims = tuple(int(d) for d in subsystem_dims)
        self.params = dict(params)
        self.native_gates = frozenset(native_gates)
        self.drive_limit = None if drive_limit is None else float(drive_limit)
        self._controls: dict[str, tuple[Operator, tuple[int, ...]]] = {}
        self._drift: list[tuple[Operator, tuple[int, ...]]] = []

    def _add_control(self, label: str, op: Operator, targets) -> None:
        self._controls[label] = (op, tuple(int(t) for t in targets))

    def _add_drift(self, op: Operator, targets) -> None:
        self._drift.append((op, tuple(int(t) for t in targets)))

    @property
    def drift_terms(self) -> list[tuple[Operator, tuple[int, ...]]]:
        return list(self._drift)

    def get_control(self, label: str) -> tuple[Operator, tuple[int, ...]]:
        try:
            return self._controls[label]
        except KeyError:
            raise ValueError(
                f"unknown control {label!r}; available: "
                f"{', '.join(self._controls)}"
            ) from None

    def get_control_labels(self) -> list[str]:
        return list(self._controls)

    def __repr__(self):
        return (f"{type(self).__name__}({self.num_qubits} qubits, "
                f"{len(self._controls)} controls)")


class SpinChainModel(HardwareModel):
    """Exchange-coupled qubit chain with local x/z drives.

    Control lines (``j`` = qubit index):

    - ``sx{j}``: ``2*pi*sigma_x`` on qubit ``j``, amplitude ``sx``.
    - ``sz{j}``: ``2*pi*sigma_z`` on qubit ``j``, amplitude ``sz``.
    - ``g{j}``: ``2*pi*(XX + YY)`` between ``j`` and ``j+1`` (with
      ``boundary="closed"`` an extra ``g{N-1}`` wraps ``N-1`` to ``0``),
      amplitude ``sxsy``.
    """

    def __init__(
        self,
        num_qubits: int,
        boundary: str = "open",
        sx: Union[float, Sequence[float]] = 0.25,
        sz: Union[float, Sequence[float]] = 1.0,
        sxsy: Union[float, Sequence[float]] = 0.1,
    ):
        if boundary not in ("open", "closed"):
            raise ValueError(f"boundary must be 'open' or 'closed', "
                             f"got {boundary!r}")
        n = int(num_qubits)
        if boundary == "closed" and n < 2:
            raise ValueError("a closed chain needs at least two qubits")
        pairs = [(j, j + 1) for j in range(n - 1)]
        if boundary == "closed" and n > 2:
            pairs.append((n - 1, 0))
        sx_v = _per_site(sx, n, "sx")
        sz_v = _per_site(sz, n, "sz")
        g_v = _per_site(sxsy, len(pairs), "sxsy") if pairs else ()
        super().__init__(
            n, (2,) * n,
            {"sx": sx_v, "sz": sz_v, "sxsy": g_v, "boundary": boundary},
            native_gates=("RX", "RZ", "ISWAP"),
        )
        self.boundary = boundary
        xmat, ymat, zmat = sigmax().data, sigmay().data, sigmaz().data
        exchange = np.kron(xmat, xmat) + np.kron(ymat, ymat)
        for j in range(n):
            self._add_control(f"sx{j}", Operator(_TWO_PI * xmat, (2,)), (j,))
            self._add_control(f"sz{j}", Operator(_TWO_PI * zmat, (2,)), (j,))
        for k, (a, b) in enumerate(pairs):
            self._add_control(
                f"g{k}", Operator(_TWO_PI * exchange, (2, 2)), (a, b)
            )
        self._pairs = tuple(pairs)

    def exchange_label(self, a: int, b: int) -> str:
        """Label of the exchange line joining qubits ``a`` and ``b``."""
        want = {a, b}
        for k, pair in enumerate(self._pairs):
            if set(pair) == want:
                return f"g{k}"
        raise ValueError(f"no exchange coupling between qubits {a} and {b}")


class CavityQEDModel(HardwareModel):
    """Qubits coupled pairwise to one shared resonator (subsystem 0).

    Control lines (``j`` = qubit index, living on subsystem ``j+1``):

    - ``sx{j}`` / ``sy{j}``: ``2*pi*sigma_x`` / ``2*pi*sigma_y`` drives.
    - ``g{j}``: ``2*pi*(a_dag*sm + a*sp)`` exchange between the resonator
      and qubit ``j``.

    Nonzero ``delta_r`` / ``delta_q`` add number-operator drift terms
    (resonator and qubit detunings from the drive frame).
    """

    def __init__(
        self,
        num_qubits: int,
        num_levels: int = 10,
        g: Union[float, Sequence[float]] = 1.0,
        sx: Union[float, Sequence[float]] = 0.25,
        sy: Union[float, Sequence[float]] = 0.25,
        delta_r: float = 0.0,
        delta_q: Union[float, Sequence[float]] = 0.0,
    ):
        n = int(num_qubits)
        nl = int(num_levels)
        if nl < 3:
            # the ISWAP composite steers through the two-photon sector
            raise ValueError("num_levels must be at least 3")
        g_v = _per_site(g, n, "g")
        sx_v = _per_site(sx, n, "sx")
        sy_v = _per_site(sy, n, "sy")
        dq_v = _per_site_any(delta_q, n, "delta_q")
        dr = float(delta_r)
        super().__init__(
            n, (nl,) + (2,) * n,
            {"g": g_v, "sx": sx_v, "sy": sy_v, "delta_r": dr,
             "delta_q": dq_v, "num_levels": nl},
            native_gates=("RX", "RY", "ISWAP"),
        )
        a = destroy(nl).data
        sm = destroy(2).data
        swap_mat = np.kron(a.conj().T, sm) + np.kron(a, sm.conj().T)
        for j in range(n):
            self._add_control(
                f"sx{j}", Operator(_TWO_PI * sigmax().data, (2,)), (j + 1,)
            )
            self._add_control(
                f"sy{j}", Operator(_TWO_PI * sigmay().data, (2,)), (j + 1,)
            )
            self._add_control(
                f"g{j}", Operator(_TWO_PI * swap_mat, (nl, 2)), (0, j + 1)
            )
        if dr != 0.0:
            self._add_drift(
                Operator(_TWO_PI * dr * np.diag(np.arange(nl,
                         dtype=float)), (nl,)), (0,)
            )
        for j, dq in enumerate(dq_v):
            if dq != 0.0:
                self._add_drift(
                    Operator(_TWO_PI * dq * np.diag([0.0, 1.0]), (2,)),
                    (j + 1,),
                )


class SCQubitsModel(HardwareModel):
    """Chain of fixed-frequency three-level transmons.

    Control lines (``j`` = qubit index):

    - ``sx{j}``: ``2*pi*(a + a_dag)`` — drives 0-1 and, with weight
      ``sqrt(2)``, the leaky 1-2 transition.
    - ``sy{j}``: ``2*pi*i*(a_dag - a)``.
    - ``cr1{j}``: cross resonance ``2*pi*(sigma_z x sigma_x)`` on the pair
      ``(j, j+1)``, both factors projected onto the qubit levels.
    - ``cr2{j}``: the mirrored ``2*pi*(sigma_x x sigma_z)`` line (exposed
      for completeness; the compiler re-expresses reversed CNOTs through
      RY(±pi/2) conjugation so only ``cr1`` lines are played).

    The drift carries the anharmonicity ``2*pi*(alpha/2)*adag*adag*a*a``
    per transmon, plus an optional always-on ZZ cross-talk term
    ``2*pi*zz_crosstalk*|11><11|`` on neighbouring pairs.  Compiled pulses
    are Gaussian with ``sigma = duration/4`` and must stay below
    ``omega_max``.

    The ``omega_single`` default keeps the drive weak against the
    anharmonicity: the off-resonant 1-2 coupling Stark-shifts level 1 by
    roughly ``2*(2*pi*c)^2/(2*pi*|alpha|)`` while a pulse plays, a coherent
    phase error that grows with drive amplitude and accumulates across a
    circuit.
    """

    def __init__(
        self,
        num_qubits: int,
        alpha: Union[float, Sequence[float]] = -300.0,
        omega_single: Union[float, Sequence[float]] = 1.0,
        omega_cr: Union[float, Sequence[float]] = 1.25,
        omega_max: float = 20.0,
        zz_crosstalk: float = 0.0,
    ):
        n = int(num_qubits)
        omega_max = float(omega_max)
        if omega_max <= 0:
            raise ValueError("omega_max must be positive")
        alpha_v = _per_site_any(alpha, n, "alpha")
        os_v = _per_site(omega_single, n, "omega_single")
        ocr_v = _per_site(omega_cr, max(n - 1, 0), "omega_cr") if n > 1 else ()
        zz = float(zz_crosstalk)
        for v in os_v + ocr_v:
            if v > omega_max:
                raise ValueError(
                    f"drive amplitude {v} exceeds omega_max={omega_max}"
                )
        super().__init__(
            n, (3,) * n,
            {"alpha": alpha_v, "omega_single": os_v, "omega_cr": ocr_v,
             "omega_max": omega_max, "zz_crosstalk": zz},
            native_gates=("RX", "RY", "CNOT"),
            drive_limit=omega_max,
        )
        a = destroy(3).data
        x3 = np.zeros((3, 3)); x3[0, 1] = x3[1, 0] = 1.0
        z3 = np.diag([1.0, -1.0, 0.0])
        n11 = np.diag([0.0, 1.0, 0.0])
        for j in range(n):
            self._add_control(
                f"sx{j}", Operator(_TWO_PI * (a + a.conj().T), (3,)), (j,)
            )
            self._add_control(
                f"sy{j}", Operator(_TWO_PI * 1j * (a.conj().T - a), (3,)),
                (j,),
            )
        for j in range(n - 1):
            self._add_control(
                f"cr1{j}", Operator(_TWO_PI * np.kron(z3, x3), (3, 3)),
                (j, j + 1),
            )
            self._add_control(
                f"cr2{j}", Operator(_TWO_PI * np.kron(x3, z3), (3, 3)),
                (j, j + 1),
            )
        for j, al in enumerate(alpha_v):
            self._add_drift(
                Operator(np.diag([0.0, 0.0, _TWO_PI * al]), (3,)), (j,)
            )
        if zz != 0.0:
            for j in range(n - 1):
                self._add_drift(
                    Operator(_TWO_PI * zz * np.kron(n11, n11), (3, 3)),
                    (j, j + 1),
                )


# ---------------------------------------------------------------------------
# pulse segments and the shared emit/schedule machinery


@dataclass(frozen=True)
class _Segment:
    """One pulse played on a control line, relative to its gate's start."""

    label: str
    amp: float
    rel_start: float
    duration: float
    shape: str = "square"  # "square" | "gaussian"

    def coefficient(self, t0: float) -> ControlCoefficient:
        start = t0 + self.rel_start
        if self.shape == "square":
            return ControlCoefficient(
                [start, start + self.duration], [self.amp], kind="step"
            )
        xs = np.linspace(0.0, 1.0, _GAUSS_SAMPLES)
        env = (np.exp(-8.0 * (xs - 0.5) ** 2) - _GAUSS_EDGE) \
            / (1.0 - _GAUSS_EDGE)
        return ControlCoefficient(
            start + xs * self.duration, self.amp * env, kind="cubic"
        )


def _wrap_angle(theta: float) -> float:
    """Reduce a rotation angle to (-2*pi, 2*pi]; exact for period 4*pi."""
    wrapped = math.remainder(float(theta), 4.0 * math.pi)
    return 0.0 if abs(wrapped) < _ANGLE_EPS else wrapped


def _square_rotation(label: str, theta: float, amp: float,
                     rel_start: float = 0.0) -> list[_Segment]:
    """Square pulse for ``exp(-i*theta*P/2)`` on a ``2*pi*P`` line."""
    theta = _wrap_angle(theta)
    if theta == 0.0:
        return []
    duration = abs(theta) / (4.0 * math.pi * amp)
    return [_Segment(label, math.copysign(amp, theta), rel_start, duration)]


def _gauss_rotation(label: str, theta: float, peak: float,
                    rel_start: float = 0.0) -> list[_Segment]:
    """Gaussian pulse for ``exp(-i*theta*P/2)`` on a ``2*pi*P`` line."""
    theta = _wrap_angle(theta)
    if theta == 0.0:
        return []
    duration = abs(theta) / (4.0 * math.pi * _GAUSS_EFF * peak)
    return [_Segment(label, math.copysign(peak, theta), rel_start, duration,
                     "gaussian")]


def _total(segments: list[_Segment]) -> float:
    return max((s.rel_start + s.duration for s in segments), default=0.0)


def _emit_program(model: HardwareModel, circ: QubitCircuit,
                  segment_fn, schedule_mode: str) -> HamiltonianProgram:
    """Schedule per-gate segment lists and lay them out as one program."""
    instructions: list[Instruction] = []
    seg_lists: list[list[_Segment]] = []
    for gate in circ.gates:
        if gate.name == "GLOBALPHASE":
            continue  # scalar phase; invisible to any pulse-level observable
        segments = segment_fn(gate)
        if not segments:
            continue
        limit = model.drive_limit
        if limit is not None:
            for seg in segments:
                if abs(seg.amp) > limit * (1.0 + 1e-12):
                    raise ValueError(
                        f"compiled amplitude {seg.amp} on {seg.label} "
                        f"exceeds the drive limit {limit}"
                    )
        instructions.append(Instruction(gate, _total(segments)))
        seg_lists.append(segments)
    starts = schedule_instructions(instructions, mode=schedule_mode)
    program = HamiltonianProgram(model.subsystem_dims)
    for op, targets in model.drift_terms:
        program.add_drift(op, targets)
    for t0, segments in zip(starts, seg_lists):
        for seg in segments:
            op, targets = model.get_control(seg.label)
            program.add_pulse(
                Pulse(op, targets, seg.coefficient(t0), label=seg.label)
            )
    return program


def _route_with_adjacency(circ: QubitCircuit, is_adjacent) -> QubitCircuit:
    """Wrap non-adjacent two-qubit gates in linear SWAP ladders."""
    out = QubitCircuit(circ.num_qubits)
    for gate in circ.gates:
        qubits = gate.qubits
        if len(qubits) != 2 or is_adjacent(*qubits):
            out.append(gate)
            continue
        single = QubitCircuit(circ.num_qubits, [gate])
        for routed in insert_chain_swaps(single).gates:
            out.append(routed)
    return out


def _check_model(circ: QubitCircuit, model: HardwareModel,
                 expected: type) -> None:
    if not isinstance(model, expected):
        raise TypeError(f"expected {expected.__name__}, "
                        f"got {type(model).__name__}")
    if circ.num_qubits != model.num_qubits:
        raise ValueError(
            f"circuit has {circ.num_qubits} qubits but the model "
            f"has {model.num_qubits}"
        )


# ---------------------------------------------------------------------------
# spin chain compiler


def compile_spinchain(circ: QubitCircuit, model: SpinChainModel,
                      schedule_mode: str = "ASAP") -> HamiltonianProgram:
    """Compile a circuit to square pulses on a :class:`SpinChainModel`.

    Rotations play at the fixed line amplitude with the angle encoded in
    the duration (``RX(theta)`` lasts ``|theta| / (4*pi*sx)``); ISWAP holds
    the exchange line at ``-sxsy`` for ``1/(8*sxsy)``.  Distant two-qubit
    gates are routed with SWAP ladders before decomposition.
    """
    _check_model(circ, model, SpinChainModel)
    n = model.num_qubits
    closed = model.boundary == "closed"

    def adjacent(a: int, b: int) -> bool:
        if abs(a - b) == 1:
            return True
        return closed and n > 2 and {a, b} == {0, n - 1}

    routed = _route_with_adjacency(circ, adjacent)
    native = decompose_to_native(routed, model.native_gates)

    sx_v, sz_v = model.params["sx"], model.params["sz"]
    g_v = model.params["sxsy"]

    def segments(gate: Gate) -> list[_Segment]:
        if gate.name == "RX":
            (q,) = gate.targets
            return _square_rotation(f"sx{q}", gate.arg, sx_v[q])
        if gate.name == "RZ":
            (q,) = gate.targets
            return _square_rotation(f"sz{q}", gate.arg, sz_v[q])
        if gate.name == "ISWAP":
            a, b = gate.targets
            label = model.exchange_label(a, b)
            g = g_v[int(label[1:])]
            # exp(+i*(pi/4)*(XX+YY)) == ISWAP: amplitude -g for 1/(8g)
            return [_Segment(label, -g, 0.0, 1.0 / (8.0 * g))]
        raise ValueError(f"gate {gate.name} is not native to the spin chain")

    return _emit_program(model, native, segments, schedule_mode)


# ---------------------------------------------------------------------------
# cavity QED compiler

# The qubit-resonator exchange line rotates the single-excitation pair
# {|1r 0q>, |0r 1q>} at the drive angle theta = 2*pi*g*t while the
# two-excitation pair {|2r 0q>, |1r 1q>} turns sqrt(2) times faster, so a
# bare swap leaks whenever both qubits are excited.  The composite below
# plays three exchange segments with angles (s/4, s/2, s/4), s = sqrt(2)*pi,
# separated by qubit phase rotations of -+delta.  The outer segments are
# then pi/2 turns of the fast pair and the middle one a full pi turn, so
# the two-excitation product telescopes to exactly the identity for any
# delta; antidiagonality of the slow pair (a complete swap) then fixes
# delta = arccos(cot(s/2)^2).  The RZ dressing angles that turn the
# swap - composite - swap sandwich into a phase-exact ISWAP follow from the
# composite's transfer phases; everything is derived here at import time.
_CAV_THETAS = (math.pi * math.sqrt(2.0) / 4.0,
               math.pi * math.sqrt(2.0) / 2.0,
               math.pi * math.sqrt(2.0) / 4.0)
_CAV_DELTA = math.acos(
    (math.cos(math.pi / math.sqrt(2.0)) / math.sin(math.pi / math.sqrt(2.0)))
    ** 2
)
_CAV_PHASES = (-_CAV_DELTA, _CAV_DELTA)


def _cavity_dressing() -> tuple[float, float]:
    """RZ angles (on the swapped and composite qubits) finishing the ISWAP."""
    def turn(theta):
        c, s = math.cos(theta), math.sin(theta)
        return np.array([[c, -1j * s], [-1j * s, c]])

    def phase(delta):
        return np.diag([np.exp(-0.5j * delta), np.exp(0.5j * delta)])

    m1 = turn(_CAV_THETAS[0])
    for theta, delta in zip(_CAV_THETAS[1:], _CAV_PHASES):
        m1 = turn(theta) @ phase(delta) @ m1
    # transfer phases of the full sandwich: each outer swap contributes -i,
    # |00> is untouched (the +-delta phases cancel), |11> returns with
    # phase pi; solve e^{i*gamma} RZ_j(a) RZ_k(b) V = ISWAP.
    p10 = float(np.angle(m1[0, 1])) - math.pi / 2.0
    gamma = -math.pi / 2.0
    a_plus_b = -math.pi
    a_minus_b = 2.0 * (math.pi / 2.0 - p10 - gamma)
    return ((a_plus_b + a_minus_b) / 2.0, (a_plus_b - a_minus_b) / 2.0)


_CAV_DRESS_J, _CAV_DRESS_K = _cavity_dressing()


def compile_cavityqed(circ: QubitCircuit, model: CavityQEDModel,
                      schedule_mode: str = "ASAP") -> HamiltonianProgram:
    """Compile a circuit to pulses on a :class:`CavityQEDModel`.

    Single-qubit rotations are square pulses that never touch the
    resonator.  ISWAP(j, k) swaps qubit ``j`` into the resonator, runs the
    exact composite exchange on ``k`` (phase rotations realised as
    RX(-pi/2)-RY-RX(pi/2) triples), swaps back, and finishes with RZ
    dressings on both qubits.  No routing is needed: the resonator couples
    every qubit.
    """
    _check_model(circ, model, CavityQEDModel)
    native = decompose_to_native(circ, model.native_gates)
    g_v = model.params["g"]
    sx_v, sy_v = model.params["sx"], model.params["sy"]

    def rz_triple(q: int, angle: float, at: float) -> list[_Segment]:
        angle = _wrap_angle(angle)
        if angle == 0.0:
            return []
        segs: list[_Segment] = []
        t = at
        for label, theta in ((f"sx{q}", -math.pi / 2.0),
                             (f"sy{q}", angle),
                             (f"sx{q}", math.pi / 2.0)):
            amp = sx_v[q] if label.startswith("sx") else sy_v[q]
            piece = _square_rotation(label, theta, amp, rel_start=t)
            segs.extend(piece)
            t = _total(segs)
        return segs

    def segments(gate: Gate) -> list[_Segment]:
        if gate.name == "RX":
            (q,) = gate.targets
            return _square_rotation(f"sx{q}", gate.arg, sx_v[q])
        if gate.name == "RY":
            (q,) = gate.targets
            return _square_rotation(f"sy{q}", gate.arg, sy_v[q])
        if gate.name == "ISWAP":
            j, k = gate.targets
            segs: list[_Segment] = []
            swap_dur = 1.0 / (4.0 * g_v[j])
            segs.append(_Segment(f"g{j}", g_v[j], 0.0, swap_dur))
            for i, theta in enumerate(_CAV_THETAS):
                segs.append(_Segment(
                    f"g{k}", g_v[k], _total(segs),
                    theta / (_TWO_PI * g_v[k]),
                ))
                if i < len(_CAV_PHASES):
                    segs.extend(rz_triple(k, _CAV_PHASES[i], _total(segs)))
            segs.append(_Segment(f"g{j}", g_v[j], _total(segs), swap_dur))
            segs.extend(rz_triple(j, _CAV_DRESS_J, _total(segs)))
            segs.extend(rz_triple(k, _CAV_DRESS_K, _total(segs)))
            return segs
        raise ValueError(f"gate {gate.name} is not native to the cavity "
                         f"model")

    return _emit_program(model, native, segments, schedule_mode)


# ---------------------------------------------------------------------------
# superconducting transmon compiler


def compile_scqubits(circ: QubitCircuit, model: SCQubitsModel,
                     schedule_mode: str = "ASAP") -> HamiltonianProgram:
    """Compile a circuit to Gaussian pulses on a :class:`SCQubitsModel`.

    ``CNOT(j, j+1)`` plays the cross-resonance line for a ZX(pi/2) turn and
    dresses it with RZ(-pi/2) on the control and RX(-pi/2) on the target;
    reversed CNOTs are conjugated with RY(±pi/2) rotations (which map Z↔X on
    each wire, exchanging the control and target roles) so only the ``cr1``
    lines are ever driven.  Distant gates are routed with SWAP ladders.
    """
    _check_model(circ, model, SCQubitsModel)
    routed = _route_with_adjacency(circ, lambda a, b: abs(a - b) == 1)
    native = decompose_to_native(routed, model.native_gates)
    flipped = QubitCircuit(native.num_qubits)
    for gate in native.gates:
        if gate.name == "CNOT" and gate.controls[0] > gate.targets[0]:
            hq, lq = gate.controls[0], gate.targets[0]
            # CNOT(hq→lq) = [RY(π/2)_lq RY(−π/2)_hq] · CNOT(lq→hq)
            #             · [RY(−π/2)_lq RY(π/2)_hq], exactly (no phase)
            flipped.append(Gate("RY", (lq,), arg=-math.pi / 2.0))
            flipped.append(Gate("RY", (hq,), arg=math.pi / 2.0))
            flipped.append(Gate("CNOT", targets=(hq,), controls=(lq,)))
            flipped.append(Gate("RY", (lq,), arg=math.pi / 2.0))
            flipped.append(Gate("RY", (hq,), arg=-math.pi / 2.0))
        else:
            flipped.append(gate)
    native = flipped

    os_v = model.params["omega_single"]
    ocr_v = model.params["omega_cr"]

    def segments(gate: Gate) -> list[_Segment]:
        if gate.name == "RX":
            (q,) = gate.targets
            return _gauss_rotation(f"sx{q}", gate.arg, os_v[q])
        if gate.name == "RY":
            (q,) = gate.targets
            return _gauss_rotation(f"sy{q}", gate.arg, os_v[q])
        if gate.name == "CNOT":
            c, t = gate.controls[0], gate.targets[0]
            segs = _gauss_rotation(f"cr1{c}", math.pi / 2.0, ocr_v[c])
            after = _total(segs)
            # dressing: RX(-pi/2) on the target, RZ(-pi/2) on the control
            # (as an RX/RY/RX triple); different qubits, so in parallel
            segs.extend(_gauss_rotation(f"sx{t}", -math.pi / 2.0, os_v[t],
                                        rel_start=after))
            at = after
            for label, theta in ((f"sx{c}", -math.pi / 2.0),
                                 (f"sy{c}", -math.pi / 2.0),
                                 (f"sx{c}", math.pi / 2.0)):
                piece = _gauss_rotation(label, theta, os_v[c], rel_start=at)
                segs.extend(piece)
                at = max(s.rel_start + s.duration for s in piece)
            return segs
        raise ValueError(f"gate {gate.name} is not native to the transmon "
                         f"model")

    return _emit_program(model, native, segments, schedule_mode)


# ---------------------------------------------------------------------------
# dispatch and configuration loading


def compile_circuit(circ: QubitCircuit, model: HardwareModel,
                    schedule_mode: str = "ASAP") -> HamiltonianProgram:
    """Compile with whichever compiler matches the model's type."""
    if isinstance(model, SpinChainModel):
        return compile_spinchain(circ, model, schedule_mode)
    if isinstance(model, CavityQEDModel):
        return compile_cavityqed(circ, model, schedule_mode)
    if isinstance(model, SCQubitsModel):
        return compile_scqubits(circ, model, schedule_mode)
    raise TypeError(f"no compiler for {type(model).__name__}")


_MODEL_BUILDERS = {
    "spinchain": SpinChainModel,
    "cavityqed": CavityQEDModel,
    "scqubits": SCQubitsModel,
}


def model_from_config(source):
    """Build ``(model, t1, t2)`` from a dict or a JSON/TOML file path.

    The configuration has keys ``model`` (one of ``spinchain``,
    ``cavityqed``, ``scqubits``), ``num_qubits``, optional ``params``
    (keyword arguments of the model constructor) and optional decoherence
    times ``t1`` / ``t2`` (scalar or per-subsystem list).
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        text = path.read_text()
        if path.suffix.lower() in (".toml", ".tml"):
            import tomli
            cfg = tomli.loads(text)
        else:
            try:
                cfg = json.loads(text)
            except json.JSONDecodeError:
                import tomli
                try:
                    cfg = tomli.loads(text)
                except tomli.TOMLDecodeError:
                    raise ValueError(
                        f"{path} is neither valid JSON nor valid TOML"
                    ) from None
    elif isinstance(source, dict):
        cfg = dict(source)
    else:
        raise TypeError("source must be a mapping or a file path")

    known = {"model", "num_qubits", "params", "t1", "t2"}
    extra = set(cfg) - known
    if extra:
        raise ValueError(f"unknown config keys: {sorted(extra)}")
    try:
        name = str(cfg["model"]).lower()
        num_qubits = int(cfg["num_qubits"])
    except KeyError as exc:
        raise ValueError(f"config is missing the {exc.args[0]!r} key") \
            from None
    builder = _MODEL_BUILDERS.get(name)
    if builder is None:
        raise ValueError(
            f"unknown model {cfg['model']!r}; expected one of "
            f"{sorted(_MODEL_BUILDERS)}"
        )
    params = cfg.get("params", {})
    if not isinstance(params, dict):
        raise ValueError("params must be a table of keyword arguments")
    try:
        model = builder(num_qubits, **params)
    except TypeError as exc:
        raise ValueError(f"invalid params for {name}: {exc}") from None
    return model, cfg.get("t1"), cfg.get("t2")
