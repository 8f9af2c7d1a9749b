"""Noise generators: decoherence collapse operators and coherent noise hooks.

Two layers:

- plain functions (:func:`relaxation_ops`, :func:`dephasing_ops`) build
  full-space collapse operators from per-subsystem coherence times, and
- :class:`NoiseModel` hooks transform a compiled pulse list by *appending*
  noise elements (coherent cross-talk terms, extra collapse operators, extra
  drift) without ever touching the ideal coefficients.

Coherence-time conventions: relaxation uses destroy(d)/√T1 per subsystem;
pure dephasing uses n̂·√(2/T2*) with 1/T2* = 1/T2 − 1/(2·T1), so the combined
off-diagonal decay of a qubit is exactly e^(−t/T2).  An absent (None) time
means no decay on that subsystem; infinities are normalized to absent.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import Operator, destroy, expand_operator, num
from .pulse import CollapseTerm, ControlCoefficient, Pulse

__all__ = [
    "DecoherenceSpec",
    "NoiseModel",
    "DecoherenceNoise",
    "ClassicalCrossTalk",
    "classical_crosstalk",
    "relaxation_ops",
    "dephasing_ops",
    "apply_noise_models",
]


def _normalize_times(value, n: int, name: str) -> list[Optional[float]]:
    """Broadcast a scalar / validate a per-subsystem list of coherence times.

    Returns one entry per subsystem: a positive float, or None for "no decay"
    (absent or infinite input).
    """

    def one(v):
        if v is None:
            return None
        v = float(v)
        if math.isnan(v):
            raise ValueError(f"{name} must not be NaN")
        if math.isinf(v):
            return None
        if v <= 0:
            raise ValueError(f"{name} must be positive, got {v}")
        return v

    if value is None:
        return [None] * n
    if np.isscalar(value):
        return [one(value)] * n
    values = list(value)
    if len(values) != n:
        raise ValueError(
            f"{name} has {len(values)} entries for {n} subsystems"
        )
    return [one(v) for v in values]


def relaxation_ops(t1, dims) -> list[Operator]:
    """Full-space relaxation collapse operators destroy(d_j)/√T1_j.

    ``t1`` is a scalar broadcast to every subsystem, a per-subsystem list,
    or None; absent/infinite entries contribute nothing.
    """
    dims = list(dims)
    t1 = _normalize_times(t1, len(dims), "t1")
    ops = []
    for j, (d, t) in enumerate(zip(dims, t1)):
        if t is None:
            continue
        local = Operator(destroy(d).data / math.sqrt(t), (d,))
        ops.append(expand_operator(local, dims, [j]))
    return ops


def dephasing_ops(t1, t2, dims) -> list[Operator]:
    """Full-space pure-dephasing operators n̂_j·√(2/T2*_j).

    The pure-dephasing time follows 1/T2* = 1/T2 − 1/(2·T1) (relaxation
    already destroys coherence at rate 1/(2·T1)); with T1 absent, T2* = T2.
    Raises if any subsystem has T2 > 2·T1 (negative pure-dephasing rate).
    Subsystems whose rate vanishes (T2 = 2·T1 exactly) contribute nothing.
    """
    dims = list(dims)
    t1 = _normalize_times(t1, len(dims), "t1")
    t2 = _normalize_times(t2, len(dims), "t2")
    ops = []
    for j, (d, a, b) in enumerate(zip(dims, t1, t2)):
        if b is None:
            continue
        rate = 1.0 / b - (0.0 if a is None else 1.0 / (2.0 * a))
        if rate < 0:
            raise ValueError(
                f"subsystem {j}: t2={b} exceeds 2*t1={2 * a}; the "
                "pure-dephasing rate would be negative"
            )
        if rate == 0.0:
            continue
        local = Operator(num(d).data * math.sqrt(2.0 * rate), (d,))
        ops.append(expand_operator(local, dims, [j]))
    return ops


@dataclass(frozen=True)
class DecoherenceSpec:
    """Per-subsystem coherence times plus custom collapse entries.

    ``t1``/``t2`` are scalars (broadcast) or per-subsystem lists; None or an
    infinite value means no decay.  ``custom`` holds (Operator, targets,
    coefficient) collapse entries, where the coefficient is a
    ControlCoefficient, a constant, or None.
    """

    t1: object = None
    t2: object = None
    custom: tuple = field(default_factory=tuple)

    def collapse_terms(self, dims) -> list[CollapseTerm]:
        dims = list(dims)
        terms = [
            CollapseTerm(op.data)
            for op in relaxation_ops(self.t1, dims) + dephasing_ops(self.t1, self.t2, dims)
        ]
        for op, targets, coeff in self.custom:
            full = expand_operator(op, dims, list(targets))
            terms.append(CollapseTerm(full.data, coeff))
        return terms


class NoiseModel(abc.ABC):
    """A pure transform that adds noise on top of compiled ideal pulses.

    ``apply`` receives pulse *copies* (it may attach control/Lindblad noise to
    them in place) plus the drift list and subsystem dims, and returns extra
    full-space collapse terms and extra drift entries.  It must never modify
    the ideal coefficients already present.
    """

    kind = "custom"

    @abc.abstractmethod
    def apply(
        self, pulses: list[Pulse], drift: Sequence[tuple], dims: Sequence[int]
    ) -> tuple[list[CollapseTerm], list[tuple]]:
        """Return (extra collapse terms, extra drift entries)."""


class DecoherenceNoise(NoiseModel):
    """Relaxation/dephasing/custom collapse operators from a DecoherenceSpec."""

    kind = "decoherence"

    def __init__(self, t1=None, t2=None, custom=()):
        self.spec = DecoherenceSpec(t1=t1, t2=t2, custom=tuple(custom))

    def apply(self, pulses, drift, dims):
        return self.spec.collapse_terms(dims), []


class ClassicalCrossTalk(NoiseModel):
    """Drive leakage onto chain neighbors.

    Every single-qubit drive pulse on subsystem j gains a coherent copy of
    itself on subsystems j±1 (same operator, coefficient scaled by ``ratio``),
    skipping indices out of range or of a different subsystem dimension.
    """

    kind = "control"

    def __init__(self, ratio: float):
        ratio = float(ratio)
        if ratio < 0:
            raise ValueError("cross-talk ratio must be non-negative")
        self.ratio = ratio

    def apply(self, pulses, drift, dims):
        if self.ratio == 0.0:
            return [], []
        for pulse in pulses:
            if len(pulse.targets) != 1:
                continue
            j = pulse.targets[0]
            d = pulse.op.dims[0]
            scaled = ControlCoefficient(
                pulse.coeff.tlist,
                pulse.coeff.coeff * self.ratio,
                kind=pulse.coeff.kind,
            )
            for neighbor in (j - 1, j + 1):
                if 0 <= neighbor < len(dims) and dims[neighbor] == d:
                    pulse.add_control_noise(pulse.op, [neighbor], scaled)
        return [], []


def classical_crosstalk(ratio: float) -> NoiseModel:
    """NoiseModel that copies each drive onto its neighbors scaled by ratio."""
    return ClassicalCrossTalk(ratio)


def _copy_pulse(pulse: Pulse) -> Pulse:
    copy = Pulse(pulse.op, pulse.targets, pulse.coeff, pulse.label)
    copy.control_noise = list(pulse.control_noise)
    copy.lindblad_noise = list(pulse.lindblad_noise)
    return copy


def apply_noise_models(
    pulses: Sequence[Pulse],
    drift: Sequence[tuple],
    models: Sequence[NoiseModel],
    dims: Sequence[int],
) -> tuple[list[Pulse], list[CollapseTerm], list[tuple]]:
    """Run noise hooks over fresh pulse copies, in insertion order.

    Returns (noisy pulses, extra collapse terms, extra drift entries).  The
    input pulses are never mutated, so repeated calls from the same ideal
    program are independent.
    """
    noisy = [_copy_pulse(p) for p in pulses]
    extra_c: list[CollapseTerm] = []
    extra_drift: list[tuple] = []
    for model in models:
        if not isinstance(model, NoiseModel):
            raise TypeError(f"expected a NoiseModel, got {type(model).__name__}")
        c_ops, drift_terms = model.apply(noisy, drift, dims)
        extra_c.extend(c_ops)
        extra_drift.extend(drift_terms)
    return noisy, extra_c, extra_drift
