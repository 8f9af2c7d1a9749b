"""High-level facade tying a hardware model to compilation, noise, and solvers.

A :class:`Processor` owns one :class:`~pulsesim.devices.HardwareModel`,
compiles circuits onto it, keeps processor-level decoherence times and any
number of attached :class:`~pulsesim.noise.NoiseModel` hooks, and runs the
loaded pulse program through the solver of choice.  Device-specific
subclasses (:class:`LinearSpinChain`, :class:`DispersiveCavityQED`,
:class:`SCQubits`) bundle model construction with the processor for
one-line setup.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence, Union

import numpy as np

from .circuit import QubitCircuit
from .core import Operator, QuantumState
from .devices import (
    CavityQEDModel,
    HardwareModel,
    SCQubitsModel,
    SpinChainModel,
    compile_circuit,
    model_from_config,
)
from .noise import DecoherenceSpec, NoiseModel, apply_noise_models
from .pulse import (
    AssembledHamiltonian,
    CollapseTerm,
    ControlCoefficient,
    HamiltonianProgram,
    Pulse,
    assemble,
    export_pulse_schedule,
)
from .solvers import SolverOptions, SolverResult, mcsolve, mesolve, sesolve

__all__ = [
    "Processor",
    "LinearSpinChain",
    "DispersiveCavityQED",
    "SCQubits",
]


class Processor:
    """Compile circuits onto a hardware model and simulate the pulses.

    ``t1``/``t2`` are processor-level coherence times (scalar broadcast or
    per-subsystem sequences, in the unit system where times are expressed
    in microseconds); ``interp`` selects how coefficient arrays handed to
    :meth:`add_pulse` are interpolated (``"step"`` or ``"cubic"``).
    Compiled programs keep the interpolation each compiler chose.
    """

    def __init__(
        self,
        model: HardwareModel,
        t1=None,
        t2=None,
        interp: str = "step",
    ):
        if not isinstance(model, HardwareModel):
            raise TypeError(
                f"model must be a HardwareModel, got {type(model).__name__}"
            )
        if interp not in ("step", "cubic"):
            raise ValueError(
                f"interp must be 'step' or 'cubic', got {interp!r}"
            )
        self.model = model
        self.interp = interp
        self.t1 = t1
        self.t2 = t2
        if t1 is None and t2 is None:
            self.decoherence: Optional[DecoherenceSpec] = None
        else:
            self.decoherence = DecoherenceSpec(t1=t1, t2=t2)
            # Surface invalid coherence times at construction, not first run.
            self.decoherence.collapse_terms(model.subsystem_dims)
        self.noise_models: list[NoiseModel] = []
        self._program: Optional[HamiltonianProgram] = None

    # ------------------------------------------------------------- model

    @property
    def num_qubits(self) -> int:
        return self.model.num_qubits

    @property
    def program(self) -> Optional[HamiltonianProgram]:
        """The currently loaded pulse program, if any."""
        return self._program

    def get_control(self, label: str):
        return self.model.get_control(label)

    def get_control_labels(self) -> list[str]:
        return self.model.get_control_labels()

    # ------------------------------------------------------------- noise

    def add_noise(self, noise: NoiseModel) -> None:
        """Attach a noise hook applied on every run, in insertion order."""
        if not isinstance(noise, NoiseModel):
            raise TypeError(
                f"expected a NoiseModel, got {type(noise).__name__}"
            )
        self.noise_models.append(noise)

    def remove_noise(self, noise: NoiseModel) -> None:
        """Detach a previously added noise hook (by identity)."""
        for i, existing in enumerate(self.noise_models):
            if existing is noise:
                del self.noise_models[i]
                return
        raise ValueError("noise model was never added")

    # ------------------------------------------------------------ loading

    def load_circuit(
        self, circ: QubitCircuit, schedule_mode: str = "ASAP"
    ) -> HamiltonianProgram:
        """Route, decompose, compile, and schedule ``circ``; cache the result.

        A circuit on fewer qubits than the model is embedded on the first
        wires; the remaining qubits idle.
        """
        if circ.num_qubits > self.model.num_qubits:
            raise ValueError(
                f"circuit needs {circ.num_qubits} qubits but the model has "
                f"{self.model.num_qubits}"
            )
        if circ.num_qubits < self.model.num_qubits:
            padded = QubitCircuit(self.model.num_qubits)
            for gate in circ.gates:
                padded.append(gate)
            circ = padded
        self._program = compile_circuit(circ, self.model, schedule_mode)
        return self._program

    def add_pulse(
        self, op: Operator, targets, tlist, coeff, label: str = ""
    ) -> None:
        """Append a custom pulse (coefficients interpolated per ``interp``).

        Starts from an empty program when no circuit is loaded; a later
        :meth:`load_circuit` replaces the whole program, custom pulses
        included.
        """
        if self._program is None:
            self._program = HamiltonianProgram(self.model.subsystem_dims)
        if not isinstance(coeff, ControlCoefficient):
            coeff = ControlCoefficient(tlist, coeff, kind=self.interp)
        self._program.add_pulse(Pulse(op, targets, coeff, label=label))

    def _require_program(self) -> HamiltonianProgram:
        if self._program is None:
            raise RuntimeError(
                "no circuit loaded; call load_circuit (or add_pulse) first"
            )
        return self._program

    # ------------------------------------------------------------ running

    def solver_inputs(
        self, with_noise: bool = True
    ) -> tuple[AssembledHamiltonian, list[CollapseTerm]]:
        """The assembled Hamiltonian and collapse terms a run would use.

        Noise hooks act on fresh pulse copies, so calling this (or running)
        repeatedly never mutates the loaded program.  Collapse terms are
        ordered: processor-level decoherence, pulse-attached terms, then
        hook-provided extras.
        """
        program = self._require_program()
        if not with_noise:
            ham, _ = assemble(program, with_noise=False)
            return ham, []
        pulses, extra_c, extra_drift = apply_noise_models(
            program.pulses, program.drift, self.noise_models, program.dims
        )
        work = HamiltonianProgram(program.dims)
        for op, targets, coeff in program.drift:
            work.add_drift(op, targets, coeff)
        for op, targets, coeff in extra_drift:
            work.add_drift(op, targets, coeff)
        for pulse in pulses:
            work.add_pulse(pulse)
        ham, pulse_c = assemble(work, with_noise=True)
        c_ops: list[CollapseTerm] = []
        if self.decoherence is not None:
            c_ops.extend(self.decoherence.collapse_terms(program.dims))
        c_ops.extend(pulse_c)
        c_ops.extend(extra_c)
        return ham, c_ops

    def run_state(
        self,
        init,
        solver: str = "auto",
        tlist=None,
        e_ops=None,
        options: Optional[SolverOptions] = None,
    ) -> SolverResult:
        """Simulate the loaded program from ``init``.

        ``solver="auto"`` picks :func:`sesolve` for a ket with no noise and
        :func:`mesolve` otherwise; trajectories must be requested explicitly
        with ``solver="mcsolve"``.
        """
        program = self._require_program()
        state = self._as_state(init, program.dims)
        ham, c_ops = self.solver_inputs()
        if tlist is None:
            total = program.total_time
            tlist = [0.0, total] if total > 0.0 else [0.0]
        if solver == "auto":
            solver = "sesolve" if not c_ops and state.kind == "ket" else "mesolve"
        if solver == "sesolve":
            if c_ops:
                raise ValueError(
                    "sesolve cannot represent the attached noise; use "
                    "mesolve or mcsolve"
                )
            if state.kind != "ket":
                raise ValueError("sesolve needs a ket initial state")
            return sesolve(ham, state, tlist, e_ops=e_ops, options=options)
        if solver == "mesolve":
            return mesolve(ham, state, c_ops, tlist, e_ops=e_ops,
                           options=options)
        if solver == "mcsolve":
            if state.kind != "ket":
                raise ValueError("mcsolve needs a ket initial state")
            return mcsolve(ham, state, c_ops, tlist, e_ops=e_ops,
                           options=options)
        raise ValueError(
            f"solver must be auto, sesolve, mesolve or mcsolve, got {solver!r}"
        )

    @staticmethod
    def _as_state(init, dims) -> QuantumState:
        if isinstance(init, QuantumState):
            state = init
        else:
            arr = np.asarray(init, dtype=complex)
            if arr.ndim == 2 and arr.shape[0] == arr.shape[1] > 1:
                state = QuantumState(arr, dims, kind="density")
            else:
                state = QuantumState(arr, dims, kind="ket")
        if tuple(state.dims) != tuple(dims):
            raise ValueError(
                f"initial state dims {tuple(state.dims)} do not match the "
                f"device dims {tuple(dims)}"
            )
        return state

    # ------------------------------------------------------------- export

    def export_pulses(self) -> str:
        """The loaded schedule as JSON text with deterministic key order."""
        schedule = export_pulse_schedule(self._require_program())
        return json.dumps(schedule, indent=2)

    # ------------------------------------------------------------- config

    @classmethod
    def from_config(cls, source, interp: str = "step") -> "Processor":
        """Build a processor from a config mapping or JSON/TOML file path."""
        model, t1, t2 = model_from_config(source)
        return cls(model, t1=t1, t2=t2, interp=interp)

    def __repr__(self):
        loaded = "no program" if self._program is None else (
            f"{len(self._program.pulses)} pulses"
        )
        return (f"{type(self).__name__}({self.model!r}, t1={self.t1}, "
                f"t2={self.t2}, {loaded})")


class LinearSpinChain(Processor):
    """Processor over an exchange-coupled spin chain."""

    def __init__(
        self,
        num_qubits: int,
        t1=None,
        t2=None,
        boundary: str = "open",
        sx: Union[float, Sequence[float]] = 0.25,
        sz: Union[float, Sequence[float]] = 1.0,
        sxsy: Union[float, Sequence[float]] = 0.1,
        interp: str = "step",
    ):
        super().__init__(
            SpinChainModel(num_qubits, boundary=boundary, sx=sx, sz=sz,
                           sxsy=sxsy),
            t1=t1,
            t2=t2,
            interp=interp,
        )


class DispersiveCavityQED(Processor):
    """Processor over qubits dispersively coupled to a shared resonator."""

    def __init__(
        self,
        num_qubits: int,
        t1=None,
        t2=None,
        num_levels: int = 10,
        g: Union[float, Sequence[float]] = 1.0,
        sx: Union[float, Sequence[float]] = 0.25,
        sy: Union[float, Sequence[float]] = 0.25,
        delta_r: float = 0.0,
        delta_q=0.0,
        interp: str = "step",
    ):
        super().__init__(
            CavityQEDModel(num_qubits, num_levels=num_levels, g=g, sx=sx,
                           sy=sy, delta_r=delta_r, delta_q=delta_q),
            t1=t1,
            t2=t2,
            interp=interp,
        )


class SCQubits(Processor):
    """Processor over fixed-frequency transmons with cross-resonance lines."""

    def __init__(
        self,
        num_qubits: int,
        t1=None,
        t2=None,
        alpha: Union[float, Sequence[float]] = -300.0,
        omega_single: Union[float, Sequence[float]] = 1.0,
        omega_cr: Union[float, Sequence[float]] = 1.25,
        omega_max: float = 20.0,
        zz_crosstalk: float = 0.0,
        interp: str = "cubic",
    ):
        super().__init__(
            SCQubitsModel(num_qubits, alpha=alpha, omega_single=omega_single,
                          omega_cr=omega_cr, omega_max=omega_max,
                          zz_crosstalk=zz_crosstalk),
            t1=t1,
            t2=t2,
            interp=interp,
        )
