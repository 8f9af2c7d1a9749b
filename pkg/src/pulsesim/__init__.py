"""pulsesim: pulse-level simulation of noisy quantum circuits.

The package turns gate circuits into control-pulse programs for parameterized
hardware models (spin chains, cavity QED, superconducting transmons), injects
coherent and dissipative noise, and integrates the dynamics with unitary,
Lindblad, or Monte-Carlo trajectory solvers.
"""

from .core import (
    Operator,
    QuantumState,
    basis,
    ket,
    density,
    qeye,
    sigmax,
    sigmay,
    sigmaz,
    sigmap,
    sigmam,
    destroy,
    create,
    num,
    tensor,
    expand_operator,
    expect,
    state_fidelity,
    ptrace,
)
from .circuit import (
    Gate,
    QubitCircuit,
    register_gate,
    gate_unitary,
    circuit_unitary,
    run_gate_level,
    decompose_to_native,
    insert_chain_swaps,
    deutsch_jozsa_circuit,
    qft_circuit,
)
from .scheduler import (
    Instruction,
    commute,
    schedule_gates,
    schedule_instructions,
)
from .qasm import QasmError, parse_qasm, export_qasm
from .pulse import (
    ControlCoefficient,
    Pulse,
    HamiltonianProgram,
    assemble,
    export_pulse_schedule,
)
from .noise import (
    DecoherenceSpec,
    NoiseModel,
    DecoherenceNoise,
    ClassicalCrossTalk,
    classical_crosstalk,
    relaxation_ops,
    dephasing_ops,
    apply_noise_models,
)
from .devices import (
    HardwareModel,
    SpinChainModel,
    CavityQEDModel,
    SCQubitsModel,
    compile_spinchain,
    compile_cavityqed,
    compile_scqubits,
    compile_circuit,
    model_from_config,
)
from .solvers import (
    SolverError,
    SolverOptions,
    SolverResult,
    sesolve,
    mesolve,
    mcsolve,
)
from .processor import (
    Processor,
    LinearSpinChain,
    DispersiveCavityQED,
    SCQubits,
)

__version__ = "0.1.0"
