import itertools
import json
import math

import numpy as np
import pytest
from scipy.integrate import quad

from pulsesim import (
    Gate,
    Operator,
    QubitCircuit,
    SolverOptions,
    assemble,
    basis,
    sesolve,
)
from pulsesim.circuit import (
    circuit_unitary,
    deutsch_jozsa_circuit,
    gate_unitary,
    run_gate_level,
)
from pulsesim.core import QuantumState, state_fidelity
from pulsesim.devices import (
    CavityQEDModel,
    SCQubitsModel,
    SpinChainModel,
    compile_cavityqed,
    compile_circuit,
    compile_scqubits,
    compile_spinchain,
    model_from_config,
)

TWO_PI = 2.0 * math.pi
XMAT = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
YMAT = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
ZMAT = np.diag([1.0, -1.0]).astype(complex)

FAST = SolverOptions(rtol=1e-6, atol=1e-6)


def propagator(program, options=None):
    """Solve the compiled program from the identity matrix."""
    dims = program.dims
    d = int(np.prod(dims))
    if program.total_time == 0.0:
        return np.eye(d, dtype=complex)
    ham, _ = assemble(program, with_noise=False)
    eye = Operator(np.eye(d), dims)
    res = sesolve(ham, eye, [0.0, program.total_time], options=options)
    return res.final_state.data


def comp_isometry(dims, qubit_axes):
    """Columns embed computational basis states into the device space."""
    n = len(qubit_axes)
    P = np.zeros((int(np.prod(dims)), 2**n))
    for bits in itertools.product((0, 1), repeat=n):
        multi = [0] * len(dims)
        for ax, b in zip(qubit_axes, bits):
            multi[ax] = b
        flat = np.ravel_multi_index(multi, dims)
        col = int("".join(str(b) for b in bits), 2)
        P[flat, col] = 1.0
    return P


def proj_fidelity(U_full, V_ideal, dims, qubit_axes):
    """Average-phase-insensitive overlap on the computational subspace."""
    P = comp_isometry(dims, qubit_axes)
    W = P.T @ U_full @ P
    return abs(np.trace(V_ideal.conj().T @ W)) / V_ideal.shape[0]


def gauss_effective_amplitude():
    """Mean of the unit-peak, edge-subtracted Gaussian envelope.

    Computed by direct quadrature so pulse durations are checked against
    an independent number rather than the compiler's own constant.
    """
    edge = math.exp(-2.0)

    def env(x):
        return (math.exp(-8.0 * (x - 0.5) ** 2) - edge) / (1.0 - edge)

    val, err = quad(env, 0.0, 1.0)
    assert err < 1e-9
    return val


class TestSpinChainModel:
    def test_sx_control(self):
        op, targets = SpinChainModel(3).get_control("sx0")
        assert targets == (0,)
        assert op.dims == (2,)
        assert np.allclose(op.data, TWO_PI * XMAT)

    def test_sz_control(self):
        op, targets = SpinChainModel(3).get_control("sz1")
        assert targets == (1,)
        assert np.allclose(op.data, TWO_PI * ZMAT)

    def test_exchange_control(self):
        op, targets = SpinChainModel(3).get_control("g1")
        assert targets == (1, 2)
        assert op.dims == (2, 2)
        exchange = np.kron(XMAT, XMAT) + np.kron(YMAT, YMAT)
        assert np.allclose(op.data, TWO_PI * exchange)

    def test_labels_and_resolution(self):
        m = SpinChainModel(3)
        assert m.get_control_labels() == [
            "sx0", "sz0", "sx1", "sz1", "sx2", "sz2", "g0", "g1",
        ]
        for label in m.get_control_labels():
            op, targets = m.get_control(label)
            assert isinstance(op, Operator)
            assert all(0 <= q < 3 for q in targets)

    def test_get_control_returns_same_tuple(self):
        m = SpinChainModel(2)
        assert m.get_control("sx0") is m.get_control("sx0")

    def test_unknown_label(self):
        with pytest.raises(ValueError, match="sx9"):
            SpinChainModel(2).get_control("sx9")

    def test_open_chain_has_no_wraparound(self):
        with pytest.raises(ValueError):
            SpinChainModel(3).get_control("g2")

    def test_closed_chain_wraparound(self):
        m = SpinChainModel(3, boundary="closed")
        op, targets = m.get_control("g2")
        assert targets == (2, 0)
        assert m.exchange_label(0, 2) == "g2"
        assert m.exchange_label(2, 0) == "g2"

    def test_closed_two_qubit_chain_has_single_coupling(self):
        # With two sites a wraparound bond would duplicate g0.
        m = SpinChainModel(2, boundary="closed")
        assert [l for l in m.get_control_labels() if l.startswith("g")] \
            == ["g0"]

    def test_exchange_label_open(self):
        m = SpinChainModel(4)
        assert m.exchange_label(1, 2) == "g1"
        assert m.exchange_label(2, 1) == "g1"
        with pytest.raises(ValueError):
            m.exchange_label(0, 2)

    def test_default_params(self):
        m = SpinChainModel(3)
        assert m.params["sx"] == (0.25, 0.25, 0.25)
        assert m.params["sz"] == (1.0, 1.0, 1.0)
        assert m.params["sxsy"] == (0.1, 0.1)

    def test_per_site_params(self):
        m = SpinChainModel(2, sx=[0.2, 0.3])
        assert m.params["sx"] == (0.2, 0.3)

    def test_invalid_construction(self):
        with pytest.raises(ValueError):
            SpinChainModel(0)
        with pytest.raises(ValueError):
            SpinChainModel(2, boundary="ring")
        with pytest.raises(ValueError):
            SpinChainModel(1, boundary="closed")
        with pytest.raises(ValueError):
            SpinChainModel(2, sx=[0.1, 0.2, 0.3])
        with pytest.raises(ValueError):
            SpinChainModel(2, sx=-0.25)


class TestSpinChainCompile:
    def test_rx_pi_square_pulse(self):
        qc = QubitCircuit(1)
        qc.add_gate("RX", 0, arg=math.pi)
        prog = compile_spinchain(qc, SpinChainModel(1))
        assert len(prog.pulses) == 1
        p = prog.pulses[0]
        assert p.label == "sx0"
        assert p.coeff.kind == "step"
        assert p.coeff.coeff[0] == pytest.approx(0.25)
        # 2*pi * 0.25 MHz on sigma_x for 1 us integrates to a pi rotation
        assert p.coeff.end_time - p.coeff.knots[0] == pytest.approx(1.0)
        U = propagator(prog)
        ideal = gate_unitary(Gate("RX", (0,), arg=math.pi)).data
        assert proj_fidelity(U, ideal, (2,), [0]) > 1 - 1e-6

    def test_negative_angle_flips_amplitude(self):
        qc = QubitCircuit(1)
        qc.add_gate("RX", 0, arg=-math.pi / 2)
        prog = compile_spinchain(qc, SpinChainModel(1))
        p = prog.pulses[0]
        assert p.coeff.coeff[0] == pytest.approx(-0.25)
        assert p.coeff.end_time == pytest.approx(0.5)

    def test_angle_wrapping_keeps_pulses_short(self):
        qc = QubitCircuit(1)
        qc.add_gate("RX", 0, arg=5.0 * math.pi)
        prog = compile_spinchain(qc, SpinChainModel(1))
        assert prog.total_time == pytest.approx(1.0)
        U = propagator(prog)
        ideal = gate_unitary(Gate("RX", (0,), arg=5.0 * math.pi)).data
        assert proj_fidelity(U, ideal, (2,), [0]) > 1 - 1e-6

    def test_rz_duration(self):
        qc = QubitCircuit(1)
        qc.add_gate("RZ", 0, arg=math.pi)
        prog = compile_spinchain(qc, SpinChainModel(1))
        p = prog.pulses[0]
        assert p.label == "sz0"
        assert p.coeff.end_time == pytest.approx(math.pi / (4 * math.pi))

    def test_iswap_duration_and_sign(self):
        qc = QubitCircuit(2)
        qc.add_gate("ISWAP", (0, 1))
        prog = compile_spinchain(qc, SpinChainModel(2))
        p = prog.pulses[0]
        assert p.label == "g0"
        assert p.coeff.coeff[0] == pytest.approx(-0.1)
        assert p.coeff.end_time == pytest.approx(1.0 / (8.0 * 0.1))

    @pytest.mark.parametrize(
        "gate",
        [
            Gate("RX", (0,), arg=0.7),
            Gate("RZ", (1,), arg=-1.2),
            Gate("ISWAP", (0, 1)),
        ],
        ids=["RX", "RZ", "ISWAP"],
    )
    def test_native_gate_fidelity(self, gate):
        qc = QubitCircuit(2, [gate])
        U = propagator(compile_spinchain(qc, SpinChainModel(2)))
        ideal = circuit_unitary(qc).data
        assert proj_fidelity(U, ideal, (2, 2), [0, 1]) > 1 - 1e-6

    def test_nonnative_gates_are_decomposed(self):
        qc = QubitCircuit(2)
        qc.add_gate("H", 0)
        qc.add_gate("CNOT", targets=1, controls=0)
        prog = compile_spinchain(qc, SpinChainModel(2))
        U = propagator(prog)
        ideal = circuit_unitary(qc).data
        assert proj_fidelity(U, ideal, (2, 2), [0, 1]) > 1 - 1e-6

    def test_distant_cnot_is_routed(self):
        qc = QubitCircuit(3)
        qc.add_gate("CNOT", targets=2, controls=0)
        prog = compile_spinchain(qc, SpinChainModel(3))
        U = propagator(prog)
        ideal = circuit_unitary(qc).data
        assert proj_fidelity(U, ideal, (2, 2, 2), [0, 1, 2]) > 1 - 1e-6

    def test_closed_boundary_uses_wraparound_line(self):
        m = SpinChainModel(3, boundary="closed")
        qc = QubitCircuit(3)
        qc.add_gate("ISWAP", (2, 0))
        prog = compile_spinchain(qc, m)
        assert {p.label for p in prog.pulses} == {"g2"}
        U = propagator(prog)
        ideal = circuit_unitary(qc).data
        assert proj_fidelity(U, ideal, (2, 2, 2), [0, 1, 2]) > 1 - 1e-6

    def test_deutsch_jozsa(self):
        dj = deutsch_jozsa_circuit()
        prog = compile_spinchain(dj, SpinChainModel(3))
        U = propagator(prog)
        ideal = circuit_unitary(dj).data
        assert abs(np.trace(ideal.conj().T @ U)) / 8 > 0.999

        psi0 = basis(8, 0, dims=(2, 2, 2))
        ham, _ = assemble(prog, with_noise=False)
        res = sesolve(ham, psi0, [0.0, prog.total_time])
        assert state_fidelity(res.final_state, run_gate_level(dj, psi0)) \
            > 0.999

        # Routing swaps around the distant CNOT: the first g1 activity is
        # flanked by g0 pulses on both sides.
        g0 = [p.coeff.knots[0] for p in prog.pulses if p.label == "g0"]
        g1 = [p.coeff.knots[0] for p in prog.pulses if p.label == "g1"]
        assert g0 and g1
        assert min(g0) < min(g1) < max(g0)

    def test_alap_schedule_preserves_unitary(self):
        dj = deutsch_jozsa_circuit()
        model = SpinChainModel(3)
        asap = compile_spinchain(dj, model)
        alap = compile_spinchain(dj, model, schedule_mode="ALAP")
        assert alap.total_time == pytest.approx(asap.total_time)
        f = abs(np.trace(propagator(asap).conj().T @ propagator(alap))) / 8
        assert f > 1 - 1e-6

    def test_empty_circuit(self):
        prog = compile_spinchain(QubitCircuit(2), SpinChainModel(2))
        assert prog.pulses == []
        assert prog.total_time == 0.0

    def test_zero_angle_emits_no_drive(self):
        qc = QubitCircuit(1)
        qc.add_gate("RX", 0, arg=0.0)
        prog = compile_spinchain(qc, SpinChainModel(1))
        assert all(p.coeff.max_abs == 0.0 for p in prog.pulses)
        assert prog.total_time == 0.0


class TestCavityQEDModel:
    def test_num_levels_validation(self):
        with pytest.raises(ValueError):
            CavityQEDModel(2, num_levels=2)

    def test_defaults(self):
        m = CavityQEDModel(2)
        assert m.params["num_levels"] == 10
        assert m.params["g"] == (1.0, 1.0)
        assert m.params["delta_r"] == 0.0
        assert m.subsystem_dims == (10, 2, 2)

    def test_qubit_drive_controls(self):
        m = CavityQEDModel(2)
        op, targets = m.get_control("sx1")
        assert targets == (2,)  # qubit 1 lives on subsystem 2
        assert np.allclose(op.data, TWO_PI * XMAT)
        op, targets = m.get_control("sy0")
        assert targets == (1,)
        assert np.allclose(op.data, TWO_PI * YMAT)

    def test_exchange_control(self):
        m = CavityQEDModel(2)
        op, targets = m.get_control("g0")
        assert targets == (0, 1)
        assert op.dims == (10, 2)
        a = np.diag(np.sqrt(np.arange(1, 10)), 1)
        sm = np.array([[0.0, 1.0], [0.0, 0.0]])
        oracle = np.kron(a.conj().T, sm) + np.kron(a, sm.conj().T)
        assert np.allclose(op.data, TWO_PI * oracle)


class TestCavityQEDCompile:
    def test_iswap(self):
        qc = QubitCircuit(2)
        qc.add_gate("ISWAP", (0, 1))
        prog = compile_cavityqed(qc, CavityQEDModel(2))
        U = propagator(prog, options=FAST)
        ideal = gate_unitary(Gate("ISWAP", (0, 1))).data
        assert proj_fidelity(U, ideal, (10, 2, 2), [1, 2]) > 1 - 1e-4

    def test_resonator_returns_to_vacuum_after_iswap(self):
        qc = QubitCircuit(2)
        qc.add_gate("ISWAP", (0, 1))
        prog = compile_cavityqed(qc, CavityQEDModel(2))
        ham, _ = assemble(prog, with_noise=False)
        psi0 = basis(40, 2, dims=(10, 2, 2))  # |r=0, q0=1, q1=0>
        res = sesolve(ham, psi0, [0.0, prog.total_time], options=FAST)
        vec = res.final_state.data.reshape(10, 4)
        assert 1.0 - np.linalg.norm(vec[0]) ** 2 < 1e-4

    def test_single_qubit_circuit_never_excites_resonator(self):
        qc = QubitCircuit(2)
        qc.add_gate("RX", 0, arg=1.1)
        qc.add_gate("RY", 1, arg=-0.4)
        qc.add_gate("RX", 1, arg=2.2)
        prog = compile_cavityqed(qc, CavityQEDModel(2))
        assert not any(p.label.startswith("g") for p in prog.pulses)
        ham, _ = assemble(prog, with_noise=False)
        res = sesolve(ham, basis(40, 0, dims=(10, 2, 2)),
                      [0.0, prog.total_time])
        vec = res.final_state.data.reshape(10, 4)
        assert 1.0 - np.linalg.norm(vec[0]) ** 2 < 1e-4
        U = propagator(prog)
        ideal = circuit_unitary(qc).data
        assert proj_fidelity(U, ideal, (10, 2, 2), [1, 2]) > 1 - 1e-6

    @pytest.mark.parametrize(
        "gate",
        [Gate("RX", (0,), arg=0.9), Gate("RY", (1,), arg=-2.0)],
        ids=["RX", "RY"],
    )
    def test_native_single_qubit_fidelity(self, gate):
        qc = QubitCircuit(2, [gate])
        U = propagator(compile_cavityqed(qc, CavityQEDModel(2)))
        ideal = circuit_unitary(qc).data
        assert proj_fidelity(U, ideal, (10, 2, 2), [1, 2]) > 1 - 1e-6

    def test_cnot_via_decomposition(self):
        qc = QubitCircuit(2)
        qc.add_gate("CNOT", targets=1, controls=0)
        prog = compile_cavityqed(qc, CavityQEDModel(2))
        U = propagator(prog, options=FAST)
        ideal = circuit_unitary(qc).data
        assert proj_fidelity(U, ideal, (10, 2, 2), [1, 2]) > 1 - 1e-4

    def test_empty_circuit(self):
        prog = compile_cavityqed(QubitCircuit(2), CavityQEDModel(2))
        assert prog.pulses == []
        assert prog.total_time == 0.0


class TestSCQubitsModel:
    def test_single_qubit_drives(self):
        m = SCQubitsModel(2)
        a = np.diag(np.sqrt([1.0, 2.0]), 1)
        op, targets = m.get_control("sx0")
        assert targets == (0,)
        assert np.allclose(op.data, TWO_PI * (a + a.conj().T))
        op, targets = m.get_control("sy1")
        assert targets == (1,)
        assert np.allclose(op.data, TWO_PI * 1j * (a.conj().T - a))

    def test_cross_resonance_controls(self):
        m = SCQubitsModel(2)
        z3 = np.diag([1.0, -1.0, 0.0])
        x3 = np.zeros((3, 3))
        x3[0, 1] = x3[1, 0] = 1.0
        op, targets = m.get_control("cr10")
        assert targets == (0, 1)
        assert np.allclose(op.data, TWO_PI * np.kron(z3, x3))
        op, targets = m.get_control("cr20")
        assert targets == (0, 1)
        assert np.allclose(op.data, TWO_PI * np.kron(x3, z3))

    def test_anharmonicity_drift(self):
        m = SCQubitsModel(1, alpha=-300.0)
        (op, targets), = m.drift_terms
        assert targets == (0,)
        assert np.allclose(op.data, np.diag([0.0, 0.0, TWO_PI * -300.0]))

    def test_zz_crosstalk_drift(self):
        m = SCQubitsModel(2, zz_crosstalk=0.02)
        pair_terms = [t for t in m.drift_terms if len(t[1]) == 2]
        assert len(pair_terms) == 1
        op, targets = pair_terms[0]
        assert targets == (0, 1)
        n11 = np.diag([0.0, 1.0, 0.0])
        assert np.allclose(op.data, TWO_PI * 0.02 * np.kron(n11, n11))
        assert len(SCQubitsModel(2).drift_terms) == 2  # off by default

    def test_drive_limit(self):
        assert SCQubitsModel(1).drive_limit == 20.0
        with pytest.raises(ValueError):
            SCQubitsModel(1, omega_single=25.0)
        with pytest.raises(ValueError):
            SCQubitsModel(2, omega_cr=5.0, omega_max=4.0)
        with pytest.raises(ValueError):
            SCQubitsModel(1, omega_max=0.0)

    def test_defaults(self):
        m = SCQubitsModel(2)
        assert m.params["alpha"] == (-300.0, -300.0)
        assert m.params["omega_single"] == (1.0, 1.0)
        assert m.params["omega_cr"] == (1.25,)
        assert m.params["omega_max"] == 20.0


class TestSCQubitsCompile:
    def test_rx_gaussian_pulse_shape(self):
        qc = QubitCircuit(1)
        qc.add_gate("RX", 0, arg=math.pi / 2)
        prog = compile_scqubits(qc, SCQubitsModel(1))
        assert len(prog.pulses) == 1
        p = prog.pulses[0]
        assert p.label == "sx0"
        assert p.coeff.kind == "cubic"
        assert len(p.coeff.tlist) == 65
        assert p.coeff.coeff[0] == pytest.approx(0.0, abs=1e-15)
        assert p.coeff.coeff[-1] == pytest.approx(0.0, abs=1e-15)
        assert p.coeff.max_abs == pytest.approx(1.0)
        expected = (math.pi / 2) / (
            4 * math.pi * gauss_effective_amplitude() * 1.0
        )
        assert p.coeff.end_time == pytest.approx(expected, rel=1e-9)

    def test_rx_fidelity_and_leakage(self):
        qc = QubitCircuit(1)
        qc.add_gate("RX", 0, arg=math.pi / 2)
        prog = compile_scqubits(qc, SCQubitsModel(1))
        U = propagator(prog, options=FAST)
        ideal = gate_unitary(Gate("RX", (0,), arg=math.pi / 2)).data
        assert proj_fidelity(U, ideal, (3,), [0]) > 1 - 1e-4
        leakage = 1.0 - np.linalg.norm(U[:2, 0]) ** 2
        assert leakage < 1e-2

    def test_cnot_fidelity_and_cr_duration(self):
        qc = QubitCircuit(2)
        qc.add_gate("CNOT", targets=1, controls=0)
        prog = compile_scqubits(qc, SCQubitsModel(2))
        U = propagator(prog, options=FAST)
        ideal = circuit_unitary(qc).data
        assert proj_fidelity(U, ideal, (3, 3), [0, 1]) > 1 - 1e-4
        cr = [p for p in prog.pulses if p.label == "cr10"]
        assert len(cr) == 1
        expected = (math.pi / 2) / (
            4 * math.pi * gauss_effective_amplitude() * 1.25
        )
        dur = cr[0].coeff.end_time - cr[0].coeff.knots[0]
        assert dur == pytest.approx(expected, rel=1e-9)

    def test_reversed_cnot_identity(self):
        # The compiler flips a high-to-low CNOT with RY(+-pi/2) dressing;
        # the rewrite must be exact at the gate level, global phase included.
        flipped = QubitCircuit(2)
        flipped.add_gate("RY", 0, arg=-math.pi / 2)
        flipped.add_gate("RY", 1, arg=math.pi / 2)
        flipped.add_gate("CNOT", targets=1, controls=0)
        flipped.add_gate("RY", 0, arg=math.pi / 2)
        flipped.add_gate("RY", 1, arg=-math.pi / 2)
        reversed_cnot = QubitCircuit(2)
        reversed_cnot.add_gate("CNOT", targets=0, controls=1)
        target = circuit_unitary(reversed_cnot).data
        assert np.allclose(circuit_unitary(flipped).data, target, atol=1e-12)

    def test_reversed_cnot_compiles_without_reverse_line(self):
        qc = QubitCircuit(2)
        qc.add_gate("CNOT", targets=0, controls=1)
        prog = compile_scqubits(qc, SCQubitsModel(2))
        assert not any(p.label.startswith("cr2") for p in prog.pulses)
        U = propagator(prog, options=FAST)
        ideal = circuit_unitary(qc).data
        assert proj_fidelity(U, ideal, (3, 3), [0, 1]) > 1 - 1e-4

    def test_deutsch_jozsa_state(self):
        dj = deutsch_jozsa_circuit()
        prog = compile_scqubits(dj, SCQubitsModel(3))
        assert max(p.coeff.max_abs for p in prog.pulses) <= 20.0 + 1e-9
        ham, _ = assemble(prog, with_noise=False)
        psi0 = np.zeros(27, dtype=complex)
        psi0[0] = 1.0
        res = sesolve(ham, psi0, [0.0, prog.total_time], options=FAST)
        iso = comp_isometry((3, 3, 3), [0, 1, 2])
        ideal = run_gate_level(
            dj, QuantumState(basis(8, 0, dims=(2, 2, 2)).data, (2, 2, 2))
        )
        fid = abs(np.vdot(iso @ ideal.data, res.final_state.data)) ** 2
        assert fid > 0.999

    def test_zero_angle_emits_no_drive(self):
        qc = QubitCircuit(1)
        qc.add_gate("RY", 0, arg=0.0)
        prog = compile_scqubits(qc, SCQubitsModel(1))
        assert all(p.coeff.max_abs == 0.0 for p in prog.pulses)
        assert prog.total_time == 0.0


class TestModelConfig:
    def test_mapping(self):
        model, t1, t2 = model_from_config(
            {"model": "spinchain", "num_qubits": 3,
             "params": {"sx": 0.3}, "t1": 50.0}
        )
        assert isinstance(model, SpinChainModel)
        assert model.params["sx"] == (0.3, 0.3, 0.3)
        assert t1 == 50.0
        assert t2 is None

    def test_json_file(self, tmp_path):
        path = tmp_path / "device.json"
        path.write_text(
            json.dumps({"model": "scqubits", "num_qubits": 2, "t2": 30})
        )
        model, t1, t2 = model_from_config(str(path))
        assert isinstance(model, SCQubitsModel)
        assert model.num_qubits == 2
        assert t1 is None
        assert t2 == 30

    def test_toml_file(self, tmp_path):
        path = tmp_path / "device.toml"
        path.write_text(
            'model = "cavityqed"\nnum_qubits = 2\n[params]\ng = 2.0\n'
        )
        model, _, _ = model_from_config(str(path))
        assert isinstance(model, CavityQEDModel)
        assert model.params["g"] == (2.0, 2.0)

    def test_unknown_model(self):
        with pytest.raises(ValueError, match="nope"):
            model_from_config({"model": "nope", "num_qubits": 1})

    def test_unknown_top_level_key(self):
        with pytest.raises(ValueError, match="extra"):
            model_from_config(
                {"model": "spinchain", "num_qubits": 1, "extra": 1}
            )

    def test_missing_required_key(self):
        with pytest.raises(ValueError, match="num_qubits"):
            model_from_config({"model": "spinchain"})

    def test_invalid_params(self):
        with pytest.raises(ValueError):
            model_from_config(
                {"model": "spinchain", "num_qubits": 1,
                 "params": {"bogus": 1.0}}
            )
        with pytest.raises(ValueError):
            model_from_config(
                {"model": "spinchain", "num_qubits": 1, "params": 7}
            )


class TestCompileCircuitDispatch:
    def test_dispatch_matches_specific_compilers(self):
        qc = QubitCircuit(1)
        qc.add_gate("RX", 0, arg=0.3)
        for model in [SpinChainModel(1), CavityQEDModel(1), SCQubitsModel(1)]:
            prog = compile_circuit(qc, model)
            assert len(prog.pulses) == 1
            assert prog.pulses[0].label == "sx0"
            labels = set(model.get_control_labels())
            assert {p.label for p in prog.pulses} <= labels

    def test_unsupported_model_type(self):
        qc = QubitCircuit(1)
        qc.add_gate("RX", 0, arg=0.3)
        with pytest.raises(TypeError):
            compile_circuit(qc, object())

    def test_wrong_model_class(self):
        qc = QubitCircuit(1)
        qc.add_gate("RX", 0, arg=0.3)
        with pytest.raises(TypeError):
            compile_spinchain(qc, SCQubitsModel(1))

    def test_qubit_count_mismatch(self):
        qc = QubitCircuit(2)
        qc.add_gate("RX", 0, arg=0.3)
        with pytest.raises(ValueError):
            compile_spinchain(qc, SpinChainModel(3))
