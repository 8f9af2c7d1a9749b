import math

import numpy as np
import pytest

from pulsesim.circuit import Gate, QubitCircuit, circuit_unitary
from pulsesim.qasm import QasmError, export_qasm, parse_qasm

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def qasm(body: str) -> QubitCircuit:
    return parse_qasm(HEADER + body)


def u3_matrix(theta, phi, lam):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]]
    )


def gates_equal(a, b, tol=1e-12):
    if len(a) != len(b):
        return False
    for x, y in zip(a, b):
        if (x.name, x.targets, x.controls) != (y.name, y.targets, y.controls):
            return False
        if (x.arg is None) != (y.arg is None):
            return False
        if x.arg is not None and abs(x.arg - y.arg) > tol:
            return False
    return True


# ------------------------------------------------------------------- parsing
class TestParseBasics:
    def test_single_x(self):
        circ = qasm("qreg q[1];\nx q[0];\n")
        assert circ.num_qubits == 1
        assert circ.gates == [Gate("X", (0,))]

    def test_deutsch_jozsa_file(self):
        text = HEADER + (
            "qreg q[3];\ncreg c[3];\n"
            "x q[2];\nh q;\ncx q[0],q[2];\ncx q[1],q[2];\nh q[0];\nh q[1];\n"
        )
        circ = parse_qasm(text)
        expected = [
            Gate("X", (2,)),
            Gate("H", (0,)),
            Gate("H", (1,)),
            Gate("H", (2,)),
            Gate("CNOT", (2,), (0,)),
            Gate("CNOT", (2,), (1,)),
            Gate("H", (0,)),
            Gate("H", (1,)),
        ]
        assert circ.gates == expected

    def test_rz_pi_over_two(self):
        circ = qasm("qreg q[1];\nrz(pi/2) q[0];\n")
        assert circ.gates[0].name == "RZ"
        assert circ.gates[0].arg == pytest.approx(math.pi / 2, abs=1e-15)

    def test_expression_evaluation(self):
        circ = qasm("qreg q[1];\nrx(-pi/4 + 2*3/8 - (1 - 1/2)) q[0];\n")
        assert circ.gates[0].arg == pytest.approx(-math.pi / 4 + 0.75 - 0.5, abs=1e-15)

    def test_double_unary_minus(self):
        circ = qasm("qreg q[1];\nrx(--1.5) q[0];\n")
        assert circ.gates[0].arg == pytest.approx(1.5)

    def test_scientific_notation(self):
        circ = qasm("qreg q[1];\nrx(2.5e-3) q[0];\n")
        assert circ.gates[0].arg == pytest.approx(2.5e-3)

    def test_comments_and_whitespace(self):
        circ = qasm("// a comment\nqreg q[2]; x q[0] ; // trailing\n\t y q[1];")
        assert [g.name for g in circ.gates] == ["X", "Y"]

    def test_multi_register_offsets(self):
        circ = qasm("qreg a[2];\nqreg b[2];\nx a[1];\ny b[0];\n")
        assert circ.num_qubits == 4
        assert circ.gates == [Gate("X", (1,)), Gate("Y", (2,))]

    def test_id_is_a_no_op(self):
        circ = qasm("qreg q[1];\nid q[0];\n")
        assert circ.gates == []


class TestBroadcast:
    def test_single_qubit_gate_on_register(self):
        circ = qasm("qreg q[3];\nh q;\n")
        assert circ.gates == [Gate("H", (q,)) for q in range(3)]

    def test_register_pair(self):
        circ = qasm("qreg q[2];\nqreg r[2];\ncx q,r;\n")
        assert circ.gates == [Gate("CNOT", (2,), (0,)), Gate("CNOT", (3,), (1,))]

    def test_mixed_scalar_register(self):
        circ = qasm("qreg q[3];\nqreg a[1];\ncx a[0],q;\n")
        assert circ.gates == [Gate("CNOT", (q,), (3,)) for q in range(3)]

    def test_size_mismatch_rejected(self):
        with pytest.raises(QasmError, match="size mismatch"):
            qasm("qreg q[2];\nqreg r[3];\ncx q,r;\n")

    def test_duplicate_qubit_rejected(self):
        with pytest.raises(QasmError):
            qasm("qreg q[2];\ncx q[0],q[0];\n")

    def test_register_with_itself_rejected(self):
        with pytest.raises(QasmError):
            qasm("qreg q[2];\ncx q,q;\n")


# --------------------------------------------------- lowered gate semantics
def single_qubit_unitary(body: str) -> np.ndarray:
    return circuit_unitary(qasm("qreg q[1];\n" + body)).data


class TestLowerings:
    def test_s_gate(self):
        assert np.allclose(single_qubit_unitary("s q[0];"), np.diag([1, 1j]), atol=1e-15)

    def test_sdg_gate(self):
        assert np.allclose(single_qubit_unitary("sdg q[0];"), np.diag([1, -1j]), atol=1e-15)

    def test_t_gate(self):
        expected = np.diag([1, np.exp(1j * math.pi / 4)])
        assert np.allclose(single_qubit_unitary("t q[0];"), expected, atol=1e-15)

    def test_tdg_gate(self):
        expected = np.diag([1, np.exp(-1j * math.pi / 4)])
        assert np.allclose(single_qubit_unitary("tdg q[0];"), expected, atol=1e-15)

    def test_u1(self):
        expected = np.diag([1, np.exp(0.37j)])
        assert np.allclose(single_qubit_unitary("u1(0.37) q[0];"), expected, atol=1e-14)

    @pytest.mark.parametrize("theta,phi,lam", [
        (0.3, 0.7, 1.1),
        (math.pi / 2, -0.4, 2.2),
        (2.8, 0.0, -1.9),
    ])
    def test_u3(self, theta, phi, lam):
        got = single_qubit_unitary(f"u3({theta},{phi},{lam}) q[0];")
        assert np.allclose(got, u3_matrix(theta, phi, lam), atol=1e-12)

    def test_u2(self):
        got = single_qubit_unitary("u2(0.5,1.3) q[0];")
        assert np.allclose(got, u3_matrix(math.pi / 2, 0.5, 1.3), atol=1e-12)

    def test_ccx_is_exactly_toffoli(self):
        circ = qasm("qreg q[3];\nccx q[0],q[1],q[2];\n")
        toffoli = np.eye(8, dtype=complex)
        # big-endian: |110> = index 6, |111> = index 7
        toffoli[6, 6] = toffoli[7, 7] = 0
        toffoli[6, 7] = toffoli[7, 6] = 1
        assert np.allclose(circuit_unitary(circ).data, toffoli, atol=1e-12)

    def test_cz_first_class(self):
        circ = qasm("qreg q[2];\ncz q[0],q[1];\n")
        assert circ.gates == [Gate("CZ", (0, 1))]


# -------------------------------------------------------------------- errors
class TestErrors:
    def test_missing_header(self):
        with pytest.raises(QasmError, match="OPENQASM"):
            parse_qasm('include "qelib1.inc";\nqreg q[1];\n')

    def test_wrong_version(self):
        with pytest.raises(QasmError, match="version"):
            parse_qasm("OPENQASM 3.0;\nqreg q[1];\n")

    def test_unknown_gate(self):
        with pytest.raises(QasmError, match="unknown gate"):
            qasm("qreg q[1];\nfoo q[0];\n")

    def test_gate_without_include(self):
        with pytest.raises(QasmError, match="qelib1"):
            parse_qasm("OPENQASM 2.0;\nqreg q[1];\nh q[0];\n")

    def test_undeclared_register(self):
        with pytest.raises(QasmError, match="undeclared"):
            qasm("qreg q[1];\nx r[0];\n")

    def test_index_out_of_range(self):
        with pytest.raises(QasmError, match="out of range"):
            qasm("qreg q[2];\nx q[2];\n")

    def test_classical_register_as_qubit(self):
        with pytest.raises(QasmError, match="classical register"):
            qasm("qreg q[1];\ncreg c[1];\nx c[0];\n")

    def test_wrong_param_count(self):
        with pytest.raises(QasmError, match="parameter"):
            qasm("qreg q[1];\nrx q[0];\n")

    def test_wrong_qubit_count(self):
        with pytest.raises(QasmError, match="qubit"):
            qasm("qreg q[2];\ncx q[0];\n")

    def test_if_rejected(self):
        with pytest.raises(QasmError, match="conditionals"):
            qasm("qreg q[1];\ncreg c[1];\nif (c==1) x q[0];\n")

    def test_opaque_rejected(self):
        with pytest.raises(QasmError, match="opaque"):
            qasm("opaque magic q;\nqreg q[1];\n")

    def test_reset_rejected(self):
        with pytest.raises(QasmError, match="reset"):
            qasm("qreg q[1];\nreset q[0];\n")

    def test_other_include_rejected(self):
        with pytest.raises(QasmError, match="qelib1"):
            parse_qasm('OPENQASM 2.0;\ninclude "mylib.inc";\n')

    def test_division_by_zero(self):
        with pytest.raises(QasmError, match="division by zero"):
            qasm("qreg q[1];\nrx(1/0) q[0];\n")

    def test_nonfinite_argument(self):
        with pytest.raises(QasmError, match="finite"):
            qasm("qreg q[1];\nrx(1e308*1e308) q[0];\n")

    def test_no_qreg(self):
        with pytest.raises(QasmError, match="no quantum register"):
            parse_qasm(HEADER)

    def test_redefining_builtin(self):
        with pytest.raises(QasmError, match="already defined"):
            qasm("gate h a { x a; }\nqreg q[1];\n")

    def test_duplicate_register(self):
        with pytest.raises(QasmError, match="already declared"):
            qasm("qreg q[1];\nqreg q[2];\n")

    def test_register_size_zero(self):
        with pytest.raises(QasmError, match="positive"):
            qasm("qreg q[0];\n")

    def test_oversized_register(self):
        with pytest.raises(QasmError, match="limit"):
            qasm("qreg q[100000];\n")

    def test_error_carries_position(self):
        with pytest.raises(QasmError) as info:
            qasm("qreg q[1];\nfoo q[0];\n")
        assert info.value.line == 4  # two header lines and the qreg precede it
        assert info.value.col == 1
        assert "line 4" in str(info.value)

    def test_undefined_gate_in_body(self):
        with pytest.raises(QasmError, match="not defined"):
            qasm("gate f a { g a; }\nqreg q[1];\n")

    def test_self_recursive_gate(self):
        with pytest.raises(QasmError, match="not defined"):
            qasm("gate f a { f a; }\nqreg q[1];\n")


class TestDroppedStatements:
    def test_measure_warns_and_drops(self):
        with pytest.warns(UserWarning, match="measure"):
            circ = qasm("qreg q[1];\ncreg c[1];\nx q[0];\nmeasure q[0] -> c[0];\n")
        assert circ.gates == [Gate("X", (0,))]

    def test_measure_register_form(self):
        with pytest.warns(UserWarning, match="measure"):
            circ = qasm("qreg q[2];\ncreg c[2];\nmeasure q -> c;\n")
        assert circ.gates == []

    def test_barrier_warns_and_drops(self):
        with pytest.warns(UserWarning, match="barrier"):
            circ = qasm("qreg q[2];\nx q[0];\nbarrier q;\ny q[1];\n")
        assert [g.name for g in circ.gates] == ["X", "Y"]


class TestCustomGates:
    def test_parameterized_definition(self):
        circ = qasm(
            "gate foo(th) a,b { rx(th/2) a; cx a,b; }\n"
            "qreg q[2];\nfoo(pi) q[0],q[1];\n"
        )
        assert gates_equal(
            circ.gates,
            [Gate("RX", (0,), arg=math.pi / 2), Gate("CNOT", (1,), (0,))],
        )

    def test_nested_definitions(self):
        circ = qasm(
            "gate bar a { h a; }\n"
            "gate baz a,b { bar a; cx a,b; bar b; }\n"
            "qreg q[2];\nbaz q[1],q[0];\n"
        )
        assert circ.gates == [
            Gate("H", (1,)),
            Gate("CNOT", (0,), (1,)),
            Gate("H", (0,)),
        ]

    def test_builtin_lowering_inside_definition(self):
        circ = qasm("gate foo a { t a; }\nqreg q[1];\nfoo q[0];\n")
        expected = np.diag([1, np.exp(1j * math.pi / 4)])
        assert np.allclose(circuit_unitary(circ).data, expected, atol=1e-14)

    def test_custom_gate_broadcasts(self):
        circ = qasm("gate foo a { x a; }\nqreg q[3];\nfoo q;\n")
        assert circ.gates == [Gate("X", (q,)) for q in range(3)]


# -------------------------------------------------------------------- export
class TestExport:
    def test_empty_circuit(self):
        text = export_qasm(QubitCircuit(2))
        assert text == 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\n'

    def test_lf_endings_only(self):
        circ = QubitCircuit(2, [Gate("CNOT", (1,), (0,)), Gate("RX", (0,), arg=0.25)])
        text = export_qasm(circ)
        assert "\r" not in text
        assert text.endswith("\n")

    def test_statement_format(self):
        circ = QubitCircuit(2, [Gate("CNOT", (1,), (0,)), Gate("H", (1,))])
        lines = export_qasm(circ).splitlines()
        assert lines[3] == "cx q[0],q[1];"
        assert lines[4] == "h q[1];"

    def test_globalphase_becomes_comment(self):
        circ = QubitCircuit(1, [Gate("X", (0,)), Gate("GLOBALPHASE", arg=0.5)])
        text = export_qasm(circ)
        assert "// global phase: 0.5" in text
        reparsed = parse_qasm(text)
        assert reparsed.gates == [Gate("X", (0,))]

    def test_iswap_not_exportable(self):
        circ = QubitCircuit(2, [Gate("ISWAP", (0, 1))])
        with pytest.raises(ValueError, match="no OpenQASM"):
            export_qasm(circ)


EXPORTABLE_1Q = ["X", "Y", "Z", "H", "RX", "RY", "RZ"]
EXPORTABLE_2Q = ["CNOT", "CZ", "SWAP"]


def random_exportable_circuit(rng, num_qubits=4, num_gates=20):
    circ = QubitCircuit(num_qubits)
    for _ in range(num_gates):
        if rng.random() < 0.35:
            name = EXPORTABLE_2Q[rng.integers(len(EXPORTABLE_2Q))]
            a, b = rng.choice(num_qubits, size=2, replace=False)
            if name == "CNOT":
                circ.append(Gate("CNOT", (int(b),), (int(a),)))
            else:
                circ.append(Gate(name, (int(a), int(b))))
        else:
            name = EXPORTABLE_1Q[rng.integers(len(EXPORTABLE_1Q))]
            arg = float(rng.uniform(-10, 10)) if name.startswith("R") else None
            circ.append(Gate(name, (int(rng.integers(num_qubits)),), arg=arg))
    return circ


class TestRoundTrip:
    def test_deutsch_jozsa(self):
        circ = QubitCircuit(3, [
            Gate("X", (2,)), Gate("H", (0,)), Gate("H", (1,)), Gate("H", (2,)),
            Gate("CNOT", (2,), (0,)), Gate("CNOT", (2,), (1,)),
            Gate("H", (0,)), Gate("H", (1,)),
        ])
        reparsed = parse_qasm(export_qasm(circ))
        assert reparsed.num_qubits == 3
        assert reparsed.gates == circ.gates

    def test_argument_precision(self):
        circ = QubitCircuit(1, [Gate("RX", (0,), arg=0.123456789)])
        reparsed = parse_qasm(export_qasm(circ))
        assert abs(reparsed.gates[0].arg - 0.123456789) < 1e-12

    def test_seventeen_digit_argument_exact(self):
        value = math.pi / 3 + 1e-13
        circ = QubitCircuit(1, [Gate("RZ", (0,), arg=value)])
        reparsed = parse_qasm(export_qasm(circ))
        assert reparsed.gates[0].arg == value  # %.17g round-trips doubles exactly

    def test_random_circuits(self):
        rng = np.random.default_rng(404)
        for _ in range(50):
            circ = random_exportable_circuit(rng)
            reparsed = parse_qasm(export_qasm(circ))
            assert reparsed.num_qubits == circ.num_qubits
            assert gates_equal(reparsed.gates, circ.gates)


# ---------------------------------------------------------------------- fuzz
class TestFuzz:
    def test_random_bytes_never_crash(self):
        rng = np.random.default_rng(1234)
        for _ in range(5000):
            n = int(rng.integers(0, 200))
            text = bytes(rng.integers(0, 256, size=n, dtype=np.uint8)).decode(
                "latin-1"
            )
            try:
                parse_qasm(text)
            except QasmError:
                pass

    def test_mutated_programs_never_crash(self):
        base = HEADER + (
            "qreg q[3];\ncreg c[3];\n"
            "gate foo(a,b) x1,x2 { rx(a*b) x1; cx x1,x2; }\n"
            "x q[2];\nh q;\nfoo(pi/2,0.3) q[0],q[2];\ncx q[1],q[2];\n"
        )
        rng = np.random.default_rng(99)
        alphabet = list("abcxyz(){}[];,+-*/.0123456789\"\n ")
        for _ in range(5000):
            chars = list(base)
            for _ in range(int(rng.integers(1, 5))):
                pos = int(rng.integers(len(chars)))
                action = rng.integers(3)
                if action == 0:
                    chars[pos] = alphabet[rng.integers(len(alphabet))]
                elif action == 1:
                    del chars[pos]
                else:
                    chars.insert(pos, alphabet[rng.integers(len(alphabet))])
            try:
                with np.errstate(all="ignore"):
                    import warnings as _w
                    with _w.catch_warnings():
                        _w.simplefilter("ignore")
                        parse_qasm("".join(chars))
            except QasmError:
                pass

    def test_pathological_nesting_rejected(self):
        with pytest.raises(QasmError):
            qasm("qreg q[1];\nrx(" + "(" * 5000 + "1" + ")" * 5000 + ") q[0];\n")

    def test_pathological_operator_chain_rejected(self):
        with pytest.raises(QasmError):
            qasm("qreg q[1];\nrx(" + "+1" * 5000 + ") q[0];\n")
