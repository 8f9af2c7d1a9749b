"""OpenQASM 2.0 subset import and export.

``parse_qasm`` turns program text into a :class:`~pulsesim.circuit.QubitCircuit`;
``export_qasm`` renders a circuit back to text.  The ``qelib1.inc`` standard
library is built in (an on-disk file of that name is ignored with a warning):
x, y, z, h, s, t, sdg, tdg, rx, ry, rz, cx, cz, swap, id, u1, u2, u3, ccx.
Gates with no first-class circuit equivalent (s, t, u1, u2, u3, ccx, ...) are
lowered to RZ/RY/CNOT/GLOBALPHASE sequences at parse time, preserving the
unitary including global phase.

Unsupported constructs fail deterministically with :class:`QasmError`
carrying line/column information; ``measure`` and ``barrier`` are dropped
with a warning, classical conditionals are rejected.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from .circuit import Gate, QubitCircuit

__all__ = ["QasmError", "parse_qasm", "export_qasm"]


class QasmError(ValueError):
    """Malformed or unsupported OpenQASM input."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        if line:
            message = f"line {line}, column {col}: {message}"
        super().__init__(message)


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------

_SYMBOLS = set("()[]{},;+-*/")


@dataclass(frozen=True)
class _Token:
    kind: str  # ident | number | string | symbol | arrow | eq | eof
    text: str
    line: int
    col: int

    @property
    def is_integer(self) -> bool:
        return self.kind == "number" and self.text.isdigit()


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            lexeme = text[i:j]
            try:
                float(lexeme)
            except ValueError:
                raise QasmError(f"bad number literal {lexeme!r}", start_line, start_col)
            tokens.append(_Token("number", lexeme, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = text.find('"', i + 1)
            if j < 0 or "\n" in text[i + 1 : j]:
                raise QasmError("unterminated string literal", start_line, start_col)
            tokens.append(_Token("string", text[i + 1 : j], start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if text.startswith("->", i):
            tokens.append(_Token("arrow", "->", start_line, start_col))
            i, col = i + 2, col + 2
            continue
        if text.startswith("==", i):
            tokens.append(_Token("eq", "==", start_line, start_col))
            i, col = i + 2, col + 2
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token("symbol", ch, start_line, start_col))
            i, col = i + 1, col + 1
            continue
        raise QasmError(f"unexpected character {ch!r}", start_line, start_col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# expressions (AST built once, evaluated with a parameter environment)
# ---------------------------------------------------------------------------


def _eval_expr(node, env: dict, line: int, col: int) -> float:
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "pi":
        return math.pi
    if kind == "name":
        if node[1] in env:
            return env[node[1]]
        raise QasmError(f"unknown identifier {node[1]!r} in expression", line, col)
    if kind == "neg":
        return -_eval_expr(node[1], env, line, col)
    op, lhs, rhs = node[1], node[2], node[3]
    a = _eval_expr(lhs, env, line, col)
    b = _eval_expr(rhs, env, line, col)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    try:
        return a / b
    except ZeroDivisionError:
        raise QasmError("division by zero in expression", line, col)


# ---------------------------------------------------------------------------
# built-in gate semantics (embedded qelib1.inc)
# ---------------------------------------------------------------------------


def _u3_gates(theta, phi, lam, q):
    return [
        Gate("RZ", (q,), arg=lam),
        Gate("RY", (q,), arg=theta),
        Gate("RZ", (q,), arg=phi),
        Gate("GLOBALPHASE", arg=(phi + lam) / 2),
    ]


def _ccx_gates(a, b, c):
    t, tdg = math.pi / 4, -math.pi / 4
    seq = [
        Gate("H", (c,)),
        Gate("CNOT", (c,), (b,)),
        Gate("RZ", (c,), arg=tdg),
        Gate("CNOT", (c,), (a,)),
        Gate("RZ", (c,), arg=t),
        Gate("CNOT", (c,), (b,)),
        Gate("RZ", (c,), arg=tdg),
        Gate("CNOT", (c,), (a,)),
        Gate("RZ", (b,), arg=t),
        Gate("RZ", (c,), arg=t),
        Gate("H", (c,)),
        Gate("CNOT", (b,), (a,)),
        Gate("RZ", (a,), arg=t),
        Gate("RZ", (b,), arg=tdg),
        Gate("CNOT", (b,), (a,)),
        Gate("GLOBALPHASE", arg=math.pi / 8),
    ]
    return seq


# name -> (num_params, num_qubits, expansion(params, qubits) -> list[Gate])
_BUILTIN: dict[str, tuple[int, int, Callable]] = {
    "x": (0, 1, lambda p, q: [Gate("X", (q[0],))]),
    "y": (0, 1, lambda p, q: [Gate("Y", (q[0],))]),
    "z": (0, 1, lambda p, q: [Gate("Z", (q[0],))]),
    "h": (0, 1, lambda p, q: [Gate("H", (q[0],))]),
    "id": (0, 1, lambda p, q: []),
    "s": (0, 1, lambda p, q: [Gate("RZ", (q[0],), arg=math.pi / 2),
                              Gate("GLOBALPHASE", arg=math.pi / 4)]),
    "sdg": (0, 1, lambda p, q: [Gate("RZ", (q[0],), arg=-math.pi / 2),
                                Gate("GLOBALPHASE", arg=-math.pi / 4)]),
    "t": (0, 1, lambda p, q: [Gate("RZ", (q[0],), arg=math.pi / 4),
                              Gate("GLOBALPHASE", arg=math.pi / 8)]),
    "tdg": (0, 1, lambda p, q: [Gate("RZ", (q[0],), arg=-math.pi / 4),
                                Gate("GLOBALPHASE", arg=-math.pi / 8)]),
    "rx": (1, 1, lambda p, q: [Gate("RX", (q[0],), arg=p[0])]),
    "ry": (1, 1, lambda p, q: [Gate("RY", (q[0],), arg=p[0])]),
    "rz": (1, 1, lambda p, q: [Gate("RZ", (q[0],), arg=p[0])]),
    "u1": (1, 1, lambda p, q: [Gate("RZ", (q[0],), arg=p[0]),
                               Gate("GLOBALPHASE", arg=p[0] / 2)]),
    "u2": (2, 1, lambda p, q: _u3_gates(math.pi / 2, p[0], p[1], q[0])),
    "u3": (3, 1, lambda p, q: _u3_gates(p[0], p[1], p[2], q[0])),
    "cx": (0, 2, lambda p, q: [Gate("CNOT", (q[1],), (q[0],))]),
    "cz": (0, 2, lambda p, q: [Gate("CZ", (q[0], q[1]))]),
    "swap": (0, 2, lambda p, q: [Gate("SWAP", (q[0], q[1]))]),
    "ccx": (0, 3, lambda p, q: _ccx_gates(*q)),
}

_KEYWORDS = {
    "OPENQASM", "include", "qreg", "creg", "gate", "measure", "barrier",
    "if", "opaque", "reset", "pi",
}


@dataclass
class _Register:
    name: str
    kind: str  # "q" or "c"
    size: int
    offset: int


@dataclass
class _GateDef:
    params: list[str]
    qubits: list[str]
    # body entries: (name, param ASTs, qubit parameter names, line, col)
    body: list[tuple]


_MAX_QUBITS = 64          # simulation is dense; larger registers are a typo
_MAX_CBITS = 4096
_MAX_PAREN_DEPTH = 128    # paren depth and operator count bound the AST,
_MAX_EXPR_OPS = 256       # keeping recursive evaluation far from stack limits
_MAX_EXPAND_DEPTH = 64


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.registers: dict[str, _Register] = {}
        self.num_qubits = 0
        self.defs: dict[str, _GateDef] = {}
        self.qelib_included = False
        self.gates: list[Gate] = []
        self._paren_depth = 0
        self._expr_ops = 0

    # -- token helpers ------------------------------------------------------
    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind=None, text=None, what="") -> _Token:
        tok = self.next()
        if (kind and tok.kind != kind) or (text and tok.text != text):
            want = what or text or kind
            raise QasmError(f"expected {want}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def expect_symbol(self, sym: str) -> _Token:
        return self.expect("symbol", sym, f"'{sym}'")

    # -- program ------------------------------------------------------------
    def parse(self) -> QubitCircuit:
        head = self.next()
        if head.kind != "ident" or head.text != "OPENQASM":
            raise QasmError("file must start with 'OPENQASM 2.0;'", head.line, head.col)
        ver = self.next()
        if ver.kind != "number" or ver.text != "2.0":
            raise QasmError(
                f"unsupported OpenQASM version {ver.text!r} (only 2.0)", ver.line, ver.col
            )
        self.expect_symbol(";")
        while self.peek().kind != "eof":
            self.statement()
        if self.num_qubits == 0:
            tok = self.peek()
            raise QasmError("program declares no quantum register", tok.line, tok.col)
        return QubitCircuit(self.num_qubits, self.gates)

    def statement(self):
        tok = self.peek()
        if tok.kind != "ident":
            raise QasmError(f"expected statement, found {tok.text!r}", tok.line, tok.col)
        name = tok.text
        if name == "include":
            self.include_stmt()
        elif name in ("qreg", "creg"):
            self.reg_stmt()
        elif name == "gate":
            self.gatedef_stmt()
        elif name == "opaque":
            raise QasmError("opaque gates are not supported", tok.line, tok.col)
        elif name == "if":
            raise QasmError(
                "classical conditionals ('if') are not supported", tok.line, tok.col
            )
        elif name == "reset":
            raise QasmError("'reset' is not supported", tok.line, tok.col)
        elif name == "measure":
            self.measure_stmt()
        elif name == "barrier":
            self.barrier_stmt()
        elif name == "OPENQASM":
            raise QasmError("duplicate OPENQASM header", tok.line, tok.col)
        else:
            self.application_stmt()

    def include_stmt(self):
        self.next()
        fname = self.expect("string", what="include filename")
        self.expect_symbol(";")
        if fname.text != "qelib1.inc":
            raise QasmError(
                f"only \"qelib1.inc\" includes are supported, got {fname.text!r}",
                fname.line, fname.col,
            )
        if Path("qelib1.inc").exists():
            warnings.warn(
                "ignoring on-disk qelib1.inc; built-in gate definitions are used",
                stacklevel=4,
            )
        self.qelib_included = True

    def reg_stmt(self):
        kw = self.next()
        name_tok = self.expect("ident", what="register name")
        name = name_tok.text
        if name in _KEYWORDS:
            raise QasmError(f"{name!r} is reserved", name_tok.line, name_tok.col)
        if name in self.registers:
            raise QasmError(f"register {name!r} already declared", name_tok.line, name_tok.col)
        self.expect_symbol("[")
        size_tok = self.expect("number", what="register size")
        if not size_tok.is_integer or int(size_tok.text) < 1:
            raise QasmError("register size must be a positive integer",
                            size_tok.line, size_tok.col)
        self.expect_symbol("]")
        self.expect_symbol(";")
        size = int(size_tok.text)
        kind = "q" if kw.text == "qreg" else "c"
        limit = _MAX_QUBITS if kind == "q" else _MAX_CBITS
        if size > limit or (kind == "q" and self.num_qubits + size > _MAX_QUBITS):
            raise QasmError(
                f"register {name!r} of size {size} exceeds the supported "
                f"limit of {limit} {'qubits' if kind == 'q' else 'bits'}",
                size_tok.line, size_tok.col,
            )
        offset = self.num_qubits if kind == "q" else 0
        self.registers[name] = _Register(name, kind, size, offset)
        if kind == "q":
            self.num_qubits += size

    # -- gate definitions ---------------------------------------------------
    def gatedef_stmt(self):
        self.next()
        name_tok = self.expect("ident", what="gate name")
        name = name_tok.text
        if name in _KEYWORDS:
            raise QasmError(f"{name!r} is reserved", name_tok.line, name_tok.col)
        if name in _BUILTIN or name in self.defs:
            raise QasmError(f"gate {name!r} already defined", name_tok.line, name_tok.col)
        params: list[str] = []
        if self.peek().kind == "symbol" and self.peek().text == "(":
            self.next()
            if not (self.peek().kind == "symbol" and self.peek().text == ")"):
                params.append(self.expect("ident", what="parameter name").text)
                while self.peek().text == ",":
                    self.next()
                    params.append(self.expect("ident", what="parameter name").text)
            self.expect_symbol(")")
        qubits = [self.expect("ident", what="qubit argument").text]
        while self.peek().text == ",":
            self.next()
            qubits.append(self.expect("ident", what="qubit argument").text)
        if len(set(params)) != len(params) or len(set(qubits)) != len(qubits):
            raise QasmError(f"duplicate argument name in gate {name!r} definition",
                            name_tok.line, name_tok.col)
        self.expect_symbol("{")
        body: list[tuple] = []
        while not (self.peek().kind == "symbol" and self.peek().text == "}"):
            tok = self.peek()
            if tok.kind == "eof":
                raise QasmError(f"unterminated body of gate {name!r}", tok.line, tok.col)
            if tok.kind == "ident" and tok.text == "barrier":
                self.barrier_stmt(in_def=True)
                continue
            body.append(self.body_application(params, qubits))
        self.next()  # consume '}'
        self.defs[name] = _GateDef(params, qubits, body)

    def body_application(self, params: Sequence[str], qubits: Sequence[str]) -> tuple:
        name_tok = self.expect("ident", what="gate name")
        # OpenQASM 2.0 only permits previously defined gates inside a body,
        # which also rules out (mutual) recursion
        if name_tok.text not in _BUILTIN and name_tok.text not in self.defs:
            raise QasmError(
                f"gate {name_tok.text!r} is not defined at this point",
                name_tok.line, name_tok.col,
            )
        exprs = self.param_exprs()
        args = [self.expect("ident", what="qubit name")]
        while self.peek().text == ",":
            self.next()
            args.append(self.expect("ident", what="qubit name"))
        self.expect_symbol(";")
        for a in args:
            if a.text not in qubits:
                raise QasmError(f"unknown qubit {a.text!r} in gate body", a.line, a.col)
        return (name_tok.text, exprs, [a.text for a in args], name_tok.line, name_tok.col)

    # -- dropped statements --------------------------------------------------
    def measure_stmt(self):
        tok = self.next()
        self.qubit_ref()
        self.expect("arrow", what="'->'")
        self.qubit_ref(classical=True)
        self.expect_symbol(";")
        warnings.warn(
            f"line {tok.line}: 'measure' ignored (simulator returns full states)",
            stacklevel=4,
        )

    def barrier_stmt(self, in_def: bool = False):
        tok = self.next()
        if in_def:
            self.expect("ident", what="qubit name")
            while self.peek().text == ",":
                self.next()
                self.expect("ident", what="qubit name")
        else:
            self.qubit_ref()
            while self.peek().text == ",":
                self.next()
                self.qubit_ref()
        self.expect_symbol(";")
        warnings.warn(f"line {tok.line}: 'barrier' ignored", stacklevel=4)

    # -- applications --------------------------------------------------------
    def param_exprs(self) -> list:
        exprs: list = []
        if self.peek().kind == "symbol" and self.peek().text == "(":
            self.next()
            if not (self.peek().kind == "symbol" and self.peek().text == ")"):
                self._expr_ops = 0
                exprs.append(self.expr())
                while self.peek().text == ",":
                    self.next()
                    self._expr_ops = 0
                    exprs.append(self.expr())
            self.expect_symbol(")")
        return exprs

    def qubit_ref(self, classical: bool = False) -> tuple[_Register, Optional[int]]:
        name_tok = self.expect("ident", what="register name")
        reg = self.registers.get(name_tok.text)
        if reg is None:
            raise QasmError(f"undeclared register {name_tok.text!r}",
                            name_tok.line, name_tok.col)
        want = "c" if classical else "q"
        if reg.kind != want:
            kinds = {"q": "quantum", "c": "classical"}
            raise QasmError(
                f"{kinds[reg.kind]} register {reg.name!r} used where a "
                f"{kinds[want]} register is required",
                name_tok.line, name_tok.col,
            )
        index: Optional[int] = None
        if self.peek().kind == "symbol" and self.peek().text == "[":
            self.next()
            idx_tok = self.expect("number", what="index")
            if not idx_tok.is_integer:
                raise QasmError("index must be an integer", idx_tok.line, idx_tok.col)
            index = int(idx_tok.text)
            if index >= reg.size:
                raise QasmError(
                    f"index {index} out of range for register "
                    f"{reg.name!r} of size {reg.size}",
                    idx_tok.line, idx_tok.col,
                )
            self.expect_symbol("]")
        return reg, index

    def application_stmt(self):
        name_tok = self.next()
        name = name_tok.text
        exprs = self.param_exprs()
        refs = [self.qubit_ref()]
        while self.peek().text == ",":
            self.next()
            refs.append(self.qubit_ref())
        self.expect_symbol(";")
        params = [
            float(_eval_expr(e, {}, name_tok.line, name_tok.col)) for e in exprs
        ]
        # broadcast: every whole-register operand must have the same length
        reg_sizes = {ref.size for ref, idx in refs if idx is None}
        if len(reg_sizes) > 1:
            raise QasmError(
                f"register size mismatch in broadcast: {sorted(reg_sizes)}",
                name_tok.line, name_tok.col,
            )
        reps = reg_sizes.pop() if reg_sizes else 1
        for rep in range(reps):
            qubits = [
                reg.offset + (idx if idx is not None else rep) for reg, idx in refs
            ]
            self.expand(name, params, qubits, name_tok.line, name_tok.col)

    def expand(self, name: str, params: list[float], qubits: list[int],
               line: int, col: int, depth: int = 0):
        if depth > _MAX_EXPAND_DEPTH:
            raise QasmError(f"gate {name!r} expansion is too deep", line, col)
        for v in params:
            if not math.isfinite(v):
                raise QasmError(
                    f"argument of gate {name!r} is not finite", line, col
                )
        gdef = self.defs.get(name)
        if gdef is not None:
            if len(params) != len(gdef.params) or len(qubits) != len(gdef.qubits):
                raise QasmError(
                    f"gate {name!r} takes {len(gdef.params)} parameter(s) and "
                    f"{len(gdef.qubits)} qubit(s), got {len(params)} and {len(qubits)}",
                    line, col,
                )
            env = dict(zip(gdef.params, params))
            qmap = dict(zip(gdef.qubits, qubits))
            for bname, bexprs, bargs, bline, bcol in gdef.body:
                bparams = [float(_eval_expr(e, env, bline, bcol)) for e in bexprs]
                self.expand(
                    bname, bparams, [qmap[a] for a in bargs], bline, bcol, depth + 1
                )
            return
        entry = _BUILTIN.get(name)
        if entry is None:
            hint = "" if self.qelib_included else " (missing 'include \"qelib1.inc\";'?)"
            raise QasmError(f"unknown gate {name!r}{hint}", line, col)
        if not self.qelib_included:
            raise QasmError(
                f"gate {name!r} needs 'include \"qelib1.inc\";'", line, col
            )
        n_params, n_qubits, fn = entry
        if len(params) != n_params:
            raise QasmError(
                f"gate {name!r} takes {n_params} parameter(s), got {len(params)}",
                line, col,
            )
        if len(qubits) != n_qubits:
            raise QasmError(
                f"gate {name!r} acts on {n_qubits} qubit(s), got {len(qubits)}",
                line, col,
            )
        try:
            self.gates.extend(fn(params, qubits))
        except ValueError as exc:
            raise QasmError(str(exc), line, col)

    # -- expressions ---------------------------------------------------------
    def _count_op(self, tok: _Token):
        self._expr_ops += 1
        if self._expr_ops > _MAX_EXPR_OPS:
            raise QasmError("expression has too many operators", tok.line, tok.col)

    def expr(self):
        node = self.term()
        while self.peek().kind == "symbol" and self.peek().text in "+-":
            tok = self.next()
            self._count_op(tok)
            node = ("bin", tok.text, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "symbol" and self.peek().text in "*/":
            tok = self.next()
            self._count_op(tok)
            node = ("bin", tok.text, node, self.unary())
        return node

    def unary(self):
        negate = False
        while self.peek().kind == "symbol" and self.peek().text in "+-":
            if self.next().text == "-":
                negate = not negate
        node = self.primary()
        return ("neg", node) if negate else node

    def primary(self):
        tok = self.next()
        if tok.kind == "number":
            return ("num", float(tok.text))
        if tok.kind == "ident":
            if tok.text == "pi":
                return ("pi",)
            return ("name", tok.text)
        if tok.kind == "symbol" and tok.text == "(":
            self._paren_depth += 1
            if self._paren_depth > _MAX_PAREN_DEPTH:
                raise QasmError("expression is nested too deeply", tok.line, tok.col)
            node = self.expr()
            self.expect_symbol(")")
            self._paren_depth -= 1
            return node
        raise QasmError(f"expected expression, found {tok.text!r}", tok.line, tok.col)


def parse_qasm(text: str) -> QubitCircuit:
    """Parse OpenQASM 2.0 text into a circuit.

    Raises :class:`QasmError` (with line/column) on malformed or
    unsupported input; never raises anything else on string input.
    """
    if not isinstance(text, str):
        raise QasmError("input must be text")
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

_EXPORT_NAMES = {
    "X": "x", "Y": "y", "Z": "z", "H": "h",
    "RX": "rx", "RY": "ry", "RZ": "rz",
    "CNOT": "cx", "CZ": "cz", "SWAP": "swap",
}


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def export_qasm(circ: QubitCircuit) -> str:
    """Render a circuit as OpenQASM 2.0 text (LF line endings).

    Every gate must map to a qelib1 name; GLOBALPHASE becomes a comment
    (it has no QASM equivalent), so it does not survive a round-trip.
    """
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circ.num_qubits}];",
    ]
    for gate in circ.gates:
        if gate.name == "GLOBALPHASE":
            lines.append(f"// global phase: {_fmt(gate.arg)}")
            continue
        name = _EXPORT_NAMES.get(gate.name)
        if name is None:
            raise ValueError(
                f"gate {gate.name!r} has no OpenQASM 2.0 / qelib1 representation"
            )
        operands = ",".join(f"q[{q}]" for q in gate.qubits)
        if gate.arg is not None:
            lines.append(f"{name}({_fmt(gate.arg)}) {operands};")
        else:
            lines.append(f"{name} {operands};")
    return "\n".join(lines) + "\n"
