"""Minimal dense linear-algebra layer for composite quantum systems.

Operators and states carry a ``dims`` tuple describing the tensor-product
structure of the underlying Hilbert space, e.g. ``(2, 2)`` for two qubits or
``(10, 2, 2)`` for a resonator coupled to two qubits.  Everything is backed by
dense complex numpy arrays; no sparse formats, no superoperators.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "Operator",
    "QuantumState",
    "basis",
    "ket",
    "density",
    "qeye",
    "sigmax",
    "sigmay",
    "sigmaz",
    "sigmap",
    "sigmam",
    "destroy",
    "create",
    "num",
    "tensor",
    "expand_operator",
    "expect",
    "state_fidelity",
    "ptrace",
]


def _as_dims(dims: Union[int, Iterable[int]]) -> tuple[int, ...]:
    if isinstance(dims, (int, np.integer)):
        dims = (int(dims),)
    out = tuple(int(d) for d in dims)
    if not out:
        raise ValueError("dims must be non-empty")
    for d in out:
        if d < 2:
            raise ValueError(f"every subsystem dimension must be >= 2, got {out}")
    return out


def _infer_qubit_dims(dim: int, what: str) -> tuple[int, ...]:
    # default: interpret a bare array as n qubits when its size is a power of 2
    n = dim.bit_length() - 1
    if 2**n != dim:
        raise ValueError(
            f"cannot infer dims for {what} of dimension {dim}; pass dims explicitly"
        )
    return (2,) * n


class Operator:
    """A dense linear operator on a tensor-product Hilbert space.

    Parameters
    ----------
    data : array_like
        Square matrix of shape ``(d, d)``.
    dims : int or sequence of int, optional
        Subsystem dimensions with ``prod(dims) == d``.  If omitted, the
        operator is interpreted as acting on qubits (``d`` must be a power
        of two).
    """

    __slots__ = ("data", "dims", "_isherm")

    def __init__(self, data, dims: Union[int, Iterable[int], None] = None):
        arr = np.asarray(data, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"operator data must be a square matrix, got {arr.shape}")
        if dims is None:
            self.dims = _infer_qubit_dims(arr.shape[0], "operator")
        else:
            self.dims = _as_dims(dims)
        if math.prod(self.dims) != arr.shape[0]:
            raise ValueError(
                f"dims {self.dims} inconsistent with matrix dimension {arr.shape[0]}"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        self.data = arr
        self._isherm = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def isherm(self) -> bool:
        if self._isherm is None:
            a = self.data
            self._isherm = bool(np.allclose(a, a.conj().T, atol=1e-12))
        return self._isherm

    def dag(self) -> "Operator":
        return Operator(self.data.conj().T, self.dims)

    def __add__(self, other):
        if isinstance(other, Operator):
            if other.dims != self.dims:
                raise ValueError(f"dims mismatch: {self.dims} vs {other.dims}")
            return Operator(self.data + other.data, self.dims)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Operator):
            if other.dims != self.dims:
                raise ValueError(f"dims mismatch: {self.dims} vs {other.dims}")
            return Operator(self.data - other.data, self.dims)
        return NotImplemented

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float, complex, np.number)):
            return Operator(self.data * scalar, self.dims)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, (int, float, complex, np.number)):
            return Operator(self.data / scalar, self.dims)
        return NotImplemented

    def __neg__(self):
        return Operator(-self.data, self.dims)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            if other.dims != self.dims:
                raise ValueError(f"dims mismatch: {self.dims} vs {other.dims}")
            return Operator(self.data @ other.data, self.dims)
        if isinstance(other, QuantumState):
            return other.apply(self)
        return NotImplemented

    def __repr__(self):
        return f"Operator(dims={self.dims}, shape={self.shape})"


class QuantumState:
    """A ket or a density matrix on a tensor-product Hilbert space."""

    __slots__ = ("data", "dims", "kind")

    def __init__(self, data, dims=None, kind: str = "ket"):
        if kind not in ("ket", "density"):
            raise ValueError(f"kind must be 'ket' or 'density', got {kind!r}")
        arr = np.asarray(data, dtype=complex)
        if kind == "ket":
            arr = arr.reshape(-1)
            dim = arr.shape[0]
        else:
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise ValueError(
                    f"density matrix must be square, got shape {arr.shape}"
                )
            dim = arr.shape[0]
        if dims is None:
            self.dims = _infer_qubit_dims(dim, "state")
        else:
            self.dims = _as_dims(dims)
        if math.prod(self.dims) != dim:
            raise ValueError(f"dims {self.dims} inconsistent with dimension {dim}")
        arr = arr.copy()
        arr.flags.writeable = False
        self.data = arr
        self.kind = kind

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def norm(self) -> float:
        if self.kind == "ket":
            return float(np.linalg.norm(self.data))
        return float(np.trace(self.data).real)

    def normalized(self) -> "QuantumState":
        n = self.norm()
        if n <= 0:
            raise ValueError("cannot normalize a zero state")
        return QuantumState(self.data / n, self.dims, self.kind)

    def to_density(self) -> "QuantumState":
        if self.kind == "density":
            return self
        psi = self.data
        return QuantumState(np.outer(psi, psi.conj()), self.dims, "density")

    def apply(self, op: Operator) -> "QuantumState":
        """Return ``U|psi>`` for kets or ``U rho U^dag`` for densities."""
        if op.dims != self.dims:
            raise ValueError(f"dims mismatch: {op.dims} vs {self.dims}")
        if self.kind == "ket":
            return QuantumState(op.data @ self.data, self.dims, "ket")
        return QuantumState(op.data @ self.data @ op.data.conj().T, self.dims, "density")

    def validate_density(self, atol: float = 1e-8) -> None:
        """Raise ValueError unless this is a valid density matrix."""
        if self.kind != "density":
            raise ValueError("not a density matrix")
        rho = self.data
        if not np.allclose(rho, rho.conj().T, atol=atol):
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > atol:
            raise ValueError(f"density matrix trace is {np.trace(rho).real}, not 1")
        evals = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
        if evals.min() < -atol:
            raise ValueError(f"density matrix has negative eigenvalue {evals.min()}")

    def __repr__(self):
        return f"QuantumState(kind={self.kind!r}, dims={self.dims})"


def ket(data, dims=None) -> QuantumState:
    return QuantumState(data, dims, "ket")


def density(data, dims=None) -> QuantumState:
    return QuantumState(data, dims, "density")


def basis(dim: int, n: int, dims=None) -> QuantumState:
    """Computational basis ket |n> in a ``dim``-dimensional space."""
    if not 0 <= n < dim:
        raise ValueError(f"basis index {n} out of range for dimension {dim}")
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    return QuantumState(v, dims if dims is not None else (dim,), "ket")


def qeye(dims: Union[int, Iterable[int]]) -> Operator:
    d = _as_dims(dims)
    return Operator(np.eye(math.prod(d)), d)


def sigmax() -> Operator:
    return Operator([[0, 1], [1, 0]], (2,))


def sigmay() -> Operator:
    return Operator([[0, -1j], [1j, 0]], (2,))


def sigmaz() -> Operator:
    return Operator([[1, 0], [0, -1]], (2,))


def sigmap() -> Operator:
    """Raising operator |1><0| (excites the qubit)."""
    return Operator([[0, 0], [1, 0]], (2,))


def sigmam() -> Operator:
    """Lowering operator |0><1| (relaxes the qubit)."""
    return Operator([[0, 1], [0, 0]], (2,))


def destroy(dim: int) -> Operator:
    """Truncated bosonic annihilation operator."""
    if dim < 2:
        raise ValueError("destroy needs dimension >= 2")
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)
    return Operator(a, (dim,))


def create(dim: int) -> Operator:
    return destroy(dim).dag()


def num(dim: int) -> Operator:
    return Operator(np.diag(np.arange(dim, dtype=float)), (dim,))


def tensor(*items) -> Union[Operator, QuantumState]:
    """Kronecker product of operators, or of states of the same kind.

    Accepts either a single iterable or the factors as separate arguments.
    """
    if len(items) == 1 and isinstance(items[0], (list, tuple)):
        items = tuple(items[0])
    if not items:
        raise ValueError("tensor of nothing")
    if all(isinstance(x, Operator) for x in items):
        data = items[0].data
        dims: tuple[int, ...] = items[0].dims
        for x in items[1:]:
            data = np.kron(data, x.data)
            dims = dims + x.dims
        return Operator(data, dims)
    if all(isinstance(x, QuantumState) for x in items):
        kinds = {x.kind for x in items}
        if len(kinds) != 1:
            raise ValueError("cannot tensor a ket with a density matrix")
        data = items[0].data
        dims = items[0].dims
        for x in items[1:]:
            data = np.kron(data, x.data)
            dims = dims + x.dims
        return QuantumState(data, dims, items[0].kind)
    raise TypeError("tensor factors must be all Operator or all QuantumState")


def expand_operator(
    op: Operator, dims: Union[int, Iterable[int]], targets: Sequence[int]
) -> Operator:
    """Embed ``op`` acting on ``targets`` into the full space given by ``dims``.

    ``targets`` lists the subsystems the operator acts on, in the order of
    the operator's own tensor factors.
    """
    full = _as_dims(dims)
    n = len(full)
    targets = [int(t) for t in targets]
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate targets {targets}")
    for t in targets:
        if not 0 <= t < n:
            raise ValueError(f"target {t} out of range for {n} subsystems")
    if tuple(full[t] for t in targets) != op.dims:
        raise ValueError(
            f"operator dims {op.dims} do not match target dims "
            f"{tuple(full[t] for t in targets)}"
        )
    rest = [i for i in range(n) if i not in targets]
    order = targets + rest
    rest_dim = math.prod(full[i] for i in rest) if rest else 1
    big = np.kron(op.data, np.eye(rest_dim))
    # big acts on subsystems in `order`; permute back to natural order
    dim_order = [full[i] for i in order]
    tens = big.reshape(dim_order + dim_order)
    inv = [0] * n
    for pos, sub in enumerate(order):
        inv[sub] = pos
    perm = inv + [n + p for p in inv]
    out = tens.transpose(perm).reshape(math.prod(full), math.prod(full))
    return Operator(out, full)


def expect(op: Operator, state: QuantumState) -> Union[float, complex]:
    """Expectation value <op>; real for Hermitian operators."""
    if op.dims != state.dims:
        raise ValueError(f"dims mismatch: {op.dims} vs {state.dims}")
    if state.kind == "ket":
        val = complex(np.vdot(state.data, op.data @ state.data))
    else:
        val = complex(np.trace(op.data @ state.data))
    if op.isherm:
        return val.real
    return val


def _sqrtm_psd(rho: np.ndarray) -> np.ndarray:
    evals, vecs = np.linalg.eigh((rho + rho.conj().T) / 2)
    evals = np.clip(evals, 0.0, None)
    return (vecs * np.sqrt(evals)) @ vecs.conj().T


def state_fidelity(a: QuantumState, b: QuantumState) -> float:
    """Fidelity between two states, |<a|b>|^2 for pure states.

    For two density matrices this is (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
    """
    if a.dims != b.dims:
        raise ValueError(f"dims mismatch: {a.dims} vs {b.dims}")
    if a.kind == "ket" and b.kind == "ket":
        return float(abs(np.vdot(a.data, b.data)) ** 2)
    if a.kind == "ket" and b.kind == "density":
        return float(np.vdot(a.data, b.data @ a.data).real)
    if a.kind == "density" and b.kind == "ket":
        return state_fidelity(b, a)
    s = _sqrtm_psd(a.data)
    m = s @ b.data @ s
    evals = np.linalg.eigvalsh((m + m.conj().T) / 2)
    evals = np.clip(evals, 0.0, None)
    return float(np.sum(np.sqrt(evals)) ** 2)


def ptrace(state: QuantumState, keep: Sequence[int]) -> QuantumState:
    """Partial trace keeping the given subsystems (in the order listed)."""
    keep = [int(k) for k in keep]
    n = len(state.dims)
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate subsystems in keep={keep}")
    for k in keep:
        if not 0 <= k < n:
            raise ValueError(f"subsystem {k} out of range for {n} subsystems")
    traced = [i for i in range(n) if i not in keep]
    dims = state.dims
    dk = math.prod(dims[k] for k in keep) if keep else 1
    dt = math.prod(dims[i] for i in traced) if traced else 1
    if not keep:
        raise ValueError("must keep at least one subsystem")
    if state.kind == "ket":
        tens = state.data.reshape(dims)
        mat = tens.transpose(keep + traced).reshape(dk, dt)
        rho = mat @ mat.conj().T
    else:
        tens = state.data.reshape(dims + dims)
        perm = keep + traced
        tens = tens.transpose(list(perm) + [n + p for p in perm])
        tens = tens.reshape(dk, dt, dk, dt)
        rho = np.einsum("ajbj->ab", tens)
    return QuantumState(rho, tuple(dims[k] for k in keep), "density")
