"""Dense complex linear algebra on labeled qubit registers.

States, density matrices and gates are thin immutable wrappers around
``numpy`` arrays.  The bit convention is big-endian throughout: the first
label of a register owns the most significant bit of the amplitude index,
so for a two-qubit register ``|01>`` sits at index 1 and a printed 4x4
matrix acts on amplitudes ordered ``00, 01, 10, 11``.

Registers are never reordered implicitly.  Every operation addresses
qubits by label, and :func:`reorder` is the one (explicit) way to permute
a register.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: tolerance for closed-form comparisons and state invariants
ATOL = 1e-10
#: tolerance for algebraic identities (unitarity, Gram matrices, ...)
ATOL_STRICT = 1e-12

# Reduced density matrices are dense; refuse to materialize anything
# larger than this many kept qubits (2**10 x 2**10 complex entries).
_MAX_KEEP_QUBITS = 10


def _as_complex_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def _check_labels(labels: Iterable[str]) -> tuple[str, ...]:
    out = tuple(str(lbl) for lbl in labels)
    if len(set(out)) != len(out):
        raise ValueError(f"duplicate qubit labels: {out}")
    return out


@dataclass(frozen=True)
class StateVector:
    """A normalized pure state on an ordered, labeled qubit register."""

    amplitudes: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = _check_labels(self.labels)
        amps = _as_complex_array(self.amplitudes, "amplitudes").reshape(-1)
        if amps.size != 1 << len(labels):
            raise ValueError(
                f"{len(labels)} labels require {1 << len(labels)} amplitudes,"
                f" got {amps.size}"
            )
        nrm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(nrm2 - 1.0) > ATOL:
            raise ValueError(f"state is not normalized: sum|amp|^2 = {nrm2!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", labels)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def axis_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(
                f"unknown qubit label {label!r}; register is {self.labels}"
            ) from None


@dataclass(frozen=True)
class DensityMatrix:
    """A Hermitian, positive semidefinite, trace-one operator on a register."""

    entries: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = _check_labels(self.labels)
        mat = _as_complex_array(self.entries, "entries")
        dim = 1 << len(labels)
        if mat.shape != (dim, dim):
            raise ValueError(
                f"{len(labels)} labels require a {dim}x{dim} matrix, got {mat.shape}"
            )
        if np.max(np.abs(mat - mat.conj().T)) > ATOL:
            raise ValueError("density matrix is not Hermitian")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > ATOL:
            raise ValueError(f"density matrix has trace {tr!r}, expected 1")
        if float(np.linalg.eigvalsh(mat)[0]) < -ATOL:
            raise ValueError("density matrix has a negative eigenvalue")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)
        object.__setattr__(self, "labels", labels)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class Unitary:
    """A unitary matrix on an unspecified register of k qubits."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        mat = _as_complex_array(self.entries, "entries")
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"unitary must be square, got shape {mat.shape}")
        dim = mat.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise ValueError(f"unitary dimension must be a power of two, got {dim}")
        if np.max(np.abs(mat.conj().T @ mat - np.eye(dim))) > ATOL:
            raise ValueError("matrix is not unitary")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1


def tensor(a, b):
    """Kronecker product of two states / density matrices / unitaries.

    For labeled operands the result register is ``a.labels + b.labels``;
    label collisions are rejected.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        labels = _check_labels(a.labels + b.labels)
        return StateVector(np.kron(a.amplitudes, b.amplitudes), labels)
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        labels = _check_labels(a.labels + b.labels)
        return DensityMatrix(np.kron(a.entries, b.entries), labels)
    if isinstance(a, Unitary) and isinstance(b, Unitary):
        return Unitary(np.kron(a.entries, b.entries))
    raise TypeError(
        f"cannot tensor {type(a).__name__} with {type(b).__name__}"
    )


def _target_axes(state: StateVector, targets: Sequence[str]) -> list[int]:
    targets = tuple(targets)
    if not targets:
        raise ValueError("no target qubits given")
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target labels: {targets}")
    return [state.axis_of(t) for t in targets]


def apply(state: StateVector, gate: Unitary, targets: Sequence[str]) -> StateVector:
    """Apply ``gate`` to the listed target qubits of ``state``.

    The i-th qubit of the gate matrix acts on ``targets[i]``; the register
    order of the state is unchanged.
    """
    axes = _target_axes(state, targets)
    k = len(axes)
    if gate.dim != 1 << k:
        raise ValueError(
            f"gate dimension {gate.dim} does not fit {k} target qubit(s)"
        )
    n = state.n_qubits
    rest = [i for i in range(n) if i not in axes]
    perm = axes + rest
    psi = state.amplitudes.reshape([2] * n).transpose(perm).reshape(1 << k, -1)
    out = gate.entries @ psi
    out = out.reshape([2] * n).transpose(np.argsort(perm)).reshape(-1)
    return StateVector(out, state.labels)


def partial_trace(obj: StateVector | DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """Trace out every qubit not in ``keep``.

    ``keep`` is a set of labels; the result register keeps the original
    relative label order.
    """
    keep_set = set(keep)
    if not keep_set:
        raise ValueError("keep must name at least one qubit")
    unknown = keep_set - set(obj.labels)
    if unknown:
        raise ValueError(f"unknown qubit label(s) {sorted(unknown)}; register is {obj.labels}")
    n = len(obj.labels)
    keep_axes = [i for i in range(n) if obj.labels[i] in keep_set]
    if len(keep_axes) > _MAX_KEEP_QUBITS:
        raise ValueError(
            f"refusing to build a reduced matrix on {len(keep_axes)} qubits"
        )
    rest = [i for i in range(n) if i not in keep_axes]
    dk = 1 << len(keep_axes)
    out_labels = tuple(obj.labels[i] for i in keep_axes)
    if isinstance(obj, StateVector):
        psi = obj.amplitudes.reshape([2] * n).transpose(keep_axes + rest).reshape(dk, -1)
        return DensityMatrix(psi @ psi.conj().T, out_labels)
    if isinstance(obj, DensityMatrix):
        dr = 1 << len(rest)
        perm = keep_axes + rest + [n + i for i in keep_axes] + [n + i for i in rest]
        arr = obj.entries.reshape([2] * (2 * n)).transpose(perm).reshape(dk, dr, dk, dr)
        return DensityMatrix(np.einsum("arbr->ab", arr), out_labels)
    raise TypeError(f"cannot take a partial trace of {type(obj).__name__}")


def contract(
    state: StateVector, bra: np.ndarray, targets: Sequence[str]
) -> tuple[np.ndarray, tuple[str, ...]]:
    """Contract ``<bra|`` against the target qubits of ``state``.

    Returns the *unnormalized* residual amplitudes on the remaining qubits
    together with their labels (original relative order).  The squared norm
    of the residual is the Born probability of projecting onto ``bra``.
    """
    axes = _target_axes(state, targets)
    bra = _as_complex_array(bra, "bra").reshape(-1)
    if bra.size != 1 << len(axes):
        raise ValueError(f"bra has {bra.size} amplitudes for {len(axes)} qubit(s)")
    n = state.n_qubits
    rest = [i for i in range(n) if i not in axes]
    psi = state.amplitudes.reshape([2] * n).transpose(axes + rest).reshape(bra.size, -1)
    residual = bra.conj() @ psi
    return residual, tuple(state.labels[i] for i in rest)


def reorder(state: StateVector, new_order: Sequence[str]) -> StateVector:
    """Return the same state on an explicitly permuted register."""
    new_order = tuple(new_order)
    if sorted(new_order) != sorted(state.labels):
        raise ValueError(f"{new_order} is not a permutation of {state.labels}")
    perm = [state.axis_of(lbl) for lbl in new_order]
    amp = state.amplitudes.reshape([2] * state.n_qubits).transpose(perm).reshape(-1)
    return StateVector(amp, new_order)


def inner(a: StateVector, b: StateVector) -> complex:
    """The inner product ``<a|b>`` (labels must agree)."""
    if a.labels != b.labels:
        raise ValueError(f"label mismatch: {a.labels} vs {b.labels}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def to_density(state: StateVector) -> DensityMatrix:
    """The rank-one density matrix ``|state><state|``."""
    return DensityMatrix(np.outer(state.amplitudes, state.amplitudes.conj()), state.labels)


def fidelity(state: StateVector, rho: DensityMatrix) -> float:
    """``<state|rho|state>`` for a pure reference state.

    Dimensions must match; labels are not compared, so a teleported payload
    can be scored against the receiving qubit directly.
    """
    if state.dim != rho.dim:
        raise ValueError(f"dimension mismatch: {state.dim} vs {rho.dim}")
    amp = state.amplitudes
    return float(np.real(amp.conj() @ rho.entries @ amp))


def equal_up_to_global_phase(a: StateVector, b: StateVector, tol: float = ATOL) -> bool:
    """True when ``a = exp(i theta) b`` for some phase, within ``tol``."""
    if a.labels != b.labels:
        raise ValueError(f"label mismatch: {a.labels} vs {b.labels}")
    ip = np.vdot(b.amplitudes, a.amplitudes)
    phase = ip / abs(ip) if abs(ip) > 0 else 1.0
    return bool(np.linalg.norm(a.amplitudes - phase * b.amplitudes) <= tol)


def _entries_of(obj) -> np.ndarray:
    if isinstance(obj, (DensityMatrix, Unitary)):
        return obj.entries
    return _as_complex_array(obj, "matrix")


def matrix_close(a, b, tol: float = ATOL) -> bool:
    """Entrywise max-abs comparison of two matrices of identical shape."""
    ma, mb = _entries_of(a), _entries_of(b)
    if ma.shape != mb.shape:
        raise ValueError(f"shape mismatch: {ma.shape} vs {mb.shape}")
    return bool(np.max(np.abs(ma - mb)) <= tol)


# --- JSON wire format ------------------------------------------------------
#
# Every matrix or vector serializes to
#   {"labels": [...], "shape": [rows, cols], "re": [[...]], "im": [[...]]}
# with row-major nested lists.  State vectors are dumped as column vectors.


def to_wire(obj: StateVector | DensityMatrix | Unitary) -> dict:
    """Serialize a state / density matrix / unitary to the JSON dump format."""
    if isinstance(obj, StateVector):
        mat = obj.amplitudes.reshape(-1, 1)
        labels = list(obj.labels)
    elif isinstance(obj, DensityMatrix):
        mat = obj.entries
        labels = list(obj.labels)
    elif isinstance(obj, Unitary):
        mat = obj.entries
        labels = []
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {
        "labels": labels,
        "shape": [int(mat.shape[0]), int(mat.shape[1])],
        "re": mat.real.tolist(),
        "im": mat.imag.tolist(),
    }


def _matrix_from_wire(data: dict) -> tuple[np.ndarray, list[str]]:
    try:
        labels = list(data["labels"])
        rows, cols = (int(v) for v in data["shape"])
        mat = np.array(data["re"], dtype=float) + 1j * np.array(data["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix payload: {exc}") from exc
    if mat.shape != (rows, cols):
        raise ValueError(f"payload shape {mat.shape} does not match declared {(rows, cols)}")
    return mat, labels


def state_from_wire(data: dict) -> StateVector:
    mat, labels = _matrix_from_wire(data)
    if mat.shape[1] != 1:
        raise ValueError(f"a state vector must have one column, got {mat.shape[1]}")
    return StateVector(mat.reshape(-1), tuple(labels))


def density_from_wire(data: dict) -> DensityMatrix:
    mat, labels = _matrix_from_wire(data)
    return DensityMatrix(mat, tuple(labels))


def unitary_from_wire(data: dict) -> Unitary:
    mat, _ = _matrix_from_wire(data)
    return Unitary(mat)
