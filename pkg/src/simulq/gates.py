"""Gate constructors: Pauli encoders, Fourier transform, locking operators.

All matrices follow the big-endian bit convention of :mod:`simulq.qlinalg`,
so they can be compared entry-by-entry against their printed forms.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .qlinalg import Unitary


class EncodedBits(NamedTuple):
    """A two-bit classical message ``(x, y)``."""

    x: int
    y: int


def as_bits(bits) -> EncodedBits:
    """Coerce a ``(x, y)`` pair of 0/1 values to :class:`EncodedBits`."""
    try:
        x, y = bits
    except (TypeError, ValueError):
        raise ValueError(f"expected a pair of bits, got {bits!r}") from None
    x, y = int(x), int(y)
    if x not in (0, 1) or y not in (0, 1):
        raise ValueError(f"bits must be 0 or 1, got {bits!r}")
    return EncodedBits(x, y)


_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])

# message (x, y) -> single-qubit encoder:  I, sigma_z, sigma_x, sigma_z.sigma_x
_ENCODERS = {
    EncodedBits(0, 0): np.eye(2),
    EncodedBits(0, 1): _SIGMA_Z,
    EncodedBits(1, 0): _SIGMA_X,
    EncodedBits(1, 1): _SIGMA_Z @ _SIGMA_X,  # [[0, 1], [-1, 0]]
}


def pauli_encoder(bits) -> Unitary:
    """The single-qubit encoder carrying the message ``(x, y)``.

    ``(0,0) -> I``, ``(0,1) -> sigma_z``, ``(1,0) -> sigma_x``,
    ``(1,1) -> sigma_z sigma_x``.
    """
    return Unitary(_ENCODERS[as_bits(bits)])


def _unit_root(num: int, den: int) -> complex:
    """``exp(2 pi i num/den)``, exact when the root lies on an axis."""
    num %= den
    if (4 * num) % den == 0:
        return (1.0, 1.0j, -1.0, -1.0j)[(4 * num) // den]
    return complex(np.exp(2j * np.pi * num / den))


def qft(n_qubits: int) -> Unitary:
    """The quantum Fourier transform on ``n_qubits`` qubits.

    Entry ``(k, j)`` is ``omega**(j*k) / sqrt(2**n)`` with
    ``omega = exp(2 pi i / 2**n)``; for one qubit this is the Hadamard.
    Roots of unity on the real or imaginary axis are exact, so the one- and
    two-qubit matrices reproduce their printed forms with no rounding dust.
    """
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    dim = 1 << n_qubits
    mat = np.array(
        [[_unit_root(j * k, dim) for j in range(dim)] for k in range(dim)]
    ) / np.sqrt(dim)
    return Unitary(mat)


def lock_operator() -> Unitary:
    """The Hadamard--CNOT locking operator on two sender qubits.

    Equal to ``(H x I) . CNOT`` with the first qubit as control:

        1/sqrt(2) * [[1, 0, 0,  1],
                     [0, 1, 1,  0],
                     [1, 0, 0, -1],
                     [0, 1, -1, 0]]
    """
    mat = np.array(
        [
            [1.0, 0.0, 0.0, 1.0],
            [0.0, 1.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, -1.0],
            [0.0, 1.0, -1.0, 0.0],
        ]
    ) / np.sqrt(2.0)
    return Unitary(mat)


def hadamard() -> Unitary:
    """The single-qubit Hadamard gate."""
    return Unitary(np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0))


def cnot() -> Unitary:
    """CNOT with the first qubit as control, second as target."""
    return Unitary(
        np.array(
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
                [0.0, 0.0, 1.0, 0.0],
            ]
        )
    )


def identity(n_qubits: int = 1) -> Unitary:
    """The identity on ``n_qubits`` qubits."""
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    return Unitary(np.eye(1 << n_qubits))


def adjoint(u: Unitary) -> Unitary:
    """The Hermitian adjoint (inverse) of a unitary."""
    return Unitary(u.entries.conj().T)


# Gates addressable by name from the command line.
_SIZED_GATES = {"qft", "identity"}


def named_gate(name: str, n_qubits: int | None = None) -> Unitary:
    """Look up a gate by its command-line name.

    ``qft`` and ``identity`` take a qubit count; every other name is fixed:
    ``u00 u01 u10 u11 hadamard cnot ulock``.
    """
    fixed = {
        "u00": lambda: pauli_encoder((0, 0)),
        "u01": lambda: pauli_encoder((0, 1)),
        "u10": lambda: pauli_encoder((1, 0)),
        "u11": lambda: pauli_encoder((1, 1)),
        "hadamard": hadamard,
        "cnot": cnot,
        "ulock": lock_operator,
    }
    if name in fixed:
        if n_qubits is not None:
            raise ValueError(f"gate {name!r} does not take a qubit count")
        return fixed[name]()
    if name in _SIZED_GATES:
        if n_qubits is None:
            raise ValueError(f"gate {name!r} requires a qubit count")
        return qft(n_qubits) if name == "qft" else identity(n_qubits)
    known = sorted(fixed) + sorted(_SIZED_GATES)
    raise ValueError(f"unknown gate {name!r}; known gates: {', '.join(known)}")
