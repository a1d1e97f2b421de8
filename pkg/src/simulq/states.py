"""Entangled channel states and the orthonormal measurement families.

Three four-member families are used, one per channel type.  Writing
``~x`` for the flipped bit, the ``(x, y)`` members are

* Bell pairs:     ``(|0 x> + (-1)**y |1 ~x>) / sqrt(2)``
* GHZ triples:    ``(|0 x x> + (-1)**y |1 ~x ~x>) / sqrt(2)``
* W-like triples: ``(|x 1 0> + |x 0 1> + (-1)**y sqrt(2) |~x 0 0>) / 2``

Each family is orthonormal and spans a four-dimensional subspace; for the
GHZ and W families that subspace sits strictly inside the eight-dimensional
ambient space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qlinalg import ATOL_STRICT, StateVector, tensor

_SQRT2 = np.sqrt(2.0)

_BIT_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))


def _check_bit(value: int, name: str) -> int:
    if value not in (0, 1):
        raise ValueError(f"{name} must be 0 or 1, got {value!r}")
    return int(value)


def phi(x: int, y: int, labels=("q0", "q1")) -> StateVector:
    """Bell-family member ``(|0 x> + (-1)**y |1 ~x>) / sqrt(2)``."""
    x, y = _check_bit(x, "x"), _check_bit(y, "y")
    v = np.zeros(4, dtype=np.complex128)
    v[x] = 1.0 / _SQRT2
    v[2 + (1 - x)] = (-1.0) ** y / _SQRT2
    return StateVector(v, tuple(labels))


def ghz(x: int, y: int, labels=("q0", "q1", "q2")) -> StateVector:
    """GHZ-family member ``(|0 x x> + (-1)**y |1 ~x ~x>) / sqrt(2)``."""
    x, y = _check_bit(x, "x"), _check_bit(y, "y")
    v = np.zeros(8, dtype=np.complex128)
    v[3 * x] = 1.0 / _SQRT2
    v[4 + 3 * (1 - x)] = (-1.0) ** y / _SQRT2
    return StateVector(v, tuple(labels))


def w(x: int, y: int, labels=("q0", "q1", "q2")) -> StateVector:
    """W-family member ``(|x 1 0> + |x 0 1> + (-1)**y sqrt(2) |~x 0 0>) / 2``."""
    x, y = _check_bit(x, "x"), _check_bit(y, "y")
    v = np.zeros(8, dtype=np.complex128)
    v[4 * x + 2] = 0.5
    v[4 * x + 1] = 0.5
    v[4 * (1 - x)] = (-1.0) ** y * _SQRT2 / 2.0
    return StateVector(v, tuple(labels))


@dataclass(frozen=True)
class BasisFamily:
    """An orthonormal four-member measurement family.

    ``members`` maps ``(x, y)`` to the member state, in the fixed order
    ``(0,0), (0,1), (1,0), (1,1)``.  ``subspace_dim`` is always 4;
    ``ambient_dim`` is the dimension of the space the members live in.
    """

    name: str
    members: dict
    ambient_dim: int
    subspace_dim: int = 4

    def __post_init__(self) -> None:
        if tuple(self.members) != _BIT_PAIRS:
            raise ValueError(f"family members must be keyed by {_BIT_PAIRS}")
        vecs = [m.amplitudes for m in self.members.values()]
        gram = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
        if np.max(np.abs(gram - np.eye(4))) > ATOL_STRICT:
            raise ValueError(f"family {self.name!r} is not orthonormal")

    def member(self, bits) -> StateVector:
        return self.members[tuple(bits)]


def bell_family() -> BasisFamily:
    return BasisFamily("bell", {xy: phi(*xy) for xy in _BIT_PAIRS}, ambient_dim=4)


def ghz_family() -> BasisFamily:
    return BasisFamily("ghz", {xy: ghz(*xy) for xy in _BIT_PAIRS}, ambient_dim=8)


def w_family() -> BasisFamily:
    return BasisFamily("w", {xy: w(*xy) for xy in _BIT_PAIRS}, ambient_dim=8)


_FAMILIES = {"bell": bell_family, "ghz": ghz_family, "w": w_family}


def family(name: str) -> BasisFamily:
    """Look up a measurement family by channel name (``bell``, ``ghz``, ``w``)."""
    try:
        return _FAMILIES[name]()
    except KeyError:
        raise ValueError(
            f"unknown family {name!r}; known families: {sorted(_FAMILIES)}"
        ) from None


def initial_state(channel: str) -> StateVector:
    """The shared entanglement before any encoding.

    Two copies of the channel's ``(0, 0)`` member: the first is shared by
    the sender qubit ``A1`` and receiver Bob, the second by ``A2`` and
    receiver Charlie.
    """
    if channel == "bell":
        return tensor(phi(0, 0, ("A1", "B")), phi(0, 0, ("A2", "C")))
    if channel == "ghz":
        return tensor(ghz(0, 0, ("A1", "B1", "B2")), ghz(0, 0, ("A2", "C1", "C2")))
    if channel == "w":
        return tensor(w(0, 0, ("A1", "B1", "B2")), w(0, 0, ("A2", "C1", "C2")))
    raise ValueError(f"unknown channel {channel!r}; expected bell, ghz or w")


# Named states addressable from the command line: phi00 ... w11.
def named_state(name: str) -> StateVector:
    makers = {"phi": phi, "ghz": ghz, "w": w}
    for prefix, maker in makers.items():
        if name.startswith(prefix) and len(name) == len(prefix) + 2:
            bits = name[len(prefix):]
            if all(c in "01" for c in bits):
                return maker(int(bits[0]), int(bits[1]))
    known = [f"{p}{x}{y}" for p in makers for (x, y) in _BIT_PAIRS]
    raise ValueError(f"unknown state {name!r}; known states: {', '.join(known)}")
