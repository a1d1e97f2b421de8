"""Step engines for locked simultaneous dense coding and teleportation.

Dense coding (one sender Alice holding ``A1``/``A2``, receivers Bob and
Charlie) runs four steps::

    step1_encode     Alice applies a Pauli encoder per receiver message
    step2_lock_send  Alice locks (A1, A2) with a joint unitary and transmits
    step3_unlock     Bob and Charlie jointly apply the inverse lock
    step4_measure    each receiver measures his subsystem in the channel family

Teleportation (payloads on ``T1..TN``, receivers on ``B..``/``B1..BN``)
runs five::

    step1_lock            Alice locks her halves (A1..AN) of the shared pairs
    step2_bsm             Alice Bell-measures each (Ai, Ti) pair
    step3_classical_send  the two result bits per pair go to their receiver
    step4_unlock          the receivers jointly invert the effective lock
    step5_correct         each receiver applies his own Pauli encoder

Transcripts record a snapshot per step, the standard intercepted reduced
matrices, and the measured / decoded outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gates, states
from .measurement import enumerate_branches, measure_in_family, resolve_rng
from .qlinalg import (
    ATOL,
    DensityMatrix,
    StateVector,
    Unitary,
    apply,
    contract,
    fidelity,
    partial_trace,
    tensor,
    to_wire,
)

_DENSE_CHANNELS = {
    "bell": {"bob": ("A1", "B"), "charlie": ("A2", "C")},
    "ghz": {"bob": ("A1", "B1", "B2"), "charlie": ("A2", "C1", "C2")},
    "w": {"bob": ("A1", "B1", "B2"), "charlie": ("A2", "C1", "C2")},
}

_LOCKS = {"qft": lambda: gates.qft(2), "ulock": gates.lock_operator}

DENSE_STEPS = (
    "step0_init",
    "step1_encode",
    "step2_lock_send",
    "step3_unlock",
    "step4_measure",
)

TELEPORT_STEPS = (
    "step0_init",
    "step1_lock",
    "step2_bsm",
    "step3_classical_send",
    "step4_unlock",
    "step5_correct",
)


@dataclass(frozen=True)
class DenseCodingInput:
    """Configuration of one dense coding run."""

    channel: str
    bob_bits: gates.EncodedBits
    charlie_bits: gates.EncodedBits
    lock: str = "qft"

    def __post_init__(self) -> None:
        if self.channel not in _DENSE_CHANNELS:
            raise ValueError(
                f"unknown channel {self.channel!r}; expected one of {sorted(_DENSE_CHANNELS)}"
            )
        if self.lock not in _LOCKS:
            raise ValueError(f"unknown lock {self.lock!r}; expected one of {sorted(_LOCKS)}")
        object.__setattr__(self, "bob_bits", gates.as_bits(self.bob_bits))
        object.__setattr__(self, "charlie_bits", gates.as_bits(self.charlie_bits))


@dataclass(frozen=True)
class TeleportInput:
    """Configuration of one simultaneous teleportation run.

    ``scheme`` is ``ulock2`` (two receivers, Hadamard--CNOT lock) or ``qftN``
    (1..6 receivers, Fourier lock).  ``payloads`` are the single-qubit states
    to teleport, one per receiver.
    """

    scheme: str
    payloads: tuple[StateVector, ...]
    n_receivers: int

    def __post_init__(self) -> None:
        payloads = tuple(self.payloads)
        if self.scheme == "ulock2":
            if self.n_receivers != 2:
                raise ValueError("the ulock2 scheme has exactly 2 receivers")
        elif self.scheme == "qftN":
            if not 1 <= self.n_receivers <= 6:
                raise ValueError(
                    f"qftN supports 1..6 receivers, got {self.n_receivers}"
                )
        else:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected ulock2 or qftN")
        if len(payloads) != self.n_receivers:
            raise ValueError(
                f"{self.n_receivers} receivers need {self.n_receivers} payloads,"
                f" got {len(payloads)}"
            )
        for p in payloads:
            if p.n_qubits != 1:
                raise ValueError("payloads must be single-qubit states")
        object.__setattr__(self, "payloads", payloads)


@dataclass
class ProtocolTranscript:
    """Record of one protocol run.

    ``steps`` holds ``(step_name, full-register snapshot)`` in execution
    order; ``intercepts`` maps ``(stage, subsystem labels)`` to the reduced
    density matrix an eavesdropper (or lone receiver) would hold there.
    """

    protocol: str
    steps: list[tuple[str, StateVector]] = field(default_factory=list)
    intercepts: dict[tuple[str, tuple[str, ...]], DensityMatrix] = field(default_factory=dict)
    outcomes: dict = field(default_factory=dict)
    seed: int | None = None

    def step_state(self, name: str) -> StateVector:
        for step_name, snapshot in self.steps:
            if step_name == name:
                return snapshot
        raise KeyError(f"no step named {name!r}; steps are {[s for s, _ in self.steps]}")

    def to_dict(self, include_snapshots: bool = False) -> dict:
        steps = [
            {"name": name, "state": to_wire(snap)} if include_snapshots else {"name": name}
            for name, snap in self.steps
        ]
        intercepts = {
            f"{stage}/{','.join(labels)}": to_wire(rho)
            for (stage, labels), rho in self.intercepts.items()
        }
        return {
            "protocol": self.protocol,
            "seed": self.seed,
            "steps": steps,
            "intercepts": intercepts,
            "outcomes": _jsonable(self.outcomes),
        }


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (DensityMatrix, StateVector, Unitary)):
        return to_wire(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    return value


def intercept_reduced(
    transcript: ProtocolTranscript, stage: str, subsystem
) -> DensityMatrix:
    """Reduced density matrix of a recorded snapshot on ``subsystem``."""
    return partial_trace(transcript.step_state(stage), tuple(subsystem))


# --- dense coding -----------------------------------------------------------


def run_dense_coding_with_lock(
    channel: str,
    bob_bits,
    charlie_bits,
    lock: Unitary,
    lock_name: str = "custom",
    seed=0,
) -> ProtocolTranscript:
    """Dense coding with an arbitrary two-qubit locking unitary."""
    if lock.dim != 4:
        raise ValueError(f"the lock acts on (A1, A2) and must be 4x4, got {lock.dim}")
    cfg = _DENSE_CHANNELS[channel]
    fam = states.family(channel)
    rng = resolve_rng(seed)
    seed_val = seed if isinstance(seed, int) else None

    t = ProtocolTranscript(
        protocol=f"dense_coding:{channel}:{lock_name}", seed=seed_val
    )
    state = states.initial_state(channel)
    t.steps.append(("step0_init", state))

    # step 1: Alice encodes one message per receiver on her qubits
    state = apply(state, gates.pauli_encoder(bob_bits), ("A1",))
    state = apply(state, gates.pauli_encoder(charlie_bits), ("A2",))
    t.steps.append(("step1_encode", state))

    # step 2: joint lock on (A1, A2); the qubits are then in transit, so
    # record what each receiver's subsystem alone reveals
    state = apply(state, lock, ("A1", "A2"))
    t.steps.append(("step2_lock_send", state))
    for sub in (cfg["bob"], cfg["charlie"]):
        t.intercepts[("step2_lock_send", sub)] = partial_trace(state, sub)

    # step 3: the receivers jointly invert the lock
    state = apply(state, gates.adjoint(lock), ("A1", "A2"))
    t.steps.append(("step3_unlock", state))

    # step 4: each receiver measures his subsystem in the channel family
    bob_out = measure_in_family(state, fam, cfg["bob"], rng)
    charlie_out = measure_in_family(bob_out.post_state, fam, cfg["charlie"], rng)
    t.steps.append(("step4_measure", charlie_out.post_state))
    t.outcomes = {"bob": bob_out.label, "charlie": charlie_out.label}
    return t


def run_dense_coding(inp: DenseCodingInput, seed=0) -> ProtocolTranscript:
    """Run one dense coding protocol with a named lock (``qft`` or ``ulock``)."""
    return run_dense_coding_with_lock(
        inp.channel,
        inp.bob_bits,
        inp.charlie_bits,
        _LOCKS[inp.lock](),
        lock_name=inp.lock,
        seed=seed,
    )


# --- teleportation ----------------------------------------------------------


@dataclass(frozen=True)
class TeleportBranch:
    """One joint Bell-measurement branch of a teleportation run.

    ``pre_unlock_state`` is the receiver register right after the sender's
    measurements collapse it (before any classical message is used);
    ``corrected_state`` is the same register after unlock and per-receiver
    correction, which should equal the payload product up to global phase.
    """

    results: tuple[gates.EncodedBits, ...]
    probability: float
    pre_unlock_state: StateVector
    corrected_state: StateVector
    fidelities: tuple[float, ...]


def _teleport_layout(scheme: str, n: int):
    t_labels = tuple(f"T{i + 1}" for i in range(n))
    a_labels = tuple(f"A{i + 1}" for i in range(n))
    if scheme == "ulock2":
        r_labels = ("B", "C")
        lock = gates.lock_operator()
    else:
        r_labels = tuple(f"B{i + 1}" for i in range(n))
        lock = gates.qft(n)
    # The joint state picked up by the receivers carries the transpose of the
    # lock, so the inverse they must apply is its elementwise conjugate.  For
    # the (real) Hadamard--CNOT lock that is the lock itself; for the
    # (symmetric) Fourier lock it is the ordinary adjoint.
    unlock = Unitary(lock.entries.conj())
    return t_labels, a_labels, r_labels, lock, unlock


def _teleport_initial(payloads, t_labels, a_labels, r_labels) -> StateVector:
    state = StateVector(payloads[0].amplitudes, (t_labels[0],))
    for i in range(1, len(payloads)):
        state = tensor(state, StateVector(payloads[i].amplitudes, (t_labels[i],)))
    for a, r in zip(a_labels, r_labels):
        state = tensor(state, states.phi(0, 0, (a, r)))
    return state


def run_teleportation(inp: TeleportInput, seed=0) -> ProtocolTranscript:
    """Run one teleportation protocol, sampling each Bell measurement.

    The recorded ``step2_bsm`` intercepts are the physical per-branch reduced
    states, conditioned on *all* measurement results of this run.  What a
    receiver can actually infer before the unlock -- knowing only his own
    classical bits -- is the average over the other receivers' results; that
    epistemic view is what the lock classifier in :mod:`simulq.analysis`
    evaluates.
    """
    n = inp.n_receivers
    t_labels, a_labels, r_labels, lock, unlock = _teleport_layout(inp.scheme, n)
    rng = resolve_rng(seed)
    seed_val = seed if isinstance(seed, int) else None
    bell = states.bell_family()

    t = ProtocolTranscript(protocol=f"teleportation:{inp.scheme}:n={n}", seed=seed_val)
    state = _teleport_initial(inp.payloads, t_labels, a_labels, r_labels)
    t.steps.append(("step0_init", state))

    # step 1: Alice locks her halves of the shared pairs
    state = apply(state, lock, a_labels)
    t.steps.append(("step1_lock", state))

    # step 2: Bell measurement on each (Ai, Ti) pair
    results = []
    for a, tl in zip(a_labels, t_labels):
        out = measure_in_family(state, bell, (a, tl), rng)
        results.append(gates.as_bits(out.label))
        state = out.post_state
    t.steps.append(("step2_bsm", state))
    for r in r_labels:
        t.intercepts[("step2_bsm", (r,))] = partial_trace(state, (r,))

    # step 3: the classical result bits travel to their receivers
    t.steps.append(("step3_classical_send", state))

    # step 4: joint unlock on the receiver register
    state = apply(state, unlock, r_labels)
    t.steps.append(("step4_unlock", state))

    # step 5: each receiver re-applies his own encoder
    for bits, r in zip(results, r_labels):
        state = apply(state, gates.pauli_encoder(bits), (r,))
    t.steps.append(("step5_correct", state))

    recovered = {r: partial_trace(state, (r,)) for r in r_labels}
    t.outcomes = {
        "results": {r: results[i] for i, r in enumerate(r_labels)},
        "fidelities": {
            r: fidelity(inp.payloads[i], recovered[r]) for i, r in enumerate(r_labels)
        },
        "recovered": recovered,
    }
    return t


def run_teleportation_ulock(inp: TeleportInput, seed=0) -> ProtocolTranscript:
    if inp.scheme != "ulock2":
        raise ValueError(f"expected an ulock2 input, got scheme {inp.scheme!r}")
    return run_teleportation(inp, seed)


def run_teleportation_qft(inp: TeleportInput, seed=0) -> ProtocolTranscript:
    if inp.scheme != "qftN":
        raise ValueError(f"expected a qftN input, got scheme {inp.scheme!r}")
    return run_teleportation(inp, seed)


def enumerate_teleportation_with_lock(
    payloads, lock: Unitary, unlock: Unitary, receiver_labels=None
) -> list[TeleportBranch]:
    """Exhaustively enumerate every joint Bell branch for an arbitrary lock.

    ``payloads`` is one single-qubit state per receiver; ``lock`` acts on the
    sender qubits (A1..AN) and ``unlock`` on the receiver register.  Used both
    by the named schemes and to probe candidate locking operators.
    """
    payloads = tuple(payloads)
    n = len(payloads)
    if lock.dim != 1 << n or unlock.dim != 1 << n:
        raise ValueError(
            f"{n} receivers need {1 << n}-dimensional lock/unlock operators"
        )
    t_labels = tuple(f"T{i + 1}" for i in range(n))
    a_labels = tuple(f"A{i + 1}" for i in range(n))
    if receiver_labels is None:
        receiver_labels = ("B", "C") if n == 2 else tuple(f"B{i + 1}" for i in range(n))
    r_labels = tuple(receiver_labels)
    if len(r_labels) != n:
        raise ValueError(f"{n} receivers need {n} receiver labels, got {r_labels}")
    bell = states.bell_family()

    state = _teleport_initial(payloads, t_labels, a_labels, r_labels)
    state = apply(state, lock, a_labels)

    # Walk the branch tree: measuring pair i drops (Ai, Ti) from the register,
    # so each leaf ends on exactly the receiver register.
    frontier = [((), 1.0, state)]
    for a, tl in zip(a_labels, t_labels):
        grown = []
        for labels_so_far, prob, st in frontier:
            for (x, y), member in bell.members.items():
                residual, rest = contract(st, member.amplitudes, (a, tl))
                p = float(np.sum(np.abs(residual) ** 2))
                if p <= ATOL:
                    continue
                nxt = StateVector(residual / np.sqrt(p), rest)
                grown.append((labels_so_far + (gates.EncodedBits(x, y),), prob * p, nxt))
        frontier = grown

    branches = []
    for results, prob, pre_unlock in frontier:
        corrected = apply(pre_unlock, unlock, r_labels)
        for bits, r in zip(results, r_labels):
            corrected = apply(corrected, gates.pauli_encoder(bits), (r,))
        fids = tuple(
            fidelity(payloads[i], partial_trace(corrected, (r,)))
            for i, r in enumerate(r_labels)
        )
        branches.append(TeleportBranch(results, prob, pre_unlock, corrected, fids))
    return branches


def enumerate_teleportation(inp: TeleportInput) -> list[TeleportBranch]:
    """Exhaustively enumerate the joint Bell branches of a named scheme."""
    _, _, r_labels, lock, unlock = _teleport_layout(inp.scheme, inp.n_receivers)
    return enumerate_teleportation_with_lock(inp.payloads, lock, unlock, r_labels)
