"""End-to-end protocol pipelines: dense coding and teleportation."""

from __future__ import annotations

import itertools
import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from simulq import gates
from simulq.protocols import (
    DENSE_STEPS,
    TELEPORT_STEPS,
    DenseCodingInput,
    TeleportInput,
    enumerate_teleportation,
    enumerate_teleportation_with_lock,
    intercept_reduced,
    run_dense_coding,
    run_dense_coding_with_lock,
    run_teleportation,
    run_teleportation_qft,
    run_teleportation_ulock,
)
from simulq.qlinalg import (
    StateVector,
    Unitary,
    apply,
    equal_up_to_global_phase,
    tensor,
)
from tests.conftest import random_state

ALL_ENCODINGS = list(itertools.product((0, 1), repeat=4))

CHANNELS = ("bell", "ghz", "w")


def encoded_payload(payload: StateVector, bits, label: str) -> StateVector:
    u = gates.pauli_encoder(bits).entries
    return StateVector(u @ payload.amplitudes, (label,))


class TestDenseCoding:
    @pytest.mark.parametrize("channel", CHANNELS)
    def test_decode_equals_encode_for_every_message(self, channel):
        for bits in ALL_ENCODINGS:
            t = run_dense_coding(
                DenseCodingInput(channel, bits[:2], bits[2:]), seed=11
            )
            assert t.outcomes["bob"] == bits[:2]
            assert t.outcomes["charlie"] == bits[2:]

    @pytest.mark.parametrize("channel", CHANNELS)
    def test_final_measurement_is_a_single_branch(self, channel):
        # two different seeds must give identical outcomes: nothing is random
        for bits in [(0, 1, 1, 0), (1, 1, 1, 1)]:
            a = run_dense_coding(DenseCodingInput(channel, bits[:2], bits[2:]), seed=0)
            b = run_dense_coding(DenseCodingInput(channel, bits[:2], bits[2:]), seed=997)
            assert a.outcomes == b.outcomes

    def test_step_names(self):
        t = run_dense_coding(DenseCodingInput("bell", (0, 0), (0, 0)), seed=0)
        assert tuple(name for name, _ in t.steps) == DENSE_STEPS
        assert t.protocol == "dense_coding:bell:qft"

    def test_intercepts_recorded_for_both_receivers(self):
        t = run_dense_coding(DenseCodingInput("bell", (1, 0), (0, 1)), seed=0)
        assert ("step2_lock_send", ("A1", "B")) in t.intercepts
        assert ("step2_lock_send", ("A2", "C")) in t.intercepts
        rho = t.intercepts[("step2_lock_send", ("A1", "B"))]
        assert_allclose(rho.entries, np.eye(4) / 4, atol=1e-10)

    def test_intercept_reduced_matches_recorded(self):
        t = run_dense_coding(DenseCodingInput("w", (1, 1), (0, 1)), seed=0)
        recomputed = intercept_reduced(t, "step2_lock_send", ("A2", "C1", "C2"))
        assert_allclose(
            recomputed.entries,
            t.intercepts[("step2_lock_send", ("A2", "C1", "C2"))].entries,
            atol=1e-14,
        )

    @pytest.mark.parametrize("channel", CHANNELS)
    @pytest.mark.parametrize("lock", ["qft", "ulock"])
    def test_unlock_inverts_lock(self, channel, lock):
        # the post-unlock register equals the post-encode register, for every
        # encoding and both named locks
        for bits in ALL_ENCODINGS:
            t = run_dense_coding(
                DenseCodingInput(channel, bits[:2], bits[2:], lock=lock), seed=0
            )
            assert equal_up_to_global_phase(
                t.step_state("step3_unlock"), t.step_state("step1_encode"), tol=1e-10
            )

    def test_full_register_intercept_is_pure(self):
        t = run_dense_coding(DenseCodingInput("ghz", (0, 1), (1, 0)), seed=0)
        rho = intercept_reduced(t, "step3_unlock", t.step_state("step0_init").labels)
        purity = float(np.real(np.trace(rho.entries @ rho.entries)))
        assert purity == pytest.approx(1.0, abs=1e-10)

    def test_unlock_restores_family_member(self):
        # after step 3 the (A1, B) pair is exactly phi(b1, b2) again
        t = run_dense_coding(DenseCodingInput("bell", (1, 0), (1, 1)), seed=0)
        from simulq.qlinalg import partial_trace
        from simulq.states import phi

        rho = partial_trace(t.step_state("step3_unlock"), ("A1", "B"))
        member = phi(1, 0)
        overlap = member.amplitudes.conj() @ rho.entries @ member.amplitudes
        assert overlap == pytest.approx(1.0, abs=1e-10)

    def test_ulock_lock_still_decodes(self):
        for bits in ALL_ENCODINGS:
            t = run_dense_coding(
                DenseCodingInput("bell", bits[:2], bits[2:], lock="ulock"), seed=5
            )
            assert t.outcomes["bob"] == bits[:2]
            assert t.outcomes["charlie"] == bits[2:]

    def test_custom_lock_name_in_protocol_id(self):
        t = run_dense_coding_with_lock(
            "bell", (0, 0), (0, 0), gates.qft(2), lock_name="mylock", seed=0
        )
        assert t.protocol == "dense_coding:bell:mylock"

    def test_rejects_wrong_lock_dimension(self):
        with pytest.raises(ValueError):
            run_dense_coding_with_lock("bell", (0, 0), (0, 0), gates.hadamard(), seed=0)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            DenseCodingInput("bogus", (0, 0), (0, 0))
        with pytest.raises(ValueError):
            DenseCodingInput("bell", (0, 2), (0, 0))
        with pytest.raises(ValueError):
            DenseCodingInput("bell", (0, 0), (0, 0), lock="nope")


class TestUlockCounterexampleViews:
    """The Hadamard--CNOT lock leaves one bit readable per receiver."""

    RHO_B0 = (
        np.array(
            [
                [1, 0, 1, 0],
                [0, 1, 0, -1],
                [1, 0, 1, 0],
                [0, -1, 0, 1],
            ]
        )
        / 4.0
    )
    RHO_B1 = (
        np.array(
            [
                [1, 0, -1, 0],
                [0, 1, 0, 1],
                [-1, 0, 1, 0],
                [0, 1, 0, 1],
            ]
        )
        / 4.0
    )

    def bob_view(self, bits):
        t = run_dense_coding(
            DenseCodingInput("bell", bits[:2], bits[2:], lock="ulock"), seed=0
        )
        return t.intercepts[("step2_lock_send", ("A1", "B"))].entries

    def test_view_matches_conditional_closed_form(self):
        for bits in ALL_ENCODINGS:
            expected = self.RHO_B0 if bits[0] == 0 else self.RHO_B1
            assert_allclose(self.bob_view(bits), expected, atol=1e-10)

    def test_conditional_views_have_orthogonal_supports(self):
        product = self.RHO_B0 @ self.RHO_B1
        assert abs(np.trace(product)) <= 1e-12

    def test_charlie_view_depends_only_on_c2(self):
        views = {}
        for bits in ALL_ENCODINGS:
            t = run_dense_coding(
                DenseCodingInput("bell", bits[:2], bits[2:], lock="ulock"), seed=0
            )
            views[bits] = t.intercepts[("step2_lock_send", ("A2", "C"))].entries
        for a, b in itertools.product(ALL_ENCODINGS, repeat=2):
            diff = np.max(np.abs(views[a] - views[b]))
            if a[3] == b[3]:
                assert diff < 1e-10
        avg0 = np.mean([v for k, v in views.items() if k[3] == 0], axis=0)
        avg1 = np.mean([v for k, v in views.items() if k[3] == 1], axis=0)
        assert abs(np.trace(avg0 @ avg1)) <= 1e-12


class TestTeleportUlock2:
    def test_sixteen_uniform_branches_all_exact(self, rng):
        p1 = random_state(rng, 1, ("p1",))
        p2 = random_state(rng, 1, ("p2",))
        branches = enumerate_teleportation(TeleportInput("ulock2", (p1, p2), 2))
        assert len(branches) == 16
        assert sorted(br.results for br in branches) == sorted(
            itertools.product(itertools.product((0, 1), repeat=2), repeat=2)
        )
        for br in branches:
            assert br.probability == pytest.approx(1 / 16, abs=1e-12)
            assert all(f == pytest.approx(1.0, abs=1e-10) for f in br.fidelities)

    def test_pre_unlock_state_is_locked_encoded_payloads(self, rng):
        # collapsed (B, C) register == ULOCK^dagger (U(x1y1)|p1> x U(x2y2)|p2>)
        # up to a global phase, for every branch
        p1 = random_state(rng, 1, ("p1",))
        p2 = random_state(rng, 1, ("p2",))
        unlock = Unitary(gates.lock_operator().entries.conj().T)
        for br in enumerate_teleportation(TeleportInput("ulock2", (p1, p2), 2)):
            enc = tensor(
                encoded_payload(p1, br.results[0], "B"),
                encoded_payload(p2, br.results[1], "C"),
            )
            expected = apply(enc, unlock, ("B", "C"))
            assert equal_up_to_global_phase(br.pre_unlock_state, expected)

    def test_sampled_run_recovers_both_payloads(self, rng):
        p1 = random_state(rng, 1, ("p1",))
        p2 = random_state(rng, 1, ("p2",))
        t = run_teleportation_ulock(TeleportInput("ulock2", (p1, p2), 2), seed=42)
        assert tuple(name for name, _ in t.steps) == TELEPORT_STEPS
        assert set(t.outcomes["results"]) == {"B", "C"}
        for fid in t.outcomes["fidelities"].values():
            assert fid == pytest.approx(1.0, abs=1e-10)

    def test_scheme_guard(self, rng):
        p = tuple(random_state(rng, 1, (f"p{i}",)) for i in range(2))
        with pytest.raises(ValueError):
            run_teleportation_ulock(TeleportInput("qftN", p, 2), seed=0)
        with pytest.raises(ValueError):
            run_teleportation_qft(TeleportInput("ulock2", p, 2), seed=0)


class TestTeleportQft:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_every_branch_exact(self, rng, n):
        payloads = tuple(random_state(rng, 1, (f"p{i}",)) for i in range(n))
        branches = enumerate_teleportation(TeleportInput("qftN", payloads, n))
        assert len(branches) == 4**n
        for br in branches:
            assert br.probability == pytest.approx(4.0**-n, abs=1e-12)
            assert all(f == pytest.approx(1.0, abs=1e-10) for f in br.fidelities)

    def test_pre_unlock_state_matches_fourier_form(self, rng):
        # collapsed (B1, B2) register == QFT (U(x1y1)|p1> x U(x2y2)|p2>)
        p1 = random_state(rng, 1, ("p1",))
        p2 = random_state(rng, 1, ("p2",))
        for br in enumerate_teleportation(TeleportInput("qftN", (p1, p2), 2)):
            enc = tensor(
                encoded_payload(p1, br.results[0], "B1"),
                encoded_payload(p2, br.results[1], "B2"),
            )
            expected = apply(enc, gates.qft(2), ("B1", "B2"))
            assert equal_up_to_global_phase(br.pre_unlock_state, expected)

    def test_single_receiver_reduces_to_plain_teleportation(self, rng):
        payload = random_state(rng, 1, ("p",))
        t = run_teleportation_qft(TeleportInput("qftN", (payload,), 1), seed=8)
        assert t.outcomes["fidelities"]["B1"] == pytest.approx(1.0, abs=1e-10)

    def test_sampled_runs_n3(self, rng):
        payloads = tuple(random_state(rng, 1, (f"p{i}",)) for i in range(3))
        for seed in range(5):
            t = run_teleportation(TeleportInput("qftN", payloads, 3), seed=seed)
            for fid in t.outcomes["fidelities"].values():
                assert fid == pytest.approx(1.0, abs=1e-10)

    def test_input_validation(self, rng):
        p = tuple(random_state(rng, 1, (f"p{i}",)) for i in range(2))
        with pytest.raises(ValueError):
            TeleportInput("qftN", p, 7)
        with pytest.raises(ValueError):
            TeleportInput("ulock2", p, 3)
        with pytest.raises(ValueError):
            TeleportInput("qftN", p, 3)  # payload count mismatch
        with pytest.raises(ValueError):
            TeleportInput("bogus", p, 2)
        two_qubit = random_state(np.random.default_rng(0), 2, ("x", "y"))
        with pytest.raises(ValueError):
            TeleportInput("qftN", (two_qubit,), 1)

    def test_receiver_label_override(self, rng):
        payloads = tuple(random_state(rng, 1, (f"p{i}",)) for i in range(2))
        lock = gates.qft(2)
        unlock = Unitary(lock.entries.conj())
        branches = enumerate_teleportation_with_lock(
            payloads, lock, unlock, receiver_labels=("R1", "R2")
        )
        assert branches[0].pre_unlock_state.labels == ("R1", "R2")
        with pytest.raises(ValueError):
            enumerate_teleportation_with_lock(payloads, lock, unlock, ("only-one",))


class TestTranscriptSerialization:
    def test_same_seed_is_byte_identical(self):
        def render(seed):
            t = run_dense_coding(DenseCodingInput("ghz", (1, 0), (0, 1)), seed=seed)
            return json.dumps(t.to_dict(include_snapshots=True), sort_keys=True)

        assert render(7) == render(7)

    def test_teleport_transcript_roundtrips_to_json(self, rng):
        payloads = tuple(random_state(rng, 1, (f"p{i}",)) for i in range(2))
        t = run_teleportation(TeleportInput("qftN", payloads, 2), seed=3)
        blob = json.dumps(t.to_dict(include_snapshots=True), sort_keys=True)
        data = json.loads(blob)
        assert data["protocol"] == "teleportation:qftN:n=2"
        assert [s["name"] for s in data["steps"]] == list(TELEPORT_STEPS)

    def test_step_state_unknown_name(self):
        t = run_dense_coding(DenseCodingInput("bell", (0, 0), (0, 0)), seed=0)
        with pytest.raises(KeyError):
            t.step_state("step9_profit")
