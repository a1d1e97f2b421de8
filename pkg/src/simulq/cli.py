"""Command line front end.

``simulq run`` executes one protocol and prints its transcript; ``simulq
verify`` machine-checks the locking claims and exits 0 only when every
check passes; ``simulq dump-gate`` / ``simulq dump-state`` print named
operators and states in the JSON wire format, which ``verify lock
--matrix`` accepts back.

Exit codes: 0 success (or verification PASS), 1 protocol violation or
verification FAIL, 2 bad usage or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import gates, states
from .analysis import classify_locking_unitary, verify_counterexample, verify_theorem
from .measurement import ProtocolViolation
from .protocols import (
    DenseCodingInput,
    TeleportInput,
    run_dense_coding,
    run_teleportation,
)
from .qlinalg import StateVector, Unitary, to_wire, unitary_from_wire

_ULOCK_WARNING = (
    "warning: the hadamard-cnot lock leaks bob's first bit and charlie's second"
    " bit to anyone holding their qubits; use it to study the failure, not to hide data"
)


def _parse_bits(text: str) -> tuple[int, int, int, int]:
    if text is None:
        raise ValueError("--bits is required with --protocol (four bits, e.g. --bits 1001)")
    if len(text) != 4 or any(c not in "01" for c in text):
        raise ValueError(f"--bits wants exactly four 0/1 characters, got {text!r}")
    b = tuple(int(c) for c in text)
    return b  # type: ignore[return-value]


def _amplitude(value) -> complex:
    if isinstance(value, dict):
        return complex(value.get("re", 0.0), value.get("im", 0.0))
    if isinstance(value, (list, tuple)):
        if not 1 <= len(value) <= 2:
            raise ValueError(f"amplitude must be [re] or [re, im], got {value!r}")
        return complex(value[0], value[1] if len(value) == 2 else 0.0)
    return complex(value)


def _load_payloads(path: str, n: int) -> tuple[StateVector, ...]:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list) or len(data) != n:
        raise ValueError(f"--states file must hold a list of {n} single-qubit states")
    payloads = []
    for i, entry in enumerate(data):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ValueError(f"payload {i + 1} needs exactly 2 amplitudes")
        vec = np.array([_amplitude(a) for a in entry], dtype=complex)
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise ValueError(f"payload {i + 1} is the zero vector")
        if abs(norm - 1.0) > 1e-6:
            print(
                f"warning: payload {i + 1} renormalized (norm was {norm:.6g})",
                file=sys.stderr,
            )
        payloads.append(StateVector(vec / norm, (f"T{i + 1}",)))
    return tuple(payloads)


def _default_payloads(n: int) -> tuple[StateVector, ...]:
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    return tuple(StateVector(plus, (f"T{i + 1}",)) for i in range(n))


def _load_unitary(path: str) -> Unitary:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "re" not in data:
        raise ValueError("--matrix file must be a JSON object with re/im entries")
    if "shape" in data:
        return unitary_from_wire(data)
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    return Unitary(re + 1j * im)


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _fmt_entry(re: float, im: float) -> str:
    re, im = round(re, 4) + 0.0, round(im, 4) + 0.0
    if im == 0.0:
        return f"{re:g}"
    if re == 0.0:
        return f"{im:g}i"
    return f"{re:g}{im:+g}i"


def _matrix_rows(wire: dict) -> list[str]:
    rows = []
    for re_row, im_row in zip(wire["re"], wire["im"]):
        rows.append("  ".join(_fmt_entry(r, i) for r, i in zip(re_row, im_row)))
    width = max(len(r) for r in rows)
    return [f"    {r:<{width}}" for r in rows]


def _render_run_table(payload: dict) -> str:
    lines = [
        f"protocol   {payload['protocol']}",
        f"seed       {payload['seed']}",
        "steps      " + " -> ".join(step["name"] for step in payload["steps"]),
    ]
    outcomes = payload["outcomes"]
    if "bob" in outcomes:
        lines.append(f"bob        decoded {''.join(map(str, outcomes['bob']))}")
        lines.append(f"charlie    decoded {''.join(map(str, outcomes['charlie']))}")
    if "results" in outcomes:
        for label in sorted(outcomes["results"]):
            bits = "".join(map(str, outcomes["results"][label]))
            fid = outcomes["fidelities"][label]
            lines.append(f"{label:10} result {bits}  fidelity {fid:.4f}")
    for key in sorted(payload.get("intercepts", {})):
        stage, _, labels = key.partition("/")
        lines.append(f"intercepted view on ({labels}) after {stage}:")
        lines.extend(_matrix_rows(payload["intercepts"][key]))
    return "\n".join(lines)


def _render_report_table(payload: dict) -> str:
    lines = [f"protocol   {payload['protocol']}", f"lock       {payload['lock_used']}"]
    for name, ok in payload["checks"].items():
        lines.append(f"  {'ok  ' if ok else 'FAIL'} {name}")
    for name, sub in payload["per_subsystem"].items():
        found = sub["recoverable_bits"] + sub["leaky_bits"]
        state = "reveals " + ",".join(found) if found else "reveals nothing"
        lines.append(f"  view {name}: {state} (max diff {sub['max_pairwise_diff']:.3e})")
    lines.append(f"valid lock {payload['valid_lock']}")
    lines.append("result     " + ("PASS" if payload["passed"] else "FAIL"))
    return "\n".join(lines)


def _cmd_run(args: argparse.Namespace) -> int:
    if args.protocol is not None:
        bits = _parse_bits(args.bits)
        inp = DenseCodingInput(args.protocol, bits[:2], bits[2:], lock=args.lock)
        if args.lock == "ulock":
            print(_ULOCK_WARNING, file=sys.stderr)
        transcript = run_dense_coding(inp, seed=args.seed)
    else:
        if args.bits is not None:
            raise ValueError("--bits applies to dense coding, not --teleport")
        scheme = "ulock2" if args.teleport == "ulock" else "qftN"
        if args.states:
            payloads = _load_payloads(args.states, args.n)
        else:
            payloads = _default_payloads(args.n)
        inp = TeleportInput(scheme, payloads, args.n)
        transcript = run_teleportation(inp, seed=args.seed)
    payload = transcript.to_dict(include_snapshots=args.snapshots)
    if args.format == "json":
        _emit_json(payload)
    else:
        print(_render_run_table(payload))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.what == "theorem":
        report = verify_theorem(args.protocol)
    elif args.what == "counterexample":
        report = verify_counterexample(seed=args.seed)
    else:
        unitary = _load_unitary(args.matrix)
        report = classify_locking_unitary(unitary, args.task, channel=args.channel)
    payload = report.to_dict()
    if args.format == "json":
        _emit_json(payload)
    else:
        print(_render_report_table(payload))
    return 0 if report.passed else 1


def _cmd_dump_gate(args: argparse.Namespace) -> int:
    _emit_json(to_wire(gates.named_gate(args.name, args.n)))
    return 0


def _cmd_dump_state(args: argparse.Namespace) -> int:
    if args.name in ("bell", "ghz", "w"):
        state = states.initial_state(args.name)
    else:
        state = states.named_state(args.name)
    _emit_json(to_wire(state))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulq",
        description="simultaneous dense coding and teleportation with locked channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one protocol and print its transcript")
    which = run.add_mutually_exclusive_group(required=True)
    which.add_argument("--protocol", choices=("bell", "ghz", "w"), help="dense coding channel")
    which.add_argument("--teleport", choices=("qft", "ulock"), help="teleportation scheme")
    run.add_argument("--bits", help="four message bits b1 b2 c1 c2, e.g. 1001 (dense coding)")
    run.add_argument(
        "--lock", choices=("qft", "ulock"), default="qft", help="dense coding lock (default qft)"
    )
    run.add_argument(
        "--n", type=int, default=2, help="receiver count for --teleport (qft: 1..6, ulock: 2)"
    )
    run.add_argument(
        "--states",
        help="JSON file with one [re+im, re+im] amplitude pair per payload"
        " (default: every payload is (|0>+|1>)/sqrt(2))",
    )
    run.add_argument("--seed", type=int, default=0, help="measurement seed (default 0)")
    run.add_argument("--format", choices=("json", "table"), default="json")
    run.add_argument(
        "--snapshots", action="store_true", help="include full register snapshots per step"
    )
    run.set_defaults(func=_cmd_run)

    verify = sub.add_parser("verify", help="machine-check the locking claims")
    vsub = verify.add_subparsers(dest="what", required=True)
    v_theorem = vsub.add_parser(
        "theorem", help="locked dense coding reveals nothing to either receiver"
    )
    v_theorem.add_argument("--protocol", choices=("bell", "ghz", "w"), required=True)
    v_counter = vsub.add_parser(
        "counterexample", help="the hadamard-cnot lock leaks one bit per receiver"
    )
    v_counter.add_argument("--seed", type=int, default=1789, help="support-measurement seed")
    v_lock = vsub.add_parser("lock", help="classify an arbitrary 4x4 unitary as a channel lock")
    v_lock.add_argument("--matrix", required=True, help="JSON file holding the matrix")
    v_lock.add_argument("--task", choices=("dense_coding", "teleportation"), required=True)
    v_lock.add_argument("--channel", choices=("bell", "ghz", "w"), default="bell")
    for vp in (v_theorem, v_counter, v_lock):
        vp.add_argument("--format", choices=("json", "table"), default="json")
        vp.set_defaults(func=_cmd_verify)

    dump_gate = sub.add_parser("dump-gate", help="print a named gate as JSON")
    dump_gate.add_argument("name", help="u00|u01|u10|u11|hadamard|cnot|ulock|qft|identity")
    dump_gate.add_argument("--n", type=int, default=None, help="qubit count for qft/identity")
    dump_gate.set_defaults(func=_cmd_dump_gate)

    dump_state = sub.add_parser("dump-state", help="print a named state as JSON")
    dump_state.add_argument(
        "name", help="family member like phi01/ghz10/w11, or bell|ghz|w for a full channel"
    )
    dump_state.set_defaults(func=_cmd_dump_state)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProtocolViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
