"""Command-line front end: ``run``, ``verify``, ``order`` and ``bench``.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import statistics
import sys
from collections import defaultdict
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import bench as benchmod
from .circuit import Circuit, CircuitError, generate_random_circuit, generate_wchain_zxz, parse_circuit
from .density import measure_z, rho00
from .oracle import density_from_statevector, simulate_statevector
from .simulator import PStabilizer, default_jobs, order_trace

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3
VERIFY_TOL = 1e-9
ORACLE_MAX_QUBITS = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=default_jobs(), help="worker threads (default: all cores)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for generated circuits")


def _add_circuit_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--circuit", type=Path, help="circuit file")
    p.add_argument("--ansatz", choices=["wchain-zxz", "random"], help="generate a circuit instead of reading one")
    p.add_argument("--qubits", type=int, default=2)
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--gates", type=int, default=100, help="gate count for --ansatz random")


def load_circuit(args) -> Circuit:
    if (args.circuit is None) == (args.ansatz is None):
        raise UsageError("give exactly one of --circuit or --ansatz")
    if args.circuit is not None:
        return parse_circuit(args.circuit.read_text(encoding="utf-8"))
    if args.ansatz == "wchain-zxz":
        return generate_wchain_zxz(args.qubits, args.layers, args.repeats, args.seed)
    return generate_random_circuit(args.qubits, args.gates, args.seed)


def cmd_run(args) -> int:
    circuit = load_circuit(args)
    res = PStabilizer(args.threads).run(circuit)
    dm = res.density
    problems = dm.check(VERIFY_TOL)
    print(f"qubits={circuit.n} gates={len(circuit)} K={res.K} Kp={res.Kp}")
    print(f"trace={dm.trace().real:.12f} rho00={rho00(dm):.12f}")
    for k in range(circuit.n):
        print(f"p0[{k}]={measure_z(dm, k):.12f}")
    print(" ".join(f"{stage}_ms={1e3 * t:.3f}" for stage, t in res.timings.items()))
    if problems:
        for msg in problems:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_VERIFY
    if args.out is not None:
        dm.write(args.out, args.format)
        print(f"wrote {args.out} ({args.format})")
    return EXIT_OK


def cmd_verify(args) -> int:
    circuit = load_circuit(args)
    if circuit.n > ORACLE_MAX_QUBITS:
        raise UsageError(f"oracle limited to {ORACLE_MAX_QUBITS} qubits, circuit has {circuit.n}")
    rho = PStabilizer(args.threads).run(circuit).density.rho
    ref = density_from_statevector(simulate_statevector(circuit)).rho
    dist = float(np.linalg.norm(rho - ref))
    ok = dist <= args.tol
    print(f"qubits={circuit.n} gates={len(circuit)} frobenius={dist:.3e} tol={args.tol:.1e} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_order(args) -> int:
    circuit = load_circuit(args)
    lines = ["gate_idx,stabilizer_idx,order"]
    lines += [f"{g},{s},{o}" for g, s, o in order_trace(circuit)]
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    records = benchmod.run_sweep(
        args.qubits, args.layers, args.repeats, args.runs, args.threads, args.seed, args.baseline == "on"
    )
    collected = []

    def tee():
        for rec in records:
            collected.append(rec)
            yield rec

    if args.csv is None:
        benchmod.write_csv(tee(), sys.stdout)
    else:
        with open(args.csv, "w", newline="") as fh:
            benchmod.write_csv(tee(), fh)
    medians = defaultdict(list)
    for rec in collected:
        medians[(rec.n, rec.layers, rec.repeats, rec.stage)].append(rec.time_ms)
    out = sys.stderr if args.csv is None else sys.stdout
    for (n, L, R, stage), times in sorted(medians.items()):
        print(f"n={n} layers={L} repeats={R} {stage}: median {statistics.median(times):.3f} ms", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pstabilizer", description="Parallel extended-stabilizer circuit simulator.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="simulate a circuit to its density matrix")
    _add_circuit_source(p)
    _add_common(p)
    p.add_argument("--out", type=Path, help="write rho here")
    p.add_argument("--format", choices=["csv", "bin"], default="csv")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="compare against the dense state-vector oracle")
    _add_circuit_source(p)
    _add_common(p)
    p.add_argument("--tol", type=float, default=VERIFY_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("order", help="stabilizer order after every gate (CSV)")
    _add_circuit_source(p)
    _add_common(p)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("bench", help="layer/repeat sweep of the W_chain+ZXZ ansatz")
    _add_common(p)
    p.add_argument("--qubits", type=_int_list, default=[2, 3, 4])
    p.add_argument("--layers", type=_int_list, default=[100, 200, 300, 400, 500, 600, 700, 800, 900, 1000])
    p.add_argument("--repeats", type=_int_list, default=[1])
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--csv", type=Path)
    p.add_argument("--baseline", choices=["on", "off"], default="on")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CircuitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
