"""Layer/repeat sweeps of the W_chain+ZXZ ansatz, emitting raw per-stage timing rows."""

from __future__ import annotations

import csv
import gc
import io
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Iterator, Optional, TextIO

from .circuit import generate_wchain_zxz
from .simulator import PStabilizer

STAGES = ("encode", "map", "decode", "total")


@dataclass
class BenchRecord:
    n: int
    layers: int
    repeats: int
    gates: int
    K: int
    Kp: int
    stage: str
    time_ms: float
    run_idx: int
    threads: int


CSV_FIELDS = [f.name for f in fields(BenchRecord)]


def bench_config(
    n: int,
    layers: int,
    repeats: int = 1,
    runs: int = 10,
    threads: int = 1,
    seed: Optional[int] = 0,
    baseline: bool = True,
) -> Iterator[BenchRecord]:
    """Time ``runs`` repetitions of the grouped pipeline (and the gate-by-gate baseline)."""
    circuit = generate_wchain_zxz(n, layers, repeats, seed)
    grouped = PStabilizer(threads, fuse=True)
    plain = PStabilizer(threads, fuse=False)
    for run_idx in range(runs):
        gc.collect()
        res = grouped.run(circuit)
        common = dict(n=n, layers=layers, repeats=repeats, gates=len(circuit), K=res.K, Kp=res.Kp, run_idx=run_idx, threads=threads)
        for stage in STAGES:
            yield BenchRecord(stage=stage, time_ms=1e3 * res.timings[stage], **common)
        if baseline:
            gc.collect()
            base = plain.run(circuit)
            yield BenchRecord(stage="baseline_total", time_ms=1e3 * base.timings["total"], **common)


def run_sweep(
    qubits: Iterable[int],
    layers: Iterable[int],
    repeats: Iterable[int],
    runs: int = 10,
    threads: int = 1,
    seed: Optional[int] = 0,
    baseline: bool = True,
) -> Iterator[BenchRecord]:
    layers, repeats = list(layers), list(repeats)
    for n in qubits:
        for L in layers:
            for R in repeats:
                yield from bench_config(n, L, R, runs, threads, seed, baseline)


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> int:
    writer = csv.DictWriter(out, fieldnames=CSV_FIELDS)
    writer.writeheader()
    count = 0
    for rec in records:
        row = asdict(rec)
        row["time_ms"] = f"{rec.time_ms:.6f}"
        writer.writerow(row)
        out.flush()
        count += 1
    return count


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()
