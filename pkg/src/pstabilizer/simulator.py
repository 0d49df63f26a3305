"""Encode -> Map -> Decode pipeline with per-stage wall-clock timing."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Optional

from .circuit import Circuit, OperatorSequence, split_operators
from .density import DensityMatrix, to_density
from .engine import Observer, StabilizerState, init_stabilizers, run_map_stage
from .lut import Luts, construct_lut


def default_jobs() -> int:
    return os.cpu_count() or 1


@dataclass
class SimulationResult:
    density: DensityMatrix
    stabilizers: list[StabilizerState]
    sequence: OperatorSequence
    timings: dict[str, float] = field(default_factory=dict)  # seconds

    @property
    def K(self) -> int:
        return self.sequence.K

    @property
    def Kp(self) -> int:
        return self.sequence.Kp


class PStabilizer:
    """Extended-stabilizer simulator producing the exact output density matrix.

    Parameters
    ----------
    n_jobs : int, optional
        Worker threads for the parallel regions (LUT cells, stabilizers, tree
        levels).  Defaults to the number of available cores.
    fuse : bool
        Group consecutive same-kind gates into one operator (default).  With
        ``fuse=False`` every gate is its own operator, the gate-by-gate baseline.
    """

    def __init__(self, n_jobs: Optional[int] = None, fuse: bool = True):
        self.n_jobs = default_jobs() if n_jobs is None else max(1, int(n_jobs))
        self.fuse = fuse

    def encode(self, circuit: Circuit) -> tuple[OperatorSequence, Luts, list[StabilizerState]]:
        seq = split_operators(circuit, fuse=self.fuse)
        luts = construct_lut(seq, self.n_jobs)
        return seq, luts, init_stabilizers(circuit.n)

    def run(self, circuit: Circuit, observer: Optional[Observer] = None) -> SimulationResult:
        t0 = time.perf_counter()
        seq, luts, stabs = self.encode(circuit)
        t1 = time.perf_counter()
        stabs = run_map_stage(stabs, seq, luts, self.n_jobs, observer)
        t2 = time.perf_counter()
        dm = to_density(stabs, self.n_jobs)
        t3 = time.perf_counter()
        timings = {"encode": t1 - t0, "map": t2 - t1, "decode": t3 - t2, "total": t3 - t0}
        return SimulationResult(dm, stabs, seq, timings)


def simulate(circuit: Circuit, n_jobs: int = 1, fuse: bool = True) -> DensityMatrix:
    return PStabilizer(n_jobs, fuse).run(circuit).density


def order_trace(circuit: Circuit) -> list[tuple[int, int, int]]:
    """``(gate_idx, stabilizer_idx, order)`` after every gate, replayed gate by gate."""
    seq = split_operators(circuit, fuse=False)
    luts = construct_lut(seq)
    rows = []

    def record(stab_idx, gate_idx, state):
        rows.append((gate_idx, stab_idx, state.order))

    run_map_stage(init_stabilizers(circuit.n), seq, luts, 1, record)
    rows.sort()
    return rows
