"""Lookup tables for fused operator groups.

``LutNonCX`` holds, for every non-CX group ``k`` and wire ``j``, the images of
``X``, ``Y`` and ``Z`` under all the gates of that group on that wire (a
``K x n x 3 x 4`` tensor).  ``LutCX`` holds, for each ordered (control, target)
pair, the signed permutation of all ``4**n`` string indices.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from .circuit import Instructor, OperatorSequence
from .pauli import (
    CX_OUT_CONTROL,
    CX_OUT_TARGET,
    CX_SIGN,
    apply_gate_to_weights,
    cx_pair_map,
    digit_table,
    index_to_string,
    string_to_index,
)

T = TypeVar("T")
R = TypeVar("R")

_XYZ_BASIS = np.eye(4)[1:]


def parallel_map(func: Callable[[T], R], items: Sequence[T], n_jobs: int = 1) -> list[R]:
    """Order-preserving map over ``items`` using up to ``n_jobs`` threads.

    Items are cut into contiguous chunks, one per worker, so each result is
    produced by exactly one call and the output order never depends on
    scheduling.
    """
    items = list(items)
    if n_jobs <= 1 or len(items) <= 1:
        return [func(it) for it in items]
    n_chunks = min(n_jobs, len(items))
    bounds = np.linspace(0, len(items), n_chunks + 1).astype(int)
    chunks = [items[a:b] for a, b in zip(bounds[:-1], bounds[1:])]
    with ThreadPoolExecutor(max_workers=n_chunks) as pool:
        parts = list(pool.map(lambda chunk: [func(it) for it in chunk], chunks))
    return [r for part in parts for r in part]


def fuse_wire(gates: Iterable[Instructor]) -> np.ndarray:
    """``3 x 4`` images of X, Y, Z after applying ``gates`` (one wire) in order."""
    block = _XYZ_BASIS.copy()
    for ins in gates:
        block = apply_gate_to_weights(block, ins.name, ins.theta)
    return block


@dataclass
class LutNonCX:
    table: np.ndarray  # (K, n, 3, 4)
    group_slot: dict[int, int]  # OperatorGroup.index -> first axis of ``table``
    gate_evaluations: int = 0

    def __post_init__(self):
        K, n = self.table.shape[:2]
        full = np.zeros((K, n, 4, 4))
        full[:, :, 0, 0] = 1.0
        full[:, :, 1:, :] = self.table
        full.setflags(write=False)
        self._full = full

    @property
    def K(self) -> int:
        return self.table.shape[0]

    def wire_tables(self, k: int) -> np.ndarray:
        """Full ``(n, 4, 4)`` letter maps for group ``k`` (row 0 is the fixed ``I``)."""
        return self._full[self.group_slot[k]]


def build_noncx_lut(seq: OperatorSequence, n_jobs: int = 1) -> LutNonCX:
    groups = seq.noncx_groups()
    cells = [(slot, j, g.by_wire[j]) for slot, g in enumerate(groups) for j in range(seq.n)]
    table = np.zeros((len(groups), seq.n, 3, 4))
    blocks = parallel_map(lambda cell: fuse_wire(cell[2]), cells, n_jobs)
    for (slot, j, _), block in zip(cells, blocks):
        table[slot, j] = block
    table.setflags(write=False)
    evaluations = 3 * sum(len(g) for g in groups)
    return LutNonCX(table, {g.index: slot for slot, g in enumerate(groups)}, evaluations)


def map_cx_index(index: int, control: int, target: int, n: int) -> tuple[int, int]:
    """New string index and sign of the Pauli string ``index`` after ``CX(control, target)``."""
    if control == target:
        raise ValueError("CX with equal wires")
    if not (0 <= control < n and 0 <= target < n):
        raise ValueError(f"wires ({control}, {target}) out of range for {n} qubits")
    letters = list(index_to_string(index, n))
    a, b, sign = cx_pair_map(letters[control], letters[target])
    letters[control], letters[target] = a, b
    return string_to_index(letters), sign


def cx_permutation(control: int, target: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``map_cx_index`` over every index: ``(new_index, sign)`` arrays."""
    if control == target:
        raise ValueError("CX with equal wires")
    if not (0 <= control < n and 0 <= target < n):
        raise ValueError(f"wires ({control}, {target}) out of range for {n} qubits")
    digits = digit_table(n)
    pa, pb = digits[:, control], digits[:, target]
    shift_c, shift_t = 2 * (n - 1 - control), 2 * (n - 1 - target)
    idx = np.arange(4**n, dtype=np.int64)
    new = (
        idx
        - (pa.astype(np.int64) << shift_c)
        - (pb.astype(np.int64) << shift_t)
        + (CX_OUT_CONTROL[pa, pb] << shift_c)
        + (CX_OUT_TARGET[pa, pb] << shift_t)
    )
    sign = CX_SIGN[pa, pb].astype(np.float64)
    new.setflags(write=False)
    sign.setflags(write=False)
    return new, sign


@dataclass
class LutCX:
    """Signed index permutations per ordered wire pair, built on first use."""

    n: int
    _tables: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    pair_evaluations: int = 0

    def __getitem__(self, pair: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
        table = self._tables.get(pair)
        if table is None:
            with self._lock:
                table = self._tables.get(pair)
                if table is None:
                    table = cx_permutation(pair[0], pair[1], self.n)
                    self._tables[pair] = table
                    self.pair_evaluations += 4**self.n
        return table

    def __contains__(self, pair) -> bool:
        return pair in self._tables

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self._tables)

    def build(self, pairs: Iterable[tuple[int, int]], n_jobs: int = 1) -> "LutCX":
        parallel_map(self.__getitem__, sorted(set(pairs)), n_jobs)
        return self

    def build_all(self, n_jobs: int = 1) -> "LutCX":
        pairs = [(c, t) for c in range(self.n) for t in range(self.n) if c != t]
        return self.build(pairs, n_jobs)

    def as_array(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense ``(n, n-1, 4**n)`` index and sign tensors (target axis skips the control)."""
        self.build_all()
        n = self.n
        index = np.zeros((n, n - 1, 4**n), dtype=np.int64)
        sign = np.zeros((n, n - 1, 4**n))
        for c in range(n):
            for slot, t in enumerate(t for t in range(n) if t != c):
                index[c, slot], sign[c, slot] = self[(c, t)]
        return index, sign


@dataclass
class Luts:
    noncx: LutNonCX
    cx: LutCX


def construct_lut(seq: OperatorSequence, n_jobs: int = 1, all_pairs: bool = False) -> Luts:
    """Build both tables for ``seq``.

    CX tables are built only for the (control, target) pairs present in the
    sequence unless ``all_pairs`` is set.
    """
    noncx = build_noncx_lut(seq, n_jobs)
    cx = LutCX(seq.n)
    if all_pairs:
        cx.build_all(n_jobs)
    else:
        cx.build(seq.cx_pairs(), n_jobs)
    return Luts(noncx, cx)

