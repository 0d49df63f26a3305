"""Encode and Map stages: stabilizer generators as dense Pauli-coefficient arrays.

A stabilizer is stored in basic form, ``lam[i]`` being the real coefficient of
the Pauli string with base-4 index ``i``.  A non-CX group is applied by
gathering each letter's image from the non-CX table (``expand_noncx``) and
multiplying the per-wire sums back out (``flatten``).  A CX group is a chain of
signed index permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .circuit import CX, NON_CX, OperatorGroup, OperatorSequence
from .lut import LutCX, LutNonCX, Luts, parallel_map
from .pauli import digit_table, index_to_label, string_to_index

PRUNE_EPS = 1e-14

# Above this many scalar products the Cartesian expansion is replaced by the
# wire-by-wire contraction (same sum, regrouped by distributivity).
PRODUCT_WORK_LIMIT = 1 << 20

_CHUNK_ELEMENTS = 1 << 18


@dataclass
class StabilizerState:
    n: int
    lam: np.ndarray

    def __post_init__(self):
        self.lam = np.asarray(self.lam, dtype=float)
        if self.lam.shape != (4**self.n,):
            raise ValueError(f"expected {4**self.n} coefficients, got shape {self.lam.shape}")

    @classmethod
    def from_terms(cls, terms: Union[str, Mapping[str, float]]) -> "StabilizerState":
        """Build from ``{"XZ": 0.5, ...}`` or a single label like ``"IZ"``."""
        if isinstance(terms, str):
            terms = {terms: 1.0}
        labels = list(terms)
        n = len(labels[0])
        lam = np.zeros(4**n)
        for label, coef in terms.items():
            if len(label) != n:
                raise ValueError("all labels must have the same length")
            lam[string_to_index(label)] += coef
        return cls(n, lam)

    def copy(self) -> "StabilizerState":
        return StabilizerState(self.n, self.lam.copy())

    @property
    def order(self) -> int:
        return int(np.count_nonzero(self.lam))

    def norm2(self) -> float:
        return float(np.dot(self.lam, self.lam))

    def terms(self) -> dict[str, float]:
        return {index_to_label(int(i), self.n): float(self.lam[i]) for i in np.flatnonzero(self.lam)}

    def __str__(self) -> str:
        parts = [f"{c:+.6g}*{label}" for label, c in self.terms().items()]
        return " ".join(parts) if parts else "0"


@dataclass
class WeightTensor:
    """Expanded form: one row per source string, each an ``n x 4`` matrix of per-wire sums.

    ``wire_tables`` (``n x 4 x 4``) is set when every row was gathered from the
    same per-wire letter maps, i.e. ``weights[r, j] == wire_tables[j, digit_j(indices[r])]``.
    """

    n: int
    indices: np.ndarray
    lam: np.ndarray
    weights: np.ndarray
    wire_tables: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.lam)


def init_stabilizers(n: int) -> list[StabilizerState]:
    """Generators ``Z_j`` of ``|0...0>``."""
    if n < 1:
        raise ValueError(f"qubit count must be positive, got {n}")
    out = []
    for j in range(n):
        lam = np.zeros(4**n)
        lam[3 * 4 ** (n - 1 - j)] = 1.0
        out.append(StabilizerState(n, lam))
    return out


def stabilizer_order(s: StabilizerState) -> int:
    return s.order


def expand_noncx(s: StabilizerState, lut: LutNonCX, k: int) -> WeightTensor:
    """Gather the non-CX images of every letter of every nonzero string of ``s``."""
    tables = lut.wire_tables(k)
    nz = np.flatnonzero(s.lam)
    digits = digit_table(s.n)[nz]
    weights = tables[np.arange(s.n), digits]
    return WeightTensor(s.n, nz, s.lam[nz], weights, tables)


def _identity_wires(weights: np.ndarray) -> np.ndarray:
    """``(rows, n)`` mask of wires whose weight row is exactly ``[1, 0, 0, 0]``."""
    return (weights[..., 0] == 1.0) & ~weights[..., 1:].any(axis=-1)


def _flatten_product(t: WeightTensor, out: np.ndarray) -> None:
    ident = _identity_wires(t.weights)
    pattern = ident @ (1 << np.arange(t.n - 1, -1, -1, dtype=np.int64))
    keys, inverse = np.unique(pattern, return_inverse=True)
    for g in range(len(keys)):
        rows = np.flatnonzero(inverse == g)
        support = (t.weights[rows] != 0).any(axis=0)  # (n, 4) union over the rows
        cols = [np.flatnonzero(sup) for sup in support]
        if any(len(c) == 0 for c in cols):
            continue
        idx = np.zeros(1, dtype=np.int64)
        for c in cols:
            idx = (idx[:, None] * 4 + c[None, :]).reshape(-1)
        step = max(1, _CHUNK_ELEMENTS // len(idx))
        for start in range(0, len(rows), step):
            chunk = rows[start : start + step]
            acc = t.lam[chunk][:, None]
            W = t.weights[chunk]
            for j, c in enumerate(cols):
                acc = (acc[:, :, None] * W[:, j, c][:, None, :]).reshape(len(chunk), -1)
            out[idx] += acc.sum(axis=0)


def _flatten_factored(t: WeightTensor, out: np.ndarray) -> None:
    dense = np.zeros(4**t.n)
    np.add.at(dense, t.indices, t.lam)
    tensor = dense.reshape((4,) * t.n)
    for j in range(t.n):
        tensor = np.moveaxis(np.tensordot(tensor, t.wire_tables[j], axes=([j], [0])), -1, j)
    out += tensor.reshape(-1)


def flatten(t: WeightTensor, method: str = "auto") -> StabilizerState:
    """Multiply out every row's per-wire sums and reduce equal strings.

    Each row contributes ``lam * prod_j W[j, a_j]`` to the string ``a_0 ... a_{n-1}``
    for every combination of letters.  Rows are grouped by which wires hold
    plain ``I``; such a wire contributes a single choice, and on the others only
    letters with a nonzero weight somewhere in the group are enumerated.
    ``method`` is ``"product"`` (explicit enumeration), ``"factored"``
    (wire-by-wire contraction, needs ``wire_tables``) or ``"auto"``.
    """
    out = np.zeros(4**t.n)
    if len(t):
        if method == "auto":
            if t.wire_tables is None:
                method = "product"
            else:
                active = t.n - _identity_wires(t.weights).sum(axis=1)
                work = int((3.0**active).sum())
                method = "product" if work <= PRODUCT_WORK_LIMIT else "factored"
        if method == "product":
            _flatten_product(t, out)
        elif method == "factored":
            if t.wire_tables is None:
                raise ValueError("factored flatten needs wire_tables")
            _flatten_factored(t, out)
        else:
            raise ValueError(f"unknown flatten method {method!r}")
    out[np.abs(out) < PRUNE_EPS] = 0.0
    return StabilizerState(t.n, out)


def apply_cx_group(s: StabilizerState, group: OperatorGroup, lut: LutCX) -> StabilizerState:
    if group.kind != CX:
        raise ValueError("apply_cx_group needs a CX group")
    lam = s.lam
    for pair in group.gates:
        new_index, sign = lut[pair]
        nxt = np.empty_like(lam)
        nxt[new_index] = sign * lam
        lam = nxt
    return StabilizerState(s.n, lam)


def apply_group(s: StabilizerState, group: OperatorGroup, luts: Luts) -> StabilizerState:
    if group.kind == NON_CX:
        return flatten(expand_noncx(s, luts.noncx, group.index))
    return apply_cx_group(s, group, luts.cx)


Observer = Callable[[int, int, StabilizerState], None]


def evolve(s: StabilizerState, seq: OperatorSequence, luts: Luts, observer: Optional[Observer] = None, stab_idx: int = 0) -> StabilizerState:
    """Push one stabilizer through every group of ``seq`` in order."""
    for g_idx, group in enumerate(seq.groups):
        s = apply_group(s, group, luts)
        if observer is not None:
            observer(stab_idx, g_idx, s)
    return s


def run_map_stage(
    stabs: Sequence[StabilizerState],
    seq: OperatorSequence,
    luts: Luts,
    n_jobs: int = 1,
    observer: Optional[Observer] = None,
) -> list[StabilizerState]:
    """Map stage: groups are applied in sequence, stabilizers independently (in parallel).

    ``observer(stab_idx, group_idx, state)`` is called after every group.
    """
    jobs = list(enumerate(stabs))
    return parallel_map(lambda job: evolve(job[1], seq, luts, observer, job[0]), jobs, n_jobs)
