"""Base-4 Pauli-string codec and the elementary gate actions on Pauli letters.

Letters are encoded ``I=0, X=1, Y=2, Z=3``.  A Pauli string over ``n`` wires is
the big-endian base-4 number of its letters, so wire 0 is the most significant
digit: ``XYZ -> 1*16 + 2*4 + 3 = 27``.

Single-qubit gates act on a weight vector ``[w0, w1, w2, w3]`` standing for
``w0*I + w1*X + w2*Y + w3*Z`` (Heisenberg picture, ``P -> g P g^dagger``).
CX acts on a pair of letters (control, target) and may flip the sign.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

I, X, Y, Z = 0, 1, 2, 3
LETTERS = "IXYZ"

NON_CX_GATES = ("H", "S", "RX", "RY", "RZ")

PauliLike = Union[str, Sequence[int]]


def _as_codes(letters: PauliLike) -> list[int]:
    if isinstance(letters, str):
        try:
            return [LETTERS.index(ch) for ch in letters.upper()]
        except ValueError:
            raise ValueError(f"not a Pauli string: {letters!r}") from None
    codes = [int(v) for v in letters]
    if any(v < 0 or v > 3 for v in codes):
        raise ValueError(f"Pauli codes must lie in [0, 4), got {codes}")
    return codes


def string_to_index(letters: PauliLike) -> int:
    """Encode a Pauli string (``"XYZ"`` or ``[1, 2, 3]``) as its base-4 index."""
    codes = _as_codes(letters)
    if not codes:
        raise ValueError("empty Pauli string")
    index = 0
    for code in codes:
        index = 4 * index + code
    return index


def index_to_string(index: int, n: int) -> tuple[int, ...]:
    """Decode ``index`` into ``n`` letter codes, left-padded with ``I``."""
    if n < 1:
        raise ValueError(f"qubit count must be positive, got {n}")
    if index < 0 or index >= 4**n:
        raise ValueError(f"index {index} out of range for {n} qubits")
    codes = []
    for _ in range(n):
        index, digit = divmod(index, 4)
        codes.append(digit)
    return tuple(reversed(codes))


def index_to_label(index: int, n: int) -> str:
    return "".join(LETTERS[c] for c in index_to_string(index, n))


@lru_cache(maxsize=None)
def digit_table(n: int) -> np.ndarray:
    """``(4**n, n)`` array of letter codes for every string index (read-only)."""
    idx = np.arange(4**n, dtype=np.int64)
    shifts = 2 * np.arange(n - 1, -1, -1, dtype=np.int64)
    table = ((idx[:, None] >> shifts[None, :]) & 3).astype(np.uint8)
    table.setflags(write=False)
    return table


def apply_gate_to_weights(w: Iterable[float], gate: str, theta: float = 0.0) -> np.ndarray:
    """Image of the weighted Pauli ``w`` under conjugation by a one-qubit gate.

    ``w`` may carry leading batch axes; the last axis holds ``[w0, w1, w2, w3]``.
    Rotations follow ``R_a(theta) = exp(-i theta sigma_a / 2)``.
    """
    w = np.asarray(w, dtype=float)
    if w.shape[-1] != 4:
        raise ValueError(f"weight vectors need 4 components, got shape {w.shape}")
    w0, w1, w2, w3 = w[..., 0], w[..., 1], w[..., 2], w[..., 3]
    g = gate.upper()
    if g == "H":
        out = (w0, w3, -w2, w1)
    elif g == "S":
        out = (w0, -w2, w1, w3)
    elif g in ("RX", "RY", "RZ"):
        c, s = np.cos(theta), np.sin(theta)
        if g == "RX":
            out = (w0, w1, w2 * c - w3 * s, w2 * s + w3 * c)
        elif g == "RY":
            out = (w0, w1 * c + w3 * s, w2, w3 * c - w1 * s)
        else:
            out = (w0, w1 * c - w2 * s, w2 * c + w1 * s, w3)
    else:
        raise ValueError(f"unknown non-CX gate {gate!r}")
    return np.stack(out, axis=-1)


# CX conjugation on (control letter, target letter).  Listed pairs are swapped,
# the rest of the table follows from them being an involution.
_CX_SWAPS = {
    ("X", "I"): ("X", "X"),
    ("I", "Y"): ("Z", "Y"),
    ("Y", "I"): ("Y", "X"),
    ("I", "Z"): ("Z", "Z"),
    ("X", "Y"): ("Y", "Z"),
}
_CX_FIXED = (("I", "I"), ("I", "X"), ("Z", "I"), ("Z", "X"))
_CX_NEGATED = {("X", "Z"): ("Y", "Y")}


def _build_cx_tables() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    out_a = np.full((4, 4), -1, dtype=np.int64)
    out_b = np.full((4, 4), -1, dtype=np.int64)
    sign = np.zeros((4, 4), dtype=np.int8)

    def put(src, dst, s):
        a, b = LETTERS.index(src[0]), LETTERS.index(src[1])
        out_a[a, b] = LETTERS.index(dst[0])
        out_b[a, b] = LETTERS.index(dst[1])
        sign[a, b] = s

    for src, dst in _CX_SWAPS.items():
        put(src, dst, 1)
        put(dst, src, 1)
    for pair in _CX_FIXED:
        put(pair, pair, 1)
    for src, dst in _CX_NEGATED.items():
        put(src, dst, -1)
        put(dst, src, -1)
    assert (sign != 0).all(), "CX table incomplete"
    for arr in (out_a, out_b, sign):
        arr.setflags(write=False)
    return out_a, out_b, sign


CX_OUT_CONTROL, CX_OUT_TARGET, CX_SIGN = _build_cx_tables()


def cx_pair_map(pa: int, pb: int) -> tuple[int, int, int]:
    """Letters (control, target) after conjugation by CX, and the sign picked up."""
    return int(CX_OUT_CONTROL[pa, pb]), int(CX_OUT_TARGET[pa, pb]), int(CX_SIGN[pa, pb])
