"""Sparse matrices of weighted Pauli strings.

Every Pauli string has exactly one nonzero per row, so its matrix is fully
described by ``cols[r]`` and ``vals[r]``.  Writing ``Y = i * Yt`` with the real
matrix ``Yt = [[0, -1], [1, 0]]`` leaves a real +-1 pattern times the global
phase ``i**n_Y``.  Rows are generated by doubling, one wire at a time from the
least significant, which costs O(2**n) additions and sign flips.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .pauli import index_to_string

_PHASES = (1.0 + 0j, 1j, -1.0 + 0j, -1j)


@dataclass(frozen=True)
class SparsePauliMatrix:
    n: int
    cols: np.ndarray
    vals: np.ndarray

    @property
    def dim(self) -> int:
        return 1 << self.n

    def to_csr(self) -> sp.csr_matrix:
        indptr = np.arange(self.dim + 1)
        return sp.csr_matrix((self.vals, self.cols, indptr), shape=(self.dim, self.dim))


def compose_sparse(lam: float, index: int, n: int) -> SparsePauliMatrix:
    """Sparse matrix of ``lam`` times the Pauli string ``index`` (wire 0 = most significant bit)."""
    if lam == 0:
        raise ValueError("coefficient must be nonzero")
    digits = index_to_string(index, n)
    n_y = sum(1 for d in digits if d == 2)
    mask = 0
    for d in digits:
        mask = (mask << 1) | (d in (1, 2))
    if mask == 0:
        # diagonal string (only I and Z): no column shuffling needed
        cols = np.arange(1 << n, dtype=np.int64)
    else:
        cols = np.empty(1 << n, dtype=np.int64)
    # Row 0 of Yt carries -1, so each Y starts negative: lam * i**n_Y * (-1)**n_Y.
    vals = np.empty(1 << n, dtype=complex)
    vals[0] = lam * _PHASES[(3 * n_y) % 4]
    if mask:
        cols[0] = mask
    for level, d in enumerate(reversed(digits)):
        half = 1 << level
        if mask:
            flips = d in (1, 2)
            cols[half : 2 * half] = cols[:half] - half if flips else cols[:half] + half
        if d in (2, 3):
            np.negative(vals[:half], out=vals[half : 2 * half])
        else:
            vals[half : 2 * half] = vals[:half]
    return SparsePauliMatrix(n, cols, vals)


def dense_from_sparse(m: SparsePauliMatrix) -> np.ndarray:
    out = np.zeros((m.dim, m.dim), dtype=complex)
    out[np.arange(m.dim), m.cols] = m.vals
    return out
