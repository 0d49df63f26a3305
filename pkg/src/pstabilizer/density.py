"""Decode stage: stabilizers to the density matrix ``rho = 2**-n * prod_j (I + P_j)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence, TypeVar, Union

import numpy as np
import scipy.sparse as sp

from .composer import compose_sparse
from .engine import StabilizerState
from .lut import parallel_map

T = TypeVar("T")

Matrix = Union[np.ndarray, sp.spmatrix]


def tree_depth(count: int) -> int:
    """Number of pairwise levels needed to reduce ``count`` items to one."""
    return math.ceil(math.log2(count)) if count > 1 else 0


def tree_reduce(items: Sequence[T], op: Callable[[T, T], T], n_jobs: int = 1) -> T:
    """Pairwise reduction ``((a0 op a1) op (a2 op a3)) ...`` with a fixed tree shape.

    Pairs within a level are independent and run concurrently; an odd last
    item is carried up unchanged.
    """
    level = list(items)
    if not level:
        raise ValueError("nothing to reduce")
    while len(level) > 1:
        pairs = [(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        reduced = parallel_map(lambda p: op(*p), pairs, n_jobs)
        if len(level) % 2:
            reduced.append(level[-1])
        level = reduced
    return level[0]


def _add(a: Matrix, b: Matrix) -> Matrix:
    a_sparse, b_sparse = sp.issparse(a), sp.issparse(b)
    if a_sparse and b_sparse:
        out = (a + b).tocsr()
        # densify once fill-in passes half the matrix
        if out.nnz > out.shape[0] * out.shape[1] // 2:
            return out.toarray()
        return out
    if a_sparse:
        a, b = b, a
    return a + (b.toarray() if sp.issparse(b) else b)


def add_terms(s: StabilizerState, n_jobs: int = 1) -> np.ndarray:
    """Dense ``I + sum_i lam_i P_i`` for one stabilizer, summed as a balanced tree."""
    coeffs = s.lam.copy()
    coeffs[0] += 1.0
    nz = np.flatnonzero(coeffs)
    dim = 1 << s.n
    if len(nz) == 0:
        return np.zeros((dim, dim), dtype=complex)
    terms = [compose_sparse(coeffs[i], int(i), s.n).to_csr() for i in nz]
    out = tree_reduce(terms, _add, n_jobs)
    return out.toarray() if sp.issparse(out) else out


def multiply_chain(ms: Sequence[np.ndarray], n_jobs: int = 1) -> np.ndarray:
    """Balanced-tree product of ``ms`` (``ceil(log2(len(ms)))`` levels)."""
    if not ms:
        raise ValueError("empty product")
    shape = np.shape(ms[0])
    if any(np.shape(m) != shape for m in ms) or len(shape) != 2 or shape[0] != shape[1]:
        raise ValueError("all factors must be square matrices of the same shape")
    return tree_reduce(list(ms), np.matmul, n_jobs)


@dataclass
class DensityMatrix:
    n: int
    rho: np.ndarray

    def trace(self) -> complex:
        return complex(np.trace(self.rho))

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))

    def purity_error(self) -> float:
        """``||rho^2 - rho||_F``."""
        return float(np.linalg.norm(self.rho @ self.rho - self.rho))

    def check(self, tol: float = 1e-9) -> list[str]:
        """Problems with trace, Hermiticity or purity (empty when ``rho`` is a pure state)."""
        problems = []
        tr = self.trace()
        if abs(tr - 1) > tol:
            problems.append(f"trace {tr:.12g} != 1")
        herm = self.hermiticity_error()
        if herm > tol:
            problems.append(f"not Hermitian (max deviation {herm:.3g})")
        pur = self.purity_error()
        if pur > tol:
            problems.append(f"not pure (||rho^2 - rho||_F = {pur:.3g})")
        return problems

    def to_csv(self) -> str:
        lines = ["row,col,re,im"]
        dim = self.rho.shape[0]
        for r in range(dim):
            for c in range(dim):
                v = self.rho[r, c]
                lines.append(f"{r},{c},{float(v.real)!r},{float(v.imag)!r}")
        return "\n".join(lines) + "\n"

    def to_bytes(self) -> bytes:
        """Row-major little-endian doubles, real and imaginary parts interleaved."""
        return np.ascontiguousarray(self.rho, dtype="<c16").tobytes()

    def write(self, path: Union[str, Path], fmt: str = "csv") -> None:
        path = Path(path)
        if fmt == "csv":
            path.write_text(self.to_csv())
        elif fmt == "bin":
            path.write_bytes(self.to_bytes())
        else:
            raise ValueError(f"unknown format {fmt!r}")


def read_density_csv(text: str) -> np.ndarray:
    rows = text.strip().splitlines()
    if rows[0].strip() != "row,col,re,im":
        raise ValueError("unexpected CSV header")
    entries = [line.split(",") for line in rows[1:]]
    dim = math.isqrt(len(entries))
    rho = np.zeros((dim, dim), dtype=complex)
    for r, c, re, im in entries:
        rho[int(r), int(c)] = complex(float(re), float(im))
    return rho


def read_density_bin(data: bytes) -> np.ndarray:
    flat = np.frombuffer(data, dtype="<c16")
    dim = math.isqrt(len(flat))
    return flat.reshape(dim, dim).copy()


def to_density(stabs: Sequence[StabilizerState], n_jobs: int = 1) -> DensityMatrix:
    if not stabs:
        raise ValueError("need at least one stabilizer")
    n = stabs[0].n
    factors = parallel_map(add_terms, list(stabs), n_jobs)
    rho = multiply_chain(factors, n_jobs) / (1 << n)
    return DensityMatrix(n, rho)


def measure_z(dm: DensityMatrix, k: int) -> float:
    """Probability of reading 0 on wire ``k``: ``tr(1/2 (I + Z_k) rho)``."""
    if not 0 <= k < dm.n:
        raise ValueError(f"wire {k} out of range for {dm.n} qubits")
    diag = np.real(np.diag(dm.rho))
    bit = 1 << (dm.n - 1 - k)
    zero = (np.arange(len(diag)) & bit) == 0
    return float(diag[zero].sum())


def rho00(dm: DensityMatrix) -> float:
    return float(dm.rho[0, 0].real)
