"""Dense reference implementations used to check the stabilizer pipeline.

Deliberately naive: full ``2**n x 2**n`` gate unitaries built with Kronecker
products, wire 0 as the leftmost factor.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .circuit import Circuit, Instructor
from .density import DensityMatrix

PAULI_MATRICES = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def gate_matrix(name: str, theta: float = 0.0) -> np.ndarray:
    """2x2 unitary; rotations are ``exp(-i theta sigma / 2)``."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    if name == "H":
        return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    if name == "S":
        return np.array([[1, 0], [0, 1j]], dtype=complex)
    if name == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if name == "RY":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if name == "RZ":
        return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)
    raise ValueError(f"no single-qubit matrix for {name!r}")


def _kron_all(factors) -> np.ndarray:
    return reduce(np.kron, factors)


def instructor_unitary(ins: Instructor, n: int) -> np.ndarray:
    eye = PAULI_MATRICES[0]
    if ins.is_cx:
        off = [eye] * n
        on = [eye] * n
        off[ins.wire] = _P0
        on[ins.wire] = _P1
        on[ins.wire2] = PAULI_MATRICES[1]
        return _kron_all(off) + _kron_all(on)
    factors = [eye] * n
    factors[ins.wire] = gate_matrix(ins.name, ins.theta)
    return _kron_all(factors)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    u = np.eye(1 << circuit.n, dtype=complex)
    for ins in circuit:
        u = instructor_unitary(ins, circuit.n) @ u
    return u


def simulate_statevector(circuit: Circuit) -> np.ndarray:
    psi = np.zeros(1 << circuit.n, dtype=complex)
    psi[0] = 1.0
    for ins in circuit:
        psi = instructor_unitary(ins, circuit.n) @ psi
    return psi


def density_from_statevector(psi: np.ndarray) -> DensityMatrix:
    n = int(np.log2(len(psi)))
    return DensityMatrix(n, np.outer(psi, psi.conj()))


def dense_pauli(index: int, n: int) -> np.ndarray:
    if index < 0 or index >= 4**n:
        raise ValueError(f"index {index} out of range for {n} qubits")
    letters = []
    for _ in range(n):
        index, d = divmod(index, 4)
        letters.append(PAULI_MATRICES[d])
    return _kron_all(letters[::-1])


def conjugate_pauli(index: int, circuit: Circuit) -> np.ndarray:
    """``U P U^dagger`` for the Pauli string ``index`` and the circuit's unitary ``U``."""
    u = circuit_unitary(circuit)
    return u @ dense_pauli(index, circuit.n) @ u.conj().T


def pauli_coefficients(matrix: np.ndarray, n: int) -> np.ndarray:
    """Coefficients ``c_i = tr(P_i M) / 2**n`` of ``matrix`` in the Pauli-string basis."""
    return np.array([np.trace(dense_pauli(i, n) @ matrix) / (1 << n) for i in range(4**n)])


def stabilizer_matrix(lam: np.ndarray, n: int) -> np.ndarray:
    """Dense ``sum_i lam_i P_i`` by explicit Kronecker products."""
    out = np.zeros((1 << n, 1 << n), dtype=complex)
    for i in np.flatnonzero(lam):
        out += lam[i] * dense_pauli(int(i), n)
    return out
