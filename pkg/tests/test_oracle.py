import math

import numpy as np
import pytest

from pstabilizer.circuit import Circuit, cx, generate_random_circuit, h, ry, rz
from pstabilizer.oracle import (
    PAULI_MATRICES,
    circuit_unitary,
    conjugate_pauli,
    dense_pauli,
    density_from_statevector,
    gate_matrix,
    simulate_statevector,
)
from pstabilizer.pauli import string_to_index

X, Y, Z = PAULI_MATRICES[1:]


def test_empty_circuit():
    np.testing.assert_array_equal(simulate_statevector(Circuit(1)), [1, 0])


def test_hadamard():
    np.testing.assert_allclose(simulate_statevector(Circuit(1, (h(0),))), [2**-0.5, 2**-0.5])


def test_ry_closed_form():
    t = 0.83
    np.testing.assert_allclose(simulate_statevector(Circuit(1, (ry(0, t),))), [math.cos(t / 2), math.sin(t / 2)], atol=1e-15)


def test_density_from_statevector():
    np.testing.assert_array_equal(density_from_statevector(np.array([1, 0], dtype=complex)).rho, [[1, 0], [0, 0]])
    dm = density_from_statevector(simulate_statevector(Circuit(1, (h(0),))))
    np.testing.assert_allclose(dm.rho, np.full((2, 2), 0.5))
    assert dm.trace() == pytest.approx(1.0)


def test_dense_pauli():
    np.testing.assert_array_equal(dense_pauli(0, 2), np.eye(4))
    np.testing.assert_array_equal(dense_pauli(2, 1), [[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(dense_pauli(string_to_index("XZ"), 2), np.kron(X, Z))
    with pytest.raises(ValueError):
        dense_pauli(16, 2)


def test_conjugation_examples():
    np.testing.assert_allclose(conjugate_pauli(1, Circuit(1, (h(0),))), Z, atol=1e-15)
    np.testing.assert_allclose(conjugate_pauli(string_to_index("XI"), Circuit(2, (cx(0, 1),))), np.kron(X, X))
    t = 0.4
    np.testing.assert_allclose(conjugate_pauli(1, Circuit(1, (ry(0, t),))), math.cos(t) * X - math.sin(t) * Z, atol=1e-15)


def test_rz_sign_convention():
    t = 1.1
    np.testing.assert_allclose(conjugate_pauli(1, Circuit(1, (rz(0, t),))), math.cos(t) * X + math.sin(t) * Y, atol=1e-15)


def test_cx_is_textbook():
    u = np.eye(4)[[0, 1, 3, 2]]
    np.testing.assert_array_equal(conjugate_pauli(0, Circuit(2, (cx(0, 1),))), np.eye(4))
    np.testing.assert_array_equal(circuit_unitary(Circuit(2, (cx(0, 1),))), u)


@pytest.mark.parametrize("seed", range(10))
def test_norm_preserved(seed):
    c = generate_random_circuit(1 + seed % 4, 200, seed=seed)
    assert np.linalg.norm(simulate_statevector(c)) == pytest.approx(1.0, abs=1e-12)


def test_gate_matrices_unitary():
    for name in ("H", "S", "RX", "RY", "RZ"):
        u = gate_matrix(name, 0.7)
        np.testing.assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-15)
