import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pstabilizer.circuit import Circuit, Instructor, cx
from pstabilizer.oracle import PAULI_MATRICES, conjugate_pauli, gate_matrix
from pstabilizer.pauli import (
    I,
    X,
    Y,
    Z,
    apply_gate_to_weights,
    cx_pair_map,
    digit_table,
    index_to_label,
    index_to_string,
    string_to_index,
)

THETAS = [0.0, math.pi / 7, math.pi / 3, 1.0]


def pauli_expansion(m):
    """Real coefficients of a 2x2 Hermitian matrix in the I, X, Y, Z basis."""
    coeffs = np.array([np.trace(p @ m) / 2 for p in PAULI_MATRICES])
    assert np.allclose(coeffs.imag, 0, atol=1e-12)
    return coeffs.real


class TestCodec:
    def test_xyz_is_27(self):
        assert string_to_index("XYZ") == 27
        assert string_to_index([X, Y, Z]) == 27

    def test_all_identity_is_zero(self):
        assert string_to_index("III") == 0

    def test_zz(self):
        assert string_to_index("ZZ") == 3 * 4 + 3

    def test_decode(self):
        assert index_to_string(27, 3) == (X, Y, Z)
        assert index_to_string(0, 4) == (I, I, I, I)
        assert index_to_label(27, 4) == "IXYZ"

    def test_range_ends(self):
        assert index_to_label(0, 3) == "III"
        assert index_to_label(4**3 - 1, 3) == "ZZZ"

    def test_errors(self):
        with pytest.raises(ValueError):
            index_to_string(64, 3)
        with pytest.raises(ValueError):
            string_to_index("")
        with pytest.raises(ValueError):
            string_to_index("XQ")

    @pytest.mark.parametrize("n", range(1, 7))
    def test_round_trip_exhaustive(self, n):
        for i in range(4**n):
            assert string_to_index(index_to_string(i, n)) == i

    def test_digit_table_matches_codec(self):
        table = digit_table(3)
        for i in range(64):
            assert tuple(table[i]) == index_to_string(i, 3)


class TestSingleQubitMaps:
    def test_ry_on_x(self):
        t = 0.37
        np.testing.assert_allclose(apply_gate_to_weights([0, 1, 0, 0], "RY", t), [0, math.cos(t), 0, -math.sin(t)], atol=1e-15)

    def test_h_maps_x_to_z(self):
        np.testing.assert_array_equal(apply_gate_to_weights([0, 1, 0, 0], "H"), [0, 0, 0, 1])

    @pytest.mark.parametrize("gate", ["H", "S", "RX", "RY", "RZ"])
    def test_identity_is_fixed(self, gate):
        np.testing.assert_array_equal(apply_gate_to_weights([1, 0, 0, 0], gate, 0.8), [1, 0, 0, 0])

    def test_table_rows(self):
        w = np.array([0.1, 0.2, 0.3, 0.4])
        c, s = math.cos(0.5), math.sin(0.5)
        np.testing.assert_allclose(apply_gate_to_weights(w, "H"), [0.1, 0.4, -0.3, 0.2])
        np.testing.assert_allclose(apply_gate_to_weights(w, "S"), [0.1, -0.3, 0.2, 0.4])
        np.testing.assert_allclose(apply_gate_to_weights(w, "RX", 0.5), [0.1, 0.2, 0.3 * c - 0.4 * s, 0.3 * s + 0.4 * c])
        np.testing.assert_allclose(apply_gate_to_weights(w, "RY", 0.5), [0.1, 0.2 * c + 0.4 * s, 0.3, 0.4 * c - 0.2 * s])
        np.testing.assert_allclose(apply_gate_to_weights(w, "RZ", 0.5), [0.1, 0.2 * c - 0.3 * s, 0.3 * c + 0.2 * s, 0.4])

    def test_unknown_gate(self):
        with pytest.raises(ValueError):
            apply_gate_to_weights([1, 0, 0, 0], "T")

    def test_batched(self):
        out = apply_gate_to_weights(np.eye(4), "H")
        assert out.shape == (4, 4)

    @pytest.mark.parametrize("gate", ["H", "S", "RX", "RY", "RZ"])
    @pytest.mark.parametrize("theta", THETAS)
    def test_matches_dense_conjugation(self, gate, theta):
        theta = theta if gate.startswith("R") else 0.0
        u = gate_matrix(gate, theta)
        for a, sigma in enumerate(PAULI_MATRICES):
            expected = pauli_expansion(u @ sigma @ u.conj().T)
            got = apply_gate_to_weights(np.eye(4)[a], gate, theta)
            np.testing.assert_allclose(got, expected, atol=1e-12)

    @pytest.mark.parametrize("gate", ["H", "S", "RX", "RY", "RZ"])
    def test_norm_preserved_on_one_hots(self, gate):
        for a in range(4):
            assert np.linalg.norm(apply_gate_to_weights(np.eye(4)[a], gate, 1.3)) == pytest.approx(1.0, abs=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(st.floats(-10, 10), min_size=4, max_size=4),
        st.sampled_from(["H", "S", "RX", "RY", "RZ"]),
        st.floats(-20, 20),
    )
    def test_norm_preserved_random(self, w, gate, theta):
        out = apply_gate_to_weights(w, gate, theta)
        assert np.dot(out, out) == pytest.approx(np.dot(w, w), rel=1e-12, abs=1e-12)


class TestCxPairMap:
    def test_listed_rules(self):
        assert cx_pair_map(X, I) == (X, X, 1)
        assert cx_pair_map(X, Z) == (Y, Y, -1)
        assert cx_pair_map(I, I) == (I, I, 1)
        assert cx_pair_map(Y, Y) == (X, Z, -1)

    def test_unchanged_set(self):
        for a, b in [(I, I), (I, X), (Z, I), (Z, X)]:
            assert cx_pair_map(a, b) == (a, b, 1)

    def test_involution(self):
        for a, b in itertools.product(range(4), repeat=2):
            a2, b2, s1 = cx_pair_map(a, b)
            a3, b3, s2 = cx_pair_map(a2, b2)
            assert (a3, b3) == (a, b)
            assert s1 * s2 == 1

    def test_only_xz_yy_flip_sign(self):
        flipped = {(a, b) for a, b in itertools.product(range(4), repeat=2) if cx_pair_map(a, b)[2] == -1}
        assert flipped == {(X, Z), (Y, Y)}

    def test_matches_dense_conjugation(self):
        circuit = Circuit(2, (cx(0, 1),))
        for a, b in itertools.product(range(4), repeat=2):
            got = conjugate_pauli(4 * a + b, circuit)
            pa, pb, sign = cx_pair_map(a, b)
            expected = sign * np.kron(PAULI_MATRICES[pa], PAULI_MATRICES[pb])
            np.testing.assert_allclose(got, expected, atol=1e-12)

    def test_reversed_orientation(self):
        # control on the right-hand wire of the pair
        circuit = Circuit(2, (Instructor("CX", 1, 0),))
        for a, b in itertools.product(range(4), repeat=2):
            pb, pa, sign = cx_pair_map(b, a)
            expected = sign * np.kron(PAULI_MATRICES[pa], PAULI_MATRICES[pb])
            np.testing.assert_allclose(conjugate_pauli(4 * a + b, circuit), expected, atol=1e-12)
