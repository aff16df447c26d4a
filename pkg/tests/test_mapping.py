import numpy as np
import pytest

from molvqe.mapping import (
    SpinOrbitalLayout,
    _ladder_pair_terms,
    hf_state,
    jordan_wigner,
    jw_number_operator,
)
from molvqe.pauli import PauliString, multiply

from oracles import dense_fermionic_hamiltonian, dense_pauli_sum
from test_fcidump import random_integrals


def basis_expectation(h, bits):
    """<s|H|s> for a computational basis state, computed from masks."""
    total = 0.0
    for p, c in h.items():
        if p.x_mask == 0:
            total += c * (-1.0) ** ((p.z_mask & bits).bit_count())
    return total


def bitstring_to_int(bitstring):
    return sum(1 << k for k, ch in enumerate(bitstring) if ch == "1")


class TestLayout:
    def test_interleaved(self):
        lay = SpinOrbitalLayout(3)
        assert lay.n_qubits == 6
        assert lay.so_index(1, 0) == 2
        assert lay.so_index(1, 1) == 3
        assert lay.spatial_of(5) == 2
        assert lay.spin_of(5) == 1


class TestHfState:
    def test_two_in_four(self):
        assert hf_state(2, 4) == "1100"

    def test_empty(self):
        assert hf_state(0, 5) == "00000"

    def test_overflow(self):
        with pytest.raises(ValueError):
            hf_state(5, 4)


class TestJordanWigner:
    def test_number_operator_single_orbital(self):
        # one spatial orbital with h11 = eps: each spin gives eps*(I - Z)/2
        eps = -1.25
        s = random_integrals(1, 2, seed=0)
        s = type(s)(1, 2, np.array([[eps]]), np.zeros((1, 1, 1, 1)), 0.0)
        h = jordan_wigner(s)
        assert h.coefficient("II") == pytest.approx(eps)
        assert h.coefficient("ZI") == pytest.approx(-eps / 2)
        assert h.coefficient("IZ") == pytest.approx(-eps / 2)
        assert len(h) == 3

    @pytest.mark.parametrize("m,seed", [(1, 0), (2, 1), (2, 2), (3, 3)])
    def test_matches_dense_fermionic_hamiltonian(self, m, seed):
        s = random_integrals(m, 2, seed=seed)
        h = jordan_wigner(s)
        dense = dense_pauli_sum(h)
        ref = dense_fermionic_hamiltonian(s)
        assert np.allclose(dense, ref, atol=1e-10)

    def test_spectrum_matches_dense(self):
        s = random_integrals(2, 2, seed=4)
        h = jordan_wigner(s)
        ev = np.linalg.eigvalsh(dense_pauli_sum(h))
        ref = np.linalg.eigvalsh(dense_fermionic_hamiltonian(s))
        assert np.allclose(ev, ref, atol=1e-10)

    def test_anticommutation_relations(self):
        # {a_p, a^dag_q} = delta_pq as accumulated Pauli sums, n <= 6
        n = 6
        for p in range(n):
            for q in range(n):
                acc = {}
                a_terms = _ladder_pair_annihilator(p, n)
                c_terms = _ladder_pair_creator(q, n)
                for (s1, w1), (s2, w2) in _pairs(a_terms, c_terms):
                    for left, right in ((s1, s2), (s2, s1)):
                        prod = multiply(left, right)
                        key = (prod.x_mask, prod.z_mask)
                        acc[key] = acc.get(key, 0) + w1 * w2 * prod.phase
                expected = 1.0 if p == q else 0.0
                for key, val in acc.items():
                    want = expected if key == (0, 0) else 0.0
                    assert abs(val - want) < 1e-12, (p, q, key)

    def test_commutes_with_number_operator(self):
        s = random_integrals(3, 4, seed=5)
        h = jordan_wigner(s)
        n_op = jw_number_operator(h.n_qubits)
        acc = {}
        for ph, ch in h.items():
            for pn, cn in n_op.items():
                for left, right, sign in ((ph, pn, 1.0), (pn, ph, -1.0)):
                    prod = multiply(left, right)
                    key = (prod.x_mask, prod.z_mask)
                    acc[key] = acc.get(key, 0) + sign * ch * cn * prod.phase
        assert all(abs(v) < 1e-10 for v in acc.values())

    def test_hf_expectation_equals_integral_hf_energy(self):
        from molvqe.fcidump import hf_energy

        s = random_integrals(3, 4, seed=6)
        h = jordan_wigner(s)
        bits = bitstring_to_int(hf_state(4, 6))
        assert basis_expectation(h, bits) == pytest.approx(hf_energy(s), abs=1e-10)

    def test_constant_rides_identity(self):
        s = random_integrals(2, 2, seed=7)
        shifted = type(s)(2, 2, s.h, s.g, s.e_constant + 1.5, s.orbsym)
        h0 = jordan_wigner(s)
        h1 = jordan_wigner(shifted)
        assert h1.coefficient("II") - h0.coefficient("II") == pytest.approx(1.5)


def _ladder_pair_annihilator(p, n):
    # a_p = (X + iY)/2 * Z-string below p
    zP = (1 << p) - 1
    return [
        (PauliString(n, 1 << p, zP), 0.5),
        (PauliString(n, 1 << p, zP | (1 << p)), 0.5j),
    ]


def _ladder_pair_creator(p, n):
    return [(s, np.conj(w)) for s, w in _ladder_pair_annihilator(p, n)]


def _pairs(a, b):
    for ta in a:
        for tb in b:
            yield ta, tb


class TestLadderPairTerms:
    def test_number_case(self):
        terms = _ladder_pair_terms(2, 2, 4)
        assert sorted(terms) == [(0, 0, 0.5), (0, 4, -0.5)]

    def test_hopping_is_hermitian_pairwise(self):
        # a^dag_P a_Q terms are conjugate-transposes of a^dag_Q a_P terms
        up = _ladder_pair_terms(0, 3, 4)
        down = _ladder_pair_terms(3, 0, 4)
        up_map = {(x, z): w for x, z, w in up}
        for x, z, w in down:
            assert up_map[(x, z)] == pytest.approx(np.conj(w))
