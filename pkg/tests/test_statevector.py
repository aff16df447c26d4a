import numpy as np
import pytest
from scipy.linalg import expm

from molvqe.excitations import AnsatzSpec, Excitation
from molvqe.mapping import hf_state, jordan_wigner, jw_number_operator
from molvqe.pauli import PauliSum
from molvqe.statevector import (
    Statevector,
    apply_ansatz,
    apply_fermionic_excitation,
    apply_qubit_double,
    apply_qubit_single,
    bitstring_index,
    exact_ground_energy,
    exact_spectrum,
    expectation,
    prepare_basis,
)

from oracles import I2, LOWER, RAISE, dense_annihilator, dense_creator, dense_pauli_sum, kron_chain
from test_fcidump import random_integrals


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    amp = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return Statevector(amp / np.linalg.norm(amp), n)


def dense_qubit_generator(occupied, virtual, n):
    """G = |vac_occ, occ_vir><occ_occ, vac_vir| - h.c. without parity strings."""
    mats = [I2] * n
    for k in occupied:
        mats[k] = LOWER
    for k in virtual:
        mats[k] = RAISE
    t = kron_chain(mats)
    return t - t.T.conj()


def dense_fermionic_generator(occupied, virtual, n):
    if len(occupied) == 1:
        (i,), (a,) = occupied, virtual
        t = dense_creator(a, n) @ dense_annihilator(i, n)
    else:
        (i, j), (a, b) = sorted(occupied), sorted(virtual)
        t = (
            dense_creator(a, n)
            @ dense_creator(b, n)
            @ dense_annihilator(j, n)
            @ dense_annihilator(i, n)
        )
    return t - t.T.conj()


class TestPrepareBasis:
    def test_zero_state(self):
        v = prepare_basis("00")
        assert v.amplitudes[0] == 1.0
        assert np.count_nonzero(v.amplitudes) == 1

    def test_one_one(self):
        v = prepare_basis("11")
        assert v.amplitudes[3] == 1.0

    def test_qubit_zero_is_first_character(self):
        assert bitstring_index("10") == 1
        assert bitstring_index("01") == 2

    def test_norm(self):
        assert prepare_basis("0101").norm() == pytest.approx(1.0)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            Statevector(np.ones(4), 2)


class TestQubitExcitations:
    def test_zero_angle_identity(self):
        v = random_state(3, 0)
        out = apply_qubit_single(v, 1, 2, 0.0)
        assert np.allclose(out.amplitudes, v.amplitudes)

    def test_half_pi_swaps_occupation(self):
        v = prepare_basis("01")  # qubit 1 occupied
        out = apply_qubit_single(v, 1, 0, np.pi / 2)
        assert abs(out.amplitudes[bitstring_index("10")]) == pytest.approx(1.0)

    @pytest.mark.parametrize("i,a", [(0, 1), (0, 3), (2, 1)])
    def test_single_matches_dense_exponential(self, i, a):
        n, theta = 4, 0.37
        v = random_state(n, seed=i * 7 + a)
        out = apply_qubit_single(v, i, a, theta)
        occ, vir = (i,), (a,)
        u = expm(theta * dense_qubit_generator(tuple(sorted(occ)), tuple(sorted(vir)), n))
        assert np.allclose(out.amplitudes, u @ v.amplitudes, atol=1e-12)

    @pytest.mark.parametrize("occ,vir", [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((1, 3), (0, 2))])
    def test_double_matches_dense_exponential(self, occ, vir):
        n, theta = 4, -0.81
        v = random_state(n, seed=11)
        out = apply_qubit_double(v, *occ, *vir, theta)
        u = expm(theta * dense_qubit_generator(occ, vir, n))
        assert np.allclose(out.amplitudes, u @ v.amplitudes, atol=1e-12)

    def test_norm_preserved(self):
        v = random_state(4, 5)
        out = apply_qubit_double(v, 0, 1, 2, 3, 1.23)
        assert abs(out.norm() - 1.0) < 1e-10

    def test_inverse(self):
        v = random_state(4, 6)
        out = apply_qubit_single(apply_qubit_single(v, 0, 2, 0.4), 0, 2, -0.4)
        assert np.allclose(out.amplitudes, v.amplitudes, atol=1e-10)

    def test_index_validation(self):
        v = random_state(2, 7)
        with pytest.raises(ValueError):
            apply_qubit_single(v, 0, 5, 0.1)
        with pytest.raises(ValueError):
            apply_qubit_single(v, 1, 1, 0.1)


class TestFermionicExcitations:
    def test_no_intervening_occupation_matches_qubit(self):
        # adjacent indices: empty Z string
        v = random_state(3, 8)
        exc = Excitation("single", (0,), (2,), "fermionic")
        # ensure nothing occupied between 0 and 2 matters: use state with qubit 1 empty
        amp = v.amplitudes.copy()
        for idx in range(8):
            if (idx >> 1) & 1:
                amp[idx] = 0.0
        amp /= np.linalg.norm(amp)
        v = Statevector(amp, 3)
        fer = apply_fermionic_excitation(v, exc, 0.3)
        qub = apply_qubit_single(v, 0, 2, 0.3)
        assert np.allclose(fer.amplitudes, qub.amplitudes, atol=1e-12)

    def test_intervening_occupation_flips_rotation(self):
        base = prepare_basis("0110")  # qubits 1, 2 occupied
        exc = Excitation("single", (1,), (3,), "fermionic")
        fer = apply_fermionic_excitation(base, exc, 0.3)
        qub = apply_qubit_single(base, 1, 3, 0.3)
        # qubit 2 sits between 1 and 3 and is occupied: angle sign flips
        flipped = apply_qubit_single(base, 1, 3, -0.3)
        assert np.allclose(fer.amplitudes, flipped.amplitudes, atol=1e-12)
        assert not np.allclose(fer.amplitudes, qub.amplitudes)

    @pytest.mark.parametrize("occ,vir,n", [
        ((0,), (2,), 4),
        ((2,), (0,), 4),
        ((1,), (3,), 6),
        ((0, 1), (2, 3), 4),
        ((0, 3), (2, 5), 6),
        ((1, 2), (4, 5), 6),
        ((0, 1), (4, 5), 6),
        ((2, 5), (0, 3), 6),
    ])
    def test_matches_dense_jw_exponential(self, occ, vir, n):
        theta = 0.53
        v = random_state(n, seed=n + occ[0])
        kind = "single" if len(occ) == 1 else "double"
        exc = Excitation(kind, occ, vir, "fermionic")
        out = apply_fermionic_excitation(v, exc, theta)
        u = expm(theta * dense_fermionic_generator(exc.occupied, exc.virtual, n))
        assert np.allclose(out.amplitudes, u @ v.amplitudes, atol=1e-12)

    def test_inverse(self):
        v = random_state(6, 10)
        exc = Excitation("double", (0, 3), (2, 5), "fermionic")
        out = apply_fermionic_excitation(apply_fermionic_excitation(v, exc, 0.7), exc, -0.7)
        assert np.allclose(out.amplitudes, v.amplitudes, atol=1e-10)


class TestApplyAnsatz:
    def _tiny_ansatz(self, flavor="qubit"):
        excs = (
            Excitation("double", (0, 1), (2, 3), flavor, 0),
            Excitation("single", (0,), (2,), flavor, 1),
        )
        return AnsatzSpec("UCCSDQ", excs, 1, 4, 2)

    def test_zero_angles_do_nothing(self):
        v = prepare_basis("1100")
        out = apply_ansatz(v, self._tiny_ansatz(), [0.0, 0.0])
        assert np.allclose(out.amplitudes, v.amplitudes)

    def test_parameter_count_checked(self):
        v = prepare_basis("1100")
        with pytest.raises(ValueError):
            apply_ansatz(v, self._tiny_ansatz(), [0.1])

    def test_single_excitation_ansatz_delegates(self):
        v = prepare_basis("1100")
        exc = Excitation("single", (1,), (3,), "qubit", 0)
        a = AnsatzSpec("UCCSDQ", (exc,), 1, 4, 1)
        out = apply_ansatz(v, a, [0.21])
        ref = apply_qubit_single(v, 1, 3, 0.21)
        assert np.allclose(out.amplitudes, ref.amplitudes)

    def test_particle_number_conserved(self):
        v = prepare_basis(hf_state(2, 4))
        rng = np.random.default_rng(0)
        out = apply_ansatz(v, self._tiny_ansatz("fermionic"), rng.normal(size=2))
        n_op = jw_number_operator(4)
        assert expectation(out, n_op) == pytest.approx(2.0, abs=1e-10)


class TestFixtureAnsatzDenseEquivalence:
    @pytest.mark.parametrize("variant", ["uccsd", "uccsdq"])
    def test_every_excitation_matches_dense_exponential(self, variant):
        # (2e, 3o) active space of LiH: 6 qubits, full ansatz excitation list
        from pathlib import Path

        from molvqe.excitations import build_ansatz
        from molvqe.fcidump import read_fcidump, select_active_space

        path = Path(__file__).resolve().parent.parent / "fixtures" / "lih.fcidump"
        if not path.exists():
            pytest.skip("fixtures not generated")
        s = select_active_space(read_fcidump(path), 2, 3)
        ansatz = build_ansatz(variant, s.n_spatial, s.n_electrons)
        n = ansatz.n_qubits
        assert n == 6
        v = random_state(n, 21)
        theta = 0.41
        for exc in ansatz.excitations:
            out = apply_fermionic_excitation(v, exc, theta) if exc.flavor == "fermionic" \
                else _apply_qubit(v, exc, theta)
            if exc.flavor == "fermionic":
                gen = dense_fermionic_generator(exc.occupied, exc.virtual, n)
            else:
                gen = dense_qubit_generator(exc.occupied, exc.virtual, n)
            ref = expm(theta * gen) @ v.amplitudes
            assert np.allclose(out.amplitudes, ref, atol=1e-11), exc


def _apply_qubit(v, exc, theta):
    if exc.kind == "single":
        return apply_qubit_single(v, exc.occupied[0], exc.virtual[0], theta)
    return apply_qubit_double(v, *exc.occupied, *exc.virtual, theta)


class TestExpectation:
    def test_z_on_vacuum(self):
        v = prepare_basis("000")
        h = PauliSum.from_terms(3, [("IZI", 1.0)])
        assert expectation(v, h) == pytest.approx(1.0)

    def test_identity_is_one(self):
        v = random_state(3, 12)
        assert expectation(v, PauliSum.identity(3)) == pytest.approx(1.0)

    def test_hf_expectation_matches_integral_energy(self):
        from molvqe.fcidump import hf_energy

        s = random_integrals(3, 4, seed=13)
        h = jordan_wigner(s)
        v = prepare_basis(hf_state(4, 6))
        assert expectation(v, h) == pytest.approx(hf_energy(s), abs=1e-10)

    def test_matches_dense(self):
        h = PauliSum.from_terms(3, [("XYZ", 0.3), ("ZZI", -0.4), ("III", 0.9)])
        v = random_state(3, 14)
        ref = np.vdot(v.amplitudes, dense_pauli_sum(h) @ v.amplitudes).real
        assert expectation(v, h) == pytest.approx(ref, abs=1e-12)


class TestExactGroundEnergy:
    def test_minus_z(self):
        h = PauliSum.from_terms(1, [("Z", -1.0)])
        assert exact_ground_energy(h) == pytest.approx(-1.0)

    def test_ground_below_hf(self):
        from molvqe.fcidump import hf_energy

        s = random_integrals(2, 2, seed=15)
        h = jordan_wigner(s)
        assert exact_ground_energy(h) <= hf_energy(s) + 1e-12

    def test_sector_restriction(self):
        s = random_integrals(2, 2, seed=16)
        h = jordan_wigner(s)
        dense = dense_pauli_sum(h)
        idx = [i for i in range(16) if bin(i).count("1") == 2]
        ref = np.linalg.eigvalsh(dense[np.ix_(idx, idx)]).min()
        assert exact_ground_energy(h, particle_sector=2) == pytest.approx(ref, abs=1e-10)

    def test_size_bound(self):
        h = PauliSum.identity(17)
        with pytest.raises(ValueError, match="sector"):
            exact_ground_energy(h)

    def test_spectrum_matches_dense(self):
        h = PauliSum.from_terms(2, [("XX", 0.5), ("ZI", -0.3), ("YY", 0.1)])
        ref = np.linalg.eigvalsh(dense_pauli_sum(h))
        assert np.allclose(exact_spectrum(h), ref, atol=1e-10)
