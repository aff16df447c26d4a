import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from fixturegen.basis import build_shells
from fixturegen.ci import casci_ground_energy, freeze_core_integrals
from fixturegen.generate import MOLECULES, generate_fixture
from fixturegen.integrals import (
    boys,
    electron_repulsion,
    nuclear_attraction,
    nuclear_repulsion,
    overlap_kinetic,
)
from fixturegen.scf import ScfError, run_rhf
from fixturegen.symmetry import detect_mirror_generators, point_group_name

BOHR_H2 = np.array([[0.0, 0.0, -0.7], [0.0, 0.0, 0.7]])


class TestBoys:
    def test_zero_argument(self):
        f = boys(4, [0.0])[0]
        for m in range(5):
            assert f[m] == pytest.approx(1.0 / (2 * m + 1), abs=1e-14)

    def test_large_argument_asymptote(self):
        t = 30.0
        f0 = boys(0, [t])[0, 0]
        assert f0 == pytest.approx(0.5 * np.sqrt(np.pi / t), rel=1e-6)


class TestIntegrals:
    """Textbook H2/STO-3G values at R = 1.4 bohr (Szabo & Ostlund)."""

    @pytest.fixture(scope="class")
    def h2_matrices(self):
        shells = build_shells(["H", "H"], BOHR_H2)
        s, t = overlap_kinetic(shells)
        v = nuclear_attraction(shells, [1.0, 1.0], BOHR_H2)
        eri = electron_repulsion(shells)
        return s, t, v, eri

    def test_overlap(self, h2_matrices):
        s, *_ = h2_matrices
        assert s[0, 0] == pytest.approx(1.0, abs=1e-10)
        assert s[0, 1] == pytest.approx(0.6593, abs=1e-4)

    def test_kinetic(self, h2_matrices):
        _, t, *_ = h2_matrices
        assert t[0, 0] == pytest.approx(0.7600, abs=1e-4)
        assert t[0, 1] == pytest.approx(0.2365, abs=1e-4)

    def test_nuclear_attraction(self, h2_matrices):
        *_, v, _ = h2_matrices
        assert v[0, 0] == pytest.approx(-1.8804, abs=1e-4)
        assert v[0, 1] == pytest.approx(-1.1948, abs=1e-4)

    def test_electron_repulsion(self, h2_matrices):
        *_, eri = h2_matrices
        assert eri[0, 0, 0, 0] == pytest.approx(0.7746, abs=1e-4)
        assert eri[0, 0, 1, 1] == pytest.approx(0.5697, abs=1e-4)
        assert eri[0, 1, 0, 1] == pytest.approx(0.2970, abs=1e-4)

    def test_eri_eightfold_symmetry(self, h2_matrices):
        *_, eri = h2_matrices
        assert np.allclose(eri, eri.transpose(1, 0, 2, 3), atol=1e-12)
        assert np.allclose(eri, eri.transpose(0, 1, 3, 2), atol=1e-12)
        assert np.allclose(eri, eri.transpose(2, 3, 0, 1), atol=1e-12)

    def test_nuclear_repulsion(self):
        assert nuclear_repulsion([1.0, 1.0], BOHR_H2) == pytest.approx(1.0 / 1.4)


class TestScf:
    def test_beryllium_atom_literature_value(self):
        res = run_rhf(["Be"], [[0.0, 0.0, 0.0]])
        assert res.e_hf == pytest.approx(-14.351880, abs=1e-5)

    def test_h2_total_energy(self):
        res = run_rhf(["H", "H"], [[0, 0, -0.3675], [0, 0, 0.3675]])
        assert res.e_hf == pytest.approx(-1.117, abs=1e-3)

    def test_rotation_invariance_exercises_p_functions(self):
        rng = np.random.default_rng(5)
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        base = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.5949]])
        e1 = run_rhf(["Li", "H"], base).e_hf
        e2 = run_rhf(["Li", "H"], base @ q.T).e_hf
        assert e1 == pytest.approx(e2, abs=1e-9)

    def test_symmetry_purity(self):
        res = run_rhf(["Li", "H"], [[0, 0, 0], [0, 0, 1.5949]])
        assert res.point_group == "C2v"
        assert res.symmetry_residual < 1e-10
        labels = np.asarray(res.orbsym)
        pair = (labels[:, None] - 1) ^ (labels[None, :] - 1)
        assert np.all(res.h_mo[pair != 0] == 0.0)

    def test_singular_overlap_rejected(self):
        with pytest.raises(ScfError, match="overlap"):
            run_rhf(["H", "H"], [[0, 0, 0], [0, 0, 0]])

    def test_odd_electron_count_rejected(self):
        with pytest.raises(ScfError, match="even"):
            run_rhf(["H"], [[0, 0, 0]])


class TestSymmetryDetection:
    def test_groups(self):
        assert point_group_name(detect_mirror_generators(["H", "H"], [[0, 0, -1], [0, 0, 1]])) == "D2h"
        assert point_group_name(detect_mirror_generators(["Li", "H"], [[0, 0, 0], [0, 0, 1]])) == "C2v"
        spec = MOLECULES["ch3nh2"]
        assert point_group_name(detect_mirror_generators(spec["symbols"], spec["coords"])) == "Cs"
        skew = [[0.1, 0.2, 0.3], [1.0, 1.1, -0.4]]
        assert point_group_name(detect_mirror_generators(["Li", "H"], skew)) == "C1"


class TestCi:
    def test_h2_fci_below_hf(self):
        res = run_rhf(["H", "H"], [[0, 0, -0.3675], [0, 0, 0.3675]])
        e_fci = casci_ground_energy(res.h_mo, res.g_mo, res.e_nuc, 1, 1)
        assert e_fci < res.e_hf - 1e-3
        assert e_fci == pytest.approx(-1.1373, abs=2e-4)

    def test_casci_full_window_equals_fci(self):
        res = run_rhf(["Li", "H"], [[0, 0, 0], [0, 0, 1.5949]])
        full = casci_ground_energy(res.h_mo, res.g_mo, res.e_nuc, 2, 2)
        from fixturegen.ci import active_space_energy

        windowed = active_space_energy(res.h_mo, res.g_mo, res.e_nuc, 4, 4, 6)
        assert windowed == pytest.approx(full, abs=1e-10)

    def test_frozen_core_hf_energy_invariant(self):
        res = run_rhf(["Li", "H"], [[0, 0, 0], [0, 0, 1.5949]])
        h_f, g_f, e_f = freeze_core_integrals(res.h_mo, res.g_mo, res.e_nuc, 1)
        occ = slice(0, 1)
        e_hf_folded = e_f + 2.0 * np.trace(h_f[occ, occ])
        e_hf_folded += 2.0 * np.einsum("iijj->", g_f[occ, occ, occ, occ])
        e_hf_folded -= np.einsum("ijji->", g_f[occ, occ, occ, occ])
        assert e_hf_folded == pytest.approx(res.e_hf, abs=1e-10)


def primary_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "molvqe.cli", *args], capture_output=True, text=True
    )


@pytest.mark.skipif(
    primary_cli("--help").returncode != 0, reason="primary toolkit not installed"
)
class TestCrossComponent:
    """The emitted files are consumed strictly through the primary's
    external interfaces: the FCIDUMP format and the command line."""

    @pytest.fixture(scope="class")
    def generated(self, tmp_path_factory):
        out = tmp_path_factory.mktemp("fixtures")
        refs = {name: generate_fixture(name, out) for name in ("h2", "lih")}
        return out, refs

    def test_fcidump_parses_and_fci_matches(self, generated):
        out, refs = generated
        for name in ("h2", "lih"):
            proc = primary_cli("fci", "--fcidump", str(out / f"{name}.fcidump"), "--out", "json")
            assert proc.returncode == 0, proc.stderr
            energy = json.loads(proc.stdout)["energy"]
            assert energy == pytest.approx(refs[name]["fci"]["full"], abs=1e-8)

    def test_hf_energy_cross_check(self, generated):
        out, refs = generated
        for name in ("h2", "lih"):
            proc = primary_cli(
                "run", "--fcidump", str(out / f"{name}.fcidump"),
                "--ansatz", "uccsd", "--maxiter", "0", "--out", "json",
            )
            assert proc.returncode == 0, proc.stderr
            start = json.loads(proc.stdout)["trace"][0]["energy"]
            assert start == pytest.approx(refs[name]["hf_total_energy"], abs=1e-8)

    def test_frozen_core_reference(self, generated):
        out, refs = generated
        proc = primary_cli(
            "fci", "--fcidump", str(out / "lih.fcidump"), "--freeze", "1", "--out", "json",
        )
        energy = json.loads(proc.stdout)["energy"]
        assert energy == pytest.approx(refs["lih"]["fci"]["frozen_core_1"], abs=1e-8)

    def test_cas_reference_on_committed_fixture(self):
        committed = Path(__file__).resolve().parents[2] / "fixtures"
        if not (committed / "references.json").exists():
            pytest.skip("committed fixtures absent")
        refs = json.loads((committed / "references.json").read_text())
        proc = primary_cli(
            "fci", "--fcidump", str(committed / "ch3nh2.fcidump"),
            "--active", "6,6", "--out", "json",
        )
        energy = json.loads(proc.stdout)["energy"]
        assert energy == pytest.approx(refs["ch3nh2"]["fci"]["cas_6e_6o"], abs=1e-8)
