"""Restricted Hartree-Fock with symmetry-blocked Fock diagonalization.

Diagonalizing the Fock matrix inside each irrep block keeps the canonical
orbitals symmetry-pure, so symmetry-forbidden MO integrals vanish to
machine precision and downstream qubit Hamiltonians carry the exact Z2
structure of the point group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .basis import ATOMIC_NUMBER, build_shells
from .integrals import (
    electron_repulsion,
    nuclear_attraction,
    nuclear_repulsion,
    overlap_kinetic,
)
from .symmetry import detect_mirror_generators, irrep_projectors, point_group_name

ANGSTROM_TO_BOHR = 1.0 / 0.529177210903


class ScfError(RuntimeError):
    pass


@dataclass
class ScfResult:
    symbols: list
    coords_bohr: np.ndarray
    e_hf: float
    e_nuc: float
    mo_energies: np.ndarray
    mo_coeffs: np.ndarray  # AO x MO
    orbsym: tuple
    point_group: str
    n_electrons: int
    h_mo: np.ndarray
    g_mo: np.ndarray  # chemists' notation (pq|rs)
    symmetry_residual: float  # largest forbidden MO integral before zeroing


def _mo_transform(h_ao, eri_ao, c):
    h_mo = c.T @ h_ao @ c
    g = np.einsum("up,uvls->pvls", c, eri_ao, optimize=True)
    g = np.einsum("vq,pvls->pqls", c, g, optimize=True)
    g = np.einsum("lr,pqls->pqrs", c, g, optimize=True)
    g = np.einsum("st,pqrs->pqrt", c, g, optimize=True)
    return h_mo, g


def _purify_symmetry(h_mo, g_mo, orbsym):
    """Zero symmetry-forbidden MO integrals; returns the worst offender."""
    labels = np.asarray(orbsym) - 1
    worst = 0.0
    m = len(labels)
    pair = labels[:, None] ^ labels[None, :]
    h_bad = pair != 0
    worst = max(worst, float(np.max(np.abs(h_mo[h_bad]))) if h_bad.any() else 0.0)
    h_mo = np.where(h_bad, 0.0, h_mo)
    quad = pair[:, :, None, None] ^ pair[None, None, :, :]
    g_bad = quad != 0
    if g_bad.any():
        worst = max(worst, float(np.max(np.abs(g_mo[g_bad]))))
    g_mo = np.where(g_bad, 0.0, g_mo)
    return h_mo, g_mo, worst


def run_rhf(symbols, coords_angstrom, max_iterations=200, e_tol=1e-12, d_tol=1e-9):
    """Converge RHF/STO-3G and return symmetry-pure canonical MO integrals."""
    coords = np.asarray(coords_angstrom, dtype=float) * ANGSTROM_TO_BOHR
    charges = [float(ATOMIC_NUMBER[s]) for s in symbols]
    n_electrons = int(sum(charges))
    if n_electrons % 2:
        raise ScfError("restricted HF requires an even electron count")
    n_occ = n_electrons // 2

    shells = build_shells(symbols, coords)
    s_mat, t_mat = overlap_kinetic(shells)
    v_mat = nuclear_attraction(shells, charges, coords)
    eri = electron_repulsion(shells)
    h_core = t_mat + v_mat
    e_nuc = nuclear_repulsion(charges, coords)

    s_val, s_vec = np.linalg.eigh(s_mat)
    if s_val.min() < 1e-8:
        raise ScfError(f"near-singular overlap (min eigenvalue {s_val.min():.3e})")
    s_half_inv = s_vec @ np.diag(s_val**-0.5) @ s_vec.T
    s_half = s_vec @ np.diag(s_val**0.5) @ s_vec.T

    generators = detect_mirror_generators(symbols, coords)
    blocks = irrep_projectors(shells, generators, s_half_inv, s_half)

    def diagonalize(f_ao):
        f_ortho = s_half_inv @ f_ao @ s_half_inv
        energies, coeffs, labels = [], [], []
        for label, basis in blocks:
            fb = basis.T @ f_ortho @ basis
            eps, vec = np.linalg.eigh(fb)
            c_block = s_half_inv @ basis @ vec
            energies.extend(eps)
            labels.extend([label] * len(eps))
            coeffs.append(c_block)
        energies = np.array(energies)
        labels = np.array(labels)
        c_all = np.hstack(coeffs)
        # deterministic energy order; irrep label breaks degenerate ties
        order = np.lexsort((labels, np.round(energies, 9)))
        return energies[order], c_all[:, order], labels[order]

    def fock(density):
        j = np.einsum("uvls,ls->uv", eri, density, optimize=True)
        k = np.einsum("ulvs,ls->uv", eri, density, optimize=True)
        return h_core + j - 0.5 * k

    eps, c, labels = diagonalize(h_core)
    density = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T
    energy = 0.0
    diis_f, diis_e = [], []
    for iteration in range(max_iterations):
        f_ao = fock(density)
        err = s_half_inv @ (f_ao @ density @ s_mat - s_mat @ density @ f_ao) @ s_half_inv
        diis_f.append(f_ao)
        diis_e.append(err)
        if len(diis_f) > 8:
            diis_f.pop(0)
            diis_e.pop(0)
        if len(diis_f) > 1:
            f_ao = _diis_extrapolate(diis_f, diis_e)
        eps, c, labels = diagonalize(f_ao)
        density_new = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T
        e_new = 0.5 * float(np.sum(density_new * (h_core + fock(density_new)))) + e_nuc
        d_err = float(np.max(np.abs(density_new - density)))
        converged = abs(e_new - energy) < e_tol and d_err < d_tol and iteration > 1
        density, energy = density_new, e_new
        if converged:
            break
    else:
        raise ScfError(
            f"SCF failed to converge in {max_iterations} iterations "
            f"(last dE={abs(e_new - energy):.3e}, dD={d_err:.3e})"
        )

    h_mo, g_mo = _mo_transform(h_core, eri, c)
    orbsym = tuple(int(x) for x in labels)
    h_mo, g_mo, residual = _purify_symmetry(h_mo, g_mo, orbsym)
    if residual > 1e-8:
        raise ScfError(f"symmetry-forbidden MO integral of size {residual:.3e}")

    # cross-check: HF energy reassembled from MO integrals
    occ = slice(0, n_occ)
    e_mo = e_nuc + 2.0 * np.trace(h_mo[occ, occ])
    e_mo += 2.0 * np.einsum("iijj->", g_mo[occ, occ, occ, occ])
    e_mo -= np.einsum("ijji->", g_mo[occ, occ, occ, occ])
    if abs(e_mo - energy) > 1e-8:
        raise ScfError(f"MO-basis energy mismatch: {e_mo} vs {energy}")

    return ScfResult(
        symbols=list(symbols),
        coords_bohr=coords,
        e_hf=float(energy),
        e_nuc=float(e_nuc),
        mo_energies=eps,
        mo_coeffs=c,
        orbsym=orbsym,
        point_group=point_group_name(generators),
        n_electrons=n_electrons,
        h_mo=h_mo,
        g_mo=g_mo,
        symmetry_residual=residual,
    )


def _diis_extrapolate(focks, errors):
    m = len(focks)
    b = -np.ones((m + 1, m + 1))
    b[m, m] = 0.0
    for i in range(m):
        for j in range(m):
            b[i, j] = float(np.sum(errors[i] * errors[j]))
    rhs = np.zeros(m + 1)
    rhs[m] = -1.0
    try:
        coeff = sla.solve(b, rhs)[:m]
    except sla.LinAlgError:
        return focks[-1]
    return sum(c * f for c, f in zip(coeff, focks))
