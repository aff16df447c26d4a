"""Abelian point-group handling via coordinate-plane reflections.

Detected mirror planes generate C1/Cs/C2v/D2h (order 2^g).  Irrep labels
follow the XOR convention: label = 1 + sum of bits, bit i set when the
character under generator i is -1.  With generators ordered (x->-x,
y->-y, z->-z) the D2h labels come out in the standard MOLPRO order
Ag, B3u, B2u, B1g, B1u, B2g, B3g, Au.
"""

from __future__ import annotations

import itertools

import numpy as np

GENERATOR_AXES = (0, 1, 2)  # reflection flips this coordinate
GROUP_NAMES = {0: "C1", 1: "Cs", 2: "C2v", 3: "D2h"}


def detect_mirror_generators(symbols, coords, tol=1e-6):
    """Axes whose coordinate-plane reflection maps the molecule onto itself."""
    coords = np.asarray(coords, dtype=float)
    generators = []
    for axis in GENERATOR_AXES:
        mapped = coords.copy()
        mapped[:, axis] *= -1.0
        ok = True
        for i, (sym, pos) in enumerate(zip(symbols, mapped)):
            match = [
                j
                for j, (s2, p2) in enumerate(zip(symbols, coords))
                if s2 == sym and np.linalg.norm(p2 - pos) < tol
            ]
            if not match:
                ok = False
                break
        if ok:
            generators.append(axis)
    return generators


def point_group_name(generators):
    return GROUP_NAMES[len(generators)]


def ao_reflection_matrix(shells, axis):
    """Signed permutation of the AO basis under a coordinate reflection."""
    from .basis import n_basis_functions

    n = n_basis_functions(shells)
    # basis offsets and a lookup of shell descriptors for matching
    offsets = []
    acc = 0
    for sh in shells:
        offsets.append(acc)
        acc += sh.n_functions
    mat = np.zeros((n, n))
    for i, sh in enumerate(shells):
        target = sh.center.copy()
        target[axis] *= -1.0
        partner = None
        for j, other in enumerate(shells):
            if (
                other.l == sh.l
                and other.exps.shape == sh.exps.shape
                and np.allclose(other.exps, sh.exps)
                and np.allclose(other.coefs, sh.coefs)
                and np.linalg.norm(other.center - target) < 1e-6
            ):
                partner = j
                break
        if partner is None:
            raise ValueError("molecule is not symmetric under the requested reflection")
        if sh.l == 0:
            mat[offsets[partner], offsets[i]] = 1.0
        else:
            for comp in range(3):
                sign = -1.0 if comp == axis else 1.0
                mat[offsets[partner] + comp, offsets[i] + comp] = sign
    return mat


def irrep_projectors(shells, generators, s_half_inv, s_half):
    """Orthonormal symmetry-adapted bases, one per irrep character vector.

    Returns a list of (label, basis) pairs; ``basis`` columns span the
    irrep subspace in the orthonormalized AO basis.  Labels follow the XOR
    convention and cover 1..2^g (irreps with empty span are skipped).
    """
    n = s_half_inv.shape[0]
    reps = []
    for axis in generators:
        r_ao = ao_reflection_matrix(shells, axis)
        reps.append(s_half @ r_ao @ s_half_inv)  # orthogonal in the Loewdin basis

    blocks = []
    for chars in itertools.product((1, -1), repeat=len(generators)):
        proj = np.eye(n)
        for chi, rep in zip(chars, reps):
            proj = proj @ (0.5 * (np.eye(n) + chi * rep))
        eigval, eigvec = np.linalg.eigh(proj)
        cols = eigvec[:, eigval > 0.5]
        if cols.shape[1] == 0:
            continue
        label = 1 + sum((1 << i) for i, chi in enumerate(chars) if chi == -1)
        blocks.append((label, cols))
    total = sum(b.shape[1] for _, b in blocks)
    if total != n:
        raise AssertionError(f"irrep bases span {total} of {n} AOs")
    return blocks
