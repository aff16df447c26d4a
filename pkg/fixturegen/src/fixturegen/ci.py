"""Determinant-basis CI for reference energies (Slater-Condon rules).

Works directly with spatial-orbital integrals in chemists' notation; spin
enters through separate alpha/beta occupation strings.  Independent of any
qubit mapping, which makes it a genuine cross-check for the VQE side.
"""

from __future__ import annotations

import itertools

import numpy as np


def _strings(n_orb, n_elec):
    out = []
    for occ in itertools.combinations(range(n_orb), n_elec):
        mask = 0
        for k in occ:
            mask |= 1 << k
        out.append(mask)
    return out


def _occ_list(mask, n_orb):
    return [k for k in range(n_orb) if (mask >> k) & 1]


def _sign_between(mask, i, a):
    lo, hi = (i, a) if i < a else (a, i)
    window = mask & (((1 << hi) - 1) ^ ((1 << (lo + 1)) - 1))
    return -1.0 if bin(window).count("1") % 2 else 1.0


def _double_sign(mask, i, j, a, b):
    """Parity of a+_a a+_b a_j a_i on a string with i<j occupied, a<b free."""
    sign = 1.0
    for k in (i, j):
        below = mask & ((1 << k) - 1)
        if bin(below).count("1") % 2:
            sign = -sign
        mask ^= 1 << k
    for k in (b, a):
        below = mask & ((1 << k) - 1)
        if bin(below).count("1") % 2:
            sign = -sign
        mask ^= 1 << k
    return sign


def _diagonal(occ_a, occ_b, h, g):
    e = sum(h[i, i] for i in occ_a) + sum(h[i, i] for i in occ_b)
    for occ in (occ_a, occ_b):
        for i in occ:
            for j in occ:
                e += 0.5 * (g[i, i, j, j] - g[i, j, j, i])
    for i in occ_a:
        for j in occ_b:
            e += g[i, i, j, j]
    return e


def _single_element(mask_same, occ_same, occ_other, i, a, h, g):
    val = h[i, a]
    for k in occ_same:
        val += g[i, a, k, k] - g[i, k, k, a]
    for k in occ_other:
        val += g[i, a, k, k]
    return _sign_between(mask_same, i, a) * val


def casci_ground_energy(h, g, e_const, n_alpha, n_beta, n_roots=1):
    """Lowest eigenvalue(s) of the CI matrix over all determinants."""
    n_orb = h.shape[0]
    a_strings = _strings(n_orb, n_alpha)
    b_strings = _strings(n_orb, n_beta)
    a_index = {s: i for i, s in enumerate(a_strings)}
    b_index = {s: i for i, s in enumerate(b_strings)}
    na, nb = len(a_strings), len(b_strings)
    dim = na * nb
    mat = np.zeros((dim, dim))

    a_occs = [_occ_list(s, n_orb) for s in a_strings]
    b_occs = [_occ_list(s, n_orb) for s in b_strings]

    def det(ia, ib):
        return ia * nb + ib

    for ia, (sa, occ_a) in enumerate(zip(a_strings, a_occs)):
        vir_a = [k for k in range(n_orb) if not (sa >> k) & 1]
        for ib, (sb, occ_b) in enumerate(zip(b_strings, b_occs)):
            row = det(ia, ib)
            mat[row, row] = _diagonal(occ_a, occ_b, h, g)

            vir_b = [k for k in range(n_orb) if not (sb >> k) & 1]

            # single excitations
            for i in occ_a:
                for a in vir_a:
                    col = det(a_index[sa ^ (1 << i) ^ (1 << a)], ib)
                    if col > row:
                        mat[row, col] = mat[col, row] = _single_element(
                            sa, occ_a, occ_b, i, a, h, g
                        )
            for i in occ_b:
                for a in vir_b:
                    col = det(ia, b_index[sb ^ (1 << i) ^ (1 << a)])
                    if col > row:
                        mat[row, col] = mat[col, row] = _single_element(
                            sb, occ_b, occ_a, i, a, h, g
                        )

            # same-spin doubles
            for (i, j) in itertools.combinations(occ_a, 2):
                for (a, b) in itertools.combinations(vir_a, 2):
                    col = det(
                        a_index[sa ^ (1 << i) ^ (1 << j) ^ (1 << a) ^ (1 << b)], ib
                    )
                    if col > row:
                        val = g[i, a, j, b] - g[j, a, i, b]
                        mat[row, col] = mat[col, row] = _double_sign(sa, i, j, a, b) * val
            for (i, j) in itertools.combinations(occ_b, 2):
                for (a, b) in itertools.combinations(vir_b, 2):
                    col = det(
                        ia, b_index[sb ^ (1 << i) ^ (1 << j) ^ (1 << a) ^ (1 << b)]
                    )
                    if col > row:
                        val = g[i, a, j, b] - g[j, a, i, b]
                        mat[row, col] = mat[col, row] = _double_sign(sb, i, j, a, b) * val

            # alpha-beta doubles
            for i in occ_a:
                for a in vir_a:
                    sign_a = _sign_between(sa, i, a)
                    ja = a_index[sa ^ (1 << i) ^ (1 << a)]
                    for j in occ_b:
                        for b in vir_b:
                            col = det(ja, b_index[sb ^ (1 << j) ^ (1 << b)])
                            if col > row:
                                val = sign_a * _sign_between(sb, j, b) * g[i, a, j, b]
                                mat[row, col] = mat[col, row] = val

    eigvals = np.linalg.eigvalsh(mat)
    if n_roots == 1:
        return float(eigvals[0] + e_const)
    return [float(v + e_const) for v in eigvals[:n_roots]]


def freeze_core_integrals(h, g, e_const, n_frozen):
    """Fold the first n_frozen doubly occupied orbitals (chemists' g)."""
    if n_frozen == 0:
        return h, g, e_const
    act = slice(n_frozen, h.shape[0])
    h_eff = h[act, act].copy()
    for i in range(n_frozen):
        h_eff += 2.0 * g[act, act, i, i] - g[act, i, i, act]
    e = e_const
    for i in range(n_frozen):
        e += 2.0 * h[i, i]
        for j in range(n_frozen):
            e += 2.0 * g[i, i, j, j] - g[i, j, j, i]
    return h_eff, g[act, act, act, act].copy(), float(e)


def active_space_energy(h, g, e_const, n_electrons, n_active_electrons, n_active_spatial):
    """CASCI energy in a HOMO-LUMO-centered active window."""
    n_occ = n_electrons // 2
    lo = n_occ - n_active_electrons // 2
    h_eff, g_eff, e_eff = freeze_core_integrals(h, g, e_const, lo)
    keep = slice(0, n_active_spatial)
    h_act = h_eff[keep, keep]
    g_act = g_eff[keep, keep, keep, keep]
    n_ab = n_active_electrons // 2
    return casci_ground_energy(h_act, g_act, e_eff, n_ab, n_ab)
