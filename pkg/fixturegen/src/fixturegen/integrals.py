"""Gaussian integrals over contracted s/p shells (McMurchie-Davidson).

Cartesian primitives are expanded in Hermite Gaussians; Coulomb integrals
reduce to Boys-function recursions.  Adequate and exact for the STO-3G
molecules handled here (total angular momentum <= 4 per electron pair).
"""

from __future__ import annotations

import numpy as np
from scipy.special import hyp1f1


def boys(m_max, t):
    """F_0..F_m(t) for an array of arguments, shape (len(t), m_max + 1)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty((t.size, m_max + 1))
    for m in range(m_max + 1):
        out[:, m] = hyp1f1(m + 0.5, m + 1.5, -t) / (2.0 * m + 1.0)
    return out


def _hermite_e(la, lb, a, b, ab_component):
    """Hermite expansion table E[i, j, t] for one Cartesian direction.

    a, b may be arrays over primitive combinations; the returned table has
    shape (la+1, lb+1, la+lb+1) + broadcast shape of a*b.
    """
    p = a + b
    mu = a * b / p
    shape = np.broadcast(a, b).shape
    e = np.zeros((la + 1, lb + 1, la + lb + 1) + shape)
    e[0, 0, 0] = np.exp(-mu * ab_component**2)
    for i in range(la + 1):
        for j in range(lb + 1):
            if i == 0 and j == 0:
                continue
            for t in range(i + j + 1):
                if i > 0:
                    term = 0.0
                    if t > 0:
                        term = e[i - 1, j, t - 1] / (2.0 * p)
                    term = term + (-b * ab_component / p) * e[i - 1, j, t]
                    if t + 1 <= i - 1 + j:
                        term = term + (t + 1) * e[i - 1, j, t + 1]
                    e[i, j, t] = term
                else:
                    term = 0.0
                    if t > 0:
                        term = e[i, j - 1, t - 1] / (2.0 * p)
                    term = term + (a * ab_component / p) * e[i, j - 1, t]
                    if t + 1 <= i + j - 1:
                        term = term + (t + 1) * e[i, j - 1, t + 1]
                    e[i, j, t] = term
    return e


def _components(l):
    if l == 0:
        return [(0, 0, 0)]
    return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


class _ShellPair:
    """Primitive-pair data shared by all integrals over a shell pair."""

    def __init__(self, sha, shb):
        self.a_shell, self.b_shell = sha, shb
        a = sha.exps[:, None]
        b = shb.exps[None, :]
        self.p = (a + b).ravel()
        self.coef = (sha.coefs[:, None] * shb.coefs[None, :]).ravel()
        ab = sha.center - shb.center
        self.p_center = (
            (a[..., None] * sha.center + b[..., None] * shb.center) / (a + b)[..., None]
    ).reshape(-1, 3)
        la, lb = sha.l, shb.l
        # E tables per direction: shape (la+1, lb+1, la+lb+1, nprim)
        self.e = [
            _hermite_e(la, lb, a, b, ab[d]).reshape(la + 1, lb + 1, la + lb + 1, -1)
            for d in range(3)
        ]
        self.l_total = la + lb

    def hermite_weights(self, ca, cb):
        """w[t, u, v, prim] so that (ab| = sum w * Hermite_[tuv](p, P)."""
        ia, ja, ka = ca
        ib, jb, kb = cb
        ex = self.e[0][ia, ib]
        ey = self.e[1][ja, jb]
        ez = self.e[2][ka, kb]
        return np.einsum("tn,un,vn->tuvn", ex, ey, ez)


def _shell_offsets(shells):
    offsets = []
    n = 0
    for sh in shells:
        offsets.append(n)
        n += sh.n_functions
    return offsets, n


def overlap_kinetic(shells):
    """Overlap and kinetic-energy matrices."""
    offsets, n = _shell_offsets(shells)
    s_mat = np.zeros((n, n))
    t_mat = np.zeros((n, n))
    for ia, sha in enumerate(shells):
        for ib, shb in enumerate(shells):
            if ib < ia:
                continue
            a = sha.exps[:, None]
            b = shb.exps[None, :]
            coef = (sha.coefs[:, None] * shb.coefs[None, :]).ravel()
            p = (a + b).ravel()
            ab = sha.center - shb.center
            la, lb = sha.l, shb.l
            # 1D overlap tables up to lb+2 for the kinetic recursion
            e_tab = [
                _hermite_e(la, lb + 2, a, b, ab[d]).reshape(la + 1, lb + 3, la + lb + 3, -1)
                for d in range(3)
            ]
            pref = np.sqrt(np.pi / p)

            def s1d(d, i, j):
                return e_tab[d][i, j, 0] * pref

            b_flat = np.broadcast_to(b, (sha.exps.size, shb.exps.size)).ravel()
            for ca_idx, ca in enumerate(_components(la)):
                for cb_idx, cb in enumerate(_components(lb)):
                    s_dims = [s1d(d, ca[d], cb[d]) for d in range(3)]
                    t_dims = []
                    for d in range(3):
                        j = cb[d]
                        term = -2.0 * b_flat**2 * s1d(d, ca[d], j + 2)
                        term = term + b_flat * (2 * j + 1) * s_dims[d]
                        if j >= 2:
                            term = term - 0.5 * j * (j - 1) * s1d(d, ca[d], j - 2)
                        t_dims.append(term)
                    s_val = float(np.sum(coef * s_dims[0] * s_dims[1] * s_dims[2]))
                    t_val = float(np.sum(coef * (
                        t_dims[0] * s_dims[1] * s_dims[2]
                        + s_dims[0] * t_dims[1] * s_dims[2]
                        + s_dims[0] * s_dims[1] * t_dims[2]
                    )))
                    r, c = offsets[ia] + ca_idx, offsets[ib] + cb_idx
                    s_mat[r, c] = s_mat[c, r] = s_val
                    t_mat[r, c] = t_mat[c, r] = t_val
    return s_mat, t_mat


def nuclear_attraction(shells, charges, coords):
    offsets, n = _shell_offsets(shells)
    v_mat = np.zeros((n, n))
    for ia, sha in enumerate(shells):
        for ib, shb in enumerate(shells):
            if ib < ia:
                continue
            pair = _ShellPair(sha, shb)
            l_tot = pair.l_total
            block = np.zeros((sha.n_functions, shb.n_functions))
            for charge, center in zip(charges, coords):
                pq = pair.p_center - center[None, :]
                r_tuv = _hermite_r_scaled(l_tot, pair.p, pq)
                pref = (2.0 * np.pi / pair.p) * pair.coef
                for ca_idx, ca in enumerate(_components(sha.l)):
                    for cb_idx, cb in enumerate(_components(shb.l)):
                        w = pair.hermite_weights(ca, cb)
                        val = np.einsum("tuvn,tuvn,n->", w, r_tuv, pref)
                        block[ca_idx, cb_idx] += -charge * val
            r0, c0 = offsets[ia], offsets[ib]
            v_mat[r0:r0 + block.shape[0], c0:c0 + block.shape[1]] = block
            v_mat[c0:c0 + block.shape[1], r0:r0 + block.shape[0]] = block.T
    return v_mat


def _hermite_r_scaled(l_total, p, pq):
    """R_tuv(p_n, PQ_n) with a per-combination exponent array."""
    n = pq.shape[0]
    t_arg = p * np.einsum("ni,ni->n", pq, pq)
    f = boys(l_total, t_arg)
    r_n = np.zeros((l_total + 1, l_total + 1, l_total + 1, l_total + 1, n))
    for m in range(l_total + 1):
        r_n[m, 0, 0, 0] = (-2.0 * p) ** m * f[:, m]
    for total in range(1, l_total + 1):
        for t in range(total + 1):
            for u in range(total - t + 1):
                v = total - t - u
                for m in range(l_total - total + 1):
                    if t > 0:
                        val = pq[:, 0] * r_n[m + 1, t - 1, u, v]
                        if t > 1:
                            val = val + (t - 1) * r_n[m + 1, t - 2, u, v]
                    elif u > 0:
                        val = pq[:, 1] * r_n[m + 1, t, u - 1, v]
                        if u > 1:
                            val = val + (u - 1) * r_n[m + 1, t, u - 2, v]
                    else:
                        val = pq[:, 2] * r_n[m + 1, t, u, v - 1]
                        if v > 1:
                            val = val + (v - 1) * r_n[m + 1, t, u, v - 2]
                    r_n[m, t, u, v] = val
    return r_n[0]


def electron_repulsion(shells):
    """Full (mu nu | lambda sigma) tensor, chemists' notation."""
    offsets, n = _shell_offsets(shells)
    eri = np.zeros((n, n, n, n))
    pairs = []
    for ia, sha in enumerate(shells):
        for ib, shb in enumerate(shells):
            if ib < ia:
                continue
            pairs.append((ia, ib, _ShellPair(sha, shb)))

    for idx_ab, (ia, ib, pab) in enumerate(pairs):
        for ic, id_, pcd in pairs[idx_ab:]:
            l_tot = pab.l_total + pcd.l_total
            # combination grid over (primitive pair AB) x (primitive pair CD)
            p = pab.p[:, None]
            q = pcd.p[None, :]
            alpha = (p * q / (p + q)).ravel()
            pq = (pab.p_center[:, None, :] - pcd.p_center[None, :, :]).reshape(-1, 3)
            r_tuv = _hermite_r_scaled(l_tot, alpha, pq)
            pref = (
                2.0 * np.pi**2.5
                / (p * q * np.sqrt(p + q))
                * pab.coef[:, None] * pcd.coef[None, :]
            ).ravel()
            sha, shb = pab.a_shell, pab.b_shell
            shc, shd = pcd.a_shell, pcd.b_shell
            la, lb, lc, ld = sha.l, shb.l, shc.l, shd.l
            block = np.zeros((sha.n_functions, shb.n_functions, shc.n_functions, shd.n_functions))
            for ca_idx, ca in enumerate(_components(la)):
                for cb_idx, cb in enumerate(_components(lb)):
                    w_ab = pab.hermite_weights(ca, cb)  # (t,u,v,nab)
                    for cc_idx, cc in enumerate(_components(lc)):
                        for cd_idx, cd in enumerate(_components(ld)):
                            w_cd = pcd.hermite_weights(cc, cd)  # (T,U,V,ncd)
                            val = _contract_eri(w_ab, w_cd, r_tuv, pref)
                            block[ca_idx, cb_idx, cc_idx, cd_idx] = val
            _scatter_eri(eri, block, offsets, ia, ib, ic, id_, shells)
    return eri


def _contract_eri(w_ab, w_cd, r_tuv, pref):
    ta, ua, va, nab = w_ab.shape
    tc, uc, vc, ncd = w_cd.shape
    pref_grid = pref.reshape(nab, ncd)
    total = 0.0
    for t in range(ta):
        for u in range(ua):
            for v in range(va):
                wa = w_ab[t, u, v]
                if not np.any(wa):
                    continue
                for tt in range(tc):
                    for uu in range(uc):
                        for vv in range(vc):
                            wc = w_cd[tt, uu, vv]
                            if not np.any(wc):
                                continue
                            sign = (-1.0) ** (tt + uu + vv)
                            r_slice = r_tuv[t + tt, u + uu, v + vv].reshape(nab, ncd)
                            total += sign * float(wa @ (r_slice * pref_grid) @ wc)
    return total


def _scatter_eri(eri, block, offsets, ia, ib, ic, id_, shells):
    oa, ob, oc, od = offsets[ia], offsets[ib], offsets[ic], offsets[id_]
    na, nb = shells[ia].n_functions, shells[ib].n_functions
    nc, nd = shells[ic].n_functions, shells[id_].n_functions
    for x in range(na):
        for y in range(nb):
            for z in range(nc):
                for w in range(nd):
                    val = block[x, y, z, w]
                    mu, nu, lam, sig = oa + x, ob + y, oc + z, od + w
                    for (m, n_), (l_, s_) in (
                        ((mu, nu), (lam, sig)),
                        ((nu, mu), (lam, sig)),
                        ((mu, nu), (sig, lam)),
                        ((nu, mu), (sig, lam)),
                        ((lam, sig), (mu, nu)),
                        ((sig, lam), (mu, nu)),
                        ((lam, sig), (nu, mu)),
                        ((sig, lam), (nu, mu)),
                    ):
                        eri[m, n_, l_, s_] = val


def nuclear_repulsion(charges, coords):
    e = 0.0
    for i in range(len(charges)):
        for j in range(i + 1, len(charges)):
            e += charges[i] * charges[j] / np.linalg.norm(coords[i] - coords[j])
    return float(e)
