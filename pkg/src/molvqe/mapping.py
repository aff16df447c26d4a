"""Jordan-Wigner transformation of molecular integrals.

Spin-orbital layout is interleaved: qubit 2p hosts spatial orbital p with
alpha spin, qubit 2p+1 the beta partner.  The constant energy rides on the
identity string so expectation values are total energies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fcidump import IntegralSet
from .pauli import DEFAULT_DROP_TOL, PauliSum

__all__ = ["SpinOrbitalLayout", "jordan_wigner", "hf_state", "jw_number_operator"]

_I_POWERS = np.array([1, 1j, -1, -1j], dtype=complex)


@dataclass(frozen=True)
class SpinOrbitalLayout:
    """Interleaved spin-orbital ordering (alpha, beta alternating)."""

    n_spatial: int

    @property
    def n_qubits(self):
        return 2 * self.n_spatial

    def so_index(self, spatial, spin):
        """Qubit index of (spatial orbital, spin); spin 0 = alpha, 1 = beta."""
        return 2 * spatial + spin

    def spatial_of(self, so):
        return so // 2

    def spin_of(self, so):
        return so % 2


def hf_state(n_electrons, n_qubits):
    """Hartree-Fock occupation bitstring (qubit 0 is the first character)."""
    if n_electrons > n_qubits:
        raise ValueError(f"{n_electrons} electrons do not fit in {n_qubits} qubits")
    if n_electrons < 0:
        raise ValueError("negative electron count")
    return "1" * n_electrons + "0" * (n_qubits - n_electrons)


def _ladder_pair_terms(P, Q, n_qubits):
    """Letter-form terms (x_mask, z_mask, weight) of a^dag_P a_Q under JW.

    a^dag = (X - iY)/2 tensor Z-string below, a = (X + iY)/2 likewise; the
    four cross products are multiplied out exactly with the Pauli algebra.
    """
    from .pauli import PauliString, multiply

    if P == Q:
        return [(0, 0, 0.5), (0, 1 << P, -0.5)]
    zP = (1 << P) - 1
    zQ = (1 << Q) - 1
    terms = []
    for p_is_y, wp in ((0, 0.5), (1, -0.5j)):
        for q_is_y, wq in ((0, 0.5), (1, 0.5j)):
            a = PauliString(n_qubits, 1 << P, zP | (p_is_y << P))
            b = PauliString(n_qubits, 1 << Q, zQ | (q_is_y << Q))
            prod = multiply(a, b)
            terms.append((prod.x_mask, prod.z_mask, wp * wq * prod.phase))
    return terms


def _excitation_images(n_spatial):
    """JW terms of all same-spin a^dag_P a_Q, flattened to numpy arrays.

    Returns (x, z, w, owner) arrays where owner indexes the flattened
    spatial pair p * n_spatial + q; both spins share an owner slot.
    """
    n_qubits = 2 * n_spatial
    xs, zs, ws, owners = [], [], [], []
    for p in range(n_spatial):
        for q in range(n_spatial):
            owner = p * n_spatial + q
            for spin in (0, 1):
                P, Q = 2 * p + spin, 2 * q + spin
                for x, z, w in _ladder_pair_terms(P, Q, n_qubits):
                    xs.append(x)
                    zs.append(z)
                    ws.append(w)
                    owners.append(owner)
    return (
        np.array(xs, dtype=np.uint64),
        np.array(zs, dtype=np.uint64),
        np.array(ws, dtype=complex),
        np.array(owners, dtype=np.int64),
    )


def _product_phase_vec(x1, z1, x2, z2):
    c1 = np.bitwise_count(x1 & z1).astype(np.int64)
    c2 = np.bitwise_count(x2 & z2).astype(np.int64)
    c12 = np.bitwise_count((x1 ^ x2) & (z1 ^ z2)).astype(np.int64)
    k = (c1 + c2 - c12 + 2 * np.bitwise_count(z1 & x2).astype(np.int64)) % 4
    return _I_POWERS[k]


def jordan_wigner(s: IntegralSet, drop_tol=DEFAULT_DROP_TOL):
    """Qubit Hamiltonian of the second-quantized problem over 2*n_spatial
    qubits, constant energy included as the identity coefficient."""
    m = s.n_spatial
    n_qubits = 2 * m
    if n_qubits > 62:
        raise ValueError("register too large for single-word masks")
    ex, ez, ew, owner = _excitation_images(m)

    # effective one-body term absorbs the contraction from reordering the
    # two-body operators: h~_ps = h_ps - 1/2 sum_q (pq|qs)
    h_eff = s.h - 0.5 * np.einsum("pqqs->ps", s.g)
    w1 = h_eff.reshape(-1)[owner] * ew

    g_flat = 0.5 * s.g.reshape(m * m, m * m)
    n_terms = ex.size
    left = np.repeat(np.arange(n_terms), n_terms)
    right = np.tile(np.arange(n_terms), n_terms)
    px = ex[left] ^ ex[right]
    pz = ez[left] ^ ez[right]
    phase = _product_phase_vec(ex[left], ez[left], ex[right], ez[right])
    w2 = ew[left] * ew[right] * phase * g_flat[owner[left], owner[right]]

    keys = np.concatenate([(ex.astype(np.uint64) << np.uint64(32)) | ez, (px << np.uint64(32)) | pz])
    weights = np.concatenate([w1, w2])
    uniq, inverse = np.unique(keys, return_inverse=True)
    re = np.bincount(inverse, weights=weights.real, minlength=uniq.size)
    im = np.bincount(inverse, weights=weights.imag, minlength=uniq.size)
    worst_imag = float(np.max(np.abs(im))) if im.size else 0.0
    if worst_imag > 1e-9:
        raise AssertionError(f"non-Hermitian JW accumulation: {worst_imag:.3e}")

    terms = {}
    for key, coeff in zip(uniq.tolist(), re.tolist()):
        if abs(coeff) > drop_tol:
            terms[(int(key) >> 32, int(key) & 0xFFFFFFFF)] = coeff
    terms[(0, 0)] = terms.get((0, 0), 0.0) + s.e_constant
    return PauliSum(n_qubits, terms, drop_tol=drop_tol)


def jw_number_operator(n_qubits):
    """JW image of the total particle-number operator."""
    terms = {(0, 0): 0.5 * n_qubits}
    for k in range(n_qubits):
        terms[(0, 1 << k)] = -0.5
    return PauliSum(n_qubits, terms)
