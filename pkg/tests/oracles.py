"""Independent dense-matrix oracles shared across test modules.

Everything here is built directly from 2x2 matrices with numpy.kron and
never goes through the package's mask-based algebra, so it can referee it.
Qubit 0 is the least-significant bit of the state index throughout.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
MAT = {"I": I2, "X": X, "Y": Y, "Z": Z}

LOWER = np.array([[0, 1], [0, 0]], dtype=complex)  # a = |0><1|
RAISE = LOWER.T.conj()


def kron_chain(mats):
    """Tensor product with element 0 acting on qubit 0 (LSB)."""
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(m, out)
    return out


def dense_pauli(label):
    """Dense matrix of a Pauli letter string (character k acts on qubit k)."""
    return kron_chain([MAT[ch] for ch in label])


def dense_pauli_sum(pauli_sum):
    dim = 2**pauli_sum.n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for p, c in pauli_sum.items():
        out += c * dense_pauli(p.label())
    return out


def dense_annihilator(p, n):
    """Jordan-Wigner image of a_p as a dense matrix, built by kron."""
    mats = []
    for k in range(n):
        if k < p:
            mats.append(Z)
        elif k == p:
            mats.append(LOWER)
        else:
            mats.append(I2)
    return kron_chain(mats)


def dense_creator(p, n):
    return dense_annihilator(p, n).T.conj()


def dense_fermionic_hamiltonian(integrals):
    """Second-quantized Hamiltonian as a dense matrix over 2*n_spatial qubits.

    Spin-orbital 2p is spatial p with alpha spin, 2p+1 beta.  Uses the
    chemists'-notation two-electron integrals directly; independent of the
    package's Pauli-term construction.
    """
    m = integrals.n_spatial
    n = 2 * m
    dim = 2**n
    a_ops = [dense_annihilator(p, n) for p in range(n)]
    c_ops = [op.T.conj() for op in a_ops]
    h_mat = np.zeros((dim, dim), dtype=complex)
    for p in range(m):
        for q in range(m):
            if integrals.h[p, q] == 0.0:
                continue
            for s in (0, 1):
                h_mat += integrals.h[p, q] * (c_ops[2 * p + s] @ a_ops[2 * q + s])
    for p in range(m):
        for q in range(m):
            for r in range(m):
                for s_ in range(m):
                    g = integrals.g[p, q, r, s_]
                    if g == 0.0:
                        continue
                    for s1 in (0, 1):
                        for s2 in (0, 1):
                            P, Q = 2 * p + s1, 2 * q + s1
                            R, S = 2 * r + s2, 2 * s_ + s2
                            h_mat += 0.5 * g * (c_ops[P] @ c_ops[R] @ a_ops[S] @ a_ops[Q])
    h_mat += integrals.e_constant * np.eye(dim)
    return h_mat
