"""Exact statevector simulation of excitation evolutions.

Excitation evolutions act as direct amplitude-pair rotations rather than
gate-by-gate circuits: exact, one O(2^n) sweep per excitation.  Qubit 0 is
the least-significant bit of the amplitude index; bitstrings are written
qubit-0-first, so "1100" is the state with qubits 0 and 1 occupied.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .pauli import PauliSum

__all__ = [
    "Statevector",
    "prepare_basis",
    "bitstring_index",
    "apply_qubit_single",
    "apply_qubit_double",
    "apply_fermionic_excitation",
    "apply_excitation",
    "apply_ansatz",
    "expectation",
    "exact_ground_energy",
    "exact_spectrum",
]

_NORM_TOL = 1e-10
_I_POWERS = np.array([1, 1j, -1, -1j], dtype=complex)
MAX_DIAG_QUBITS = 16


@dataclass(frozen=True)
class Statevector:
    amplitudes: np.ndarray
    n_qubits: int

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (1 << self.n_qubits,):
            raise ValueError("amplitude count must be 2**n_qubits")
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state not normalized: |norm - 1| = {abs(norm-1):.3e}")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


def bitstring_index(bitstring):
    """Index of a computational basis state; character k is qubit k."""
    return sum(1 << k for k, ch in enumerate(bitstring) if ch == "1")


def prepare_basis(bitstring):
    n = len(bitstring)
    amp = np.zeros(1 << n, dtype=complex)
    amp[bitstring_index(bitstring)] = 1.0
    return Statevector(amp, n)


# -- excitation evolutions ---------------------------------------------------


def _pair_indices(n_qubits, occupied, virtual):
    """All basis indices with the occupied set filled and the virtual set
    empty, plus their partners with the occupations swapped."""
    occ_mask = 0
    for k in occupied:
        occ_mask |= 1 << k
    vir_mask = 0
    for k in virtual:
        vir_mask |= 1 << k
    if occ_mask & vir_mask:
        raise ValueError("excitation index sets must be disjoint")
    if max(max(occupied), max(virtual)) >= n_qubits:
        raise ValueError("excitation index out of range")
    idx = np.arange(1 << n_qubits, dtype=np.int64)
    src = idx[((idx & occ_mask) == occ_mask) & ((idx & vir_mask) == 0)]
    dst = src ^ (occ_mask | vir_mask)
    return src, dst


def _jw_parity_signs(src, occupied, virtual):
    """Per-pair sign of a^dag_a a_i (or a^dag_a a^dag_b a_j a_i) relative to
    the parity-free qubit excitation, evaluated on the occupied-side states."""
    s = src.astype(np.uint64)

    def below(k):
        mask = np.uint64((1 << k) - 1)
        return np.bitwise_count(s & mask).astype(np.int64)

    if len(occupied) == 1:
        (i,), (a,) = occupied, virtual
        exponent = below(i) + below(a) - (1 if i < a else 0)
    else:
        (i, j), (a, b) = occupied, virtual
        exponent = (
            below(i)
            + below(j) - 1
            + below(b) - (1 if i < b else 0) - (1 if j < b else 0)
            + below(a) - (1 if i < a else 0) - (1 if j < a else 0)
        )
    return 1.0 - 2.0 * (exponent % 2).astype(float)


def _rotate_array(amplitudes, n_qubits, occupied, virtual, theta, fermionic):
    """Pair rotation on a raw amplitude array (need not be normalized)."""
    occupied = tuple(sorted(occupied))
    virtual = tuple(sorted(virtual))
    src, dst = _pair_indices(n_qubits, occupied, virtual)
    sign = _jw_parity_signs(src, occupied, virtual) if fermionic else 1.0
    amp = amplitudes.copy()
    c, s_ = np.cos(theta), np.sin(theta)
    a_src, a_dst = amp[src], amp[dst]
    amp[src] = c * a_src - s_ * sign * a_dst
    amp[dst] = c * a_dst + s_ * sign * a_src
    return amp


def _apply_rotation(state, occupied, virtual, theta, fermionic):
    amp = _rotate_array(state.amplitudes, state.n_qubits, occupied, virtual, theta, fermionic)
    return Statevector(amp, state.n_qubits)


def _apply_generator(amplitudes, n_qubits, occupied, virtual, fermionic):
    """Raw action of the antisymmetric generator G = |vac,occ'><occ,vac'| - h.c."""
    occupied = tuple(sorted(occupied))
    virtual = tuple(sorted(virtual))
    src, dst = _pair_indices(n_qubits, occupied, virtual)
    sign = _jw_parity_signs(src, occupied, virtual) if fermionic else 1.0
    out = np.zeros_like(amplitudes)
    out[dst] = sign * amplitudes[src]
    out[src] = -sign * amplitudes[dst]
    return out


def apply_qubit_single(state, i, a, theta):
    """Givens rotation on every (1_i 0_a) <-> (0_i 1_a) amplitude pair,
    with no fermionic parity phase."""
    return _apply_rotation(state, (i,), (a,), theta, fermionic=False)


def apply_qubit_double(state, i, j, a, b, theta):
    return _apply_rotation(state, (i, j), (a, b), theta, fermionic=False)


def apply_fermionic_excitation(state, exc, theta):
    """Same rotation structure with the Jordan-Wigner parity sign folded
    into the per-pair rotation direction."""
    return _apply_rotation(state, exc.occupied, exc.virtual, theta, fermionic=True)


def apply_excitation(state, exc, theta):
    fermionic = exc.flavor == "fermionic"
    return _apply_rotation(state, exc.occupied, exc.virtual, theta, fermionic=fermionic)


def apply_ansatz(state, ansatz, params):
    """Apply each excitation evolution once, in ansatz order."""
    params = np.asarray(params, dtype=float)
    if params.shape != (ansatz.n_parameters,):
        raise ValueError(
            f"expected {ansatz.n_parameters} parameters, got {params.shape}"
        )
    for exc in ansatz.excitations:
        state = apply_excitation(state, exc, params[exc.parameter_index])
    return state


# -- expectation values and exact diagonalization ----------------------------


def _sparse_matrix(h: PauliSum):
    """CSR matrix of a PauliSum, cached on the instance."""
    cached = h._cache.get("csr")
    if cached is not None:
        return cached
    n = h.n_qubits
    if n > MAX_DIAG_QUBITS:
        raise ValueError(f"refusing to materialize a 2^{n} operator")
    dim = 1 << n
    idx = np.arange(dim, dtype=np.int64)
    by_x = {}
    for p, c in h.items():
        by_x.setdefault(p.x_mask, []).append((p.z_mask, c))
    rows, cols, data = [], [], []
    for x, zs in by_x.items():
        weight = np.zeros(dim, dtype=complex)
        for z, c in zs:
            y_count = (x & z).bit_count()
            par = np.bitwise_count(idx & z).astype(np.int64) % 2
            weight += (c * _I_POWERS[y_count % 4]) * (1.0 - 2.0 * par)
        rows.append(idx ^ x)
        cols.append(idx)
        data.append(weight)
    mat = sp.csr_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    )
    h._cache["csr"] = mat
    return mat


def expectation(state, h):
    """<v|H|v>; the imaginary residual must vanish for Hermitian input."""
    if h.n_qubits != state.n_qubits:
        raise ValueError("operator/state size mismatch")
    val = complex(np.vdot(state.amplitudes, _sparse_matrix(h) @ state.amplitudes))
    if abs(val.imag) > 1e-10:
        raise AssertionError(f"imaginary expectation residual {val.imag:.3e}")
    return val.real


def _sector_indices(n_qubits, n_particles):
    idx = np.arange(1 << n_qubits, dtype=np.int64)
    counts = np.bitwise_count(idx.astype(np.uint64)).astype(np.int64)
    return idx[counts == n_particles]


def _sector_matrix(h: PauliSum, basis):
    """Hamiltonian projected onto a list of basis indices."""
    pos = -np.ones(1 << h.n_qubits, dtype=np.int64)
    pos[basis] = np.arange(basis.size)
    by_x = {}
    for p, c in h.items():
        by_x.setdefault(p.x_mask, []).append((p.z_mask, c))
    s = basis.astype(np.uint64)
    rows, cols, data = [], [], []
    local = np.arange(basis.size, dtype=np.int64)
    for x, zs in by_x.items():
        targets = pos[basis ^ x]
        keep = targets >= 0
        if not np.any(keep):
            continue
        weight = np.zeros(basis.size, dtype=complex)
        for z, c in zs:
            y_count = (x & z).bit_count()
            par = np.bitwise_count(s & np.uint64(z)).astype(np.int64) % 2
            weight += (c * _I_POWERS[y_count % 4]) * (1.0 - 2.0 * par)
        rows.append(targets[keep])
        cols.append(local[keep])
        data.append(weight[keep])
    if not rows:
        return sp.csr_matrix((basis.size, basis.size), dtype=complex)
    return sp.csr_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(basis.size, basis.size),
    )


def _min_eigenvalue(mat):
    dim = mat.shape[0]
    if dim <= 1500:
        return float(np.linalg.eigvalsh(mat.toarray()).min())
    try:
        val = spla.eigsh(mat, k=1, which="SA", return_eigenvectors=False)
        return float(val[0])
    except spla.ArpackNoConvergence:
        val = spla.eigsh(mat, k=1, which="SA", return_eigenvectors=False, maxiter=50000, tol=1e-12)
        return float(val[0])


def exact_ground_energy(h, particle_sector=None):
    """Minimum eigenvalue, optionally within the fixed-particle-number
    subspace (the FCI reference for molecular Hamiltonians)."""
    n = h.n_qubits
    if n > MAX_DIAG_QUBITS:
        raise ValueError(
            f"{n} qubits exceed the {MAX_DIAG_QUBITS}-qubit diagonalization bound; "
            "restrict to an active space or a particle-number sector first"
        )
    if len(h) == 0:
        return 0.0
    if particle_sector is not None:
        basis = _sector_indices(n, particle_sector)
        if basis.size == 0:
            raise ValueError(f"no basis states with {particle_sector} particles")
        return _min_eigenvalue(_sector_matrix(h, basis))
    return _min_eigenvalue(_sparse_matrix(h))


def exact_spectrum(h):
    """Full dense spectrum; intended for small registers (n <= 10)."""
    if h.n_qubits > 10:
        raise ValueError("full spectrum limited to 10 qubits")
    return np.linalg.eigvalsh(_sparse_matrix(h).toarray())
