"""Z2 symmetry discovery and qubit tapering.

Symmetries are Pauli strings commuting with every Hamiltonian term, found
as the GF(2) kernel of the term masks (Z-type and X-type searched
separately, per the symplectic structure).  Each generator tau_k is paired
with a qubit sigma_k where a single X anticommutes with it; conjugating by
the Clifford involution U_k = (X_sigma + tau_k)/sqrt(2) maps tau_k to
X_sigma, after which the X at sigma_k is replaced by its sector eigenvalue
and the qubit dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .pauli import PauliString, PauliSum, commutes, gf2_kernel, gf2_rref, multiply

__all__ = ["Z2SymmetrySet", "find_z2_symmetries", "select_sector", "taper", "scan_sectors"]


@dataclass(frozen=True)
class Z2SymmetrySet:
    generators: tuple
    sigma_qubits: tuple
    sector: tuple = None  # +/-1 per generator once selected

    def __post_init__(self):
        if len(self.generators) != len(self.sigma_qubits):
            raise ValueError("one sigma qubit per generator")
        if self.sector is not None:
            if len(self.sector) != len(self.generators):
                raise ValueError(
                    f"sector length {len(self.sector)} != {len(self.generators)} generators"
                )
            if any(s not in (1, -1) for s in self.sector):
                raise ValueError("sector entries must be +/-1")
        if len(set(self.sigma_qubits)) != len(self.sigma_qubits):
            raise ValueError("sigma qubits must be distinct")

    def __len__(self):
        return len(self.generators)

    def with_sector(self, sector):
        return replace(self, sector=tuple(int(s) for s in sector))

    def verify(self, h: PauliSum):
        """Assert every generator commutes with every Hamiltonian term."""
        for g in self.generators:
            for p, _ in h.items():
                if not commutes(g, p):
                    raise AssertionError(f"{g!r} fails to commute with {p!r}")

    def to_json_obj(self):
        return {
            "generators": [g.label() for g in self.generators],
            "sigma_qubits": list(self.sigma_qubits),
            "sector": list(self.sector) if self.sector is not None else None,
        }


def find_z2_symmetries(h: PauliSum):
    """Maximal independent commuting set of Z-type (plus compatible X-type)
    symmetry generators, in pivot-canonical form; sector left unset."""
    n = h.n_qubits
    x_rows = []
    z_rows = []
    for p, _ in h.items():
        x_rows.append(p.x_mask)
        z_rows.append(p.z_mask)

    # Z-type: Z^v commutes with every term iff v . x_mask = 0 for all terms.
    z_kernel, _ = gf2_rref(gf2_kernel(x_rows, n))
    generators = []
    sigmas = []
    for v in z_kernel:  # pivot-ordered; pivots are unique-support columns
        generators.append(PauliString(n, 0, v))
        sigmas.append((v & -v).bit_length() - 1)

    # X-type: X^w commutes with every term iff w . z_mask = 0.  A valid
    # sigma requires Z/Y content for the X_sigma anticommutation, which a
    # pure X string lacks; candidates are kept only if one exists and they
    # commute with everything already kept.
    x_kernel, _ = gf2_rref(gf2_kernel(z_rows, n))
    for w in x_kernel:
        cand = PauliString(n, w, 0)
        if not all(commutes(cand, g) for g in generators):
            continue
        sigma = _find_sigma(cand, generators, sigmas, n)
        if sigma is None:
            continue
        generators.append(cand)
        sigmas.append(sigma)
    return Z2SymmetrySet(tuple(generators), tuple(sigmas))


def _find_sigma(candidate, kept, kept_sigmas, n):
    for q in range(n):
        x_q = PauliString(n, 1 << q, 0)
        if commutes(x_q, candidate):
            continue
        if q in kept_sigmas:
            continue
        if all(commutes(x_q, g) for g in kept):
            return q
    return None


def _reference_bits(reference):
    if isinstance(reference, str):
        return sum(1 << k for k, ch in enumerate(reference) if ch == "1")
    return int(reference)


def select_sector(sym: Z2SymmetrySet, reference):
    """Sector eigenvalues of each generator on a computational reference
    state (the HF bitstring)."""
    bits = _reference_bits(reference)
    sector = []
    for g in sym.generators:
        if g.x_mask:
            raise ValueError(
                f"generator {g!r} has X/Y content and no eigenvalue on a basis "
                "state; supply an explicit sector via with_sector()"
            )
        sector.append(1 - 2 * ((g.z_mask & bits).bit_count() % 2))
    return sym.with_sector(sector)


def _delete_bits(mask, positions_desc):
    for p in positions_desc:
        mask = ((mask >> (p + 1)) << p) | (mask & ((1 << p) - 1))
    return mask


def taper(h: PauliSum, sym: Z2SymmetrySet, drop_tol=None):
    """Conjugate by the symmetry Cliffords, substitute sector eigenvalues
    at the sigma qubits, and delete those qubits."""
    if len(sym) == 0:
        return h
    if sym.sector is None:
        raise ValueError("sector not selected; call select_sector first")
    n = h.n_qubits
    sigma_strings = [PauliString(n, 1 << q, 0) for q in sym.sigma_qubits]
    xtau = [multiply(xs, g) for xs, g in zip(sigma_strings, sym.generators)]

    removed_desc = sorted(sym.sigma_qubits, reverse=True)
    acc = {}
    for p, coeff in h.items():
        work = p
        weight = complex(coeff)
        for g, xs, xt in zip(sym.generators, sigma_strings, xtau):
            if not commutes(work, g):
                raise AssertionError(f"term {p!r} anticommutes with generator {g!r}")
            if not commutes(work, xs):
                work = multiply(xt, work)
        # after conjugation only I or X may remain at each sigma position
        weight *= work.phase
        work = work.strip_phase()
        for k, q in enumerate(sym.sigma_qubits):
            if (work.z_mask >> q) & 1:
                raise AssertionError("residual Z content at a sigma qubit")
            if (work.x_mask >> q) & 1:
                weight *= sym.sector[k]
        new_x = _delete_bits(work.x_mask, removed_desc)
        new_z = _delete_bits(work.z_mask, removed_desc)
        key = (new_x, new_z)
        acc[key] = acc.get(key, 0.0) + weight
    worst = max((abs(c.imag) for c in acc.values()), default=0.0)
    if worst > 1e-10:
        raise AssertionError(f"non-Hermitian tapering residual {worst:.3e}")
    kwargs = {} if drop_tol is None else {"drop_tol": drop_tol}
    return PauliSum(n - len(sym), {k: c.real for k, c in acc.items()}, **kwargs)


def scan_sectors(h: PauliSum, sym: Z2SymmetrySet, max_qubits=14):
    """Exact ground energy of every 2^m symmetry sector.

    Returns [(sector, energy)] sorted by energy; intended for small
    registers where full enumeration is cheap.
    """
    from itertools import product

    from .statevector import exact_ground_energy

    if h.n_qubits > max_qubits:
        raise ValueError(f"sector scan limited to {max_qubits} qubits")
    results = []
    for sector in product((1, -1), repeat=len(sym)):
        reduced = taper(h, sym.with_sector(sector))
        results.append((sector, exact_ground_energy(reduced)))
    results.sort(key=lambda pair: pair[1])
    return results
