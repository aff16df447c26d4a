"""Symplectic Pauli-string algebra.

Pauli operators are stored as bit masks: bit k of ``x_mask``/``z_mask``
encodes the single-qubit factor on qubit k via (x, z) -> {(0,0): I,
(1,0): X, (1,1): Y, (0,1): Z}.  A ``PauliString`` additionally carries a
phase from {1, i, -1, -i}; a ``PauliSum`` maps phase-free strings to real
coefficients (Hartree).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

__all__ = [
    "PauliString",
    "PauliSum",
    "multiply",
    "commutes",
    "qubit_wise_commutes",
    "gf2_rref",
    "gf2_kernel",
]

DEFAULT_DROP_TOL = 1e-12

_PHASES = (1, 1j, -1, -1j)
_LETTERS = "IXZY"  # indexed by x + 2*z


def _letter_at(x_mask, z_mask, k):
    return _LETTERS[((x_mask >> k) & 1) + 2 * ((z_mask >> k) & 1)]


@dataclass(frozen=True)
class PauliString:
    """A phase-tracked Pauli string on ``n_qubits`` qubits.

    The represented operator is ``i**phase_power`` times the tensor
    product of the single-qubit letters encoded by the masks.
    """

    n_qubits: int
    x_mask: int = 0
    z_mask: int = 0
    phase_power: int = 0  # operator = i**phase_power * letters(x, z)

    def __post_init__(self):
        if self.n_qubits < 0:
            raise ValueError("n_qubits must be non-negative")
        full = (1 << self.n_qubits) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise ValueError("mask exceeds qubit register")
        object.__setattr__(self, "phase_power", self.phase_power % 4)

    @classmethod
    def from_label(cls, label, phase_power=0):
        """Build from a letter string; character k acts on qubit k."""
        x = z = 0
        for k, ch in enumerate(label):
            if ch == "X":
                x |= 1 << k
            elif ch == "Y":
                x |= 1 << k
                z |= 1 << k
            elif ch == "Z":
                z |= 1 << k
            elif ch != "I":
                raise ValueError(f"invalid Pauli letter {ch!r}")
        return cls(len(label), x, z, phase_power)

    def label(self):
        return "".join(_letter_at(self.x_mask, self.z_mask, k) for k in range(self.n_qubits))

    @property
    def phase(self):
        return _PHASES[self.phase_power]

    def weight(self):
        """Number of non-identity factors."""
        return (self.x_mask | self.z_mask).bit_count()

    def is_identity(self):
        return self.x_mask == 0 and self.z_mask == 0

    def strip_phase(self):
        if self.phase_power == 0:
            return self
        return PauliString(self.n_qubits, self.x_mask, self.z_mask)

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        pre = {0: "", 1: "i*", 2: "-", 3: "-i*"}[self.phase_power]
        return f"PauliString({pre}{self.label()})"


def _product_phase_power(x1, z1, x2, z2):
    # Letter strings in iXZ-canonical form: letters(x,z) = i**|x&z| X^x Z^z.
    c1 = (x1 & z1).bit_count()
    c2 = (x2 & z2).bit_count()
    c12 = ((x1 ^ x2) & (z1 ^ z2)).bit_count()
    return (c1 + c2 - c12 + 2 * (z1 & x2).bit_count()) % 4


def multiply(a, b):
    """Group product a*b with exact phase tracking."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"size mismatch: {a.n_qubits} vs {b.n_qubits}")
    power = a.phase_power + b.phase_power + _product_phase_power(
        a.x_mask, a.z_mask, b.x_mask, b.z_mask
    )
    return PauliString(a.n_qubits, a.x_mask ^ b.x_mask, a.z_mask ^ b.z_mask, power)


def commutes(a, b):
    """General commutativity: symplectic inner product vanishes."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"size mismatch: {a.n_qubits} vs {b.n_qubits}")
    return ((a.x_mask & b.z_mask).bit_count() + (a.z_mask & b.x_mask).bit_count()) % 2 == 0


def qubit_wise_commutes(a, b):
    """True iff the single-qubit factors commute at every position."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"size mismatch: {a.n_qubits} vs {b.n_qubits}")
    both = (a.x_mask | a.z_mask) & (b.x_mask | b.z_mask)
    differ = (a.x_mask ^ b.x_mask) | (a.z_mask ^ b.z_mask)
    return both & differ == 0


class PauliSum:
    """Real-coefficient sum of phase-free Pauli strings.

    Terms are keyed by (x_mask, z_mask); coefficients below ``drop_tol``
    are removed on construction.  Instances are treated as immutable:
    every operation returns a new sum.
    """

    __slots__ = ("n_qubits", "_terms", "_cache")

    def __init__(self, n_qubits, terms=None, drop_tol=DEFAULT_DROP_TOL):
        self.n_qubits = n_qubits
        clean = {}
        if terms:
            full = (1 << n_qubits) - 1
            for (x, z), coeff in terms.items():
                if x & ~full or z & ~full:
                    raise ValueError("term mask exceeds qubit register")
                c = float(coeff)
                if abs(c) > drop_tol:
                    clean[(x, z)] = c
        self._terms = clean
        self._cache = {}

    @classmethod
    def from_terms(cls, n_qubits, pairs, drop_tol=DEFAULT_DROP_TOL, imag_tol=1e-10):
        """Accumulate (PauliString | label, coefficient) pairs.

        Phases carried by the strings are folded into the coefficients;
        the accumulated result must be Hermitian (real) within imag_tol.
        """
        acc = {}
        for p, coeff in pairs:
            if isinstance(p, str):
                p = PauliString.from_label(p)
            if p.n_qubits != n_qubits:
                raise ValueError("term size mismatch")
            key = (p.x_mask, p.z_mask)
            acc[key] = acc.get(key, 0.0) + complex(coeff) * p.phase
        worst = max((abs(c.imag) for c in acc.values()), default=0.0)
        if worst > imag_tol:
            raise ValueError(f"non-Hermitian accumulation: residual imag {worst:.3e}")
        return cls(n_qubits, {k: c.real for k, c in acc.items()}, drop_tol)

    @classmethod
    def identity(cls, n_qubits, coeff=1.0):
        return cls(n_qubits, {(0, 0): coeff})

    def items(self):
        """(PauliString, coefficient) pairs in canonical mask order."""
        for key in sorted(self._terms):
            x, z = key
            yield PauliString(self.n_qubits, x, z), self._terms[key]

    def keys(self):
        return sorted(self._terms)

    def coefficient(self, p):
        if isinstance(p, str):
            p = PauliString.from_label(p)
        return self._terms.get((p.x_mask, p.z_mask), 0.0)

    def constant(self):
        """Coefficient of the identity term."""
        return self._terms.get((0, 0), 0.0)

    def __len__(self):
        return len(self._terms)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = PauliSum.identity(self.n_qubits, other)
        if self.n_qubits != other.n_qubits:
            raise ValueError("size mismatch")
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, 0.0) + c
        return PauliSum(self.n_qubits, terms)

    def __sub__(self, other):
        return self + (other * -1.0)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return PauliSum(self.n_qubits, {k: c * other for k, c in self._terms.items()})
        if self.n_qubits != other.n_qubits:
            raise ValueError("size mismatch")
        pairs = []
        for (x1, z1), c1 in self._terms.items():
            for (x2, z2), c2 in other._terms.items():
                power = _product_phase_power(x1, z1, x2, z2)
                pairs.append((PauliString(self.n_qubits, x1 ^ x2, z1 ^ z2, power), c1 * c2))
        return PauliSum.from_terms(self.n_qubits, pairs)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, PauliSum)
            and self.n_qubits == other.n_qubits
            and self._terms == other._terms
        )

    def isclose(self, other, tol=1e-10):
        if self.n_qubits != other.n_qubits:
            return False
        keys = set(self._terms) | set(other._terms)
        return all(
            math.isclose(self._terms.get(k, 0.0), other._terms.get(k, 0.0), abs_tol=tol)
            for k in keys
        )

    def __repr__(self):
        return f"PauliSum(n_qubits={self.n_qubits}, terms={len(self)})"

    # -- serialization ---------------------------------------------------

    def to_text(self):
        """One term per line: ``<coeff> <letters>`` (qubit 0 first)."""
        lines = []
        for p, c in self.items():
            lines.append(f"{c!r} {p.label()}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text):
        pairs = []
        n_qubits = None
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            coeff_str, label = line.split()
            if n_qubits is None:
                n_qubits = len(label)
            pairs.append((PauliString.from_label(label), float(coeff_str)))
        if n_qubits is None:
            raise ValueError("empty Pauli-sum text")
        return cls.from_terms(n_qubits, pairs)

    def to_json_obj(self):
        return {
            "schema_version": 1,
            "n_qubits": self.n_qubits,
            "terms": [{"coeff": c, "pauli": p.label()} for p, c in self.items()],
        }

    @classmethod
    def from_json_obj(cls, obj):
        n = obj["n_qubits"]
        pairs = [(PauliString.from_label(t["pauli"]), t["coeff"]) for t in obj["terms"]]
        return cls.from_terms(n, pairs)

    def to_json(self):
        return json.dumps(self.to_json_obj(), indent=1)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))


# -- GF(2) linear algebra ------------------------------------------------


def gf2_rref(rows):
    """Reduced row-echelon form of bit-mask rows over GF(2).

    Returns (reduced_rows, pivot_columns), zero rows removed, rows ordered
    by ascending pivot.  Column k is bit k.
    """
    basis = []  # (pivot, row)
    for row in rows:
        for piv, b in basis:
            if (row >> piv) & 1:
                row ^= b
        if row:
            piv = (row & -row).bit_length() - 1
            for i, (p, b) in enumerate(basis):
                if (b >> piv) & 1:
                    basis[i] = (p, b ^ row)
            basis.append((piv, row))
    basis.sort()
    return [b for _, b in basis], [p for p, _ in basis]


def gf2_kernel(rows, width):
    """Basis of {v : r . v = 0 mod 2 for all rows r}, as bit masks.

    An empty row list yields the standard basis of the full width-bit
    space.  Basis vectors are returned in ascending free-column order.
    """
    reduced, pivots = gf2_rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        v = 1 << free
        for piv, row in zip(pivots, reduced):
            if (row >> free) & 1:
                v |= 1 << piv
        basis.append(v)
    return basis
