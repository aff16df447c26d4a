"""STO-3G basis data and shell construction.

Exponents and contraction coefficients are the published STO-3G fits
(least-squares 3-Gaussian expansions of Slater orbitals with the standard
per-element scale factors).  Contractions are renormalized after primitive
normalization, matching common integral packages.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# per-shell contraction coefficients over normalized primitives
_COEF_1S = (0.15432897, 0.53532814, 0.44463454)
_COEF_2S = (-0.09996723, 0.39951283, 0.70011547)
_COEF_2P = (0.15591627, 0.60768372, 0.39195739)

# element -> list of (shell type, exponents)
STO3G = {
    "H": [("1s", (3.42525091, 0.62391373, 0.16885540))],
    "Li": [
        ("1s", (16.11957475, 2.93620066, 0.79465050)),
        ("2sp", (0.63628970, 0.14786010, 0.04808870)),
    ],
    "Be": [
        ("1s", (30.16787069, 5.49511531, 1.48719265)),
        ("2sp", (1.31483311, 0.30553894, 0.09937075)),
    ],
    "C": [
        ("1s", (71.61683735, 13.04509632, 3.53051216)),
        ("2sp", (2.94124936, 0.68348310, 0.22228992)),
    ],
    "N": [
        ("1s", (99.10616896, 18.05231239, 4.88566024)),
        ("2sp", (3.78045588, 0.87849664, 0.28571437)),
    ],
    "O": [
        ("1s", (130.70932140, 23.80886050, 6.44360831)),
        ("2sp", (5.03315132, 1.16959612, 0.38038896)),
    ],
}

ATOMIC_NUMBER = {"H": 1, "Li": 3, "Be": 4, "C": 6, "N": 7, "O": 8}


@dataclass(frozen=True)
class Shell:
    """Contracted Cartesian Gaussian shell (l = 0 or 1)."""

    l: int
    exps: np.ndarray
    coefs: np.ndarray  # include primitive norms and contraction rescaling
    center: np.ndarray
    atom: int

    @property
    def n_functions(self):
        return 1 if self.l == 0 else 3


def _primitive_norm(alpha, l):
    # norm of x^l exp(-alpha r^2) Cartesian primitives (l <= 1)
    n = (2.0 * alpha / math.pi) ** 0.75
    if l == 1:
        n *= 2.0 * math.sqrt(alpha)
    return n


def _contraction_norm(exps, coefs, l):
    # self-overlap of the contracted shell with primitive-normalized terms
    total = 0.0
    power = 1.5 + l
    for ai, ci in zip(exps, coefs):
        for aj, cj in zip(exps, coefs):
            total += ci * cj * (2.0 * math.sqrt(ai * aj) / (ai + aj)) ** power
    return 1.0 / math.sqrt(total)


def build_shells(symbols, coords_bohr):
    """Shells (energy-orbital order: 1s, 2s, 2p per atom) for a molecule."""
    shells = []
    for atom, (symbol, center) in enumerate(zip(symbols, coords_bohr)):
        if symbol not in STO3G:
            raise ValueError(f"no STO-3G data for element {symbol}")
        for kind, exps in STO3G[symbol]:
            if kind == "1s":
                shells.append(_normalized_shell(0, exps, _COEF_1S, center, atom))
            elif kind == "2sp":
                shells.append(_normalized_shell(0, exps, _COEF_2S, center, atom))
                shells.append(_normalized_shell(1, exps, _COEF_2P, center, atom))
    return shells


def _normalized_shell(l, exps, raw_coefs, center, atom):
    exps = np.asarray(exps, dtype=float)
    prim = np.array([c * _primitive_norm(a, l) for a, c in zip(exps, raw_coefs)])
    scale = _contraction_norm(exps, raw_coefs, l)
    return Shell(l, exps, prim * scale, np.asarray(center, dtype=float), atom)


def basis_labels(shells):
    """Human-readable AO labels in basis order."""
    labels = []
    for sh in shells:
        if sh.l == 0:
            labels.append(f"a{sh.atom}:s")
        else:
            for comp in "xyz":
                labels.append(f"a{sh.atom}:p{comp}")
    return labels


def n_basis_functions(shells):
    return sum(sh.n_functions for sh in shells)
