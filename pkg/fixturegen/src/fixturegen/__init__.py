"""FCIDUMP fixture generation for the molecular VQE toolkit.

Self-contained STO-3G electronic structure: Gaussian integrals
(McMurchie-Davidson), symmetry-blocked restricted Hartree-Fock, and
determinant-based CI for reference energies.
"""

__version__ = "0.1.0"
