"""Molecular VQE toolkit.

Pipeline: FCIDUMP integrals -> frozen core / active space -> Jordan-Wigner
qubit Hamiltonian -> Z2 tapering / measurement grouping / ansatz resource
estimates -> noiseless statevector VQE.
"""

from .excitations import (
    AnsatzSpec,
    CostModel,
    Excitation,
    ResourceReport,
    build_ansatz,
    estimate_resources,
    filter_by_irrep,
    generate_paired_gsd,
    generate_sd,
)
from .fcidump import (
    IntegralSet,
    freeze_core,
    hf_energy,
    parse_fcidump,
    read_fcidump,
    select_active_space,
    write_fcidump,
)
from .grouping import group_general, group_qubit_wise
from .mapping import hf_state, jordan_wigner
from .pauli import PauliString, PauliSum, commutes, multiply, qubit_wise_commutes
from .statevector import (
    Statevector,
    apply_ansatz,
    exact_ground_energy,
    expectation,
    prepare_basis,
)
from .tapering import Z2SymmetrySet, find_z2_symmetries, select_sector, taper
from .vqe import VqeOptions, VqeTrace, gradient, minimize, objective

__version__ = "0.1.0"

__all__ = [
    "AnsatzSpec", "CostModel", "Excitation", "ResourceReport",
    "build_ansatz", "estimate_resources", "filter_by_irrep",
    "generate_paired_gsd", "generate_sd",
    "IntegralSet", "freeze_core", "hf_energy", "parse_fcidump",
    "read_fcidump", "select_active_space", "write_fcidump",
    "group_general", "group_qubit_wise",
    "hf_state", "jordan_wigner",
    "PauliString", "PauliSum", "commutes", "multiply", "qubit_wise_commutes",
    "Statevector", "apply_ansatz", "exact_ground_energy", "expectation",
    "prepare_basis",
    "Z2SymmetrySet", "find_z2_symmetries", "select_sector", "taper",
    "VqeOptions", "VqeTrace", "gradient", "minimize", "objective",
]
