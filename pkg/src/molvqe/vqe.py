"""Outer VQE loop: objective, gradients, and an in-repo BFGS minimizer.

The optimizer is implemented here (inverse-Hessian BFGS with Armijo
backtracking) so that convergence traces are bit-reproducible across
installs; library minimizers shuffle internals between versions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .statevector import (
    _apply_generator,
    _rotate_array,
    _sparse_matrix,
    apply_ansatz,
    exact_ground_energy,
    expectation,
    prepare_basis,
)

__all__ = ["VqeOptions", "VqeTrace", "objective", "gradient", "minimize"]


@dataclass(frozen=True)
class VqeOptions:
    grad_tol: float = 1e-6
    energy_tol: float = 1e-10
    max_iterations: int = 500
    gradient_mode: str = "fd"  # "fd" | "adjoint"
    fd_step: float = 1e-5
    armijo_c1: float = 1e-4
    backtrack_factor: float = 0.5
    max_backtracks: int = 60
    initial_perturbation: float = 0.0  # HF start by default
    seed: int = 0
    compute_reference: bool = True  # FCI oracle when the register allows it


@dataclass
class VqeTrace:
    iterations: list = field(default_factory=list)  # (index, energy, grad_norm)
    final_energy: float = math.nan
    final_parameters: np.ndarray = None
    reference_fci: float = None
    n_two_qubit_gates: int = None
    converged: bool = False

    @property
    def energy_gap(self):
        if self.reference_fci is None:
            return None
        return self.final_energy - self.reference_fci

    def to_csv(self):
        lines = ["iter,energy,grad_norm"]
        for it, e, g in self.iterations:
            lines.append(f"{it},{e!r},{g!r}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self):
        return {
            "schema_version": 1,
            "final_energy": self.final_energy,
            "reference_fci": self.reference_fci,
            "energy_gap": self.energy_gap,
            "converged": self.converged,
            "n_iterations": len(self.iterations) - 1 if self.iterations else 0,
            "n_two_qubit_gates": self.n_two_qubit_gates,
            "trace": [
                {"iter": it, "energy": e, "grad_norm": g} for it, e, g in self.iterations
            ],
        }


def objective(ansatz, h, reference, theta):
    """C(theta) = <psi(theta)|H|psi(theta)> from the HF reference bitstring."""
    state = apply_ansatz(prepare_basis(reference), ansatz, theta)
    return expectation(state, h)


def _fd_gradient(ansatz, h, reference, theta, step):
    theta = np.asarray(theta, dtype=float)
    grad = np.zeros_like(theta)
    for k in range(theta.size):
        probe = theta.copy()
        probe[k] = theta[k] + step
        e_plus = objective(ansatz, h, reference, probe)
        probe[k] = theta[k] - step
        e_minus = objective(ansatz, h, reference, probe)
        grad[k] = (e_plus - e_minus) / (2.0 * step)
    return grad


def _adjoint_gradient(ansatz, h, reference, theta):
    """Exact gradient by reverse sweep: d_k = 2 Re <phi_k|G_k|psi_k>."""
    theta = np.asarray(theta, dtype=float)
    n = ansatz.n_qubits
    psi = apply_ansatz(prepare_basis(reference), ansatz, theta).amplitudes.copy()
    phi = _sparse_matrix(h) @ psi
    grad = np.zeros_like(theta)
    for exc in reversed(ansatz.excitations):
        fermionic = exc.flavor == "fermionic"
        g_psi = _apply_generator(psi, n, exc.occupied, exc.virtual, fermionic)
        grad[exc.parameter_index] += 2.0 * float(np.vdot(phi, g_psi).real)
        t = theta[exc.parameter_index]
        psi = _rotate_array(psi, n, exc.occupied, exc.virtual, -t, fermionic)
        phi = _rotate_array(phi, n, exc.occupied, exc.virtual, -t, fermionic)
    return grad


def gradient(ansatz, h, reference, theta, mode="fd", fd_step=1e-5):
    """Energy gradient; central finite differences by default, with an
    adjoint-mode exact variant behind the same contract."""
    if mode == "fd":
        return _fd_gradient(ansatz, h, reference, theta, fd_step)
    if mode == "adjoint":
        return _adjoint_gradient(ansatz, h, reference, theta)
    raise ValueError(f"unknown gradient mode {mode!r}")


def _check_finite(energy, theta):
    if not math.isfinite(energy):
        raise RuntimeError(
            f"non-finite energy {energy} at parameters {np.array2string(theta, precision=6)}"
        )


def minimize(ansatz, h, reference, theta0=None, options=None):
    """BFGS with backtracking line search from the HF start (theta = 0).

    Records (iteration, energy, gradient norm) each accepted step; stops
    once the gradient norm drops below grad_tol, the energy change falls
    below energy_tol, or max_iterations is reached (converged=False then).
    """
    opt = options or VqeOptions()
    n_par = ansatz.n_parameters
    theta = np.zeros(n_par) if theta0 is None else np.asarray(theta0, dtype=float).copy()
    if theta.shape != (n_par,):
        raise ValueError(f"theta0 must have {n_par} entries")
    if opt.initial_perturbation:
        rng = np.random.default_rng(opt.seed)
        theta = theta + opt.initial_perturbation * rng.normal(size=n_par)

    trace = VqeTrace()
    if opt.compute_reference and h.n_qubits <= 16:
        trace.reference_fci = exact_ground_energy(h, particle_sector=reference.count("1"))

    def f(t):
        return objective(ansatz, h, reference, t)

    def df(t):
        return gradient(ansatz, h, reference, t, mode=opt.gradient_mode, fd_step=opt.fd_step)

    energy = f(theta)
    _check_finite(energy, theta)
    if n_par == 0:
        trace.iterations.append((0, energy, 0.0))
        trace.final_energy = energy
        trace.final_parameters = theta
        trace.converged = True
        return trace

    grad_vec = df(theta)
    grad_norm = float(np.linalg.norm(grad_vec))
    trace.iterations.append((0, energy, grad_norm))

    h_inv = np.eye(n_par)
    converged = grad_norm < opt.grad_tol
    iteration = 0
    while not converged and iteration < opt.max_iterations:
        iteration += 1
        direction = -h_inv @ grad_vec
        slope = float(direction @ grad_vec)
        if slope >= 0.0:  # stale curvature; restart from steepest descent
            h_inv = np.eye(n_par)
            direction = -grad_vec
            slope = -float(grad_vec @ grad_vec)

        step = 1.0
        new_theta = theta + step * direction
        new_energy = f(new_theta)
        backtracks = 0
        while (
            not math.isfinite(new_energy)
            or new_energy > energy + opt.armijo_c1 * step * slope
        ):
            backtracks += 1
            if backtracks > opt.max_backtracks:
                break
            step *= opt.backtrack_factor
            new_theta = theta + step * direction
            new_energy = f(new_theta)
        _check_finite(new_energy, new_theta)
        if backtracks > opt.max_backtracks and new_energy >= energy:
            break  # line search failed; gradient is numerically flat

        new_grad = df(new_theta)
        s = new_theta - theta
        y = new_grad - grad_vec
        ys = float(y @ s)
        if ys > 1e-12 * float(np.linalg.norm(y)) * float(np.linalg.norm(s)) + 1e-300:
            rho = 1.0 / ys
            sy = np.outer(s, y)
            h_inv = (np.eye(n_par) - rho * sy) @ h_inv @ (np.eye(n_par) - rho * sy.T)
            h_inv += rho * np.outer(s, s)

        energy_change = abs(new_energy - energy)
        theta, grad_vec = new_theta, new_grad
        energy = new_energy
        grad_norm = float(np.linalg.norm(grad_vec))
        trace.iterations.append((iteration, energy, grad_norm))
        converged = grad_norm < opt.grad_tol or energy_change < opt.energy_tol

    trace.final_energy = energy
    trace.final_parameters = theta
    trace.converged = bool(converged)
    return trace
