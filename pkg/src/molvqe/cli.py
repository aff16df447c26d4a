"""Command-line front end: estimate, run, taper, group, fci, scan.

Exit codes: 0 success, 2 usage error (argparse), 1 computation error.  The
resolved configuration is logged to stderr for every run; results go to
stdout in the format selected by --out.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

log = logging.getLogger("molvqe")


def _configure_threads():
    threads = os.environ.get("MOLVQE_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)


def _add_common(parser):
    parser.add_argument("--fcidump", help="FCIDUMP file with molecular integrals")
    parser.add_argument("--freeze", type=int, default=0, metavar="N",
                        help="fold the N lowest orbitals as frozen core")
    parser.add_argument("--active", metavar="NE,NO",
                        help="restrict to NE electrons in NO spatial orbitals")
    parser.add_argument("--mapping", choices=["jw"], default="jw",
                        help="fermion-to-qubit mapping (Jordan-Wigner)")
    parser.add_argument("--out", choices=["json", "csv", "table"], default="table",
                        help="output format")
    parser.add_argument("--seed", type=int, default=0, help="seed for stochastic options")


def _parse_active(text, parser):
    try:
        ne, no = (int(x) for x in text.split(","))
        return ne, no
    except ValueError:
        parser.error(f"--active expects NE,NO (got {text!r})")


def _load_integrals(args, parser):
    from .fcidump import freeze_core, read_fcidump, select_active_space

    if not args.fcidump:
        parser.error("--fcidump is required for this command")
    s = read_fcidump(args.fcidump)
    if args.freeze:
        s = freeze_core(s, args.freeze)
    if args.active:
        ne, no = _parse_active(args.active, parser)
        s = select_active_space(s, ne, no)
    return s


def _emit(obj, fmt, table_fn):
    if fmt == "json":
        print(json.dumps(obj, indent=1))
    else:
        print(table_fn(obj))


# -- estimate ----------------------------------------------------------------


def _report_table(obj):
    rows = [
        ("Ansatz Type", f"{obj['ansatz']}" + (f" (k={obj['k']})" if obj["k"] > 1 else "")),
        ("Circuit Depth", obj["circuit_depth"]),
        ("Qubits", obj["qubits"]),
        ("Total Gates", obj["total_gates"]),
        ("Two-qubit gates", obj["two_qubit_gates"]),
        ("Pauli Terms", obj["pauli_terms"]),
        ("Circuits", obj["measurement_circuits"]),
        ("Double Excitations", obj["double_excitations"]),
        ("Tapering", "Yes" if obj["tapering"] else "No"),
    ]
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in rows)


def cmd_estimate(args, parser):
    from .excitations import CostModel, build_ansatz, estimate_resources
    from .mapping import jordan_wigner
    from .tapering import find_z2_symmetries

    s = _load_integrals(args, parser)
    h = jordan_wigner(s)
    ansatz = build_ansatz(args.ansatz, s.n_spatial, s.n_electrons, orbsym=s.orbsym, k=args.k)
    model = None
    if args.cost_model:
        with open(args.cost_model) as f:
            model = CostModel.from_json_obj(json.load(f))
    tapered = None
    if args.taper:
        tapered = h.n_qubits - len(find_z2_symmetries(h))
    report = estimate_resources(
        ansatz, h=h, cost_model=model, grouping=args.grouping, tapered_qubits=tapered
    )
    _emit(report.to_json_obj(), args.out, _report_table)


# -- run ---------------------------------------------------------------------


def cmd_run(args, parser):
    from .excitations import build_ansatz, estimate_resources
    from .mapping import hf_state, jordan_wigner
    from .vqe import VqeOptions, minimize

    s = _load_integrals(args, parser)
    h = jordan_wigner(s)
    ansatz = build_ansatz(args.ansatz, s.n_spatial, s.n_electrons, orbsym=s.orbsym, k=args.k)
    reference = hf_state(s.n_electrons, h.n_qubits)
    options = VqeOptions(
        grad_tol=args.grad_tol,
        max_iterations=args.maxiter,
        gradient_mode=args.gradient,
        initial_perturbation=args.perturb,
        seed=args.seed,
    )
    trace = minimize(ansatz, h, reference, options=options)
    report = estimate_resources(ansatz, h=h, grouping=args.grouping)
    trace.n_two_qubit_gates = report.two_qubit_gates

    if args.out == "csv":
        sys.stdout.write(trace.to_csv())
        return
    obj = trace.to_json_obj()
    obj["resource_report"] = report.to_json_obj()
    if args.out == "json":
        print(json.dumps(obj, indent=1))
        return
    gap = trace.energy_gap
    lines = [
        f"ansatz            {ansatz.variant} (k={ansatz.k}, {ansatz.n_parameters} parameters)",
        f"qubits            {h.n_qubits}",
        f"iterations        {len(trace.iterations) - 1}",
        f"converged         {trace.converged}",
        f"final energy      {trace.final_energy:.10f} Ha",
    ]
    if trace.reference_fci is not None:
        lines.append(f"FCI reference     {trace.reference_fci:.10f} Ha")
        lines.append(f"gap to FCI        {gap:.3e} Ha")
    lines.append(f"two-qubit gates   {report.two_qubit_gates}")
    print("\n".join(lines))


# -- taper -------------------------------------------------------------------


def cmd_taper(args, parser):
    from .mapping import hf_state, jordan_wigner
    from .pauli import PauliSum
    from .tapering import find_z2_symmetries, scan_sectors, select_sector, taper

    reference = None
    if args.pauli:
        with open(args.pauli) as f:
            h = PauliSum.from_json(f.read())
    else:
        s = _load_integrals(args, parser)
        h = jordan_wigner(s)
        reference = hf_state(s.n_electrons, h.n_qubits)

    sym = find_z2_symmetries(h)
    if args.scan_sectors:
        ranked = scan_sectors(h, sym)
        obj = {
            "schema_version": 1,
            "symmetries": sym.to_json_obj(),
            "sectors": [{"sector": list(sec), "energy": e} for sec, e in ranked],
        }
        _emit(obj, args.out, lambda o: "\n".join(
            f"{tuple(x['sector'])}  {x['energy']:.10f}" for x in o["sectors"]
        ))
        return

    if args.sector:
        sector = tuple(int(x) for x in args.sector.split(","))
        sym = sym.with_sector(sector)
    elif reference is not None:
        sym = select_sector(sym, reference)
    elif len(sym):
        parser.error("input has no HF reference; pass --sector or --scan-sectors")
    reduced = taper(h, sym) if len(sym) else h
    obj = {
        "schema_version": 1,
        "n_qubits_before": h.n_qubits,
        "n_qubits_after": reduced.n_qubits,
        "n_terms_before": len(h),
        "n_terms_after": len(reduced),
        "symmetries": sym.to_json_obj(),
        "hamiltonian": reduced.to_json_obj(),
    }

    def table(o):
        lines = [
            f"qubits   {o['n_qubits_before']} -> {o['n_qubits_after']}",
            f"terms    {o['n_terms_before']} -> {o['n_terms_after']}",
            f"sector   {o['symmetries']['sector']}",
            "generators:",
        ]
        for g, q in zip(o["symmetries"]["generators"], o["symmetries"]["sigma_qubits"]):
            lines.append(f"  {g}  (sigma qubit {q})")
        return "\n".join(lines)

    _emit(obj, args.out, table)


# -- group -------------------------------------------------------------------


def cmd_group(args, parser):
    from .grouping import group_terms
    from .mapping import jordan_wigner
    from .pauli import PauliSum

    if args.pauli:
        with open(args.pauli) as f:
            h = PauliSum.from_json(f.read())
    else:
        h = jordan_wigner(_load_integrals(args, parser))
    groups = group_terms(h, args.mode, strategy=args.strategy)
    obj = {
        "schema_version": 1,
        "mode": args.mode,
        "n_terms": len(h),
        "n_groups": len(groups),
    }
    if args.full:
        obj["groups"] = [[p.label() for p in g] for g in groups]
    _emit(obj, args.out, lambda o: f"{o['n_groups']} measurement groups "
                                   f"for {o['n_terms']} terms ({o['mode']})")


# -- fci ---------------------------------------------------------------------


def cmd_fci(args, parser):
    from .mapping import jordan_wigner
    from .statevector import exact_ground_energy

    s = _load_integrals(args, parser)
    h = jordan_wigner(s)
    particles = None if args.no_sector else (args.particles if args.particles is not None else s.n_electrons)
    energy = exact_ground_energy(h, particle_sector=particles)
    obj = {
        "schema_version": 1,
        "energy": energy,
        "n_qubits": h.n_qubits,
        "particles": particles,
    }
    _emit(obj, args.out, lambda o: f"ground energy {o['energy']:.10f} Ha "
                                   f"({o['n_qubits']} qubits, particles={o['particles']})")


# -- scan --------------------------------------------------------------------


def cmd_scan(args, parser):
    from .fcidump import freeze_core, read_fcidump, select_active_space
    from .mapping import jordan_wigner
    from .statevector import MAX_DIAG_QUBITS, exact_ground_energy

    if not args.fcidump:
        parser.error("--fcidump is required for this command")
    s = read_fcidump(args.fcidump)
    max_qubits = min(args.max_qubits, MAX_DIAG_QUBITS)
    points = []

    def add_point(label, reduced):
        n_qubits = 2 * reduced.n_spatial
        entry = {
            "label": label,
            "n_active_electrons": reduced.n_electrons,
            "n_active_spatial": reduced.n_spatial,
            "n_qubits": n_qubits,
            "energy": None,
        }
        if n_qubits <= max_qubits:
            h = jordan_wigner(reduced)
            entry["energy"] = exact_ground_energy(h, particle_sector=reduced.n_electrons)
        points.append(entry)

    k = 1
    n_occ = s.n_electrons // 2
    while True:
        ne, no = 2 * k, 2 * k
        lo = n_occ - k
        if lo < 0 or lo + no > s.n_spatial:
            break
        add_point(f"({ne}e,{no}o)", select_active_space(s, ne, no))
        k += 1
    if args.freeze:
        add_point("frozen-core", freeze_core(s, args.freeze))

    obj = {"schema_version": 1, "points": points}

    def table(o):
        lines = [f"{'space':>14} {'qubits':>7} {'energy (Ha)':>18}"]
        for p in o["points"]:
            e = "skipped" if p["energy"] is None else f"{p['energy']:.10f}"
            lines.append(f"{p['label']:>14} {p['n_qubits']:>7} {e:>18}")
        return "\n".join(lines)

    if args.out == "csv":
        print("label,n_active_electrons,n_active_spatial,n_qubits,energy")
        for p in points:
            e = "" if p["energy"] is None else repr(p["energy"])
            print(f"{p['label']},{p['n_active_electrons']},{p['n_active_spatial']},{p['n_qubits']},{e}")
        return
    _emit(obj, args.out, table)


# -- dispatch ------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="molvqe",
        description="Molecular VQE toolkit: Hamiltonians, tapering, resources, statevector VQE",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="circuit resource estimate (Table-row shape)")
    _add_common(p_est)
    p_est.add_argument("--ansatz", required=True,
                   choices=["uccsd", "uccgsd", "uccsdq", "uccsdqs", "kupgsd", "kupgsdq"])
    p_est.add_argument("--k", type=int, default=1, help="repetition count for k-Up ansatzes")
    p_est.add_argument("--taper", action=argparse.BooleanOptionalAction, default=False,
                       help="report qubit count after Z2 tapering")
    p_est.add_argument("--grouping", choices=["qubitwise", "general"], default="qubitwise")
    p_est.add_argument("--cost-model", help="JSON file overriding qubit-excitation gate costs")
    p_est.set_defaults(func=cmd_estimate)

    p_run = sub.add_parser("run", help="noiseless statevector VQE")
    _add_common(p_run)
    p_run.add_argument("--ansatz", required=True,
                   choices=["uccsd", "uccgsd", "uccsdq", "uccsdqs", "kupgsd", "kupgsdq"])
    p_run.add_argument("--k", type=int, default=1)
    p_run.add_argument("--gradient", choices=["fd", "adjoint"], default="fd")
    p_run.add_argument("--maxiter", type=int, default=500)
    p_run.add_argument("--grad-tol", type=float, default=1e-6)
    p_run.add_argument("--perturb", type=float, default=0.0,
                       help="seeded random perturbation of the HF start")
    p_run.add_argument("--grouping", choices=["qubitwise", "general"], default="qubitwise")
    p_run.set_defaults(func=cmd_run)

    p_tap = sub.add_parser("taper", help="find Z2 symmetries and taper the Hamiltonian")
    _add_common(p_tap)
    p_tap.add_argument("--pauli", help="PauliSum JSON file instead of --fcidump")
    p_tap.add_argument("--sector",
                       help="explicit sector, e.g. --sector=1,-1,1 "
                            "(use the = form when the first entry is negative)")
    p_tap.add_argument("--scan-sectors", action="store_true",
                       help="diagonalize every sector instead of selecting one")
    p_tap.set_defaults(func=cmd_taper)

    p_grp = sub.add_parser("group", help="measurement grouping")
    _add_common(p_grp)
    p_grp.add_argument("--pauli", help="PauliSum JSON file instead of --fcidump")
    p_grp.add_argument("--mode", choices=["qubitwise", "general"], default="qubitwise")
    p_grp.add_argument("--strategy", choices=["coloring", "sorted"], default="coloring",
                       help="greedy ordering strategy")
    p_grp.add_argument("--full", action="store_true", help="emit the full partition")
    p_grp.set_defaults(func=cmd_group)

    p_fci = sub.add_parser("fci", help="exact ground energy (FCI oracle)")
    _add_common(p_fci)
    p_fci.add_argument("--particles", type=int, default=None,
                       help="particle-number sector (default: NELEC)")
    p_fci.add_argument("--no-sector", action="store_true",
                       help="diagonalize the full Fock space")
    p_fci.set_defaults(func=cmd_fci)

    p_scan = sub.add_parser("scan", help="energy vs HOMO-LUMO active-space sweep")
    _add_common(p_scan)
    p_scan.add_argument("--active-sweep", action="store_true", default=True,
                        help="sweep symmetric (2e,2o), (4e,4o), ... windows")
    p_scan.add_argument("--max-qubits", type=int, default=16,
                        help="skip windows whose register exceeds this")
    p_scan.set_defaults(func=cmd_scan)
    return parser


def main(argv=None):
    _configure_threads()
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    resolved = {k: v for k, v in vars(args).items() if k != "func" and v is not None}
    log.info("configuration: %s", json.dumps(resolved, sort_keys=True, default=str))
    try:
        args.func(args, parser)
    except (ValueError, OSError, AssertionError, RuntimeError) as exc:
        log.error("error: %s", exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
