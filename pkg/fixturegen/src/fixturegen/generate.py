"""Generate FCIDUMP fixtures and reference energies.

Geometries: methylamine and formic acid use the published CCSD(T)/Def2TZVPP
coordinates; the small molecules use standard near-equilibrium bond
lengths, recorded alongside the outputs.  Emitted orbitals are canonical
RHF MOs in energy order with XOR-convention irrep labels.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .ci import active_space_energy, casci_ground_energy, freeze_core_integrals
from .scf import run_rhf

MOLECULES = {
    "h2": {
        "symbols": ["H", "H"],
        "coords": [[0.0, 0.0, -0.3675], [0.0, 0.0, 0.3675]],
        "note": "R = 0.735 angstrom",
        "frozen_core": 0,
        "cas": [],
    },
    "lih": {
        "symbols": ["Li", "H"],
        "coords": [[0.0, 0.0, 0.0], [0.0, 0.0, 1.5949]],
        "note": "R = 1.5949 angstrom",
        "frozen_core": 1,
        "cas": [],
    },
    "beh2": {
        "symbols": ["Be", "H", "H"],
        "coords": [[0.0, 0.0, 0.0], [0.0, 0.0, -1.3264], [0.0, 0.0, 1.3264]],
        "note": "R(Be-H) = 1.3264 angstrom, linear",
        "frozen_core": 1,
        "cas": [],
    },
    "ch3nh2": {
        "symbols": ["C", "N", "H", "H", "H", "H", "H"],
        "coords": [
            [0.0519020, 0.7064670, 0.0000000],
            [0.0519020, -0.7615000, 0.0000000],
            [-0.9428060, 1.1684160, 0.0000000],
            [0.5906740, 1.0624810, 0.8789330],
            [0.5906740, 1.0624810, -0.8789330],
            [-0.4566340, -1.1008410, -0.8075530],
            [-0.4566340, -1.1008410, 0.8075530],
        ],
        "note": "CCSD(T)/Def2TZVPP optimized coordinates",
        "frozen_core": 2,
        "cas": [(2, 2), (4, 4), (6, 6)],
    },
    "ch2o2": {
        "symbols": ["C", "O", "O", "H", "H"],
        "coords": [
            [0.0000000, 0.3858930, 0.0000000],
            [-0.8988900, -0.6261750, 0.0000000],
            [1.1799510, 0.1951720, 0.0000000],
            [-0.4628290, 1.3844990, 0.0000000],
            [-1.7856570, -0.2518330, 0.0000000],
        ],
        "note": "CCSD(T)/Def2TZVPP optimized coordinates",
        "frozen_core": 3,
        "cas": [(2, 2), (4, 4), (6, 6)],
    },
}

_EIGHTFOLD = [
    (0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2),
    (2, 3, 0, 1), (3, 2, 0, 1), (2, 3, 1, 0), (3, 2, 1, 0),
]

# determinant-CI spaces larger than this are skipped (kept desk-scale)
MAX_CI_DETERMINANTS = 6000


def write_fcidump(path, h, g, e_const, n_electrons, orbsym):
    m = h.shape[0]
    lines = [f" &FCI NORB={m},NELEC={n_electrons},MS2=0,"]
    lines.append("  ORBSYM=" + ",".join(str(x) for x in orbsym) + ",")
    lines.append("  ISYM=1,")
    lines.append(" &END")
    emitted = set()
    for p in range(m):
        for q in range(p + 1):
            for r in range(p + 1):
                for t in range(r + 1):
                    idx = (p, q, r, t)
                    canon = min(tuple(idx[k] for k in perm) for perm in _EIGHTFOLD)
                    if canon in emitted:
                        continue
                    emitted.add(canon)
                    v = float(g[idx])
                    if v != 0.0:
                        lines.append(f" {v!r} {p+1} {q+1} {r+1} {t+1}")
    for p in range(m):
        for q in range(p + 1):
            v = float(h[p, q])
            if v != 0.0:
                lines.append(f" {v!r} {p+1} {q+1} 0 0")
    lines.append(f" {float(e_const)!r} 0 0 0 0")
    Path(path).write_text("\n".join(lines) + "\n")


def _ci_dim(n_orb, n_pair):
    from math import comb

    return comb(n_orb, n_pair) ** 2


def generate_fixture(name, out_dir):
    """SCF + FCIDUMP + reference energies for one named molecule."""
    spec = MOLECULES[name]
    res = run_rhf(spec["symbols"], spec["coords"])
    m = len(res.mo_energies)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_fcidump(
        out_dir / f"{name}.fcidump",
        res.h_mo,
        res.g_mo,
        res.e_nuc,
        res.n_electrons,
        res.orbsym,
    )

    n_pair = res.n_electrons // 2
    references = {
        "geometry_angstrom": [
            [s, *map(float, xyz)] for s, xyz in zip(spec["symbols"], spec["coords"])
        ],
        "geometry_note": spec["note"],
        "basis": "STO-3G",
        "point_group": res.point_group,
        "n_orbitals": m,
        "n_electrons": res.n_electrons,
        "orbsym": list(res.orbsym),
        "mo_energies": [float(x) for x in res.mo_energies],
        "nuclear_repulsion": res.e_nuc,
        "hf_total_energy": res.e_hf,
        "symmetry_residual": res.symmetry_residual,
        "fci": {},
    }

    if _ci_dim(m, n_pair) <= MAX_CI_DETERMINANTS:
        references["fci"]["full"] = casci_ground_energy(
            res.h_mo, res.g_mo, res.e_nuc, n_pair, n_pair
        )
    n_frozen = spec["frozen_core"]
    if n_frozen:
        h_f, g_f, e_f = freeze_core_integrals(res.h_mo, res.g_mo, res.e_nuc, n_frozen)
        pairs = n_pair - n_frozen
        if _ci_dim(h_f.shape[0], pairs) <= MAX_CI_DETERMINANTS:
            references["fci"][f"frozen_core_{n_frozen}"] = casci_ground_energy(
                h_f, g_f, e_f, pairs, pairs
            )
    for ne, no in spec["cas"]:
        references["fci"][f"cas_{ne}e_{no}o"] = active_space_energy(
            res.h_mo, res.g_mo, res.e_nuc, res.n_electrons, ne, no
        )
    return references


def main(argv=None):
    parser = argparse.ArgumentParser(prog="fixturegen", description=__doc__)
    parser.add_argument("--out", default="fixtures", help="output directory")
    parser.add_argument(
        "--molecules",
        default=",".join(MOLECULES),
        help="comma-separated subset of " + ", ".join(MOLECULES),
    )
    args = parser.parse_args(argv)
    names = [n.strip() for n in args.molecules.split(",") if n.strip()]
    unknown = [n for n in names if n not in MOLECULES]
    if unknown:
        parser.error(f"unknown molecules: {', '.join(unknown)}")

    out_dir = Path(args.out)
    references_path = out_dir / "references.json"
    references = {}
    if references_path.exists():
        references = json.loads(references_path.read_text())
    for name in names:
        print(f"generating {name} ...", file=sys.stderr)
        references[name] = generate_fixture(name, out_dir)
        print(
            f"  HF = {references[name]['hf_total_energy']:.10f} Ha "
            f"({references[name]['point_group']}, {references[name]['n_orbitals']} orbitals)",
            file=sys.stderr,
        )
    out_dir.mkdir(parents=True, exist_ok=True)
    references_path.write_text(json.dumps(references, indent=1, sort_keys=True) + "\n")
    print(f"wrote {references_path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
