"""FCIDUMP parsing and spatial-orbital integral reductions.

Integrals are kept in spatial-orbital form (chemists' notation for the
two-electron array) and folded there; spin enters only at mapping time.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "IntegralSet",
    "FcidumpError",
    "parse_fcidump",
    "read_fcidump",
    "dump_fcidump",
    "write_fcidump",
    "freeze_core",
    "select_active_space",
    "hf_energy",
]


class FcidumpError(ValueError):
    pass


def _next_power_of_two(n):
    p = 1
    while p < n:
        p *= 2
    return p


@dataclass(frozen=True)
class IntegralSet:
    """One-/two-electron integrals over spatial orbitals (Hartree).

    ``g`` uses chemists' notation: g[p, q, r, s] = (pq|rs).  ``e_constant``
    holds nuclear repulsion plus any folded core energy.  Arrays are
    read-only; instances can be shared freely across threads.
    """

    n_spatial: int
    n_electrons: int
    h: np.ndarray
    g: np.ndarray
    e_constant: float
    orbsym: tuple = ()
    point_group_order: int = 0  # 0 = infer from orbsym labels
    ms2: int = 0

    def __post_init__(self):
        m = self.n_spatial
        h = np.ascontiguousarray(self.h, dtype=float)
        g = np.ascontiguousarray(self.g, dtype=float)
        if h.shape != (m, m):
            raise ValueError(f"h must be {m}x{m}")
        if g.shape != (m, m, m, m):
            raise ValueError(f"g must be rank-4 over {m} orbitals")
        orbsym = tuple(int(s) for s in self.orbsym) if self.orbsym else (1,) * m
        if len(orbsym) != m:
            raise ValueError("orbsym length must equal n_spatial")
        order = self.point_group_order or _next_power_of_two(max(orbsym))
        if any(not 1 <= s <= order for s in orbsym):
            raise ValueError(f"orbsym labels must lie in [1, {order}]")
        h.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "orbsym", orbsym)
        object.__setattr__(self, "point_group_order", order)

    @property
    def n_spin_orbitals(self):
        return 2 * self.n_spatial

    def validate_symmetry(self, tol=1e-10):
        """Check the h/g permutational symmetries; raises on violation."""
        if not np.allclose(self.h, self.h.T, atol=tol):
            raise ValueError("h is not symmetric")
        g = self.g
        for perm in [(1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1)]:
            if not np.allclose(g, g.transpose(perm), atol=tol):
                raise ValueError(f"g violates permutation symmetry {perm}")


# -- parsing ---------------------------------------------------------------

_EIGHTFOLD = [
    (0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2),
    (2, 3, 0, 1), (3, 2, 0, 1), (2, 3, 1, 0), (3, 2, 1, 0),
]


def _parse_header(lines):
    """Collect the namelist header into a key -> string map."""
    header_text = []
    body_start = None
    for i, line in enumerate(lines):
        stripped = line.strip()
        if i == 0 and not stripped.upper().startswith("&FCI"):
            raise FcidumpError("missing &FCI namelist header")
        cut = stripped
        if i == 0:
            cut = stripped[4:]
        end = None
        for marker in ("&END", "/END", "/"):
            idx = cut.upper().find(marker)
            if idx >= 0:
                end = idx
                break
        if end is not None:
            header_text.append(cut[:end])
            body_start = i + 1
            break
        header_text.append(cut)
    if body_start is None:
        raise FcidumpError("unterminated namelist header (no &END)")
    blob = " ".join(header_text).replace("\n", " ")
    fields = {}
    key = None
    for chunk in blob.replace(",", " , ").split():
        if chunk == ",":
            continue
        if "=" in chunk:
            key, _, val = chunk.partition("=")
            key = key.strip().upper()
            fields[key] = [v for v in val.split(",") if v] if val else []
        elif key is not None:
            fields[key].append(chunk)
    return fields, body_start


def parse_fcidump(text, drop_tol=0.0):
    """Parse FCIDUMP text into an IntegralSet.

    Indices in the body are 1-based; ``i j 0 0`` marks one-electron
    entries and ``0 0 0 0`` the constant.  Every listed integral is
    expanded to its full 8-fold (two-electron) or 2-fold (one-electron)
    permutation image.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = text.splitlines()
    if not lines:
        raise FcidumpError("empty FCIDUMP")
    fields, body_start = _parse_header(lines)
    for required in ("NORB", "NELEC"):
        if required not in fields or not fields[required]:
            raise FcidumpError(f"header missing key {required}")
    norb = int(fields["NORB"][0])
    nelec = int(fields["NELEC"][0])
    ms2 = int(fields["MS2"][0]) if fields.get("MS2") else 0
    if fields.get("ORBSYM"):
        orbsym = tuple(int(s) for s in fields["ORBSYM"])
        if len(orbsym) != norb:
            raise FcidumpError(f"ORBSYM lists {len(orbsym)} labels for NORB={norb}")
    else:
        orbsym = (1,) * norb

    h = np.zeros((norb, norb))
    g = np.zeros((norb, norb, norb, norb))
    seen_h = np.zeros((norb, norb), dtype=bool)
    seen_g = np.zeros((norb, norb, norb, norb), dtype=bool)
    e_constant = 0.0
    seen_constant = False

    for lineno, line in enumerate(lines[body_start:], body_start + 1):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 5:
            raise FcidumpError(f"line {lineno}: expected 'value i j k l'")
        try:
            value = float(parts[0].replace("D", "E").replace("d", "e"))
            i, j, k, l = (int(p) for p in parts[1:])
        except ValueError as exc:
            raise FcidumpError(f"line {lineno}: {exc}") from None
        for idx in (i, j, k, l):
            if not 0 <= idx <= norb:
                raise FcidumpError(f"line {lineno}: index {idx} outside [0, {norb}]")
        if i == j == k == l == 0:
            if seen_constant and e_constant != value:
                raise FcidumpError(f"line {lineno}: conflicting constant entries")
            e_constant = value
            seen_constant = True
        elif k == 0 and l == 0:
            if i == 0 or j == 0:
                raise FcidumpError(f"line {lineno}: malformed one-electron record")
            p, q = i - 1, j - 1
            for a, b in ((p, q), (q, p)):
                if seen_h[a, b] and h[a, b] != value:
                    raise FcidumpError(f"line {lineno}: conflicting h[{a+1},{b+1}]")
                h[a, b] = value
                seen_h[a, b] = True
        elif i and j and k and l:
            idx = (i - 1, j - 1, k - 1, l - 1)
            for perm in _EIGHTFOLD:
                key = tuple(idx[t] for t in perm)
                if seen_g[key] and g[key] != value:
                    raise FcidumpError(f"line {lineno}: conflicting g{tuple(x+1 for x in key)}")
                g[key] = value
                seen_g[key] = True
        else:
            raise FcidumpError(f"line {lineno}: malformed index pattern {i} {j} {k} {l}")

    if drop_tol:
        h[np.abs(h) < drop_tol] = 0.0
        g[np.abs(g) < drop_tol] = 0.0
    return IntegralSet(norb, nelec, h, g, e_constant, orbsym, ms2=ms2)


def read_fcidump(path):
    with open(os.fspath(path), "r") as f:
        return parse_fcidump(f.read())


def dump_fcidump(s: IntegralSet, tol=0.0):
    """Serialize to FCIDUMP text; full-precision floats so that
    parse_fcidump(dump_fcidump(s)) reproduces the arrays bit for bit."""
    m = s.n_spatial
    out = [f" &FCI NORB={m},NELEC={s.n_electrons},MS2={s.ms2},"]
    out.append("  ORBSYM=" + ",".join(str(x) for x in s.orbsym) + ",")
    out.append("  ISYM=1,")
    out.append(" &END")
    emitted = set()
    for p in range(m):
        for q in range(p + 1):
            for r in range(p + 1):
                for t in range(r + 1):
                    key = (p, q, r, t)
                    canon = min(tuple(key[i] for i in perm) for perm in _EIGHTFOLD)
                    if canon in emitted:
                        continue
                    emitted.add(canon)
                    v = float(s.g[key])
                    if abs(v) > tol:
                        out.append(f" {v!r} {p+1} {q+1} {r+1} {t+1}")
    for p in range(m):
        for q in range(p + 1):
            v = float(s.h[p, q])
            if abs(v) > tol:
                out.append(f" {v!r} {p+1} {q+1} 0 0")
    out.append(f" {float(s.e_constant)!r} 0 0 0 0")
    return "\n".join(out) + "\n"


def write_fcidump(s: IntegralSet, path, tol=0.0):
    with open(os.fspath(path), "w") as f:
        f.write(dump_fcidump(s, tol=tol))


# -- reductions --------------------------------------------------------------


def freeze_core(s: IntegralSet, n_frozen):
    """Fold the first n_frozen (doubly occupied) orbitals into an effective
    one-body term and constant energy."""
    if n_frozen == 0:
        return s
    if n_frozen < 0 or n_frozen >= s.n_spatial:
        raise ValueError(f"cannot freeze {n_frozen} of {s.n_spatial} orbitals")
    if 2 * n_frozen > s.n_electrons:
        raise ValueError(
            f"cannot freeze {n_frozen} orbitals with only {s.n_electrons} electrons"
        )
    core = range(n_frozen)
    act = slice(n_frozen, s.n_spatial)
    g = s.g
    # h'_pq = h_pq + sum_i [2(pq|ii) - (pi|iq)]
    h_eff = s.h[act, act].copy()
    for i in core:
        h_eff += 2.0 * g[act, act, i, i] - g[act, i, i, act]
    e_core = 0.0
    for i in core:
        e_core += 2.0 * s.h[i, i]
        for j in core:
            e_core += 2.0 * g[i, i, j, j] - g[i, j, j, i]
    return IntegralSet(
        s.n_spatial - n_frozen,
        s.n_electrons - 2 * n_frozen,
        h_eff,
        g[act, act, act, act].copy(),
        s.e_constant + e_core,
        s.orbsym[n_frozen:],
        point_group_order=s.point_group_order,
        ms2=s.ms2,
    )


def select_active_space(s: IntegralSet, n_active_electrons, n_active_spatial):
    """Restrict to a HOMO-LUMO window: fold orbitals below it, drop those
    above.  The window starts at n_occ - n_active_electrons/2."""
    if n_active_electrons % 2:
        raise ValueError("active electron count must be even (closed shell)")
    if s.n_electrons % 2:
        raise ValueError("closed-shell integrals required")
    n_occ = s.n_electrons // 2
    lo = n_occ - n_active_electrons // 2
    hi = lo + n_active_spatial
    if lo < 0 or hi > s.n_spatial or n_active_spatial <= 0:
        raise ValueError(
            f"active window [{lo}, {hi}) outside orbital range [0, {s.n_spatial})"
        )
    if hi < n_occ:
        raise ValueError("active window drops occupied orbitals")
    folded = freeze_core(s, lo)
    keep = slice(0, n_active_spatial)
    return IntegralSet(
        n_active_spatial,
        n_active_electrons,
        folded.h[keep, keep].copy(),
        folded.g[keep, keep, keep, keep].copy(),
        folded.e_constant,
        folded.orbsym[:n_active_spatial],
        point_group_order=s.point_group_order,
        ms2=s.ms2,
    )


def hf_energy(s: IntegralSet):
    """Closed-shell HF total energy assembled directly from the integrals."""
    n_occ = s.n_electrons // 2
    if s.n_electrons % 2:
        raise ValueError("closed-shell integrals required")
    occ = slice(0, n_occ)
    e = s.e_constant + 2.0 * np.trace(s.h[occ, occ])
    coul = np.einsum("iijj->", s.g[occ, occ, occ, occ])
    exch = np.einsum("ijji->", s.g[occ, occ, occ, occ])
    return float(e + 2.0 * coul - exch)
