"""Partition Pauli terms into simultaneously measurable groups.

Two deterministic strategies:

* "coloring" (default): greedy sequential coloring in descending conflict-
  degree order with best-fit placement, refined by iterated-greedy rounds
  (reinsert terms class by class under rotating class orders; the group
  count never increases).  Reproduces published molecular-Hamiltonian
  circuit counts that plain insertion-order greedy misses by 30-60%.
* "sorted": single greedy sweep over terms sorted by descending
  |coefficient|, first compatible group wins.

The identity term is excluded; it is a measurement-free constant.
"""

from __future__ import annotations

import numpy as np

from .pauli import PauliSum

__all__ = ["group_qubit_wise", "group_general", "group_terms"]

DEFAULT_REFINE_ROUNDS = 60


def _sorted_terms(h: PauliSum):
    terms = [(p, c) for p, c in h.items() if not p.is_identity()]
    terms.sort(key=lambda pc: (-abs(pc[1]), pc[0].x_mask, pc[0].z_mask))
    return [p for p, _ in terms]


def _mask_arrays(terms):
    x = np.array([p.x_mask for p in terms], dtype=np.uint64)
    z = np.array([p.z_mask for p in terms], dtype=np.uint64)
    return x, z, x | z


def _qwc_conflict_row(x, z, n_mask, xs, zs, ns):
    return (n_mask & ns) & ((x ^ xs) | (z ^ zs))


def _general_anticommute_row(x, z, xs, zs):
    return (np.bitwise_count(x & zs) + np.bitwise_count(z & xs)) % np.uint64(2) == 1


def _degree_order(xs, zs, ns, qubit_wise):
    n = xs.size
    deg = np.zeros(n, dtype=np.int64)
    for i in range(n):
        if qubit_wise:
            conf = _qwc_conflict_row(xs[i], zs[i], ns[i], xs, zs, ns) != 0
        else:
            conf = _general_anticommute_row(xs[i], zs[i], xs, zs)
        deg[i] = int(np.count_nonzero(conf))
    return np.lexsort((np.arange(n), -deg))


def _qwc_assign(xs, zs, ns, order, best_fit):
    """Template-based greedy sweep; returns per-term group indices."""
    n = xs.size
    gx = np.zeros(n, dtype=np.uint64)
    gz = np.zeros(n, dtype=np.uint64)
    gn = np.zeros(n, dtype=np.uint64)
    assign = np.empty(n, dtype=np.int64)
    k = 0
    for v in order:
        x, z, nm = xs[v], zs[v], ns[v]
        conflict = _qwc_conflict_row(x, z, nm, gx[:k], gz[:k], gn[:k])
        fits = np.nonzero(conflict == 0)[0]
        if fits.size:
            if best_fit:
                g = int(fits[np.argmax(np.bitwise_count(gn[fits] & nm))])
            else:
                g = int(fits[0])
        else:
            g = k
            k += 1
        assign[v] = g
        gx[g] |= x
        gz[g] |= z
        gn[g] = gx[g] | gz[g]
    return assign, k


def _refined_qwc_assign(xs, zs, ns, rounds):
    n = xs.size
    order = _degree_order(xs, zs, ns, qubit_wise=True)
    assign, k = _qwc_assign(xs, zs, ns, order, best_fit=True)
    best_assign, best_k = assign, k
    rules = ("largest", "reverse", "smallest", "same")
    for round_idx in range(rounds):
        sizes = np.bincount(assign, minlength=k)
        rule = rules[round_idx % len(rules)]
        if rule == "largest":
            class_rank = np.argsort(-sizes, kind="stable")
        elif rule == "smallest":
            class_rank = np.argsort(sizes, kind="stable")
        elif rule == "reverse":
            class_rank = np.arange(k)[::-1]
        else:
            class_rank = np.arange(k)
        rank_of = np.empty(k, dtype=np.int64)
        rank_of[class_rank] = np.arange(k)
        order = np.lexsort((np.arange(n), rank_of[assign]))
        assign, k = _qwc_assign(xs, zs, ns, order, best_fit=False)
        if k < best_k:
            best_assign, best_k = assign, k
    return best_assign, best_k


def _groups_from_assignment(terms, assign, k):
    groups = [[] for _ in range(k)]
    for idx, g in enumerate(assign):
        groups[g].append(terms[idx])
    return groups


def group_qubit_wise(h: PauliSum, strategy="coloring", refine_rounds=DEFAULT_REFINE_ROUNDS):
    """Groups whose members pairwise qubit-wise commute.

    Group/template equivalence: a term is compatible with a group iff it
    agrees with the union of member masks wherever both act, which matches
    pairwise qubit-wise commutation with every member.
    """
    terms = _sorted_terms(h)
    if not terms:
        return []
    xs, zs, ns = _mask_arrays(terms)
    if strategy == "sorted":
        assign, k = _qwc_assign(xs, zs, ns, np.arange(len(terms)), best_fit=False)
    elif strategy == "coloring":
        assign, k = _refined_qwc_assign(xs, zs, ns, refine_rounds)
    else:
        raise ValueError(f"unknown grouping strategy {strategy!r}")
    return _groups_from_assignment(terms, assign, k)


def _general_assign(xs, zs, order):
    n = xs.size
    mx = np.zeros(n, dtype=np.uint64)
    mz = np.zeros(n, dtype=np.uint64)
    member_group = np.zeros(n, dtype=np.int64)
    assign = np.empty(n, dtype=np.int64)
    placed = 0
    k = 0
    for v in order:
        x, z = xs[v], zs[v]
        anti = _general_anticommute_row(x, z, mx[:placed], mz[:placed])
        blocked = np.zeros(k + 1, dtype=bool)
        if placed:
            blocked[member_group[:placed][anti]] = True
        free = np.nonzero(~blocked[:k])[0]
        if free.size:
            g = int(free[0])
        else:
            g = k
            k += 1
        assign[v] = g
        mx[placed] = x
        mz[placed] = z
        member_group[placed] = g
        placed += 1
    return assign, k


def group_general(h: PauliSum, strategy="coloring"):
    """Groups whose members pairwise commute in the general sense.

    Falls back to the qubit-wise partition in the (rare) event the greedy
    produces more groups than qubit-wise grouping would: any qubit-wise
    partition is also valid under general commutativity.
    """
    terms = _sorted_terms(h)
    if not terms:
        return []
    xs, zs, ns = _mask_arrays(terms)
    if strategy == "sorted":
        order = np.arange(len(terms))
    elif strategy == "coloring":
        order = _degree_order(xs, zs, ns, qubit_wise=False)
    else:
        raise ValueError(f"unknown grouping strategy {strategy!r}")
    assign, k = _general_assign(xs, zs, order)
    qwc = group_qubit_wise(h, strategy=strategy)
    if k > len(qwc):
        return qwc
    return _groups_from_assignment(terms, assign, k)


def group_terms(h: PauliSum, mode="qubitwise", strategy="coloring"):
    if mode == "qubitwise":
        return group_qubit_wise(h, strategy=strategy)
    if mode == "general":
        return group_general(h, strategy=strategy)
    raise ValueError(f"unknown grouping mode {mode!r}")
