"""Exact maximum-weight clique via branch and bound with coloring bounds.

Vertices are 0..m-1 with adjacency given as python-int bitmasks, weights as
positive integers.  The search is single-threaded and fully deterministic:
branches are explored in a fixed order derived from greedy coloring, and the
incumbent is only replaced on a strictly better weight, so the reported
witness is reproducible.
"""

from __future__ import annotations


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def greedy_clique(neighbors: list[int], weights: list[int], order=None):
    """Greedy lower bound: scan vertices in order, keep mutually adjacent ones."""
    if order is None:
        order = range(len(neighbors))
    kept: list[int] = []
    mask = 0
    for v in order:
        if all(neighbors[v] >> u & 1 for u in kept):
            kept.append(v)
            mask |= 1 << v
    return sum(weights[v] for v in kept), kept


def coloring_bound(neighbors: list[int], weights: list[int], cand: int | None = None):
    """Greedy-coloring upper bound: sum over color classes of the class's
    maximum weight."""
    if cand is None:
        cand = (1 << len(neighbors)) - 1
    classes: list[tuple[int, int]] = []  # (class mask, class max weight)
    for v in _bits(cand):
        for idx, (cmask, cmax) in enumerate(classes):
            if not neighbors[v] & cmask:
                classes[idx] = (cmask | 1 << v, max(cmax, weights[v]))
                break
        else:
            classes.append((1 << v, weights[v]))
    return sum(cmax for _, cmax in classes)


def max_weight_clique(neighbors: list[int], weights: list[int] | None = None):
    """Exact maximum-weight clique; returns (best weight, sorted members)."""
    m = len(neighbors)
    if weights is None:
        weights = [1] * m
    if m == 0:
        return 0, []

    best_w = 0
    best_set: list[int] = []

    def expand(members: list[int], cur_w: int, cand: int):
        nonlocal best_w, best_set
        if not cand:
            if cur_w > best_w:
                best_w = cur_w
                best_set = list(members)
            return
        # greedy coloring of the candidate set, in ascending vertex order
        classes: list[tuple[int, int]] = []
        color_of: dict[int, int] = {}
        for v in _bits(cand):
            for idx, (cmask, cmax) in enumerate(classes):
                if not neighbors[v] & cmask:
                    classes[idx] = (cmask | 1 << v, max(cmax, weights[v]))
                    color_of[v] = idx
                    break
            else:
                color_of[v] = len(classes)
                classes.append((1 << v, weights[v]))
        cum = []
        run = 0
        for _, cmax in classes:
            run += cmax
            cum.append(run)
        # branch on vertices in descending (color, index) order; the bound
        # is monotone along that order so the first prune ends the loop
        ordered = sorted(color_of, key=lambda v: (color_of[v], v))
        rest = cand
        for v in reversed(ordered):
            if cur_w + cum[color_of[v]] <= best_w:
                return
            rest &= ~(1 << v)
            members.append(v)
            expand(members, cur_w + weights[v], rest & neighbors[v])
            members.pop()

    expand([], 0, (1 << m) - 1)
    return best_w, sorted(best_set)
