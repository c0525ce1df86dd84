"""Exact small-instance maximum DNA code sizes and bound-relation checks.

A-family quantities: the maximum size of a length-n code over {A,C,G,T}
with minimum distance d under the chosen metric, optionally with constant
GC weight w and optionally closed under reverse (variant 'r') or
reverse-complement ('rc').  Values come from an exact maximum-clique search
on the conflict graph; instances above the vertex budget either raise or
fall back to a greedy lower bound plus a coloring upper bound (status
'gap').  Relation checks between neighbouring keys are emitted as PASS /
FAIL / FINDING entries, never asserted.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .clique import coloring_bound, greedy_clique, max_weight_clique
from .metrics import UNIT, CostModel, edit_distance
from .z4 import DnaStrand, WC_COMPLEMENT, gc_weight_strand

__version_tag__ = "dnalex-0.1.0"

METRICS = ("hamming", "edit")
VARIANTS = ("plain", "r", "rc")


class BudgetExceeded(RuntimeError):
    """Instance too large for the exact search and no gap fallback requested."""


@dataclass(frozen=True)
class BoundKey:
    n: int
    d: int
    w: int | None  # None = unconstrained GC weight
    metric: str = "edit"
    variant: str = "plain"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 <= self.d <= self.n:
            raise ValueError("need 0 <= d <= n")
        if self.w is not None and not 0 <= self.w <= self.n:
            raise ValueError("need 0 <= w <= n")
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")

    def label(self) -> str:
        w = "any" if self.w is None else str(self.w)
        return f"A4_{self.variant}_{self.metric}_n{self.n}_d{self.d}_w{w}"


@dataclass
class BoundRecord:
    key: BoundKey
    lower: int
    upper: int
    witness: tuple[str, ...]
    method: str
    status: str  # 'exact' or 'gap'
    notes: tuple[str, ...] = ()

    def value(self) -> int:
        if self.status != "exact":
            raise ValueError(f"{self.key.label()} has no exact value (gap record)")
        return self.lower

    def to_json_dict(self) -> dict:
        return {
            "n": self.key.n,
            "d": self.key.d,
            "w": self.key.w,
            "metric": self.key.metric,
            "variant": self.key.variant,
            "lower": self.lower,
            "upper": self.upper,
            "status": self.status,
            "witness": list(self.witness),
            "method": self.method,
            "notes": list(self.notes),
            "tool_version": __version_tag__,
        }


def constant_gc_universe(n: int, w: int) -> list[DnaStrand]:
    """All strands of length n with exactly w symbols in {G,C}, lex order.

    Size is C(n,w) * 2^n: choose the GC positions, then two letters per
    GC slot and two per AT slot.
    """
    if not 0 <= w <= n:
        raise ValueError("need 0 <= w <= n")
    out = []
    for strand in itertools.product("ACGT", repeat=n):
        if sum(1 for ch in strand if ch in "GC") == w:
            out.append(DnaStrand("".join(strand)))
    return out


def universe_size(n: int, w: int | None) -> int:
    if w is None:
        return 4 ** n
    return math.comb(n, w) * 2 ** n


def full_universe(n: int) -> list[DnaStrand]:
    return [DnaStrand("".join(p)) for p in itertools.product("ACGT", repeat=n)]


def _universe_strings(n: int, w: int | None) -> list[str]:
    if w is None:
        return ["".join(p) for p in itertools.product("ACGT", repeat=n)]
    return [str(s) for s in constant_gc_universe(n, w)]


def hamming_str(a: str, b: str) -> int:
    if len(a) != len(b):
        raise ValueError("hamming distance needs equal lengths")
    return sum(1 for x, y in zip(a, b) if x != y)


def _distance_fn(metric: str, cm: CostModel):
    if metric == "hamming":
        return hamming_str
    return lambda a, b: edit_distance(a, b, cm)


def reverse_str(s: str) -> str:
    return s[::-1]


def reverse_complement_str(s: str) -> str:
    return "".join(WC_COMPLEMENT[ch] for ch in reversed(s))


def complement_str(s: str) -> str:
    return "".join(WC_COMPLEMENT[ch] for ch in s)


_ORBIT_MAP = {"r": reverse_str, "rc": reverse_complement_str}


@lru_cache(maxsize=None)
def _cached_matrix(n: int, w: int | None, metric: str) -> tuple[tuple[str, ...], tuple[tuple[int, ...], ...]]:
    """(universe, symmetric distance matrix) under the UNIT cost model."""
    univ = _universe_strings(n, w)
    dist = _distance_fn(metric, UNIT)
    m = len(univ)
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            rows[i][j] = rows[j][i] = dist(univ[i], univ[j])
    return tuple(univ), tuple(tuple(r) for r in rows)


def exact_max_code(
    key: BoundKey,
    cm: CostModel = UNIT,
    budget: int = 2000,
    allow_gap: bool = False,
) -> BoundRecord:
    """Maximum code size for the key, with a maximum-size witness.

    Exact (branch-and-bound max clique on the conflict graph) while the
    universe is at most `budget` strands; above that either raises
    BudgetExceeded or, with allow_gap, returns a greedy lower bound and a
    coloring upper bound with status 'gap'.
    """
    size = universe_size(key.n, key.w)
    if size > budget and not allow_gap:
        raise BudgetExceeded(
            f"universe for {key.label()} has {size} strands (budget {budget}); "
            f"pass allow_gap to get lower/upper bounds instead"
        )

    use_cache = cm.is_unit()
    if use_cache:
        univ, matrix = _cached_matrix(key.n, key.w, key.metric)
        dist = lambda i, j: matrix[i][j]
    else:
        univ = tuple(_universe_strings(key.n, key.w))
        fn = _distance_fn(key.metric, cm)
        dist = lambda i, j: fn(univ[i], univ[j])

    notes = []
    if key.variant == "plain":
        vertices = [(s,) for s in univ]
    else:
        orbit_of = _ORBIT_MAP[key.variant]
        uset = set(univ)
        seen = set()
        vertices = []
        for s in univ:
            if s in seen:
                continue
            t = orbit_of(s)
            orbit = (s,) if t == s else tuple(sorted((s, t)))
            if t != s and t not in uset:
                # closure partner leaves the universe (cannot happen for the
                # reverse/RC maps on constant-GC universes, kept as a guard)
                seen.add(s)
                continue
            seen.update(orbit)
            vertices.append(orbit)

    index = {s: i for i, s in enumerate(univ)}

    def orbit_ok(orbit) -> bool:
        for a, b in itertools.combinations(orbit, 2):
            if dist(index[a], index[b]) < key.d:
                return False
        return True

    vertices = [o for o in vertices if orbit_ok(o)]
    weights = [len(o) for o in vertices]
    m = len(vertices)

    if key.d <= 1 and (key.metric == "hamming" or cm.is_unit()):
        # distinct strands always have distance >= 1 under hamming or unit
        # costs, so every viable orbit is pairwise compatible
        witness = tuple(sorted(s for o in vertices for s in o))
        total = sum(weights)
        record = BoundRecord(key, total, total, witness, "trivial", "exact",
                             tuple(notes))
        _validate_witness(record, cm)
        return record

    def compatible(o1, o2) -> bool:
        for a in o1:
            for b in o2:
                if dist(index[a], index[b]) < key.d:
                    return False
        return True

    neighbors = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if compatible(vertices[i], vertices[j]):
                neighbors[i] |= 1 << j
                neighbors[j] |= 1 << i

    if size > budget:
        lo_w, lo_members = greedy_clique(neighbors, weights)
        up = coloring_bound(neighbors, weights)
        witness = tuple(sorted(s for v in lo_members for s in vertices[v]))
        notes.append(f"universe {size} over budget {budget}")
        record = BoundRecord(key, lo_w, up, witness, "greedy+coloring", "gap",
                             tuple(notes))
        _validate_witness(record, cm)
        return record

    best_w, members = max_weight_clique(neighbors, weights)
    witness = tuple(sorted(s for v in members for s in vertices[v]))
    record = BoundRecord(key, best_w, best_w, witness, "exhaustive-clique",
                         "exact", tuple(notes))
    _validate_witness(record, cm)
    return record


def _validate_witness(record: BoundRecord, cm: CostModel) -> None:
    # full pairwise re-verification is quadratic; for big d<=1 universes the
    # structural checks suffice (distinctness covers the distance bound)
    check_pairs = len(record.witness) <= 512
    violations = verify_code_against_key(record.witness, record.key, cm,
                                         check_pairs=check_pairs)
    if violations:
        raise AssertionError(
            f"internal error: witness for {record.key.label()} fails "
            f"verification: {violations[:3]}"
        )


def verify_code_against_key(strands, key: BoundKey, cm: CostModel = UNIT,
                            check_pairs: bool = True) -> list[str]:
    """Independent witness checker: direct pairwise loops, no clique logic.

    Returns human-readable violation strings (empty list = clean).
    """
    strands = sorted(str(s) for s in strands)
    out = []
    dist = _distance_fn(key.metric, cm)
    sset = set(strands)
    if len(sset) != len(strands):
        out.append("duplicate strands in witness")
    for s in strands:
        if len(s) != key.n:
            out.append(f"{s}: wrong length")
        if key.w is not None and gc_weight_strand(s) != key.w:
            out.append(f"{s}: GC weight {gc_weight_strand(s)} != {key.w}")
    if key.variant == "r":
        for s in strands:
            if reverse_str(s) not in sset:
                out.append(f"{s}: reverse not in code")
    elif key.variant == "rc":
        for s in strands:
            if reverse_complement_str(s) not in sset:
                out.append(f"{s}: reverse-complement not in code")
    if check_pairs:
        for a, b in itertools.combinations(strands, 2):
            if dist(a, b) < key.d:
                out.append(f"d({a},{b}) = {dist(a, b)} < {key.d}")
    return out


def a2(n: int, d: int, metric: str = "hamming", budget: int = 4096) -> int:
    """Maximum binary code size at minimum distance d under the metric.

    Computed over the two-letter alphabet {0,1} with the same exact clique
    search; this is an independent computation path from the GC-weight-0
    DNA universe (which uses letters {A,T}).
    """
    univ = ["".join(p) for p in itertools.product("01", repeat=n)]
    if len(univ) > budget:
        raise BudgetExceeded(f"binary universe 2^{n} over budget {budget}")
    if d <= 1:
        return len(univ)
    dist = _distance_fn(metric, UNIT)
    m = len(univ)
    neighbors = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if dist(univ[i], univ[j]) >= d:
                neighbors[i] |= 1 << j
                neighbors[j] |= 1 << i
    best, _ = max_weight_clique(neighbors)
    return best


# ---------------------------------------------------------------------------
# constructive transformations


class PunctureError(ValueError):
    pass


@dataclass
class PunctureReport:
    strands: tuple[str, ...]
    dropped_positions: tuple[int, ...]
    min_distance_before: float
    min_distance_after: float
    metric: str


def gc_preserving_puncture(strands, policy: str = "first-at", metric: str = "edit",
                           cm: CostModel = UNIT) -> PunctureReport:
    """Drop one A/T position from each strand, preserving its GC weight.

    policy 'first-at' removes each strand's first A/T symbol, 'last-at' the
    last.  A strand with no A/T position (all-GC) makes the construction
    impossible and raises PunctureError.
    """
    if policy not in ("first-at", "last-at"):
        raise ValueError(f"unknown policy {policy!r}")
    strands = [str(s) for s in strands]
    out = []
    dropped = []
    for s in strands:
        positions = [i for i, ch in enumerate(s) if ch in "AT"]
        if not positions:
            raise PunctureError(
                f"{s}: no A/T position to drop; GC weight cannot be preserved"
            )
        pos = positions[0] if policy == "first-at" else positions[-1]
        dropped.append(pos)
        out.append(s[:pos] + s[pos + 1:])
    dist = _distance_fn(metric, cm)
    before = _min_pairwise(strands, dist)
    after = _min_pairwise(out, dist)
    return PunctureReport(tuple(out), tuple(dropped), before, after, metric)


def _min_pairwise(strands, dist) -> float:
    items = sorted(set(strands))
    if len(items) < 2:
        return math.inf
    return min(dist(a, b) for a, b in itertools.combinations(items, 2))


@dataclass
class PartitionReport:
    subsets: dict
    largest_symbol: str
    largest: tuple[str, ...]
    shortened: tuple[str, ...]
    min_distance_original: float
    min_distance_shortened: float
    metric: str


def partition_by_first_symbol(strands, metric: str = "edit",
                              cm: CostModel = UNIT) -> PartitionReport:
    """Partition by first symbol; shorten the largest class by dropping it.

    By pigeonhole the largest class has at least |code|/4 strands; the
    shortened class's minimum distance is measured and reported (it cannot
    decrease under Hamming; under edit it is an empirical observation).
    """
    strands = [str(s) for s in strands]
    if not strands:
        raise ValueError("empty code")
    subsets: dict[str, list[str]] = {}
    for s in strands:
        subsets.setdefault(s[0], []).append(s)
    largest_symbol = max(sorted(subsets), key=lambda k: len(subsets[k]))
    largest = tuple(sorted(subsets[largest_symbol]))
    shortened = tuple(s[1:] for s in largest)
    dist = _distance_fn(metric, cm)
    return PartitionReport(
        subsets={k: tuple(sorted(v)) for k, v in sorted(subsets.items())},
        largest_symbol=largest_symbol,
        largest=largest,
        shortened=shortened,
        min_distance_original=_min_pairwise(strands, dist),
        min_distance_shortened=_min_pairwise(shortened, dist),
        metric=metric,
    )


def half_complement_transform(strand) -> str:
    """Complement the first floor(n/2) symbols (even n) or (n-1)/2 (odd n).

    Complementation maps G<->C and A<->T, so the GC weight is always
    preserved.  Pairwise distances are a subject of measurement, not an
    assumption.
    """
    s = str(strand)
    k = len(s) // 2 if len(s) % 2 == 0 else (len(s) - 1) // 2
    return complement_str(s[:k]) + s[k:]


@dataclass
class HalfComplementStats:
    n: int
    pairs: int
    gc_preserved: int
    edit_preserved: int
    edit_violations: list
    cross_identity_pairs: int
    cross_identity_holds: int
    cross_within_one: int


def half_complement_experiment(n: int, pairs, cm: CostModel = UNIT,
                               violation_cap: int = 4) -> HalfComplementStats:
    """Measure what the half-complement transform preserves on strand pairs.

    For each (x_i, x_j): GC weights of both transforms, pairwise edit
    distance d(x_i, x_j) vs d(y_i, y_j), and the cross quantity
    d(x_i, reverse(x_j)) vs d(y_i, reverse_complement(y_j)).
    """
    gc_ok = edit_ok = cross_eq = cross_one = total = 0
    violations = []
    for a, b in pairs:
        a, b = str(a), str(b)
        ya, yb = half_complement_transform(a), half_complement_transform(b)
        total += 1
        if gc_weight_strand(a) == gc_weight_strand(ya) and \
                gc_weight_strand(b) == gc_weight_strand(yb):
            gc_ok += 1
        d_before = edit_distance(a, b, cm)
        d_after = edit_distance(ya, yb, cm)
        if d_before == d_after:
            edit_ok += 1
        elif len(violations) < violation_cap:
            violations.append((a, b, d_before, d_after))
        lhs = edit_distance(a, reverse_str(b), cm)
        rhs = edit_distance(ya, reverse_complement_str(yb), cm)
        if lhs == rhs:
            cross_eq += 1
        if abs(lhs - rhs) <= 1:
            cross_one += 1
    return HalfComplementStats(
        n=n, pairs=total, gc_preserved=gc_ok, edit_preserved=edit_ok,
        edit_violations=violations, cross_identity_pairs=total,
        cross_identity_holds=cross_eq, cross_within_one=cross_one,
    )


# ---------------------------------------------------------------------------
# relation checks


@dataclass
class RelationCheck:
    relation: str
    params: dict
    lhs: int
    rhs: float
    ok: bool
    kind: str  # PASS / FAIL / FINDING
    note: str = ""

    def line(self) -> str:
        p = " ".join(f"{k}={v}" for k, v in self.params.items())
        base = f"{self.kind}: {self.relation} [{p}] lhs={self.lhs} rhs={self.rhs}"
        return base + (f" ({self.note})" if self.note else "")


@dataclass
class RelationReport:
    entries: list[RelationCheck] = field(default_factory=list)

    def findings(self):
        return [e for e in self.entries if e.kind == "FINDING"]

    def failures(self):
        return [e for e in self.entries if e.kind == "FAIL"]

    def passes(self):
        return [e for e in self.entries if e.kind == "PASS"]

    def lines(self):
        return [e.line() for e in self.entries]


class _Solver:
    """Memoised exact values during a relation sweep."""

    def __init__(self, budget: int = 2000):
        self.budget = budget
        self.cache: dict[BoundKey, int] = {}
        self.records: list[BoundRecord] = []

    def value(self, key: BoundKey) -> int:
        if key not in self.cache:
            rec = exact_max_code(key, budget=self.budget)
            self.cache[key] = rec.value()
            self.records.append(rec)
        return self.cache[key]


def check_relations(n_max: int = 4, metrics=METRICS, budget: int = 2000,
                    include_closure_experiments: bool = True) -> RelationReport:
    """Verify the bound relations on every exactly computable key up to n_max.

    PASS/FAIL entries cover the binary-equality, weight-symmetry,
    puncture and partition inequalities and the reverse-variant
    inequalities.  The half-weight equality (claimed value 4) and the
    reverse / reverse-complement equalities are hypotheses under test:
    mismatches are reported as FINDING entries with the computed values.
    """
    report = RelationReport()
    solver = _Solver(budget)

    for metric in metrics:
        # binary equality at GC weight 0
        for n in range(1, n_max + 1):
            for d in range(1, n + 1):
                lhs = solver.value(BoundKey(n, d, 0, metric, "plain"))
                rhs = a2(n, d, metric)
                ok = lhs == rhs
                report.entries.append(RelationCheck(
                    "eq1-binary", {"n": n, "d": d, "metric": metric}, lhs, rhs,
                    ok, "PASS" if ok else "FAIL",
                    "GC-weight-0 universe uses letters {A,T}, not {0,1}"))
        # weight symmetry w <-> n-w
        for n in range(1, n_max + 1):
            for d in range(1, n + 1):
                for w in range(0, n // 2 + 1):
                    lhs = solver.value(BoundKey(n, d, w, metric, "plain"))
                    rhs = solver.value(BoundKey(n, d, n - w, metric, "plain"))
                    ok = lhs == rhs
                    report.entries.append(RelationCheck(
                        "eq2-symmetry", {"n": n, "d": d, "w": w, "metric": metric},
                        lhs, rhs, ok, "PASS" if ok else "FAIL"))
        # half-weight claim: value 4 whenever w = n/2 (hypothesis under test)
        for n in range(2, n_max + 1, 2):
            for d in range(1, n + 1):
                lhs = solver.value(BoundKey(n, d, n // 2, metric, "plain"))
                ok = lhs == 4
                report.entries.append(RelationCheck(
                    "eq3-halfweight", {"n": n, "d": d, "w": n // 2,
                                       "metric": metric}, lhs, 4, ok,
                    "PASS" if ok else "FINDING",
                    "claimed constant 4 disagrees with the computed value"
                    if not ok else ""))
        # puncture inequality A(n,d,w) >= A(n+1,d+1,w)
        for n in range(1, n_max):
            for d in range(1, n + 1):
                for w in range(0, n + 1):
                    lhs = solver.value(BoundKey(n, d, w, metric, "plain"))
                    rhs = solver.value(BoundKey(n + 1, d + 1, w, metric, "plain"))
                    ok = lhs >= rhs
                    report.entries.append(RelationCheck(
                        "eq4-puncture", {"n": n, "d": d, "w": w, "metric": metric},
                        lhs, rhs, ok, "PASS" if ok else "FAIL"))
        # partition inequality A(n,d,w) >= A(n+1,d,w)/4
        for n in range(1, n_max):
            for d in range(1, n + 1):
                for w in range(0, n + 1):
                    lhs = solver.value(BoundKey(n, d, w, metric, "plain"))
                    rhs = solver.value(BoundKey(n + 1, d, w, metric, "plain")) / 4
                    ok = lhs >= rhs
                    report.entries.append(RelationCheck(
                        "eq5-partition", {"n": n, "d": d, "w": w, "metric": metric},
                        lhs, rhs, ok, "PASS" if ok else "FAIL"))
        # reverse-variant inequalities
        for n in range(2, n_max + 1):
            for d in range(1, n):
                for w in range(0, n):
                    mid = solver.value(BoundKey(n, d, w, metric, "r"))
                    left = solver.value(BoundKey(n - 1, d, w, metric, "r"))
                    right = (universe_size(n, w) if d - 1 == 0 else
                             solver.value(BoundKey(n, d - 1, w, metric, "r")))
                    ok = left <= mid <= right
                    report.entries.append(RelationCheck(
                        "eq6-reverse-sandwich",
                        {"n": n, "d": d, "w": w, "metric": metric},
                        mid, right, ok, "PASS" if ok else "FAIL",
                        f"lower side {left}"))
                    ok7 = left >= mid / 4
                    report.entries.append(RelationCheck(
                        "eq7-reverse-quarter",
                        {"n": n, "d": d, "w": w, "metric": metric},
                        left, mid / 4, ok7, "PASS" if ok7 else "FAIL"))
        if include_closure_experiments:
            # reverse vs reverse-complement closure (hypotheses under test)
            for n in range(2, n_max + 1):
                for d in range(1, n + 1):
                    for w in range(0, n + 1):
                        rc = solver.value(BoundKey(n, d, w, metric, "rc"))
                        r = solver.value(BoundKey(n, d, w, metric, "r"))
                        if n % 2 == 0:
                            ok = rc == r
                            report.entries.append(RelationCheck(
                                "closure-even-identity",
                                {"n": n, "d": d, "w": w, "metric": metric},
                                rc, r, ok, "PASS" if ok else "FINDING",
                                "even-length R/RC equality fails here"
                                if not ok else ""))
                        else:
                            lo = (solver.value(BoundKey(n, d + 1, w, metric, "r"))
                                  if d + 1 <= n else 0)
                            hi_dm1 = (universe_size(n, w) if d - 1 == 0 else
                                      solver.value(BoundKey(n, d - 1, w, metric, "r")))
                            ok_low = lo <= rc
                            ok_dm1 = rc <= hi_dm1
                            ok_d = rc <= r
                            note = (f"upper readings: d-1 {'holds' if ok_dm1 else 'fails'}, "
                                    f"d {'holds' if ok_d else 'fails'}")
                            ok = ok_low and ok_dm1
                            report.entries.append(RelationCheck(
                                "closure-odd-sandwich",
                                {"n": n, "d": d, "w": w, "metric": metric},
                                rc, hi_dm1, ok, "PASS" if ok else "FINDING", note))
    return report


# ---------------------------------------------------------------------------
# persistence


def save_record(directory, record: BoundRecord) -> str:
    """One JSON document per key; payload bytes are run-independent."""
    import os

    path = os.path.join(str(directory), record.key.label() + ".json")
    with open(path, "w") as fh:
        json.dump(record.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def load_record(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def render_bounds_table(records) -> str:
    """Text grid per (metric, variant, w): rows n, columns d."""
    groups: dict[tuple, dict[tuple[int, int], BoundRecord]] = {}
    for rec in records:
        k = (rec.key.metric, rec.key.variant, rec.key.w)
        groups.setdefault(k, {})[(rec.key.n, rec.key.d)] = rec
    blocks = []
    for (metric, variant, w) in sorted(groups, key=str):
        cells = groups[(metric, variant, w)]
        ns = sorted({n for n, _ in cells})
        ds = sorted({d for _, d in cells})
        head = f"metric={metric} variant={variant} w={'any' if w is None else w}"
        lines = [head, "n\\d " + " ".join(f"{d:>6}" for d in ds)]
        for n in ns:
            row = [f"{n:<4}"]
            for d in ds:
                rec = cells.get((n, d))
                if rec is None:
                    row.append(f"{'-':>6}")
                elif rec.status == "exact":
                    row.append(f"{rec.lower:>6}")
                else:
                    row.append(f"{rec.lower}..{rec.upper:>2}")
            lines.append(" ".join(row))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
