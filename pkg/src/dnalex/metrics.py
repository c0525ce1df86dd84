"""String edit distance with configurable primitive costs, plus set-level minima.

The distance is the usual dynamic program over substitution, deletion and
insertion costs.  With the default UNIT model (substitutions 0/1, indels 1)
this is the Levenshtein distance.  Integer cost tables keep every arithmetic
step exact, so threshold comparisons in selection predicates are exact too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .z4 import Z4Vector, DnaStrand, hamming_distance

DNA_ALPHABET = "ACGT"


def _symbols(s) -> str:
    """Accept str, DnaStrand or Z4Vector; compare symbol-wise as text."""
    if isinstance(s, (DnaStrand, Z4Vector)):
        return str(s)
    return s


class CostModel:
    """The cost triple for edit operations: substitution, deletion, insertion.

    `substitution` maps symbol pairs to costs, `deletion`/`insertion` map
    single symbols.  A None table means unit behaviour (0 for equal symbols,
    1 otherwise / 1 per indel).  Models whose single-symbol costs are
    symmetric with zero diagonal, have deletion(a) == insertion(a), and
    satisfy the one-symbol triangle property are flagged metric; set-level
    distance claims for non-metric models are reported, not asserted.
    """

    def __init__(
        self,
        substitution: Mapping[tuple[str, str], float] | None = None,
        deletion: Mapping[str, float] | None = None,
        insertion: Mapping[str, float] | None = None,
        name: str = "custom",
    ):
        for table in (substitution, deletion, insertion):
            if table is not None and any(v < 0 for v in table.values()):
                raise ValueError("edit costs must be nonnegative")
        self.substitution = dict(substitution) if substitution is not None else None
        self.deletion = dict(deletion) if deletion is not None else None
        self.insertion = dict(insertion) if insertion is not None else None
        self.name = name

    @classmethod
    def unit(cls) -> "CostModel":
        return cls(name="unit")

    def sub_cost(self, a: str, b: str):
        if self.substitution is None:
            return 0 if a == b else 1
        return self.substitution[(a, b)]

    def del_cost(self, a: str):
        if self.deletion is None:
            return 1
        return self.deletion[a]

    def ins_cost(self, b: str):
        if self.insertion is None:
            return 1
        return self.insertion[b]

    def is_unit(self) -> bool:
        return self.substitution is None and self.deletion is None and self.insertion is None

    def integer_costs(self) -> bool:
        for table in (self.substitution, self.deletion, self.insertion):
            if table is None:
                continue
            if any(v != int(v) for v in table.values()):
                return False
        return True

    def is_metric(self, alphabet: str = DNA_ALPHABET) -> bool:
        """Check the metric flag over the given alphabet."""
        for a in alphabet:
            if self.sub_cost(a, a) != 0:
                return False
            if self.del_cost(a) != self.ins_cost(a):
                return False
            for b in alphabet:
                if self.sub_cost(a, b) != self.sub_cost(b, a):
                    return False
                if a != b and self.sub_cost(a, b) == 0:
                    return False
        # one-symbol triangle property: no substitution may beat a two-step
        # route through a third symbol or a delete+insert pair, in reverse
        for a in alphabet:
            for b in alphabet:
                for c in alphabet:
                    if self.sub_cost(a, b) > self.sub_cost(a, c) + self.sub_cost(c, b):
                        return False
                if self.sub_cost(a, b) > self.del_cost(a) + self.ins_cost(b):
                    return False
        return True

    @classmethod
    def from_file(cls, path) -> "CostModel":
        """Parse the cost-model text format.

        Lines (order free, '#' comments allowed), all over A,C,G,T order:
            sub <4 numbers>   -- four lines, rows of the substitution matrix
            ins <4 numbers>
            del <4 numbers>
        """
        sub_rows: list[list[float]] = []
        ins_row = del_row = None
        with open(path) as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, *vals = line.split()
                nums = [_parse_number(v) for v in vals]
                if key == "sub":
                    if len(nums) != 4:
                        raise ValueError(f"sub row needs 4 values, got {len(nums)}")
                    sub_rows.append(nums)
                elif key == "ins":
                    ins_row = nums
                elif key == "del":
                    del_row = nums
                else:
                    raise ValueError(f"unknown cost-model key {key!r}")
        if len(sub_rows) != 4 or ins_row is None or del_row is None or \
                len(ins_row) != 4 or len(del_row) != 4:
            raise ValueError("cost model needs 4 sub rows, one ins row, one del row")
        sub = {
            (a, b): sub_rows[i][j]
            for i, a in enumerate(DNA_ALPHABET)
            for j, b in enumerate(DNA_ALPHABET)
        }
        ins = dict(zip(DNA_ALPHABET, ins_row))
        dele = dict(zip(DNA_ALPHABET, del_row))
        return cls(substitution=sub, deletion=dele, insertion=ins, name=str(path))


def _parse_number(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


UNIT = CostModel.unit()


@dataclass(frozen=True)
class EditOp:
    """One primitive step of an alignment: 'match', 'substitute', 'delete' or
    'insert', with 0-based source/target positions of the consumed symbols."""

    kind: str
    src_pos: int | None
    dst_pos: int | None
    src: str | None
    dst: str | None
    cost: float


@dataclass
class EditTranscript:
    ops: tuple[EditOp, ...]
    total: float

    def replay(self, source) -> str:
        """Apply the operations to the source string; yields the target."""
        source = _symbols(source)
        out = []
        i = 0
        for op in self.ops:
            if op.kind in ("match", "substitute"):
                if source[i] != op.src:
                    raise ValueError("transcript does not match the source string")
                out.append(op.dst)
                i += 1
            elif op.kind == "delete":
                if source[i] != op.src:
                    raise ValueError("transcript does not match the source string")
                i += 1
            elif op.kind == "insert":
                out.append(op.dst)
            else:
                raise ValueError(f"unknown op kind {op.kind!r}")
        if i != len(source):
            raise ValueError("transcript does not consume the whole source")
        return "".join(out)


def edit_distance(s, t, cm: CostModel = UNIT):
    """Minimum total cost transforming s into t (two-row DP)."""
    s, t = _symbols(s), _symbols(t)
    m, n = len(s), len(t)
    prev = [0] * (n + 1)
    for j in range(1, n + 1):
        prev[j] = prev[j - 1] + cm.ins_cost(t[j - 1])
    for i in range(1, m + 1):
        cur = [prev[0] + cm.del_cost(s[i - 1])] + [0] * n
        si = s[i - 1]
        for j in range(1, n + 1):
            cur[j] = min(
                prev[j - 1] + cm.sub_cost(si, t[j - 1]),
                prev[j] + cm.del_cost(si),
                cur[j - 1] + cm.ins_cost(t[j - 1]),
            )
        prev = cur
    return prev[n]


def edit_distance_with_transcript(s, t, cm: CostModel = UNIT):
    """Distance plus a replayable transcript (full DP matrix + backtrace).

    Backtrace tie-breaking prefers substitute/match, then delete, then
    insert, so transcripts are deterministic.
    """
    s, t = _symbols(s), _symbols(t)
    m, n = len(s), len(t)
    dist = [[0] * (n + 1) for _ in range(m + 1)]
    for j in range(1, n + 1):
        dist[0][j] = dist[0][j - 1] + cm.ins_cost(t[j - 1])
    for i in range(1, m + 1):
        dist[i][0] = dist[i - 1][0] + cm.del_cost(s[i - 1])
        for j in range(1, n + 1):
            dist[i][j] = min(
                dist[i - 1][j - 1] + cm.sub_cost(s[i - 1], t[j - 1]),
                dist[i - 1][j] + cm.del_cost(s[i - 1]),
                dist[i][j - 1] + cm.ins_cost(t[j - 1]),
            )
    ops = []
    i, j = m, n
    while i > 0 or j > 0:
        if i > 0 and j > 0 and \
                dist[i][j] == dist[i - 1][j - 1] + cm.sub_cost(s[i - 1], t[j - 1]):
            kind = "match" if s[i - 1] == t[j - 1] else "substitute"
            ops.append(EditOp(kind, i - 1, j - 1, s[i - 1], t[j - 1],
                              cm.sub_cost(s[i - 1], t[j - 1])))
            i, j = i - 1, j - 1
        elif i > 0 and dist[i][j] == dist[i - 1][j] + cm.del_cost(s[i - 1]):
            ops.append(EditOp("delete", i - 1, None, s[i - 1], None,
                              cm.del_cost(s[i - 1])))
            i -= 1
        else:
            ops.append(EditOp("insert", None, j - 1, None, t[j - 1],
                              cm.ins_cost(t[j - 1])))
            j -= 1
    ops.reverse()
    return dist[m][n], EditTranscript(tuple(ops), dist[m][n])


def min_pairwise_edit(code: Iterable, cm: CostModel = UNIT):
    """Minimum edit distance over all unordered distinct pairs.

    Fewer than two distinct strings gives math.inf (documented sentinel:
    an empty or singleton set imposes no pairwise constraint).
    """
    items = sorted({_symbols(s) for s in code})
    if len(items) < 2:
        return math.inf
    best = None
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            d = edit_distance(items[i], items[j], cm)
            if best is None or d < best:
                best = d
    return best


def min_pairwise_hamming(code: Iterable[Z4Vector]):
    """Minimum Hamming distance over all unordered distinct pairs.

    Duplicates collapse (the code is a set); fewer than two distinct
    vectors gives math.inf.
    """
    items = list(dict.fromkeys(code))
    if len(items) >= 2:
        n = len(items[0])
        for x in items:
            if len(x) != n:
                raise ValueError("codewords must have equal length")
    if len(items) < 2:
        return math.inf
    best = None
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            d = hamming_distance(items[i], items[j])
            if best is None or d < best:
                best = d
    return best
