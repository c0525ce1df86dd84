"""Selection predicates for the greedy scan, composition, and a
multiplicativity checker.

A predicate P is multiplicative when P[x] implies P[3x]; that is the
hypothesis under which the greedy construction yields a linear code.  The
checker here is empirical: exhaustive at small lengths, deterministic
stride sampling above the budget (with an explicit inconclusive status).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metrics import UNIT, CostModel, edit_distance
from .z4 import DnaStrand, Z4Vector, phi

EDIT_TOLERANCE = 1e-9  # absolute slack for real-valued cost thresholds


def _as_array(vectors) -> np.ndarray:
    arr = np.asarray([tuple(v) for v in vectors], dtype=np.uint8)
    return arr.reshape(len(arr), -1)


def _digit_vectors(indices: np.ndarray, n: int) -> np.ndarray:
    """Vectors whose coordinates are the base-4 digits of each index."""
    idx = np.asarray(indices, dtype=np.int64)
    out = np.empty((len(idx), n), dtype=np.uint8)
    for k in range(n):
        out[:, k] = (idx >> (2 * k)) & 3
    return out


class Property:
    """Boolean selection predicate over Z4 vectors.

    `code` is the snapshot of already-accepted codewords; only
    MinEditToCode reads it, everything else ignores it.  Evaluation is
    pure: the snapshot is always passed explicitly.
    """

    def evaluate(self, x: Z4Vector, code=()) -> bool:
        row = np.asarray([tuple(x)], dtype=np.uint8)
        return bool(self.evaluate_batch(row, code)[0])

    def evaluate_batch(self, arr: np.ndarray, code=()) -> np.ndarray:
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.spec()!r})"


class Const(Property):
    def __init__(self, value: bool):
        self.value = bool(value)

    def evaluate_batch(self, arr, code=()):
        return np.full(len(arr), self.value, dtype=bool)

    def spec(self):
        return "true" if self.value else "false"


class MinGC(Property):
    """GC weight of phi(x) at least w (count of coordinates in {0,2})."""

    def __init__(self, w: int):
        if w < 0:
            raise ValueError("w must be nonnegative")
        self.w = int(w)

    def evaluate_batch(self, arr, code=()):
        gc = np.count_nonzero((arr & 1) == 0, axis=1)
        return gc >= self.w

    def spec(self):
        return f"gc>={self.w}"


class MinHammingWeight(Property):
    """At least d nonzero coordinates."""

    def __init__(self, d: int):
        if d < 0:
            raise ValueError("d must be nonnegative")
        self.d = int(d)

    def evaluate_batch(self, arr, code=()):
        return np.count_nonzero(arr, axis=1) >= self.d

    def spec(self):
        return f"hw>={self.d}"


class _EditToRef(Property):
    def __init__(self, ref, m, cm: CostModel = UNIT):
        self.ref = str(DnaStrand(str(ref)))
        self.m = m
        self.cm = cm

    def _distances(self, arr):
        return [edit_distance(str(phi(Z4Vector(row))), self.ref, self.cm) for row in arr]


class EditToRefAtMost(_EditToRef):
    """Edit distance from phi(x) to a fixed reference strand at most m."""

    def evaluate_batch(self, arr, code=()):
        return np.asarray([d <= self.m + EDIT_TOLERANCE for d in self._distances(arr)])

    def spec(self):
        return f"editref<={self.ref}:{self.m}"


class EditToRefAtLeast(_EditToRef):
    """Edit distance from phi(x) to a fixed reference strand at least m."""

    def evaluate_batch(self, arr, code=()):
        return np.asarray([d >= self.m - EDIT_TOLERANCE for d in self._distances(arr)])

    def spec(self):
        return f"editref>={self.ref}:{self.m}"


class MinEditToCode(Property):
    """Edit distance from phi(x) to every earlier distinct codeword at least d.

    The code snapshot is the explicit `code` argument; with an empty
    snapshot the predicate is vacuously true.
    """

    def __init__(self, d, cm: CostModel = UNIT):
        self.d = d
        self.cm = cm

    def evaluate_batch(self, arr, code=()):
        strands = [str(phi(y)) for y in code]
        out = np.ones(len(arr), dtype=bool)
        for i, row in enumerate(arr):
            s = str(phi(Z4Vector(row)))
            for t in strands:
                if t == s:
                    continue
                if edit_distance(s, t, self.cm) < self.d - EDIT_TOLERANCE:
                    out[i] = False
                    break
        return out

    def spec(self):
        return f"editcode>={self.d}"


class And(Property):
    """Conjunction; And([]) is the constant-true property."""

    def __init__(self, parts):
        self.parts = tuple(parts)

    def evaluate_batch(self, arr, code=()):
        out = np.ones(len(arr), dtype=bool)
        for p in self.parts:
            if not out.any():
                break
            sub = p.evaluate_batch(arr[out], code)
            idx = np.flatnonzero(out)
            out[idx[~sub]] = False
        return out

    def spec(self):
        if not self.parts:
            return "true"
        return " & ".join(p.spec() for p in self.parts)


def _parse_threshold(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_property(text: str, cost_model: CostModel = UNIT) -> Property:
    """Parse the CLI property mini-language.

    Atoms: true, false, gc>=W, hw>=D, editref<=REF:M, editref>=REF:M,
    editcode>=D; conjunction with '&'.  Unknown atoms are rejected.
    """
    atoms = [a.strip() for a in text.split("&")]
    parts: list[Property] = []
    for atom in atoms:
        if not atom:
            raise ValueError(f"empty atom in property string {text!r}")
        if atom == "true":
            parts.append(Const(True))
        elif atom == "false":
            parts.append(Const(False))
        elif atom.startswith("gc>="):
            parts.append(MinGC(int(atom[4:])))
        elif atom.startswith("hw>="):
            parts.append(MinHammingWeight(int(atom[4:])))
        elif atom.startswith("editref<=") or atom.startswith("editref>="):
            op = atom[7:9]
            body = atom[9:]
            if ":" not in body:
                raise ValueError(f"editref atom needs REF:M, got {atom!r}")
            ref, m = body.split(":", 1)
            cls = EditToRefAtMost if op == "<=" else EditToRefAtLeast
            parts.append(cls(ref, _parse_threshold(m), cost_model))
        elif atom.startswith("editcode>="):
            parts.append(MinEditToCode(_parse_threshold(atom[10:]), cost_model))
        else:
            raise ValueError(f"unknown property atom {atom!r}")
    if len(parts) == 1:
        return parts[0]
    return And(parts)


@dataclass
class MultiplicativityReport:
    """Outcome of the empirical P[x] => P[3x] sweep.

    status is 'holds' (exhaustive, no violation), 'counterexample'
    (violating x attached), or 'inconclusive' (sampled within budget, no
    violation found but the sweep was not exhaustive).
    """

    status: str
    counterexample: Z4Vector | None
    tested: int

    def __bool__(self):
        return self.status == "holds"


def is_multiplicative_empirical(
    p: Property, n: int, code=(), budget: int = 65536
) -> MultiplicativityReport:
    """Sweep Z4^n for a violation of P[x] => P[3x].

    Exhaustive when 4^n <= budget (n <= 8 with the default); otherwise a
    deterministic stride sample of about `budget` vectors is used and a
    clean sweep reports 'inconclusive' rather than 'holds'.
    """
    total = 4 ** n
    exhaustive = total <= budget
    if exhaustive:
        indices = np.arange(total, dtype=np.int64)
    else:
        step = -(-total // budget)
        indices = np.arange(0, total, step, dtype=np.int64)
    tested = 0
    chunk = 16384
    for lo in range(0, len(indices), chunk):
        idx = indices[lo:lo + chunk]
        arr = _digit_vectors(idx, n)
        px = p.evaluate_batch(arr, code)
        if not px.any():
            tested += len(idx)
            continue
        p3x = p.evaluate_batch((3 * arr[px]) % 4, code)
        tested += len(idx)
        if not p3x.all():
            bad = arr[px][~p3x][0]
            return MultiplicativityReport("counterexample", Z4Vector(bad), tested)
    return MultiplicativityReport("holds" if exhaustive else "inconclusive", None, tested)
