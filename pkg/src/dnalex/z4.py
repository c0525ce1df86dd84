"""Z4 vector arithmetic and the symbol bijection with DNA strands.

The ring Z4 = {0,1,2,3} with arithmetic mod 4 maps onto the nucleotide
alphabet via 0->G, 1->A, 2->C, 3->T.  Under that map the Watson-Crick
complement (A<->T, G<->C) pulls back to the residue map u -> u+2 mod 4,
which is pinned by an assertion below rather than assumed.
"""

from __future__ import annotations

from typing import Iterable, Iterator

Z4_TO_BASE = "GACT"  # index = residue
BASE_TO_Z4 = {"G": 0, "A": 1, "C": 2, "T": 3}
WC_COMPLEMENT = {"A": "T", "T": "A", "G": "C", "C": "G"}

# complement-as-arithmetic must agree with the Watson-Crick table for all
# four residues; fail at import time if the mapping is ever edited apart.
for _u in range(4):
    assert BASE_TO_Z4[WC_COMPLEMENT[Z4_TO_BASE[_u]]] == (_u + 2) % 4


class Z4Vector:
    """Fixed-length vector of residues mod 4.

    Immutable value type: equality and hashing are coordinatewise, and all
    operations return new vectors of the same length.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[int]):
        coords = tuple(int(c) for c in coords)
        for c in coords:
            if not 0 <= c <= 3:
                raise ValueError(f"coordinate {c!r} is not a residue mod 4")
        self.coords = coords

    @classmethod
    def from_string(cls, text: str) -> "Z4Vector":
        """Parse a contiguous digit string such as '21111000'."""
        if not all(ch in "0123" for ch in text):
            raise ValueError(f"invalid Z4 digit string: {text!r}")
        return cls(int(ch) for ch in text)

    @classmethod
    def zero(cls, n: int) -> "Z4Vector":
        return cls((0,) * n)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Z4Vector) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"Z4Vector({self})"

    def __add__(self, other: "Z4Vector") -> "Z4Vector":
        return add(self, other)

    def __rmul__(self, u: int) -> "Z4Vector":
        return scalar_mul(u, self)


class DnaStrand:
    """Oriented 5'->3' string over {A,C,G,T}.

    Inputs given 3'->5' must be normalised by the caller (reverse the
    letters) before construction; the stored orientation is always 5'->3'.
    """

    __slots__ = ("bases",)

    def __init__(self, bases: str):
        bases = str(bases)
        for ch in bases:
            if ch not in BASE_TO_Z4:
                raise ValueError(f"invalid nucleotide {ch!r} in {bases!r}")
        self.bases = bases

    def __len__(self) -> int:
        return len(self.bases)

    def __iter__(self) -> Iterator[str]:
        return iter(self.bases)

    def __getitem__(self, i):
        return self.bases[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, DnaStrand) and self.bases == other.bases

    def __hash__(self) -> int:
        return hash(self.bases)

    def __str__(self) -> str:
        return self.bases

    def __repr__(self) -> str:
        return f"DnaStrand({self.bases!r})"


def _check_same_length(x: Z4Vector, y: Z4Vector) -> None:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")


def add(x: Z4Vector, y: Z4Vector) -> Z4Vector:
    """Coordinatewise sum mod 4."""
    _check_same_length(x, y)
    return Z4Vector((a + b) % 4 for a, b in zip(x.coords, y.coords))


def sub(x: Z4Vector, y: Z4Vector) -> Z4Vector:
    """Coordinatewise difference mod 4."""
    _check_same_length(x, y)
    return Z4Vector((a - b) % 4 for a, b in zip(x.coords, y.coords))


def scalar_mul(u: int, x: Z4Vector) -> Z4Vector:
    """Coordinatewise product by the residue u mod 4."""
    u = int(u) % 4
    return Z4Vector((u * c) % 4 for c in x.coords)


def hamming_weight(x: Z4Vector) -> int:
    """Number of nonzero coordinates: n1(x) + n2(x) + n3(x)."""
    return sum(1 for c in x.coords if c != 0)


def hamming_distance(x: Z4Vector, y: Z4Vector) -> int:
    """hamming_weight(x - y); equals the number of differing coordinates."""
    _check_same_length(x, y)
    return sum(1 for a, b in zip(x.coords, y.coords) if a != b)


def symbol_counts(x: Z4Vector) -> tuple[int, int, int, int]:
    """(n0, n1, n2, n3): occurrence count of each residue."""
    counts = [0, 0, 0, 0]
    for c in x.coords:
        counts[c] += 1
    return tuple(counts)


def gc_weight(x: Z4Vector) -> int:
    """Number of coordinates in {0,2}, i.e. G/C positions of phi(x)."""
    return sum(1 for c in x.coords if c in (0, 2))


def reverse(x: Z4Vector) -> Z4Vector:
    return Z4Vector(reversed(x.coords))


def complement(x: Z4Vector) -> Z4Vector:
    """Coordinatewise Watson-Crick complement: u -> u+2 mod 4 (pinned above)."""
    return Z4Vector((c + 2) % 4 for c in x.coords)


def reverse_complement(x: Z4Vector) -> Z4Vector:
    return reverse(complement(x))


def phi(x: Z4Vector) -> DnaStrand:
    """Symbol-wise map 0->G, 1->A, 2->C, 3->T."""
    return DnaStrand("".join(Z4_TO_BASE[c] for c in x.coords))


def phi_inv(s: DnaStrand | str) -> Z4Vector:
    """Inverse of phi; rejects characters outside {A,C,G,T}."""
    bases = str(s)
    coords = []
    for ch in bases:
        if ch not in BASE_TO_Z4:
            raise ValueError(f"invalid nucleotide {ch!r} in {bases!r}")
        coords.append(BASE_TO_Z4[ch])
    return Z4Vector(coords)


def strand_complement(s: DnaStrand | str) -> DnaStrand:
    return DnaStrand("".join(WC_COMPLEMENT[ch] for ch in str(s)))


def strand_reverse(s: DnaStrand | str) -> DnaStrand:
    return DnaStrand(str(s)[::-1])


def strand_reverse_complement(s: DnaStrand | str) -> DnaStrand:
    return DnaStrand("".join(WC_COMPLEMENT[ch] for ch in reversed(str(s))))


def gc_weight_strand(s: DnaStrand | str) -> int:
    return sum(1 for ch in str(s) if ch in "GC")


def all_vectors(n: int) -> Iterator[Z4Vector]:
    """All 4^n vectors of length n, coordinate 0 varying fastest."""
    for j in range(4 ** n):
        coords = []
        for _ in range(n):
            coords.append(j % 4)
            j //= 4
        yield Z4Vector(coords)
