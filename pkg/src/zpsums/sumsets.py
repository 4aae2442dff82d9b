"""Subset-sum computation over Z_p with packed bit vectors.

``subset_sums(A)`` returns the set S_A of residues expressible as a sum of
a NONEMPTY subset of distinct elements of A.  The empty subset is always
excluded; with it, the membership questions this package asks (is 0 a
subset sum? is every residue a subset sum?) would be vacuous.

The kernel is the classic incremental recurrence over a p-bit vector B
(bit r set iff r is currently reachable): for each element a,

    B <- B | rot(B, a) | bit(a)

where rot rotates the p-bit ring upward by a (modular shift).  Python's
big integers handle the packed words and the carry across the top
(non-word-aligned) boundary for us; the rotation is two shifts and a mask.

``build_witness_table`` additionally records, for every residue, the index
of the element that first reached it.  Walking that table backwards yields
a canonical explicit subset for any reachable target.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Modulus, ZpSet
from .errors import CapabilityError, ContractError

__all__ = [
    "SumSet",
    "Witness",
    "WitnessTable",
    "subset_sums",
    "naive_subset_sums",
    "is_zero_sum_free",
    "is_complete",
    "build_witness_table",
    "witness",
    "check_witness",
    "WITNESS_TABLE_LIMIT",
]

# Above this modulus the first-reach table (p int32 entries) is not built;
# witness requests fail loudly instead of silently recomputing.
WITNESS_TABLE_LIMIT = 2**28

_NAIVE_LIMIT = 24


def _rotate(bits: int, a: int, p: int, mask: int) -> int:
    """Rotate the p-bit vector upward by a: bit x <- bit (x - a) mod p."""
    return ((bits << a) | (bits >> (p - a))) & mask


@dataclass(frozen=True)
class SumSet:
    """The subset sums S_A as a p-bit vector (bit r set iff r in S_A)."""

    modulus: Modulus
    bits: int
    count: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.modulus.p:
            raise ValueError("sum-set bits out of range for the modulus")
        if self.count != self.bits.bit_count():
            raise ValueError("sum-set count does not match its bits")

    def __contains__(self, r: int) -> bool:
        return (self.bits >> (r % self.modulus.p)) & 1 == 1

    def members(self) -> tuple[int, ...]:
        b = self.bits
        out = []
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return tuple(out)

    def __len__(self) -> int:
        return self.count


def subset_sums(a: ZpSet) -> SumSet:
    """All residues reachable as a nonempty subset sum of A."""
    p = a.modulus.p
    mask = (1 << p) - 1
    bits = 0
    for e in a.elements:
        if e == 0:
            bits |= 1
        else:
            bits = bits | _rotate(bits, e, p, mask) | (1 << e)
    return SumSet(a.modulus, bits, bits.bit_count())


def naive_subset_sums(a: ZpSet) -> SumSet:
    """Oracle: enumerate all 2^|A| - 1 nonempty subsets directly.

    Limited to |A| <= 24 so that the enumeration stays feasible; the limit
    is enforced, not advisory.
    """
    k = len(a.elements)
    if k > _NAIVE_LIMIT:
        raise ValueError(
            f"naive_subset_sums is limited to |A| <= {_NAIVE_LIMIT}, got {k}"
        )
    p = a.modulus.p
    els = a.elements
    bits = 0
    # Gray-code walk: flip one element per step, keep a running sum.
    total = 0
    prev_gray = 0
    for i in range(1, 1 << k):
        gray = i ^ (i >> 1)
        diff = gray ^ prev_gray
        j = diff.bit_length() - 1
        if gray & diff:
            total += els[j]
        else:
            total -= els[j]
        prev_gray = gray
        bits |= 1 << (total % p)
    return SumSet(a.modulus, bits, bits.bit_count())


def is_zero_sum_free(a: ZpSet) -> bool:
    """True iff no nonempty subset of A sums to 0 (vacuously true for {})."""
    if 0 in a.elements:
        return False
    return 0 not in subset_sums(a)


def is_complete(a: ZpSet) -> bool:
    """True iff S_A is all of Z_p."""
    return subset_sums(a).count == a.modulus.p


@dataclass(frozen=True)
class Witness:
    """An explicit nonempty subset certifying target in S_A."""

    subset: ZpSet
    target: int

    def __post_init__(self) -> None:
        if len(self.subset) == 0:
            raise ValueError("a witness subset must be nonempty")
        p = self.subset.modulus.p
        if sum(self.subset.elements) % p != self.target % p:
            raise ValueError("witness subset does not sum to its target")


def check_witness(a: ZpSet, w: Witness) -> bool:
    """Independent validation: distinct elements of A, correct modular sum."""
    if w.subset.modulus.p != a.modulus.p:
        return False
    els = set(a.elements)
    if not all(e in els for e in w.subset.elements):
        return False
    return sum(w.subset.elements) % a.modulus.p == w.target % a.modulus.p


@dataclass(frozen=True)
class WitnessTable:
    """First-reach index per residue: first_reach[r] = index into A of the
    element whose inclusion first made r reachable (-1 = unreachable;
    -2 marks r reachable before that element — never stored, see walk)."""

    elements: ZpSet
    first_reach: np.ndarray  # int32, length p; -1 where unreachable

    def sum_bits(self) -> int:
        bits = 0
        for r in np.flatnonzero(self.first_reach >= 0):
            bits |= 1 << int(r)
        return bits


def build_witness_table(a: ZpSet, limit: int = WITNESS_TABLE_LIMIT) -> WitnessTable:
    p = a.modulus.p
    if p > limit:
        raise CapabilityError(
            f"witness table disabled for p > {limit} (got p={p}); "
            "membership queries via subset_sums remain available"
        )
    mask = (1 << p) - 1
    first = np.full(p, -1, dtype=np.int32)
    bits = 0
    for i, e in enumerate(a.elements):
        if e == 0:
            new = 1 & ~bits
        else:
            new = (_rotate(bits, e, p, mask) | (1 << e)) & ~bits
        if new:
            # indices of freshly reached residues, via numpy over the bytes
            nbytes = (p + 7) // 8
            arr = np.frombuffer(new.to_bytes(nbytes, "little"), dtype=np.uint8)
            reached = np.flatnonzero(np.unpackbits(arr, bitorder="little")[:p])
            first[reached] = i
            bits |= new
    return WitnessTable(a, first)


def witness(a: ZpSet, target: int) -> Witness | None:
    """Canonical witness subset for target in S_A, or None if unreachable.

    Deterministic: with A sorted ascending, each residue is tagged by the
    first element that reached it, and the walk peels those tags backwards
    (strictly decreasing indices, so it terminates).
    """
    table = build_witness_table(a)
    return witness_from_table(table, target)


def witness_from_table(table: WitnessTable, target: int) -> Witness | None:
    a = table.elements
    p = a.modulus.p
    t = target % p
    if table.first_reach[t] < 0:
        return None
    # If t was first reached when element index i came in, then either
    # t == A[i] alone, or t - A[i] was already reachable before index i.
    # Peeling therefore walks strictly decreasing indices and terminates.
    chosen = []
    i = int(table.first_reach[t])
    while True:
        e = a.elements[i]
        chosen.append(e)
        t = (t - e) % p
        if t == 0:
            break
        nxt = int(table.first_reach[t])
        if nxt < 0 or nxt >= i:
            raise ContractError("first-reach walk failed to decrease")
        i = nxt
    w = Witness(ZpSet.of(chosen, a.modulus), target % p)
    if not check_witness(a, w):
        raise ContractError("reconstructed witness failed validation")
    return w
