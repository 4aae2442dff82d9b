"""Prime-field residue arithmetic and norm bookkeeping.

Everything in this package works inside the additive group of Z_p for an
odd prime p.  This module owns the small vocabulary the rest of the code
is written in: validated moduli, residue sets, the centered representative
``signed_rep``, the distance-to-zero ``norm``, dilation, the two threshold
functions ``n_of_p`` / ``m_of_p``, and the per-set norm statistics used by
the dilation scanner.

Residues are plain Python ints in ``[0, p-1]``.  Functions accept arbitrary
(possibly negative) integers where a residue is expected and reduce them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "Modulus",
    "ZpSet",
    "NormStats",
    "is_prime",
    "norm",
    "signed_rep",
    "dilate",
    "n_of_p",
    "exceptional_check",
    "m_of_p",
    "norm_stats",
    "read_set_file",
]

_MAX_MODULUS = 2**64 - 1

# Witnesses for deterministic Miller-Rabin, valid for all n < 3.3 * 10^24
# (Sorenson & Webster), covering the full 64-bit modulus range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for integers below 2**63."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # n = d * 2^s + 1 with d odd
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    """An odd prime modulus p in the 64-bit range, p >= 3."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int):
            raise ValueError(f"modulus must be an int, got {type(self.p).__name__}")
        if self.p < 3 or self.p > _MAX_MODULUS:
            raise ValueError(f"modulus must satisfy 3 <= p < 2**64, got {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"modulus must be prime, got {self.p}")

    @property
    def half(self) -> int:
        """(p - 1) // 2, the largest norm value."""
        return (self.p - 1) // 2

    def reduce(self, x: int) -> int:
        return x % self.p

    def __int__(self) -> int:
        return self.p

    def __str__(self) -> str:
        return str(self.p)


def _as_p(m: Modulus | int) -> int:
    if isinstance(m, Modulus):
        return m.p
    return Modulus(m).p


def norm(x: int, m: Modulus | int) -> int:
    """Distance from x to 0 on the p-cycle: min(x mod p, p - x mod p)."""
    p = _as_p(m)
    r = x % p
    return min(r, p - r)


def signed_rep(x: int, m: Modulus | int) -> int:
    """Centered representative of x in [-(p-1)/2, (p-1)/2]."""
    p = _as_p(m)
    r = x % p
    return r if r <= (p - 1) // 2 else r - p


@dataclass(frozen=True)
class ZpSet:
    """A set of distinct residues mod p, stored sorted ascending.

    Construct with :meth:`of`, which reduces arbitrary integers mod p and
    rejects inputs that collide after reduction.
    """

    modulus: Modulus
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.modulus.p
        prev = -1
        for e in self.elements:
            if not 0 <= e < p:
                raise ValueError(f"element {e} out of range for p={p}")
            if e <= prev:
                raise ValueError("elements must be strictly increasing")
            prev = e

    @classmethod
    def of(cls, values: Iterable[int], m: Modulus | int) -> "ZpSet":
        mod = m if isinstance(m, Modulus) else Modulus(m)
        reduced = []
        seen = set()
        for v in values:
            r = v % mod.p
            if r in seen:
                raise ValueError(
                    f"duplicate residue {r} (from input {v}) mod {mod.p}"
                )
            seen.add(r)
            reduced.append(r)
        return cls(mod, tuple(sorted(reduced)))

    @property
    def p(self) -> int:
        return self.modulus.p

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x % self.modulus.p in set(self.elements)

    def signed(self) -> tuple[int, ...]:
        """Centered representatives, in ascending residue order."""
        return tuple(signed_rep(e, self.modulus) for e in self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.elements) + "} mod " + str(self.p)


def dilate(a: ZpSet, b: int) -> ZpSet:
    """The dilate b*A = {b*a mod p : a in A}.  Requires b != 0 mod p."""
    p = a.modulus.p
    bb = b % p
    if bb == 0:
        raise ValueError("dilation factor must be nonzero mod p")
    return ZpSet.of((bb * e for e in a.elements), a.modulus)


def n_of_p(m: Modulus | int) -> int:
    """Largest n with 1 + 2 + ... + (n-1) < p.

    The interval [1, n-1] is then the canonical largest "small" set whose
    integer total stays below p, and n*(n+1)/2 >= p.
    """
    p = _as_p(m)
    # n(n-1)/2 < p  <=>  n <= floor((1 + sqrt(1+8p-8)) / 2) roughly; fix up.
    n = (1 + math.isqrt(8 * p - 7)) // 2
    while n * (n - 1) // 2 >= p:
        n -= 1
    while (n + 1) * n // 2 < p:
        n += 1
    return n


def exceptional_check(m: Modulus | int) -> bool:
    """True when p == n(n+1)/2 - 1 for n = n_of_p(p).

    These are the only primes where a second, sign-flipped extremal shape
    can exist alongside the interval [1, n-1].
    """
    p = _as_p(m)
    n = n_of_p(p)
    return p == n * (n + 1) // 2 - 1


def m_of_p(m: Modulus | int) -> int:
    """Largest size of a norm-multiset packing with total norm below p.

    Using each norm value at most twice (once per sign), m elements can
    have total norm t(m) = k*(k+1) when m = 2k, and (k+1)**2 when m = 2k+1.
    Returns the largest m with t(m) < p.
    """
    p = _as_p(m)
    k_even = (math.isqrt(4 * p - 3) - 1) // 2  # largest k with k(k+1) < p
    while k_even * (k_even + 1) >= p:
        k_even -= 1
    while (k_even + 1) * (k_even + 2) < p:
        k_even += 1
    k_odd = math.isqrt(p - 1) - 1  # largest k with (k+1)^2 < p
    while (k_odd + 1) ** 2 >= p:
        k_odd -= 1
    while (k_odd + 2) ** 2 < p:
        k_odd += 1
    return max(2 * k_even, 2 * k_odd + 1)


@dataclass(frozen=True)
class NormStats:
    """Norm aggregates of a residue set.

    total_norm     -- sum of norm(a) over the set
    low_sum        -- sum of the elements with signed representative > 0
                      (equivalently: sum of a over a <= (p-1)/2)
    high_norm_sum  -- sum of norms of the elements with signed rep < 0
    """

    total_norm: int
    low_sum: int
    high_norm_sum: int

    def __post_init__(self) -> None:
        if self.total_norm != self.low_sum + self.high_norm_sum:
            raise ValueError("inconsistent norm statistics")


def norm_stats(a: ZpSet) -> NormStats:
    half = a.modulus.half
    low = 0
    high = 0
    for e in a.elements:
        if e <= half:
            low += e
        else:
            high += a.modulus.p - e
    return NormStats(total_norm=low + high, low_sum=low, high_norm_sum=high)


def read_set_file(path: str, m: Modulus | int) -> ZpSet:
    """Read a residue set from a text file.

    One integer per line (signed integers allowed; they are reduced mod p).
    Blank lines and lines starting with '#' are ignored, as is anything
    after a '#' on a value line.
    """
    mod = m if isinstance(m, Modulus) else Modulus(m)
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                values.append(int(line))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not an integer: {line!r}") from None
    return ZpSet.of(values, mod)
