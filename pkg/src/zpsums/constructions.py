"""Constructive building blocks: every function returns an explicit object
(an integer representation or a residue set), never a bare existence claim.

The central tool is writing a target integer as a sum of distinct elements
drawn from an interval-like ground set:

* ``chain_sums``        -- the suffix-augmented chain giving l(l+1)/2
                           distinct subset totals of any l distinct
                           positive integers;
* ``represent_in_interval`` -- every x in [2t+3, (n+1)(floor(n/2)-t-1)] as
                           a sum of distinct elements of a dense subset
                           A1 of [1, n] (t = number of missing elements);
* ``extend_interval`` / ``extend_interval_down`` -- greedy interval
                           stretching with extra elements;
* ``core_pairs`` / ``represent_via_core`` / ``core_interval_witness`` --
                           representations through the pairing
                           {(a, a') : a + a' = n + 1}, which cover a long
                           interval using few summands per target;
* ``build_family``      -- the named residue-set families used throughout
                           (the interval set, its sign-flipped variant,
                           and the minimal-norm packing).

Margins and error typing: the interval constructions are proved to work
under explicit density margins (documented per function).  Inside those
margins a failure raises ContractError (a bug, tested never to fire);
outside them the functions still try, and raise ValueError on failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import Modulus, ZpSet, m_of_p, n_of_p, exceptional_check
from .errors import ContractError

__all__ = [
    "IntRepresentation",
    "CorePairing",
    "chain_sums",
    "represent_in_interval",
    "extend_interval",
    "extend_interval_down",
    "core_pairs",
    "represent_via_core",
    "core_interval_witness",
    "build_family",
]


@dataclass(frozen=True)
class IntRepresentation:
    """A target written as a sum of distinct nonzero integers.

    Parts are positive in the standard constructions; the mirrored variant
    of interval extension may contribute negative parts.  Exact integer
    arithmetic throughout — no modular reduction.
    """

    parts: tuple[int, ...]
    total: int

    def __post_init__(self) -> None:
        if len(set(self.parts)) != len(self.parts):
            raise ValueError("representation parts must be distinct")
        if any(x == 0 for x in self.parts):
            raise ValueError("representation parts must be nonzero")
        if sum(self.parts) != self.total:
            raise ValueError("representation parts do not sum to the total")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "IntRepresentation":
        t = tuple(parts)
        return cls(t, sum(t))


def chain_sums(k_list: Sequence[int], p: int) -> list[IntRepresentation]:
    """The l(l+1)/2 chain subsets of k_1 < ... < k_l with distinct totals.

    Stage j (j = 0..l-1) takes the suffix of the last j elements and
    prepends each earlier element in turn:

        k_1, ..., k_l,
        k_1 + k_l, ..., k_{l-1} + k_l,
        k_1 + k_{l-1} + k_l, ...

    Totals increase strictly along the whole chain, so all l(l+1)/2 are
    distinct.  Requires distinct positive integers with total <= p.
    """
    ks = list(k_list)
    if any(x <= 0 for x in ks):
        raise ValueError("chain elements must be positive")
    if sorted(set(ks)) != ks:
        raise ValueError("chain elements must be distinct and ascending")
    if sum(ks) > p:
        raise ValueError("chain total must not exceed p")
    l = len(ks)
    out: list[IntRepresentation] = []
    for j in range(l):
        suffix = ks[l - j :]
        for i in range(l - j):
            out.append(IntRepresentation.of([ks[i]] + suffix))
    return out


def _interval_upper(n: int, t: int) -> int:
    return (n + 1) * (n // 2 - t - 1)


def represent_in_interval(a1: Iterable[int], n: int, x: int) -> IntRepresentation:
    """Write x as a sum of distinct elements of A1, a dense subset of [1,n].

    Works for every x in [2t+3, (n+1)(floor(n/2)-t-1)] where t = n - |A1|
    is the number of missing interval elements; the documented margin is
    t <= n/6 - 3.

    Algorithm: for x <= n, scan pairs {i, x-i}.  For x > n, write
    x = k(n+1) + r and assemble k whole pairs {i, n+1-i} plus a short
    block summing to r: nothing (r = 0), a singleton, a doubleton, or --
    borrowing one pair's worth -- a triple summing to n+1+r with k-1
    pairs.  Each block candidate is retried with a fresh pair selection,
    so a shortage moves on to the next candidate instead of failing.
    """
    els = set(int(e) for e in a1)
    if not els or not all(1 <= e <= n for e in els):
        raise ValueError("A1 must be a nonempty subset of [1, n]")
    t = n - len(els)
    lo, hi = 2 * t + 3, _interval_upper(n, t)
    if not lo <= x <= hi:
        raise ValueError(f"x={x} outside the covered interval [{lo}, {hi}]")
    in_margin = 6 * t <= n - 18

    def fail() -> Exception:
        msg = f"no representation found for x={x} (n={n}, t={t})"
        return ContractError(msg) if in_margin else ValueError(msg)

    if x <= n:
        # Case 1: a two-element representation. Among the floor((x-1)/2)
        # candidate pairs, each missing element kills at most one, and
        # x >= 2t+3 leaves at least one intact.
        for i in range(1, (x - 1) // 2 + 1):
            if i in els and (x - i) in els:
                return IntRepresentation.of([i, x - i])
        raise fail()

    # Case 2: k whole pairs i + (n+1-i) plus a block summing to the
    # remainder r (or to n+1+r with one fewer pair).
    k, r = divmod(x, n + 1)
    pair_bases = [
        i for i in range(1, n // 2 + 1) if i in els and (n + 1 - i) in els
    ]

    def assemble(block: tuple[int, ...], count: int) -> IntRepresentation | None:
        hit = set(block)
        pairs: list[tuple[int, int]] = []
        for q in pair_bases:
            if len(pairs) == count:
                break
            if q not in hit and (n + 1 - q) not in hit:
                pairs.append((q, n + 1 - q))
        if len(pairs) != count:
            return None
        rep = IntRepresentation.of(list(block) + [e for pq in pairs for e in pq])
        if rep.total != x:
            raise ContractError("pair/block assembly mismatch")
        return rep

    def blocks():
        if r == 0:
            yield (), k
        if r in els:
            yield (r,), k
        for i in range(1, (r - 1) // 2 + 1):
            if i in els and (r - i) in els:
                yield (i, r - i), k
        target = n + 1 + r  # borrow one pair's worth
        for c in sorted(els, reverse=True):
            rem = target - c
            for i in range(1, (rem - 1) // 2 + 1):
                j = rem - i
                if i in els and j in els and len({i, j, c}) == 3 and j <= n:
                    yield (i, j, c), k - 1

    for block, count in blocks():
        rep = assemble(block, count)
        if rep is not None:
            return rep
    raise fail()


def extend_interval(
    inner: Callable[[int], IntRepresentation],
    a: int,
    b: int,
    extras: Sequence[int],
    y: int,
) -> IntRepresentation:
    """Stretch a covered interval [a, b] upward with nonnegative extras.

    ``inner`` must return a valid representation for any value in [a, b].
    Each extra e with 0 <= e < b-a extends coverage to [a, b + sum(extras)]:
    greedily include extras while the remainder exceeds b (the size bound
    on each extra keeps the remainder above a).  Zero extras are skipped —
    they cannot move the remainder.  The extras must be disjoint from the
    parts ``inner`` produces.
    """
    if a > b:
        raise ValueError("need a <= b")
    if any(e < 0 or e >= b - a for e in extras):
        raise ValueError("every extra must satisfy 0 <= e < b - a")
    if not a <= y <= b + sum(extras):
        raise ValueError(f"y={y} outside extended interval [{a}, {b + sum(extras)}]")
    used: list[int] = []
    rem = y
    pool = [e for e in extras if e > 0]
    while rem > b:
        e = pool.pop(0)  # guaranteed nonempty: y <= b + sum(extras)
        used.append(e)
        rem -= e
    base = inner(rem)
    if base.total != rem:
        raise ContractError("inner oracle returned a wrong total")
    if set(used) & set(base.parts):
        raise ValueError("extras must be disjoint from the inner ground set")
    return IntRepresentation.of(used + list(base.parts))


def extend_interval_down(
    inner: Callable[[int], IntRepresentation],
    a: int,
    b: int,
    extras: Sequence[int],
    y: int,
) -> IntRepresentation:
    """Mirrored variant: nonpositive extras stretch [a, b] downward.

    Each extra e with -(b-a) < e <= 0 extends coverage to
    [a + sum(extras), b]; the greedy loop raises the remainder back into
    [a, b].  Zero extras are skipped.
    """
    if a > b:
        raise ValueError("need a <= b")
    if any(e > 0 or e <= -(b - a) for e in extras):
        raise ValueError("every extra must satisfy -(b-a) < e <= 0")
    if not a + sum(extras) <= y <= b:
        raise ValueError(f"y={y} outside extended interval [{a + sum(extras)}, {b}]")
    used: list[int] = []
    rem = y
    pool = [e for e in extras if e < 0]
    while rem < a:
        e = pool.pop(0)
        used.append(e)
        rem -= e
    base = inner(rem)
    if base.total != rem:
        raise ContractError("inner oracle returned a wrong total")
    if set(used) & set(base.parts):
        raise ValueError("extras must be disjoint from the inner ground set")
    return IntRepresentation.of(used + list(base.parts))


@dataclass(frozen=True)
class CorePairing:
    """The pairing {(a, a') : a < a', a + a' = n + 1, both in A}.

    Pairs are element-disjoint by construction (each value belongs to one
    pair), and every core element lies in [1, n].
    """

    n: int
    pairs: tuple[tuple[int, int], ...]
    core_elements: tuple[int, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for a, b in self.pairs:
            if not (0 < a < b <= self.n) or a + b != self.n + 1:
                raise ValueError(f"invalid pair ({a}, {b}) for n={self.n}")
            if a in seen or b in seen:
                raise ValueError("pairs must be element-disjoint")
            seen.update((a, b))
        if tuple(sorted(seen)) != self.core_elements:
            raise ValueError("core_elements must be the flattened pair elements")

    @property
    def total(self) -> int:
        return (self.n + 1) * len(self.pairs)


def core_pairs(a: Iterable[int] | ZpSet, n: int) -> CorePairing:
    """Maximal pairing of A inside [1, n]: (i, n+1-i) iff both present."""
    els = set(int(e) for e in a)
    pairs = []
    # i pairs with n+1-i; i < n+1-i restricts i to [1, floor(n/2)], which
    # also rules out the self-pair at odd n.
    for i in range(1, n // 2 + 1):
        if i in els and (n + 1 - i) in els:
            pairs.append((i, n + 1 - i))
    flat = tuple(sorted(e for pq in pairs for e in pq))
    return CorePairing(n, tuple(pairs), flat)


def _core_margin(core: CorePairing, m: int) -> bool:
    # documented margin: core size >= (1/2 + 1/m) n and n >= 8m(m+1)
    return (
        2 * m * len(core.core_elements) >= (m + 2) * core.n
        and core.n >= 8 * m * (m + 1)
    )


def represent_via_core(core: CorePairing, m: int, l: int) -> IntRepresentation:
    """Write l as a sum of exactly 2(m+1) distinct core elements.

    Valid for l in [n(m+1), n(m+1) + n]: the offset q = l - n(m+1) is split
    into m+1 parts a_i <= floor(n/m) (greedy capping), and each target
    n + a_i is realized as u + v over fresh core elements.  Documented
    margin: core size >= (1/2 + 1/m) n with n >= 8m(m+1).
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    n = core.n
    lo = n * (m + 1)
    if not lo <= l <= lo + n:
        raise ValueError(f"l={l} outside [{lo}, {lo + n}]")
    in_margin = _core_margin(core, m)

    def fail(what: str) -> Exception:
        msg = f"{what} (n={n}, m={m}, l={l}, core size {len(core.core_elements)})"
        return ContractError(msg) if in_margin else ValueError(msg)

    cap = n // m
    q = l - lo
    parts_a: list[int] = []
    for _ in range(m + 1):
        take = min(q, cap)
        parts_a.append(take)
        q -= take
    if q > 0:
        raise fail("offset does not fit under the part cap")

    unused = set(core.core_elements)
    chosen: list[int] = []
    for a_i in parts_a:
        s_i = n + a_i
        found = False
        for u in sorted(unused):
            v = s_i - u
            if v != u and v in unused:
                chosen.extend((u, v))
                unused.discard(u)
                unused.discard(v)
                found = True
                break
        if not found:
            raise fail(f"no fresh element pair sums to {s_i}")
    rep = IntRepresentation.of(chosen)
    if rep.total != l or len(rep.parts) != 2 * (m + 1):
        raise ContractError("core representation failed validation")
    return rep


def core_interval_witness(core: CorePairing, m: int, x: int) -> IntRepresentation:
    """Write x as 2(m+1) core elements plus whole pairs, each worth n+1.

    Reduces x to x0 = n(m+1) + ((x - n(m+1)) mod (n+1)), represents x0 via
    ``represent_via_core``, and appends k = (x - x0)/(n+1) whole pairs that
    the reduction left untouched.  Under the documented margins the pair
    supply suffices for every x up to sum(core) - (n+1)m.
    """
    n = core.n
    lo = n * (m + 1)
    if x < lo:
        raise ValueError(f"x={x} below the covered interval start {lo}")
    if x > core.total:
        raise ValueError(f"x={x} exceeds the total core sum {core.total}")
    x0 = lo + (x - lo) % (n + 1)
    k = (x - x0) // (n + 1)
    rep = represent_via_core(core, m, x0)
    taken = set(rep.parts)
    whole = [pq for pq in core.pairs if pq[0] not in taken and pq[1] not in taken]
    if len(whole) < k:
        in_margin = _core_margin(core, m) and x <= core.total - (n + 1) * m
        msg = f"only {len(whole)} whole pairs left, need {k} (x={x}, n={n}, m={m})"
        raise ContractError(msg) if in_margin else ValueError(msg)
    parts = list(rep.parts) + [e for pq in whole[:k] for e in pq]
    out = IntRepresentation.of(parts)
    if out.total != x:
        raise ContractError("pair append produced a wrong total")
    return out


def build_family(kind: str, p: Modulus | int) -> ZpSet:
    """Named residue-set families.

    extremal-zsf     -- {1, ..., n(p)-1}: the canonical largest
                        zero-sum-free set.
    exceptional      -- {-2, 1, 3, 4, ..., n(p)} reduced mod p; only valid
                        when p = n(n+1)/2 - 1.  The only such prime is 5,
                        where -2 and 3 collide mod 5, so the construction
                        reports the collision as an error; it is kept for
                        contract completeness and pattern checks.
    small-incomplete -- {±1, ..., ±k} (plus k+1 when m is odd) realizing
                        the packing size m_of_p(p).  Its total norm is the
                        minimal possible for its size; note that at primes
                        where that total equals p-1 the set can still be
                        complete (the norm-interval argument needs total
                        <= p-2).
    """
    mod = p if isinstance(p, Modulus) else Modulus(p)
    if kind == "extremal-zsf":
        return ZpSet.of(range(1, n_of_p(mod)), mod)
    if kind == "exceptional":
        if not exceptional_check(mod):
            raise ValueError(
                f"p={mod.p} is not of the form n(n+1)/2 - 1; no exceptional family"
            )
        n = n_of_p(mod)
        return ZpSet.of([-2, 1] + list(range(3, n + 1)), mod)
    if kind == "small-incomplete":
        m = m_of_p(mod)
        k = m // 2
        vals = [v for i in range(1, k + 1) for v in (i, -i)]
        if m % 2 == 1:
            vals.append(k + 1)
        return ZpSet.of(vals, mod)
    raise ValueError(f"unknown family kind: {kind!r}")
