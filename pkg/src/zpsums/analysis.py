"""Dilation canonicalization and structural diagnostics of residue sets.

``best_dilation`` exhaustively scans all nonzero multipliers b and returns
the dilate minimizing either the zero-sum-free error terms (how far the
set is from fitting below p as positive integers) or the total norm (how
far from a norm packing).  This is the computational stand-in for the
partition arguments that exist only asymptotically.

``extremal_diagnostics`` decomposes a near-extremal candidate A relative
to the interval [1, n]: which interval elements are missing (h_list),
which outliers sit just below zero (B), which sit elsewhere (C), and the
balance D = sum(C) - sum(h_list) that a zero-sum construction must cancel.

``attempt_zero_sum_by_cancellation`` executes that construction: starting
from the identity  p = 1 + ... + (h-1) + (h+1) + ... + n  it swaps in the
outliers, then removes a small sub-collection to cancel the excess, trying
the sign-flip elements of B (and re-adding h) when the excess is negative.
Every returned witness is re-validated against the sumset engine.

``incomplete_diagnostics`` is the signed-representative bookkeeping used
for incompleteness analysis near sqrt(p).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import Modulus, NormStats, ZpSet, n_of_p, exceptional_check, signed_rep
from .errors import CapabilityError
from .sumsets import Witness, check_witness, subset_sums

__all__ = [
    "DilationReport",
    "ExtremalDiagnostics",
    "IncompleteDiagnostics",
    "EXCEPTIONAL_MARKER",
    "best_dilation",
    "extremal_diagnostics",
    "attempt_zero_sum_by_cancellation",
    "incomplete_diagnostics",
    "diagnostic_expectations",
    "split_counting_inequality",
    "DILATION_SCAN_LIMIT",
]

DILATION_SCAN_LIMIT = 10**7

# Marker returned by attempt_zero_sum_by_cancellation when the set is the
# sign-flipped extremal pattern (no zero sum exists; the pattern is the
# known second extremal shape).
EXCEPTIONAL_MARKER = "exceptional"


@dataclass(frozen=True)
class DilationReport:
    """Norm statistics of the best dilate found by the exhaustive scan.

    e1 = max(0, low_sum - p) and e2 = high_norm_sum measure the failure of
    b*A to be a set of positive integers summing below p (both zero iff it
    is); incomplete_error = max(0, total_norm - p) measures the failure to
    be a norm packing.
    """

    b: int
    stats: NormStats
    e1: int
    e2: int
    incomplete_error: int


def _scan_range(args):
    p, els, half, b_lo, b_hi = args
    e = np.asarray(els, dtype=np.int64)
    best_zsf = None  # (score, b, total, low)
    best_inc = None
    chunk = max(1, 4_000_000 // max(1, e.size)) if e.size else 1 << 20
    for start in range(b_lo, b_hi, chunk):
        bs = np.arange(start, min(start + chunk, b_hi), dtype=np.int64)
        if e.size:
            prod = bs[:, None] * e[None, :] % p
            norms = np.minimum(prod, p - prod)
            total = norms.sum(axis=1)
            low = np.where(prod <= half, prod, 0).sum(axis=1)
        else:
            total = np.zeros(bs.size, dtype=np.int64)
            low = total
        high = total - low
        zscore = np.maximum(low - p, 0) + high
        iz = int(np.argmin(zscore))
        ii = int(np.argmin(total))
        cz = (int(zscore[iz]), int(bs[iz]), int(total[iz]), int(low[iz]))
        ci = (int(total[ii]), int(bs[ii]), int(total[ii]), int(low[ii]))
        if best_zsf is None or cz < best_zsf:
            best_zsf = cz
        if best_inc is None or ci < best_inc:
            best_inc = ci
    return best_zsf, best_inc


def best_dilation(
    a: ZpSet,
    objective: str,
    scan_limit: int = DILATION_SCAN_LIMIT,
    jobs: int = 1,
) -> DilationReport:
    """Scan all b in [1, p-1] and return the report of the minimizer.

    objective 'zsf' minimizes e1 + e2; 'incomplete' minimizes total norm.
    Ties break toward the smallest b.  The scan is exact and O(p * |A|);
    above `scan_limit` it refuses (CapabilityError) rather than degrade.
    """
    if objective not in ("zsf", "incomplete"):
        raise ValueError(f"unknown objective {objective!r}")
    p = a.modulus.p
    if p > scan_limit:
        raise CapabilityError(
            f"dilation scan limited to p <= {scan_limit} (got p={p})"
        )
    half = a.modulus.half
    els = list(a.elements)
    if jobs > 1:
        step = (p - 1 + jobs - 1) // jobs
        ranges = [
            (p, els, half, 1 + i * step, min(1 + (i + 1) * step, p))
            for i in range(jobs)
            if 1 + i * step < p
        ]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_scan_range, ranges))
    else:
        results = [_scan_range((p, els, half, 1, p))]
    best_zsf = min(r[0] for r in results)
    best_inc = min(r[1] for r in results)
    _, b, total, low = best_zsf if objective == "zsf" else best_inc
    stats = NormStats(total_norm=total, low_sum=low, high_norm_sum=total - low)
    return DilationReport(
        b=b,
        stats=stats,
        e1=max(0, low - p),
        e2=total - low,
        incomplete_error=max(0, total - p),
    )


@dataclass(frozen=True)
class ExtremalDiagnostics:
    """Decomposition of A relative to the interval [1, n], n = n_of_p(p).

    a1: the elements of A lying in [1, n] (as integers).
    a2: the rest (residues above n).
    t:  how many of [1, n] are missing from A; h_list: those values.
    b_set: elements of a2 whose signed representative lies in [-2t-2, -1].
    c_list: the remaining a2 elements (integer residues, ascending); s = |C|.
    h:  the unique value with 1 + ... + n - h = p.
    d_value: sum(c_list) - sum(h_list), the excess to cancel.
    base_summands: (A1 \\ {h}) together with c_list — the actual elements
        of A available to the cancellation construction.
    lam: |A| / sqrt(2p), the size relative to the extremal scale.
    """

    modulus: Modulus
    elements: tuple[int, ...]
    n: int
    a1: tuple[int, ...]
    a2: tuple[int, ...]
    t: int
    h_list: tuple[int, ...]
    b_set: tuple[int, ...]
    c_list: tuple[int, ...]
    s: int
    h: int
    d_value: int
    base_summands: tuple[int, ...]
    lam: float


def extremal_diagnostics(a: ZpSet) -> ExtremalDiagnostics:
    p = a.modulus.p
    n = n_of_p(p)
    a1 = tuple(e for e in a.elements if 1 <= e <= n)
    a2 = tuple(e for e in a.elements if e == 0 or e > n)
    t = n - len(a1)
    h_list = tuple(v for v in range(1, n + 1) if v not in set(a1))
    lo = -2 * t - 2
    b_set = tuple(e for e in a2 if lo <= signed_rep(e, a.modulus) <= -1)
    c_list = tuple(e for e in a2 if e not in set(b_set))
    h = n * (n + 1) // 2 - p
    d_value = sum(c_list) - sum(h_list)
    base = tuple(sorted([e for e in a1 if e != h] + list(c_list)))
    return ExtremalDiagnostics(
        modulus=a.modulus,
        elements=a.elements,
        n=n,
        a1=a1,
        a2=a2,
        t=t,
        h_list=h_list,
        b_set=b_set,
        c_list=c_list,
        s=len(c_list),
        h=h,
        d_value=d_value,
        base_summands=base,
        lam=len(a.elements) / math.sqrt(2 * p),
    )


def _subset_sum_first_reach(cands: list[int], target: int) -> list[int] | None:
    """Deterministic subset of `cands` (values, with multiplicity of use 1)
    summing exactly to target, or None.  First-reach DP with backpointers."""
    if target == 0:
        return []
    if target < 0:
        return None
    limit = sum(cands)
    if target > limit:
        return None
    back = [-1] * (target + 1)  # index of candidate that first reached sum
    back_prev = [0] * (target + 1)
    reach = [False] * (target + 1)
    reach[0] = True
    for idx, v in enumerate(cands):
        if v <= 0:
            continue
        # classic 0/1 knapsack order: descend to avoid reuse
        for smv in range(target, v - 1, -1):
            if not reach[smv] and reach[smv - v]:
                reach[smv] = True
                back[smv] = idx
                back_prev[smv] = smv - v
    if not reach[target]:
        return None
    out = []
    cur = target
    while cur != 0:
        i = back[cur]
        out.append(cands[i])
        cur = back_prev[cur]
    return out


def attempt_zero_sum_by_cancellation(diag: ExtremalDiagnostics):
    """Try to exhibit a zero-sum subset by the interval-swap construction.

    Returns a validated Witness, EXCEPTIONAL_MARKER when A is exactly the
    sign-flipped pattern {-2, 1, 3, ..., n} at p = n(n+1)/2 - 1, or None.

    Strategy: the base collection (A1 \\ {h}) + C sums to p + excess for a
    small excess; the attempt removes a small sub-collection with integer
    sum congruent to the excess.  When the excess is negative or stuck, it
    adjoins subsets of B (whose signed representatives are negative) and
    re-adds h, then retries the removal.  Deterministic; None means this
    particular strategy found nothing (it does NOT certify zero-sum-
    freeness — the search module does that).
    """
    p = diag.modulus.p
    mod = diag.modulus

    if exceptional_check(mod):
        pattern = sorted({v % p for v in [-2, 1] + list(range(3, diag.n + 1))})
        if list(diag.elements) == pattern:
            return EXCEPTIONAL_MARKER

    a_set = ZpSet(mod, diag.elements)
    base = list(diag.base_summands)
    if not base:
        return None
    h_in_a1 = diag.h in diag.a1

    # Enumerate B additions: all subsets when B is small, else up to pairs.
    b_resids = list(diag.b_set)
    if len(b_resids) <= 12:
        b_subsets = [
            list(c) for r in range(len(b_resids) + 1) for c in combinations(b_resids, r)
        ]
    else:
        b_subsets = [[]]
        b_subsets += [[x] for x in b_resids]
        b_subsets += [list(c) for c in combinations(b_resids, 2)]

    h_variants = [False, True] if h_in_a1 else [False]

    for bsub in b_subsets:
        for add_h in h_variants:
            summands = list(base) + bsub + ([diag.h] if add_h else [])
            total = sum(summands)
            excess = total % p
            if total == 0:
                continue
            if excess == 0:
                w = Witness(ZpSet.of(summands, mod), 0)
                if check_witness(a_set, w):
                    return w
                continue
            # Remove a sub-collection with integer sum congruent to the
            # excess.  Any subset of the pool may be peeled, so if the pool
            # contains a zero-sum subset at all, some target below the pool
            # total is reachable and the attempt succeeds.
            cands = sorted(summands)
            for target in range(excess, total, p):
                removal = _subset_sum_first_reach(cands, target)
                if removal is None:
                    continue
                remaining = list(summands)
                for v in removal:
                    remaining.remove(v)
                if not remaining:
                    continue
                w = Witness(ZpSet.of(remaining, mod), 0)
                if check_witness(a_set, w):
                    return w
    return None


@dataclass(frozen=True)
class IncompleteDiagnostics:
    """Signed-representative split of A around n = floor(sqrt(p)).

    a1_pos: signed representatives in [0, n];  a1_neg: in [-n, -1];
    a2_pos: above n;  a2_neg: below -n.  t1_pos/t1_neg/t1 count the first
    two (the counts driving the incompleteness argument).
    """

    modulus: Modulus
    n: int
    a1_pos: tuple[int, ...]
    a1_neg: tuple[int, ...]
    a2_pos: tuple[int, ...]
    a2_neg: tuple[int, ...]
    t1_pos: int
    t1_neg: int
    t1: int


def incomplete_diagnostics(a: ZpSet) -> IncompleteDiagnostics:
    p = a.modulus.p
    n = math.isqrt(p)
    signed = sorted(signed_rep(e, a.modulus) for e in a.elements)
    a1_pos = tuple(v for v in signed if 0 <= v <= n)
    a1_neg = tuple(v for v in signed if -n <= v <= -1)
    a2_pos = tuple(v for v in signed if v > n)
    a2_neg = tuple(v for v in signed if v < -n)
    return IncompleteDiagnostics(
        modulus=a.modulus,
        n=n,
        a1_pos=a1_pos,
        a1_neg=a1_neg,
        a2_pos=a2_pos,
        a2_neg=a2_neg,
        t1_pos=len(a1_pos),
        t1_neg=len(a1_neg),
        t1=len(a1_pos) + len(a1_neg),
    )


def diagnostic_expectations(diag: ExtremalDiagnostics) -> dict[str, bool]:
    """The reported (never asserted) smallness expectations for a
    near-extremal zero-sum-free set: the excess is small, B is small, and
    the subset sums of B stay confined near zero.  Proven only for large p,
    so callers report violations as findings instead of failing."""
    p = diag.modulus.p
    n, t = diag.n, diag.t
    q = p - (n + 1) * (n // 2 - t - 1)
    out = {
        "d_small": diag.d_value < 2 * (t + 1) + 3,
        "b_small": len(diag.b_set) ** 2 <= 4 * (t + 1),
        "sb_confined": True,
    }
    if diag.b_set:
        sb = subset_sums(ZpSet.of(diag.b_set, diag.modulus))
        confined = all(abs(signed_rep(r, diag.modulus)) < q for r in sb.members())
        out["sb_confined"] = confined
    return out


def split_counting_inequality(elements, p: int) -> bool:
    """The counting inequality behind the interval split: for distinct
    positive integers with total < p, l of them in [1, n] and k above n
    (n = n_of_p(p)), (l + n + 1)(n - l) > (2n + k) k holds."""
    els = sorted(set(int(e) for e in elements))
    if len(els) != len(list(elements)) or any(e <= 0 for e in els):
        raise ValueError("elements must be distinct positive integers")
    if sum(els) >= p:
        raise ValueError("total must be below p")
    n = n_of_p(p)
    l = sum(1 for e in els if e <= n)
    k = len(els) - l
    return (l + n + 1) * (n - l) > (2 * n + k) * k
