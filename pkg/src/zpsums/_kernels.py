"""Numba-compiled depth-first enumeration of sum-avoiding sets.

The search problem: enumerate subsets A of Z_p \\ {0} (listed in ascending
residue order) such that no nonempty subset of A sums to a forbidden
residue f.  f = 0 gives zero-sum-free sets; f != 0 gives sets whose sumset
misses f (which are exactly the incomplete sets, up to dilation).

State per node is a pair of p-bit maps packed into uint64 words:

  S  -- the subset sums of the chosen prefix.
  L  -- the "still addable" map: L[x] = 1 iff adding x would NOT create a
        subset summing to f, i.e. x is outside (f - S) mod p and x != f.
        L is maintained over the whole residue universe (including bits at
        or below the last chosen element and bit 0) because the recurrence
        below consults arbitrary positions; the candidate scan separately
        restricts to bits strictly above the last chosen element.

Adding element c updates both maps by cyclic rotation (rot(X, a) has bit x
equal to bit (x - a) mod p of X):

  S' = S | rot(S, c) | bit(c)
  L' = L & rot(L, p - c) & ~bit((f - c) mod p)

The L recurrence is the pair lookahead: bit x of rot(L, p-c) is bit
(x + c) of L, so L' excludes any x for which {c, x} together would reach
f through the current sums.  Counting L' above c therefore gives the exact
number of elements addable after c, one step earlier than a naive check.

Pruning (all exhaustiveness-safe):

  * legality: candidates scanned from L only;
  * growth cap: each added element grows |S| by at least 1 (if
    S + c == S and c in S then S would be all of Z_p), and |S| <= p - 1
    for an f-avoiding set, so at most p - 1 - |S| more elements fit;
  * pair cap: a branch with k more elements added has, by the
    Dias da Silva-Hamidoune bound on h-fold restricted sumsets combined
    with Cauchy-Davenport, |S_final| >= min(p, |S| + floor(k^2/4)); an
    f-avoiding set needs |S_final| <= p - 1, so k is capped by the largest
    k with floor(k^2/4) <= p - 1 - |S|;
  * headroom: a branch is cut when size + min(addable, cap) cannot reach
    the floor (the incumbent + 1 in max-search mode, the collection
    threshold in enumerate mode).

The driver returns (best, nodes, truncated, n_kept) and fills the caller's
arrays: `hist[s]` counts visited sets of size s >= collect_target
(enumerate mode), `out`/`out_sizes` keep up to `keep` of them.  `nodes`
counts candidate evaluations; if it reaches `node_budget` the search stops
with truncated = 1 (results are then lower bounds, not proofs).

Three compiled implementations share this exact logic and visit order:
a single-word kernel (p <= 63) and a two-word kernel (p <= 127) that keep
both bitmaps in scalar registers, and a generic word-array kernel for
larger moduli.  `search_avoid` picks the narrowest one; `impl=` forces a
specific kernel so tests can cross-validate them against each other
(equal inputs must give identical best/nodes/hist/sets).
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64, int64

# Depth layout: no f-avoiding set in the supported search range can exceed
# this many elements (the pair cap gives k <= 2*sqrt(p) + 1, and searches
# are only run for p <= a few thousand).  Guarded at runtime anyway.
MAX_DEPTH = 128

_U1 = uint64(1)
_M1 = uint64(0x5555555555555555)
_M2 = uint64(0x3333333333333333)
_M4 = uint64(0x0F0F0F0F0F0F0F0F)
_H01 = uint64(0x0101010101010101)


@njit(uint64(uint64), cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> _U1) & _M1)
    x = (x & _M2) + ((x >> uint64(2)) & _M2)
    x = (x + (x >> uint64(4))) & _M4
    return (x * _H01) >> uint64(56)


@njit(int64(uint64), cache=True, inline="always")
def _ctz(x):
    # number of trailing zeros, x != 0
    return int64(_popcount((x & (~x + _U1)) - _U1))


@njit(int64(int64), cache=True, inline="always")
def _pair_cap(slack):
    # largest k >= 0 with floor(k^2/4) = floor(k/2)*ceil(k/2) <= slack
    if slack <= 0:
        return 0
    j = int64(np.sqrt(np.float64(slack)))
    while j * j > slack:
        j -= 1
    while (j + 1) * (j + 1) <= slack:
        j += 1
    # k = 2j has cost j^2 <= slack; k = 2j+1 has cost j(j+1)
    if j * (j + 1) <= slack:
        return 2 * j + 1
    return 2 * j


@njit(cache=True, inline="always")
def _rot_into(dst, src, a, p, nw, topmask):
    """dst = src rotated up by a on the p-bit ring (bit x <- bit (x-a) mod p).

    a must satisfy 1 <= a <= p - 1.  Implemented as the OR of (src << a)
    and (src >> (p - a)) over the low p bits; src's top word must already
    be clean above bit p (maintained invariant).
    """
    wsh = a >> 6
    bsh = uint64(a & 63)
    if bsh == uint64(0):
        for j in range(nw - 1, -1, -1):
            k = j - wsh
            dst[j] = src[k] if k >= 0 else uint64(0)
    else:
        inv = uint64(64) - bsh
        for j in range(nw - 1, -1, -1):
            k = j - wsh
            lo = src[k] << bsh if k >= 0 else uint64(0)
            if k - 1 >= 0:
                lo |= src[k - 1] >> inv
            dst[j] = lo
    d = p - a
    wd = d >> 6
    bd = uint64(d & 63)
    if bd == uint64(0):
        for j in range(nw):
            k = j + wd
            if k < nw:
                dst[j] |= src[k]
    else:
        inv = uint64(64) - bd
        for j in range(nw):
            k = j + wd
            if k < nw:
                hi = src[k] >> bd
                if k + 1 < nw:
                    hi |= src[k + 1] << inv
                dst[j] |= hi
    dst[nw - 1] &= topmask


@njit(cache=True)
def _search_avoid(
    p,
    f,
    prefix,
    floor0,
    enumerate_mode,
    collect_target,
    node_budget,
    out,
    out_sizes,
    hist,
):
    """Core DFS.  See module docstring.

    prefix: int64[:] forced initial elements (ascending); may be empty.
    floor0: only branches that can reach this size are explored.  In
        max-search mode (enumerate_mode == 0) the floor rises to best + 1
        as larger sets are found.
    Returns (best, nodes, truncated, n_kept):
        best    -- largest f-avoiding set size visited (including prefix
                   if the prefix itself is valid), -1 if prefix invalid;
        nodes   -- candidate evaluations performed;
        truncated -- 1 if the node budget stopped the search;
        n_kept  -- rows of `out` filled (enumerate mode only).
    """
    nw = (p + 63) >> 6
    top = p - ((nw - 1) << 6)
    topmask = ~uint64(0) if top == 64 else (_U1 << uint64(top)) - _U1

    smap = np.zeros((MAX_DEPTH, nw), dtype=np.uint64)
    lmap = np.zeros((MAX_DEPTH, nw), dtype=np.uint64)
    pcs = np.zeros(MAX_DEPTH, dtype=np.int64)  # |S| per level
    wi = np.zeros(MAX_DEPTH, dtype=np.int64)  # scan word index per level
    ww = np.zeros(MAX_DEPTH, dtype=np.uint64)  # scan word remainder
    path = np.zeros(MAX_DEPTH, dtype=np.int64)
    tmp = np.zeros(nw, dtype=np.uint64)
    rotbuf = np.zeros(nw, dtype=np.uint64)

    base = prefix.shape[0]
    keep = out.shape[0]

    # Root state: S empty, L = everything except f (bit 0 stays set in L —
    # it encodes "0 not in (f - S)", used by the rotation recurrence; the
    # candidate scan never reaches bit 0 because candidates are > last).
    for j in range(nw):
        smap[0, j] = uint64(0)
        lmap[0, j] = topmask if j == nw - 1 else ~uint64(0)
    lmap[0, f >> 6] &= ~(_U1 << uint64(f & 63))
    pcs[0] = 0

    # Apply the forced prefix, validating as we go.
    last = 0
    for i in range(base):
        c = prefix[i]
        if c <= last or c >= p:
            return -1, 0, 0, 0
        if (lmap[0, c >> 6] >> uint64(c & 63)) & _U1 == uint64(0):
            return -1, 0, 0, 0
        _rot_into(rotbuf, lmap[0], p - c, p, nw, topmask)
        for j in range(nw):
            lmap[0, j] &= rotbuf[j]
        fc = (f - c) % p
        lmap[0, fc >> 6] &= ~(_U1 << uint64(fc & 63))
        _rot_into(rotbuf, smap[0], c, p, nw, topmask)
        for j in range(nw):
            smap[0, j] |= rotbuf[j]
        smap[0, c >> 6] |= _U1 << uint64(c & 63)
        last = c
        path[i] = c
    pc0 = int64(0)
    for j in range(nw):
        pc0 += int64(_popcount(smap[0, j]))
    pcs[0] = pc0

    best = base if base > 0 else 0
    floor = floor0
    if enumerate_mode == 0 and best + 1 > floor:
        floor = best + 1
    nodes = int64(0)
    truncated = int64(0)
    n_kept = int64(0)

    if enumerate_mode != 0 and base >= collect_target:
        hist[base] += 1
        if n_kept < keep:
            for i in range(base):
                out[n_kept, i] = path[i]
            out_sizes[n_kept] = base
            n_kept += 1

    # Initialize level-0 scan position just above the last prefix element.
    d = 0
    start = last + 1
    wi[0] = start >> 6
    ww[0] = lmap[0, wi[0]] & (~uint64(0) << uint64(start & 63))

    while d >= 0:
        sz = base + d
        # Node-level reachability: even with unlimited candidates, the
        # growth and pair caps bound future additions.
        slack = p - 1 - pcs[d]
        capn = _pair_cap(slack)
        if capn > slack:
            capn = slack
        if sz + capn < floor:
            d -= 1
            continue

        advanced = False
        while True:
            # Next candidate from the per-level scan state.
            w = ww[d]
            while w == uint64(0):
                wi[d] += 1
                if wi[d] >= nw:
                    break
                w = lmap[d, wi[d]]
            if wi[d] >= nw:
                break
            c = (wi[d] << 6) + _ctz(w)
            ww[d] = w & (w - _U1)

            nodes += 1
            if nodes >= node_budget:
                truncated = 1
                d = -1
                break

            csz = sz + 1  # child size
            if enumerate_mode != 0 and csz >= collect_target:
                hist[csz] += 1
                if n_kept < keep:
                    for i in range(sz):
                        out[n_kept, i] = path[i]
                    out[n_kept, sz] = c
                    out_sizes[n_kept] = csz
                    n_kept += 1
            if csz > best:
                best = csz
                if enumerate_mode == 0 and best + 1 > floor:
                    floor = best + 1

            if base + d + 2 >= MAX_DEPTH:
                truncated = 1
                d = -1
                break

            # Child legality map via the pair-lookahead recurrence.
            _rot_into(rotbuf, lmap[d], p - c, p, nw, topmask)
            lrow = lmap[d + 1]
            prow = lmap[d]
            for j in range(nw):
                lrow[j] = prow[j] & rotbuf[j]
            fc = (f - c) % p
            lrow[fc >> 6] &= ~(_U1 << uint64(fc & 63))

            # Exact number of addable elements after c (bits above c).
            cw = c >> 6
            cb = uint64(c & 63)
            avail = int64(0)
            hw = lrow[cw] & (~uint64(0) << cb) & ~(_U1 << cb)
            avail += int64(_popcount(hw))
            for j in range(cw + 1, nw):
                avail += int64(_popcount(lrow[j]))

            need = floor - csz
            if need < 1:
                need = 1  # even a hit node is only worth entering if it has children
            if avail < need:
                continue

            # Build child sums and apply the exact caps before descending.
            _rot_into(rotbuf, smap[d], c, p, nw, topmask)
            srow = smap[d + 1]
            qrow = smap[d]
            pc = int64(0)
            for j in range(nw):
                v = qrow[j] | rotbuf[j]
                srow[j] = v
            srow[cw] |= _U1 << cb
            for j in range(nw):
                pc += int64(_popcount(srow[j]))
            cslack = p - 1 - pc
            cap = _pair_cap(cslack)
            if cap > cslack:
                cap = cslack
            if cap > avail:
                cap = avail
            if cap < 1 or csz + cap < floor:
                continue

            # Descend.
            path[sz] = c
            pcs[d + 1] = pc
            d += 1
            wi[d] = cw
            hw2 = lrow[cw] & (~uint64(0) << cb) & ~(_U1 << cb)
            ww[d] = hw2
            advanced = True
            break

        if d < 0:
            break
        if not advanced:
            d -= 1

    return best, nodes, truncated, n_kept


@njit(cache=True)
def _search_avoid_w1(
    p,
    f,
    prefix,
    floor0,
    enumerate_mode,
    collect_target,
    node_budget,
    out,
    out_sizes,
    hist,
):
    """Single-word variant of _search_avoid for p <= 63.

    Identical logic and visit order; both bitmaps live in uint64 scalars
    and the ring rotation is ((x << a) | (x >> (p - a))) & pmask.
    """
    pmask = (_U1 << uint64(p)) - _U1
    smap = np.zeros(MAX_DEPTH, dtype=np.uint64)
    lmap = np.zeros(MAX_DEPTH, dtype=np.uint64)
    rem = np.zeros(MAX_DEPTH, dtype=np.uint64)  # unscanned candidate bits
    pcs = np.zeros(MAX_DEPTH, dtype=np.int64)
    path = np.zeros(MAX_DEPTH, dtype=np.int64)

    base = prefix.shape[0]
    keep = out.shape[0]

    s = uint64(0)
    l = pmask & ~(_U1 << uint64(f))
    last = 0
    for i in range(base):
        c = prefix[i]
        if c <= last or c >= p:
            return -1, 0, 0, 0
        if (l >> uint64(c)) & _U1 == uint64(0):
            return -1, 0, 0, 0
        a = p - c
        l &= ((l << uint64(a)) | (l >> uint64(p - a))) & pmask
        l &= ~(_U1 << uint64((f - c) % p))
        s = (s | ((s << uint64(c)) | (s >> uint64(p - c)))) & pmask
        s |= _U1 << uint64(c)
        last = c
        path[i] = c
    smap[0] = s
    lmap[0] = l
    pcs[0] = int64(_popcount(s))

    best = base if base > 0 else 0
    floor = floor0
    if enumerate_mode == 0 and best + 1 > floor:
        floor = best + 1
    nodes = int64(0)
    truncated = int64(0)
    n_kept = int64(0)

    if enumerate_mode != 0 and base >= collect_target:
        hist[base] += 1
        if n_kept < keep:
            for i in range(base):
                out[n_kept, i] = path[i]
            out_sizes[n_kept] = base
            n_kept += 1

    d = 0
    rem[0] = lmap[0] & (~uint64(0) << uint64(last + 1))

    while d >= 0:
        sz = base + d
        slack = p - 1 - pcs[d]
        capn = _pair_cap(slack)
        if capn > slack:
            capn = slack
        if sz + capn < floor:
            d -= 1
            continue

        advanced = False
        while True:
            w = rem[d]
            if w == uint64(0):
                break
            c = _ctz(w)
            rem[d] = w & (w - _U1)

            nodes += 1
            if nodes >= node_budget:
                truncated = 1
                d = -1
                break

            csz = sz + 1
            if enumerate_mode != 0 and csz >= collect_target:
                hist[csz] += 1
                if n_kept < keep:
                    for i in range(sz):
                        out[n_kept, i] = path[i]
                    out[n_kept, sz] = c
                    out_sizes[n_kept] = csz
                    n_kept += 1
            if csz > best:
                best = csz
                if enumerate_mode == 0 and best + 1 > floor:
                    floor = best + 1

            if base + d + 2 >= MAX_DEPTH:
                truncated = 1
                d = -1
                break

            cl = lmap[d]
            a = p - c
            nl = cl & ((cl << uint64(a)) | (cl >> uint64(p - a))) & pmask
            nl &= ~(_U1 << uint64((f - c) % p))

            nrem = nl & ((~uint64(0) << uint64(c)) ^ (_U1 << uint64(c)))
            avail = int64(_popcount(nrem))

            need = floor - csz
            if need < 1:
                need = 1
            if avail < need:
                continue

            cs = smap[d]
            ns = (cs | ((cs << uint64(c)) | (cs >> uint64(p - c)))) & pmask
            ns |= _U1 << uint64(c)
            pc = int64(_popcount(ns))
            cslack = p - 1 - pc
            cap = _pair_cap(cslack)
            if cap > cslack:
                cap = cslack
            if cap > avail:
                cap = avail
            if cap < 1 or csz + cap < floor:
                continue

            path[sz] = c
            pcs[d + 1] = pc
            smap[d + 1] = ns
            lmap[d + 1] = nl
            d += 1
            rem[d] = nrem
            advanced = True
            break

        if d < 0:
            break
        if not advanced:
            d -= 1

    return best, nodes, truncated, n_kept


@njit(inline="always")
def _rot2(x0, x1, a, p, topmask):
    # ((X << a) | (X >> (p - a))) over the low p bits, 64 < p <= 128.
    b = p - a
    if a < 64:
        sa = uint64(a)
        la0 = x0 << sa
        la1 = (x1 << sa) | (x0 >> (uint64(64) - sa))
    else:
        la0 = uint64(0)
        la1 = x0 << uint64(a - 64)
    if b < 64:
        sb = uint64(b)
        rb0 = (x0 >> sb) | (x1 << (uint64(64) - sb))
        rb1 = x1 >> sb
    else:
        rb0 = x1 >> uint64(b - 64)
        rb1 = uint64(0)
    return la0 | rb0, (la1 | rb1) & topmask


@njit(cache=True)
def _search_avoid_w2(
    p,
    f,
    prefix,
    floor0,
    enumerate_mode,
    collect_target,
    node_budget,
    out,
    out_sizes,
    hist,
):
    """Two-word variant of _search_avoid for 64 < p <= 127."""
    topmask = (_U1 << uint64(p - 64)) - _U1
    s0a = np.zeros(MAX_DEPTH, dtype=np.uint64)
    s1a = np.zeros(MAX_DEPTH, dtype=np.uint64)
    l0a = np.zeros(MAX_DEPTH, dtype=np.uint64)
    l1a = np.zeros(MAX_DEPTH, dtype=np.uint64)
    rem0 = np.zeros(MAX_DEPTH, dtype=np.uint64)
    rem1 = np.zeros(MAX_DEPTH, dtype=np.uint64)
    pcs = np.zeros(MAX_DEPTH, dtype=np.int64)
    path = np.zeros(MAX_DEPTH, dtype=np.int64)

    base = prefix.shape[0]
    keep = out.shape[0]

    s0 = uint64(0)
    s1 = uint64(0)
    l0 = ~uint64(0)
    l1 = topmask
    if f < 64:
        l0 &= ~(_U1 << uint64(f))
    else:
        l1 &= ~(_U1 << uint64(f - 64))
    last = 0
    for i in range(base):
        c = prefix[i]
        if c <= last or c >= p:
            return -1, 0, 0, 0
        if c < 64:
            hit = (l0 >> uint64(c)) & _U1
        else:
            hit = (l1 >> uint64(c - 64)) & _U1
        if hit == uint64(0):
            return -1, 0, 0, 0
        r0, r1 = _rot2(l0, l1, p - c, p, topmask)
        l0 &= r0
        l1 &= r1
        fc = (f - c) % p
        if fc < 64:
            l0 &= ~(_U1 << uint64(fc))
        else:
            l1 &= ~(_U1 << uint64(fc - 64))
        r0, r1 = _rot2(s0, s1, c, p, topmask)
        s0 |= r0
        s1 |= r1
        if c < 64:
            s0 |= _U1 << uint64(c)
        else:
            s1 |= _U1 << uint64(c - 64)
        last = c
        path[i] = c
    s0a[0] = s0
    s1a[0] = s1
    l0a[0] = l0
    l1a[0] = l1
    pcs[0] = int64(_popcount(s0)) + int64(_popcount(s1))

    best = base if base > 0 else 0
    floor = floor0
    if enumerate_mode == 0 and best + 1 > floor:
        floor = best + 1
    nodes = int64(0)
    truncated = int64(0)
    n_kept = int64(0)

    if enumerate_mode != 0 and base >= collect_target:
        hist[base] += 1
        if n_kept < keep:
            for i in range(base):
                out[n_kept, i] = path[i]
            out_sizes[n_kept] = base
            n_kept += 1

    d = 0
    start = last + 1
    if start < 64:
        rem0[0] = l0 & (~uint64(0) << uint64(start))
        rem1[0] = l1
    else:
        rem0[0] = uint64(0)
        rem1[0] = l1 & (~uint64(0) << uint64(start - 64))

    while d >= 0:
        sz = base + d
        slack = p - 1 - pcs[d]
        capn = _pair_cap(slack)
        if capn > slack:
            capn = slack
        if sz + capn < floor:
            d -= 1
            continue

        advanced = False
        while True:
            w0 = rem0[d]
            if w0 != uint64(0):
                c = _ctz(w0)
                rem0[d] = w0 & (w0 - _U1)
            else:
                w1 = rem1[d]
                if w1 == uint64(0):
                    break
                c = 64 + _ctz(w1)
                rem1[d] = w1 & (w1 - _U1)

            nodes += 1
            if nodes >= node_budget:
                truncated = 1
                d = -1
                break

            csz = sz + 1
            if enumerate_mode != 0 and csz >= collect_target:
                hist[csz] += 1
                if n_kept < keep:
                    for i in range(sz):
                        out[n_kept, i] = path[i]
                    out[n_kept, sz] = c
                    out_sizes[n_kept] = csz
                    n_kept += 1
            if csz > best:
                best = csz
                if enumerate_mode == 0 and best + 1 > floor:
                    floor = best + 1

            if base + d + 2 >= MAX_DEPTH:
                truncated = 1
                d = -1
                break

            cl0 = l0a[d]
            cl1 = l1a[d]
            r0, r1 = _rot2(cl0, cl1, p - c, p, topmask)
            nl0 = cl0 & r0
            nl1 = cl1 & r1
            fc = (f - c) % p
            if fc < 64:
                nl0 &= ~(_U1 << uint64(fc))
            else:
                nl1 &= ~(_U1 << uint64(fc - 64))

            if c < 64:
                cb = uint64(c)
                nr0 = nl0 & ((~uint64(0) << cb) ^ (_U1 << cb))
                nr1 = nl1
            else:
                cb = uint64(c - 64)
                nr0 = uint64(0)
                nr1 = nl1 & ((~uint64(0) << cb) ^ (_U1 << cb))
            avail = int64(_popcount(nr0)) + int64(_popcount(nr1))

            need = floor - csz
            if need < 1:
                need = 1
            if avail < need:
                continue

            cs0 = s0a[d]
            cs1 = s1a[d]
            r0, r1 = _rot2(cs0, cs1, c, p, topmask)
            ns0 = cs0 | r0
            ns1 = cs1 | r1
            if c < 64:
                ns0 |= _U1 << uint64(c)
            else:
                ns1 |= _U1 << uint64(c - 64)
            pc = int64(_popcount(ns0)) + int64(_popcount(ns1))
            cslack = p - 1 - pc
            cap = _pair_cap(cslack)
            if cap > cslack:
                cap = cslack
            if cap > avail:
                cap = avail
            if cap < 1 or csz + cap < floor:
                continue

            path[sz] = c
            pcs[d + 1] = pc
            s0a[d + 1] = ns0
            s1a[d + 1] = ns1
            l0a[d + 1] = nl0
            l1a[d + 1] = nl1
            d += 1
            rem0[d] = nr0
            rem1[d] = nr1
            advanced = True
            break

        if d < 0:
            break
        if not advanced:
            d -= 1

    return best, nodes, truncated, n_kept


def search_avoid(
    p: int,
    forbidden: int,
    prefix=(),
    floor: int = 1,
    enumerate_sizes_from: int | None = None,
    node_budget: int = 10**9,
    keep: int = 64,
    impl: str = "auto",
):
    """Python-facing wrapper around the compiled DFS.

    Returns a dict with keys: best, nodes, truncated, sets (list of tuples,
    enumerate mode only), hist (size -> count of visited sets, enumerate
    mode only).

    impl selects the kernel: "auto" picks the narrowest fit, "words1"
    (p <= 63), "words2" (p <= 127) and "generic" force one for
    cross-validation and benchmarks.
    """
    if p < 3:
        raise ValueError("p must be at least 3")
    if impl == "auto":
        impl = "words1" if p <= 63 else ("words2" if p <= 127 else "generic")
    if impl == "words1":
        if p > 63:
            raise ValueError("words1 kernel requires p <= 63")
        kern = _search_avoid_w1
    elif impl == "words2":
        if p > 127:
            raise ValueError("words2 kernel requires p <= 127")
        kern = _search_avoid_w2
    elif impl == "generic":
        kern = _search_avoid
    else:
        raise ValueError(f"unknown impl {impl!r}")
    f = forbidden % p
    pre = np.asarray(list(prefix), dtype=np.int64)
    enum = enumerate_sizes_from is not None
    target = int(enumerate_sizes_from) if enum else 0
    out = np.zeros((keep if enum else 1, MAX_DEPTH), dtype=np.int64)
    out_sizes = np.zeros(out.shape[0], dtype=np.int64)
    hist = np.zeros(MAX_DEPTH, dtype=np.int64)
    best, nodes, truncated, n_kept = kern(
        int64(p),
        int64(f),
        pre,
        int64(floor),
        int64(1 if enum else 0),
        int64(target),
        int64(node_budget),
        out,
        out_sizes,
        hist,
    )
    if best < 0:
        raise ValueError("prefix is not ascending / not sum-avoiding")
    sets = []
    for i in range(n_kept):
        sets.append(tuple(int(x) for x in out[i, : out_sizes[i]]))
    return {
        "best": int(best),
        "nodes": int(nodes),
        "truncated": bool(truncated),
        "sets": sets,
        "hist": {s: int(hist[s]) for s in range(MAX_DEPTH) if hist[s] > 0},
    }


def search_avoid_py(p: int, forbidden: int, prefix=()):
    """Pure-Python mirror used as an oracle in tests (p <= 31 intended).

    Enumerates every f-avoiding subset with plain big-int bitmaps and NO
    pruning beyond legality, returning (best, count_by_size, sets).  The
    compiled kernel's pruned results must agree exactly.
    """
    f = forbidden % p
    mask = (1 << p) - 1

    def rot(x: int, a: int) -> int:
        return ((x << a) | (x >> (p - a))) & mask

    counts: dict[int, int] = {}
    sets: list[tuple[int, ...]] = []
    best = 0

    s0 = 0
    legal0 = mask & ~(1 << f)
    pathbase: list[int] = []
    for c in prefix:
        if not (0 < c < p) or not (legal0 >> c) & 1:
            raise ValueError("prefix is not sum-avoiding")
        legal0 &= rot(legal0, p - c)
        legal0 &= ~(1 << ((f - c) % p))
        s0 = s0 | rot(s0, c) | (1 << c)
        pathbase.append(c)

    def walk(s: int, legal: int, last: int, path: list[int]) -> None:
        nonlocal best
        k = len(path)
        counts[k] = counts.get(k, 0) + 1
        sets.append(tuple(path))
        if k > best:
            best = k
        for c in range(last + 1, p):
            if (legal >> c) & 1:
                nlegal = legal & rot(legal, p - c) & ~(1 << ((f - c) % p))
                walk(s | rot(s, c) | (1 << c), nlegal, c, path + [c])

    walk(s0, legal0, pathbase[-1] if pathbase else 0, pathbase)
    return best, counts, sets
