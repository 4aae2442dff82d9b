from __future__ import annotations

import pytest

from zpsums._kernels import search_avoid
from zpsums.core import Modulus, ZpSet, dilate, n_of_p
from zpsums.errors import ContractError
from zpsums.search import (
    classify_extremal_zsf,
    exceptional_prime_scan,
    max_incomplete,
    max_zero_sum_free,
)
from zpsums.sumsets import is_complete, is_zero_sum_free, naive_subset_sums


def test_max_zero_sum_free_frozen_values():
    expected = {5: 2, 7: 3, 11: 4, 13: 4, 17: 5, 19: 5, 23: 6, 29: 7, 31: 7}
    for p, want in expected.items():
        r = max_zero_sum_free(p)
        assert r.max_size == want, p
        assert r.exhaustive
        assert r.max_size == n_of_p(p) - 1
        interval = tuple(range(1, want + 1))
        assert interval in {rep.elements for rep in r.representatives}
        for rep in r.representatives:
            assert len(rep) == want
            assert is_zero_sum_free(rep)
            assert 0 not in naive_subset_sums(rep)


def test_max_zero_sum_free_result_metadata():
    r = max_zero_sum_free(11)
    assert r.p == Modulus(11)
    assert r.extremal_count >= 1
    assert r.nodes_explored > 0


def test_max_zero_sum_free_reduction_is_sound():
    # the engine searches only sets containing 1 (every class has a dilate
    # through 1); an unreduced full-universe run must agree on the maximum
    for p in (7, 11, 13, 17, 19, 23, 29, 31):
        full = search_avoid(p, 0, prefix=(), floor=2)
        assert max_zero_sum_free(p).max_size == full["best"], p


def test_max_zero_sum_free_budget_truncation():
    r = max_zero_sum_free(31, node_budget=10)
    assert not r.exhaustive
    assert r.max_size == 7  # the interval witness stands regardless
    assert is_zero_sum_free(r.representatives[0])


def test_max_zero_sum_free_jobs_deterministic():
    a = max_zero_sum_free(31, jobs=1)
    b = max_zero_sum_free(31, jobs=2)
    assert a.max_size == b.max_size
    assert a.representatives == b.representatives
    assert a.exhaustive and b.exhaustive


def test_max_incomplete_frozen_values():
    expected = {3: 1, 5: 2, 7: 3, 11: 5, 13: 5, 17: 6, 19: 7}
    for p, want in expected.items():
        r = max_incomplete(p)
        assert r.max_size == want, p
        assert r.exhaustive
        for rep in r.representatives:
            assert len(rep) == want
            assert not is_complete(rep)
            assert len(naive_subset_sums(rep)) < p


def test_max_incomplete_exhaustive_against_all_forbidden_values():
    # oracle: an incomplete set (within the nonzero universe) avoids some
    # residue f; maximize the avoid-f search over every f
    for p in (3, 5, 7, 11, 13, 17, 19):
        best = 0
        for f in range(p):
            universe = search_avoid(p, f, prefix=(), floor=1)
            best = max(best, universe["best"])
        assert max_incomplete(p).max_size == best, p


def test_max_incomplete_witness_at_11():
    r = max_incomplete(11)
    assert (1, 2, 3, 9, 10) in {rep.elements for rep in r.representatives}


def test_classify_frozen_p11():
    c = classify_extremal_zsf(11)
    assert c.max_size == 4
    assert c.set_count == 12  # sets of size 4 containing the element 1
    assert c.orbit_count == 3
    keys = {o.elements for o in c.orbits}
    assert keys == {(1, 2, 3, 4), (1, 2, 5, 7), (1, 3, 4, 5)}
    assert c.has_interval_orbit
    assert not c.has_exceptional_orbit
    assert c.complete_census
    for o in c.orbits:
        assert is_zero_sum_free(o)


def test_classify_frozen_small():
    c5 = classify_extremal_zsf(5)
    assert c5.set_count == 2 and c5.orbit_count == 1
    assert c5.orbits[0].elements == (1, 2)
    assert c5.has_interval_orbit
    c7 = classify_extremal_zsf(7)
    assert c7.set_count == 3 and c7.orbit_count == 1
    assert c7.orbits[0].elements == (1, 2, 3)


def test_classify_orbits_are_dilation_closed():
    c = classify_extremal_zsf(13)
    p = 13
    seen = set()
    for o in c.orbits:
        for b in range(1, p):
            seen.add(dilate(o, b).elements)
    # every size-4 zero-sum-free set through any dilate appears
    full = search_avoid(p, 0, enumerate_sizes_from=c.max_size, keep=4096)
    assert {s for s in full["sets"]} <= seen


def test_exceptional_prime_scan():
    assert exceptional_prime_scan(4) == [3]
    assert exceptional_prime_scan(13) == [3]
    assert exceptional_prime_scan(1000) == [3]
    assert exceptional_prime_scan(3) == [3]
    with pytest.raises(ValueError):
        exceptional_prime_scan(2)


def test_exceptional_scan_matches_direct_primality():
    from zpsums.core import is_prime

    want = [n for n in range(3, 5000) if is_prime(n * (n + 1) // 2 - 1)]
    assert exceptional_prime_scan(5000) == want == [3]


def test_search_rejects_tiny_floor_inputs():
    with pytest.raises((ValueError, ContractError)):
        max_zero_sum_free(4)  # not prime
