from __future__ import annotations

import random

import pytest

from zpsums.core import Modulus, ZpSet, dilate
from zpsums.errors import CapabilityError
from zpsums.sumsets import (
    SumSet,
    build_witness_table,
    check_witness,
    is_complete,
    is_zero_sum_free,
    naive_subset_sums,
    subset_sums,
    witness,
    witness_from_table,
)

SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


def _random_set(rng: random.Random, p: int, k: int) -> ZpSet:
    return ZpSet.of(rng.sample(range(p), k), p)


def test_fixed_examples():
    a = ZpSet.of([1, 2], 7)
    assert sorted(subset_sums(a).members()) == [1, 2, 3]
    b = ZpSet.of([1, 2, 3], 7)
    assert sorted(subset_sums(b).members()) == [1, 2, 3, 4, 5, 6]
    assert is_zero_sum_free(b)
    assert not is_complete(b)
    c = ZpSet.of([0], 7)
    assert sorted(subset_sums(c).members()) == [0]
    assert not is_zero_sum_free(c)
    full = ZpSet.of([1, 2, 3, 4], 7)  # 2+3+4 = 9 = 2 mod 7 ... covers 0 too
    assert is_complete(full)
    assert not is_zero_sum_free(full)


def test_empty_set():
    e = ZpSet.of([], 11)
    s = subset_sums(e)
    assert len(s) == 0 and s.members() == ()
    assert is_zero_sum_free(e)
    assert not is_complete(e)


def test_oracle_agreement_random():
    rng = random.Random(20240817)
    for _ in range(200):
        p = rng.choice(SMALL_PRIMES)
        k = rng.randint(0, min(16, p - 1))
        a = _random_set(rng, p, k)
        fast = subset_sums(a)
        slow = naive_subset_sums(a)
        assert fast.bits == slow.bits
        assert fast.count == slow.count


def test_oracle_agreement_word_boundaries():
    # moduli chosen to land under, straddling and above the 64/128-bit
    # word boundaries of the bitset representation
    rng = random.Random(65)
    for p in (61, 67, 127, 131, 257):
        for _ in range(20):
            k = rng.randint(1, 14)
            a = _random_set(rng, p, k)
            assert subset_sums(a).bits == naive_subset_sums(a).bits


def test_incremental_law():
    # S_{A u {x}} = S_A | (S_A + x) | {x}
    rng = random.Random(3)
    for _ in range(100):
        p = rng.choice(SMALL_PRIMES)
        k = rng.randint(1, min(10, p - 1))
        els = rng.sample(range(p), k)
        a = ZpSet.of(els[:-1], p)
        x = els[-1]
        sa = subset_sums(a)
        grown = subset_sums(ZpSet.of(els, p))
        expect = set(sa.members()) | {(r + x) % p for r in sa.members()} | {x % p}
        assert set(grown.members()) == expect


def test_dilation_equivariance():
    rng = random.Random(11)
    for _ in range(60):
        p = rng.choice(SMALL_PRIMES)
        k = rng.randint(1, min(10, p - 1))
        a = _random_set(rng, p, k)
        b = rng.randrange(1, p)
        lhs = subset_sums(dilate(a, b))
        rhs = {(b * r) % p for r in subset_sums(a).members()}
        assert set(lhs.members()) == rhs


def test_monotone_in_subsets():
    rng = random.Random(13)
    for _ in range(60):
        p = rng.choice(SMALL_PRIMES)
        k = rng.randint(2, min(10, p - 1))
        els = rng.sample(range(p), k)
        sup = subset_sums(ZpSet.of(els, p))
        sub = subset_sums(ZpSet.of(els[: k // 2], p))
        assert sub.bits & ~sup.bits == 0


def test_zero_membership_vs_predicate():
    rng = random.Random(17)
    for _ in range(60):
        p = rng.choice(SMALL_PRIMES)
        k = rng.randint(1, min(12, p - 1))
        a = _random_set(rng, p, k)
        assert is_zero_sum_free(a) == (0 not in subset_sums(a))


def test_large_modulus_stays_sparse():
    p = 1_000_003
    a = ZpSet.of(range(1, 101), p)
    s = subset_sums(a)
    # all nonempty subset sums of 1..100 are in [1, 5050]
    assert len(s) == 5050
    assert max(s.members()) == 5050


def test_sumset_validation():
    with pytest.raises(ValueError):
        SumSet(Modulus(7), 1 << 7, 1)
    with pytest.raises(ValueError):
        SumSet(Modulus(7), 0b110, 3)


def test_naive_limit_enforced():
    a = ZpSet.of(range(1, 26), 101)
    with pytest.raises(ValueError):
        naive_subset_sums(a)


def test_witness_basics():
    a = ZpSet.of([1, 2, 4], 11)
    for t in subset_sums(a).members():
        w = witness(a, t)
        assert w is not None
        assert check_witness(a, w)
        assert sum(w.subset.elements) % 11 == t
    assert witness(a, 0) is None  # {1,2,4} reaches 1..7 only


def test_witness_deterministic():
    rng = random.Random(23)
    for _ in range(40):
        p = rng.choice(SMALL_PRIMES)
        k = rng.randint(1, min(10, p - 1))
        a = _random_set(rng, p, k)
        table = build_witness_table(a)
        for t in range(p):
            w1 = witness_from_table(table, t)
            w2 = witness_from_table(table, t)
            if t % p in subset_sums(a):
                assert w1 is not None and w1 == w2
                assert check_witness(a, w1)
            else:
                assert w1 is None


def test_witness_table_capability_limit():
    a = ZpSet.of([1, 2], 101)
    with pytest.raises(CapabilityError):
        build_witness_table(a, limit=50)


def test_check_witness_rejects_foreign_subsets():
    from zpsums.sumsets import Witness

    a = ZpSet.of([1, 2, 4], 11)
    w = Witness(ZpSet.of([3], 11), 3)  # 3 not in A
    assert not check_witness(a, w)
    w2 = Witness(ZpSet.of([1, 2], 13), 3)  # wrong modulus
    assert not check_witness(a, w2)
