import math

import pytest
from hypothesis import given, strategies as st

from delayshor.number_theory import (
    FactoringInstance,
    continued_fraction_order_candidates,
    default_register_sizes,
    make_instance,
    mod_pow,
    multiplicative_order,
)

from reference import naive_order


@pytest.mark.parametrize('a,x,N,expected', [
    (13, 4, 15, 1),
    (7, 0, 15, 1),
    (5, 6, 21, 1),
    (2, 10, 1024, 0),
])
def test_mod_pow_values(a, x, N, expected):
    assert mod_pow(a, x, N) == expected


def test_mod_pow_rejects_bad_modulus():
    with pytest.raises(ValueError):
        mod_pow(2, 3, 1)
    with pytest.raises(ValueError):
        mod_pow(2, -1, 5)


@given(st.integers(min_value=0, max_value=10**9), st.integers(min_value=2, max_value=10**6),
       st.integers(min_value=0, max_value=10**6))
def test_mod_pow_matches_builtin(a, N, x):
    assert mod_pow(a, x, N) == pow(a, x, N)


@pytest.mark.parametrize('a,N,expected', [
    (13, 15, 4),
    (5, 21, 6),
    (5, 33, 10),
    (1, 17, 1),
    (3, 4, 2),
])
def test_multiplicative_order_values(a, N, expected):
    assert multiplicative_order(a, N) == expected


def test_multiplicative_order_requires_coprime():
    with pytest.raises(ValueError):
        multiplicative_order(6, 21)


def test_order_exhaustive_small_moduli():
    # least-exponent property, checked directly for every coprime pair
    for N in range(2, 65):
        for a in range(1, N):
            if math.gcd(a, N) != 1:
                continue
            r = multiplicative_order(a, N)
            assert mod_pow(a, r, N) == 1
            assert all(mod_pow(a, m, N) != 1 for m in range(1, r))
            assert r <= N


@pytest.mark.parametrize('N,expected', [
    (21, (9, 5)),
    (33, (11, 6)),
    (15, (8, 4)),
])
def test_default_register_sizes_values(N, expected):
    assert default_register_sizes(N) == expected


def test_default_register_sizes_inequalities():
    for N in range(3, 10001):
        if N & (N - 1) == 0:
            with pytest.raises(ValueError):
                default_register_sizes(N)
            continue
        L, Lprime = default_register_sizes(N)
        assert N**2 < 2**L < 2 * N**2
        assert 2 ** (Lprime - 1) < N < 2**Lprime


@pytest.mark.parametrize('k,q,N,expected_member', [
    (85, 512, 21, 6),
    (64, 256, 15, 4),
])
def test_continued_fraction_contains_order(k, q, N, expected_member):
    assert expected_member in continued_fraction_order_candidates(k, q, N)


def test_continued_fraction_zero_and_bounds():
    assert continued_fraction_order_candidates(0, 512, 21) == []
    with pytest.raises(ValueError):
        continued_fraction_order_candidates(512, 512, 21)


def test_continued_fraction_exact_values():
    # 85/512 = [0; 6, 42, 2]: denominators 1, 6, 253, 512
    assert continued_fraction_order_candidates(85, 512, 21) == [1, 6]
    assert continued_fraction_order_candidates(85, 512, 300) == [1, 6, 253]


@given(st.integers(min_value=1, max_value=4095))
def test_continued_fraction_denominators_sorted_and_bounded(k):
    q, N = 4096, 63
    cands = continued_fraction_order_candidates(k, q, N)
    assert cands == sorted(set(cands))
    assert all(1 <= d <= N for d in cands)


_COPRIME_PAIRS = [(9, 2), (15, 13), (21, 5), (25, 7), (27, 2), (33, 5), (33, 10)]


@pytest.mark.parametrize('N,a', _COPRIME_PAIRS)
def test_order_matches_naive(N, a):
    assert multiplicative_order(a, N) == naive_order(a, N)


@pytest.mark.parametrize('N,a', _COPRIME_PAIRS)
def test_power_sequence_periodicity(N, a):
    r = multiplicative_order(a, N)
    L, _ = default_register_sizes(N)
    q = 2**L
    seq = [mod_pow(a, j, N) for j in range(min(q, 4 * r + 3))]
    for j in range(len(seq)):
        assert seq[j] == seq[j % r]
    assert len(set(seq[:r])) == r


def test_make_instance_defaults_and_overrides():
    inst = make_instance(21, 5)
    assert (inst.L, inst.Lprime, inst.q, inst.r) == (9, 5, 512, 6)
    inst4 = make_instance(15, 13, L=4)
    assert (inst4.q, inst4.r, inst4.Lprime) == (16, 4, 4)


def test_make_instance_analytic_case():
    inst = make_instance(4, 3, L=2, Lprime=2)
    assert inst.r == 2


def test_instance_validation():
    with pytest.raises(ValueError):
        make_instance(21, 7)  # gcd = 7
    with pytest.raises(ValueError):
        make_instance(21, 1)
    with pytest.raises(ValueError):
        make_instance(21, 5, Lprime=4)  # 2**4 < 21
    with pytest.raises(ValueError):
        FactoringInstance(N=21, a=5, L=9, Lprime=5, q=500, r=6)
    with pytest.raises(ValueError):
        FactoringInstance(N=21, a=5, L=9, Lprime=5, q=512, r=5)
