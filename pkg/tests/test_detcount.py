import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

import detlab.parallel as parallel
from detlab.errors import BudgetExceededError, PreconditionError
from detlab.detcount import (
    count_decomposition,
    count_det_brute,
    count_det_conv_n2,
    count_det_rowblock,
    count_rank,
    det_spectrum,
    dsup,
    find_witness,
    minor_multiplicity_map,
)
from detlab.matrices import det
from detlab.scalars import make_ground_set, negate_set, scale_set

from conftest import QQ, F7, int_ground_sets, fraction_ground_sets


X12 = make_ground_set([1, 2], QQ)
X0 = make_ground_set([0], QQ)


def test_brute_examples():
    assert count_det_brute(X0, 2, 0) == 1
    assert count_det_brute(X12, 2, 0) == 6
    assert count_det_brute(X12, 2, 3) == 1
    assert count_det_brute(X12, 1, 2) == 1


def test_rowblock_examples():
    assert count_det_rowblock(X12, 2, 0) == 6
    assert count_det_rowblock(make_ground_set([1], QQ), 3, 0) == 1
    X123 = make_ground_set([1, 2, 3], QQ)
    assert count_det_rowblock(X123, 3, 1) == count_det_brute(X123, 3, 1)


def test_rowblock_rejects_n1():
    with pytest.raises(PreconditionError):
        count_det_rowblock(X12, 1, 0)


def test_conv_examples():
    assert count_det_conv_n2(X12, 0) == 6
    assert count_det_conv_n2(X12, 1) == 2
    assert count_det_conv_n2(X0, 0) == 1


def test_spectrum_exact_for_two_element_set():
    spec = det_spectrum(X12, 2, "brute")
    expected = {
        Fraction(-3): 1,
        Fraction(-2): 2,
        Fraction(-1): 2,
        Fraction(0): 6,
        Fraction(1): 2,
        Fraction(2): 2,
        Fraction(3): 1,
    }
    assert spec.entries == expected
    assert spec.total_mass() == 16
    assert spec.distinct_count() == 7
    assert det_spectrum(X0, 2, "brute").entries == {Fraction(0): 1}


@given(int_ground_sets(max_size=3), st.sampled_from([2, 3]))
def test_spectrum_engines_agree_and_mass(X, n):
    sb = det_spectrum(X, n, "brute")
    sr = det_spectrum(X, n, "rowblock")
    assert sb.entries == sr.entries
    assert sb.total_mass() == len(X) ** (n * n)


@given(fraction_ground_sets(max_size=3))
def test_spectrum_engines_agree_fractional(X):
    sb = det_spectrum(X, 2, "brute")
    sr = det_spectrum(X, 2, "rowblock")
    assert sb.entries == sr.entries
    for d in sb.entries:
        assert count_det_conv_n2(X, d) == sb.entries[d]


def test_spectrum_prime_field():
    Xp = make_ground_set([0, 1, 3], F7)
    sb = det_spectrum(Xp, 2, "brute")
    sr = det_spectrum(Xp, 2, "rowblock")
    assert sb.entries == sr.entries
    assert sb.total_mass() == 3**4


def test_spectrum_witness():
    spec = det_spectrum(X12, 2, "brute")
    for d in spec.entries:
        w = spec.witness(d)
        assert w is not None and det(w) == d
    assert find_witness(X12, 2, 99) is None


def test_dsup_examples():
    assert dsup(X12, 2, True) == (Fraction(1), 2)
    assert dsup(X12, 2, False) == (Fraction(0), 6)
    assert dsup(make_ground_set([1], QQ), 2, False) == (Fraction(0), 1)
    with pytest.raises(PreconditionError):
        dsup(X0, 2, True)


def test_dsup_prime_field_tiebreak():
    Xp = make_ground_set([1, 2], F7)
    d, cnt = dsup(Xp, 2, True)
    spec = det_spectrum(Xp, 2, "brute")
    assert spec.entries[d] == cnt
    assert all(v < cnt or (v == cnt and d <= k) for k, v in spec.entries.items() if k)


def test_count_rank_examples():
    assert count_rank(X12, 2, 2, 1) == 6
    assert count_rank(X12, 2, 2, 0) == 0
    assert count_rank(make_ground_set([0, 1], QQ), 2, 2, 0) == 1
    with pytest.raises(PreconditionError):
        count_rank(X12, 2, 2, 3)
    with pytest.raises(PreconditionError):
        count_rank(X12, 3, 2, 1)


@given(int_ground_sets(max_size=3, lo=-3, hi=3), st.sampled_from([2, 3]))
@settings(max_examples=25)
def test_rank_partition(X, n):
    total = sum(count_rank(X, n, n, r) for r in range(n + 1))
    assert total == len(X) ** (n * n)
    singular = det_spectrum(X, n, "rowblock").entries.get(Fraction(0), 0)
    assert count_rank(X, n, n, n) == len(X) ** (n * n) - singular


def test_decomposition_examples():
    parts = count_decomposition(X12, 2, 0)
    assert parts.total() == 6
    assert parts.x_zero == 0  # no zero in X

    X01 = make_ground_set([0, 1], QQ)
    parts = count_decomposition(X01, 2, 1)
    assert parts.x_zero == 0  # [[a,b],[c,0]] needs -bc = 1, impossible over {0,1}
    assert parts.total() == count_det_brute(X01, 2, 1)

    parts = count_decomposition(make_ground_set([1], QQ), 3, 0)
    assert (parts.x_zero, parts.y_singular, parts.y_regular) == (0, 1, 0)


@given(int_ground_sets(max_size=3, lo=-2, hi=3), st.integers(-2, 2))
@settings(max_examples=25)
def test_decomposition_sums_to_brute(X, d):
    parts = count_decomposition(X, 2, d)
    assert parts.total() == count_det_brute(X, 2, d)


def test_minor_map_mass():
    for X in (X12, make_ground_set([0, 1, 2], QQ), make_ground_set([1, 3], F7)):
        for n in (2, 3):
            mm = minor_multiplicity_map(X, n)
            assert mm.total_mass() == len(X) ** (n * (n - 1))


def test_scaling_covariance():
    rng = random.Random(5)
    for _ in range(10):
        vals = rng.sample(range(-5, 6), rng.randint(1, 3))
        X = make_ground_set(vals, QQ)
        c = Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2]))
        for n in (2, 3):
            spec = det_spectrum(X, n, "rowblock")
            scaled = det_spectrum(scale_set(X, c), n, "rowblock")
            assert scaled.entries == {d * c**n: v for d, v in spec.entries.items()}


def test_negation_covariance():
    for vals in ([1, 2], [0, 1, 3], [-2, 1]):
        X = make_ground_set(vals, QQ)
        for n in (2, 3):
            spec = det_spectrum(X, n, "rowblock")
            neg = det_spectrum(negate_set(X), n, "rowblock")
            assert neg.entries == {d * (-1) ** n: v for d, v in spec.entries.items()}


def test_budget_refusal():
    X = make_ground_set(range(1, 5), QQ)
    with pytest.raises(BudgetExceededError):
        count_det_brute(X, 3, 0, budget=1000)
    with pytest.raises(BudgetExceededError):
        count_det_rowblock(X, 3, 0, budget=1000)
    with pytest.raises(BudgetExceededError):
        det_spectrum(X, 3, "brute", budget=1000)


def test_parallel_counts_match_serial(monkeypatch):
    monkeypatch.setattr(parallel, "_MIN_PARALLEL_ITEMS", 1)
    X = make_ground_set([0, 1, 2], QQ)
    assert count_det_brute(X, 2, 0, threads=4) == count_det_brute(X, 2, 0, threads=1)
    assert count_det_rowblock(X, 3, 0, threads=4) == count_det_rowblock(X, 3, 0, threads=1)
    sb = det_spectrum(X, 2, "brute", threads=4)
    assert sb.entries == det_spectrum(X, 2, "brute", threads=1).entries
    Xp = make_ground_set([1, 2, 4], F7)
    assert count_det_rowblock(Xp, 2, 3, threads=3) == count_det_rowblock(Xp, 2, 3)


def test_fractional_d_over_integer_set():
    assert count_det_brute(X12, 2, Fraction(1, 2)) == 0
    assert count_det_rowblock(X12, 2, Fraction(1, 2)) == 0
    assert count_det_conv_n2(X12, Fraction(1, 2)) == 0
