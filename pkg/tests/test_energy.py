import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from detlab.errors import BudgetExceededError, PreconditionError
from detlab.energy import (
    count_bilinear,
    count_bilinear_brute,
    cross_term_distribution,
    dyadic_pyramid,
    energy_Estar_brute,
    energy_Estar_mu,
    energy_N,
    energy_N_brute,
    energy_S,
    energy_S_brute,
    energy_T,
    energy_T_brute,
    product_distribution,
    r_distribution,
)
from detlab.matrices import Matrix, identity
from detlab.scalars import make_ground_set, scale_set

from conftest import QQ, F7, int_ground_sets, small_fractions

U01 = make_ground_set([0, 1], QQ)
U12 = make_ground_set([1, 2], QQ)
U1 = make_ground_set([1], QQ)

SMALL_SETS = [
    [1],
    [0, 1],
    [1, 2],
    [-1, 1],
    [0, 1, 2],
    [1, 2, 3],
    [-2, 1, 3],
    [Fraction(1, 2), 1, Fraction(3, 2)],
]


def gs(vals):
    return make_ground_set(vals, QQ)


def test_product_distribution_examples():
    assert product_distribution(U01).entries == {0: 3, 1: 1}
    assert product_distribution(U12).entries == {1: 1, 2: 2, 4: 1}
    assert product_distribution(U1).entries == {1: 1}


def test_r_distribution_examples():
    assert r_distribution(U01).entries == {0: 9, 1: 6, 2: 1}
    assert r_distribution(U1).entries == {2: 1}
    R = r_distribution(U12).entries
    assert R[2] == 1 and R[8] == 1


@given(int_ground_sets(max_size=4))
def test_distribution_masses(U):
    assert product_distribution(U).mass() == len(U) ** 2
    assert r_distribution(U).mass() == len(U) ** 4
    assert cross_term_distribution(U).mass() == len(U) ** 4


def test_energy_T_examples():
    assert energy_T(U1) == 1
    assert energy_T(U01) == 118
    assert energy_T_brute(U01) == 118


@pytest.mark.parametrize("vals", SMALL_SETS)
def test_energy_T_matches_brute(vals):
    U = gs(vals)
    assert energy_T(U) == energy_T_brute(U)


def test_energy_N_examples():
    assert energy_N(U1) == 1
    assert energy_N(U12) == 20
    assert energy_N_brute(U12) == 20
    assert energy_N(U01) == energy_N_brute(U01)


@pytest.mark.parametrize("vals", SMALL_SETS + [[0, 1, 2, 3], [-1, 0, 2, 5]])
def test_energy_N_matches_brute(vals):
    U = gs(vals)
    assert energy_N(U) == energy_N_brute(U)


def test_energy_S_examples():
    assert energy_S(U1) == 1
    assert cross_term_distribution(U01).entries == {0: 10, -1: 3, 1: 3}
    assert energy_S(U01) == 9 + 100 + 9
    assert energy_S_brute(U01) == energy_S(U01)


@pytest.mark.parametrize("vals", SMALL_SETS)
def test_energy_S_matches_brute(vals):
    U = gs(vals)
    assert energy_S(U) == energy_S_brute(U)


@given(int_ground_sets(max_size=3), small_fractions(6, 3).filter(bool))
@settings(max_examples=40)
def test_dilation_invariance(U, c):
    cU = scale_set(U, c)
    assert energy_N(cU) == energy_N(U)
    assert energy_T(cU) == energy_T(U)
    assert energy_S(cU) == energy_S(U)


def test_prime_field_energies():
    Up = make_ground_set([1, 2, 4], F7)
    assert energy_T(Up) == energy_T_brute(Up)
    assert energy_N(Up) == energy_N_brute(Up)
    assert energy_S(Up) == energy_S_brute(Up)


def test_bilinear_examples():
    I2 = identity(2, QQ)
    assert count_bilinear(I2, U12, U12, 2) == 1
    assert count_bilinear(I2, U12, U12, 4) == 4
    assert count_bilinear(I2, U1, U1, 2) == 1
    assert count_bilinear_brute(I2, U12, U12, 4) == 4


def test_bilinear_rejects_degenerate_inputs():
    I2 = identity(2, QQ)
    with pytest.raises(PreconditionError):
        count_bilinear(I2, U12, U12, 0)
    singular = Matrix.from_rows([[1, 2], [2, 4]], QQ)
    with pytest.raises(PreconditionError):
        count_bilinear(singular, U12, U12, 1)
    with pytest.raises(PreconditionError):
        count_bilinear_brute(I2, U12, U12, 0)


def _attained_inner_products(M, B, C):
    import itertools

    k = M.rows
    out = set()
    for b in itertools.product(B.elements, repeat=k):
        Mb = [sum((M.at(i, j) * b[j] for j in range(k)), Fraction(0)) for i in range(k)]
        for c in itertools.product(C.elements, repeat=k):
            out.add(sum((Mb[i] * c[i] for i in range(k)), Fraction(0)))
    return out


def test_bilinear_asymmetric_sets_and_k3():
    from detlab.matrices import det

    rng = random.Random(11)
    B = gs([1, 2])
    C = gs([-1, 1, 3])
    for k in (2, 3):
        for _ in range(8):
            while True:
                M = Matrix.from_rows(
                    [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)], QQ
                )
                if det(M):
                    break
            for omega in sorted(_attained_inner_products(M, B, C)):
                if not omega:
                    continue
                assert count_bilinear(M, B, C, omega) == count_bilinear_brute(M, B, C, omega)


def test_bilinear_prime_field():
    Mp = Matrix.from_rows([[1, 2], [3, 4]], F7)
    B = make_ground_set([1, 2], F7)
    C = make_ground_set([0, 1, 3], F7)
    for w in range(1, 7):
        assert count_bilinear(Mp, B, C, w) == count_bilinear_brute(Mp, B, C, w)


@pytest.mark.parametrize("vals", [[1], [1, 2], [0, 1], [1, 2, 3], [-1, 0, 1]])
def test_Estar_mu_matches_brute(vals):
    U = gs(vals)
    assert energy_Estar_mu(U) == energy_Estar_brute(U)


def test_Estar_examples():
    assert energy_Estar_mu(U1) == 1
    assert energy_Estar_brute(U1) == 1


def test_dyadic_pyramid_examples():
    p = dyadic_pyramid(U1)
    assert p.classes == ((1, 1),)
    assert p.total_mass == 1

    p = dyadic_pyramid(U12)
    assert p.total_mass == 2**6
    estar = energy_Estar_mu(U12)
    for w, cnt in p.classes:
        assert w * w * cnt <= estar
    assert p.max_weighted <= estar
    assert p.class_count(1) == dict(p.classes).get(1, 0)


def test_energy_budget():
    U = gs(list(range(1, 9)))
    with pytest.raises(BudgetExceededError):
        energy_Estar_brute(U, budget=1000)
    with pytest.raises(BudgetExceededError):
        energy_T_brute(U, budget=1000)


def test_distribution_provenance_and_order():
    P = product_distribution(U12)
    assert P.provenance == "pair-product"
    assert P.sorted_items() == sorted(P.entries.items())
    assert P.get(2) == 2 and P.get(99) == 0
