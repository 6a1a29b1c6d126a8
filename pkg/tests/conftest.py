import pytest
from hypothesis import HealthCheck, settings
import hypothesis.strategies as st

from detlab.scalars import FieldSpec, make_ground_set

settings.register_profile(
    "detlab", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("detlab")

QQ = FieldSpec.rationals()
F7 = FieldSpec.prime(7)


@pytest.fixture
def qq():
    return QQ


@pytest.fixture
def f7():
    return F7


def small_fractions(max_num=30, max_den=8):
    return st.fractions(min_value=-max_num, max_value=max_num, max_denominator=max_den)


def int_ground_sets(min_size=1, max_size=4, lo=-6, hi=6):
    return st.lists(
        st.integers(lo, hi), min_size=min_size, max_size=max_size, unique=True
    ).map(lambda vals: make_ground_set(vals, QQ))


def fraction_ground_sets(min_size=1, max_size=4):
    return st.lists(
        small_fractions(9, 4), min_size=min_size, max_size=max_size, unique=True
    ).map(lambda vals: make_ground_set(vals, QQ))
