import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nlcheck.fields import Cyclotomic, PrimeField, Q
from nlcheck.poly import HPoly, monomials

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

FIELDS = [Q(), Cyclotomic(8), Cyclotomic(3), PrimeField(65537)]


def scalars(field, lo=-6, hi=6):
    """Scalars with small integer coordinates; cyclotomic ones use every power basis slot."""
    if field.kind == "cyclotomic":
        return st.lists(st.integers(lo, hi), min_size=field.degree, max_size=field.degree).map(field.from_coords)
    return st.integers(lo, hi).map(field)


def hpolys(field, degree, max_terms=6):
    monos = monomials(degree)
    terms = st.dictionaries(st.sampled_from(monos), scalars(field), max_size=max_terms)
    return terms.map(lambda t: HPoly(field, degree, {m: c for m, c in t.items() if not c.is_zero()}))


@pytest.fixture
def rng():
    return random.Random(20240601)
