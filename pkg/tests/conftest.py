import random

import pytest

from idfilt.fields import ExtensionField, PrimeField, RationalField
from idfilt.poly import TruncationContext, parse_poly


@pytest.fixture
def F2():
    return PrimeField(2)


@pytest.fixture
def F3():
    return PrimeField(3)


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def F9():
    return ExtensionField(3, 2)


@pytest.fixture
def QQ():
    return RationalField()


@pytest.fixture
def rng():
    return random.Random(20240)


def mk(field, text, names=("x", "y")):
    return parse_poly(text, list(names), field)


def ctx_of(field, nvars=2, D=10, boundary=()):
    return TruncationContext(field, nvars, D, frozenset(boundary))
