import random

import pytest

from carlitz import field_make


@pytest.fixture
def f2():
    return field_make(2)


@pytest.fixture
def f3():
    return field_make(3)


@pytest.fixture
def f9():
    return field_make(3, 2)


@pytest.fixture
def rng():
    return random.Random(20240817)
