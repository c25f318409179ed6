from __future__ import annotations

import random

import pytest

from rbx import GF, QQ
from rbx.inducibility import aut_h_subgroup

from tests import support


@pytest.fixture
def rng():
    return random.Random(20240811)


@pytest.fixture(scope="session", params=["QQ", "F5"])
def field(request):
    return QQ if request.param == "QQ" else GF(5)


@pytest.fixture(scope="session")
def phi_ext_f3():
    return support.phi_example_f3()


@pytest.fixture(scope="session")
def split_ext_f2():
    return support.split_zero_f2()


@pytest.fixture(scope="session")
def split_psi_ext_f2():
    return support.split_psi_f2()


@pytest.fixture(scope="session")
def nonab_ext_f2():
    return support.nonabelian_h_f2()


@pytest.fixture(scope="session")
def aut_cache():
    """Enumerated ideal-preserving automorphism groups, cached per extension."""
    cache = {}

    def get(x, budget=3 ** 9):
        key = id(x)
        if key not in cache:
            cache[key] = aut_h_subgroup(x, budget=budget)
        return cache[key]

    return get
