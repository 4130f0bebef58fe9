from __future__ import annotations

import pytest

from modinv.field import make_field
from modinv.groups import build_group


@pytest.fixture(scope="session")
def F4():
    return make_field(2)


@pytest.fixture(scope="session")
def F8():
    return make_field(3)


@pytest.fixture(scope="session")
def F16():
    return make_field(4)


@pytest.fixture(scope="session")
def tables():
    cache = {}

    def get(s: int, kind: str):
        key = (s, kind)
        if key not in cache:
            cache[key] = build_group(make_field(s), kind)
        return cache[key]

    return get
