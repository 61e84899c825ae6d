from __future__ import annotations

import pytest

from partlat import build_hasse, complements, enumerate_partitions


@pytest.fixture(scope="session")
def parts():
    """Cached enumerations keyed by n."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = enumerate_partitions(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def graphs():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = build_hasse(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def co_tables(parts):
    """Complement sets for every partition, keyed by n."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = {p: complements(p) for p in parts(n)}
        return cache[n]

    return get
