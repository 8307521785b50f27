import pytest

from residua.lattice import as_lattice, build_poset
from residua.generators import boolean, chain, divisor


@pytest.fixture(scope="session")
def b2():
    return boolean(2)


@pytest.fixture(scope="session")
def b3():
    return boolean(3)


@pytest.fixture(scope="session")
def chain3():
    return chain(3)


@pytest.fixture(scope="session")
def div12():
    return divisor(12)


@pytest.fixture(scope="session")
def n5():
    # pentagon: 0 < a < 1 and 0 < b < c < 1
    p = build_poset(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "1"), ("0", "b"), ("b", "c"), ("c", "1")],
    )
    return as_lattice(p, provenance="N5")


@pytest.fixture(scope="session")
def m3():
    # diamond with three incomparable atoms
    p = build_poset(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    return as_lattice(p, provenance="M3")
