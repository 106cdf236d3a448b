import sys

import pytest

from mgt.factorization import build_pair_factorization, build_triple_factorization
from mgt.groups import standard_group, subgroup_generated
from mgt.matched_pair import derive_matched_pair
from mgt.matched_triple import derive_matched_triple
from mgt.perm import Perm


def el(G, cycles):
    """Ambient index of the element written in 1-based cycle notation."""
    return G.index_of(Perm.parse(cycles, G.labels[0].degree))


def sub(G, *gens):
    return subgroup_generated(G, [el(G, g) for g in gens])


def local(mp_tab, cycles):
    return mp_tab.index_of(Perm.parse(cycles, mp_tab.labels[0].degree))


@pytest.fixture(scope="session")
def S3():
    return standard_group("symmetric", 3)


@pytest.fixture(scope="session")
def S4():
    return standard_group("symmetric", 4)


@pytest.fixture(scope="session")
def s3_pf(S3):
    return build_pair_factorization(S3, sub(S3, "(1 2 3)"), sub(S3, "(1 2)"))


@pytest.fixture(scope="session")
def s3_pair(s3_pf):
    return derive_matched_pair(s3_pf)


@pytest.fixture(scope="session")
def z6_pair():
    G = standard_group("cyclic", 6)
    return derive_matched_pair(build_pair_factorization(G, sub(G, "(1 4)(2 5)(3 6)"), sub(G, "(1 3 5)(2 4 6)")))


@pytest.fixture(scope="session")
def s4_tf(S4):
    V = sub(S4, "(1 2)(3 4)", "(1 3)(2 4)")
    return build_triple_factorization(S4, V, sub(S4, "(1 2 3)"), sub(S4, "(1 2)"))


@pytest.fixture(scope="session")
def s4_triple(s4_tf):
    return derive_matched_triple(s4_tf)


@pytest.fixture(scope="session")
def z30_tf():
    G = standard_group("product", standard_group("product", standard_group("cyclic", 2),
                                                 standard_group("cyclic", 3)), standard_group("cyclic", 5))
    return build_triple_factorization(G, sub(G, "(1 2)"), sub(G, "(3 4 5)"), sub(G, "(6 7 8 9 10)"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
