from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mgt.errors import NotExactError, SizeLimitError
from mgt.factorization import (
    build_pair_factorization,
    build_triple_factorization,
    enumerate_exact_pairs,
    enumerate_exact_triples,
    enumerate_subgroups,
    is_exact_pair,
    is_exact_triple,
)
from mgt.groups import standard_group, subgroup_generated, trivial_subgroup, whole_group
from mgt.specs import parse_group_spec

from conftest import el, sub


def brute_force_subgroups(G):
    """Every subset containing the identity and closed under multiplication."""
    n = G.order
    out = set()
    for k in range(0, n):
        if n % (k + 1):
            continue
        for rest in combinations(range(1, n), k):
            S = (0,) + rest
            mask = np.zeros(n, dtype=bool)
            mask[list(S)] = True
            if mask[G.mul[np.ix_(S, S)]].all():
                out.add(S)
    return out


@pytest.mark.parametrize("spec", ["cyclic:6", "symmetric:3", "dihedral:4", "quaternion8", "klein4",
                                  "alternating:4", "cyclic:1", "product:cyclic:2,cyclic:4"])
def test_enumerate_subgroups_matches_brute_force(spec):
    G = parse_group_spec(spec)
    found = {H.elements for H in enumerate_subgroups(G)}
    assert found == brute_force_subgroups(G)


@pytest.mark.parametrize("spec,count", [("cyclic:6", 4), ("symmetric:3", 6), ("cyclic:1", 1),
                                        ("symmetric:4", 30), ("dihedral:4", 10)])
def test_subgroup_counts(spec, count):
    assert len(enumerate_subgroups(parse_group_spec(spec))) == count


def test_enumeration_order_bound():
    G = standard_group("cyclic", 49)
    with pytest.raises(SizeLimitError):
        enumerate_subgroups(G)
    assert len(enumerate_subgroups(G, max_gens=None)) == 3


def test_is_exact_pair_examples(S3):
    assert is_exact_pair(S3, sub(S3, "(1 2 3)"), sub(S3, "(1 2)"))
    assert not is_exact_pair(S3, sub(S3, "(1 2 3)"), sub(S3, "(1 2 3)"))
    Z6 = standard_group("cyclic", 6)
    assert is_exact_pair(Z6, trivial_subgroup(Z6), whole_group(Z6))


def test_non_subgroup_argument_rejected(S3):
    with pytest.raises(ValueError):
        is_exact_pair(S3, sub(S3, "(1 2)"), (0, 1))
    other = standard_group("symmetric", 3)
    with pytest.raises(ValueError):
        is_exact_pair(S3, sub(S3, "(1 2)"), subgroup_generated(other, [1]))


def test_s3_decompositions(S3, s3_pf):
    t13 = el(S3, "(1 3)")
    assert s3_pf.decomp[t13] == (el(S3, "(1 3 2)"), el(S3, "(1 2)"))
    assert s3_pf.decomp_rev[t13] == (el(S3, "(1 2)"), el(S3, "(1 2 3)"))
    assert s3_pf.decomp[0] == (0, 0)


def test_not_exact_raises():
    Z4 = standard_group("cyclic", 4)
    with pytest.raises(NotExactError):
        build_pair_factorization(Z4, sub(Z4, "(1 2 3 4)"), sub(Z4, "(1 3)(2 4)"))


def test_exact_pair_enumeration_examples(S3):
    pairs = enumerate_exact_pairs(S3)
    r = sub(S3, "(1 2 3)")
    assert (r, sub(S3, "(1 2)")) in pairs and (r, sub(S3, "(1 3)")) in pairs
    assert len(pairs) == 6
    assert enumerate_exact_pairs(standard_group("cyclic", 4)) == []
    Z6 = standard_group("cyclic", 6)
    assert [(M.order, N.order) for M, N in enumerate_exact_pairs(Z6)] == [(2, 3), (3, 2)]
    assert len(enumerate_exact_pairs(Z6, include_degenerate=True)) == 4


@pytest.mark.parametrize("spec", ["symmetric:4", "dihedral:6", "alternating:4", "product:klein4,symmetric:3"])
def test_pair_enumeration_properties(spec):
    G = parse_group_spec(spec)
    pairs = enumerate_exact_pairs(G)
    keys = {(M.elements, N.elements) for M, N in pairs}
    assert keys == {(N, M) for M, N in keys}
    for M, N in pairs:
        pf = build_pair_factorization(G, M, N)
        assert sorted(pf.decomp.values()) == sorted((m, n) for m in M.elements for n in N.elements)
        assert sorted(pf.decomp_rev.values()) == sorted((n, m) for n in N.elements for m in M.elements)
        for g, (m, n) in pf.decomp.items():
            assert G.multiply(m, n) == g
            n2, m2 = pf.decomp_rev[g]
            assert G.multiply(n2, m2) == g


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_random_pair_decomposition_bijective(data):
    G = standard_group("symmetric", 4)
    pairs = enumerate_exact_pairs(G)
    M, N = data.draw(st.sampled_from(pairs))
    pf = build_pair_factorization(G, M, N)
    assert len(pf.decomp) == len(set(pf.decomp.values())) == G.order


def test_triple_examples(S4, s4_tf, z30_tf):
    V = sub(S4, "(1 2)(3 4)", "(1 3)(2 4)")
    assert is_exact_triple(S4, V, sub(S4, "(1 2 3)"), sub(S4, "(1 2)"))
    assert not is_exact_triple(S4, V, V, sub(S4, "(1 2 3)"))
    assert z30_tf.G.order == 30 and z30_tf.strict_ok
    d = s4_tf.decomp3
    assert d[0] == (0, 0, 0)
    assert d[el(S4, "(1 2)")] == (0, 0, el(S4, "(1 2)"))
    x = el(S4, "(1 2)(3 4)")
    assert d[x] == (x, 0, 0)
    # the pair products are A4, D4 and S{1,2,3}
    orders = {k: pf.within.order for k, pf in s4_tf.pairs.items()}
    assert orders == {"MN": 12, "MP": 8, "NP": 6}


def test_triple_decomp_restricts_to_pair(s4_tf):
    G = s4_tf.G
    for key, slot in (("MN", 2), ("MP", 1), ("NP", 0)):
        pf = s4_tf.pairs[key]
        for g, (a, b) in pf.decomp.items():
            t = s4_tf.decomp3[g]
            assert t[slot] == 0
            assert tuple(v for i, v in enumerate(t) if i != slot) == (a, b)
    for g, (m, n, p) in s4_tf.decomp3.items():
        assert G.multiply(G.multiply(m, n), p) == g


def test_strict_and_relaxed(S4):
    M, N = sub(S4, "(3 4)"), sub(S4, "(2 3 4)")
    P = sub(S4, "(1 3 2 4)")
    assert is_exact_triple(S4, M, N, P, mode="relaxed")
    assert not is_exact_triple(S4, M, N, P, mode="strict")
    tf = build_triple_factorization(S4, M, N, P, mode="relaxed")
    assert not tf.strict_ok
    assert len(tf.decomp3) == 24
    with pytest.raises(NotExactError):
        build_triple_factorization(S4, M, N, P)
    with pytest.raises(ValueError):
        is_exact_triple(S4, M, N, P, mode="loose")


def test_triple_enumeration_counts(S4, s4_tf):
    strict = enumerate_exact_triples(S4)
    relaxed = enumerate_exact_triples(S4, mode="relaxed")
    assert (s4_tf.M, s4_tf.N, s4_tf.P) in strict
    assert set(strict) <= set(relaxed)
    assert len(strict) == 72 and len(relaxed) == 696
    for M, N, P in strict[:10]:
        assert is_exact_triple(S4, M, N, P)


def test_triple_with_n_p_swapped_is_decided(S4):
    V = sub(S4, "(1 2)(3 4)", "(1 3)(2 4)")
    # (1 2 3) and (1 3) generate S{1,2,3}, and V4 normal makes every product a subgroup
    assert is_exact_triple(S4, V, sub(S4, "(1 2 3)"), sub(S4, "(1 3)"))
