import pytest
from hypothesis import given, strategies as st

from mgt.errors import SpecParseError
from mgt.perm import Perm, parse_gens


def perms(degree):
    return st.permutations(range(degree)).map(lambda p: Perm(tuple(p)))


def test_parse_is_one_based():
    p = Perm.parse("(1 2 3)(4 5)")
    assert p.images == (1, 2, 0, 4, 3)
    assert p.to_cycles() == "(1 2 3)(4 5)"


def test_identity_renders_empty_parens():
    assert Perm.identity(4).to_cycles() == "()"
    assert Perm.parse("()", 3) == Perm.identity(3)


def test_apply_first_convention():
    # (1 2 3) then (1 2): 1->2->1, 2->3->3, 3->1->2
    assert (Perm.parse("(1 2 3)") * Perm.parse("(1 2)", 3)) == Perm.parse("(2 3)", 3)
    # (1 3 2) then (1 2) is (1 3)
    assert (Perm.parse("(1 3 2)") * Perm.parse("(1 2)", 3)) == Perm.parse("(1 3)", 3)


@pytest.mark.parametrize("bad", ["(1 2", "1 2", "(1 1)", "(0 1)", "(a b)", "(1 2)x"])
def test_rejects_malformed(bad):
    with pytest.raises(SpecParseError):
        Perm.parse(bad, 3)


def test_degree_overflow_rejected():
    with pytest.raises(SpecParseError):
        Perm.parse("(1 5)", 4)


def test_parse_gens_splits_between_cycles():
    gens = parse_gens("(1 2)(3 4),(1 3)(2 4)", 4)
    assert [g.to_cycles() for g in gens] == ["(1 2)(3 4)", "(1 3)(2 4)"]
    assert parse_gens("", 4) == []


@given(perms(6), perms(6), perms(6))
def test_composition_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(perms(7))
def test_inverse_and_roundtrip(p):
    assert (p * p.inverse()).is_identity()
    assert Perm.parse(p.to_cycles(), 7) == p
