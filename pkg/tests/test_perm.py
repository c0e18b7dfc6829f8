import pytest
from hypothesis import given
from hypothesis import strategies as st

from mindegree.perm import (
    Perm,
    PermError,
    compose,
    conjugate,
    cycle_decomposition,
    cycle_type,
    format_cycles,
    identity,
    inverse,
    parse_cycles,
    perm_order,
    support,
)


def perms(max_degree=9):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.permutations(range(n)).map(lambda p: Perm(p)))


def perm_pairs(max_degree=9):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))
        .map(lambda t: (Perm(t[0]), Perm(t[1]))))


def test_parse_and_print():
    p = parse_cycles("(1 2)(4 5 6 7)", 7)
    assert p.image(1) == 2 and p.image(2) == 1 and p.image(7) == 4 and p.image(3) == 3
    assert format_cycles(p) == "(1 2)(4 5 6 7)"
    assert str(parse_cycles("(5,6,7)(1 2 3)", 7)) == "(1 2 3)(5 6 7)"
    assert parse_cycles("()", 4) == identity(4)
    assert parse_cycles("", 3) == identity(3)


def test_right_action():
    a = parse_cycles("(1 2)", 3)
    b = parse_cycles("(2 3)", 3)
    # apply a first: 1 -> 2 -> 3
    assert (a * b).image(1) == 3
    assert str(a * b) == "(1 3 2)"


def test_conjugation_convention():
    a = parse_cycles("(1 2)", 3)
    g = parse_cycles("(1 2 3)", 3)
    # g^-1 a g relabels the points of a by g
    assert str(conjugate(a, g)) == "(2 3)"


@pytest.mark.parametrize("text", ["(1 2)(2 3)", "(1 1)", "(0 1)", "(1 9)", "(1 2", "1 2", "(a b)", "(1)"])
def test_parse_rejects(text):
    with pytest.raises(PermError):
        parse_cycles(text, 4)


def test_degree_mismatch():
    with pytest.raises(PermError):
        compose(identity(3), identity(4))


def test_order_and_type():
    p = parse_cycles("(1 2)(3 4 5)", 6)
    assert perm_order(p) == 6
    assert cycle_type(p) == (1, 2, 3)
    assert support(p) == {1, 2, 3, 4, 5}
    assert cycle_decomposition(p) == [(1, 2), (3, 4, 5)]


@given(perms())
def test_print_parse_round_trip(p):
    assert parse_cycles(format_cycles(p), len(p)) == p


@given(perms())
def test_inverse(p):
    assert (p * inverse(p)).is_identity()
    assert p ** perm_order(p) == identity(len(p))


@given(perm_pairs())
def test_conjugate_preserves_cycle_type(pair):
    a, g = pair
    assert cycle_type(conjugate(a, g)) == cycle_type(a)
    assert conjugate(a, g) == inverse(g) * a * g
