import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mindegree.constructions import (
    alternating,
    cyclic,
    dihedral,
    h7,
    h7xc2_9,
    k8,
    l8,
    named_group,
    symmetric,
)
from mindegree.group import PermGroup
from mindegree.perm import mul, parse_cycles
from mindegree.spec_lang import parse_spec
from mindegree.structure import (
    IsoVerdict,
    center,
    centralizer_in_sym,
    conjugacy_classes,
    core,
    derived_subgroup,
    direct_decompositions,
    intersection,
    is_abelian,
    is_elementary_abelian,
    is_isomorphic,
    is_nilpotent,
    minimal_normal_subgroups,
    normal_subgroups,
    normalizer,
    perfect_residual,
    sylow_subgroup,
    sym_conjugate,
)


def grp(degree, *cycles):
    return PermGroup(degree, [parse_cycles(c, degree) for c in cycles])


def brute_centralizer(G):
    return {p for p in itertools.permutations(range(G.degree))
            if all(mul(p, g) == mul(g, p) for g in G.raw_gens)}


def test_centralizer_h7():
    assert centralizer_in_sym(h7()).element_set() == grp(7, "(4 5 6 7)").element_set()


def test_centralizer_case_a():
    C = centralizer_in_sym(h7xc2_9())
    assert C.order() == 8
    assert C.element_set() == grp(9, "(4 5 6 7)", "(8 9)").element_set()


@pytest.mark.parametrize("G", [k8(), l8()], ids=["K8", "L8"])
def test_trivial_centralizers(G):
    assert centralizer_in_sym(G).order() == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.lists(st.permutations(range(n)).map(tuple), min_size=1, max_size=2)
    .map(lambda gs: PermGroup(n, gs))))
def test_centralizer_matches_brute_force(G):
    assert centralizer_in_sym(G).element_set() == brute_centralizer(G)


def test_normalizers_in_h7():
    H = h7()
    assert normalizer(H, grp(7, "(1 2 3)")).order() == 12
    assert normalizer(H, grp(7, "(1 2)(4 5 6 7)")).order() == 4


def test_sym_conjugate_both_ways():
    A = grp(5, "(1 2)(3 4)")
    B = grp(5, "(2 5)(1 3)")
    t = sym_conjugate(A, B)
    assert t is not None
    assert grp(5, *[str(t.inverse() * g * t) for g in A.gens]).equals(B)
    assert sym_conjugate(A, grp(5, "(1 2)")) is None


def test_core_and_intersection():
    S4 = symmetric(4)
    P = sylow_subgroup(S4, 2)
    assert P.order() == 8
    assert core(S4, P).order() == 4
    assert intersection(P, alternating(4)).order() == 4


def test_series_and_center():
    S4 = symmetric(4)
    assert derived_subgroup(S4).order() == 12
    assert perfect_residual(S4).order() == 1
    assert perfect_residual(alternating(5)).order() == 60
    assert center(dihedral(8)).order() == 2
    assert is_nilpotent(dihedral(8)) and not is_nilpotent(symmetric(3))
    assert is_abelian(cyclic(6)) and not is_abelian(symmetric(3))
    assert is_elementary_abelian(parse_spec("C2 x C2").resolve())
    assert not is_elementary_abelian(cyclic(4))


def test_conjugacy_classes_s4():
    sizes = sorted(len(c) for c in conjugacy_classes(symmetric(4)))
    assert sizes == [1, 3, 6, 6, 8]


def test_normal_subgroups():
    assert sorted(N.order() for N in normal_subgroups(symmetric(4))) == [1, 4, 12, 24]
    assert [N.order() for N in minimal_normal_subgroups(symmetric(4))] == [4]
    assert sorted(N.order() for N in minimal_normal_subgroups(cyclic(6))) == [2, 3]


def test_sylow_k8():
    assert sylow_subgroup(k8(), 7).order() == 7


def test_isomorphism():
    assert is_isomorphic(cyclic(4), parse_spec("C2 x C2").resolve()) == IsoVerdict.NO
    other = grp(7, "(5 6 7)", "(5 6)(1 2 3 4)")
    assert is_isomorphic(h7(), other) == IsoVerdict.YES
    assert is_isomorphic(named_group("PSL(2,7)"), named_group("PSL(3,2)")) == IsoVerdict.YES
    assert is_isomorphic(dihedral(8), parse_spec("deg 8: (1 2 3 4)(5 6 7 8), (1 5 3 7)(2 8 4 6)").resolve()) == IsoVerdict.NO


@pytest.mark.parametrize("spec,count", [("C2 x C2", 3), ("S3", 0), ("C6", 1), ("C2 x S3", 2)])
def test_direct_decompositions(spec, count):
    G = parse_spec(spec).resolve()
    decs = direct_decompositions(G)
    assert len(decs) == count
    for d in decs:
        assert d.is_valid(G)
