import json

import pytest

from mindegree.actions import external_direct_product
from mindegree.constructions import alternating, cyclic, g225, named_group, symmetric
from mindegree.group import PermGroup
from mindegree.lattice import (
    CacheError,
    brute_force_subgroups,
    cache_path,
    cached_subgroup_classes,
    lattice_from_dict,
    lattice_to_dict,
    subgroup_classes,
)
from mindegree.perm import PermError, parse_cycles

# OEIS A000638 (classes) and A005432 (subgroups) for Sym(n)
SYM_CLASSES = {1: 1, 2: 2, 3: 4, 4: 11, 5: 19, 6: 56, 7: 96, 8: 296, 9: 554}
SYM_SUBGROUPS = {1: 1, 2: 2, 3: 6, 4: 30, 5: 156, 6: 1455, 7: 11300, 8: 151221, 9: 1694723}


@pytest.mark.parametrize("n", range(1, 8))
def test_symmetric_counts(sym_lattices, n):
    lat = sym_lattices[n]
    assert len(lat) == SYM_CLASSES[n]
    assert lat.total_subgroups() == SYM_SUBGROUPS[n]


@pytest.mark.deep
@pytest.mark.parametrize("n", [8, 9])
def test_symmetric_counts_deep(sweep_context, n):
    lat = sweep_context(n).lattice
    assert len(lat) == SYM_CLASSES[n]
    assert lat.total_subgroups() == SYM_SUBGROUPS[n]


@pytest.mark.parametrize("G,classes,subgroups", [
    (alternating(5), 9, 59),
    (cyclic(6), 4, 4),
    (named_group("C3wrS3"), 34, 142),
    (g225(), 17, 84),
])
def test_other_counts(G, classes, subgroups):
    lat = subgroup_classes(G)
    assert len(lat) == classes and lat.total_subgroups() == subgroups


def test_records(sym_lattices):
    lat = sym_lattices[4]
    assert lat[0].order == 1 and lat[len(lat) - 1].order == 24
    for c in lat.classes:
        assert c.class_size * c.normalizer_order == 24
        assert c.is_normal == (c.class_size == 1)
    normals = sorted(c.order for c in lat.classes if c.is_normal)
    assert normals == [1, 4, 12, 24]


def test_locate_with_transporter(sym_lattices):
    lat = sym_lattices[6]
    H = PermGroup(6, [parse_cycles("(2 5)(3 4)", 6)])
    cid, t = lat.locate_with_transporter(H)
    rep = lat[cid].representative
    image = PermGroup(6, [t.inverse() * g * t for g in rep.gens])
    assert image.equals(H)
    assert lat.locate(H) == cid


def test_brute_force_agrees_small():
    for G in (symmetric(4), external_direct_product(symmetric(3), cyclic(4))):
        fast, slow = subgroup_classes(G), brute_force_subgroups(G)
        assert len(fast) == len(slow)
        assert fast.total_subgroups() == slow.subgroup_count


def test_budget_marks_incomplete():
    lat = subgroup_classes(symmetric(6), budget=10)
    assert lat.complete is False


def test_degree_limits():
    with pytest.raises(PermError):
        subgroup_classes(symmetric(11))
    # solvable groups beyond degree 10 are allowed
    lat = subgroup_classes(external_direct_product(g225(), cyclic(2)))
    assert lat[len(lat) - 1].order == 160


def test_cache_round_trip(tmp_path, sym_lattices):
    S5 = symmetric(5)
    lat = cached_subgroup_classes(S5, "S5", tmp_path)
    path = cache_path(tmp_path, "S5")
    assert path.exists()
    again = cached_subgroup_classes(S5, "S5", tmp_path)
    assert [c.order for c in again.classes] == [c.order for c in lat.classes]
    assert [c.class_size for c in again.classes] == [c.class_size for c in lat.classes]
    H = PermGroup(5, [parse_cycles("(1 2 3)", 5)])
    assert again.locate(H) == lat.locate(H)


def test_cache_rejects_tampering(sym_lattices):
    S4 = symmetric(4)
    data = lattice_to_dict(sym_lattices[4], "S4")
    lattice_from_dict(json.loads(json.dumps(data)), S4)
    bad = json.loads(json.dumps(data))
    bad["classes"][3]["order"] += 1
    with pytest.raises(CacheError):
        lattice_from_dict(bad, S4)
    stale = dict(data, engine_version="0")
    with pytest.raises(CacheError):
        lattice_from_dict(stale, S4)
    with pytest.raises(CacheError):
        lattice_from_dict(data, symmetric(5))


def test_damaged_cache_is_rebuilt(tmp_path):
    S4 = symmetric(4)
    path = cache_path(tmp_path, "S4")
    path.write_text("{not json")
    lat = cached_subgroup_classes(S4, "S4", tmp_path)
    assert len(lat) == 11
    json.loads(path.read_text())
