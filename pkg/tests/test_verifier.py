import copy

import pytest

from mindegree.constructions import h7, h7xc2_9
from mindegree.group import PermGroup
from mindegree.perm import PermError, parse_cycles
from mindegree.spec_lang import parse_spec
from mindegree.structure import centralizer_in_sym, intersection
from mindegree.verifier import (
    centralizer_checks,
    check_L1,
    check_report,
    generate_table,
    named_constructions,
    saunders_witness,
    seal,
    sweep_products,
    table_csv,
)


def grp(degree, *cycles):
    return PermGroup(degree, [parse_cycles(c, degree) for c in cycles])


def test_named_constructions():
    for nc in named_constructions():
        assert nc.check(), nc.key


def test_l1_on_h7():
    clauses = check_L1(h7())
    assert clauses["iv"] == "pass"
    assert grp(7, "(1 2 3)").is_subgroup_of(h7())
    assert "fail" not in clauses.values()


def test_l1_splits_off_c2():
    clauses = check_L1(h7xc2_9())
    assert clauses["iii"] == "pass"
    assert clauses["i"] == clauses["ii"] == "pass"


def test_l1_prime_orbit():
    G = grp(9, "(5 6)(1 4 2 3)", "(5 6 7 8 9)")
    clauses = check_L1(G)
    assert clauses["vii"] == "pass"
    assert G.contains(parse_cycles("(5 6 7 8 9)", 9))


def test_l1_needs_minimal_embedding():
    with pytest.raises(PermError):
        check_L1(parse_spec("C6").resolve())


def test_h7_centralizer_meets_group():
    checks = centralizer_checks(h7(), in_c=False)
    assert checks["subgroups_meet_group"] == "pass"
    meet = intersection(centralizer_in_sym(h7()), h7())
    assert meet.element_set() == grp(7, "(4 6)(5 7)").element_set()


def test_regular_q8_centralizer_is_nonabelian():
    # Q8 acting on itself: minimal degree 8, centraliser is the other regular Q8
    Q8 = grp(8, "(1 6 5 2)(3 4 7 8)", "(1 3 5 7)(2 4 6 8)")
    checks = centralizer_checks(Q8, in_c=True)
    assert checks["order"] == "8"
    assert checks["abelian"] == "fail"
    assert checks["transitive_centralizer"] == "pass"
    assert checks["subgroups_meet_group"] == "pass"


@pytest.fixture(scope="module")
def report5(sweep_context):
    return sweep_products(5, context=sweep_context(5)).to_dict()


def test_report_checks(report5):
    assert report5["violations"] == []
    assert check_report(report5)


def test_report_tampering(report5):
    cid = next(iter(report5["certificates"]))
    bad = copy.deepcopy(report5)
    bad["certificates"][cid]["witness_orders"][0] += 1
    assert not check_report(bad)
    # a forger who also recomputes the checksum is still caught
    assert not check_report(seal(bad))
    bad = copy.deepcopy(report5)
    bad["entries"][0]["mu"] += 1
    assert check_report(seal(bad)).problems


def test_parallel_sweep_is_identical(sweep_context):
    ctx = sweep_context(6)
    serial = sweep_products(6, context=ctx).to_dict()
    parallel = sweep_products(6, context=ctx, jobs=2).to_dict()
    assert serial == parallel


def test_witness_report():
    report = saunders_witness()
    assert report["summary"] == "10 < 12: strict inequality"
    assert check_report(report)


def test_table(sweep_context):
    table = generate_table(7, {n: sweep_context(n) for n in range(1, 8)})
    rows = table["rows"]
    assert table["partial"] is False
    assert table["unresolved"] == []
    pairs = {(r["order"], r["mu"]) for r in rows}
    assert (6, 5) in pairs and (6, 3) in pairs
    # order 12 at degree 7: C12, C2 x C6 and H7, only the last outside the class
    rows12 = [r for r in rows if r["order"] == 12 and r["mu"] == 7]
    assert len(rows12) == 3
    assert [r["in_wright_class"] for r in rows12].count(False) == 1
    assert [r["order"] for r in rows] == sorted(r["order"] for r in rows)
    assert check_report(table)
    assert table_csv(table).splitlines()[0] == "label,order,mu,in_wright_class,generators"
