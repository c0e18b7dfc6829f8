"""Acceptance criteria 1-10.  Each test records one pass/fail line that is
printed in the terminal summary."""

import itertools
import random
import time

import pytest

from mindegree.actions import external_direct_product, orbits
from mindegree.constructions import (
    c3wrs3,
    g225,
    h7,
    k8,
    l8,
    named_group,
    symmetric,
)
from mindegree.group import PermGroup, coset_action
from mindegree.lattice import brute_force_subgroups, subgroup_classes
from mindegree.mu import in_wright_class, mu, mu_exhaustive, verify_certificate
from mindegree.perm import format_cycles, identity, inv, mul, parse_cycles
from mindegree.spec_lang import parse_spec
from mindegree.structure import centralizer_in_sym, core, sym_conjugate
from mindegree.verifier import (
    check_centralizer_theorems,
    check_diagonal_lemma,
    check_L1,
    check_subdirect_uniqueness,
    exceptional_catalog,
    saunders_witness,
    sweep_products,
)


def brute_centralizer(G):
    """Every permutation of the points commuting with the generators."""
    n = G.degree
    gens = G.raw_gens
    return {p for p in itertools.permutations(range(n))
            if all(mul(p, g) == mul(g, p) for g in gens)}


def oracle_mu(G):
    return mu_exhaustive(G, brute_force_subgroups(G))[0]


def oracle_in_wright(G, mu_value):
    """Nilpotent subgroups from the brute-force lattice, degrees by the
    exhaustive search."""
    lat = brute_force_subgroups(G)
    return any(c.is_nilpotent and c.order > 1 and oracle_mu(c.representative) == mu_value
               for c in lat.classes)


# -- 1 -----------------------------------------------------------------------------

def test_criterion_1_h7(criterion):
    with criterion("1", "mu(H7)=7, C=<(4 5 6 7)>, H7 not in C"):
        t0 = time.time()
        H = h7()
        cert = mu(H)
        assert cert.mu == 7
        assert verify_certificate(H, cert)
        assert oracle_mu(H) == 7
        C = centralizer_in_sym(H)
        expected = PermGroup(7, [parse_cycles("(4 5 6 7)", 7)])
        assert C.element_set() == expected.element_set() == brute_centralizer(H)
        assert in_wright_class(H)[0] is False
        assert oracle_in_wright(H, 7) is False
        assert time.time() - t0 < 5


# -- 2 -----------------------------------------------------------------------------

def test_criterion_2_k8_l8(criterion):
    with criterion("2", "mu(K8)=mu(L8)=8, trivial centralizers, K8 not in C"):
        t0 = time.time()
        for G in (k8(), l8()):
            cert = mu(G)
            assert cert.mu == 8
            assert verify_certificate(G, cert)
            assert centralizer_in_sym(G).order() == 1
            assert brute_centralizer(G) == {identity(8)}
        assert oracle_mu(k8()) == 8
        assert in_wright_class(k8())[0] is False
        assert oracle_in_wright(k8(), 8) is False
        assert time.time() - t0 < 30


# -- 3 -----------------------------------------------------------------------------

@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_criterion_3_sweeps(criterion, sweep_context, n):
    with criterion(f"3 n={n}", "zero additivity violations"):
        report = sweep_products(n, context=sweep_context(n))
        assert report.lattice_complete is not False
        assert report.violations == []
        assert report.classes_minimally_embedded > 0


@pytest.mark.deep
@pytest.mark.parametrize("n", [8, 9])
def test_criterion_3_deep_sweeps(criterion, sweep_context, n):
    with criterion(f"3 n={n}", "zero additivity violations (deep)"):
        report = sweep_products(n, context=sweep_context(n))
        assert report.lattice_complete is not False
        assert report.violations == []


# -- 4 -----------------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_criterion_4_catalog(criterion, sweep_context, n):
    with criterion(f"4 n={n}", "exceptional classes"):
        ctx = sweep_context(n)
        found = exceptional_catalog(n, ctx)
        if n <= 6:
            assert found == []
        else:
            assert len(found) == 1
            assert sym_conjugate(ctx.rep(found[0]), h7()) is not None


@pytest.mark.deep
def test_criterion_4_deep_catalog(criterion, sweep_context):
    with criterion("4 n=8", "transitive exceptional classes are K8 and L8 (deep)"):
        ctx = sweep_context(8)
        found = exceptional_catalog(8, ctx, transitive_only=True)
        assert len(found) == 2
        reps = [ctx.rep(c) for c in found]
        for target in (k8(), l8()):
            assert sum(sym_conjugate(R, target) is not None for R in reps) == 1


# -- 5 -----------------------------------------------------------------------------

def test_criterion_5_witness10(criterion):
    with criterion("5", "mu(G225 x C2) = 10 < 12"):
        t0 = time.time()
        report = saunders_witness()
        assert report["mu_group"] == 10
        assert report["mu_centralizer"] == 2
        assert report["mu_product"] == 10
        assert report["strict"] is True
        G = g225()
        C = centralizer_in_sym(G)
        assert len(brute_centralizer(G)) == 2
        assert C.order() == 2 and len(G.element_set() & C.element_set()) == 1
        assert time.time() - t0 < 600


# -- 6 -----------------------------------------------------------------------------

def _assert_bijection(fast, oracle):
    assert len(fast) == len(oracle)
    assert fast.total_subgroups() == oracle.subgroup_count
    hit = set()
    for c in oracle.classes:
        cid = fast.locate(c.representative)
        f = fast[cid]
        assert f.order == c.order and f.class_size == c.class_size
        hit.add(cid)
    assert len(hit) == len(fast)


@pytest.mark.parametrize("spec", ["S3", "S4", "S5", "S6", "C3wrS3", "S3 x C4", "G225"])
def test_criterion_6_oracle(criterion, spec, s6_oracle):
    with criterion(f"6 {spec}", "class bijection with brute force"):
        G = parse_spec(spec).resolve()
        assert G.order() <= 2000
        oracle = s6_oracle if spec == "S6" else brute_force_subgroups(G)
        _assert_bijection(subgroup_classes(G), oracle)


# -- 7 -----------------------------------------------------------------------------

def _mu_corpus():
    corpus = {}
    for n in (4, 5, 6):
        for c in subgroup_classes(symmetric(n)).classes:
            if c.order <= 200:
                corpus[f"S{n}#{c.class_id}"] = c.representative
    for key in ("H7", "K8", "L8", "C3wrS3", "G225", "G225xC2", "H7xC2_9"):
        corpus[key] = named_group(key)
    for spec in ("C2 x C2 x C2", "C3 x C3", "C2 x C4", "S3 x C3", "Dih8 x C2", "C6 x C2",
                 "Dih10", "Dih12 x C2", "A4 x C2", "C5 x C4"):
        corpus[spec] = parse_spec(spec).resolve()
    return corpus


def test_criterion_7_mu_optimality(criterion):
    corpus = _mu_corpus()
    with criterion("7", f"branch and bound equals exhaustive search on {len(corpus)} groups"):
        assert len(corpus) >= 50
        for name, G in corpus.items():
            assert G.order() <= 200, name
            fast = mu(G)
            assert verify_certificate(G, fast), name
            assert fast.mu == oracle_mu(G), name


# -- 8 -----------------------------------------------------------------------------

def test_criterion_8_lemmas(criterion):
    with criterion("8", "diagonal and subdirect checks"):
        t0 = time.time()
        assert check_diagonal_lemma() is True
        assert check_subdirect_uniqueness() is True
        assert time.time() - t0 < 30


# -- 9 -----------------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_criterion_9_centralizers(criterion, sweep_context, n):
    with criterion(f"9 n={n}", "centralizer properties"):
        report = check_centralizer_theorems(n, sweep_context(n))
        assert report["failures"] == []


@pytest.mark.deep
@pytest.mark.parametrize("n", [8, 9])
def test_criterion_9_deep_centralizers(criterion, sweep_context, n):
    with criterion(f"9 n={n}", "centralizer properties (deep)"):
        report = check_centralizer_theorems(n, sweep_context(n))
        assert report["failures"] == []


# -- 10 ----------------------------------------------------------------------------

def test_criterion_10_orbit_stabilizer(criterion, sym_lattices):
    with criterion("10 orbit-stabilizer", "every class of Sym(n), n <= 6"):
        for n in range(1, 7):
            for c in sym_lattices[n].classes:
                G = c.representative
                for x in range(1, n + 1):
                    assert len(G.orbit(x)) * G.point_stabilizer(x).order() == G.order()


def test_criterion_10_core_is_kernel(criterion, sym_lattices):
    with criterion("10 core = kernel", "coset action kernels"):
        groups = [symmetric(4), symmetric(5), h7(), c3wrs3(), k8()]
        for G in groups:
            for c in subgroup_classes(G).classes:
                H = c.representative
                image, reps = coset_action(G, H)
                hset = H.element_set()
                kernel = {g for g in G.element_list()
                          if all(mul(mul(r, g), inv(r)) in hset for r in reps)}
                K = core(G, H)
                assert K.element_set() == kernel
                assert image.order() * len(kernel) == G.order()


def _random_spec(rng, max_degree):
    d = rng.randint(1, max_degree)
    kind = rng.choice(["S", "A", "C", "Dih", "deg"])
    if kind == "Dih":
        m = rng.randint(2, max(2, d))
        return f"Dih{2 * m}" if m <= max_degree else "C2"
    if kind == "deg":
        k = rng.randint(1, 2)
        perms = []
        for _ in range(k):
            img = list(range(d))
            rng.shuffle(img)
            perms.append(format_cycles(tuple(img)))
        return f"deg {d}: " + ", ".join(perms)
    if kind == "A" and d < 3:
        d = 3
    return f"{kind}{d}"


def test_criterion_10_subadditivity(criterion):
    rng = random.Random(20240101)
    memo = {}

    def mu_of(G):
        key = (G.degree, G.element_set())
        if key not in memo:
            memo[key] = mu(G, embed=False).mu
        return memo[key]

    checked = 0
    with criterion("10 subadditivity", "500 random spec pairs of total degree <= 9"):
        while checked < 500:
            a = _random_spec(rng, 8)
            A = parse_spec(a).resolve()
            if A.degree > 8:
                continue
            b = _random_spec(rng, 9 - A.degree)
            B = parse_spec(b).resolve()
            if A.degree + B.degree > 9:
                continue
            P = external_direct_product(A, B)
            assert mu_of(P) <= mu_of(A) + mu_of(B), (a, b)
            checked += 1


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_criterion_10_l1_clauses(criterion, sweep_context, n):
    with criterion(f"10 L1 n={n}", "orbit lemma clauses on intransitive minimal classes"):
        ctx = sweep_context(n)
        count = 0
        for c in ctx.lattice.classes:
            info = ctx.class_info(c.class_id) if not _has_fixed(c.representative) else None
            if not info or not info["minimal"] or info["transitive"]:
                continue
            clauses = check_L1(c.representative, ctx.mu_of, info["mu"])
            assert "fail" not in clauses.values(), (c.class_id, clauses)
            count += 1
        assert count > 0 or n < 4


def _has_fixed(G):
    return any(len(o) == 1 for o in orbits(G))
