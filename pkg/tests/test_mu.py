import copy

import pytest

from mindegree.constructions import cyclic, g225, h7, named_group, symmetric
from mindegree.group import PermGroup
from mindegree.lattice import brute_force_subgroups
from mindegree.mu import (
    MuCertificate,
    in_wright_class,
    minimal_embedding,
    mu,
    mu_exhaustive,
    verify_certificate,
)
from mindegree.spec_lang import parse_spec

# values confirmed by the exhaustive search over brute-force lattices
EXPECTED = {
    "C6": 5, "C2 x C2": 4, "S4": 4, "S6": 6, "H7": 7, "K8": 8, "L8": 8,
    "G225": 10, "G225xC2": 10, "C3 x C3": 6, "Dih8": 4, "Dih12": 5,
    "deg 8: (1 2 3 4)(5 6 7 8), (1 5 3 7)(2 8 4 6)": 8,
}


@pytest.mark.parametrize("spec,value", sorted(EXPECTED.items()))
def test_known_values(spec, value):
    G = parse_spec(spec).resolve()
    cert = mu(G)
    assert cert.mu == value
    assert verify_certificate(G, cert)


@pytest.mark.parametrize("spec", ["C6", "H7", "S4", "C2 x C2", "Dih12", "G225"])
def test_exhaustive_agrees(spec):
    G = parse_spec(spec).resolve()
    assert mu_exhaustive(G, brute_force_subgroups(G))[0] == EXPECTED[spec]


def test_trivial_group():
    cert = mu(PermGroup.trivial(3))
    assert cert.mu == 0 and cert.witness == []
    assert verify_certificate(PermGroup.trivial(3), cert)


def test_embedding_is_faithful_and_minimal():
    G = h7()
    cert = mu(G)
    E = minimal_embedding(G, cert)
    assert E.degree == 7 and E.order() == 12


def test_certificate_round_trip():
    G = named_group("G225")
    cert = mu(G)
    again = MuCertificate.from_dict(cert.to_dict())
    assert again.to_dict() == cert.to_dict()
    assert verify_certificate(G, again)


def _tampered(cert, field, value):
    d = copy.deepcopy(cert.to_dict())
    if field == "mu":
        d["mu"] = value
    elif field == "witness_gens":
        d["witness_gens"][0] = value
    elif field == "witness_orders":
        d["witness_orders"][0] = value
    elif field == "embedding":
        d["embedding"]["images"][0] = value
    return MuCertificate.from_dict(d)


def test_tampering_rejected():
    G = parse_spec("C6").resolve()
    cert = mu(G)
    assert verify_certificate(G, _tampered(cert, "mu", 6)).reason == "index-sum"
    assert not verify_certificate(G, _tampered(cert, "witness_orders", 5))
    assert not verify_certificate(G, _tampered(cert, "witness_gens", ["(1 2)(3 4)"]))
    assert not verify_certificate(G, _tampered(cert, "embedding", "()"))
    assert verify_certificate(symmetric(3), cert).reason == "group-mismatch"


def test_non_core_free_witness_rejected():
    G = symmetric(4)
    cert = mu(G)
    d = cert.to_dict()
    # A4 has index 2 but is normal, so alone it is not faithful
    d["witness"] = [0]
    d["witness_gens"] = [["(1 2 3)", "(2 3 4)"]]
    d["witness_orders"] = [12]
    d["mu"] = 2
    d["embedding"]["images"] = []
    assert verify_certificate(G, MuCertificate.from_dict(d)).reason == "not-core-free"


@pytest.mark.parametrize("spec,member", [
    ("C6", True), ("S4", True), ("S6", True), ("G225xC2", True), ("C2 x C2", True),
    ("H7", False), ("K8", False), ("G225", False),
])
def test_wright_class(spec, member):
    G = parse_spec(spec).resolve()
    assert in_wright_class(G)[0] is member


def test_cyclic_prime_powers():
    # mu(C_n) is the sum of the prime-power parts of n
    for n, value in [(4, 4), (6, 5), (10, 7), (12, 7), (15, 8)]:
        assert mu(cyclic(n)).mu == value


def test_g225_embedding_degree():
    cert = mu(g225())
    assert cert.mu == 10 and sum(80 // o for o in cert.witness_orders) == 10
