"""Sweeps over subgroup classes of Sym(n) checking additivity of minimal
degrees over direct products, plus targeted constructions.

Every group ``G`` with ``mu(G) = n`` appears, up to isomorphism, as a
subgroup class of ``Sym(n)`` moving all ``n`` points and having minimal
degree ``n``.  A sweep therefore visits those classes, computes the
minimal degree of both factors of each direct decomposition, and records
any decomposition where the degrees do not add up.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from multiprocessing import get_context
from typing import Callable

from .actions import (
    external_direct_product,
    fixed_points,
    is_transitive,
    minimal_block_systems,
    orbits,
    projection,
)
from .constructions import (
    c3wrs3,
    cyclic,
    g225,
    g225_base_member,
    h7,
    named_group,
    pad,
    symmetric,
)
from .group import PermGroup
from .lattice import (
    ENGINE_VERSION,
    SubgroupLattice,
    _prime_factors,
    cached_subgroup_classes,
    canonical_json,
    lattice_to_dict,
    subgroup_classes,
)
from .mu import MuCertificate, in_wright_class, mu, verify_certificate
from .perm import Perm, PermError, format_cycles, identity, inv, mul, parse_cycles, perm_order
from .structure import (
    DirectDecomposition,
    IsoVerdict,
    centralizer_in_sym,
    direct_decompositions,
    invariants,
    is_abelian,
    is_elementary_abelian,
    is_isomorphic,
    normal_subgroups,
    normalizer,
    sym_conjugate,
)

__all__ = [
    "NamedConstruction",
    "SweepContext",
    "VerificationReport",
    "check_L1",
    "check_centralizer_theorems",
    "check_diagonal_lemma",
    "check_report",
    "check_subdirect_uniqueness",
    "exceptional_catalog",
    "generate_table",
    "named_group",
    "saunders_witness",
    "sweep_products",
]


def _digest(data: dict) -> str:
    body = {k: v for k, v in data.items() if k != "checksum"}
    return hashlib.sha256(canonical_json(body).encode()).hexdigest()


def seal(data: dict) -> dict:
    """Attach a checksum over the canonical JSON of the other fields."""
    data = dict(data)
    data["checksum"] = _digest(data)
    return data


def _gens(G: PermGroup) -> list[str]:
    return G.cycle_strings()


def _group(degree: int, gens) -> PermGroup:
    return PermGroup(degree, [parse_cycles(s, degree) for s in gens])


# -- named constructions -------------------------------------------------------------

@dataclass
class NamedConstruction:
    key: str
    group: PermGroup
    expected_order: int
    transitive: bool | None = None
    primitive: bool | None = None

    def check(self) -> bool:
        G = self.group
        if G.order() != self.expected_order:
            return False
        if self.transitive is not None and is_transitive(G) != self.transitive:
            return False
        if self.primitive is not None:
            prim = is_transitive(G) and not minimal_block_systems(G)
            if prim != self.primitive:
                return False
        return True


def named_constructions() -> list[NamedConstruction]:
    return [
        NamedConstruction("H7", named_group("H7"), 12, transitive=False),
        NamedConstruction("K8", named_group("K8"), 56, transitive=True, primitive=True),
        NamedConstruction("L8", named_group("L8"), 168, transitive=True, primitive=True),
        NamedConstruction("H7xC2_9", named_group("H7xC2_9"), 24, transitive=False),
        NamedConstruction("C3wrS3", named_group("C3wrS3"), 162, transitive=True, primitive=False),
        NamedConstruction("G225", named_group("G225"), 80, transitive=True, primitive=False),
        NamedConstruction("G225xC2", named_group("G225xC2"), 160, transitive=True, primitive=False),
    ]


# -- Lemma-style checks on a minimally embedded group -----------------------------------

def _local(elems, pts0: set[int], n: int) -> list[tuple]:
    """Elements moving only points in ``pts0`` (0-based)."""
    outside = [x for x in range(n) if x not in pts0]
    return [e for e in elems if all(e[x] == x for x in outside)]


def _cycle_on(n: int, pts1: list[int]) -> tuple:
    img = list(range(n))
    for a, b in zip(pts1, pts1[1:] + pts1[:1]):
        img[a - 1] = b - 1
    return tuple(img)


def check_L1(G: PermGroup, mu_of: Callable[[PermGroup], int] | None = None,
             mu_value: int | None = None) -> dict[str, str]:
    """Clause-by-clause check of the orbit lemma for a group whose minimal
    degree equals its degree.  Values are ``pass``, ``fail`` or ``n/a``."""
    n = G.degree
    if mu_of is None:
        mu_of = lambda U: mu(U, embed=False).mu  # noqa: E731
    if mu_value is None:
        mu_value = mu_of(G)
    if mu_value != n:
        raise PermError("check_L1 needs a group whose minimal degree equals its degree")
    orbs = orbits(G)
    elems = G.element_list()
    sizes = [len(o) for o in orbs]
    out: dict[str, str] = {}

    ok = True
    for r in range(1, len(orbs) + 1):
        for X in itertools.combinations(range(len(orbs)), r):
            pts = sorted(p for i in X for p in orbs[i])
            if mu_of(projection(G, pts)) != len(pts):
                ok = False
    out["i"] = "pass" if ok else "fail"

    locals_ = [_local(elems, {p - 1 for p in o}, n) for o in orbs]
    out["ii"] = "pass" if all(len(loc) > 1 for loc in locals_) else "fail"

    verdicts = []
    for i, o in enumerate(orbs):
        if len(o) != 2:
            continue
        g = _cycle_on(n, o)
        rest = [p for p in range(1, n + 1) if p not in o]
        kernel = [e for e in elems if e[o[0] - 1] == o[0] - 1]
        split = g in locals_[i] and 2 * len(kernel) == len(elems)
        verdicts.append(split and (not rest or mu_of(projection(G, rest)) == len(rest)))
    out["iii"] = _verdict(verdicts)

    verdicts = []
    for i, o in enumerate(orbs):
        if len(o) == 3:
            verdicts.append(any(perm_order(e) == 3 for e in locals_[i]))
    out["iv"] = _verdict(verdicts)

    verdicts_v, verdicts_vi = [], []
    for i, o in enumerate(orbs):
        if len(o) != 4:
            continue
        loc = set(locals_[i])
        if any(perm_order(e) == 3 for e in loc):
            three_cycles = [_cycle_on(n, list(c)) for c in itertools.permutations(o, 3) if c[0] == min(c)]
            verdicts_v.append(all(c in loc for c in three_cycles))
        for a, b in itertools.combinations(o, 2):
            if _cycle_on(n, [a, b]) in loc:
                c, d = [p for p in o if p not in (a, b)]
                verdicts_vi.append(_cycle_on(n, [c, d]) in loc)
    out["v"] = _verdict(verdicts_v)
    out["vi"] = _verdict(verdicts_vi)

    verdicts = []
    for i, o in enumerate(orbs):
        p = len(o)
        others = sizes[:i] + sizes[i + 1:]
        if len(_prime_factors(p)) == 1 and _prime_factors(p)[0] == p and all(p > s for s in others):
            verdicts.append(any(perm_order(e) == p for e in locals_[i]))
    out["vii"] = _verdict(verdicts)
    return out


def _verdict(results: list[bool]) -> str:
    if not results:
        return "n/a"
    return "pass" if all(results) else "fail"


def centralizer_checks(D: PermGroup, in_c: bool) -> dict[str, str]:
    """Centraliser properties for a minimally embedded group ``D``."""
    n = D.degree
    C = centralizer_in_sym(D)
    celems = C.element_list()
    out = {"order": str(C.order()), "gens": " ".join(_gens(C)) or "()"}
    out["abelian"] = "pass" if is_abelian(C) else "fail"
    if is_transitive(D):
        H = D.point_stabilizer(1)
        N = normalizer(D, H)
        semi = all(all(c[x] != x for x in range(n)) for c in celems if c != identity(n))
        out["transitive_centralizer"] = (
            "pass" if C.order() * H.order() == N.order() and semi else "fail")
    else:
        out["transitive_centralizer"] = "n/a"
    # every nontrivial subgroup of C meets D iff every prime-order element of C lies in D
    meets = all(D.contains(c) for c in celems if len(_prime_factors(perm_order(c))) == 1
                and _prime_factors(perm_order(c))[0] == perm_order(c))
    out["subgroups_meet_group"] = "pass" if meets else "fail"
    if in_c and is_elementary_abelian(C) and C.order() > 1:
        out["elementary_abelian_inside"] = "pass" if C.is_subgroup_of(D) else "fail"
    else:
        out["elementary_abelian_inside"] = "n/a"
    if n == 9 and is_transitive(D) and C.order() > 1:
        ok = C.is_subgroup_of(D) and (is_abelian(D) or C.order() == 3)
        out["transitive_nine"] = "pass" if ok else "fail"
    else:
        out["transitive_nine"] = "n/a"
    return out


# -- sweep ---------------------------------------------------------------------------

class SweepContext:
    """Shared state for one degree: the Sym(n) lattice and memoised minimal
    degrees keyed by Sym(n)-class."""

    def __init__(self, n: int, lattice: SubgroupLattice | None = None,
                 cache_dir=None, lattice_budget: int | None = None,
                 time_budget: float | None = None):
        self.n = n
        self.ambient = symmetric(n)
        t0 = time.time()
        if lattice is None:
            lattice = cached_subgroup_classes(self.ambient, f"S{n}", cache_dir,
                                              budget=lattice_budget, time_budget=time_budget)
        self.lattice = lattice
        self.lattice_seconds = time.time() - t0
        self._mu: dict[int, MuCertificate] = {}
        self._wright: dict[int, tuple[bool, int | None]] = {}
        self._info: dict[int, dict] = {}
        self._lattice_checksum: str | None = None

    @property
    def complete(self):
        return self.lattice.complete

    def lattice_checksum(self) -> str:
        if self._lattice_checksum is None:
            self._lattice_checksum = lattice_to_dict(self.lattice, f"S{self.n}")["checksum"]
        return self._lattice_checksum

    def rep(self, cid: int) -> PermGroup:
        return self.lattice[cid].representative

    def sub_lattice(self, cid: int) -> SubgroupLattice:
        D = self.rep(cid)
        if D.order() == self.ambient.order():
            return self.lattice
        return subgroup_classes(D)

    def locate(self, U: PermGroup) -> tuple[int, Perm]:
        if U.degree < self.n:
            U = pad(U, self.n)
        return self.lattice.locate_with_transporter(U)

    def mu_cert(self, cid: int, lattice: SubgroupLattice | None = None) -> MuCertificate:
        if cid not in self._mu:
            self._mu[cid] = mu(self.rep(cid), lattice or self.sub_lattice(cid))
        return self._mu[cid]

    def mu_of(self, U: PermGroup) -> int:
        return self.mu_cert(self.locate(U)[0]).mu

    def wright(self, cid: int, lattice: SubgroupLattice | None = None) -> tuple[bool, int | None]:
        """Membership in Wright's class, with the Sym(n)-class of a
        nilpotent witness."""
        if cid not in self._wright:
            D = self.rep(cid)
            lat = lattice or self.sub_lattice(cid)
            ok, wid = in_wright_class(D, lat, self.mu_cert(cid, lat).mu, self.mu_of)
            sym_id = None
            if ok and wid is not None:
                sym_id = self.locate(lat[wid].representative)[0]
            self._wright[cid] = (ok, sym_id)
        return self._wright[cid]

    def ref(self, U: PermGroup) -> dict:
        cid, t = self.locate(U)
        return {"gens": _gens(U), "class_id": cid, "transporter": format_cycles(t)}

    def class_info(self, cid: int) -> dict:
        if cid in self._info:
            return self._info[cid]
        n = self.n
        D = self.rep(cid)
        lat = self.sub_lattice(cid)
        cert = self.mu_cert(cid, lat)
        info = {
            "class_id": cid,
            "gens": _gens(D),
            "order": D.order(),
            "orbit_sizes": [len(o) for o in orbits(D)],
            "transitive": is_transitive(D),
            "mu": cert.mu,
            "minimal": cert.mu == n,
        }
        if cert.mu == n:
            in_c, wid = self.wright(cid, lat)
            info["in_wright_class"] = in_c
            info["wright_witness"] = wid
            decs = []
            for dec in direct_decompositions(D, lat):
                left, right = self.ref(dec.left), self.ref(dec.right)
                ml = self.mu_cert(left["class_id"]).mu
                mr = self.mu_cert(right["class_id"]).mu
                decs.append({
                    "left": left, "right": right, "mu_left": ml, "mu_right": mr,
                    "left_in_wright_class": self.wright(left["class_id"])[0],
                    "right_in_wright_class": self.wright(right["class_id"])[0],
                    "additive": ml + mr == cert.mu,
                })
            info["decompositions"] = decs
            if not info["transitive"]:
                info["L1"] = check_L1(D, self.mu_of, cert.mu)
            info["centralizer"] = centralizer_checks(D, in_c)
        self._info[cid] = info
        return info

    def referenced_classes(self, info: dict) -> set[int]:
        ids = {info["class_id"]}
        if info.get("wright_witness") is not None:
            ids.add(info["wright_witness"])
        for d in info.get("decompositions", ()):
            ids.add(d["left"]["class_id"])
            ids.add(d["right"]["class_id"])
        return ids


@dataclass
class VerificationReport:
    degree: int
    classes_total: int
    classes_fixed_point_free: int
    classes_minimally_embedded: int
    decompositions_checked: int
    violations: list[dict]
    check_failures: list[dict]
    exceptional_classes: list[int]
    lattice_complete: bool | str
    entries: list[dict] = field(default_factory=list)
    certificates: dict[str, dict] = field(default_factory=dict)
    class_gens: dict[str, list[str]] = field(default_factory=dict)
    info: dict = field(default_factory=dict)
    lattice_checksum: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.check_failures and self.lattice_complete is not False

    def to_dict(self) -> dict:
        """Machine form; wall-clock timing is left out so reruns are
        byte-identical."""
        return seal({
            "kind": "sweep",
            "engine_version": ENGINE_VERSION,
            "degree": self.degree,
            "lattice_checksum": self.lattice_checksum,
            "lattice_complete": self.lattice_complete,
            "classes_total": self.classes_total,
            "classes_fixed_point_free": self.classes_fixed_point_free,
            "classes_minimally_embedded": self.classes_minimally_embedded,
            "decompositions_checked": self.decompositions_checked,
            "violations": self.violations,
            "check_failures": self.check_failures,
            "exceptional_classes": self.exceptional_classes,
            "info": self.info,
            "entries": self.entries,
            "certificates": self.certificates,
            "class_gens": self.class_gens,
        })

    def render_text(self) -> str:
        lines = [
            f"degree {self.degree}: subgroup classes of Sym({self.degree}) with minimal degree {self.degree}",
            f"lattice: {self.classes_total} classes, complete: {_fmt_complete(self.lattice_complete)}",
            f"classes moving every point: {self.classes_fixed_point_free}",
            f"minimally embedded classes: {self.classes_minimally_embedded}",
            f"direct decompositions checked: {self.decompositions_checked}",
            f"violations: {len(self.violations)}",
            f"property check failures: {len(self.check_failures)}",
            f"classes outside Wright's class: {self.exceptional_classes}",
        ]
        for k, v in sorted(self.info.items()):
            lines.append(f"info {k}: {v}")
        lines.append(f"time: {self.seconds:.1f} s")
        return "\n".join(lines)


def _fmt_complete(c) -> str:
    return "assumed" if c == "assumed" else ("yes" if c else "no")


_WORKER: SweepContext | None = None


def _worker_info(cid: int) -> tuple[dict, dict[int, dict]]:
    ctx = _WORKER
    info = ctx.class_info(cid)
    certs = {i: ctx.mu_cert(i).to_dict() for i in ctx.referenced_classes(info)}
    return info, certs


def sweep_products(n: int, context: SweepContext | None = None, cache_dir=None,
                   jobs: int = 1, lattice_budget: int | None = None,
                   time_budget: float | None = None) -> VerificationReport:
    """Check ``mu(L x R) = mu(L) + mu(R)`` for every direct decomposition of
    every minimally embedded subgroup class of ``Sym(n)``."""
    global _WORKER
    if not 1 <= n <= 9:
        raise PermError("sweeps cover degrees 1..9")
    t0 = time.time()
    ctx = context or SweepContext(n, cache_dir=cache_dir, lattice_budget=lattice_budget,
                                  time_budget=time_budget)
    lat = ctx.lattice
    fpf = [c.class_id for c in lat.classes if not fixed_points(c.representative)]
    results: list[tuple[dict, dict]] = []
    if jobs > 1 and len(fpf) > 1:
        _WORKER = ctx
        try:
            with ProcessPoolExecutor(max_workers=jobs, mp_context=get_context("fork")) as pool:
                results = list(pool.map(_worker_info, fpf, chunksize=1))
        finally:
            _WORKER = None
    else:
        for cid in fpf:
            info = ctx.class_info(cid)
            certs = {i: ctx.mu_cert(i).to_dict() for i in ctx.referenced_classes(info)}
            results.append((info, certs))

    entries, certificates, class_gens = [], {}, {}
    violations, failures, exceptional = [], [], []
    decomp_count = 0
    minimal = 0
    for info, certs in results:
        entries.append(info)
        for i, c in certs.items():
            certificates[str(i)] = c
            class_gens[str(i)] = _gens(ctx.rep(i))
        if not info["minimal"]:
            continue
        minimal += 1
        if not info["in_wright_class"]:
            exceptional.append(info["class_id"])
        for d in info["decompositions"]:
            decomp_count += 1
            if not d["additive"]:
                violations.append({"class_id": info["class_id"], "kind": "additivity",
                                   "left": d["left"], "right": d["right"],
                                   "mu": info["mu"], "mu_left": d["mu_left"], "mu_right": d["mu_right"]})
            if info["mu"] > d["mu_left"] + d["mu_right"]:
                failures.append({"class_id": info["class_id"], "kind": "subadditivity"})
            if d["left_in_wright_class"] and d["right_in_wright_class"] and not info["in_wright_class"]:
                failures.append({"class_id": info["class_id"], "kind": "wright-product"})
        for clause, v in info.get("L1", {}).items():
            if v == "fail":
                failures.append({"class_id": info["class_id"], "kind": f"L1({clause})"})
        for name, v in info["centralizer"].items():
            if v == "fail":
                failures.append({"class_id": info["class_id"], "kind": f"centralizer:{name}"})

    by_id = {e["class_id"]: e for e in entries}
    trans = [c for c in exceptional if by_id[c]["transitive"]]
    patterns = sorted({tuple(sorted(by_id[c]["orbit_sizes"])) for c in exceptional
                       if not by_id[c]["transitive"]})
    trans_types: list[PermGroup] = []
    for c in trans:
        D = ctx.rep(c)
        if not any(is_isomorphic(D, E) == IsoVerdict.YES for E in trans_types):
            trans_types.append(D)
    report = VerificationReport(
        degree=n,
        classes_total=len(lat),
        classes_fixed_point_free=len(fpf),
        classes_minimally_embedded=minimal,
        decompositions_checked=decomp_count,
        violations=violations,
        check_failures=failures,
        exceptional_classes=exceptional,
        lattice_complete=lat.complete,
        entries=entries,
        certificates=certificates,
        class_gens=class_gens,
        info={
            "exceptional_transitive": len(trans),
            "exceptional_transitive_iso_types": len(trans_types),
            "exceptional_intransitive": len(exceptional) - len(trans),
            "exceptional_intransitive_orbit_sizes": [list(p) for p in patterns],
        },
        lattice_checksum=ctx.lattice_checksum(),
    )
    report.seconds = time.time() - t0
    return report


def exceptional_catalog(n: int, context: SweepContext | None = None,
                        transitive_only: bool = False) -> list[int]:
    """Sym(n)-classes with minimal degree ``n`` outside Wright's class
    (classes are already distinct up to permutation equivalence)."""
    ctx = context or SweepContext(n)
    out = []
    for c in ctx.lattice.classes:
        if fixed_points(c.representative):
            continue
        info = ctx.class_info(c.class_id)
        if info["minimal"] and not info["in_wright_class"]:
            if transitive_only and not info["transitive"]:
                continue
            out.append(c.class_id)
    return out


def check_centralizer_theorems(n: int, context: SweepContext | None = None) -> dict:
    """Centraliser properties over every minimally embedded class of Sym(n)."""
    ctx = context or SweepContext(n)
    failures = []
    checked = 0
    for c in ctx.lattice.classes:
        if fixed_points(c.representative):
            continue
        info = ctx.class_info(c.class_id)
        if not info["minimal"]:
            continue
        checked += 1
        for name, v in info["centralizer"].items():
            if v == "fail":
                failures.append((c.class_id, name))
    return {"degree": n, "classes_checked": checked, "failures": failures, "ok": not failures}


# -- targeted constructions ------------------------------------------------------------

def check_diagonal_lemma() -> bool:
    """In ``W = C3 wr Sym(3)`` the nontrivial normal subgroups inside the
    base ``B`` are exactly ``V < U < B`` with ``V`` the diagonal and ``U``
    the exponent-sum-zero subgroup."""
    W = c3wrs3()
    x = [_cycle_on(9, [1, 2, 3]), _cycle_on(9, [4, 5, 6]), _cycle_on(9, [7, 8, 9])]
    B = PermGroup(9, x)
    bset = B.element_set()

    def word(i, j, k):
        e = identity(9)
        for g, r in zip(x, (i, j, k)):
            for _ in range(r):
                e = mul(e, g)
        return e

    V = frozenset(word(i, i, i) for i in range(3))
    U = frozenset(word(i, j, k) for i in range(3) for j in range(3) for k in range(3)
                  if (i + j + k) % 3 == 0)
    expected = {V, U, bset}
    lat = subgroup_classes(W)
    from_lattice = {c.representative.element_set() for c in lat.classes
                    if c.is_normal and c.order > 1 and c.representative.element_set() <= bset}
    from_closures = {N.element_set() for N in normal_subgroups(W)
                     if N.order() > 1 and N.element_set() <= bset}
    return (from_lattice == expected and from_closures == expected and V < U < bset
            and len(V) == 3 and len(U) == 9 and len(bset) == 27)


def check_subdirect_uniqueness(details: bool = False):
    """Proper subdirect products of ``Sym(3) x C4``: one class, isomorphic
    to H7, and it is the only subdirect subgroup of order 12 containing an
    element of order 4."""
    P = external_direct_product(symmetric(3), cyclic(4))
    lat = subgroup_classes(P)
    left, right = [1, 2, 3], [4, 5, 6, 7]

    def subdirect(G: PermGroup) -> bool:
        return projection(G, left).order() == 6 and projection(G, right).order() == 4

    proper = [c for c in lat.classes if c.order < P.order() and subdirect(c.representative)]
    iso = [is_isomorphic(c.representative, h7()) == IsoVerdict.YES for c in proper]
    order12_with_4 = [c for c in lat.classes if c.order == 12
                      and any(perm_order(e) == 4 for e in c.representative.element_list())]
    sub12 = [c for c in order12_with_4 if subdirect(c.representative)]
    sub12_count = sum(c.class_size for c in sub12)
    ok = len(proper) == 1 and all(iso) and sub12_count == 1
    if details:
        return ok, {
            "proper_subdirect_classes": len(proper),
            "isomorphic_to_H7": all(iso),
            "order12_with_order4_subdirect": sub12_count,
            "order12_with_order4_all": sum(c.class_size for c in order12_with_4),
        }
    return ok


def saunders_witness() -> dict:
    """The degree-10 group ``G`` with ``mu(G x C2) = mu(G) = 10`` where the
    ``C2`` is its centraliser in Sym(10).  Any failed check raises."""
    G = g225()
    cert_g = mu(G)
    assert cert_g.mu == 10, f"mu(G225) = {cert_g.mu}"
    C = centralizer_in_sym(G)
    assert C.order() == 2, f"|C| = {C.order()}"
    meet = G.element_set() & C.element_set()
    assert len(meet) == 1, "centraliser meets G"
    D = PermGroup(10, list(G.raw_gens) + list(C.raw_gens))
    assert DirectDecomposition(G, C).is_valid(D), "G and C do not form a direct product"
    base = [e for e in G.element_list() if all(e[i] in (i, (i + 5) % 10) for i in range(10))]
    assert len(base) == 16 and all(g225_base_member(e) for e in base), "base group mismatch"
    cert_d = mu(D)
    abstract = external_direct_product(G, cyclic(2))
    cert_abs = mu(abstract)
    cert_c = mu(C)
    assert cert_c.mu == 2
    assert cert_d.mu == 10 and cert_abs.mu == 10, (cert_d.mu, cert_abs.mu)
    total = cert_g.mu + cert_c.mu
    assert cert_abs.mu < total
    for grp, cert in ((G, cert_g), (D, cert_d), (abstract, cert_abs), (C, cert_c)):
        assert verify_certificate(grp, cert), "certificate failed re-verification"
    return seal({
        "kind": "witness10",
        "engine_version": ENGINE_VERSION,
        "group": _gens(G),
        "centralizer": _gens(C),
        "mu_group": cert_g.mu,
        "mu_centralizer": cert_c.mu,
        "mu_product": cert_abs.mu,
        "mu_internal_product": cert_d.mu,
        "strict": cert_abs.mu < total,
        "summary": f"{cert_abs.mu} < {total}: strict inequality",
        "certificates": {
            "group": cert_g.to_dict(),
            "centralizer": cert_c.to_dict(),
            "internal_product": cert_d.to_dict(),
            "product": cert_abs.to_dict(),
        },
    })


# -- table -------------------------------------------------------------------------------

def generate_table(max_degree: int, contexts: dict[int, SweepContext] | None = None,
                   cache_dir=None) -> dict:
    """Isomorphism types with minimal degree at most ``max_degree``, one row
    each, with minimal degree and Wright-class membership."""
    if not 1 <= max_degree <= 9:
        raise PermError("table covers degrees 1..9")
    contexts = contexts or {}
    rows = [{"order": 1, "mu": 0, "in_wright_class": True, "degree": 0, "gens": []}]
    unresolved = []
    partial = False
    for m in range(1, max_degree + 1):
        ctx = contexts.get(m) or SweepContext(m, cache_dir=cache_dir)
        contexts[m] = ctx
        if ctx.complete is False:
            partial = True
        kept: list[tuple[tuple, PermGroup, dict]] = []
        for c in ctx.lattice.classes:
            if fixed_points(c.representative):
                continue
            info = ctx.class_info(c.class_id)
            if not info["minimal"]:
                continue
            G = c.representative
            inv = invariants(G)
            duplicate = False
            for inv2, G2, _ in kept:
                if inv2 != inv:
                    continue
                verdict = is_isomorphic(G, G2)
                if verdict == IsoVerdict.YES:
                    duplicate = True
                    break
                if verdict == IsoVerdict.UNRESOLVED:
                    unresolved.append([_gens(G), _gens(G2)])
            if not duplicate:
                kept.append((inv, G, info))
        for _, G, info in kept:
            rows.append({"order": G.order(), "mu": m, "in_wright_class": info["in_wright_class"],
                         "degree": m, "gens": _gens(G)})
    rows.sort(key=lambda r: (r["order"], r["mu"], r["gens"]))
    counter: dict[int, int] = {}
    for r in rows:
        counter[r["order"]] = counter.get(r["order"], 0) + 1
        r["label"] = f"{r['order']}#{counter[r['order']]}"
    return seal({"kind": "table", "engine_version": ENGINE_VERSION, "max_degree": max_degree,
                 "partial": partial, "rows": rows, "unresolved": unresolved})


def table_csv(table: dict) -> str:
    lines = ["label,order,mu,in_wright_class,generators"]
    for r in table["rows"]:
        gens = " ".join(r["gens"]) or "()"
        lines.append(f"{r['label']},{r['order']},{r['mu']},{str(r['in_wright_class']).lower()},\"{gens}\"")
    return "\n".join(lines) + "\n"


def table_text(table: dict) -> str:
    lines = [f"{'label':<10}{'order':>7}{'mu':>5}  wright  generators"]
    for r in table["rows"]:
        lines.append(f"{r['label']:<10}{r['order']:>7}{r['mu']:>5}  "
                     f"{'yes' if r['in_wright_class'] else 'no ':<6}  {' '.join(r['gens']) or '()'}")
    if table["unresolved"]:
        lines.append(f"unresolved isomorphism pairs: {len(table['unresolved'])}")
    if table["partial"]:
        lines.append("table is partial (a lattice was incomplete)")
    return "\n".join(lines)


# -- standalone re-checker ---------------------------------------------------------------------

@dataclass
class CheckOutcome:
    ok: bool
    problems: list[str]

    def __bool__(self) -> bool:
        return self.ok


def _check_cert(cert_d: dict, problems: list[str], where: str) -> MuCertificate | None:
    try:
        cert = MuCertificate.from_dict(cert_d)
        G = cert.group()
    except (ValueError, KeyError, TypeError) as exc:
        problems.append(f"{where}: malformed certificate ({exc})")
        return None
    res = verify_certificate(G, cert)
    if not res:
        problems.append(f"{where}: certificate rejected ({res.reason})")
        return None
    return cert


def check_report(data: dict) -> CheckOutcome:
    """Re-verify a report from its own contents, without lattices.

    Certificates prove that each claimed degree is attained; the checker
    also re-derives every decomposition, transporter and arithmetic claim.
    """
    problems: list[str] = []
    if data.get("checksum") != _digest(data):
        return CheckOutcome(False, ["checksum mismatch"])
    kind = data.get("kind")
    if data.get("engine_version") != ENGINE_VERSION:
        problems.append("engine version mismatch")
    if kind == "sweep":
        _check_sweep(data, problems)
    elif kind == "witness10":
        certs = {k: _check_cert(v, problems, k) for k, v in data["certificates"].items()}
        if all(certs.values()):
            if certs["product"].mu != data["mu_product"] or certs["group"].mu != data["mu_group"]:
                problems.append("claimed degrees differ from certificates")
            if not data["mu_product"] < data["mu_group"] + data["mu_centralizer"]:
                problems.append("inequality not strict")
    elif kind == "certificate":
        _check_cert(data["certificate"], problems, "certificate")
    elif kind == "table":
        for r in data["rows"]:
            if r["degree"] and r["mu"] != r["degree"]:
                problems.append(f"row {r['label']}: degree differs from mu")
    else:
        problems.append(f"unknown report kind {kind!r}")
    return CheckOutcome(not problems, problems)


def _check_sweep(data: dict, problems: list[str]) -> None:
    n = data["degree"]
    certs: dict[str, MuCertificate] = {}
    for cid, cd in data["certificates"].items():
        cert = _check_cert(cd, problems, f"class {cid}")
        if cert is None:
            continue
        if cert.group_gens != data["class_gens"].get(cid):
            problems.append(f"class {cid}: certificate is for a different group")
        certs[cid] = cert
    seen_violations = 0
    for e in data["entries"]:
        cid = str(e["class_id"])
        D = _group(n, e["gens"])
        if e["gens"] != data["class_gens"].get(cid):
            problems.append(f"class {cid}: generators differ from class table")
        if fixed_points(D):
            problems.append(f"class {cid}: has fixed points")
        cert = certs.get(cid)
        if cert is None or cert.mu != e["mu"]:
            problems.append(f"class {cid}: degree not certified")
            continue
        if e["minimal"] != (e["mu"] == n):
            problems.append(f"class {cid}: minimality flag inconsistent")
        for d in e.get("decompositions", ()):
            sides = []
            for side in ("left", "right"):
                ref = d[side]
                U = _group(n, ref["gens"])
                rid = str(ref["class_id"])
                rep = _group(n, data["class_gens"].get(rid, []))
                t = parse_cycles(ref["transporter"], n)
                image = PermGroup(n, [mul(mul(inv(t), g), t) for g in rep.raw_gens])
                if not (image.equals(U)):
                    problems.append(f"class {cid}: transporter for {side} factor is wrong")
                if rid not in certs or certs[rid].mu != d[f"mu_{side}"]:
                    problems.append(f"class {cid}: {side} factor degree not certified")
                sides.append(U)
            if not DirectDecomposition(sides[0], sides[1]).is_valid(D):
                problems.append(f"class {cid}: not a direct decomposition")
            additive = d["mu_left"] + d["mu_right"] == e["mu"]
            if additive != d["additive"]:
                problems.append(f"class {cid}: additivity flag inconsistent")
            if not additive:
                seen_violations += 1
        wid = e.get("wright_witness")
        if wid is not None:
            wc = certs.get(str(wid))
            if wc is None or wc.mu != n:
                problems.append(f"class {cid}: Wright witness degree not certified")
    if seen_violations != len(data["violations"]):
        problems.append("violation list does not match entries")

