"""Minimal faithful permutation degree.

``mu(G)`` is the least total index of a collection of subgroups whose
cores intersect trivially.  Cores are constant on conjugacy classes and a
collection is core-free exactly when every minimal normal subgroup escapes
some core, so the search is a weighted set cover: the ground set is the
minimal normal subgroups, each subgroup class costs its index and covers
the minimal normals not inside its core.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .group import PermGroup, StabChain
from .lattice import SubgroupLattice, subgroup_classes
from .perm import format_cycles, identity, mul, parse_cycles


class MuError(RuntimeError):
    """The lattice needed for an exact answer was not available."""


@dataclass
class MuCertificate:
    mu: int
    witness: list[int]
    witness_gens: list[list[str]]
    witness_orders: list[int]
    group_degree: int
    group_gens: list[str]
    group_order: int
    embedding: PermGroup | None = None
    embedding_images: list[str] = field(default_factory=list)
    wright_witness: int | None = None
    lattice_complete: bool | str = True

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "group": {"degree": self.group_degree, "gens": list(self.group_gens),
                      "order": self.group_order},
            "witness": list(self.witness),
            "witness_gens": [list(g) for g in self.witness_gens],
            "witness_orders": list(self.witness_orders),
            "embedding": {"degree": self.mu, "images": list(self.embedding_images)},
            "wright_witness": self.wright_witness,
            "lattice_complete": self.lattice_complete,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MuCertificate":
        grp = d["group"]
        cert = cls(
            mu=int(d["mu"]),
            witness=[int(x) for x in d["witness"]],
            witness_gens=[list(g) for g in d["witness_gens"]],
            witness_orders=[int(x) for x in d["witness_orders"]],
            group_degree=int(grp["degree"]),
            group_gens=list(grp["gens"]),
            group_order=int(grp["order"]),
            embedding_images=list(d["embedding"]["images"]),
            wright_witness=d.get("wright_witness"),
            lattice_complete=d.get("lattice_complete", True),
        )
        if cert.mu > 0 and cert.embedding_images:
            cert.embedding = PermGroup(cert.mu, [parse_cycles(s, cert.mu) for s in cert.embedding_images])
        return cert

    def group(self) -> PermGroup:
        return PermGroup(self.group_degree, [parse_cycles(s, self.group_degree) for s in self.group_gens])


# -- set cover -----------------------------------------------------------------

def _candidates(lattice: SubgroupLattice, minimal: Sequence[frozenset]):
    """(weight, mask, class_id) for each class covering something, with
    dominated entries removed."""
    order = lattice.ambient.order()
    raw = []
    for c in lattice.classes:
        core = c.core_in_ambient.element_set()
        mask = 0
        for i, N in enumerate(minimal):
            if not N <= core:
                mask |= 1 << i
        if mask:
            raw.append((order // c.order, mask, c.class_id))
    raw.sort()
    kept = []
    for w, m, cid in raw:
        # earlier entries are no heavier; one covering a superset dominates
        if any(w2 <= w and (m2 | m) == m2 for w2, m2, _ in kept):
            continue
        kept.append((w, m, cid))
    return kept


def _cover(cands, full: int):
    """Exact minimum weight cover; ties go to fewer subgroups, then to the
    lexicographically least sorted id list."""
    bits = [i for i in range(full.bit_length()) if full >> i & 1]
    cover_of = {i: [c for c in cands if c[1] >> i & 1] for i in bits}
    cheapest = {i: min((c[0] for c in cover_of[i]), default=None) for i in bits}
    if any(v is None for v in cheapest.values()):
        return None
    best: list = [None]

    def bound(uncov: int) -> int:
        total = 0
        rest = uncov
        while rest:
            i = (rest & -rest).bit_length() - 1
            total += cheapest[i]
            blocked = 0
            for c in cover_of[i]:
                blocked |= c[1]
            rest &= ~blocked
            rest &= ~(1 << i)
        return total

    def rec(uncov: int, weight: int, chosen: list) -> None:
        if uncov == 0:
            key = (weight, len(chosen), sorted(chosen))
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        if best[0] is not None and weight + bound(uncov) > best[0][0]:
            return
        i = (uncov & -uncov).bit_length() - 1
        for w, m, cid in cover_of[i]:
            if best[0] is not None and weight + w > best[0][0]:
                break
            rec(uncov & ~m, weight + w, chosen + [cid])

    rec(full, 0, [])
    return best[0]


def minimal_normal_sets(lattice: SubgroupLattice) -> list[frozenset]:
    normals = [c.representative.element_set() for c in lattice.classes
               if c.is_normal and c.order > 1]
    normals.sort(key=len)
    return [N for N in normals if not any(M < N for M in normals)]


def _lattice_for(G: PermGroup, lattice: SubgroupLattice | None, **kw) -> SubgroupLattice:
    if lattice is None:
        lattice = subgroup_classes(G, **kw)
    if lattice.complete is False:
        raise MuError("subgroup lattice incomplete (budget exhausted)")
    return lattice


def mu(G: PermGroup, lattice: SubgroupLattice | None = None, embed: bool = True,
       **lattice_kw) -> MuCertificate:
    """Exact minimal degree with a certificate."""
    gens = [format_cycles(g) for g in G.raw_gens]
    if G.order() == 1:
        return MuCertificate(0, [], [], [], G.degree, gens, 1)
    lattice = _lattice_for(G, lattice, **lattice_kw)
    minimal = minimal_normal_sets(lattice)
    cands = _candidates(lattice, minimal)
    best = _cover(cands, (1 << len(minimal)) - 1)
    if best is None:
        raise AssertionError("no core-free collection; the whole trivial subgroup should cover")
    weight, _, ids = best
    cert = MuCertificate(
        mu=weight,
        witness=ids,
        witness_gens=[lattice[i].representative.cycle_strings() for i in ids],
        witness_orders=[lattice[i].order for i in ids],
        group_degree=G.degree,
        group_gens=gens,
        group_order=G.order(),
        lattice_complete=lattice.complete,
    )
    if embed:
        minimal_embedding(G, cert)
    return cert


def mu_exhaustive(G: PermGroup, lattice: SubgroupLattice | None = None) -> tuple[int, list[int]]:
    """Independent check: scan subsets of classes by increasing size with
    index sum at most the degree of ``G`` and test core-freeness on the
    element sets directly."""
    if G.order() == 1:
        return 0, []
    lattice = _lattice_for(G, lattice)
    order = G.order()
    items = [(order // c.order, c.core_in_ambient.element_set(), c.class_id)
             for c in lattice.classes if c.order < order]
    bound = G.degree
    best: tuple[int, list[int]] | None = None

    def rec(start: int, total: int, meet: frozenset | None, chosen: list[int]) -> None:
        nonlocal best
        if meet is not None and len(meet) == 1:
            if best is None or total < best[0]:
                best = (total, list(chosen))
            return
        for j in range(start, len(items)):
            w, core, cid = items[j]
            if total + w > bound or (best is not None and total + w >= best[0]):
                continue
            new = core if meet is None else meet & core
            if meet is not None and len(new) == len(meet):
                continue
            chosen.append(cid)
            rec(j + 1, total + w, new, chosen)
            chosen.pop()

    rec(0, 0, None, [])
    if best is None:
        raise AssertionError("no core-free collection within the degree bound")
    return best


# -- embeddings and verification -------------------------------------------------

def _coset_images(G: PermGroup, W: PermGroup) -> list[tuple]:
    """Images of G's generators (aligned with ``G.raw_gens``) on the right
    cosets of ``W``."""
    n = G.degree
    chain = W.chain
    ident = identity(n)
    reps = [ident]
    images: list[list[int]] = [[] for _ in G.raw_gens]

    def find(y: tuple) -> int | None:
        for j, r in enumerate(reps):
            # W*y == W*r  iff  y * r^-1 in W
            if chain.contains(mul(y, _inv(r))):
                return j
        return None

    pos = 0
    while pos < len(reps):
        r = reps[pos]
        for gi, s in enumerate(G.raw_gens):
            y = mul(r, s)
            j = find(y)
            if j is None:
                j = len(reps)
                reps.append(y)
            images[gi].append(j)
        pos += 1
    return [tuple(img) for img in images]


def _inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _glued_images(G: PermGroup, witnesses: Sequence[PermGroup]) -> tuple[int, list[tuple]]:
    parts = [_coset_images(G, W) for W in witnesses]
    degree = sum(len(p[0]) if p else 0 for p in parts)
    if not G.raw_gens:
        return sum(G.order() // W.order() for W in witnesses), []
    glued = []
    for gi in range(len(G.raw_gens)):
        img: list[int] = []
        for p in parts:
            off = len(img)
            img.extend(off + x for x in p[gi])
        glued.append(tuple(img))
    return degree, glued


def _is_faithful_image(G: PermGroup, degree: int, images: Sequence[tuple]) -> bool:
    if degree == 0:
        return G.order() == 1
    m = G.degree
    diag = StabChain(m + degree)
    diag.extend([tuple(g) + tuple(m + x for x in h) for g, h in zip(G.raw_gens, images)])
    img = StabChain(degree)
    img.extend(images)
    return diag.order() == G.order() and img.order() == G.order()


def minimal_embedding(G: PermGroup, cert: MuCertificate) -> PermGroup:
    """Disjoint union of the coset actions on the witness subgroups."""
    witnesses = [PermGroup(G.degree, [parse_cycles(s, G.degree) for s in gens])
                 for gens in cert.witness_gens]
    degree, images = _glued_images(G, witnesses)
    if degree != cert.mu or not _is_faithful_image(G, degree, images):
        raise AssertionError("certificate does not give a faithful action of the claimed degree")
    cert.embedding_images = [format_cycles(h) for h in images]
    cert.embedding = PermGroup(max(degree, 1), images)
    return cert.embedding


@dataclass
class CertificateCheck:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(G: PermGroup, cert: MuCertificate) -> CertificateCheck:
    """Re-check a certificate from its generator strings alone."""
    try:
        if cert.group_degree != G.degree or cert.group_order != G.order():
            return CertificateCheck(False, "group-mismatch")
        claimed = cert.group()
        if not claimed.equals(G):
            return CertificateCheck(False, "group-mismatch")
        if G.order() == 1:
            ok = cert.mu == 0 and not cert.witness_gens
            return CertificateCheck(ok, "ok" if ok else "trivial-group")
        witnesses = []
        for gens, order in zip(cert.witness_gens, cert.witness_orders):
            W = PermGroup(G.degree, [parse_cycles(s, G.degree) for s in gens])
            if not W.is_subgroup_of(G):
                return CertificateCheck(False, "witness-not-subgroup")
            if W.order() != order:
                return CertificateCheck(False, "witness-order")
            witnesses.append(W)
        if len(witnesses) != len(cert.witness_gens) or len(cert.witness) != len(witnesses):
            return CertificateCheck(False, "witness-shape")
        if sum(G.order() // W.order() for W in witnesses) != cert.mu:
            return CertificateCheck(False, "index-sum")
        degree, images = _glued_images(G, witnesses)
        if not _is_faithful_image(G, degree, images):
            return CertificateCheck(False, "not-core-free")
        if cert.embedding_images:
            emb = [parse_cycles(s, cert.mu) for s in cert.embedding_images]
            if len(emb) != len(G.raw_gens) or not _is_faithful_image(G, cert.mu, emb):
                return CertificateCheck(False, "embedding-not-faithful")
        return CertificateCheck(True, "ok")
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        return CertificateCheck(False, f"malformed: {exc}")


# -- Wright's class ------------------------------------------------------------------

def in_wright_class(G: PermGroup, lattice: SubgroupLattice | None = None,
                    mu_value: int | None = None,
                    mu_of: Callable[[PermGroup], int] | None = None) -> tuple[bool, int | None]:
    """Does some nilpotent subgroup have the same minimal degree as ``G``?

    Returns the witnessing class id.  A subgroup moving fewer than
    ``mu(G)`` points cannot qualify, so those are skipped.
    """
    from .actions import moved_points

    if G.order() == 1:
        return True, None
    lattice = _lattice_for(G, lattice)
    if mu_value is None:
        mu_value = mu(G, lattice, embed=False).mu
    if mu_of is None:
        mu_of = lambda U: mu(U, embed=False).mu  # noqa: E731
    for c in sorted(lattice.classes, key=lambda c: (-c.order, c.class_id)):
        if not c.is_nilpotent:
            continue
        if c.order == G.order():
            return True, c.class_id
        if len(moved_points(c.representative)) < mu_value:
            continue
        if mu_of(c.representative) == mu_value:
            return True, c.class_id
    return False, None
