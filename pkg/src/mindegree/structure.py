"""Centralisers, normalisers, cores, normal structure and isomorphism tests.

Most routines work on explicit element sets, which is cheap for the groups
handled here (degree at most 10 and order within ``ELEMENT_BUDGET``).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .group import BudgetError, ELEMENT_BUDGET, PermGroup, StabChain, dimino, stabilizer_of_point
from .lattice import (
    core_elements,
    derived_elements,
    gens_from_elements,
    is_nilpotent_elements,
    perfect_residual_elements,
    reduce_gens,
    _prime_factors,
    _valuation,
)
from .perm import Perm, PermError, conj, cycle_type, identity, inv, mul, perm_order


def _group(n: int, elems, prefer: Sequence[tuple] = ()) -> PermGroup:
    elems = frozenset(elems)
    return PermGroup(n, gens_from_elements(n, elems, prefer=prefer), elements=elems)


def _sym_gens(n: int) -> list[tuple]:
    if n == 1:
        return []
    if n == 2:
        return [(1, 0)]
    return [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]


def _check_same_degree(A: PermGroup, B: PermGroup) -> None:
    if A.degree != B.degree:
        raise PermError(f"degree mismatch: {A.degree} vs {B.degree}")


# -- conjugation orbits of subgroups ------------------------------------------

def _conjugation_orbit(H: PermGroup, acting_gens: Sequence[tuple], stop_at: frozenset | None = None):
    """Orbit of ``H`` under conjugation by ``<acting_gens>``.

    Returns ``(transversal, schreier, hit)``: transversal elements ``t`` with
    distinct ``H^t``, Schreier generators of the stabiliser, and a
    transporter to ``stop_at`` if that subgroup was met.
    """
    n = H.degree
    E = H.element_list()
    hgens = list(H.raw_gens)
    hset = H.element_set()
    ident = identity(n)
    trans = [ident]
    local: dict[int, list[int]] = {hash(hset): [0]}
    schreier: list[tuple] = []
    target_hash = hash(stop_at) if stop_at is not None else None
    if stop_at is not None and hset == stop_at:
        return trans, schreier, ident
    i = 0
    while i < len(trans):
        t = trans[i]
        for s in acting_gens:
            t2 = mul(t, s)
            t2inv = inv(t2)
            image = frozenset([conj(h, t2, t2inv) for h in E])
            k = hash(image)
            j = None
            for jj in local.get(k, ()):
                x = mul(t2, inv(trans[jj]))
                xinv = inv(x)
                if all(conj(g, x, xinv) in hset for g in hgens):
                    j = jj
                    break
            if j is None:
                local.setdefault(k, []).append(len(trans))
                trans.append(t2)
                if k == target_hash and image == stop_at:
                    return trans, schreier, t2
            else:
                x = mul(t2, inv(trans[j]))
                if x not in hset:
                    schreier.append(x)
        i += 1
    return trans, schreier, None


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    """``N_G(H)`` as the stabiliser of ``H`` under conjugation by ``G``."""
    _check_same_degree(G, H)
    if not H.is_subgroup_of(G):
        raise PermError("H is not a subgroup of G")
    trans, schreier, _ = _conjugation_orbit(H, G.raw_gens)
    target = G.order() // len(trans)
    n = G.degree
    chain = StabChain(n)
    chain.extend(H.raw_gens)
    gens = list(H.raw_gens)
    for x in schreier:
        if chain.order() == target:
            break
        if chain.contains(x):
            continue
        chain.extend([x])
        gens.append(x)
    if chain.order() != target:
        raise AssertionError("normaliser order disagrees with orbit length")
    return PermGroup(n, reduce_gens(n, gens, target), order=target)


def sym_conjugate(G: PermGroup, H: PermGroup) -> Perm | None:
    """Some ``g`` in ``Sym(degree)`` with ``G^g = H``, or ``None``."""
    from .actions import orbit_sizes

    _check_same_degree(G, H)
    if G.order() != H.order() or orbit_sizes(G) != orbit_sizes(H):
        return None
    census_g = Counter(cycle_type(e) for e in G.element_list())
    census_h = Counter(cycle_type(e) for e in H.element_list())
    if census_g != census_h:
        return None
    _, _, hit = _conjugation_orbit(G, _sym_gens(G.degree), stop_at=H.element_set())
    return Perm(hit) if hit is not None else None


# -- centralisers ---------------------------------------------------------------

def _centralizer_backtrack(G: PermGroup, budget: int = ELEMENT_BUDGET) -> PermGroup:
    """All ``c`` in ``Sym(degree)`` commuting with the generators.

    A centralising ``c`` is fixed by the images of one point per orbit, via
    ``c(x^g) = c(x)^g``; the search tries every image of each orbit
    representative and keeps the consistent bijections.
    """
    n = G.degree
    gens = G.raw_gens
    reps = []
    seen: set[int] = set()
    words: list[list[tuple[int, int, tuple]]] = []
    for x in range(n):
        if x in seen:
            continue
        orb = G.orbit0(x)
        seen.update(orb)
        reps.append(x)
        # spanning tree: (point, parent, generator) in BFS order
        tree = []
        parent = {x: None}
        for p in orb:
            for s in gens:
                q = s[p]
                if q not in parent:
                    parent[q] = p
                    tree.append((q, p, s))
        words.append(tree)
    size_of = [0] * n
    for x in reps:
        orb = G.orbit0(x)
        for p in orb:
            size_of[p] = len(orb)
    found: list[tuple] = []

    def extend(level: int, c: list[int], used: set[int]) -> None:
        if level == len(reps):
            cand = tuple(c)
            if all(mul(cand, s) == mul(s, cand) for s in gens):
                found.append(cand)
                if len(found) > budget:
                    raise BudgetError("centraliser exceeds element budget")
            return
        x = reps[level]
        for y in range(n):
            if y in used or size_of[y] != size_of[x]:
                continue
            c2 = list(c)
            used2 = set(used)
            c2[x] = y
            used2.add(y)
            ok = True
            for q, p, s in words[level]:
                img = s[c2[p]]
                if img in used2:
                    ok = False
                    break
                c2[q] = img
                used2.add(img)
            if ok:
                extend(level + 1, c2, used2)

    extend(0, [-1] * n, set())
    return _group(n, found)


def _centralizer_phi(G: PermGroup) -> PermGroup:
    """Orbit-wise construction for groups whose orbits have distinct sizes:
    ``x`` in ``N_G(H_i)`` acts on the orbit of ``a_i`` by ``a_i^g -> a_i^(x^-1 g)``."""
    n = G.degree
    gens: list[tuple] = []
    seen: set[int] = set()
    for a in range(n):
        if a in seen:
            continue
        orb = G.orbit0(a)
        seen.update(orb)
        trans = {a: identity(n)}
        for p in orb:
            for s in G.raw_gens:
                q = s[p]
                if q not in trans:
                    trans[q] = mul(trans[p], s)
        Ha = stabilizer_of_point(G, a)
        N = normalizer(G, Ha)
        for x in N.raw_gens:
            xinv = inv(x)
            img = list(range(n))
            for p in orb:
                img[p] = mul(xinv, trans[p])[a]
            img = tuple(img)
            if img != identity(n):
                gens.append(img)
    return PermGroup(n, gens)


def centralizer_in_sym(G: PermGroup) -> PermGroup:
    """``C_Sym(degree)(G)``; when orbit sizes are distinct two independent
    methods are run and must agree."""
    from .actions import orbit_sizes

    C = _centralizer_backtrack(G)
    sizes = orbit_sizes(G)
    if len(set(sizes)) == len(sizes):
        C2 = _centralizer_phi(G)
        if not C.equals(C2):
            raise AssertionError("centraliser methods disagree")
    return C


# -- cores, intersections, normal structure --------------------------------------

def core(G: PermGroup, H: PermGroup) -> PermGroup:
    _check_same_degree(G, H)
    c = core_elements(H.element_set(), G.raw_gens)
    return _group(G.degree, c, prefer=H.raw_gens)


def intersection(A: PermGroup, B: PermGroup) -> PermGroup:
    _check_same_degree(A, B)
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    elems = [e for e in small.element_list() if big.contains(e)]
    return _group(A.degree, elems)


def derived_subgroup(G: PermGroup) -> PermGroup:
    elems, gens = derived_elements(G.degree, G.raw_gens, G.element_set())
    return PermGroup(G.degree, reduce_gens(G.degree, gens, len(elems)), elements=elems)


def perfect_residual(G: PermGroup) -> PermGroup:
    elems, gens = perfect_residual_elements(G.degree, G.raw_gens, G.element_set())
    return PermGroup(G.degree, reduce_gens(G.degree, gens, len(elems)), elements=elems)


def center(G: PermGroup) -> PermGroup:
    gens = G.raw_gens
    elems = [e for e in G.element_list() if all(mul(e, s) == mul(s, e) for s in gens)]
    return _group(G.degree, elems)


def is_nilpotent(G: PermGroup) -> bool:
    return is_nilpotent_elements(G.element_list(), G.order())


def is_abelian(G: PermGroup) -> bool:
    gens = G.raw_gens
    return all(mul(a, b) == mul(b, a) for a in gens for b in gens)


def is_elementary_abelian(G: PermGroup) -> bool:
    if not is_abelian(G) or G.order() == 1:
        return G.order() == 1
    ps = _prime_factors(G.order())
    return len(ps) == 1 and all(perm_order(g) == ps[0] for g in G.raw_gens)


def conjugacy_classes(G: PermGroup) -> list[list[tuple]]:
    """Element conjugacy classes; each list starts with its least element
    and classes are ordered by that representative."""
    gens = G.raw_gens
    ginv = [inv(s) for s in gens]
    seen: set[tuple] = set()
    out = []
    for e in sorted(G.element_set()):
        if e in seen:
            continue
        cls = [e]
        seen.add(e)
        for x in cls:
            for s, si in zip(gens, ginv):
                y = conj(x, s, si)
                if y not in seen:
                    seen.add(y)
                    cls.append(y)
        out.append(cls)
    return out


def normal_closure(G: PermGroup, elems: Sequence[tuple]) -> frozenset:
    n = G.degree
    gens: list[tuple] = []
    cur = [identity(n)]
    cur_set = set(cur)
    pending = [e for e in elems]
    while pending:
        x = pending.pop()
        if x in cur_set:
            continue
        cur = dimino(n, [x], known=cur, known_gens=gens)
        gens.append(x)
        cur_set = set(cur)
        pending.extend(conj(x, s) for s in G.raw_gens)
        pending.extend(conj(g, s) for g in gens for s in G.raw_gens)
    return frozenset(cur)


def normal_subgroups(G: PermGroup) -> list[PermGroup]:
    """Every normal subgroup, from joins of normal closures of elements."""
    n = G.degree
    closures: dict[frozenset, None] = {}
    for cls in conjugacy_classes(G):
        closures.setdefault(normal_closure(G, [cls[0]]), None)
    found: dict[frozenset, None] = dict(closures)
    work = list(found)
    pos = 0
    while pos < len(work):
        A = work[pos]
        for B in list(closures):
            if B <= A:
                continue
            J = frozenset(dimino(n, gens_from_elements(n, B), known=sorted(A),
                                 known_gens=gens_from_elements(n, A)))
            if J not in found:
                found[J] = None
                work.append(J)
        pos += 1
    subs = sorted(found, key=lambda s: (len(s), sorted(s)))
    return [_group(n, s) for s in subs]


def minimal_normal_subgroups(G: PermGroup, lattice=None) -> list[PermGroup]:
    """Minimal nontrivial normal subgroups, taken from ``lattice`` when one
    is supplied and from normal closures of elements otherwise."""
    n = G.degree
    if lattice is not None:
        sets = [c.representative.element_set() for c in lattice.classes if c.is_normal and c.order > 1]
    else:
        sets = []
        for cls in conjugacy_classes(G):
            if perm_order(cls[0]) == 1:
                continue
            sets.append(normal_closure(G, [cls[0]]))
    uniq = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    minimal = [s for s in uniq if not any(t < s for t in uniq)]
    return [_group(n, s) for s in minimal]


def sylow_subgroup(G: PermGroup, p: int) -> PermGroup:
    n = G.degree
    target = p ** _valuation(G.order(), p)
    P = PermGroup.trivial(n)
    while P.order() < target:
        pset = P.element_set()
        N = normalizer(G, P)
        z = next(x for x in sorted(N.element_set())
                 if x not in pset and power_in(x, p, pset))
        P = PermGroup(n, list(P.raw_gens) + [z],
                      elements=dimino(n, [z], known=P.element_list(), known_gens=P.raw_gens))
    return P


def power_in(x: tuple, p: int, s: frozenset) -> bool:
    y = x
    for _ in range(p - 1):
        y = mul(y, x)
    return y in s


def is_transitive_group(G: PermGroup) -> bool:
    return len(G.orbit0(0)) == G.degree


# -- direct decompositions ---------------------------------------------------------

@dataclass
class DirectDecomposition:
    left: PermGroup
    right: PermGroup

    def is_valid(self, parent: PermGroup) -> bool:
        L, R = self.left, self.right
        commute = all(mul(a, b) == mul(b, a) for a in L.raw_gens for b in R.raw_gens)
        meet = L.element_set() & R.element_set()
        joined = PermGroup(parent.degree, list(L.raw_gens) + list(R.raw_gens))
        return (commute and len(meet) == 1 and L.order() * R.order() == parent.order()
                and joined.equals(parent) and L.order() > 1 and R.order() > 1)


def direct_decompositions(G: PermGroup, lattice=None) -> list[DirectDecomposition]:
    """Unordered pairs of nontrivial normal subgroups meeting trivially whose
    orders multiply to ``|G|``; the smaller (then lexicographically first)
    factor is ``left``."""
    if lattice is not None:
        normals = [c.representative for c in lattice.classes if c.is_normal]
    else:
        normals = normal_subgroups(G)
    order = G.order()
    out = []
    for A in normals:
        for B in normals:
            if A.order() == 1 or B.order() == 1 or A.order() * B.order() != order:
                continue
            key_a = (A.order(), sorted(A.element_set()))
            key_b = (B.order(), sorted(B.element_set()))
            if key_a >= key_b:
                continue
            if len(A.element_set() & B.element_set()) == 1:
                out.append(DirectDecomposition(A, B))
    return out


# -- isomorphism -------------------------------------------------------------------

class IsoVerdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNRESOLVED = "unresolved"


def invariants(G: PermGroup) -> tuple:
    """Isomorphism invariants: order, element-order histogram, class sizes
    with element orders, derived series orders, centre order and which
    Sylow subgroups are normal."""
    classes = conjugacy_classes(G)
    hist = tuple(sorted(Counter(perm_order(e) for e in G.element_list()).items()))
    csizes = tuple(sorted(Counter((perm_order(c[0]), len(c)) for c in classes).items()))
    series = []
    H = G
    while True:
        series.append(H.order())
        D = derived_subgroup(H) if H.order() > 1 else H
        if D.order() == H.order():
            break
        H = D
    zorder = sum(len(c) for c in classes if len(c) == 1)
    sylow_normal = []
    elems = G.element_list()
    for p in _prime_factors(G.order()):
        pk = p ** _valuation(G.order(), p)
        count = sum(1 for e in elems if perm_order(e) in _powers(p, pk))
        sylow_normal.append((p, count == pk))
    return (G.order(), hist, csizes, tuple(series), zorder, tuple(sylow_normal))


def _powers(p: int, limit: int) -> set[int]:
    out = {1}
    q = 1
    while q < limit:
        q *= p
        out.add(q)
    return out


def minimal_generating_set(G: PermGroup, tries: int = 20000) -> list[tuple]:
    """A generating set of minimal size when at most 3 generators suffice
    (found by search), otherwise a greedy one."""
    n = G.degree
    order = G.order()
    if order == 1:
        return []
    elems = sorted(G.element_set(), key=lambda e: (-perm_order(e), e))
    if perm_order(elems[0]) == order:
        return [elems[0]]
    greedy = gens_from_elements(n, elems)
    if len(greedy) <= 2:
        return greedy
    reps = [c[0] for c in sorted(conjugacy_classes(G), key=lambda c: (-perm_order(c[0]), c[0]))]
    budget = tries
    for a in reps:
        for b in elems:
            budget -= 1
            if budget < 0:
                return greedy
            ch = StabChain(n)
            ch.extend([a, b])
            if ch.order() == order:
                return [a, b]
    return greedy


def is_isomorphic(G: PermGroup, H: PermGroup, node_budget: int = 200_000) -> IsoVerdict:
    """Three-valued isomorphism test: invariant screen, then a backtrack
    over images of a minimal generating set of ``G``."""
    if G.order() != H.order():
        return IsoVerdict.NO
    if invariants(G) != invariants(H):
        return IsoVerdict.NO
    if G.order() == 1:
        return IsoVerdict.YES
    gens = minimal_generating_set(G)
    m, k = G.degree, H.degree
    order = G.order()
    g_class_size = {}
    for c in conjugacy_classes(G):
        for e in c:
            g_class_size[e] = len(c)
    h_classes = conjugacy_classes(H)
    h_class_size = {}
    for c in h_classes:
        for e in c:
            h_class_size[e] = len(c)
    h_elems = H.element_list()

    def profile(e, sizes):
        return (perm_order(e), sizes[e])

    candidates = []
    for i, g in enumerate(gens):
        want = profile(g, g_class_size)
        pool = [c[0] for c in h_classes] if i == 0 else h_elems
        candidates.append([h for h in pool if profile(h, h_class_size) == want])
    prod_orders = {(i, j): perm_order(mul(gens[i], gens[j]))
                   for i in range(len(gens)) for j in range(len(gens)) if i < j}
    nodes = 0

    def accept(images) -> bool:
        diag = [tuple(g) + tuple(m + x for x in h) for g, h in zip(gens, images)]
        ch = StabChain(m + k)
        ch.extend(diag)
        if ch.order() != order:
            return False
        ch2 = StabChain(k)
        ch2.extend(images)
        return ch2.order() == order

    def search(level: int, images: list) -> bool:
        nonlocal nodes
        if level == len(gens):
            return accept(images)
        for h in candidates[level]:
            nodes += 1
            if nodes > node_budget:
                raise BudgetError("isomorphism search budget exhausted")
            if any(perm_order(mul(images[i], h)) != prod_orders[(i, level)] for i in range(level)):
                continue
            images.append(h)
            if search(level + 1, images):
                return True
            images.pop()
        return False

    try:
        return IsoVerdict.YES if search(0, []) else IsoVerdict.NO
    except BudgetError:
        return IsoVerdict.UNRESOLVED
