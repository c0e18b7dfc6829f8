"""Conjugacy classes of subgroups of a permutation group.

The main routine is cyclic extension: starting from the trivial group and
the perfect subgroups, repeatedly adjoin to each class representative ``H``
an element ``z`` of ``N(H)`` whose image in ``N(H)/H`` has prime order.
Every subgroup is reached this way because its derived series runs down to
its perfect residual through normal steps of prime index.

Each newly found class has its whole conjugacy orbit registered in a
hash-keyed table.  Lookups are verified exactly (a stored conjugating
element must map the representative onto the candidate), so a hash
collision can cost time but never merge two classes.  The orbit computation
also yields the normaliser as a point stabiliser.

``brute_force_subgroups`` is the independent oracle: plain closure of the
cyclic subgroups under joins, on a multiplication table.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .group import ELEMENT_BUDGET, BudgetError, PermGroup, StabChain, dimino
from .perm import Perm, PermError, conj, cycle_type, format_cycles, identity, inv, mul, perm_order

ENGINE_VERSION = "2"

_PRIMES = frozenset(p for p in range(2, 64) if all(p % d for d in range(2, int(p ** 0.5) + 1)))


# -- element-set helpers shared with the structure module ----------------

def gens_from_elements(n: int, elems: Iterable[tuple], order: int | None = None,
                       prefer: Sequence[tuple] = ()) -> list[tuple]:
    """A small generating set picked greedily (members of ``prefer`` lying
    in ``elems`` are tried first)."""
    elems = list(elems)
    if order is None:
        order = len(elems)
    chain = StabChain(n)
    gens: list[tuple] = []
    if order == 1:
        return gens
    eset = set(elems)
    preferred = [g for g in prefer if g in eset]
    for g in preferred + sorted(elems, key=lambda e: (-perm_order(e), e)):
        if chain.contains(g):
            continue
        chain.extend([g])
        gens.append(g)
        if chain.order() == order:
            break
    return gens


def reduce_gens(n: int, gens: Sequence[tuple], order: int) -> list[tuple]:
    chain = StabChain(n)
    kept: list[tuple] = []
    for g in gens:
        if chain.order() == order:
            break
        if chain.contains(g):
            continue
        chain.extend([g])
        kept.append(g)
    return kept


def core_elements(eset: frozenset, ambient_gens: Sequence[tuple]) -> frozenset:
    """Largest subset of ``eset`` closed under conjugation by the ambient
    generators; for a subgroup this is its normal core."""
    core = set(eset)
    inverses = [inv(s) for s in ambient_gens]
    changed = True
    while changed:
        changed = False
        for s, sinv in zip(ambient_gens, inverses):
            keep = {y for y in core if conj(y, sinv, s) in core}
            if len(keep) != len(core):
                core = keep
                changed = True
    return frozenset(core)


def is_nilpotent_elements(elems: Iterable[tuple], order: int) -> bool:
    """Nilpotent iff for each prime p the p-elements number exactly |G|_p,
    i.e. every Sylow subgroup is normal."""
    if order == 1:
        return True
    primes = _prime_factors(order)
    counts = Counter()
    for e in elems:
        o = perm_order(e)
        if o == 1:
            for p in primes:
                counts[p] += 1
            continue
        ps = _prime_factors(o)
        if len(ps) == 1:
            counts[ps[0]] += 1
    for p in primes:
        pk = p ** _valuation(order, p)
        if counts[p] != pk:
            return False
    return True


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _valuation(m: int, p: int) -> int:
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def derived_elements(n: int, gens: Sequence[tuple], eset: frozenset) -> tuple[list[tuple], list[tuple]]:
    """Derived subgroup (elements, generators) of an element-listed group."""
    comms = []
    seen = set()
    for a in gens:
        ai = inv(a)
        for b in gens:
            c = mul(mul(ai, inv(b)), mul(a, b))
            if c not in seen and any(i != x for i, x in enumerate(c)):
                seen.add(c)
                comms.append(c)
    elems = dimino(n, comms)
    dgens = list(comms)
    dset = set(elems)
    changed = True
    while changed:
        changed = False
        for d in list(dgens):
            for g in gens:
                c = conj(d, g)
                if c not in dset:
                    elems = dimino(n, [c], known=elems, known_gens=dgens)
                    dgens.append(c)
                    dset = set(elems)
                    changed = True
    return elems, dgens


def perfect_residual_elements(n: int, gens: Sequence[tuple], eset: frozenset) -> tuple[list[tuple], list[tuple]]:
    elems, g = list(eset), list(gens)
    while True:
        d_elems, d_gens = derived_elements(n, g, frozenset(elems))
        if len(d_elems) == len(elems):
            return elems, g
        elems, g = d_elems, reduce_gens(n, d_gens, len(d_elems))


# -- perfect seeds --------------------------------------------------------

def perfect_seed_catalog(n: int) -> list[PermGroup]:
    """One representative of each Sym(n)-class of nontrivial perfect
    subgroups of Sym(n), for n <= 10."""
    from .constructions import pad, perfect_groups_by_support

    if not 1 <= n <= 10:
        raise PermError(f"perfect seed catalog covers degrees 1..10, not {n}")
    return [pad(P, n) for k, P in perfect_groups_by_support() if k <= n]


# -- records --------------------------------------------------------------

@dataclass
class ClassRecord:
    class_id: int
    representative: PermGroup
    order: int
    core_in_ambient: PermGroup
    is_normal: bool
    is_nilpotent: bool
    is_perfect: bool
    class_size: int
    normalizer_order: int
    parent: tuple[int, int] | None = None
    orbit_sizes: tuple[int, ...] = ()

    @property
    def flags(self) -> dict[str, bool]:
        return {"is_normal": self.is_normal, "is_nilpotent": self.is_nilpotent,
                "is_perfect": self.is_perfect}

    @property
    def index(self) -> int:
        return self.normalizer_order * self.class_size // self.order


@dataclass
class SubgroupLattice:
    ambient: PermGroup
    classes: list[ClassRecord]
    method: str
    complete: bool | str
    _engine: "_Engine | None" = field(default=None, repr=False)
    elapsed: float = 0.0

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, cid: int) -> ClassRecord:
        return self.classes[cid]

    def locate(self, H: PermGroup) -> int:
        """Class id of a subgroup of the ambient group."""
        return self.locate_with_transporter(H)[0]

    def locate_with_transporter(self, H: PermGroup) -> tuple[int, Perm]:
        """Class id of ``H`` and some ``t`` in the ambient group with
        ``representative^t = H``."""
        engine = self._ensure_engine()
        found = engine.lookup_transporter(frozenset(H.element_set()))
        if found is None:
            raise KeyError("subgroup not found in lattice (not a subgroup of the ambient?)")
        cid, t = found
        rep_id = engine.final_id[cid]
        # the engine's stored representative may differ from the record's
        # only when the lattice was rebuilt from a cache, where they coincide
        return rep_id, Perm(t)

    def _ensure_engine(self) -> "_Engine":
        if self._engine is None:
            engine = _Engine(self.ambient)
            for rec in self.classes:
                R = rec.representative
                elems = R.element_list()
                c = _Class(rec.class_id, list(elems), frozenset(elems), list(R.raw_gens),
                           None, rec.is_perfect)
                engine.classes.append(c)
                engine._orbit(c)
                engine.final_id[rec.class_id] = rec.class_id
                if c.orbit_len != rec.class_size:
                    raise AssertionError("cached class size disagrees with recomputation")
            self._engine = engine
        return self._engine

    def counts_by_order(self) -> dict[int, int]:
        return dict(sorted(Counter(c.order for c in self.classes).items()))

    def total_subgroups(self) -> int:
        return sum(c.class_size for c in self.classes)


def normal_subgroup_classes(lattice: SubgroupLattice) -> list[ClassRecord]:
    return [c for c in lattice.classes if c.is_normal]


# -- the cyclic extension engine -------------------------------------------

class _Class:
    __slots__ = ("cid", "elems", "eset", "gens", "order", "orbit_len", "norm_gens",
                 "norm_order", "parent", "seed")

    def __init__(self, cid, elems, eset, gens, parent, seed):
        self.cid = cid
        self.elems = elems
        self.eset = eset
        self.gens = gens
        self.order = len(eset)
        self.parent = parent
        self.seed = seed
        self.orbit_len = 0
        self.norm_gens: list[tuple] = []
        self.norm_order = 0


_KEY_TARGET = 8


def _key_subset(elems: Sequence[tuple]) -> list[tuple]:
    """A conjugation-invariant subset used to key conjugates cheaply: the
    elements of the rarest cycle types, taken until at least
    ``_KEY_TARGET`` are collected."""
    by_type: dict[tuple, list[tuple]] = {}
    for e in elems:
        by_type.setdefault(cycle_type(e), []).append(e)
    out: list[tuple] = []
    for _, members in sorted(by_type.items(), key=lambda kv: (len(kv[1]), kv[0])):
        out.extend(members)
        if len(out) >= _KEY_TARGET:
            break
    return out


def _key(order: int, subset) -> int:
    return hash((order, frozenset(subset)))


class _Engine:
    def __init__(self, G: PermGroup):
        self.n = G.degree
        self.G = G
        self.order = G.order()
        self.ggens = reduce_gens(self.n, G.raw_gens, self.order)
        self.gset = G.element_set()
        self.registry: dict[int, list] = {}
        self.classes: list[_Class] = []
        self.final_id: dict[int, int] = {}

    # registry ----------------------------------------------------------

    def lookup(self, eset: frozenset) -> int | None:
        found = self.lookup_transporter(eset)
        return None if found is None else found[0]

    def lookup_transporter(self, eset: frozenset) -> tuple[int, tuple] | None:
        key = _key(len(eset), _key_subset(eset))
        for cid, tb in self.registry.get(key, ()):
            c = self.classes[cid]
            if c.order != len(eset):
                continue
            t = tuple(tb)
            tinv = inv(t)
            if all(conj(g, t, tinv) in eset for g in c.gens):
                return cid, t
        return None

    def register(self, elems: list[tuple], eset: frozenset, gens: list[tuple],
                 parent=None, seed=False) -> tuple[int, bool]:
        found = self.lookup(eset)
        if found is not None:
            return found, False
        cid = len(self.classes)
        gens = reduce_gens(self.n, list(reversed(gens)), len(eset))
        c = _Class(cid, elems, eset, gens, parent, seed)
        self.classes.append(c)
        self._orbit(c)
        return cid, True

    def _orbit(self, c: _Class) -> None:
        n = self.n
        ident = identity(n)
        E = c.elems
        rset = c.eset
        rgens = c.gens
        S = _key_subset(E)
        k0 = _key(c.order, S)
        trans = [ident]
        local: dict[int, list[int]] = {k0: [0]}
        self.registry.setdefault(k0, []).append((c.cid, bytes(ident)))
        schreier: list[tuple] = []
        i = 0
        while i < len(trans):
            t = trans[i]
            for s in self.ggens:
                t2 = mul(t, s)
                t2inv = inv(t2)
                k = _key(c.order, [conj(h, t2, t2inv) for h in S])
                j = None
                for jj in local.get(k, ()):
                    x = mul(t2, inv(trans[jj]))
                    xinv = inv(x)
                    if all(conj(g, x, xinv) in rset for g in rgens):
                        j = jj
                        break
                if j is None:
                    local.setdefault(k, []).append(len(trans))
                    self.registry.setdefault(k, []).append((c.cid, bytes(t2)))
                    trans.append(t2)
                else:
                    x = mul(t2, inv(trans[j]))
                    if x not in rset:
                        schreier.append(x)
            i += 1
        c.orbit_len = len(trans)
        target = self.order // len(trans)
        c.norm_order = target
        if target == c.order:
            c.norm_gens = []
            return
        elems = list(E)
        nset = set(elems)
        gens = list(rgens)
        extra = []
        for x in schreier:
            if x in nset:
                continue
            elems = dimino(n, [x], known=elems, known_gens=gens)
            gens.append(x)
            extra.append(x)
            nset = set(elems)
            if len(elems) == target:
                break
        if len(elems) != target:
            raise AssertionError("normaliser order disagrees with orbit length")
        c.norm_gens = extra

    # enumeration ---------------------------------------------------------

    def normalizer_elements(self, c: _Class) -> list[tuple]:
        if not c.norm_gens:
            return list(c.elems)
        return dimino(self.n, c.norm_gens, known=c.elems, known_gens=c.gens)

    def extend_class(self, c: _Class) -> list[int]:
        R = c.elems
        rset = c.eset
        covered: set = set()
        new = []
        for z in self.normalizer_elements(c):
            if z in rset or z in covered:
                continue
            w = z
            k = 1
            while w not in rset:
                w = mul(w, z)
                k += 1
            if k not in _PRIMES:
                continue
            U = list(R)
            zi = z
            for _ in range(k - 1):
                U.extend([mul(h, zi) for h in R])
                zi = mul(zi, z)
            uset = frozenset(U)
            covered.update(U[len(R):])
            cid, is_new = self.register(U, uset, c.gens + [z], parent=(c.cid, k))
            if is_new:
                new.append(cid)
        return new

    def seeds(self) -> tuple[list[tuple[list, list]], bool | str]:
        """Perfect subgroups up to conjugacy in the ambient group, plus a
        completeness verdict."""
        n = self.n
        ident = identity(n)
        out = [([ident], [])]
        if self.order == 1:
            return out, True
        res_elems, res_gens = perfect_residual_elements(n, self.ggens, self.gset)
        if len(res_elems) == 1:
            return out, True
        if n > 10:
            raise PermError("nonsolvable groups need degree <= 10")
        verdict: bool | str = True if n <= 6 else "assumed"
        catalog = perfect_seed_catalog(n)
        if self.order == math.factorial(n):
            for P in catalog:
                out.append((P.element_list(), list(P.raw_gens)))
            return out, verdict
        rset = frozenset(res_elems)
        sym_gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
        for P in catalog:
            if len(res_elems) % P.order():
                continue
            for elems, gens in _conjugates_inside(P, sym_gens, rset):
                out.append((elems, gens))
        return out, verdict


def _conjugates_inside(P: PermGroup, sym_gens: Sequence[tuple], target: frozenset):
    """All Sym(n)-conjugates of ``P`` whose generators lie in ``target``."""
    E = P.element_list()
    pgens = list(P.raw_gens)
    n = P.degree
    ident = identity(n)
    trans = [ident]
    seen = {frozenset(E)}
    if all(g in target for g in pgens):
        yield list(E), pgens
    i = 0
    while i < len(trans):
        t = trans[i]
        for s in sym_gens:
            t2 = mul(t, s)
            t2inv = inv(t2)
            image = frozenset([conj(h, t2, t2inv) for h in E])
            if image in seen:
                continue
            seen.add(image)
            trans.append(t2)
            cg = [conj(g, t2, t2inv) for g in pgens]
            if all(g in target for g in cg):
                yield list(image), cg
        i += 1


def _class_sort_key(rep: PermGroup, order: int, elems: Iterable[tuple]):
    from .actions import orbit_sizes

    hist = tuple(sorted(Counter(perm_order(e) for e in elems).items()))
    return (order, orbit_sizes(rep), hist, tuple(sorted(format_cycles(g) for g in rep.raw_gens)))


def _finish(engine: _Engine, method: str, complete, t0: float) -> SubgroupLattice:
    from .actions import orbit_sizes

    n = engine.n
    prelim = []
    for c in engine.classes:
        rep = PermGroup(n, c.gens, elements=c.eset)
        prelim.append((_class_sort_key(rep, c.order, c.elems), c, rep))
    prelim.sort(key=lambda t: t[0])
    for new_id, (_, c, _) in enumerate(prelim):
        engine.final_id[c.cid] = new_id
    records = []
    for new_id, (_, c, rep) in enumerate(prelim):
        core = core_elements(c.eset, engine.ggens)
        core_group = PermGroup(n, gens_from_elements(n, core, prefer=c.gens), elements=core)
        parent = None
        if c.parent is not None:
            parent = (engine.final_id[c.parent[0]], c.parent[1])
        records.append(ClassRecord(
            class_id=new_id,
            representative=rep,
            order=c.order,
            core_in_ambient=core_group,
            is_normal=c.orbit_len == 1,
            is_nilpotent=is_nilpotent_elements(c.elems, c.order),
            is_perfect=c.seed,
            class_size=c.orbit_len,
            normalizer_order=c.norm_order,
            parent=parent,
            orbit_sizes=orbit_sizes(rep),
        ))
    return SubgroupLattice(engine.G, records, method, complete, engine, time.time() - t0)


def subgroup_classes(ambient: PermGroup, budget: int | None = None,
                     time_budget: float | None = None) -> SubgroupLattice:
    """Conjugacy classes of subgroups by cyclic extension.

    ``budget`` caps the number of classes and ``time_budget`` the wall time
    in seconds; hitting either returns a partial lattice with
    ``complete=False``.  Degrees 11..16 are accepted for solvable groups.
    """
    if ambient.degree > 16 or (ambient.degree > 10 and ambient.order() > ELEMENT_BUDGET):
        raise PermError("beyond degree 10 only small solvable groups are supported")
    t0 = time.time()
    engine = _Engine(ambient)
    seeds, complete = engine.seeds()
    queue: list[int] = []
    for elems, gens in seeds:
        cid, is_new = engine.register(list(elems), frozenset(elems), list(gens), seed=True)
        if is_new:
            queue.append(cid)
    pos = 0
    while pos < len(queue):
        if budget is not None and len(engine.classes) > budget:
            complete = False
            break
        if time_budget is not None and time.time() - t0 > time_budget:
            complete = False
            break
        queue.extend(engine.extend_class(engine.classes[queue[pos]]))
        pos += 1
    return _finish(engine, "cyclic-extension", complete, t0)


# -- brute-force oracle ----------------------------------------------------

def brute_force_subgroups(G: PermGroup, limit: int = 2000) -> SubgroupLattice:
    """Every subgroup by closing the cyclic subgroups under joins, then
    folding into conjugacy classes.  Works on a multiplication table and
    shares no code with the cyclic extension path beyond record building."""
    order = G.order()
    if order > limit:
        raise BudgetError(f"|G| = {order} exceeds brute-force limit {limit}")
    t0 = time.time()
    n = G.degree
    elems = sorted(G.element_set())
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[mul(a, b)] for b in elems] for a in elems]
    e_id = index[identity(n)]

    def cyclic(i: int) -> list[int]:
        out = [e_id]
        x = i
        while x != e_id:
            out.append(x)
            x = table[x][i]
        return out

    subgroups: dict[frozenset, None] = {}
    cyclics = []
    for i in range(order):
        cl = cyclic(i)
        c = frozenset(cl)
        if c not in subgroups:
            subgroups[c] = None
            # prime-power elements generate every subgroup
            if len(_prime_factors(len(cl))) <= 1:
                cyclics.append((i, c))
    work = list(subgroups)
    pos = 0
    while pos < len(work):
        S = work[pos]
        slist = sorted(S)
        for gen, C in cyclics:
            if gen in S:
                continue
            J = frozenset(_join(table, slist, gen, e_id))
            if J not in subgroups:
                subgroups[J] = None
                work.append(J)
        pos += 1
    # fold by conjugacy under G's generators
    gidx = [index[g] for g in G.raw_gens]
    ginv = [index[inv(g)] for g in G.raw_gens]
    conj_maps = [[table[table[gi][x]][g] for x in range(order)] for g, gi in zip(gidx, ginv)]
    class_of: dict[frozenset, int] = {}
    reps = []
    for S in work:
        if S in class_of:
            continue
        cid = len(reps)
        orbit = [S]
        class_of[S] = cid
        for T in orbit:
            for cm in conj_maps:
                U = frozenset(cm[x] for x in T)
                if U not in class_of:
                    class_of[U] = cid
                    orbit.append(U)
        reps.append((S, len(orbit)))
    engine = _OracleView(G, elems, reps, class_of)
    return engine.finish(time.time() - t0)


def _join(table, slist, gen, e_id) -> list[int]:
    """Subgroup generated by a subgroup (sorted index list) and one more
    element, by coset-by-coset closure on the multiplication table."""
    out = list(slist)
    have = set(out)
    reps = [e_id, gen]
    coset = [table[h][gen] for h in slist]
    out.extend(coset)
    have.update(coset)
    all_gens = _small_gen_indices(table, slist, e_id) + [gen]
    pos = 1
    while pos < len(reps):
        r = reps[pos]
        for s in all_gens:
            e = table[r][s]
            if e not in have:
                reps.append(e)
                coset = [table[h][e] for h in slist]
                out.extend(coset)
                have.update(coset)
        pos += 1
    return out


def _small_gen_indices(table, slist, e_id) -> list[int]:
    have = {e_id}
    gens: list[int] = []
    for x in slist:
        if x in have:
            continue
        gens.append(x)
        frontier = list(have)
        while frontier:
            nxt = []
            for a in frontier:
                row = table[a]
                for g in gens:
                    b = row[g]
                    if b not in have:
                        have.add(b)
                        nxt.append(b)
            frontier = nxt
        if len(have) == len(slist):
            break
    return gens


class _OracleView:
    """Builds a SubgroupLattice from brute-force output, with a lookup table
    keyed by exact element sets."""

    def __init__(self, G, elems, reps, class_of):
        self.G = G
        self.elems = elems
        self.reps = reps
        self.class_of = class_of

    def finish(self, elapsed: float) -> SubgroupLattice:
        from .actions import orbit_sizes

        n = self.G.degree
        G = self.G
        ggens = list(G.raw_gens)
        prelim = []
        for S, size in self.reps:
            es = [self.elems[i] for i in S]
            eset = frozenset(es)
            rep = PermGroup(n, gens_from_elements(n, es), elements=eset)
            prelim.append((_class_sort_key(rep, len(es), es), rep, eset, size))
        prelim.sort(key=lambda t: t[0])
        records = []
        for cid, (_, rep, eset, size) in enumerate(prelim):
            core = core_elements(eset, ggens)
            perfect = len(derived_elements(n, list(rep.raw_gens), eset)[0]) == len(eset)
            records.append(ClassRecord(
                class_id=cid, representative=rep, order=len(eset),
                core_in_ambient=PermGroup(n, gens_from_elements(n, core), elements=core),
                is_normal=size == 1,
                is_nilpotent=is_nilpotent_elements(eset, len(eset)),
                is_perfect=perfect, class_size=size,
                normalizer_order=G.order() // size, orbit_sizes=orbit_sizes(rep)))
        lat = SubgroupLattice(G, records, "brute-force", True, None, elapsed)
        lat.subgroup_count = len(self.class_of)
        return lat


# -- cache ------------------------------------------------------------------------

class CacheError(ValueError):
    """A cache file is stale, tampered with, or does not match its ambient."""


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _checksum(data: dict) -> str:
    body = {k: v for k, v in data.items() if k != "checksum"}
    return hashlib.sha256(canonical_json(body).encode()).hexdigest()


def lattice_to_dict(lat: SubgroupLattice, spec: str = "") -> dict:
    data = {
        "ambient_spec": spec,
        "engine_version": ENGINE_VERSION,
        "degree": lat.ambient.degree,
        "ambient_gens": lat.ambient.cycle_strings(),
        "ambient_order": lat.ambient.order(),
        "method": lat.method,
        "complete": lat.complete,
        "classes": [
            {
                "class_id": c.class_id,
                "gens": c.representative.cycle_strings(),
                "order": c.order,
                "core_gens": c.core_in_ambient.cycle_strings(),
                "core_order": c.core_in_ambient.order(),
                "flags": c.flags,
                "class_size": c.class_size,
                "normalizer_order": c.normalizer_order,
                "parent": list(c.parent) if c.parent else None,
                "orbit_sizes": list(c.orbit_sizes),
            }
            for c in lat.classes
        ],
    }
    data["checksum"] = _checksum(data)
    return data


def lattice_from_dict(data: dict, ambient: PermGroup) -> SubgroupLattice:
    """Rebuild a lattice from cached generator strings, re-checking every
    representative against the ambient group."""
    from .perm import parse_cycles

    if data.get("checksum") != _checksum(data):
        raise CacheError("checksum mismatch")
    if data.get("engine_version") != ENGINE_VERSION:
        raise CacheError(f"engine version {data.get('engine_version')} != {ENGINE_VERSION}")
    n = ambient.degree
    if data["degree"] != n or data["ambient_order"] != ambient.order():
        raise CacheError("ambient group mismatch")
    cached_ambient = PermGroup(n, [parse_cycles(s, n) for s in data["ambient_gens"]])
    if not cached_ambient.equals(ambient):
        raise CacheError("ambient group mismatch")
    records = []
    for i, d in enumerate(data["classes"]):
        if d["class_id"] != i:
            raise CacheError("class ids out of order")
        rep = PermGroup(n, [parse_cycles(s, n) for s in d["gens"]])
        core = PermGroup(n, [parse_cycles(s, n) for s in d["core_gens"]])
        if rep.order() != d["order"] or core.order() != d["core_order"]:
            raise CacheError(f"class {i}: order mismatch")
        if not rep.is_subgroup_of(ambient) or not core.is_subgroup_of(rep):
            raise CacheError(f"class {i}: not a subgroup")
        flags = d["flags"]
        records.append(ClassRecord(
            class_id=i, representative=rep, order=d["order"], core_in_ambient=core,
            is_normal=flags["is_normal"], is_nilpotent=flags["is_nilpotent"],
            is_perfect=flags["is_perfect"], class_size=d["class_size"],
            normalizer_order=d["normalizer_order"],
            parent=tuple(d["parent"]) if d["parent"] else None,
            orbit_sizes=tuple(d["orbit_sizes"])))
    return SubgroupLattice(ambient, records, data["method"], data["complete"], None, 0.0)


def default_cache_dir() -> Path:
    env = os.environ.get("MINDEGREE_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "mindegree"


def cache_path(cache_dir: str | Path, spec: str) -> Path:
    digest = hashlib.sha256(f"{spec}|{ENGINE_VERSION}".encode()).hexdigest()[:16]
    slug = "".join(ch if ch.isalnum() else "_" for ch in spec)[:40]
    return Path(cache_dir) / f"lattice-{slug}-{digest}.json"


def cached_subgroup_classes(ambient: PermGroup, spec: str, cache_dir: str | Path | None,
                            **kw) -> SubgroupLattice:
    """``subgroup_classes`` through a cache directory.  Stale or damaged
    files are rebuilt; incomplete lattices are never written."""
    if cache_dir is None:
        return subgroup_classes(ambient, **kw)
    path = cache_path(cache_dir, spec)
    if path.exists():
        try:
            data = json.loads(path.read_text())
            return lattice_from_dict(data, ambient)
        except (CacheError, ValueError, KeyError, TypeError):
            pass
    lat = subgroup_classes(ambient, **kw)
    if lat.complete is not False:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(canonical_json(lattice_to_dict(lat, spec)))
        tmp.replace(path)
    return lat
