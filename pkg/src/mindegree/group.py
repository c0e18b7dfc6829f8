"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain.

Groups hold raw image tuples internally (see ``perm``); everything handed
back to callers is a :class:`~mindegree.perm.Perm`.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

from .perm import Perm, PermError, format_cycles, identity, inv, mul, parse_cycles

# Element sets above this size are never materialised implicitly.
ELEMENT_BUDGET = 400_000


class BudgetError(RuntimeError):
    """A computation would exceed its configured element or node budget."""


class StabChain:
    """Base, strong generators and explicit transversals.

    ``trans[i][p]`` maps ``base[i]`` to ``p``; ``trans_inv[i][p]`` is its
    inverse.  ``gens[i]`` are the strong generators fixing ``base[:i]``.
    """

    __slots__ = ("n", "base", "gens", "trans", "trans_inv")

    def __init__(self, n: int):
        self.n = n
        self.base: list[int] = []
        self.gens: list[list[tuple]] = []
        self.trans: list[dict[int, tuple]] = []
        self.trans_inv: list[dict[int, tuple]] = []

    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for i in range(start, len(self.base)):
            x = g[self.base[i]]
            u_inv = self.trans_inv[i].get(x)
            if u_inv is None:
                return g, i
            g = mul(g, u_inv)
        return g, len(self.base)

    def contains(self, g: tuple) -> bool:
        r, _ = self.sift(g)
        return all(i == x for i, x in enumerate(r))

    def _orbit(self, i: int) -> None:
        b = self.base[i]
        ident = identity(self.n)
        trans = {b: ident}
        queue = [b]
        gens = self.gens[i]
        for p in queue:
            up = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    trans[q] = mul(up, s)
                    queue.append(q)
        self.trans[i] = trans
        self.trans_inv[i] = {p: inv(u) for p, u in trans.items()}

    def _new_level(self, point: int) -> None:
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: identity(self.n)})
        self.trans_inv.append({point: identity(self.n)})

    def extend(self, new_gens: Iterable[tuple]) -> None:
        """Add generators and restore the chain (deterministic Schreier-Sims)."""
        n = self.n
        added = False
        for g in new_gens:
            if all(i == x for i, x in enumerate(g)):
                continue
            if self.contains(g):
                continue
            if all(g[b] == b for b in self.base):
                self._new_level(next(i for i in range(n) if g[i] != i))
            # g fixes base[:k] where k is its first moved base point
            k = next(i for i, b in enumerate(self.base) if g[b] != b)
            for lvl in range(k + 1):
                self.gens[lvl].append(g)
            for lvl in range(k + 1):
                self._orbit(lvl)
            added = True
        if added:
            self._complete()

    def _complete(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            jumped = False
            trans = self.trans[i]
            for p, up in list(trans.items()):
                for s in self.gens[i]:
                    q = s[p]
                    h = mul(mul(up, s), self.trans_inv[i][q])
                    r, j = self.sift(h, i + 1)
                    if any(k != x for k, x in enumerate(r)):
                        if j == len(self.base):
                            self._new_level(next(k for k in range(self.n) if r[k] != k))
                        for lvl in range(i + 1, j + 1):
                            self.gens[lvl].append(r)
                            self._orbit(lvl)
                        i = j
                        jumped = True
                        break
                if jumped:
                    break
            if not jumped:
                i -= 1

    def elements(self) -> list[tuple]:
        elems = [identity(self.n)]
        for i in range(len(self.base) - 1, -1, -1):
            reps = list(self.trans[i].values())
            elems = [mul(h, u) for u in reps for h in elems]
        return elems


def dimino(n: int, gens: Sequence[tuple], known: Iterable[tuple] | None = None,
           known_gens: Sequence[tuple] = (), limit: int | None = None) -> list[tuple]:
    """Elements of ``<known, gens>`` where ``known`` is already a subgroup.

    Coset-by-coset closure (Dimino); ``limit`` raises :class:`BudgetError`.
    """
    base = list(known) if known is not None else [identity(n)]
    elems = list(base)
    seen = set(elems)
    all_gens = list(known_gens)
    for g in gens:
        if g in seen:
            continue
        all_gens.append(g)
        sub = list(elems)
        reps = [identity(n)]
        coset = [mul(h, g) for h in sub]
        elems.extend(coset)
        seen.update(coset)
        reps.append(g)
        pos = 1
        while pos < len(reps):
            r = reps[pos]
            for s in all_gens:
                e = mul(r, s)
                if e not in seen:
                    reps.append(e)
                    coset = [mul(h, e) for h in sub]
                    elems.extend(coset)
                    seen.update(coset)
                    if limit is not None and len(elems) > limit:
                        raise BudgetError(f"group exceeds {limit} elements")
            pos += 1
    return elems


class PermGroup:
    """A permutation group on points 1..degree given by generators.

    The stabilizer chain is built on the first structural query; after that
    the object is treated as frozen.
    """

    def __init__(self, degree: int, gens: Iterable[Sequence[int]] = (),
                 order: int | None = None, elements: Iterable[tuple] | None = None,
                 name: str | None = None):
        if degree < 1:
            raise PermError("degree must be positive")
        raw = []
        for g in gens:
            g = tuple(g)
            if len(g) != degree:
                raise PermError(f"generator of degree {len(g)} in a degree-{degree} group")
            if any(i != x for i, x in enumerate(g)) and g not in raw:
                raw.append(g)
        self.degree = degree
        self._gens = tuple(raw)
        self.name = name
        self._chain: StabChain | None = None
        self._order = order
        self._elements: frozenset | None = frozenset(elements) if elements is not None else None
        if self._elements is not None:
            self._order = len(self._elements)
        self._cache: dict = {}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_generators(cls, degree: int, gens: Iterable[Sequence[int]] = (),
                        name: str | None = None) -> "PermGroup":
        return cls(degree, gens, name=name)

    @classmethod
    def from_cycles(cls, degree: int, cycle_strings: Iterable[str],
                    name: str | None = None) -> "PermGroup":
        return cls(degree, [parse_cycles(s, degree) for s in cycle_strings], name=name)

    @classmethod
    def from_elements(cls, degree: int, gens: Iterable[tuple], elements: Iterable[tuple],
                      name: str | None = None) -> "PermGroup":
        return cls(degree, gens, elements=elements, name=name)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, (), elements=[identity(degree)])

    # -- basic accessors ----------------------------------------------------

    @property
    def gens(self) -> tuple[Perm, ...]:
        return tuple(Perm(g) for g in self._gens)

    @property
    def raw_gens(self) -> tuple[tuple, ...]:
        return self._gens

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            ch = StabChain(self.degree)
            ch.extend(self._gens)
            self._chain = ch
            if self._order is not None and self._order != ch.order():
                raise AssertionError(f"chain order {ch.order()} != declared {self._order}")
            self._order = ch.order()
        return self._chain

    def order(self) -> int:
        if self._order is None:
            self._order = self.chain.order()
        return self._order

    def __len__(self) -> int:
        return self.order()

    def is_trivial(self) -> bool:
        return not self._gens

    def contains(self, p: Sequence[int]) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            return False
        if self._elements is not None:
            return p in self._elements
        return self.chain.contains(p)

    __contains__ = contains

    def element_set(self, budget: int = ELEMENT_BUDGET) -> frozenset:
        """All elements as raw tuples (cached)."""
        if self._elements is None:
            if self.order() > budget:
                raise BudgetError(f"|G| = {self.order()} exceeds element budget {budget}")
            self._elements = frozenset(self.chain.elements())
        return self._elements

    def element_list(self, budget: int = ELEMENT_BUDGET) -> list[tuple]:
        """Elements in a deterministic order (chain order, identity first)."""
        if self.order() > budget:
            raise BudgetError(f"|G| = {self.order()} exceeds element budget {budget}")
        key = "element_list"
        if key not in self._cache:
            self._cache[key] = self.chain.elements()
        return self._cache[key]

    def elements(self, budget: int = ELEMENT_BUDGET) -> Iterator[Perm]:
        """Each element exactly once, in a deterministic order."""
        for e in self.element_list(budget):
            yield Perm(e)

    def __iter__(self) -> Iterator[Perm]:
        return self.elements()

    def base(self) -> list[int]:
        """Base points, 1-based."""
        return [b + 1 for b in self.chain.base]

    def strong_generators(self) -> list[Perm]:
        ch = self.chain
        seen = []
        for lvl in ch.gens:
            for g in lvl:
                if g not in seen:
                    seen.append(g)
        return [Perm(g) for g in seen]

    def transversal_sizes(self) -> list[int]:
        return [len(t) for t in self.chain.trans]

    # -- orbits / stabilisers ----------------------------------------------

    def orbit0(self, x: int) -> list[int]:
        orb = [x]
        seen = {x}
        for p in orb:
            for g in self._gens:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    orb.append(q)
        return orb

    def orbit(self, x: int) -> list[int]:
        return sorted(p + 1 for p in self.orbit0(x - 1))

    def point_stabilizer(self, x: int) -> "PermGroup":
        """``{g : x^g = x}`` for the 1-based point ``x``."""
        if not 1 <= x <= self.degree:
            raise PermError(f"point {x} outside 1..{self.degree}")
        return stabilizer_of_point(self, x - 1)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self._gens)

    def equals(self, other: "PermGroup") -> bool:
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def cycle_strings(self) -> list[str]:
        return [format_cycles(g) for g in self._gens]

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<PermGroup {label}deg={self.degree} gens=[{', '.join(self.cycle_strings())}]>"


def stabilizer_of_point(G: PermGroup, x: int) -> PermGroup:
    """Point stabiliser of the 0-based point ``x`` via a chain rebased at ``x``."""
    n = G.degree
    if G.is_trivial():
        return PermGroup.trivial(n)
    # Schreier generators from the orbit transversal of x.
    trans = {x: identity(n)}
    queue = [x]
    for p in queue:
        for s in G.raw_gens:
            q = s[p]
            if q not in trans:
                trans[q] = mul(trans[p], s)
                queue.append(q)
    target = G.order() // len(trans)
    chain = StabChain(n)
    gens: list[tuple] = []
    for p in queue:
        up = trans[p]
        for s in G.raw_gens:
            h = mul(mul(up, s), inv(trans[s[p]]))
            if all(i == v for i, v in enumerate(h)) or chain.contains(h):
                continue
            chain.extend([h])
            gens.append(h)
            if chain.order() == target:
                return PermGroup(n, gens, order=target)
    return PermGroup(n, gens, order=chain.order())


def coset_action(G: PermGroup, H: PermGroup) -> tuple[PermGroup, list[Perm]]:
    """Action of ``G`` on the right cosets of ``H`` by right multiplication.

    Returns the image group on ``[G:H]`` points and the coset representatives;
    point ``i`` (1-based) is the coset ``H * reps[i-1]``.
    """
    if not H.is_subgroup_of(G):
        raise PermError("H is not a subgroup of G")
    n = G.degree
    H_elems = H.element_list()
    ident = identity(n)

    def key(g: tuple) -> frozenset:
        return frozenset(mul(h, g) for h in H_elems)

    reps = [ident]
    index_of = {key(ident): 0}
    images: list[list[int]] = [[] for _ in G.raw_gens]
    pos = 0
    while pos < len(reps):
        r = reps[pos]
        for gi, s in enumerate(G.raw_gens):
            y = mul(r, s)
            k = key(y)
            j = index_of.get(k)
            if j is None:
                j = len(reps)
                index_of[k] = j
                reps.append(y)
            images[gi].append(j)
        pos += 1
    m = len(reps)
    if m * H.order() != G.order():
        raise AssertionError("coset enumeration inconsistent with Lagrange")
    image = PermGroup(m, [tuple(img) for img in images])
    return image, [Perm(r) for r in reps]


def from_generators(degree: int, gens: Iterable[Sequence[int]] = ()) -> PermGroup:
    return PermGroup.from_generators(degree, gens)


def group_order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, p: Sequence[int]) -> bool:
    return G.contains(p)


def elements(G: PermGroup, budget: int) -> Iterator[Perm]:
    return G.elements(budget)


def point_stabilizer(G: PermGroup, x: int) -> PermGroup:
    return G.point_stabilizer(x)


def subgroup(G: PermGroup, gens: Iterable[Sequence[int]]) -> PermGroup:
    """Subgroup of ``G`` generated by ``gens`` (membership not re-checked)."""
    return PermGroup(G.degree, gens)
