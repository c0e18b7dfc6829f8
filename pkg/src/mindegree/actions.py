"""Orbits, fixed points, block systems and product constructions."""

from __future__ import annotations

from dataclasses import dataclass

from .group import PermGroup, stabilizer_of_point
from .perm import PermError, identity


@dataclass(frozen=True)
class BlockSystem:
    """A G-invariant partition into equal-size blocks (1-based points)."""

    blocks: tuple[frozenset, ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def block_of(self, x: int) -> frozenset:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def as_lists(self) -> list[list[int]]:
        return [sorted(b) for b in self.blocks]


def orbits(G: PermGroup) -> list[list[int]]:
    """Orbits as sorted 1-based lists, ordered by least point."""
    seen: set[int] = set()
    out = []
    for x in range(G.degree):
        if x in seen:
            continue
        orb = G.orbit0(x)
        seen.update(orb)
        out.append(sorted(p + 1 for p in orb))
    return out


def orbit_sizes(G: PermGroup) -> tuple[int, ...]:
    return tuple(sorted(len(o) for o in orbits(G)))


def is_transitive(G: PermGroup) -> bool:
    return len(G.orbit0(0)) == G.degree


def fixed_points(H: PermGroup) -> set[int]:
    return {x + 1 for x in range(H.degree) if all(g[x] == x for g in H.raw_gens)}


def moved_points(H: PermGroup) -> set[int]:
    return set(range(1, H.degree + 1)) - fixed_points(H)


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _pair_closure(G: PermGroup, a: int, b: int) -> list[int]:
    """Finest G-invariant partition with ``a`` and ``b`` together (0-based).

    Returns the union-find parent array, fully compressed.
    """
    n = G.degree
    parent = list(range(n))
    pending = [(a, b)]
    while pending:
        x, y = pending.pop()
        rx, ry = _find(parent, x), _find(parent, y)
        if rx == ry:
            continue
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        for g in G.raw_gens:
            pending.append((g[x], g[y]))
    return [_find(parent, x) for x in range(n)]


def _partition(roots: list[int]) -> tuple[frozenset, ...]:
    classes: dict[int, set[int]] = {}
    for x, r in enumerate(roots):
        classes.setdefault(r, set()).add(x + 1)
    return tuple(sorted((frozenset(c) for c in classes.values()), key=min))


def minimal_block_systems(G: PermGroup) -> list[BlockSystem]:
    """All minimal nontrivial block systems; empty iff ``G`` is primitive."""
    if not is_transitive(G):
        raise PermError("minimal_block_systems needs a transitive group")
    n = G.degree
    if n <= 2:
        return []
    candidates = {}
    for x in range(1, n):
        part = _partition(_pair_closure(G, 0, x))
        if len(part) > 1:
            candidates[part] = None
    systems = list(candidates)

    def finer(p: tuple, q: tuple) -> bool:
        # every block of p lies inside a block of q, and p != q
        return p != q and all(any(b <= c for c in q) for b in p)

    minimal = [p for p in systems if not any(finer(q, p) for q in systems)]
    minimal.sort(key=lambda p: (len(p[0]), [sorted(b) for b in p]))
    return [BlockSystem(p) for p in minimal]


def is_block_system(G: PermGroup, B: BlockSystem) -> bool:
    index = {}
    for i, blk in enumerate(B.blocks):
        for x in blk:
            index[x] = i
    for g in G.raw_gens:
        for blk in B.blocks:
            imgs = {index[g[x - 1] + 1] for x in blk}
            if len(imgs) != 1:
                return False
    return True


def block_action(G: PermGroup, B: BlockSystem) -> tuple[PermGroup, PermGroup]:
    """Induced action on the blocks and the block stabiliser restricted to the
    block containing point 1."""
    if not is_block_system(G, B):
        raise PermError("partition is not invariant under G")
    n = G.degree
    k = B.block_count
    index = {}
    for i, blk in enumerate(B.blocks):
        for x in blk:
            index[x - 1] = i
    top_gens = []
    extended = []
    for g in G.raw_gens:
        t = [0] * k
        for i, blk in enumerate(B.blocks):
            t[i] = index[g[min(blk) - 1]]
        top_gens.append(tuple(t))
        extended.append(tuple(g) + tuple(n + j for j in t))
    top = PermGroup(k, top_gens)
    # G acting on points and blocks at once; stabilise the block of point 1.
    big = PermGroup(n + k, extended, order=G.order())
    first = index[0]
    stab = stabilizer_of_point(big, n + first)
    block = sorted(B.blocks[first])
    pos = {x - 1: i for i, x in enumerate(block)}
    restricted = []
    for g in stab.raw_gens:
        restricted.append(tuple(pos[g[x - 1]] for x in block))
    local = PermGroup(len(block), restricted)
    return top, local


def wreath_embedding_divides(G: PermGroup, B: BlockSystem) -> bool:
    """``|G|`` divides ``|G_B^B|^(blocks) * |block image|``."""
    top, local = block_action(G, B)
    return (local.order() ** B.block_count * top.order()) % G.order() == 0


def wreath_product(base: PermGroup, top: PermGroup) -> PermGroup:
    """Imprimitive wreath product; block ``j`` holds points ``(j-1)a+1 .. ja``."""
    a, b = base.degree, top.degree
    n = a * b
    gens = []
    for g in base.raw_gens:
        gens.append(tuple(g) + tuple(range(a, n)))
    for t in top.raw_gens:
        gens.append(tuple(t[j] * a + i for j in range(b) for i in range(a)))
    order = base.order() ** b * top.order()
    return PermGroup(n, gens, order=order)


def external_direct_product(G: PermGroup, H: PermGroup) -> PermGroup:
    """``G x H`` on ``m + n`` points with ``H`` shifted by ``m``."""
    m, n = G.degree, H.degree
    gens = [tuple(g) + tuple(range(m, m + n)) for g in G.raw_gens]
    gens += [identity(m) + tuple(m + x for x in h) for h in H.raw_gens]
    return PermGroup(m + n, gens, order=G.order() * H.order())


def projection(G: PermGroup, points: list[int]) -> PermGroup:
    """Restriction of ``G`` to a union of its orbits (1-based point list)."""
    pts = sorted(points)
    pos = {x - 1: i for i, x in enumerate(pts)}
    gens = []
    for g in G.raw_gens:
        try:
            gens.append(tuple(pos[g[x - 1]] for x in pts))
        except KeyError:
            raise PermError("points are not a union of orbits") from None
    return PermGroup(len(pts), gens)


def restrict_to_support(G: PermGroup) -> PermGroup:
    pts = sorted(moved_points(G))
    if not pts:
        return PermGroup.trivial(1)
    return projection(G, pts)
