"""Explicit permutation groups: standard families, the perfect groups of
small degree, and the named groups checked by the verifier."""

from __future__ import annotations

import itertools
import math
from typing import Callable, Hashable, Sequence

from .actions import external_direct_product, wreath_product
from .group import PermGroup
from .perm import PermError, parse_cycles


def _cycle(n: int, pts: Sequence[int]) -> tuple:
    imgs = list(range(n))
    for x, y in zip(pts, list(pts[1:]) + [pts[0]]):
        imgs[x] = y
    return tuple(imgs)


def symmetric(n: int, degree: int | None = None) -> PermGroup:
    degree = degree or n
    gens = []
    if n >= 2:
        gens = [_cycle(degree, [0, 1]), _cycle(degree, list(range(n)))]
    return PermGroup(degree, gens, order=math.factorial(n), name=f"S{n}")


def alternating(n: int, degree: int | None = None) -> PermGroup:
    degree = degree or n
    if n < 3:
        return PermGroup(degree, [], name=f"A{n}")
    long = list(range(n)) if n % 2 == 1 else list(range(1, n))
    gens = [_cycle(degree, [0, 1, 2]), _cycle(degree, long)]
    return PermGroup(degree, gens, order=math.factorial(n) // 2, name=f"A{n}")


def cyclic(n: int, degree: int | None = None) -> PermGroup:
    degree = degree or max(n, 1)
    gens = [_cycle(degree, list(range(n)))] if n > 1 else []
    return PermGroup(degree, gens, order=n, name=f"C{n}")


def dihedral(order: int) -> PermGroup:
    """Dihedral group of the given ORDER (so ``dihedral(8)`` is D8)."""
    if order % 2 or order < 2:
        raise PermError(f"dihedral order must be even, got {order}")
    m = order // 2
    if m == 1:
        return cyclic(2)
    if m == 2:
        return PermGroup(4, [(1, 0, 2, 3), (0, 1, 3, 2)], order=4, name="Dih4")
    rot = _cycle(m, list(range(m)))
    ref = tuple((-i) % m for i in range(m))
    return PermGroup(m, [rot, ref], order=order, name=f"Dih{order}")


def action_on(objects: Sequence[Hashable], maps: Sequence[Callable], order: int | None = None,
              name: str | None = None) -> PermGroup:
    """Permutation group induced by ``maps`` on a finite list of objects."""
    index = {o: i for i, o in enumerate(objects)}
    gens = [tuple(index[f(o)] for o in objects) for f in maps]
    return PermGroup(len(objects), gens, order=order, name=name)


# -- finite fields of order <= 9 ------------------------------------------

class GF:
    """Tiny field GF(p^k) with elements encoded as ints 0..q-1."""

    _MODULI = {4: (2, (1, 1)), 8: (2, (1, 1, 0)), 9: (3, (1, 0))}

    def __init__(self, q: int):
        self.q = q
        if q in self._MODULI:
            p, low = self._MODULI[q]
            k = len(low)
        else:
            p, k, low = q, 1, ()
        self.p, self.k = p, k
        vecs = list(itertools.product(range(p), repeat=k))
        self._enc = {v: sum(c * p ** i for i, c in enumerate(v)) for v in vecs}
        self._dec = {i: v for v, i in self._enc.items()}
        self.add = [[0] * q for _ in range(q)]
        self.mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(q):
                va, vb = self._dec[a], self._dec[b]
                self.add[a][b] = self._enc[tuple((x + y) % p for x, y in zip(va, vb))]
                self.mul[a][b] = self._enc[self._polymul(va, vb, low)]
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.inv = [0] + [next(b for b in range(q) if self.mul[a][b] == 1) for a in range(1, q)]

    def _polymul(self, a, b, low):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce with x^k = -(low[0] + low[1] x + ...)
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for i, l in enumerate(low):
                    prod[d - k + i] = (prod[d - k + i] - c * l) % p
        return tuple(prod[:k])

    def primitive(self) -> int:
        for g in range(2, self.q) if self.q > 2 else [1]:
            x, seen = g, set()
            while x not in seen:
                seen.add(x)
                x = self.mul[x][g]
            if len(seen) == self.q - 1:
                return g
        return 1


def psl2(q: int) -> PermGroup:
    """PSL(2, q) on the q+1 points of the projective line."""
    F = GF(q)
    inf = "inf"
    points = [inf] + list(range(q))
    w = F.primitive()
    w2 = F.mul[w][w]

    def translate(x):
        return inf if x == inf else F.add[x][1]

    def scale(x):
        return inf if x == inf else F.mul[w2][x]

    def flip(x):
        if x == inf:
            return 0
        if x == 0:
            return inf
        return F.neg[F.inv[x]]

    order = q * (q * q - 1) // math.gcd(2, q - 1)
    return action_on(points, [translate, scale, flip], order=order, name=f"PSL(2,{q})")


def _f2_vectors(k: int) -> list[tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=k))


def _gl32_maps():
    def elem(i, j):
        def f(v):
            v = list(v)
            v[i] ^= v[j]
            return tuple(v)
        return f

    def rotate(v):
        return (v[2], v[0], v[1])

    return [elem(0, 1), rotate]


def psl3_2() -> PermGroup:
    """GL(3,2) on the 7 nonzero vectors of F_2^3."""
    pts = [v for v in _f2_vectors(3) if any(v)]
    return action_on(pts, _gl32_maps(), order=168, name="PSL(3,2)")


def agl3_2() -> PermGroup:
    """AGL(3,2) = 2^3:GL(3,2) on the 8 vectors of F_2^3."""
    pts = _f2_vectors(3)

    def shift(v):
        return (v[0] ^ 1, v[1], v[2])

    return action_on(pts, _gl32_maps() + [shift], order=1344, name="AGL(3,2)")


def a5_on_pairs() -> PermGroup:
    pairs = list(itertools.combinations(range(5), 2))
    a = (1, 2, 0, 3, 4)
    b = (1, 2, 3, 4, 0)

    def via(p):
        return lambda s: tuple(sorted(p[x] for x in s))

    return action_on(pairs, [via(a), via(b)], order=60, name="A5 on pairs")


def pad(G: PermGroup, degree: int) -> PermGroup:
    """Same group with extra fixed points appended."""
    if degree < G.degree:
        raise PermError("cannot pad to a smaller degree")
    extra = tuple(range(G.degree, degree))
    return PermGroup(degree, [tuple(g) + extra for g in G.raw_gens], order=G.order(), name=G.name)


def diagonal_a5_5_5() -> PermGroup:
    A = alternating(5)
    gens = [tuple(g) + tuple(5 + x for x in g) for g in A.raw_gens]
    return PermGroup(10, gens, order=60, name="A5 diag(5+5)")


def perfect_groups_by_support() -> list[tuple[int, PermGroup]]:
    """One representative per Sym-class of nontrivial perfect groups on at
    most 10 points, with the number of points each one moves."""
    A5 = alternating(5)
    return [
        (5, A5),
        (6, psl2(5)),
        (6, alternating(6)),
        (7, alternating(7)),
        (7, psl3_2()),
        (8, alternating(8)),
        (8, psl2(7)),
        (8, agl3_2()),
        (9, alternating(9)),
        (9, psl2(8)),
        (10, alternating(10)),
        (10, a5_on_pairs()),
        (10, psl2(9)),
        (10, external_direct_product(A5, A5)),
        (10, diagonal_a5_5_5()),
    ]


# -- named groups ----------------------------------------------------------

def _from_cycles(degree: int, cycles: Sequence[str], name: str, order: int | None = None) -> PermGroup:
    return PermGroup(degree, [parse_cycles(c, degree) for c in cycles], order=order, name=name)


def h7() -> PermGroup:
    return _from_cycles(7, ["(1 2 3)", "(1 2)(4 5 6 7)"], "H7")


def k8() -> PermGroup:
    return _from_cycles(8, ["(1 2)(3 4)(5 6)(7 8)", "(1 3)(2 4)(5 7)(6 8)",
                            "(1 5)(2 6)(3 7)(4 8)", "(2 3 5 4 7 8 6)"], "K8")


def l8() -> PermGroup:
    K = k8()
    return PermGroup(8, list(K.raw_gens) + [parse_cycles("(3 5 7)(4 6 8)", 8)], name="L8")


def h7xc2_9() -> PermGroup:
    return _from_cycles(9, ["(1 2 3)", "(1 3)(4 5 6 7)", "(8 9)"], "H7xC2_9")


def c3wrs3() -> PermGroup:
    G = wreath_product(cyclic(3), symmetric(3))
    G.name = "C3wrS3"
    return G


def g225() -> PermGroup:
    return _from_cycles(10, ["(1 2 3 4 5)(6 7 8 9 10)", "(1 6)(2 7)"], "G225")


def g225xc2() -> PermGroup:
    return _from_cycles(10, ["(1 2 3 4 5)(6 7 8 9 10)", "(1 6)(2 7)",
                             "(1 6)(2 7)(3 8)(4 9)(5 10)"], "G225xC2")


def g225_base_member(p: Sequence[int]) -> bool:
    """Is ``p`` in the base group of G225?

    The base of the wreath C2 wr C5 is generated by the swaps ``(i, i+5)``;
    its members lying in G225 are exactly those with an even number of
    swaps (the sum-zero code).
    """
    p = tuple(p)
    if len(p) != 10:
        return False
    swaps = 0
    for i in range(5):
        if p[i] == i and p[i + 5] == i + 5:
            continue
        if p[i] == i + 5 and p[i + 5] == i:
            swaps += 1
            continue
        return False
    return swaps % 2 == 0


NAMED = {
    "H7": h7,
    "K8": k8,
    "L8": l8,
    "H7xC2_9": h7xc2_9,
    "C3wrS3": c3wrs3,
    "G225": g225,
    "G225xC2": g225xc2,
    "PSL(2,7)": lambda: psl2(7),
    "PSL(2,8)": lambda: psl2(8),
    "PSL(3,2)": psl3_2,
    "AGL(3,2)": agl3_2,
}


def named_group(key: str) -> PermGroup:
    """Look up one of the fixed constructions, or ``Sym(n)``/``Alt(n)``/
    ``C(n)``/``Dih(order)``."""
    if key in NAMED:
        return NAMED[key]()
    for prefix, build in (("Sym(", symmetric), ("Alt(", alternating),
                          ("C(", cyclic), ("Dih(", dihedral)):
        if key.startswith(prefix) and key.endswith(")"):
            try:
                arg = int(key[len(prefix):-1])
            except ValueError:
                break
            return build(arg)
    raise KeyError(f"unknown named group {key!r}")
