"""Permutations on points 1..n.

Conventions
-----------
* Points are 1-based in every piece of I/O (cycle strings, reports, the
  ``image``/``support`` helpers).  Internally a permutation is the tuple of
  0-based images, so ``p[i]`` is the image of point ``i + 1`` minus one.
* Permutations act on the right: ``a * b`` applies ``a`` first, then ``b``,
  and ``x^(ab) = (x^a)^b``.  Conjugation is ``a^g = g^-1 a g``.  Most CAS
  packages agree (GAP does), but some Python libraries compose the other way.

``Perm`` subclasses ``tuple`` so hot loops elsewhere in the package can work
on plain tuples (via :func:`mul`, :func:`inv`, :func:`conj`) and still
compare and hash equal to ``Perm`` values.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

MAX_DEGREE = 32

__all__ = [
    "Perm",
    "PermError",
    "compose",
    "conj",
    "conjugate",
    "cycle_decomposition",
    "cycle_type",
    "identity",
    "inv",
    "inverse",
    "mul",
    "order",
    "parse_cycles",
    "perm_order",
    "print_cycles",
    "support",
]


class PermError(ValueError):
    """Malformed permutation input or mismatched degrees."""


# -- raw tuple arithmetic ---------------------------------------------------

def mul(a: tuple, b: tuple) -> tuple:
    """Product ``a*b`` of two image tuples (``a`` first)."""
    return tuple(map(b.__getitem__, a))


def inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def conj(h: tuple, g: tuple, ginv: tuple | None = None) -> tuple:
    """``g^-1 h g`` on raw tuples; pass ``ginv`` when conjugating in bulk."""
    if ginv is None:
        ginv = inv(g)
    return tuple(map(g.__getitem__, map(h.__getitem__, ginv)))


def identity(n: int) -> tuple:
    return tuple(range(n))


def perm_order(a: tuple) -> int:
    seen = bytearray(len(a))
    result = 1
    for i in range(len(a)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            length += 1
        if length > 1:
            result = result * length // math.gcd(result, length)
    return result


def cycle_type(a: tuple) -> tuple:
    """Sorted tuple of cycle lengths (fixed points included as 1s)."""
    seen = bytearray(len(a))
    lengths = []
    for i in range(len(a)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def power(a: tuple, k: int) -> tuple:
    n = len(a)
    if k < 0:
        a = inv(a)
        k = -k
    result = tuple(range(n))
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def _cycles0(a: Sequence[int]) -> list[tuple[int, ...]]:
    seen = bytearray(len(a))
    out = []
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            continue
        cyc = [i]
        seen[i] = 1
        j = a[i]
        while j != i:
            seen[j] = 1
            cyc.append(j)
            j = a[j]
        out.append(tuple(cyc))
    return out


def format_cycles(a: Sequence[int]) -> str:
    cycles = _cycles0(a)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


# -- public value type ------------------------------------------------------

class Perm(tuple):
    """Immutable permutation stored as its 0-based image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        return tuple.__new__(cls, images)

    @classmethod
    def from_images(cls, images: Sequence[int], one_based: bool = False) -> "Perm":
        imgs = [x - 1 for x in images] if one_based else list(images)
        if sorted(imgs) != list(range(len(imgs))):
            raise PermError(f"not a bijection: {list(images)!r}")
        return cls(imgs)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Perm":
        """Build from 1-based disjoint cycles."""
        imgs = list(range(degree))
        used: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= degree:
                    raise PermError(f"point {x} outside 1..{degree}")
                if x in used:
                    raise PermError(f"point {x} repeated")
                used.add(x)
            for x, y in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                imgs[x - 1] = y - 1
        return cls(imgs)

    @property
    def degree(self) -> int:
        return len(self)

    def image(self, x: int) -> int:
        """Image of the 1-based point ``x``."""
        return self[x - 1] + 1

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, tuple):
            return NotImplemented
        return Perm(compose(self, other))

    def __rmul__(self, other):  # type: ignore[override]
        return NotImplemented

    def __pow__(self, k: int) -> "Perm":
        return Perm(power(self, k))

    def __invert__(self) -> "Perm":
        return Perm(inv(self))

    def inverse(self) -> "Perm":
        return Perm(inv(self))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def order(self) -> int:
        return perm_order(self)

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self)!r}, degree={len(self)})"


def _check_degrees(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise PermError(f"degree mismatch: {len(a)} vs {len(b)}")


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """Apply ``a`` then ``b``."""
    _check_degrees(a, b)
    return Perm(map(b.__getitem__, a))


def inverse(a: Sequence[int]) -> Perm:
    return Perm(inv(tuple(a)))


def order(a: Sequence[int]) -> int:
    return perm_order(tuple(a))


def conjugate(a: Sequence[int], g: Sequence[int]) -> Perm:
    """``a^g = g^-1 a g``."""
    _check_degrees(a, g)
    return Perm(conj(tuple(a), tuple(g)))


def cycle_decomposition(a: Sequence[int]) -> list[tuple[int, ...]]:
    """Nontrivial cycles as 1-based tuples, each starting at its least point,
    sorted by least moved point."""
    return [tuple(x + 1 for x in c) for c in _cycles0(a)]


def support(a: Sequence[int]) -> set[int]:
    return {i + 1 for i, x in enumerate(a) if x != i}


# -- cycle notation ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:\(([^()]*)\)|(\S))")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse a product of disjoint cycles such as ``"(1 2)(4 5 6 7)"``.

    Separators inside a cycle may be spaces or commas.  Empty text and
    ``"()"`` give the identity.  Points must be distinct and at most
    ``degree``.
    """
    if not 1 <= degree <= MAX_DEGREE:
        raise PermError(f"degree {degree} outside 1..{MAX_DEGREE}")
    cycles: list[list[int]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(2) is not None:
            raise PermError(f"unexpected {m.group(2)!r} at position {m.start(2)} in {text!r}")
        body = m.group(1).strip()
        pos = m.end()
        if not body:
            continue
        parts = [t for t in re.split(r"[\s,]+", body) if t]
        try:
            pts = [int(t) for t in parts]
        except ValueError:
            raise PermError(f"malformed cycle ({body}) in {text!r}") from None
        if len(pts) < 2:
            raise PermError(f"cycle ({body}) needs at least two points")
        cycles.append(pts)
    return Perm.from_cycles(cycles, degree)


def print_cycles(a: Sequence[int]) -> str:
    return format_cycles(a)
