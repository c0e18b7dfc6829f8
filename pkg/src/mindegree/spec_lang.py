"""A small text language for naming permutation groups on the command line.

Grammar::

    spec  := term ("x" term)*
    term  := "S"n | "A"n | "C"n | "Dih"order | named-key
           | "deg" n ":" perm ("," perm)*
           | "wr(" spec "," spec ")" | "(" spec ")"

``x`` builds the external direct product (left factor on the first points)
and ``wr(B, T)`` the imprimitive wreath product with ``T`` permuting
copies of ``B``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .actions import external_direct_product, wreath_product
from .constructions import NAMED, alternating, cyclic, dihedral, symmetric
from .group import PermGroup
from .perm import MAX_DEGREE, PermError, format_cycles, parse_cycles

__all__ = ["GroupSpec", "SpecError", "parse_spec", "resolve"]


class SpecError(PermError):
    """Syntax or semantic error in a group spec, with the offending position."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if text else ""
        super().__init__(f"{message}{where}")


class GroupSpec:
    def to_text(self) -> str:
        raise NotImplementedError

    def resolve(self) -> PermGroup:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Family(GroupSpec):
    kind: str  # "S", "A", "C" or "Dih"
    arg: int

    def to_text(self) -> str:
        return f"{self.kind}{self.arg}"

    def resolve(self) -> PermGroup:
        build = {"S": symmetric, "A": alternating, "C": cyclic, "Dih": dihedral}[self.kind]
        return build(self.arg)


@dataclass(frozen=True)
class Named(GroupSpec):
    key: str

    def to_text(self) -> str:
        return self.key

    def resolve(self) -> PermGroup:
        return NAMED[self.key]()


@dataclass(frozen=True)
class Literal(GroupSpec):
    degree: int
    perms: tuple[str, ...]

    def to_text(self) -> str:
        return f"deg {self.degree}: " + ", ".join(self.perms)

    def resolve(self) -> PermGroup:
        return PermGroup(self.degree, [parse_cycles(p, self.degree) for p in self.perms])


@dataclass(frozen=True)
class Product(GroupSpec):
    left: GroupSpec
    right: GroupSpec

    def to_text(self) -> str:
        return f"{_wrap(self.left)} x {_wrap(self.right)}"

    def resolve(self) -> PermGroup:
        return external_direct_product(self.left.resolve(), self.right.resolve())


@dataclass(frozen=True)
class Wreath(GroupSpec):
    base: GroupSpec
    top: GroupSpec

    def to_text(self) -> str:
        return f"wr({self.base.to_text()}, {self.top.to_text()})"

    def resolve(self) -> PermGroup:
        return wreath_product(self.base.resolve(), self.top.resolve())


def _wrap(s: GroupSpec) -> str:
    # literals swallow trailing cycles, and products are left-nested
    if isinstance(s, Literal) or isinstance(s, Product):
        return f"({s.to_text()})"
    return s.to_text()


_FAMILY = re.compile(r"(Dih|S|A|C)(\d+)(?![A-Za-wyz0-9_(])")
_DEG = re.compile(r"deg\s*(\d+)\s*:")
_PERM = re.compile(r"(\s*\([^()]*\))+")
_KEYS = sorted(NAMED, key=len, reverse=True)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise SpecError(msg, self.text, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str) -> None:
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def spec(self) -> GroupSpec:
        node = self.term()
        while self.peek("x"):
            self.pos += 1
            node = Product(node, self.term())
        return node

    def term(self) -> GroupSpec:
        self.skip()
        t, p = self.text, self.pos
        if t.startswith("wr(", p):
            self.pos += 3
            base = self.spec()
            self.expect(",")
            top = self.spec()
            self.expect(")")
            return Wreath(base, top)
        if t.startswith("(", p):
            self.pos += 1
            inner = self.spec()
            self.expect(")")
            return inner
        m = _DEG.match(t, p)
        if m:
            return self.literal(int(m.group(1)), m.end())
        for key in _KEYS:
            end = p + len(key)
            if t.startswith(key, p) and not (end < len(t) and (t[end].isalnum() or t[end] == "_")):
                self.pos = end
                return Named(key)
        m = _FAMILY.match(t, p)
        if m:
            kind, arg = m.group(1), int(m.group(2))
            if kind == "Dih" and (arg % 2 or arg < 2):
                self.error(f"dihedral order must be even, got {arg}")
            if kind != "Dih" and not 1 <= arg <= MAX_DEGREE:
                self.error(f"degree {arg} outside 1..{MAX_DEGREE}")
            self.pos = m.end()
            return Family(kind, arg)
        self.error("expected a group")

    def literal(self, degree: int, pos: int) -> Literal:
        if not 1 <= degree <= MAX_DEGREE:
            self.pos = pos
            self.error(f"degree {degree} outside 1..{MAX_DEGREE}")
        perms = []
        self.pos = pos
        while True:
            self.skip()
            m = _PERM.match(self.text, self.pos)
            if not m:
                self.error("expected a permutation in cycle notation")
            try:
                perms.append(format_cycles(parse_cycles(m.group(0), degree)))
            except PermError as exc:
                self.error(str(exc))
            self.pos = m.end()
            save = self.pos
            self.skip()
            if self.peek(",") and _PERM.match(self.text, self.pos + 1):
                self.pos += 1
                continue
            self.pos = save
            return Literal(degree, tuple(perms))


def parse_spec(text: str) -> GroupSpec:
    """Parse ``text``; raises :class:`SpecError` with a position on failure."""
    p = _Parser(text)
    node = p.spec()
    p.skip()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return node


def resolve(text: str) -> PermGroup:
    return parse_spec(text).resolve()
