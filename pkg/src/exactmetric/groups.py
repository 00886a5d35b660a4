"""Finite groups given by multiplication tables, plus a small catalog."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InternalCheckError, StructuralError


@dataclass(frozen=True)
class FiniteGroup:
    """A group on abstract element labels with an explicit table.

    ``table[i][j]`` is the index of the product (element i) * (element j).
    The group laws are verified at construction.
    """

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise StructuralError("duplicate element labels")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise StructuralError("multiplication table shape mismatch")
        for row in self.table:
            for v in row:
                if not 0 <= v < n:
                    raise StructuralError("table entry out of range")
        t = self.table
        e = self._find_identity()
        for g in range(n):
            for h in range(n):
                for k in range(n):
                    if t[t[g][h]][k] != t[g][t[h][k]]:
                        raise DomainError(
                            "multiplication table is not associative"
                        )
        for g in range(n):
            if not any(t[g][h] == e for h in range(n)):
                raise DomainError(f"element {self.elements[g]!r} has no inverse")
        object.__setattr__(self, "_identity", e)

    def _find_identity(self) -> int:
        n = len(self.elements)
        for e in range(n):
            if all(self.table[e][g] == g and self.table[g][e] == g for g in range(n)):
                return e
        raise DomainError("multiplication table has no identity")

    @property
    def identity(self) -> int:
        return self._identity

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        for h in range(self.order):
            if self.table[g][h] == self.identity:
                return h
        raise InternalCheckError("inverse missing despite construction check")

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise DomainError(f"unknown group element {label!r}") from None


def cyclic_group(n: int) -> FiniteGroup:
    labels = tuple(str(i) for i in range(n))
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(labels, table)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of a regular n-gon: rotations r0..r{n-1}, reflections s0..s{n-1}."""
    # element (k, f): rotation by k composed with f reflections; index = k + n*f
    def mul(a, b):
        ka, fa = a % n, a // n
        kb, fb = b % n, b // n
        if fa == 0:
            return (ka + kb) % n + n * fb
        return (ka - kb) % n + n * (1 - fb)

    labels = tuple(f"r{k}" for k in range(n)) + tuple(f"s{k}" for k in range(n))
    table = tuple(tuple(mul(a, b) for b in range(2 * n)) for a in range(2 * n))
    return FiniteGroup(labels, table)


def symmetric_group(n: int) -> FiniteGroup:
    from itertools import permutations

    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    labels = tuple("".join(map(str, p)) for p in perms)
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms)
        for p in perms
    )
    return FiniteGroup(labels, table)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    labels = tuple(
        f"{a}|{b}" for a in g.elements for b in h.elements
    )
    m = h.order

    def idx(i, j):
        return i * m + j

    table = tuple(
        tuple(
            idx(g.table[i1][i2], h.table[j1][j2])
            for i2 in range(g.order)
            for j2 in range(h.order)
        )
        for i1 in range(g.order)
        for j1 in range(h.order)
    )
    return FiniteGroup(labels, table)
