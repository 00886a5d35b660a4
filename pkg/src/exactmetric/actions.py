"""Isometries of finite metric spaces and finite group actions by isometries."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DomainError
from .groups import FiniteGroup
from .metric import FiniteMetricSpace, set_distance


@dataclass(frozen=True)
class Isometry:
    """A distance-preserving permutation of the points of a space.

    ``perm[i]`` is the index of the image of point i.  Construction verifies
    bijectivity and exact distance preservation.
    """

    space: FiniteMetricSpace
    perm: tuple[int, ...]

    def __post_init__(self):
        n = self.space.n
        if sorted(self.perm) != list(range(n)):
            raise DomainError("not a permutation of the point set")
        d = self.space.dist
        p = self.perm
        for i in range(n):
            for j in range(i + 1, n):
                if d[p[i]][p[j]] != d[i][j]:
                    raise DomainError(
                        "permutation does not preserve distances at "
                        f"({self.space.points[i]}, {self.space.points[j]})"
                    )

    def apply(self, i: int) -> int:
        return self.perm[i]

    def apply_label(self, label: str) -> str:
        return self.space.points[self.perm[self.space.index(label)]]

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other: (self . other)(x) = self(other(x))."""
        if self.space is not other.space and self.space != other.space:
            raise DomainError("cannot compose isometries of different spaces")
        return Isometry(self.space, tuple(self.perm[j] for j in other.perm))

    def inverse(self) -> "Isometry":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return Isometry(self.space, tuple(inv))

    @staticmethod
    def identity(space: FiniteMetricSpace) -> "Isometry":
        return Isometry(space, tuple(range(space.n)))


def enumerate_isometries(space: FiniteMetricSpace) -> list[Isometry]:
    """All self-isometries, in lexicographic order of their permutations.

    Backtracking over point images, pruned by distance-multiset profiles:
    a point can only map to a point seeing the same multiset of distances.
    Rejects pseudometrics (zero distances break permutation semantics).
    """
    if space.pseudo:
        raise DomainError("isometry enumeration requires a genuine metric")
    n = space.n
    d = space.dist
    profiles = [tuple(sorted(d[i])) for i in range(n)]
    out: list[Isometry] = []
    perm: list[int] = []
    used = [False] * n

    def backtrack(k: int):
        if k == n:
            out.append(Isometry(space, tuple(perm)))
            return
        for cand in range(n):
            if used[cand] or profiles[cand] != profiles[k]:
                continue
            if any(d[perm[j]][cand] != d[j][k] for j in range(k)):
                continue
            used[cand] = True
            perm.append(cand)
            backtrack(k + 1)
            perm.pop()
            used[cand] = False

    backtrack(0)
    return out


@dataclass(frozen=True)
class GroupAction:
    """A homomorphism from a finite group into Iso(space), stored as explicit
    images for every element."""

    group: FiniteGroup
    space: FiniteMetricSpace
    images: tuple[Isometry, ...]

    def __post_init__(self):
        g = self.group
        if len(self.images) != g.order:
            raise DomainError("one isometry per group element required")
        ident = tuple(range(self.space.n))
        if self.images[g.identity].perm != ident:
            raise DomainError("identity element must act as the identity map")
        for a in range(g.order):
            for b in range(g.order):
                lhs = self.images[g.mul(a, b)].perm
                rhs = self.images[a].compose(self.images[b]).perm
                if lhs != rhs:
                    raise DomainError(
                        "images do not form a homomorphism at "
                        f"({g.elements[a]}, {g.elements[b]})"
                    )

    def translate(self, g: int, labels: Iterable[str]) -> list[str]:
        iso = self.images[g]
        return [iso.apply_label(x) for x in labels]


def moving_gap(
    action: GroupAction, f: Sequence[str]
) -> tuple[Fraction, str]:
    """max over group elements g of d(F, gF), with an attaining element.

    Ties resolve to the earliest element in the group's order.
    """
    if not f:
        raise DomainError("moving_gap requires a non-empty set")
    best: Optional[Fraction] = None
    witness = action.group.identity
    for g in range(action.group.order):
        gap = set_distance(action.space, f, action.translate(g, f))
        if best is None or gap > best:
            best, witness = gap, g
    return best, action.group.elements[witness]


def is_strongly_moving_on(
    action: GroupAction,
    family: Sequence[Sequence[str]],
    eps0: Fraction,
) -> tuple[bool, Optional[list[str]]]:
    """Certify the moving property for each set of a finite family.

    For a finite group on a finite space F = X always fails, so this is a
    per-family certificate, never a global claim.
    """
    if eps0 <= 0:
        raise DomainError("the moving constant must be positive")
    for f in family:
        gap, _ = moving_gap(action, f)
        if gap < eps0:
            return False, list(f)
    return True, None


def action_from_closure(
    space: FiniteMetricSpace, generators: Sequence[Isometry]
) -> GroupAction:
    """The action of the group generated by the given isometries.

    Elements are the closure of the generators under composition, ordered
    lexicographically by permutation (so the labeling is deterministic), with
    an abstract multiplication table read off from composition.
    """
    from .groups import FiniteGroup

    ident = Isometry.identity(space)
    seen = {ident.perm: ident}
    frontier = [ident]
    for gen in generators:
        if gen.perm not in seen:
            seen[gen.perm] = gen
            frontier.append(gen)
    while frontier:
        nxt = []
        for a in list(seen.values()):
            for b in frontier:
                c = a.compose(b)
                if c.perm not in seen:
                    seen[c.perm] = c
                    nxt.append(c)
        frontier = nxt
    perms = sorted(seen)
    index = {p: i for i, p in enumerate(perms)}
    labels = tuple(f"g{i}" for i in range(len(perms)))
    table = tuple(
        tuple(index[tuple(p[q[k]] for k in range(space.n))] for q in perms)
        for p in perms
    )
    group = FiniteGroup(labels, table)
    images = tuple(seen[p] for p in perms)
    return GroupAction(group, space, images)


def orbit(action: GroupAction, x: str) -> list[str]:
    """The orbit of a point, in ambient point order."""
    i = action.space.index(x)
    hit = {iso.apply(i) for iso in action.images}
    return [action.space.points[j] for j in sorted(hit)]


def orbit_diameter(action: GroupAction, x: str) -> Fraction:
    orb = [action.space.index(p) for p in orbit(action, x)]
    return max(
        (action.space.dist[i][j] for i in orb for j in orb),
        default=Fraction(0),
    )
