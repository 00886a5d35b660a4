"""Finite (pseudo)metric spaces over exact rationals.

Every distance is a ``fractions.Fraction``; no floating point enters any
computation, so axiom checks and inequalities are decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import DomainError, StructuralError

ZERO = Fraction(0)


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Labeled points with a square rational distance matrix.

    ``pseudo=True`` permits d(x, y) = 0 for distinct x, y.  Construction does
    not validate the axioms; call :func:`validate` (loaders do this for you).
    """

    points: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]
    pseudo: bool = False

    def __post_init__(self):
        n = len(self.points)
        if len(set(self.points)) != n:
            raise StructuralError("duplicate point labels")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise StructuralError(
                "distance matrix shape does not match point count"
            )

    @property
    def n(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise DomainError(f"unknown point label {label!r}") from None

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def d_label(self, a: str, b: str) -> Fraction:
        return self.dist[self.index(a)][self.index(b)]


@dataclass(frozen=True)
class PointedSpace:
    """A metric space with a distinguished basepoint (the origin of the
    free space built over it)."""

    space: FiniteMetricSpace
    basepoint: int

    def __post_init__(self):
        if not 0 <= self.basepoint < self.space.n:
            raise StructuralError("basepoint index out of range")

    @property
    def basepoint_label(self) -> str:
        return self.space.points[self.basepoint]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: Optional[str] = None  # symmetry | diagonal | triangle | separation
    witness: Optional[tuple[str, ...]] = None

    def as_json(self):
        if self.ok:
            return {"ok": True}
        return {"ok": False, "axiom": self.axiom, "witness": list(self.witness)}


def validate(space: FiniteMetricSpace) -> ValidationReport:
    """Check the (pseudo)metric axioms, returning the first violation found.

    Checks run in the order symmetry, zero diagonal, triangle inequality,
    separation (skipped for pseudometrics).  Negative entries surface as
    triangle violations via d(x, x) <= 2 d(x, y).
    """
    pts = space.points
    d = space.dist
    n = space.n
    for i in range(n):
        for j in range(n):
            if d[i][j] != d[j][i]:
                return ValidationReport(False, "symmetry", (pts[i], pts[j]))
    for i in range(n):
        if d[i][i] != ZERO:
            return ValidationReport(False, "diagonal", (pts[i],))
    for i in range(n):
        for j in range(n):
            dij = d[i][j]
            for k in range(n):
                if d[i][k] > dij + d[j][k]:
                    return ValidationReport(
                        False, "triangle", (pts[i], pts[j], pts[k])
                    )
    if not space.pseudo:
        for i in range(n):
            for j in range(i + 1, n):
                if d[i][j] == ZERO:
                    return ValidationReport(
                        False, "separation", (pts[i], pts[j])
                    )
    return ValidationReport(True)


def require_valid(space: FiniteMetricSpace) -> FiniteMetricSpace:
    report = validate(space)
    if not report.ok:
        raise DomainError(
            f"metric axiom violated: {report.axiom} at {report.witness}"
        )
    return space


def set_distance(
    space: FiniteMetricSpace, a: Iterable[str], b: Iterable[str]
) -> Fraction:
    """min over (x, y) in A x B of d(x, y)."""
    ia = [space.index(x) for x in a]
    ib = [space.index(x) for x in b]
    if not ia or not ib:
        raise DomainError("set_distance requires non-empty sets")
    return min(space.dist[i][j] for i, j in product(ia, ib))


def restrict(space: FiniteMetricSpace, subset: Sequence[str]) -> FiniteMetricSpace:
    """Induced subspace on ``subset``, keeping the ambient point order."""
    if not subset:
        raise DomainError("cannot restrict to an empty subset")
    keep = set(subset)
    idx = [i for i, p in enumerate(space.points) if p in keep]
    missing = keep - {space.points[i] for i in idx}
    if missing:
        raise DomainError(f"unknown points in subset: {sorted(missing)}")
    sub = FiniteMetricSpace(
        points=tuple(space.points[i] for i in idx),
        dist=tuple(tuple(space.dist[i][j] for j in idx) for i in idx),
        pseudo=space.pseudo,
    )
    return require_valid(sub)
