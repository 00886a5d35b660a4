"""Katetov functions, hat extensions, one-step extension fragments and towers.

A Katetov function over (X, d) is an f: X -> [0, oo) with

    |f(x) - f(y)| <= d(x, y) <= f(x) + f(y)   for all x, y,

equivalently the distance profile of a virtual extra point.  The hat
extension pushes such an f from a subset to the whole space by

    hat(f)(x) = min over y in the support of f(y) + d(y, x),

which is the pointwise-largest Katetov extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Optional, Sequence

from .actions import Isometry
from .errors import BudgetExceededError, DomainError, InternalCheckError
from .metric import FiniteMetricSpace, set_distance, validate

ZERO = Fraction(0)


@dataclass(frozen=True)
class KatetovFunction:
    """Rational values on a support inside an ambient space.

    The Katetov inequalities are required over the induced subspace on the
    support only; use :func:`hat_extension` to reach the rest of the space.
    """

    space: FiniteMetricSpace
    support: tuple[str, ...]
    values: Mapping[str, Fraction]

    def __post_init__(self):
        if not self.support:
            raise DomainError("a Katetov function needs a non-empty support")
        if set(self.support) != set(self.values):
            raise DomainError("values must be given exactly on the support")
        for x in self.support:
            self.space.index(x)
        report = is_katetov(self.space, self.values, self.support)
        if not report.ok:
            raise DomainError(
                f"not Katetov: {report.side} inequality fails at {report.pair}"
            )

    def value(self, x: str) -> Fraction:
        return self.values[x]


@dataclass(frozen=True)
class KatetovReport:
    ok: bool
    pair: Optional[tuple[str, str]] = None
    side: Optional[str] = None  # "lower" (d > f+f) or "upper" (|df| > d)

    def as_json(self):
        if self.ok:
            return {"ok": True}
        return {"ok": False, "pair": list(self.pair), "side": self.side}


def is_katetov(
    space: FiniteMetricSpace,
    values: Mapping[str, Fraction],
    support: Optional[Sequence[str]] = None,
) -> KatetovReport:
    """Check both Katetov inequalities on all pairs of the support."""
    pts = tuple(support) if support is not None else space.points
    for x in pts:
        if values[x] < ZERO:
            raise DomainError(f"negative value at {x!r}")
    for x, y in combinations(pts, 2):
        d = space.d_label(x, y)
        if abs(values[x] - values[y]) > d:
            return KatetovReport(False, (x, y), "upper")
        if d > values[x] + values[y]:
            return KatetovReport(False, (x, y), "lower")
    return KatetovReport(True)


def hat_extension(f: KatetovFunction) -> KatetovFunction:
    """Extend f from its support to the full space via the min-plus formula."""
    space = f.space
    out = {}
    for x in space.points:
        out[x] = min(f.value(y) + space.d_label(y, x) for y in f.support)
    ext = KatetovFunction(space, space.points, out)
    for y in f.support:
        if ext.value(y) != f.value(y):
            raise InternalCheckError("hat extension failed to restrict to f")
    return ext


def point_function(space: FiniteMetricSpace, x: str) -> KatetovFunction:
    """The distance profile of x itself (its image under the canonical
    embedding of the space into its function extension)."""
    i = space.index(x)
    return KatetovFunction(
        space, space.points,
        {p: space.dist[i][j] for j, p in enumerate(space.points)},
    )


def sup_distance(f: KatetovFunction, g: KatetovFunction) -> Fraction:
    """max over x of |f(x) - g(x)|; both must live on the same full domain."""
    if f.space != g.space or set(f.support) != set(g.support):
        raise DomainError("sup_distance requires a common domain")
    return max(abs(f.value(x) - g.value(x)) for x in f.support)


@dataclass(frozen=True)
class AttachmentRecord:
    support: tuple[str, ...]
    values: Mapping[str, Fraction]
    hat: Mapping[str, Fraction]
    point: str          # label in the result (new, or an absorbing duplicate)
    fresh: bool         # False when deduplicated against an earlier function


@dataclass(frozen=True)
class StarFragment:
    base: FiniteMetricSpace
    attached: tuple[AttachmentRecord, ...]
    result: FiniteMetricSpace


def star_fragment(
    space: FiniteMetricSpace,
    attachments: Sequence[KatetovFunction],
) -> StarFragment:
    """Adjoin one point per attachment, metrized by hat extensions.

    New-point/old-point distances are the hat values; new/new distances are
    sup distances of the hats.  Attachments whose hat coincides with an
    earlier hat, or with the distance profile of an existing point, are
    deduplicated (the extension is a set of functions, so duplicates collapse
    rather than forcing a pseudometric).
    """
    for f in attachments:
        if f.space != space:
            raise DomainError("attachment lives on a different space")
    base_hats = [point_function(space, x).values for x in space.points]
    kept: list[tuple[str, KatetovFunction, dict]] = []
    records: list[AttachmentRecord] = []
    existing = set(space.points)
    fresh_count = 0
    for f in attachments:
        hat = hat_extension(f)
        hv = dict(hat.values)
        dup_label = None
        for j, bh in enumerate(base_hats):
            if hv == bh:
                dup_label = space.points[j]
                break
        if dup_label is None:
            for label, _, kv in kept:
                if hv == kv:
                    dup_label = label
                    break
        if dup_label is not None:
            records.append(
                AttachmentRecord(f.support, dict(f.values), hv, dup_label, False)
            )
            continue
        fresh_count += 1
        label = f"p{fresh_count}"
        while label in existing:
            label += "_"
        existing.add(label)
        kept.append((label, hat, hv))
        records.append(
            AttachmentRecord(f.support, dict(f.values), hv, label, True)
        )
    pts = space.points + tuple(label for label, _, _ in kept)
    n0 = space.n
    n = len(pts)
    dist = [[ZERO] * n for _ in range(n)]
    for i in range(n0):
        for j in range(n0):
            dist[i][j] = space.dist[i][j]
    for a, (_, hat_a, _) in enumerate(kept):
        ia = n0 + a
        for j, x in enumerate(space.points):
            dist[ia][j] = dist[j][ia] = hat_a.value(x)
        for b in range(a):
            ib = n0 + b
            dd = sup_distance(hat_a, kept[b][1])
            dist[ia][ib] = dist[ib][ia] = dd
    result = FiniteMetricSpace(pts, tuple(tuple(r) for r in dist), space.pseudo)
    report = validate(result)
    if not report.ok:
        raise InternalCheckError(
            f"extension fragment failed metric validation: {report.axiom} "
            f"at {report.witness}"
        )
    return StarFragment(space, tuple(records), result)


@dataclass(frozen=True)
class TowerPolicy:
    """Bounds on the per-level enumeration of attachment functions.

    Supports have at most ``support_size`` points; values range over the grid
    step, 2*step, ..., up to ``value_cap``.  Zero is excluded from the grid:
    a zero value would duplicate an existing point.  ``point_budget`` caps the
    total point count of any intermediate space.
    """

    support_size: int = 1
    grid_step: Fraction = Fraction(1)
    value_cap: Fraction = Fraction(2)
    point_budget: int = 64

    def grid(self) -> list[Fraction]:
        if self.grid_step <= 0:
            raise DomainError("grid step must be positive")
        out = []
        v = self.grid_step
        while v <= self.value_cap:
            out.append(v)
            v += self.grid_step
        return out


def tower(
    space: FiniteMetricSpace, depth: int, policy: TowerPolicy
) -> FiniteMetricSpace:
    """Iterate the one-step extension ``depth`` times under a finite policy.

    The result is a deterministic under-approximation of the full function
    extension: only grid-valued functions on small supports are realized.
    """
    if depth < 0:
        raise DomainError("depth must be non-negative")
    current = space
    grid = policy.grid()
    for _ in range(depth):
        attachments: list[KatetovFunction] = []
        pts = current.points
        for k in range(1, policy.support_size + 1):
            for supp in combinations(pts, k):
                for vals in product(grid, repeat=k):
                    mapping = dict(zip(supp, vals))
                    if not is_katetov(current, mapping, supp).ok:
                        continue
                    attachments.append(
                        KatetovFunction(current, supp, mapping)
                    )
        frag = star_fragment(current, attachments)
        if frag.result.n > policy.point_budget:
            raise BudgetExceededError(
                f"tower level would have {frag.result.n} points "
                f"(budget {policy.point_budget})"
            )
        current = frag.result
    return current


def act_on_katetov(g: Isometry, f: KatetovFunction) -> KatetovFunction:
    """Push f forward along an isometry: the result is f o g^{-1} on g(support)."""
    if g.space != f.space:
        raise DomainError("isometry and function live on different spaces")
    ginv = g.inverse()
    supp = tuple(g.apply_label(x) for x in f.support)
    vals = {x: f.value(ginv.apply_label(x)) for x in supp}
    return KatetovFunction(f.space, supp, vals)


@dataclass(frozen=True)
class GapResult:
    gap: Fraction
    epsilon: Fraction
    certified: bool

    def as_json(self):
        return {
            "gap": str(self.gap),
            "epsilon": str(self.epsilon),
            "certified": self.certified,
        }


def prop_k_gap(
    phi: KatetovFunction, psi: KatetovFunction
) -> GapResult:
    """Separation of hat extensions of functions on well-separated supports.

    With A = supp(phi), B = supp(psi) and epsilon = d(A, B), the sup distance
    of the two hat extensions is at least epsilon; ``certified`` records the
    exact comparison.
    """
    if phi.space != psi.space:
        raise DomainError("both functions must live on the same space")
    eps = set_distance(phi.space, phi.support, psi.support)
    gap = sup_distance(hat_extension(phi), hat_extension(psi))
    return GapResult(gap, eps, gap >= eps)
