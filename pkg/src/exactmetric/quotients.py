"""Left-invariant pseudometrics on finite groups: kernels, quotients,
pullbacks, and covering certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .actions import GroupAction, Isometry
from .errors import DomainError
from .groups import FiniteGroup
from .metric import FiniteMetricSpace, set_distance, validate

ZERO = Fraction(0)


@dataclass(frozen=True)
class InvariantPseudometric:
    """A pseudometric on the elements of a finite group with
    d(kg, kh) = d(g, h) for all k; verified at construction."""

    group: FiniteGroup
    d: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = self.group
        n = g.order
        space = FiniteMetricSpace(g.elements, self.d, pseudo=True)
        report = validate(space)
        if not report.ok:
            raise DomainError(
                f"pseudometric axiom violated: {report.axiom} at {report.witness}"
            )
        for k in range(n):
            for a in range(n):
                for b in range(n):
                    if self.d[g.mul(k, a)][g.mul(k, b)] != self.d[a][b]:
                        raise DomainError(
                            "pseudometric is not left-invariant at "
                            f"({g.elements[k]}, {g.elements[a]}, {g.elements[b]})"
                        )

    def as_space(self) -> FiniteMetricSpace:
        return FiniteMetricSpace(self.group.elements, self.d, pseudo=True)


def kernel_subgroup(pm: InvariantPseudometric) -> tuple[int, ...]:
    """Indices of the null subgroup {g : d(g, e) = 0}; closure verified."""
    g = pm.group
    e = g.identity
    h = tuple(i for i in range(g.order) if pm.d[i][e] == ZERO)
    members = set(h)
    for a in h:
        if g.inv(a) not in members:
            raise DomainError("kernel not closed under inverse")
        for b in h:
            if g.mul(a, b) not in members:
                raise DomainError("kernel not closed under product")
    return h


def quotient_space(
    pm: InvariantPseudometric,
) -> tuple[FiniteMetricSpace, GroupAction]:
    """Cosets of the null subgroup with the induced metric and the left
    translation action.

    Well-definedness of the metric is asserted across all representative
    pairs, and the action is verified to be isometric and transitive.
    """
    g = pm.group
    h = set(kernel_subgroup(pm))
    cosets: list[list[int]] = []
    coset_of = [-1] * g.order
    for a in range(g.order):
        if coset_of[a] >= 0:
            continue
        members = sorted(g.mul(a, b) for b in h)
        for mem in members:
            coset_of[mem] = len(cosets)
        cosets.append(members)
    reps = [c[0] for c in cosets]
    labels = tuple(g.elements[r] + "H" for r in reps)
    k = len(cosets)
    dist = [[ZERO] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            expected = pm.d[reps[i]][reps[j]]
            for a in cosets[i]:
                for b in cosets[j]:
                    if pm.d[a][b] != expected:
                        raise DomainError(
                            "quotient metric not constant on coset pair "
                            f"({labels[i]}, {labels[j]})"
                        )
            dist[i][j] = expected
    space = FiniteMetricSpace(labels, tuple(tuple(r) for r in dist), pseudo=False)
    report = validate(space)
    if not report.ok:
        raise DomainError(
            f"quotient is not a metric space: {report.axiom} at {report.witness}"
        )
    images = []
    for a in range(g.order):
        perm = tuple(coset_of[g.mul(a, reps[i])] for i in range(k))
        images.append(Isometry(space, perm))
    action = GroupAction(g, space, tuple(images))
    reached = {iso.apply(0) for iso in images}
    if reached != set(range(k)):
        raise DomainError("left translation action is not transitive")
    return space, action


def pullback_pseudometric(
    action: GroupAction, xi: str
) -> InvariantPseudometric:
    """The pseudometric d(g, h) = d_X(g xi, h xi) induced by an orbit."""
    g = action.group
    i = action.space.index(xi)
    images = [iso.apply(i) for iso in action.images]
    d = tuple(
        tuple(action.space.dist[images[a]][images[b]] for b in range(g.order))
        for a in range(g.order)
    )
    return InvariantPseudometric(g, d)


def orbit_isomorphism(
    action: GroupAction, xi: str
) -> dict[str, str]:
    """Isometric identification of the quotient by the pullback pseudometric
    with the orbit of the chosen point; verified exactly."""
    pm = pullback_pseudometric(action, xi)
    qspace, _ = quotient_space(pm)
    g = action.group
    i = action.space.index(xi)
    mapping = {}
    for label in qspace.points:
        rep = g.index(label[:-1])
        mapping[label] = action.space.points[action.images[rep].apply(i)]
    for la, ra in mapping.items():
        for lb, rb in mapping.items():
            if qspace.d_label(la, lb) != action.space.d_label(ra, rb):
                raise DomainError("quotient and orbit fail to match isometrically")
    return mapping


def min_fvf_cover(
    group: FiniteGroup, v: Sequence[int]
) -> tuple[int, tuple[int, ...]]:
    """Smallest F (by size, then lexicographic) with F V F = G.

    Exhaustive search over subsets in size order; V = G is covered by the
    identity alone, and any non-empty V admits some cover since the group is
    finite.
    """
    if not v:
        raise DomainError("V must be non-empty")
    n = group.order
    vset = sorted(set(v))
    for x in vset:
        if not 0 <= x < n:
            raise DomainError("V contains an invalid element index")
    everything = set(range(n))
    for size in range(1, n + 1):
        for f in combinations(range(n), size):
            fv = {group.mul(a, b) for a in f for b in vset}
            fvf = {group.mul(a, b) for a in fv for b in f}
            if fvf == everything:
                return size, f
    raise DomainError("no cover found")  # unreachable for non-empty V


@dataclass(frozen=True)
class CertificateEntry:
    phi: tuple[str, ...]
    witness: Optional[str]
    gap: Optional[Fraction]

    def as_json(self):
        return {
            "phi": list(self.phi),
            "witness": self.witness,
            "gap": None if self.gap is None else str(self.gap),
        }


def moving_certificate(
    pm: InvariantPseudometric,
    radius: Fraction,
    phis: Sequence[Sequence[str]],
) -> list[CertificateEntry]:
    """For each queried finite set of elements, exhibit a translation that
    moves its coset image by at least the ball radius, when one exists.

    V is the open ball of the given radius around the identity.  Each phi is
    symmetrized internally (the displacement argument needs inverses).  When
    phi V phi already covers the group no witness exists, which is the
    expected outcome for large phi on a finite group.
    """
    if radius <= ZERO:
        raise DomainError("ball radius must be positive")
    g = pm.group
    e = g.identity
    ball = [i for i in range(g.order) if pm.d[i][e] < radius]
    qspace, action = quotient_space(pm)
    reps = [g.index(label[:-1]) for label in qspace.points]
    elem_coset = [
        next(j for j, r in enumerate(reps) if pm.d[i][r] == ZERO)
        for i in range(g.order)
    ]

    entries = []
    for phi in phis:
        idx = sorted({g.index(x) for x in phi})
        sym = sorted(set(idx) | {g.inv(i) for i in idx})
        covered = set()
        for a in sym:
            for vv in ball:
                av = g.mul(a, vv)
                for b in sym:
                    covered.add(g.mul(av, b))
        outside = [i for i in range(g.order) if i not in covered]
        if not outside:
            entries.append(CertificateEntry(tuple(g.elements[i] for i in idx), None, None))
            continue
        witness = outside[0]
        phi_cosets = [qspace.points[elem_coset[i]] for i in sym]
        moved = [
            qspace.points[elem_coset[g.mul(witness, i)]] for i in sym
        ]
        gap = set_distance(qspace, phi_cosets, moved)
        if gap < radius:
            raise DomainError(
                "exhibited element fails the quotient gap bound"
            )
        entries.append(
            CertificateEntry(
                tuple(g.elements[i] for i in idx), g.elements[witness], gap
            )
        )
    return entries
