"""The free normed space over a finite pointed metric space.

Elements are molecules: finitely supported rational combinations of points,
with the basepoint playing the role of zero.  The norm is the largest prenorm
bounded by the distance on point differences.  Two independent exact solvers
compute it:

* dual route: maximize the pairing against 1-Lipschitz functions vanishing
  at the basepoint (a rational LP solved by the simplex);
* primal route: minimum-cost shipment realizing the molecule's imbalance,
  with the basepoint absorbing the total mass (successive shortest
  augmenting paths).

Exact strong duality between the two is a library-wide invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Callable, Mapping, Optional, Sequence

from .actions import GroupAction, Isometry
from .errors import DomainError, InternalCheckError
from .metric import FiniteMetricSpace, PointedSpace, set_distance
from .simplex import simplex_max

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Molecule:
    """A finitely supported coefficient vector over the non-basepoint points.

    Coefficients are stored sorted by ambient point order, with zeros and any
    basepoint contribution dropped (the basepoint is the zero vector).
    """

    pointed: PointedSpace
    coeffs: tuple[tuple[str, Fraction], ...]

    @staticmethod
    def make(pointed: PointedSpace, mapping: Mapping[str, Fraction]) -> "Molecule":
        bp = pointed.basepoint_label
        items = []
        for label, value in mapping.items():
            pointed.space.index(label)
            if label != bp and value != ZERO:
                items.append((label, Fraction(value)))
        items.sort(key=lambda kv: pointed.space.index(kv[0]))
        return Molecule(pointed, tuple(items))

    @staticmethod
    def zero(pointed: PointedSpace) -> "Molecule":
        return Molecule(pointed, ())

    @staticmethod
    def point(pointed: PointedSpace, label: str) -> "Molecule":
        return Molecule.make(pointed, {label: ONE})

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.coeffs)

    def coeff(self, label: str) -> Fraction:
        return dict(self.coeffs).get(label, ZERO)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.coeffs)

    def total(self) -> Fraction:
        return sum((v for _, v in self.coeffs), ZERO)

    def __add__(self, other: "Molecule") -> "Molecule":
        self._check_same(other)
        out = self.as_dict()
        for label, value in other.coeffs:
            out[label] = out.get(label, ZERO) + value
        return Molecule.make(self.pointed, out)

    def __sub__(self, other: "Molecule") -> "Molecule":
        return self + other.scale(Fraction(-1))

    def scale(self, q: Fraction) -> "Molecule":
        return Molecule.make(
            self.pointed, {label: q * value for label, value in self.coeffs}
        )

    def _check_same(self, other: "Molecule"):
        if self.pointed != other.pointed:
            raise DomainError("molecules live over different pointed spaces")


@dataclass(frozen=True)
class LipschitzWitness:
    """A 1-Lipschitz function vanishing at the basepoint; pairing with a
    molecule lower-bounds the norm."""

    pointed: PointedSpace
    values: Mapping[str, Fraction]

    def __post_init__(self):
        space = self.pointed.space
        if set(self.values) != set(space.points):
            raise DomainError("witness must assign a value to every point")
        if self.values[self.pointed.basepoint_label] != ZERO:
            raise DomainError("witness must vanish at the basepoint")
        for i, x in enumerate(space.points):
            for j in range(i + 1, space.n):
                y = space.points[j]
                if abs(self.values[x] - self.values[y]) > space.dist[i][j]:
                    raise DomainError(
                        f"witness is not 1-Lipschitz at ({x}, {y})"
                    )

    def pair(self, m: Molecule) -> Fraction:
        return sum((v * self.values[x] for x, v in m.coeffs), ZERO)


def aell_norm_dual(m: Molecule) -> tuple[Fraction, LipschitzWitness]:
    """Norm via the Lipschitz-function LP, with an optimal witness.

    Only the support plus the basepoint enters the LP: a 1-Lipschitz function
    on that subspace extends to the whole space with the same constant (and
    the min-plus extension used for the returned witness does exactly that).
    Variables are shifted by the basepoint distance to become non-negative;
    the shift bounds are implied by the Lipschitz constraints, so the feasible
    region is unchanged.
    """
    pointed = m.pointed
    space = pointed.space
    bp = pointed.basepoint_label
    supp = list(m.support)
    if not supp:
        witness = LipschitzWitness(
            pointed, {x: ZERO for x in space.points}
        )
        return ZERO, witness

    dbp = {x: space.d_label(x, bp) for x in supp}
    coeff = m.as_dict()
    nvar = len(supp)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, x in enumerate(supp):
        # g(x) <= 2 d(x, *)
        row = [ZERO] * nvar
        row[i] = ONE
        rows.append(row)
        rhs.append(2 * dbp[x])
        for j, y in enumerate(supp):
            if i == j:
                continue
            # g(x) - g(y) <= d(x, y) + d(x, *) - d(y, *)
            row = [ZERO] * nvar
            row[i] = ONE
            row[j] = -ONE
            rows.append(row)
            rhs.append(space.d_label(x, y) + dbp[x] - dbp[y])
    c = [coeff[x] for x in supp]
    value, g = simplex_max(c, rows, rhs)
    shift = sum((coeff[x] * dbp[x] for x in supp), ZERO)
    norm = value - shift
    f = {x: g[i] - dbp[x] for i, x in enumerate(supp)}
    f[bp] = ZERO
    full = {}
    for x in space.points:
        full[x] = min(f[y] + space.d_label(y, x) for y in f)
    witness = LipschitzWitness(pointed, full)
    paired = witness.pair(m)
    if paired != norm:
        raise InternalCheckError("optimal witness does not attain the optimum")
    return norm, witness


def aell_norm_primal(
    m: Molecule,
) -> tuple[Fraction, tuple[tuple[str, str, Fraction], ...]]:
    """Norm as the cheapest shipment of the molecule's imbalance.

    Positive coefficients are sources, negative ones sinks, and the basepoint
    absorbs the total.  Costs obey the triangle inequality, so only direct
    source-to-sink arcs are needed; successive shortest augmenting paths on
    the bipartite residual network (Bellman-Ford, exact rationals) give the
    minimum cost.
    """
    pointed = m.pointed
    space = pointed.space
    bp = pointed.basepoint_label
    balance = m.as_dict()
    balance[bp] = balance.get(bp, ZERO) - m.total()
    sources = [x for x in space.points if balance.get(x, ZERO) > ZERO]
    sinks = [x for x in space.points if balance.get(x, ZERO) < ZERO]
    supply = {x: balance[x] for x in sources}
    deficit = {x: -balance[x] for x in sinks}
    flow: dict[tuple[str, str], Fraction] = {}

    while any(v > ZERO for v in supply.values()):
        path = _shortest_augmenting_path(space, sources, sinks, supply, deficit, flow)
        if path is None:
            raise InternalCheckError("imbalance left unshipped")
        amount, arcs = path
        for s, t, forward in arcs:
            key = (s, t)
            if forward:
                flow[key] = flow.get(key, ZERO) + amount
            else:
                flow[key] -= amount
        first = arcs[0]
        last = arcs[-1]
        supply[first[0]] -= amount
        deficit[last[1] if last[2] else last[0]] -= amount

    cost = ZERO
    plan = []
    for (s, t), amount in sorted(
        flow.items(), key=lambda kv: (space.index(kv[0][0]), space.index(kv[0][1]))
    ):
        if amount != ZERO:
            cost += amount * space.d_label(s, t)
            plan.append((s, t, amount))
    return cost, tuple(plan)


def _shortest_augmenting_path(space, sources, sinks, supply, deficit, flow):
    """Bellman-Ford from live sources to the nearest live sink in the
    residual network; returns (bottleneck, arcs) with arcs as
    (source, sink, is_forward) triples along the path."""
    INF = None
    dist: dict[str, Fraction] = {}
    pred: dict[str, tuple[str, bool]] = {}
    for s in sources:
        if supply[s] > ZERO:
            dist[s] = ZERO
    if not dist:
        return None
    nodes = sources + sinks
    for _ in range(len(nodes)):
        changed = False
        for s in sources:
            if s in dist:
                ds = dist[s]
                for t in sinks:
                    nd = ds + space.d_label(s, t)
                    if t not in dist or nd < dist[t]:
                        dist[t] = nd
                        pred[t] = (s, True)
                        changed = True
        for (s, t), amount in flow.items():
            if amount > ZERO and t in dist:
                nd = dist[t] - space.d_label(s, t)
                if s not in dist or nd < dist[s]:
                    dist[s] = nd
                    pred[s] = (t, False)
                    changed = True
        if not changed:
            break
    best = None
    for t in sinks:
        if deficit[t] > ZERO and t in dist:
            if best is None or dist[t] < dist[best] or (
                dist[t] == dist[best] and space.index(t) < space.index(best)
            ):
                best = t
    if best is None:
        return None
    arcs = []
    node = best
    while node in pred:
        prev, forward = pred[node]
        if forward:
            arcs.append((prev, node, True))
        else:
            arcs.append((node, prev, False))
        node = prev
    arcs.reverse()
    start = arcs[0][0]
    bottleneck = supply[start]
    end = arcs[-1]
    bottleneck = min(bottleneck, deficit[end[1] if end[2] else end[0]])
    for s, t, forward in arcs:
        if not forward:
            bottleneck = min(bottleneck, flow[(s, t)])
    return bottleneck, arcs


def aell_norm(m: Molecule) -> Fraction:
    """The free-space norm (primal route; see aell_norm_dual for the LP)."""
    cost, _ = aell_norm_primal(m)
    return cost


def norm_distance(m1: Molecule, m2: Molecule) -> Fraction:
    if m1.pointed != m2.pointed:
        raise DomainError("molecules live over different pointed spaces")
    return aell_norm(m1 - m2)


def affine_extend(g: Isometry, m: Molecule) -> Molecule:
    """The unique affine extension of an isometry, applied to a molecule.

    Coefficients move to the image points, and the affine correction
    (1 - sum of coefficients) lands on the image of the basepoint.
    """
    pointed = m.pointed
    if g.space != pointed.space:
        raise DomainError("isometry acts on a different space")
    out: dict[str, Fraction] = {}
    for x, v in m.coeffs:
        gx = g.apply_label(x)
        out[gx] = out.get(gx, ZERO) + v
    gbp = g.apply_label(pointed.basepoint_label)
    out[gbp] = out.get(gbp, ZERO) + (ONE - m.total())
    return Molecule.make(pointed, out)


@dataclass(frozen=True)
class AffineMap:
    """An affine self-map of the free space: a translation plus a linear part
    given by the images of the basis molecules."""

    pointed: PointedSpace
    columns: Mapping[str, Molecule]  # basis point -> linear image
    translation: Molecule

    def apply(self, m: Molecule) -> Molecule:
        out = self.translation
        for x, v in m.coeffs:
            out = out + self.columns[x].scale(v)
        return out

    @staticmethod
    def from_isometry(g: Isometry, pointed: PointedSpace) -> "AffineMap":
        translation = affine_extend(g, Molecule.zero(pointed))
        columns = {}
        for x in pointed.space.points:
            if x == pointed.basepoint_label:
                continue
            columns[x] = affine_extend(g, Molecule.point(pointed, x)) - translation
        return AffineMap(pointed, columns, translation)


def decompose_affine(
    psi: Callable[[Molecule], Molecule],
    pointed: PointedSpace,
    probe_trials: int = 8,
    seed: int = 0,
) -> AffineMap:
    """Split a map into (linear part, translation), probing affinity first.

    The probe checks psi(t a + (1-t) b) = t psi(a) + (1-t) psi(b) on random
    molecule pairs; failures reject the input as non-affine.
    """
    rng = Random(seed)
    labels = [x for x in pointed.space.points if x != pointed.basepoint_label]
    for _ in range(probe_trials):
        a = _random_probe_molecule(rng, pointed, labels)
        b = _random_probe_molecule(rng, pointed, labels)
        t = Fraction(rng.randint(-4, 8), rng.randint(1, 4))
        mixed = a.scale(t) + b.scale(ONE - t)
        if psi(mixed) != psi(a).scale(t) + psi(b).scale(ONE - t):
            raise DomainError("map failed the affinity probe")
    translation = psi(Molecule.zero(pointed))
    columns = {
        x: psi(Molecule.point(pointed, x)) - translation for x in labels
    }
    return AffineMap(pointed, columns, translation)


def _random_probe_molecule(rng: Random, pointed: PointedSpace, labels):
    coeffs = {
        x: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for x in labels
    }
    return Molecule.make(pointed, coeffs)


def rebase(m: Molecule, new_basepoint: str) -> Molecule:
    """Express a molecule over a different basepoint.

    This is the affine re-basing sending each point of the space to itself;
    it preserves all pairwise norm distances.  The image of the old zero is
    the old basepoint viewed from the new one.
    """
    space = m.pointed.space
    new_pointed = PointedSpace(space, space.index(new_basepoint))
    out: dict[str, Fraction] = {}
    for x, v in m.coeffs:
        out[x] = out.get(x, ZERO) + v
    old_bp = m.pointed.basepoint_label
    out[old_bp] = out.get(old_bp, ZERO) + (ONE - m.total())
    return Molecule.make(new_pointed, out)


def moving_lower_bound(
    pointed: PointedSpace,
    phi: Sequence[str],
    g: Isometry,
    v: Molecule,
    w: Molecule,
    eps0: Optional[Fraction] = None,
) -> Fraction:
    """Certified lower bound on the norm distance between w and the affine
    image of v, from the capped distance-to-set witness function.

    The witness vanishes on phi + basepoint and equals the gap on the
    translate, so its pairing with the difference is exactly the gap.
    """
    space = pointed.space
    bp = pointed.basepoint_label
    phi_plus = list(dict.fromkeys(list(phi) + [bp]))
    for mol in (v, w):
        if mol.pointed != pointed:
            raise DomainError("molecule lives over a different pointed space")
        if not set(mol.support) <= set(phi_plus):
            raise DomainError("molecule support must lie in phi plus basepoint")
    g_phi = [g.apply_label(x) for x in phi_plus]
    gap = set_distance(space, phi_plus, g_phi)
    if eps0 is None:
        eps0 = gap
    elif gap < eps0:
        raise DomainError(
            f"separation {gap} is below the requested constant {eps0}"
        )
    if eps0 == ZERO:
        return ZERO
    h_values = {
        x: min(eps0, set_distance(space, [x], phi_plus)) for x in space.points
    }
    witness = LipschitzWitness(pointed, h_values)
    gv = affine_extend(g, v)
    paired = witness.pair(gv - w)
    if paired != eps0:
        raise InternalCheckError("witness pairing missed the certified bound")
    return eps0


def fixed_point(action: GroupAction, seed: Molecule) -> Molecule:
    """Barycenter of the orbit of a molecule under the affine-extended action;
    exactly invariant under every group element."""
    pointed = seed.pointed
    if action.space != pointed.space:
        raise DomainError("action and molecule live on different spaces")
    acc = Molecule.zero(pointed)
    for iso in action.images:
        acc = acc + affine_extend(iso, seed)
    bary = acc.scale(Fraction(1, action.group.order))
    for iso in action.images:
        if affine_extend(iso, bary) != bary:
            raise InternalCheckError("orbit barycenter is not invariant")
    return bary
