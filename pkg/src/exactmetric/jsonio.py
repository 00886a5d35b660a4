"""JSON encoding and decoding for every shipped artifact type.

Rationals travel as reduced "p/q" strings ("p" when the denominator is 1),
giving bit-exact round trips.  Loaders validate eagerly and raise
:class:`StructuralError` for malformed shapes, :class:`DomainError` for data
violating the mathematical contracts.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping, Optional

from .actions import GroupAction, Isometry
from .errors import DomainError, StructuralError
from .freespace import Molecule
from .groups import FiniteGroup
from .katetov import KatetovFunction, StarFragment
from .metric import FiniteMetricSpace, PointedSpace, require_valid
from .quotients import InvariantPseudometric


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise StructuralError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"not a rational: {value!r}") from exc
    raise StructuralError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


def space_from_json(data: Mapping[str, Any]) -> FiniteMetricSpace:
    try:
        points = tuple(str(p) for p in data["points"])
        dist = tuple(
            tuple(parse_rational(v) for v in row) for row in data["dist"]
        )
    except (KeyError, TypeError) as exc:
        raise StructuralError(f"malformed space record: {exc}") from exc
    pseudo = bool(data.get("pseudo", False))
    return require_valid(FiniteMetricSpace(points, dist, pseudo))


def space_to_json(space: FiniteMetricSpace, basepoint: Optional[str] = None):
    out = {
        "points": list(space.points),
        "dist": [[format_rational(v) for v in row] for row in space.dist],
        "pseudo": space.pseudo,
    }
    if basepoint is not None:
        out["basepoint"] = basepoint
    return out


def pointed_from_json(data: Mapping[str, Any]) -> PointedSpace:
    space = space_from_json(data)
    if "basepoint" not in data:
        raise StructuralError("pointed space requires a basepoint")
    return PointedSpace(space, space.index(str(data["basepoint"])))


def katetov_from_json(data: Mapping[str, Any]) -> KatetovFunction:
    try:
        space = space_from_json(data["space"])
        support = tuple(str(x) for x in data["support"])
        values = {
            str(k): parse_rational(v) for k, v in data["values"].items()
        }
    except (KeyError, TypeError, AttributeError) as exc:
        raise StructuralError(f"malformed function record: {exc}") from exc
    return KatetovFunction(space, support, values)


def katetov_to_json(f: KatetovFunction):
    return {
        "space": space_to_json(f.space),
        "support": list(f.support),
        "values": {x: format_rational(f.value(x)) for x in f.support},
    }


def star_fragment_to_json(frag: StarFragment):
    return {
        "space": space_to_json(frag.result),
        "provenance": [
            {
                "support": list(rec.support),
                "values": {
                    x: format_rational(v) for x, v in rec.values.items()
                },
                "point": rec.point,
                "fresh": rec.fresh,
            }
            for rec in frag.attached
        ],
    }


def group_from_json(data: Mapping[str, Any]) -> FiniteGroup:
    try:
        elements = tuple(str(e) for e in data["elements"])
        table = tuple(tuple(int(v) for v in row) for row in data["table"])
    except (KeyError, TypeError) as exc:
        raise StructuralError(f"malformed group record: {exc}") from exc
    return FiniteGroup(elements, table)


def group_to_json(group: FiniteGroup):
    return {
        "elements": list(group.elements),
        "table": [list(row) for row in group.table],
    }


def pseudometric_from_json(data: Mapping[str, Any]) -> InvariantPseudometric:
    group = group_from_json(data)
    if "pseudometric" not in data:
        raise StructuralError("group record lacks a pseudometric matrix")
    d = tuple(
        tuple(parse_rational(v) for v in row) for row in data["pseudometric"]
    )
    if len(d) != group.order or any(len(row) != group.order for row in d):
        raise StructuralError("pseudometric matrix shape mismatch")
    return InvariantPseudometric(group, d)


def pseudometric_to_json(pm: InvariantPseudometric):
    out = group_to_json(pm.group)
    out["pseudometric"] = [[format_rational(v) for v in row] for row in pm.d]
    return out


def action_from_json(data: Mapping[str, Any]) -> GroupAction:
    """Load an action, completing missing images by composing given ones.

    Images may be supplied for generators only; the rest are filled in by
    multiplying known images until the table closes, then the homomorphism
    law is verified as usual.
    """
    try:
        group = group_from_json(data["group"])
        space = space_from_json(data["space"])
        given = {
            str(k): tuple(int(v) for v in perm)
            for k, perm in data["images"].items()
        }
    except (KeyError, TypeError, AttributeError) as exc:
        raise StructuralError(f"malformed action record: {exc}") from exc
    images: dict[int, Isometry] = {
        group.identity: Isometry.identity(space)
    }
    for label, perm in given.items():
        images[group.index(label)] = Isometry(space, perm)
    changed = True
    while changed:
        changed = False
        known = list(images)
        for a in known:
            for b in known:
                c = group.mul(a, b)
                if c not in images:
                    images[c] = images[a].compose(images[b])
                    changed = True
    if len(images) != group.order:
        missing = [
            group.elements[i] for i in range(group.order) if i not in images
        ]
        raise DomainError(
            f"images do not generate the whole group; missing {missing}"
        )
    return GroupAction(
        group, space, tuple(images[i] for i in range(group.order))
    )


def action_to_json(action: GroupAction):
    return {
        "group": group_to_json(action.group),
        "space": space_to_json(action.space),
        "images": {
            action.group.elements[i]: list(iso.perm)
            for i, iso in enumerate(action.images)
        },
    }


def molecule_from_json(data: Mapping[str, Any]) -> Molecule:
    try:
        space = space_from_json(data["space"])
        coeffs = {
            str(k): parse_rational(v) for k, v in data["coeffs"].items()
        }
    except (KeyError, TypeError, AttributeError) as exc:
        raise StructuralError(f"malformed molecule record: {exc}") from exc
    bp = data.get("basepoint", data["space"].get("basepoint"))
    if bp is None:
        raise StructuralError("molecule requires a basepoint")
    pointed = PointedSpace(space, space.index(str(bp)))
    return Molecule.make(pointed, coeffs)


def molecule_to_json(m: Molecule):
    return {
        "space": space_to_json(m.pointed.space),
        "basepoint": m.pointed.basepoint_label,
        "coeffs": {x: format_rational(v) for x, v in m.coeffs},
    }
