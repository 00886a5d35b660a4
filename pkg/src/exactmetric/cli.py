"""Command-line front end: load JSON artifacts, dispatch, emit JSON.

Exit codes: 0 success, 1 domain/data error (machine-readable error object on
stdout), 2 usage error.  Output is deterministic: keys are sorted, rationals
are reduced strings, and no timestamps or environment data are included.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import jsonio
from .actions import (
    enumerate_isometries,
    moving_gap,
    orbit,
    orbit_diameter,
)
from .errors import ExactMetricError, StructuralError
from .freespace import (
    Molecule,
    aell_norm_dual,
    aell_norm_primal,
    affine_extend,
    fixed_point,
    moving_lower_bound,
    norm_distance,
)
from .katetov import (
    KatetovFunction,
    TowerPolicy,
    hat_extension,
    is_katetov,
    prop_k_gap,
    star_fragment,
    tower,
)
from .metric import validate
from .proptest import run_suite
from .quotients import min_fvf_cover, pullback_pseudometric, quotient_space


def _load_input(args) -> dict:
    data: dict = {}
    if args.inputs:
        for path in args.inputs:
            with open(path, "r", encoding="utf-8") as fh:
                part = json.load(fh)
            if not isinstance(part, dict):
                raise StructuralError(f"{path}: top-level JSON must be an object")
            data.update(part)
    else:
        part = json.load(sys.stdin)
        if not isinstance(part, dict):
            raise StructuralError("stdin: top-level JSON must be an object")
        data.update(part)
    return data


def _emit(args, payload) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require(data, *keys):
    for key in keys:
        if key not in data:
            raise StructuralError(f"input is missing the {key!r} key")
    return [data[key] for key in keys]


def cmd_validate(args):
    (raw,) = _require(_load_input(args), "space")
    try:
        space = jsonio.space_from_json(raw)
    except StructuralError:
        raise
    except ExactMetricError:
        # re-run the plain validator for the structured axiom report
        from .metric import FiniteMetricSpace

        points = tuple(str(p) for p in raw["points"])
        dist = tuple(
            tuple(jsonio.parse_rational(v) for v in row) for row in raw["dist"]
        )
        space = FiniteMetricSpace(points, dist, bool(raw.get("pseudo", False)))
    _emit(args, validate(space).as_json())


def cmd_norm(args):
    (raw,) = _require(_load_input(args), "molecule")
    m = jsonio.molecule_from_json(raw)
    dual, witness = aell_norm_dual(m)
    primal, plan = aell_norm_primal(m)
    _emit(args, {
        "dual": str(dual),
        "primal": str(primal),
        "equal": dual == primal,
        "witness": {
            x: str(witness.values[x]) for x in m.pointed.space.points
        },
        "plan": [
            {"from": s, "to": t, "amount": str(v)} for s, t, v in plan
        ],
    })


def cmd_katetov_check(args):
    (raw,) = _require(_load_input(args), "function")
    space = jsonio.space_from_json(raw["space"])
    support = tuple(str(x) for x in raw["support"])
    values = {str(k): jsonio.parse_rational(v) for k, v in raw["values"].items()}
    _emit(args, is_katetov(space, values, support).as_json())


def cmd_hat_extend(args):
    (raw,) = _require(_load_input(args), "function")
    f = jsonio.katetov_from_json(raw)
    _emit(args, jsonio.katetov_to_json(hat_extension(f)))


def cmd_star(args):
    data = _load_input(args)
    raw_space, raw_atts = _require(data, "space", "attachments")
    space = jsonio.space_from_json(raw_space)
    attachments = []
    for att in raw_atts:
        support = tuple(str(x) for x in att["support"])
        values = {
            str(k): jsonio.parse_rational(v) for k, v in att["values"].items()
        }
        attachments.append(KatetovFunction(space, support, values))
    _emit(args, jsonio.star_fragment_to_json(star_fragment(space, attachments)))


def cmd_tower(args):
    (raw,) = _require(_load_input(args), "space")
    space = jsonio.space_from_json(raw)
    policy = TowerPolicy(
        support_size=args.support_size,
        grid_step=Fraction(args.grid_step),
        value_cap=Fraction(args.value_cap),
        point_budget=args.budget,
    )
    result = tower(space, args.depth, policy)
    _emit(args, jsonio.space_to_json(result))


def cmd_iso_enum(args):
    (raw,) = _require(_load_input(args), "space")
    space = jsonio.space_from_json(raw)
    isos = enumerate_isometries(space)
    _emit(args, {"count": len(isos), "isometries": [list(g.perm) for g in isos]})


def cmd_moving_gap(args):
    data = _load_input(args)
    raw_action, f = _require(data, "action", "set")
    action = jsonio.action_from_json(raw_action)
    gap, witness = moving_gap(action, [str(x) for x in f])
    out = {"gap": str(gap), "witness": witness}
    if data.get("orbit_of") is not None:
        x = str(data["orbit_of"])
        out["orbit"] = orbit(action, x)
        out["orbit_diameter"] = str(orbit_diameter(action, x))
    _emit(args, out)


def cmd_extend_affine(args):
    data = _load_input(args)
    raw_mol, raw_perm = _require(data, "molecule", "isometry")
    m = jsonio.molecule_from_json(raw_mol)
    from .actions import Isometry

    g = Isometry(m.pointed.space, tuple(int(v) for v in raw_perm))
    _emit(args, jsonio.molecule_to_json(affine_extend(g, m)))


def cmd_fixed_point(args):
    data = _load_input(args)
    raw_action, raw_mol = _require(data, "action", "molecule")
    action = jsonio.action_from_json(raw_action)
    m = jsonio.molecule_from_json(raw_mol)
    _emit(args, jsonio.molecule_to_json(fixed_point(action, m)))


def cmd_quotient(args):
    (raw,) = _require(_load_input(args), "group")
    pm = jsonio.pseudometric_from_json(raw)
    space, action = quotient_space(pm)
    _emit(args, {
        "space": jsonio.space_to_json(space),
        "action": jsonio.action_to_json(action),
    })


def cmd_pullback(args):
    data = _load_input(args)
    raw_action, point = _require(data, "action", "point")
    action = jsonio.action_from_json(raw_action)
    pm = pullback_pseudometric(action, str(point))
    _emit(args, jsonio.pseudometric_to_json(pm))


def cmd_fvf(args):
    data = _load_input(args)
    raw_group, v_labels = _require(data, "group", "V")
    group = jsonio.group_from_json(raw_group)
    v = [group.index(str(x)) for x in v_labels]
    k, f = min_fvf_cover(group, v)
    _emit(args, {"k": k, "F": [group.elements[i] for i in f]})


def cmd_prop_k(args):
    data = _load_input(args)
    raw_space, a, b, phi_vals, psi_vals = _require(
        data, "space", "A", "B", "phi", "psi"
    )
    space = jsonio.space_from_json(raw_space)
    phi = KatetovFunction(
        space, tuple(str(x) for x in a),
        {str(k): jsonio.parse_rational(v) for k, v in phi_vals.items()},
    )
    psi = KatetovFunction(
        space, tuple(str(x) for x in b),
        {str(k): jsonio.parse_rational(v) for k, v in psi_vals.items()},
    )
    _emit(args, prop_k_gap(phi, psi).as_json())


def cmd_th_extension_check(args):
    data = _load_input(args)
    raw_action, phi, raw_v, raw_w = _require(
        data, "action", "phi_set", "v", "w"
    )
    action = jsonio.action_from_json(raw_action)
    if "basepoint" not in data:
        raise StructuralError("input is missing the 'basepoint' key")
    from .metric import PointedSpace

    space = action.space
    pointed = PointedSpace(space, space.index(str(data["basepoint"])))
    v = Molecule.make(
        pointed, {str(k): jsonio.parse_rational(x) for k, x in raw_v.items()}
    )
    w = Molecule.make(
        pointed, {str(k): jsonio.parse_rational(x) for k, x in raw_w.items()}
    )
    phi_labels = [str(x) for x in phi]
    element = data.get("element")
    if element is not None:
        candidates = [action.group.index(str(element))]
    else:
        candidates = range(action.group.order)
    from .metric import set_distance

    bp = pointed.basepoint_label
    phi_plus = sorted(set(phi_labels) | {bp})
    best_gap = Fraction(0)
    best = action.group.identity
    for gi in candidates:
        iso = action.images[gi]
        gap = set_distance(
            space, phi_plus, [iso.apply_label(x) for x in phi_plus]
        )
        if gap > best_gap:
            best_gap, best = gap, gi
    iso = action.images[best]
    bound = moving_lower_bound(pointed, phi_labels, iso, v, w)
    lp = norm_distance(affine_extend(iso, v), w)
    _emit(args, {
        "element": action.group.elements[best],
        "epsilon0": str(best_gap),
        "witness_bound": str(bound),
        "norm_distance": str(lp),
        "certified": bound == best_gap and lp >= bound,
    })


def cmd_proptest(args):
    report = run_suite(args.suite, args.trials, args.seed)
    _emit(args, report)
    if not report["passed"]:
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exactmetric",
        description="Exact-arithmetic finite metric geometry toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **extra):
        p = sub.add_parser(name)
        p.add_argument("--in", dest="inputs", action="append", metavar="FILE")
        p.add_argument("--out", dest="out", metavar="FILE")
        p.set_defaults(handler=handler)
        return p

    add("validate", cmd_validate)
    add("norm", cmd_norm)
    add("katetov-check", cmd_katetov_check)
    add("hat-extend", cmd_hat_extend)
    add("star", cmd_star)
    p = add("tower", cmd_tower)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--support-size", type=int, default=1)
    p.add_argument("--grid-step", default="1")
    p.add_argument("--value-cap", default="2")
    p.add_argument("--budget", type=int, default=64)
    add("iso-enum", cmd_iso_enum)
    add("moving-gap", cmd_moving_gap)
    add("extend-affine", cmd_extend_affine)
    add("fixed-point", cmd_fixed_point)
    add("quotient", cmd_quotient)
    add("pullback", cmd_pullback)
    add("fvf", cmd_fvf)
    add("prop-k", cmd_prop_k)
    add("th-extension-check", cmd_th_extension_check)
    p = add("proptest", cmd_proptest)
    p.add_argument("--suite", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except ExactMetricError as exc:
        sys.stdout.write(json.dumps(exc.as_json(), sort_keys=True) + "\n")
        return 1
    except json.JSONDecodeError as exc:
        payload = {"error": {"kind": "JSONDecodeError", "message": str(exc)}}
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
