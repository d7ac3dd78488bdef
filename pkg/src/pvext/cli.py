"""Command line front end.

Every subcommand writes canonical JSON.  Exit status is 0 on success, 1 on
bad input (including malformed JSON and an exceeded memory budget) and 2
when an internal exact check fails.  Errors are reported as
``{"error": <class name>, "message": <text>}``.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import case1 as C1
from . import case2 as C2
from . import case3 as C3
from .errors import BudgetExceeded, CheckFailure, PVError, ValidationError
from .oracle import enumerate_orbits
from .serialize import (
    base_field,
    dumps,
    element_from_json,
    element_to_json,
    group_from_json,
    make_tower,
    parse_scalar_list,
    scalar_to_json,
)

DEFAULT_TOWER = {1: [1, 0, 1], 2: [1, 0, 0, -2], 3: [1, 0, 1]}


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}: malformed JSON: {e}") from None
    except OSError as e:
        raise ValidationError(f"{path}: {e.strerror}") from None


def _write(out, path):
    text = dumps(out)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _case_of(x) -> int:
    if isinstance(x, C1.HermPair2):
        return 1
    return 2 if isinstance(x, C2.V2Elem) else 3


# -- subcommands ----------------------------------------------------------------


def cmd_invariant(args):
    x = element_from_json(_read_json(args.element))
    case = _case_of(x)
    if case == 1:
        F, (d, ss) = C1.F1(x), C1.delta1(x)
    elif case == 2:
        # the resolvent quadratic has the same splitting field as F_x
        F, (d, ss) = C2.resolvent_form(x), C2.delta2(x)
    else:
        F, (d, ss) = C3.F3(x), C3.delta3(x)
    label = None
    if ss:
        label = (C1.classify1 if case == 1 else C2.field_label2 if case == 2 else C3.classify3)(x)
    return {"F": [scalar_to_json(c) for c in F.coeffs], "delta": scalar_to_json(d), "semistable": ss,
            "label": None if label is None else str(label),
            "label_detail": None if label is None else label.to_json()}


def _tower_arg(args):
    k = base_field(args.base)
    poly = parse_scalar_list(k, args.tower) if args.tower else [k(c) for c in DEFAULT_TOWER[args.case]]
    return make_tower(k, poly)


def cmd_rep(args):
    T = _tower_arg(args)
    k = T.bottom
    beta = parse_scalar_list(k, args.beta) if args.beta else None
    f = parse_scalar_list(k, args.f) if args.f else None
    fiber = args.fiber
    if args.case == 1:
        if fiber == "trivial":
            x = C1.make_w1(T)
        elif fiber == "quadratic":
            x = C1.make_w_alpha1(T, _need(f, "--f"))
        else:
            raise ValidationError(f"case 1 fibers are trivial and quadratic, not {fiber!r}")
    elif args.case == 2:
        x = C2.rep2(T, fiber, beta=beta, f=f)
    else:
        x = C3.rep3(T, fiber, beta=beta, f=f)
    return element_to_json(x)


def _need(v, flag):
    if v is None:
        raise ValidationError(f"{flag} is required here")
    return v


def _act_fn(case):
    return {1: C1.act1, 2: C2.act2, 3: C3.act3}[case]


def _load_pair(args):
    x = element_from_json(_read_json(args.element))
    g = group_from_json(_read_json(args.group))
    if _case_of(x) != _case_of_group(g):
        raise ValidationError("element and group element belong to different cases")
    if g.tower is not x.tower:
        raise ValidationError("element and group element use different towers")
    return x, g


def _case_of_group(g):
    if isinstance(g, C1.GrpElt1):
        return 1
    return 2 if isinstance(g, C2.GrpElt2) else 3


def cmd_act(args):
    x, g = _load_pair(args)
    if args.inverse:
        g = g.inverse()
    return element_to_json(_act_fn(_case_of(x))(g, x))


def cmd_stab_check(args):
    x, g = _load_pair(args)
    y = _act_fn(_case_of(x))(g, x)
    return {"fixes": y == x}


def cmd_census(args):
    report = enumerate_orbits(args.case, args.q, seed=args.seed, samples=args.samples,
                              allow_large=args.best_effort)
    out = report.to_json()
    return out, 0 if report.matches else 2


# -- entry point ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pvext", description="Rational orbits of three twisted prehomogeneous spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariant", help="F_x, Delta(x), semistability and the splitting-field label")
    inv.add_argument("element", help="element JSON file, or - for stdin")

    rep = sub.add_parser("rep", help="orbit representative of a fiber")
    rep.add_argument("--case", type=int, choices=(1, 2, 3), required=True)
    rep.add_argument("--fiber", required=True,
                     help="trivial | quadratic (cases 1-3) | kone | cyclic_cubic | s3_cubic (case 3)")
    rep.add_argument("--beta", help="comma-separated scalars or coordinates")
    rep.add_argument("--f", help="monic polynomial coefficients, from v1^d down")
    rep.add_argument("--base", default="Q", help="Q or a prime p")
    rep.add_argument("--tower", help="monic defining polynomial of k1, leading coefficient first")

    for name, hlp in (("act", "apply a group element"), ("stab-check", "does g fix x?")):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("--element", required=True)
        s.add_argument("--group", required=True)
        if name == "act":
            s.add_argument("--inverse", action="store_true", help="apply the inverse of g")

    cen = sub.add_parser("census", help="exhaustive orbit census over F_q")
    cen.add_argument("--case", type=int, choices=(1, 2, 3), required=True)
    cen.add_argument("--q", type=int, required=True)
    cen.add_argument("--seed", type=int, default=0)
    cen.add_argument("--samples", type=int, default=100, help="members checked per orbit")
    cen.add_argument("--best-effort", action="store_true", help="allow sizes beyond the supported range")

    for s in sub.choices.values():
        s.add_argument("-o", "--output", help="output file (default stdout)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"invariant": cmd_invariant, "rep": cmd_rep, "act": cmd_act,
                "stab-check": cmd_stab_check, "census": cmd_census}
    try:
        result = handlers[args.command](args)
    except (ValidationError, BudgetExceeded) as e:
        _write({"error": type(e).__name__, "message": str(e)}, None)
        return 1
    except CheckFailure as e:
        _write({"error": type(e).__name__, "message": str(e)}, None)
        return 2
    except (PVError, ValueError, TypeError) as e:
        _write({"error": type(e).__name__, "message": str(e)}, None)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    _write(result, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
