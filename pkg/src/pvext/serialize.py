"""Canonical JSON for towers, space elements and group elements.

Scalars of Q are integers when integral and ``"p/q"`` strings otherwise;
F_p scalars are reduced integers in ``[0, p)``.  A tower element is the list
of its coordinates in the basis ``1, t, t^2, ...``.  A tower is
``{"base": "Q" | p, "poly": [1, c_{n-1}, ..., c_0]}`` with the monic defining
polynomial listed from the leading coefficient down.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .algebra import EtaleAlgebra, make_extension
from .case1 import GrpElt1, HermPair2
from .case2 import GrpElt2, V2Elem
from .case3 import GrpElt3, HermPair3
from .common import quadratic_algebra
from .errors import ValidationError
from .fields import BaseField, FpElement


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- scalars ------------------------------------------------------------------


def scalar_to_json(x):
    if isinstance(x, FpElement):
        return int(x)
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def scalar_from_json(k: BaseField, v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValidationError(f"scalar must be an integer or a 'p/q' string, got {v!r}")
    try:
        return k(Fraction(v) if isinstance(v, str) else v)
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"bad scalar {v!r}: {e}") from None


def parse_scalar_list(k: BaseField, text: str) -> list:
    """``"1,-2,3/4"`` to base-field scalars."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ValidationError(f"empty entry in {text!r}")
        out.append(scalar_from_json(k, part))
    return out


# -- towers --------------------------------------------------------------------


def base_field(spec) -> BaseField:
    if spec in ("Q", 0, "0"):
        return BaseField(0)
    try:
        return BaseField(int(spec))
    except (TypeError, ValueError) as e:
        raise ValidationError(f"bad base field {spec!r}: {e}") from None


def make_tower(k: BaseField, poly_desc) -> EtaleAlgebra:
    """Tower from a monic polynomial listed leading coefficient first."""
    cs = [k(c) for c in poly_desc]
    if len(cs) < 2 or cs[0] != 1:
        raise ValidationError("tower polynomial must be monic of degree at least 1")
    if len(cs) == 3:
        return quadratic_algebra(k, cs[1], cs[2], name="t")
    return make_extension(k, list(reversed(cs)), name="t")


def tower_to_json(T: EtaleAlgebra) -> dict:
    k = T.bottom
    return {"base": "Q" if k.p == 0 else k.p, "poly": [scalar_to_json(c) for c in reversed(T.poly)]}


def tower_from_json(d) -> EtaleAlgebra:
    if not isinstance(d, dict) or "base" not in d or "poly" not in d:
        raise ValidationError("tower needs 'base' and 'poly'")
    k = base_field(d["base"])
    return _cached_tower(k.p, tuple(_key(scalar_from_json(k, c)) for c in d["poly"]))


def _key(x):
    return int(x) if isinstance(x, FpElement) else x


_TOWERS: dict = {}


def _cached_tower(p, poly):
    # one tower object per descriptor, so elements read from different files
    # share a parent
    if (p, poly) not in _TOWERS:
        k = BaseField(p)
        _TOWERS[(p, poly)] = make_tower(k, [k(c) for c in poly])
    return _TOWERS[(p, poly)]


def elem_to_json(x):
    if hasattr(x, "parent") and isinstance(x.parent, EtaleAlgebra):
        return [scalar_to_json(c) for c in x.parent.flatten(x)]
    return scalar_to_json(x)


def elem_from_json(T: EtaleAlgebra, v):
    if not isinstance(v, list):
        return T(scalar_from_json(T.bottom, v))
    if len(v) != T.absolute_dimension:
        raise ValidationError(f"expected {T.absolute_dimension} coordinates, got {len(v)}")
    return T.unflatten([scalar_from_json(T.bottom, c) for c in v])


def _matrix_to_json(m, tower=True):
    return [[elem_to_json(e) if tower else scalar_to_json(e) for e in row] for row in m]


def _matrix_from_json(T, m, n, tower=True):
    if not isinstance(m, list) or len(m) != n or any(not isinstance(r, list) or len(r) != n for r in m):
        raise ValidationError(f"expected a {n}x{n} matrix")
    if tower:
        return [[elem_from_json(T, e) for e in row] for row in m]
    return [[scalar_from_json(T.bottom, e) for e in row] for row in m]


# -- space and group elements ------------------------------------------------------


def element_to_json(x) -> dict:
    if isinstance(x, HermPair2):
        case = 1
    elif isinstance(x, HermPair3):
        case = 3
    elif isinstance(x, V2Elem):
        return {"case": 2, "tower": tower_to_json(x.tower), "x111": scalar_to_json(x.x111),
                "x211": elem_to_json(x.x211), "x122": elem_to_json(x.x122), "x222": scalar_to_json(x.x222)}
    else:
        raise ValidationError(f"cannot serialize {type(x).__name__}")
    return {"case": case, "tower": tower_to_json(x.tower), "x1": _matrix_to_json(x.x1), "x2": _matrix_to_json(x.x2)}


def element_from_json(d):
    case, T = _header(d)
    try:
        if case == 2:
            k = T.bottom
            return V2Elem(T, scalar_from_json(k, d["x111"]), elem_from_json(T, d["x211"]),
                          elem_from_json(T, d["x122"]), scalar_from_json(k, d["x222"]))
        n = 2 if case == 1 else 3
        cls = HermPair2 if case == 1 else HermPair3
        return cls(T, _matrix_from_json(T, d["x1"], n), _matrix_from_json(T, d["x2"], n))
    except KeyError as e:
        raise ValidationError(f"missing field {e}") from None


def group_to_json(g) -> dict:
    if isinstance(g, GrpElt2):
        return {"case": 2, "tower": tower_to_json(g.tower), "t": scalar_to_json(g.t), "g": _matrix_to_json(g.g)}
    case = 1 if isinstance(g, GrpElt1) else 3 if isinstance(g, GrpElt3) else None
    if case is None:
        raise ValidationError(f"cannot serialize {type(g).__name__}")
    return {"case": case, "tower": tower_to_json(g.tower), "g1": _matrix_to_json(g.g1),
            "g2": _matrix_to_json(g.g2, tower=False)}


def group_from_json(d):
    case, T = _header(d)
    try:
        if case == 2:
            return GrpElt2(T, scalar_from_json(T.bottom, d["t"]), _matrix_from_json(T, d["g"], 2))
        n = 2 if case == 1 else 3
        cls = GrpElt1 if case == 1 else GrpElt3
        return cls(T, _matrix_from_json(T, d["g1"], n), _matrix_from_json(T, d["g2"], 2, tower=False))
    except KeyError as e:
        raise ValidationError(f"missing field {e}") from None


def _header(d):
    if not isinstance(d, dict):
        raise ValidationError("expected a JSON object")
    case = d.get("case")
    if case not in (1, 2, 3):
        raise ValidationError(f"'case' must be 1, 2 or 3, got {case!r}")
    if "tower" not in d:
        raise ValidationError("missing field 'tower'")
    return case, tower_from_json(d["tower"])
