"""Pairs of binary Hermitian forms over a quadratic extension.

The group ``GL2(k1) x GL2(k)`` acts on the pencil ``M(v) = v1 x1 + v2 x2`` by
``g1 M(v g2) t(g1)^sigma``.  The invariant is ``F_x(v) = det M(v)``, a binary
quadratic form over k, and the orbit of a semistable x is classified by the
splitting field of ``F_x``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import poly as P
from .algebra import EtaleAlgebra, galois_descend, tensor_extend, descend_to_bottom
from .common import (
    conj_transpose,
    diag,
    inv,
    is_unit,
    mat_eq,
    mat_inv,
    monic_coeffs,
    nontrivial_automorphism,
    quadratic_algebra,
)
from .errors import (
    NotHermitian,
    NotRational,
    NotSemistable,
    NotStabilizing,
    SingularGroupElement,
    TowerMismatch,
    ValidationError,
)
from .forms import BinaryForm, ErLabel, binary_form_disc, splitting_label


def _check_tower(tower: EtaleAlgebra):
    if tower.n != 2 or tower.depth != 1:
        raise ValidationError("case 1 needs a quadratic extension of the base field")
    nontrivial_automorphism(tower)


def hermitian_pencil_ok(tower, mats) -> bool:
    sigma = nontrivial_automorphism(tower)
    return all(mat_eq(conj_transpose(m, sigma), m) for m in mats)


@dataclass(frozen=True, eq=False)
class HermPair2:
    tower: EtaleAlgebra
    x1: tuple
    x2: tuple

    def __post_init__(self):
        _check_tower(self.tower)
        object.__setattr__(self, "x1", _as_matrix(self.tower, self.x1, 2))
        object.__setattr__(self, "x2", _as_matrix(self.tower, self.x2, 2))
        if not hermitian_pencil_ok(self.tower, (self.x1, self.x2)):
            raise ValidationError("x1 and x2 must be Hermitian")

    def __eq__(self, other):
        return (isinstance(other, HermPair2) and other.tower is self.tower
                and mat_eq(self.x1, other.x1) and mat_eq(self.x2, other.x2))

    def __hash__(self):
        return hash((tuple(map(tuple, self.x1)), tuple(map(tuple, self.x2))))


def _as_matrix(ring, m, n):
    m = tuple(tuple(ring(x) for x in row) for row in m)
    if len(m) != n or any(len(r) != n for r in m):
        raise ValidationError(f"expected a {n}x{n} matrix")
    return m


@dataclass(frozen=True, eq=False)
class GrpElt1:
    tower: EtaleAlgebra
    g1: tuple
    g2: tuple

    def __post_init__(self):
        k = self.tower.bottom
        object.__setattr__(self, "g1", _as_matrix(self.tower, self.g1, 2))
        object.__setattr__(self, "g2", _as_matrix(k, self.g2, 2))
        if not is_unit(P.det(self.g1)) or not is_unit(P.det(self.g2)):
            raise SingularGroupElement("group element is not invertible")

    def __mul__(self, other: GrpElt1) -> GrpElt1:
        _same(self.tower, other.tower)
        return GrpElt1(self.tower, P.matmul(self.g1, other.g1), P.matmul(self.g2, other.g2))

    def inverse(self) -> GrpElt1:
        return GrpElt1(self.tower, mat_inv(self.g1), mat_inv(self.g2))

    def __eq__(self, other):
        return isinstance(other, GrpElt1) and mat_eq(self.g1, other.g1) and mat_eq(self.g2, other.g2)

    def __hash__(self):
        return hash((tuple(map(tuple, self.g1)), tuple(map(tuple, self.g2))))


def _same(a, b):
    if a is not b:
        raise TowerMismatch("elements live over different towers")


def identity1(tower) -> GrpElt1:
    k = tower.bottom
    return GrpElt1(tower, diag(tower.one, tower.one, zero=tower.zero), diag(k.one, k.one, zero=k.zero))


def pencil_act(g1, g2, x1, x2, sigma):
    """``g1 M(v g2) t(g1)^sigma`` on the pencil ``(x1, x2)``, all over one ring."""
    (a, b), (c, d) = g2
    g1h = conj_transpose(g1, sigma)
    y1 = [[a * p + b * q for p, q in zip(r1, r2)] for r1, r2 in zip(x1, x2)]
    y2 = [[c * p + d * q for p, q in zip(r1, r2)] for r1, r2 in zip(x1, x2)]
    return P.matmul(P.matmul(g1, y1), g1h), P.matmul(P.matmul(g1, y2), g1h)


def act1(g: GrpElt1, x: HermPair2) -> HermPair2:
    _same(g.tower, x.tower)
    sigma = nontrivial_automorphism(x.tower)
    y1, y2 = pencil_act(g.g1, g.g2, x.x1, x.x2, sigma)
    if not hermitian_pencil_ok(x.tower, (y1, y2)):
        raise NotHermitian("action produced a non-Hermitian pencil")
    return HermPair2(x.tower, y1, y2)


def pencil_det2(x1, x2) -> list:
    """Coefficients of ``det(v1 x1 + v2 x2)``, from v1^2 down to v2^2."""
    c0 = x1[0][0] * x1[1][1] - x1[0][1] * x1[1][0]
    c1 = x1[0][0] * x2[1][1] + x2[0][0] * x1[1][1] - x1[0][1] * x2[1][0] - x2[0][1] * x1[1][0]
    c2 = x2[0][0] * x2[1][1] - x2[0][1] * x2[1][0]
    return [c0, c1, c2]


def F1(x: HermPair2) -> BinaryForm:
    k = x.tower.bottom
    try:
        coeffs = [descend_to_bottom(c) for c in pencil_det2(x.x1, x.x2)]
    except NotRational as e:
        raise NotHermitian("determinant of a Hermitian pencil left the base field") from e
    return BinaryForm(coeffs, k)


def delta1(x: HermPair2):
    """``(Delta, semistable)``; ``Delta(gx) = N(det g1)^2 det(g2)^2 Delta(x)``."""
    d = binary_form_disc(F1(x))
    return d, d != 0


def classify1(x: HermPair2) -> ErLabel:
    F = F1(x)
    if binary_form_disc(F) == 0:
        raise NotSemistable("x is not semistable")
    return splitting_label(F)


# ---------------------------------------------------------------------------
# representatives


def make_w1(tower) -> HermPair2:
    o, z = tower.one, tower.zero
    return HermPair2(tower, [[o, z], [z, z]], [[z, z], [z, o]])


def make_tau1(tower) -> GrpElt1:
    k = tower.bottom
    o, z = tower.one, tower.zero
    return GrpElt1(tower, [[z, o], [o, z]], [[k.zero, k.one], [k.one, k.zero]])


def make_w_alpha1(tower, f) -> HermPair2:
    """The representative with pencil matrices ``[[2, a1], [a1, a1^2 - 2a2]]``
    and ``[[a1, a1^2 - 2a2], [a1^2 - 2a2, a1^3 - 3a1a2]]``."""
    k = tower.bottom
    a1, a2 = monic_coeffs(k, f, 2)
    s2 = a1 * a1 - 2 * a2
    s3 = a1 ** 3 - 3 * a1 * a2
    return HermPair2(tower, [[2, a1], [a1, s2]], [[a1, s2], [s2, s3]])


class QuadraticRoots:
    """``k(alpha) = k[t]/(t^2 + a1 t + a2)`` with ``alpha1 = t`` and
    ``alpha2 = -a1 - t``; may be split."""

    def __init__(self, k, f):
        self.a1, self.a2 = monic_coeffs(k, f, 2)
        self.algebra = quadratic_algebra(k, self.a1, self.a2, name="a")
        self.alpha1 = self.algebra.gen
        self.alpha2 = -self.a1 - self.alpha1
        self.nu = nontrivial_automorphism(self.algebra)

    def P(self, ring=None):
        ring = self.algebra if ring is None else ring
        return [[ring.one, ring.one], [-ring(self.alpha1), -ring(self.alpha2)]]


def g_alpha1(tower, f):
    """``g_alpha = (P, P)`` over the composite ``k1 (x) k(alpha)``."""
    return _g_alpha1(tower, monic_coeffs(tower.bottom, f, 2))


@lru_cache(maxsize=64)
def _g_alpha1(tower, f):
    R = QuadraticRoots(tower.bottom, f)
    K = tensor_extend(tower, R.algebra)
    Pm = R.P(K)
    return K, R, Pm


def _lifted(K, aut):
    for lift in K.lifts_b:
        if lift.images[:-1] == tuple(K(i) for i in aut.images):
            return lift
    raise ValidationError("automorphism has no lift")


def stab1_elem(target: str, tower, params, f=None) -> GrpElt1:
    """A stabilizer element of ``w`` or ``w_alpha(f)``.

    For ``w`` the parameters are units ``(t11, t12)`` of k1.  For
    ``w_alpha`` the parameter is a unit ``t11`` of the composite
    ``K = k1 (x) k(alpha)`` returned by :func:`composite1`; the element
    ``g_alpha t g_alpha^-1`` is formed in K and descended to k.
    """
    k = tower.bottom
    if target == "w":
        t11, t12 = (tower(t) for t in params)
        n11, n12 = tower.norm(t11), tower.norm(t12)
        g = GrpElt1(tower, diag(t11, t12, zero=tower.zero), diag(inv(n11), inv(n12), zero=k.zero))
        x = make_w1(tower)
    elif target == "w_alpha":
        K, R, Pm = g_alpha1(tower, f)
        nu = _lifted(K, R.nu)
        (t11,) = params if isinstance(params, (list, tuple)) else (params,)
        t11 = K.unflatten(t11) if isinstance(t11, list) else K(t11)
        t12 = nu(t11)
        t21 = K(K.norm(t11)).inverse()
        t22 = nu(t21)
        Pinv = mat_inv(Pm)
        h1 = P.matmul(P.matmul(Pm, diag(t11, t12, zero=K.zero)), Pinv)
        h2 = P.matmul(P.matmul(Pm, diag(t21, t22, zero=K.zero)), Pinv)
        fixers = K.lifts_b
        g1 = [[K.project_a(galois_descend(e, fixers, K)) for e in row] for row in h1]
        g2 = [[descend_to_bottom(galois_descend(e, K.automorphisms, K)) for e in row] for row in h2]
        g = GrpElt1(tower, g1, g2)
        x = make_w_alpha1(tower, f)
    else:
        raise ValidationError(f"unknown target {target!r}")
    if act1(g, x) != x:
        raise NotStabilizing("constructed element does not fix its target")
    return g


def composite1(tower, f):
    """The composite algebra in which :func:`stab1_elem` expects ``t11``."""
    return g_alpha1(tower, f)[0]


def g_alpha_action1(tower, f) -> HermPair2:
    """``g_alpha w`` computed in the composite and descended; equals
    :func:`make_w_alpha1`."""
    K, R, Pm = g_alpha1(tower, f)
    sigma = nontrivial_automorphism_lift(K)
    w1 = [[K.one, K.zero], [K.zero, K.zero]]
    w2 = [[K.zero, K.zero], [K.zero, K.one]]
    y1, y2 = pencil_act(Pm, Pm, w1, w2, sigma)
    d1 = [[K.project_a(galois_descend(e, K.lifts_b, K)) for e in row] for row in y1]
    d2 = [[K.project_a(galois_descend(e, K.lifts_b, K)) for e in row] for row in y2]
    return HermPair2(tower, d1, d2)


def nontrivial_automorphism_lift(K):
    """The lift of the first factor's conjugation to the composite."""
    others = [a for a in K.lifts_a if not a.is_identity()]
    if len(others) != 1:
        raise ValidationError("first tensor factor is not a quadratic algebra with conjugation")
    return others[0]
