"""The twisted D4 space over a cubic extension k1/k.

A point is stored by its four rational coordinates ``(x111, x211, x122,
x222)`` with ``x111, x222`` in k and ``x211, x122`` in k1; the other four
coordinates are conjugates and are never stored.  ``GL1(k) x GL2(k1)`` acts,
the GL2 part through a Bruhat decomposition into ``a(t1, t2)``, ``n(u)`` and
``tau``.  Every conjugate appearing in the generator formulas is eliminated
with characteristic-polynomial identities, so k1 need not be Galois.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import poly as P
from .algebra import AlgebraElement, EtaleAlgebra, descend_to_bottom, galois_descend, tensor_extend
from .case1 import QuadraticRoots, _lifted
from .common import diag, inv, is_unit, mat_eq, mat_inv, monic_coeffs
from .errors import (
    CharTwoUnsupported,
    NonUnit,
    NormConditionUnsatisfiable,
    NotRational,
    NotSemistable,
    NotStabilizing,
    SingularGroupElement,
    TowerMismatch,
    ValidationError,
)
from .forms import BinaryForm, ErLabel, quadratic_label, splitting_label


def _check_tower(tower):
    if not isinstance(tower, EtaleAlgebra) or tower.n != 3 or tower.depth != 1:
        raise ValidationError("case 2 needs a cubic extension of the base field")


@dataclass(frozen=True, eq=False)
class V2Elem:
    tower: EtaleAlgebra
    x111: object
    x211: AlgebraElement
    x122: AlgebraElement
    x222: object

    def __post_init__(self):
        _check_tower(self.tower)
        k = self.tower.bottom
        object.__setattr__(self, "x111", k(self.x111))
        object.__setattr__(self, "x222", k(self.x222))
        object.__setattr__(self, "x211", self.tower(self.x211))
        object.__setattr__(self, "x122", self.tower(self.x122))

    def coords(self) -> tuple:
        return (self.x111, self.x211, self.x122, self.x222)

    def __eq__(self, other):
        return isinstance(other, V2Elem) and other.tower is self.tower and self.coords() == other.coords()

    def __hash__(self):
        return hash(self.coords())

    def scale(self, t) -> V2Elem:
        return V2Elem(self.tower, t * self.x111, t * self.x211, t * self.x122, t * self.x222)


@dataclass(frozen=True, eq=False)
class GrpElt2:
    tower: EtaleAlgebra
    t: object
    g: tuple

    def __post_init__(self):
        k = self.tower.bottom
        object.__setattr__(self, "t", k(self.t))
        object.__setattr__(self, "g", tuple(tuple(self.tower(e) for e in row) for row in self.g))
        if self.t == 0 or not is_unit(P.det(self.g)):
            raise SingularGroupElement("group element is not invertible")

    def __mul__(self, other: GrpElt2) -> GrpElt2:
        if other.tower is not self.tower:
            raise TowerMismatch("elements live over different towers")
        return GrpElt2(self.tower, self.t * other.t, P.matmul(self.g, other.g))

    def inverse(self) -> GrpElt2:
        return GrpElt2(self.tower, inv(self.t), mat_inv(self.g))

    def __eq__(self, other):
        return isinstance(other, GrpElt2) and self.t == other.t and mat_eq(self.g, other.g)

    def __hash__(self):
        return hash((self.t, self.g))


def chi(e: GrpElt2):
    """The character ``N_{k1/k}(det g)``."""
    return e.tower.norm(P.det(e.g))


def _sym(tower, u):
    """``(e1, e2, e3)`` with char poly ``t^3 - e1 t^2 + e2 t - e3``."""
    cp = tower.char_poly(u)
    return -cp[2], cp[1], -cp[0]


def conj_product(tower, u):
    """``u^sigma u^sigma^2 = u^2 - e1 u + e2``."""
    e1, e2, _ = _sym(tower, u)
    return u * u - e1 * u + e2


def conj_bracket(tower, x, u):
    """``x^sigma^2 u^sigma + x^sigma u^sigma^2``."""
    tx, tu = tower.trace(x), tower.trace(u)
    return tx * tu - tower.trace(x * u) - u * tx - x * tu + 2 * x * u


# -- generators ---------------------------------------------------------------


def act_a(x: V2Elem, t1, t2) -> V2Elem:
    K = x.tower
    n1, n2 = K.norm(t1), K.norm(t2)
    return V2Elem(K, n1 * x.x111, t2 * conj_product(K, t1) * x.x211,
                  t1 * conj_product(K, t2) * x.x122, n2 * x.x222)


def act_n(x: V2Elem, u) -> V2Elem:
    K = x.tower
    cu = conj_product(K, u)
    y211 = x.x211 + x.x111 * u
    y122 = x.x122 + x.x111 * cu + conj_bracket(K, x.x211, u)
    y222 = x.x222 + x.x111 * K.norm(u) + K.trace(x.x211 * cu) + K.trace(x.x122 * u)
    return V2Elem(K, x.x111, y211, y122, y222)


def act_tau(x: V2Elem) -> V2Elem:
    return V2Elem(x.tower, x.x222, x.x122, x.x211, x.x111)


def bruhat(tower, g) -> list[tuple]:
    """Generator word for g, applied right to left.

    Returns a list of ``("a", t1, t2)``, ``("n", u)`` and ``("tau",)`` whose
    product, read left to right, is g.
    """
    (a, b), (c, d) = g
    if b == 0:
        return [("a", a, d), ("n", c * inv(d))]
    if is_unit(b):
        det = a * d - b * c
        return [("a", b, -det * inv(b)), ("n", -d * b * inv(det)), ("tau",), ("n", a * inv(b))]
    # b is a non-zero zero divisor (k1 split): g = (g n(s) tau) tau n(-s)
    for s in _shift_candidates(tower):
        if is_unit(a + b * s):
            h = P.matmul(P.matmul(g, [[tower.one, tower.zero], [s, tower.one]]),
                         [[tower.zero, tower.one], [tower.one, tower.zero]])
            return bruhat(tower, h) + [("tau",), ("n", -s)]
    raise SingularGroupElement("no Bruhat shift found")


def _shift_candidates(tower):
    k = tower.bottom
    rng = range(k.p) if k.is_finite else range(-3, 4)
    for coeffs in itertools.product(rng, repeat=tower.n):
        yield tower(list(coeffs))


def act2(e: GrpElt2, x: V2Elem) -> V2Elem:
    if e.tower is not x.tower:
        raise TowerMismatch("elements live over different towers")
    y = x
    for step in reversed(bruhat(x.tower, e.g)):
        if step[0] == "a":
            y = act_a(y, step[1], step[2])
        elif step[0] == "n":
            y = act_n(y, step[1])
        else:
            y = act_tau(y)
    return y.scale(e.t)


def identity2(tower) -> GrpElt2:
    return GrpElt2(tower, 1, [[tower.one, tower.zero], [tower.zero, tower.one]])


def make_tau2(tower) -> GrpElt2:
    return GrpElt2(tower, 1, [[tower.zero, tower.one], [tower.one, tower.zero]])


def a2_elem(tower, t1, t2, t=1) -> GrpElt2:
    return GrpElt2(tower, t, [[t1, tower.zero], [tower.zero, t2]])


def n2_elem(tower, u, t=1) -> GrpElt2:
    return GrpElt2(tower, t, [[tower.one, tower.zero], [u, tower.one]])


# -- invariant ----------------------------------------------------------------


def resolvent_coeffs(x: V2Elem):
    """``(T, d0)`` with ``Delta = T^2 - 4 d0``.

    The quadratic ``s^2 - T s + d0`` over k has the same splitting field as
    ``F_x``; unlike the discriminant it still carries that information in
    characteristic 2.
    """
    K = x.tower
    z = x.x122 * x.x211
    e2 = K.char_poly(z)[1]
    T = x.x111 * x.x222 - K.trace(z)
    d0 = e2 - x.x111 * K.norm(x.x122) - x.x222 * K.norm(x.x211)
    return T, d0


def delta2(x: V2Elem):
    """``(Delta, semistable)`` from the rational formula in traces and norms."""
    K = x.tower
    z = x.x122 * x.x211
    e2 = K.char_poly(z)[1]
    a, b = x.x111, x.x222
    d = (a * a * b * b + K.trace(z * z) - 2 * a * b * K.trace(z) - 2 * e2
         + 4 * a * K.norm(x.x122) + 4 * b * K.norm(x.x211))
    return d, d != 0


def resolvent_form(x: V2Elem) -> BinaryForm:
    T, d0 = resolvent_coeffs(x)
    k = x.tower.bottom
    return BinaryForm([k.one, -T, d0], k)


def classify2(x: V2Elem) -> ErLabel:
    k = x.tower.bottom
    d, ss = delta2(x)
    if not ss:
        raise NotSemistable("x is not semistable")
    if k.characteristic == 2:
        raise CharTwoUnsupported("classification by the square class of Delta needs odd characteristic")
    return quadratic_label(k, d)


def field_label2(x: V2Elem) -> ErLabel:
    """Splitting-field label valid in every characteristic (via the resolvent)."""
    d, ss = delta2(x)
    if not ss:
        raise NotSemistable("x is not semistable")
    return splitting_label(resolvent_form(x))


# -- representatives ------------------------------------------------------------


def make_w2(tower) -> V2Elem:
    return V2Elem(tower, 1, tower.zero, tower.zero, 1)


def make_w_alpha2(tower, f) -> V2Elem:
    k = tower.bottom
    a1, a2 = monic_coeffs(k, f, 2)
    return V2Elem(tower, 2, tower(a1), tower(a1 * a1 - 2 * a2), a1 ** 3 - 3 * a1 * a2)


def rep2(tower, fiber: str, beta=None, f=None) -> V2Elem:
    """Orbit representative of a fiber.

    ``fiber="trivial"`` takes ``beta=(beta1, beta2)`` in k.  ``fiber="quadratic"``
    takes ``f`` and beta in ``k(alpha) = k[t]/(f)`` (an element or a coordinate
    list) and returns ``(Tr b, -Tr(a1 b), Tr(a1^2 b), -Tr(a1^3 b))``.
    """
    k = tower.bottom
    if fiber == "trivial":
        b1, b2 = (k(b) for b in (beta if beta is not None else (1, 1)))
        if b1 == 0 or b2 == 0:
            raise NonUnit("beta entries must be units")
        return V2Elem(tower, b1, tower.zero, tower.zero, b2)
    if fiber == "quadratic":
        R = QuadraticRoots(k, f)
        A = R.algebra
        b = A.one if beta is None else (A(list(beta)) if isinstance(beta, (list, tuple)) else A(beta))
        if not b.is_unit():
            raise NonUnit("beta must be a unit of k(alpha)")
        a = R.alpha1
        tr = A.trace
        return V2Elem(tower, tr(b), tower(-tr(a * b)), tower(tr(a * a * b)), -tr(a ** 3 * b))
    raise ValidationError(f"unknown case-2 fiber {fiber!r}")


# -- stabilizers ------------------------------------------------------------------


@lru_cache(maxsize=64)
def _composite2(tower, f):
    R = QuadraticRoots(tower.bottom, f)
    K = tensor_extend(tower, R.algebra)
    return K, R


def composite2(tower, f):
    """``k1 (x) k(alpha)``, where :func:`stab2_elem` expects its parameter."""
    return _composite2(tower, monic_coeffs(tower.bottom, f, 2))[0]


def norm_one(K, u):
    """``u^3 / N(u)``, of relative norm 1 over the immediate base of K."""
    return u ** K.n * K(inv(K.norm(u)))


def stab2_elem(target: str, tower, params, f=None) -> GrpElt2:
    """A stabilizer element of ``w`` or ``w_alpha(f)``.

    For ``w``: ``params = (t21, s)`` with t21 a unit of k1 and ``N(s) = 1``;
    then ``t22 = t21 s`` and ``t1 = N(t21)^-1``.  For ``w_alpha``: ``params``
    is a unit t21 of the composite K with ``N_{K/k(alpha)}(t21)`` in k.
    """
    k = tower.bottom
    if target == "w":
        t21, s = (tower(p) for p in params)
        if tower.norm(s) != 1:
            raise NormConditionUnsatisfiable("s must have norm 1")
        if not t21.is_unit():
            raise NonUnit("t21 must be a unit")
        g = GrpElt2(tower, inv(tower.norm(t21)), [[t21, tower.zero], [tower.zero, t21 * s]])
        x = make_w2(tower)
    elif target == "w_alpha":
        K, R = _composite2(tower, monic_coeffs(k, f, 2))
        nu = _lifted(K, R.nu)
        t21 = params[0] if isinstance(params, tuple) else params
        t21 = K.unflatten(t21) if isinstance(t21, list) else K(t21)
        if not t21.is_unit():
            raise NonUnit("t21 must be a unit")
        n = K.norm(t21)
        try:
            t1 = descend_to_bottom(n)
        except NotRational:
            raise NormConditionUnsatisfiable("N(t21) must lie in k") from None
        Pm = R.P(K)
        h = P.matmul(P.matmul(Pm, diag(t21, nu(t21), zero=K.zero)), mat_inv(Pm))
        g_ = [[K.project_a(galois_descend(e, K.lifts_b, K)) for e in row] for row in h]
        g = GrpElt2(tower, inv(t1), g_)
        x = make_w_alpha2(tower, f)
    else:
        raise ValidationError(f"unknown target {target!r}")
    if act2(g, x) != x:
        raise NotStabilizing("constructed element does not fix its target")
    return g


def sample_stab2_param(tower, f, rng):
    """A random admissible parameter for ``stab2_elem("w_alpha", ...)``."""
    K = composite2(tower, f)
    lam = K.embed_a(tower.random_unit(rng))
    return lam * norm_one(K, K.random_unit(rng))


def delta_character(e: GrpElt2):
    """``t^4 chi(g)^2``, the factor by which Delta changes under e."""
    return e.t ** 4 * chi(e) ** 2
