"""Pairs of ternary Hermitian forms over a quadratic extension.

``GL3(k1) x GL2(k)`` acts on ``M(v) = v1 x1 + v2 x2`` by
``g1 M(v g2) t(g1)^sigma``.  ``F_x = det M(v)`` is a binary cubic over k and
the splitting field of ``F_x`` labels the orbit.

Representatives and stabilizers use a :class:`CubicRootData`.  Everything
that involves only the roots is computed in the splitting algebra L; torus
elements live in ``k1 (x) L`` and are pushed back to k1 by descent.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import poly as P
from .algebra import EtaleAlgebra, descend_to_bottom, galois_descend, tensor_extend
from .case1 import _as_matrix, _lifted, hermitian_pencil_ok, nontrivial_automorphism_lift, pencil_act
from .common import diag, is_unit, mat_eq, mat_inv, monic_coeffs, nontrivial_automorphism
from .errors import (
    FiberDataMismatch,
    NonUnit,
    NormConditionUnsatisfiable,
    NotHermitian,
    NotRational,
    NotSemistable,
    NotStabilizing,
    SingularGroupElement,
    TowerMismatch,
    UnsupportedGaloisCase,
    ValidationError,
)
from .forms import BinaryForm, ErLabel, binary_form_disc, is_square, poly_disc, splitting_label
from .rootdata import CubicRootData, cubic_root_data, quadratic_root_data


def _check_tower(tower: EtaleAlgebra):
    if not isinstance(tower, EtaleAlgebra) or tower.n != 2 or tower.depth != 1:
        raise ValidationError("case 3 needs a quadratic extension of the base field")
    nontrivial_automorphism(tower)


@dataclass(frozen=True, eq=False)
class HermPair3:
    tower: EtaleAlgebra
    x1: tuple
    x2: tuple

    def __post_init__(self):
        _check_tower(self.tower)
        object.__setattr__(self, "x1", _as_matrix(self.tower, self.x1, 3))
        object.__setattr__(self, "x2", _as_matrix(self.tower, self.x2, 3))
        if not hermitian_pencil_ok(self.tower, (self.x1, self.x2)):
            raise ValidationError("x1 and x2 must be Hermitian")

    def __eq__(self, other):
        return (isinstance(other, HermPair3) and other.tower is self.tower
                and mat_eq(self.x1, other.x1) and mat_eq(self.x2, other.x2))

    def __hash__(self):
        return hash((self.x1, self.x2))


@dataclass(frozen=True, eq=False)
class GrpElt3:
    tower: EtaleAlgebra
    g1: tuple
    g2: tuple

    def __post_init__(self):
        k = self.tower.bottom
        object.__setattr__(self, "g1", _as_matrix(self.tower, self.g1, 3))
        object.__setattr__(self, "g2", _as_matrix(k, self.g2, 2))
        if not is_unit(P.det(self.g1)) or not is_unit(P.det(self.g2)):
            raise SingularGroupElement("group element is not invertible")

    def __mul__(self, other: GrpElt3) -> GrpElt3:
        if other.tower is not self.tower:
            raise TowerMismatch("elements live over different towers")
        return GrpElt3(self.tower, P.matmul(self.g1, other.g1), P.matmul(self.g2, other.g2))

    def inverse(self) -> GrpElt3:
        return GrpElt3(self.tower, mat_inv(self.g1), mat_inv(self.g2))

    def __eq__(self, other):
        return isinstance(other, GrpElt3) and mat_eq(self.g1, other.g1) and mat_eq(self.g2, other.g2)

    def __hash__(self):
        return hash((self.g1, self.g2))


def identity3(tower) -> GrpElt3:
    k = tower.bottom
    return GrpElt3(tower, diag(tower.one, tower.one, tower.one, zero=tower.zero), diag(k.one, k.one, zero=k.zero))


def act3(g: GrpElt3, x: HermPair3) -> HermPair3:
    if g.tower is not x.tower:
        raise TowerMismatch("elements live over different towers")
    sigma = nontrivial_automorphism(x.tower)
    y1, y2 = pencil_act(g.g1, g.g2, x.x1, x.x2, sigma)
    if not hermitian_pencil_ok(x.tower, (y1, y2)):
        raise NotHermitian("action produced a non-Hermitian pencil")
    return HermPair3(x.tower, y1, y2)


def pencil_det3(x1, x2, zero) -> list:
    """Coefficients of ``det(v1 x1 + v2 x2)`` from v1^3 down to v2^3."""
    m = [[[a, b] for a, b in zip(r1, r2)] for r1, r2 in zip(x1, x2)]

    def mul(p, q):
        out = [zero] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
        return out

    def sub(p, q):
        return [a - b for a, b in zip(p, q)]

    def add(p, q):
        return [a + b for a, b in zip(p, q)]

    minor = lambda r, s, u, v: sub(mul(m[1][r], m[2][s]), mul(m[1][u], m[2][v]))
    t0 = mul(m[0][0], minor(1, 2, 2, 1))
    t1 = mul(m[0][1], minor(0, 2, 2, 0))
    t2 = mul(m[0][2], minor(0, 1, 1, 0))
    return add(sub(t0, t1), t2)


def F3(x: HermPair3) -> BinaryForm:
    k = x.tower.bottom
    try:
        coeffs = [descend_to_bottom(c) for c in pencil_det3(x.x1, x.x2, x.tower.zero)]
    except NotRational as e:
        raise NotHermitian("determinant of a Hermitian pencil left the base field") from e
    return BinaryForm(coeffs, k)


def delta3(x: HermPair3):
    """``(Delta, semistable)``.

    Since ``F_{gx}(v) = N(det g1) F_x(v g2)`` and F_x is a cubic,
    ``Delta(gx) = N(det g1)^4 det(g2)^6 Delta(x)``.
    """
    d = binary_form_disc(F3(x))
    return d, d != 0


def classify3(x: HermPair3) -> ErLabel:
    F = F3(x)
    if binary_form_disc(F) == 0:
        raise NotSemistable("x is not semistable")
    return splitting_label(F)


# -- w, tau and the representatives w_alpha -------------------------------------


def make_w3(tower) -> HermPair3:
    o, z = tower.one, tower.zero
    return HermPair3(tower, diag(o, -o, z, zero=z), diag(z, -o, o, zero=z))


def make_taus(tower) -> tuple[GrpElt3, GrpElt3]:
    k = tower.bottom
    o, z = tower.one, tower.zero
    t1 = GrpElt3(tower, [[z, o, z], [o, z, z], [z, z, o]], [[-k.one, k.zero], [-k.one, k.one]])
    t2 = GrpElt3(tower, [[z, z, o], [z, o, z], [o, z, z]], [[k.zero, k.one], [k.one, k.zero]])
    return t1, t2


def w_alpha_matrices(k, f):
    a1, a2, a3 = monic_coeffs(k, f, 3)
    s = a1 * a1 - a2
    c = -a1 ** 3 + 2 * a1 * a2 - a3
    x1 = [[0, 0, -1], [0, -1, a1], [-1, a1, -s]]
    x2 = [[0, 1, -a1], [1, -a1, s], [-a1, s, c]]
    return x1, x2


def make_w_alpha3(tower, f) -> HermPair3:
    x1, x2 = w_alpha_matrices(tower.bottom, f)
    return HermPair3(tower, x1, x2)


def _root_data(k, data=None, f=None) -> CubicRootData:
    if data is not None:
        if data.k != k:
            raise TowerMismatch("root data lives over a different base field")
        return data
    if f is None:
        raise ValidationError("need root data or a cubic")
    return cubic_root_data(k, f)


def lemma_check(k, data: CubicRootData) -> dict:
    """``g_alpha w = w_alpha`` and the auxiliary identities, computed in L.

    Returns the descended pencil; raises :class:`CheckFailure` subclasses on
    any mismatch.
    """
    L = data.splitting
    a1, a2, a3 = data.f
    D = data.D
    Pm, Qm = data.P(), data.Q()
    expected = {2: D, 3: -D * a1, 4: D * (a1 * a1 - a2), 5: D * (-a1 ** 3 + 2 * a1 * a2 - a3)}
    for i, val in expected.items():
        if data.A(i) != val:
            raise NotRational(f"A{i} identity fails")
    # Vandermonde: det P = -D with D = (a1 - a2)(a1 - a3)(a2 - a3)
    if P.det(Pm) != -D or P.det(Qm) * D != 1:
        raise NotRational("det P or det Q identity fails")
    o, z = L.one, L.zero
    ident = lambda x: x
    y1, y2 = pencil_act(Pm, Qm, diag(o, -o, z, zero=z), diag(z, -o, o, zero=z), ident)
    x1 = [[descend_to_bottom(galois_descend(e, L.automorphisms, L)) for e in row] for row in y1]
    x2 = [[descend_to_bottom(galois_descend(e, L.automorphisms, L)) for e in row] for row in y2]
    w1, w2 = w_alpha_matrices(k, data.f)
    if not (mat_eq(x1, coerce(k, w1)) and mat_eq(x2, coerce(k, w2))):
        raise NotRational("g_alpha w differs from w_alpha")
    return {"x1": x1, "x2": x2}


def coerce(k, m):
    return [[k(e) for e in row] for row in m]


def g_alpha_action3(tower, data: CubicRootData, betas=None) -> HermPair3:
    """``g_alpha (v1 diag(b1, -b2, 0) + v2 diag(0, -b2, b3))`` descended to k.

    ``betas`` are elements of L permuted by its automorphisms like the roots;
    the default ``(1, 1, 1)`` gives ``w_alpha``.
    """
    L = data.splitting
    o, z = L.one, L.zero
    b1, b2, b3 = (o, o, o) if betas is None else (L(b) for b in betas)
    y1, y2 = pencil_act(data.P(), data.Q(), diag(b1, -b2, z, zero=z), diag(z, -b2, b3, zero=z), lambda x: x)
    d = lambda m: [[descend_to_bottom(galois_descend(e, L.automorphisms, L)) for e in row] for row in m]
    return HermPair3(tower, d(y1), d(y2))


# -- Galois cases ----------------------------------------------------------------

GALOIS_CASES = ("quadratic", "quadratic_k1", "cubic", "cubic_containing_k1")


def _same_quadratic(tower, disc) -> bool:
    k = tower.bottom
    if k.is_finite:
        return True
    return is_square(k, disc * poly_disc(list(tower.poly)))


def galois_case3(tower, f) -> str:
    """Which of the four stabilizer descriptions applies to ``w_alpha(f)``."""
    k = tower.bottom
    F = BinaryForm([k.one, *monic_coeffs(k, f, 3)], k)
    lab = splitting_label(F)
    if lab.galois_type == "trivial":
        raise UnsupportedGaloisCase("f splits over k; use the trivial fiber")
    disc = binary_form_disc(F)
    if lab.galois_type == "quadratic":
        return "quadratic_k1" if _same_quadratic(tower, disc) else "quadratic"
    if lab.galois_type == "s3" and _same_quadratic(tower, disc):
        return "cubic_containing_k1"
    return "cubic"


# -- fibers ------------------------------------------------------------------------

FIBERS = ("trivial", "quadratic", "kone", "cyclic_cubic", "s3_cubic")


def kone_cubic(tower) -> tuple:
    """A cubic ``v1 q(v)`` with q defining k1 and ``q(0, 1) != 0``."""
    k = tower.bottom
    c0, c1, _ = tower.poly
    shift = k.zero
    while c0 + c1 * shift + shift * shift == 0:
        shift += 1
    # minimal polynomial of gen - shift
    b1, b2 = c1 + 2 * shift, c0 + c1 * shift + shift * shift
    return (b1, b2, k.zero)


def rep3(tower, fiber: str, beta=None, f=None, data: CubicRootData | None = None) -> HermPair3:
    """Orbit representative for a fiber.

    * ``trivial``: ``beta = (b1, b2, b3)`` units of k.
    * ``quadratic``: ``f = (b1, b2)`` or ``v1^2 + b1 v1 v2 + b2 v2^2`` defining a
      quadratic field other than k1, and ``beta`` in ``k(alpha1)`` as a
      coordinate pair.
    * ``kone``: no data; the unique orbit over k1.
    * ``cyclic_cubic`` / ``s3_cubic``: a cubic ``f`` (or root data) and
      ``beta`` in ``k(alpha1) = k[t]/(f)`` as a coordinate triple.
    """
    _check_tower(tower)
    k = tower.bottom
    if fiber == "trivial":
        b = tuple(k(x) for x in (beta if beta is not None else (1, 1, 1)))
        if len(b) != 3 or any(x == 0 for x in b):
            raise NonUnit("beta must be three units of k")
        z = k.zero
        return HermPair3(tower, diag(b[0], -b[1], z, zero=z), diag(z, -b[1], b[2], zero=z))
    if fiber == "kone":
        return make_w_alpha3(tower, kone_cubic(tower))
    if fiber == "quadratic":
        b1, b2 = monic_coeffs(k, f, 2)
        disc = b1 * b1 - 4 * b2
        if not _defines_field(k, b1, b2):
            raise FiberDataMismatch("the quadratic does not define a field")
        if _same_quadratic(tower, disc):
            raise FiberDataMismatch("the quadratic defines k1 itself; use the kone fiber")
        data = quadratic_root_data(k, b1, b2)
        cs = [k(c) for c in (beta if beta is not None else (1, 0))]
        if len(cs) != 2:
            raise ValidationError("beta must be a coordinate pair")
        b_1, b_2, _ = data.conjugates(cs)
        if not b_1.is_unit():
            raise NonUnit("beta must be a unit")
        return g_alpha_action3(tower, data, (b_1, b_2, data.splitting.one))
    if fiber in ("cyclic_cubic", "s3_cubic"):
        data = _root_data(k, data, f)
        F = BinaryForm([k.one, *data.f], k)
        lab = splitting_label(F)
        want = "cyclic-cubic" if fiber == "cyclic_cubic" else "s3"
        if lab.galois_type != want:
            raise FiberDataMismatch(f"cubic has Galois type {lab.galois_type}, not {want}")
        cs = [k(c) for c in (beta if beta is not None else (1, 0, 0))]
        if len(cs) != 3:
            raise ValidationError("beta must be a coordinate triple")
        betas = data.conjugates(cs)
        if not all(b.is_unit() for b in betas):
            raise NonUnit("beta must be a unit")
        return g_alpha_action3(tower, data, betas)
    raise ValidationError(f"unknown case-3 fiber {fiber!r}")


def _defines_field(k, b1, b2) -> bool:
    if k.is_finite:
        return all(x * x + b1 * x + b2 != 0 for x in (k(i) for i in range(k.p)))
    return not is_square(k, b1 * b1 - 4 * b2)


def fiber_label(tower, fiber: str, f=None, data=None) -> ErLabel:
    """The label a fiber's representatives classify to."""
    k = tower.bottom
    if fiber == "trivial":
        return splitting_label(BinaryForm([k.one, k.one, k.zero], k))
    if fiber == "kone":
        return splitting_label(BinaryForm([k.one, *kone_cubic(tower)], k))
    if fiber == "quadratic":
        b1, b2 = monic_coeffs(k, f, 2)
        return splitting_label(BinaryForm([k.one, b1, b2, k.zero], k))
    cubic = data.f if data is not None else monic_coeffs(k, f, 3)
    return splitting_label(BinaryForm([k.one, *cubic], k))


# -- stabilizers ----------------------------------------------------------------------


@lru_cache(maxsize=32)
def _composite3(tower, data: CubicRootData):
    K = tensor_extend(tower, data.splitting)
    sigma = nontrivial_automorphism_lift(K)
    lifts = [_lifted(K, a) for a in data.splitting.automorphisms]
    return K, sigma, lifts


def composite3(tower, data: CubicRootData):
    """``k1 (x) L``, where :func:`stab3_elem` expects its torus parameters."""
    return _composite3(tower, data)[0]


def stab3_elem(target: str, tower, params, data: CubicRootData | None = None, f=None) -> GrpElt3:
    """A stabilizer element of ``w`` or ``w_alpha``.

    For ``w``: three units of k1 with equal norms; ``t2`` is the inverse norm.
    For ``w_alpha``: three units ``t_i`` of ``K = k1 (x) L`` with
    ``gamma(t_i) = t_pi(i)`` for every automorphism gamma of L permuting the
    roots by pi, and ``N_{K/L}(t_i) = c`` one common element of k.  The
    element is ``g_alpha (diag(t), c^-1) g_alpha^-1`` descended to k1.
    """
    _check_tower(tower)
    k = tower.bottom
    if target == "w":
        ts = tuple(tower(t) for t in params)
        if len(ts) != 3 or not all(t.is_unit() for t in ts):
            raise NonUnit("need three units of k1")
        ns = {tower.norm(t) for t in ts}
        if len(ns) != 1:
            raise NormConditionUnsatisfiable("t11, t12, t13 must have equal norms")
        c = ns.pop()
        g = GrpElt3(tower, diag(*ts, zero=tower.zero), diag(1 / c, 1 / c, zero=k.zero))
        x = make_w3(tower)
    elif target == "w_alpha":
        data = _root_data(k, data, f)
        galois_case3(tower, data.f)
        K, sigma, lifts = _composite3(tower, data)
        ts = [K.unflatten(t) if isinstance(t, list) else K(t) for t in params]
        if len(ts) != 3 or not all(t.is_unit() for t in ts):
            raise NonUnit("need three units of the composite")
        for lift, perm in zip(lifts, data.perms):
            if any(lift(ts[i]) != ts[perm[i]] for i in range(3)):
                raise NotRational("torus parameters are not Galois compatible")
        try:
            ns = {descend_to_bottom(K.norm(t)) for t in ts}
        except NotRational:
            raise NormConditionUnsatisfiable("relative norms must lie in k") from None
        if len(ns) != 1:
            raise NormConditionUnsatisfiable("relative norms must agree")
        c = ns.pop()
        Pm = [[K(e) for e in row] for row in data.P()]
        h = P.matmul(P.matmul(Pm, diag(*ts, zero=K.zero)), mat_inv(Pm))
        g1 = [[K.project_a(galois_descend(e, K.lifts_b, K)) for e in row] for row in h]
        g = GrpElt3(tower, g1, diag(1 / c, 1 / c, zero=k.zero))
        x = make_w_alpha3(tower, data.f)
    else:
        raise ValidationError(f"unknown target {target!r}")
    if act3(g, x) != x:
        raise NotStabilizing("constructed element does not fix its target")
    return g


def sample_stab3_param(tower, data: CubicRootData, rng) -> list:
    """Random admissible torus parameters for ``stab3_elem("w_alpha", ...)``."""
    K, sigma, lifts = _composite3(tower, data)
    lam = K.embed_a(tower.random_unit(rng))
    u = K.random_unit(rng, 3)
    ts = [None, None, None]
    for orbit in data.orbits():
        r = orbit[0]
        ur = K.one
        for lift, perm in zip(lifts, data.perms):
            if perm[r] == r:
                ur = ur * lift(u)
        while not ur.is_unit():
            u = K.random_unit(rng, 3)
            ur = K.one
            for lift, perm in zip(lifts, data.perms):
                if perm[r] == r:
                    ur = ur * lift(u)
        tr = lam * ur * sigma(ur).inverse()
        for lift, perm in zip(lifts, data.perms):
            ts[perm[r]] = lift(tr)
    return ts


def sample_stab3_w(tower, rng) -> tuple:
    """Three units of k1 with a common norm."""
    t = tower.random_unit(rng)
    out = [t]
    sigma = nontrivial_automorphism(tower)
    for _ in range(2):
        u = tower.random_unit(rng)
        out.append(t * u * sigma(u).inverse())
    return tuple(out)


def tau_words(tower):
    """All words of length at most 3 in tau1, tau2 with their permutations of Zero(w)."""
    t1, t2 = make_taus(tower)
    out = {}
    for n in range(4):
        for word in itertools.product((t1, t2), repeat=n):
            g = identity3(tower)
            for h in word:
                g = g * h
            out.setdefault(zero_permutation(g), g)
    return out


def zero_permutation(g: GrpElt3) -> tuple:
    """How g permutes ``Zero(w)``, numbered by the diagonal entry of
    ``M_w(v) = diag(v1, -v1 - v2, v2)`` that vanishes there.

    F_{gw}(v) is proportional to F_w(v g2), so the zero ``p`` of F_w goes to
    the zero ``p g2^-1`` of F_{gw} = F_w up to scaling.
    """
    zeros = [(0, 1), (1, -1), (1, 0)]
    inv2 = mat_inv(g.g2)
    perm = []
    for p in zeros:
        q = (p[0] * inv2[0][0] + p[1] * inv2[1][0], p[0] * inv2[0][1] + p[1] * inv2[1][1])
        perm.append(next(i for i, z in enumerate(zeros) if q[0] * z[1] == q[1] * z[0]))
    return tuple(perm)
