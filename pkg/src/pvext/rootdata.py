"""Roots of a separable cubic inside an explicit Galois algebra.

A :class:`CubicRootData` holds a monic cubic ``f`` over k, an étale algebra
L over k with a finite automorphism group whose fixed ring is k, and three
roots of f in L that the group permutes.  Three constructions are offered:

* :func:`universal_root_data` builds the universal splitting algebra
  ``k[t]/(f)[s]/(f(s)/(s - t))``.  It has dimension 6 and always carries the
  full symmetric group, whatever the Galois type of f, so descent works the
  same way for every fiber.
* :func:`frobenius_root_data` uses ``F_q[t]/(f)`` with Frobenius when f is
  irreducible over a finite field.
* :func:`quadratic_root_data` follows the convention ``f = v1 * q(v)`` with
  roots ``(a, a', 0)`` in ``k[t]/(q)``.
"""
from __future__ import annotations


from .algebra import AlgebraElement, EtaleAlgebra, is_irreducible_over_prime_field, make_extension, with_frobenius
from .common import monic_coeffs, quadratic_algebra
from .errors import FiberDataMismatch, ValidationError
from .fields import BaseField


class CubicRootData:
    """Validated roots of ``f = v1^3 + a1 v1^2 v2 + a2 v1 v2^2 + a3 v2^3``.

    ``perms[i]`` is the permutation (as a tuple of 0-based indices) induced by
    ``splitting.automorphisms[i]`` on the roots.
    """

    def __init__(self, f, splitting: EtaleAlgebra, roots, source: str = "user"):
        k = splitting.bottom
        self.k = k
        self.f = monic_coeffs(k, f, 3)
        self.splitting = L = splitting
        self.roots = tuple(L(r) for r in roots)
        self.source = source
        if len(self.roots) != 3:
            raise ValidationError("need exactly three roots")
        a1, a2, a3 = self.f
        for i, r in enumerate(self.roots):
            if r ** 3 + a1 * r ** 2 + a2 * r + a3 != 0:
                raise ValidationError(f"root #{i} does not satisfy f")
        if not self.D.is_unit():
            raise ValidationError("roots are not pairwise distinct")
        self.perms = []
        for aut in L.automorphisms:
            images = [aut(r) for r in self.roots]
            try:
                perm = tuple(self.roots.index(x) for x in images)
            except ValueError:
                raise ValidationError("an automorphism does not permute the roots") from None
            self.perms.append(perm)
        if L.fixed_dimension() != 1:
            raise ValidationError("automorphism group does not cut out the base field")

    # -- auxiliary quantities of the roots --------------------------------
    @property
    def D(self) -> AlgebraElement:
        r1, r2, r3 = self.roots
        return (r1 - r2) * (r1 - r3) * (r2 - r3)

    def A(self, i: int) -> AlgebraElement:
        r1, r2, r3 = self.roots
        return r1 ** i * (r2 - r3) + r2 ** i * (r3 - r1) + r3 ** i * (r1 - r2)

    def P(self) -> list[list]:
        r = self.roots
        one = self.splitting.one
        return [[one, one, one], list(r), [x * x for x in r]]

    def Q(self) -> list[list]:
        r1, r2, r3 = self.roots
        Dinv = self.D.inverse()
        return [[-(r2 - r3) * Dinv, (r2 - r1) * Dinv],
                [r1 * (r2 - r3) * Dinv, -r3 * (r2 - r1) * Dinv]]

    # -- group structure -------------------------------------------------
    def orbits(self) -> list[list[int]]:
        """Orbits of the group on root indices, each sorted, in order of first index."""
        seen, out = set(), []
        for i in range(3):
            if i in seen:
                continue
            orb = sorted({p[i] for p in self.perms})
            seen.update(orb)
            out.append(orb)
        return out

    def aut_moving(self, i: int, j: int):
        """Some automorphism sending root i to root j."""
        for aut, p in zip(self.splitting.automorphisms, self.perms):
            if p[i] == j:
                return aut
        raise ValidationError(f"no automorphism maps root {i} to root {j}")

    def stabilizer(self, i: int) -> list:
        return [a for a, p in zip(self.splitting.automorphisms, self.perms) if p[i] == i]

    def cycle(self):
        """An automorphism acting as the 3-cycle 0 -> 1 -> 2 -> 0, if present."""
        for aut, p in zip(self.splitting.automorphisms, self.perms):
            if p == (1, 2, 0):
                return aut
        return None

    def conjugates(self, beta_coeffs) -> tuple:
        """``(beta(a1), beta(a2), beta(a3))`` for beta given by its coordinates
        in ``k(a1) = k[t]/(f)``."""
        L = self.splitting
        cs = [self.k(c) for c in beta_coeffs]
        out = []
        for r in self.roots:
            acc = L.zero
            for c in reversed(cs):
                acc = acc * r + c
            out.append(acc)
        return tuple(out)

    def __repr__(self):
        return f"CubicRootData(f={self.f}, source={self.source!r}, group order {len(self.perms)})"


def universal_root_data(k: BaseField, f) -> CubicRootData:
    a1, a2, a3 = monic_coeffs(k, f, 3)
    L1 = make_extension(k, [a3, a2, a1, k.one], name="r")
    t = L1.gen
    q = [a2 + a1 * t + t * t, a1 + t, L1.one]

    def roots_of(L):
        r1, r2 = L(L1.gen), L.gen
        return (r1, r2, -a1 - r1 - r2)

    def images(L):
        r = roots_of(L)
        # (12) and (123) generate the symmetric group
        return [(r[1], r[0]), (r[1], r[2])]

    L = EtaleAlgebra(L1, q, images, name="s")
    return CubicRootData((a1, a2, a3), L, roots_of(L), source="universal")


def frobenius_root_data(k: BaseField, f) -> CubicRootData:
    """``F_q[t]/(f)`` with Frobenius, for f irreducible over a finite field."""
    a1, a2, a3 = monic_coeffs(k, f, 3)
    if not k.is_finite:
        raise ValidationError("Frobenius root data needs a finite field")
    poly = [a3, a2, a1, k.one]
    if not is_irreducible_over_prime_field(poly, k):
        raise FiberDataMismatch("cubic is reducible; use the universal construction")
    L = with_frobenius(k, poly, name="r")
    t = L.gen
    return CubicRootData((a1, a2, a3), L, (t, t ** k.p, t ** (k.p * k.p)), source="frobenius")


def quadratic_root_data(k: BaseField, b1, b2) -> CubicRootData:
    """Roots ``(a, a', 0)`` of ``v1 (v1^2 + b1 v1 v2 + b2 v2^2)``."""
    L = quadratic_algebra(k, b1, b2, name="a")
    a = L.gen
    if k(b2) == 0:
        raise ValidationError("the quadratic factor must not vanish at 0")
    return CubicRootData((k(b1), k(b2), k.zero), L, (a, -k(b1) - a, L.zero), source="quadratic")


def cubic_root_data(k: BaseField, f) -> CubicRootData:
    """Frobenius data for irreducible cubics over finite fields, the
    universal algebra otherwise."""
    a = monic_coeffs(k, f, 3)
    if k.is_finite and is_irreducible_over_prime_field([a[2], a[1], a[0], k.one], k):
        return frobenius_root_data(k, a)
    return universal_root_data(k, a)
