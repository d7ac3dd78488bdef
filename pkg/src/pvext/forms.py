"""Binary forms, their discriminants and factorizations, and square/norm tests.

A :class:`BinaryForm` of degree d stores coefficients from the ``v1^d``
coefficient down to the ``v2^d`` coefficient.  Discriminants use the
universal integer polynomials, so they specialize correctly in
characteristics 2 and 3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm
from typing import Sequence

from .errors import (
    DegenerateForm,
    DIsSquare,
    UnsupportedDegree,
    UnsupportedField,
    ZeroBeta,
    ZeroInput,
)
from .fields import BaseField, squarefree_core, trial_factor, is_perfect_square_int


def _conv(a: Sequence, b: Sequence) -> list:
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    return out


class BinaryForm:
    """Homogeneous ``sum_i c[i] v1^(d-i) v2^i`` over ``ring``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, coeffs: Sequence, ring=None):
        if ring is None:
            ring = BaseField(0) if all(isinstance(c, (int, Fraction)) for c in coeffs) else _ring_of(coeffs[0])
        self.ring = ring
        self.coeffs = tuple(ring(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, v1, v2):
        d = self.degree
        acc = None
        for i, c in enumerate(self.coeffs):
            t = c * v1 ** (d - i) * v2 ** i
            acc = t if acc is None else acc + t
        return acc

    def substitute(self, A) -> BinaryForm:
        """The form ``v -> F(vA)`` for a 2x2 matrix A (v a row vector).

        Substituting A and then B gives ``F(vBA)``.
        """
        (a, b), (c, d) = A
        L1 = [self.ring(a), self.ring(c)]
        L2 = [self.ring(b), self.ring(d)]
        deg = self.degree
        total = [self.ring.zero] * (deg + 1)
        for i, coef in enumerate(self.coeffs):
            term = [coef]
            for _ in range(deg - i):
                term = _conv(term, L1)
            for _ in range(i):
                term = _conv(term, L2)
            total = [x + y for x, y in zip(total, term)]
        return BinaryForm(total, self.ring)

    def scale(self, c) -> BinaryForm:
        return BinaryForm([c * x for x in self.coeffs], self.ring)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return BinaryForm(_conv(self.coeffs, other.coeffs), self.ring)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def dehomogenize(self) -> list:
        """``F(s, 1)`` as an ascending coefficient list."""
        return list(reversed(self.coeffs))

    def __repr__(self):
        return f"BinaryForm({list(self.coeffs)!r})"


def _ring_of(x):
    from .algebra import AlgebraElement
    from .fields import FpElement

    if isinstance(x, AlgebraElement):
        return x.parent
    if isinstance(x, FpElement):
        return BaseField(x.p)
    return BaseField(0)


def binary_form_disc(F: BinaryForm):
    """Universal discriminant of a binary quadratic or cubic form."""
    if F.degree == 2:
        a, b, c = F.coeffs
        return b * b - 4 * a * c
    if F.degree == 3:
        a0, a1, a2, a3 = F.coeffs
        return (18 * a0 * a1 * a2 * a3 - 4 * a1 ** 3 * a3 + a1 * a1 * a2 * a2
                - 4 * a0 * a2 ** 3 - 27 * a0 * a0 * a3 * a3)
    raise UnsupportedDegree(f"discriminant implemented for degree 2 and 3, not {F.degree}")


def poly_disc(f: Sequence):
    """Discriminant of a univariate polynomial of degree 2 or 3 (ascending)."""
    return binary_form_disc(BinaryForm(list(reversed(list(f))), _ring_of(f[0])))


# ---------------------------------------------------------------------------
# roots and factorization


def _real_critical_floors(g: list[int]) -> list[int]:
    """Integers within 2 of each real critical point of g (degree <= 3)."""
    d = [i * g[i] for i in range(1, len(g))]
    while d and d[-1] == 0:
        d.pop()
    if len(d) <= 1:
        return []
    if len(d) == 2:
        c0, c1 = d
        centers = [-c0 // c1]
    else:
        c, b, a = d
        disc = b * b - 4 * a * c
        if disc < 0:
            return []
        s = isqrt(disc)
        centers = [(-b + s) // (2 * a), (-b - s) // (2 * a)]
    return [c + k for c in centers for k in (-2, -1, 0, 1, 2)]


def _integer_roots_monic(g: list[int]) -> list[int]:
    """Integer roots of a monic integer polynomial of degree <= 3, found by
    exact bisection on its monotone pieces."""
    B = 1 + max(abs(c) for c in g[:-1])
    pts = sorted({-B, B, *(x for x in _real_critical_floors(g) if -B < x < B)})
    ev = lambda x: _eval(g, x)
    roots = {x for x in pts if ev(x) == 0}
    for lo, hi in zip(pts, pts[1:]):
        flo, fhi = ev(lo), ev(hi)
        if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
            continue
        # g is monotone on [lo, hi]; find the sign change
        while hi - lo > 1:
            mid = (lo + hi) // 2
            fm = ev(mid)
            if fm == 0:
                roots.add(mid)
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
    return sorted(roots)


def rational_roots(f: Sequence) -> list[Fraction]:
    """Distinct rational roots of an ascending rational polynomial of degree <= 3.

    With ``a`` the leading coefficient, ``y = a x`` turns the cleared
    polynomial into a monic integer one, whose rational roots are integers.
    """
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    if len(f) <= 1:
        return []
    if len(f) > 4:
        raise UnsupportedDegree("rational roots implemented up to degree 3")
    den = lcm(*(c.denominator for c in f))
    ints = [int(c * den) for c in f]
    n, a = len(ints) - 1, ints[-1]
    monic = [ints[i] * a ** (n - 1 - i) for i in range(n)] + [1]
    return [Fraction(y, a) for y in _integer_roots_monic(monic)]


def _eval(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _field_elements(K):
    from .algebra import EtaleAlgebra

    if isinstance(K, BaseField):
        if not K.is_finite:
            raise UnsupportedField("enumeration over Q")
        return K.elements()
    if isinstance(K, EtaleAlgebra) and K.bottom.is_finite:
        return list(K.elements())
    raise UnsupportedField(f"cannot factor over {K!r}")


def _roots_in(F: BinaryForm, K) -> list:
    """Affine roots s of F(s, 1) in K."""
    f = F.dehomogenize()
    if isinstance(K, BaseField) and not K.is_finite:
        return [K(r) for r in rational_roots(f)]
    out = []
    for s in _field_elements(K):
        acc = K.zero
        for c in reversed(f):
            acc = acc * s + c
        if acc == 0:
            out.append(s)
    return out


def _divide_linear(F: BinaryForm, r, K) -> BinaryForm:
    """F / (v1 - r v2), exact."""
    # synthetic division on the descending list
    out = []
    acc = K.zero
    for c in F.coeffs[:-1]:
        acc = c + acc * r
        out.append(acc)
    return BinaryForm(out, K)


def factor_binary_form(F: BinaryForm, K=None) -> list[tuple[BinaryForm, int]]:
    """Irreducible factors over K with multiplicities.

    The leading unit is absorbed into the first factor, so the factors
    multiply back to F exactly.  Works over Q, F_p and finite extensions of
    F_p, for degree at most 3.
    """
    K = F.ring if K is None else K
    if F.degree > 3:
        raise UnsupportedDegree("factorization implemented up to degree 3")
    if F.is_zero():
        raise DegenerateForm("cannot factor the zero form")
    G = BinaryForm(F.coeffs, K)
    factors: list[list] = []

    def push(h):
        for entry in factors:
            if entry[0] == h:
                entry[1] += 1
                return
        factors.append([h, 1])

    while G.degree > 0 and G.coeffs[0] == 0:
        push(BinaryForm([K.zero, K.one], K))
        G = BinaryForm(G.coeffs[1:], K)
    while G.degree > 0:
        roots = _roots_in(G, K)
        if not roots:
            break
        for r in roots:
            while G.degree > 0:
                acc = K.zero
                for c in G.coeffs:
                    acc = acc * r + c
                if acc != 0:
                    break
                push(BinaryForm([K.one, -r], K))
                G = _divide_linear(G, r, K)
    unit = G.coeffs[0]
    if G.degree > 0:
        lead_inv = 1 / unit
        factors.append([BinaryForm([c * lead_inv for c in G.coeffs], K), 1])
    out = [(h, m) for h, m in factors]
    if not out:
        return [(BinaryForm([unit], K), 1)]
    h0, m0 = out[0]
    if m0 == 1:
        out[0] = (h0.scale(unit), 1)
    else:
        out[0] = (h0, m0 - 1)
        out.insert(0, (h0.scale(unit), 1))
    return out


# ---------------------------------------------------------------------------
# squares and norms


def is_square(K, x) -> bool:
    """Square test in Q, F_p, or a finite field extension of F_p."""
    from .algebra import EtaleAlgebra

    if x == 0:
        raise ZeroInput("square test of 0")
    if isinstance(K, BaseField):
        if not K.is_finite:
            return squarefree_core(Fraction(x)) == 1
        if K.p == 2:
            return True
        return pow(int(K(x)), (K.p - 1) // 2, K.p) == 1
    if isinstance(K, EtaleAlgebra) and K.bottom.is_finite:
        if K.characteristic == 2:
            return True
        return K(x) ** ((K.order - 1) // 2) == 1
    raise UnsupportedField(f"square test over {K!r}")


def _valuation(n: int, p: int) -> tuple[int, int]:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a: int, b: int, p) -> int:
    """The local Hilbert symbol (a, b)_p for nonzero integers; ``p = 0`` or
    ``"inf"`` is the real place."""
    if p in (0, "inf"):
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _valuation(a, p)
    beta, v = _valuation(b, p)
    if p == 2:
        def eps(z):
            return ((z - 1) // 2) % 2

        def omega(z):
            return ((z * z - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = (-1) ** (alpha * beta * ((p - 1) // 2) % 2)
    return s * _legendre(u, p) ** beta * _legendre(v, p) ** alpha


def is_norm_quadratic_rational(D: int, beta) -> bool:
    """Whether beta is a norm from Q(sqrt D), by local Hilbert symbols."""
    beta = Fraction(beta)
    if beta == 0:
        raise ZeroBeta("beta must be nonzero")
    if D == 0 or (D > 0 and is_perfect_square_int(D)):
        raise DIsSquare(f"{D} is a square")
    d = squarefree_core(D)
    if d == 1:
        raise DIsSquare(f"{D} is a square")
    b = squarefree_core(beta)
    places = {0, 2} | set(trial_factor(d)) | set(trial_factor(b))
    return all(hilbert_symbol(b, d, p) == 1 for p in places)


# ---------------------------------------------------------------------------
# splitting-field labels


GALOIS_TYPES = ("trivial", "quadratic", "cyclic-cubic", "s3")


@dataclass(frozen=True)
class ErLabel:
    """Isomorphism class of a splitting field.

    Over Q ``invariant_data`` is the squarefree core of the discriminant for
    the quadratic and s3 types and ``None`` otherwise.  Over a finite field it
    is the extension degree.  ``defining_poly`` records the normalized cubic
    for the cubic types over Q but takes no part in comparisons, so labels
    are constant along orbits even though the cubic itself is not.
    """

    degree: int
    galois_type: str
    invariant_data: object = None
    over: str = "Q"
    defining_poly: tuple | None = field(default=None, compare=False, repr=False)

    def __str__(self):
        if self.over == "Q" and self.galois_type in ("quadratic", "s3"):
            return f"{self.galois_type}({self.invariant_data})"
        return self.galois_type

    def to_json(self) -> dict:
        out = {"degree": self.degree, "type": self.galois_type, "over": self.over}
        if self.invariant_data is not None:
            out["invariant"] = self.invariant_data
        if self.defining_poly is not None:
            out["poly"] = [str(c) for c in self.defining_poly]
        return out


_TYPE_OF_DEGREE = {1: "trivial", 2: "quadratic", 3: "cyclic-cubic"}


def label_for_degree(m: int) -> ErLabel:
    """The finite-field label of the degree-m extension."""
    return ErLabel(m, _TYPE_OF_DEGREE[m], m, over="Fq")


def quadratic_label(K, disc) -> ErLabel:
    """Label of ``K(sqrt disc)``; odd characteristic or Q."""
    if is_square(K, disc):
        return ErLabel(1, "trivial", 1 if _is_finite(K) else None, over="Fq" if _is_finite(K) else "Q")
    if _is_finite(K):
        return label_for_degree(2)
    return ErLabel(2, "quadratic", squarefree_core(Fraction(disc)))


def _is_finite(K) -> bool:
    return K.bottom.is_finite


def splitting_label(F: BinaryForm, K=None) -> ErLabel:
    """Label of the splitting field of a separable binary quadratic or cubic."""
    K = F.ring if K is None else K
    if F.degree not in (2, 3):
        raise UnsupportedDegree(f"labels for degree 2 and 3 only, not {F.degree}")
    disc = binary_form_disc(F)
    if disc == 0:
        raise DegenerateForm("form has a repeated root")
    factors = factor_binary_form(F, K)
    degs = [h.degree for h, _ in factors if h.degree > 0]
    if _is_finite(K):
        return label_for_degree(lcm(*degs))
    top = max(degs)
    if top == 1:
        return ErLabel(1, "trivial")
    if top == 2:
        return ErLabel(2, "quadratic", squarefree_core(Fraction(disc)))
    # irreducible cubic
    lead = F.coeffs[0]
    monic = tuple(c / lead for c in F.dehomogenize())
    core = squarefree_core(Fraction(disc))
    if core == 1:
        return ErLabel(3, "cyclic-cubic", None, defining_poly=monic)
    return ErLabel(6, "s3", core, defining_poly=monic)
