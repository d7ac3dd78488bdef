"""Matrix helpers over towers and a few shared constructions."""
from __future__ import annotations

from fractions import Fraction

from . import poly as P
from .algebra import AlgebraElement, Automorphism, EtaleAlgebra, make_extension
from .errors import DegeneratePolynomial, NotAUnit, SingularGroupElement, ValidationError
from .fields import BaseField
from .forms import BinaryForm, binary_form_disc


def inv(x):
    """Inverse of a unit in a tower or a base field."""
    if isinstance(x, AlgebraElement):
        return x.inverse()
    if x == 0:
        raise NotAUnit("0 is not a unit")
    return 1 / x


def is_unit(x) -> bool:
    if isinstance(x, AlgebraElement):
        return x.is_unit()
    return x != 0


def mat_inv(m):
    d = P.det(m)
    try:
        dinv = inv(d)
    except (NotAUnit, ZeroDivisionError) as e:
        raise SingularGroupElement("matrix is not invertible") from e
    return P.mat_scale(P.adjugate(m, 0 * d, 0 * d + 1), dinv)


def mat_eq(a, b) -> bool:
    return all(x == y for r, s in zip(a, b) for x, y in zip(r, s))


def diag(*entries, zero=0):
    n = len(entries)
    return [[entries[i] if i == j else zero for j in range(n)] for i in range(n)]


def coerce_matrix(ring, m):
    return [[ring(x) for x in row] for row in m]


def conj_transpose(m, sigma):
    """``t(m)^sigma``."""
    return [[sigma(m[j][i]) for j in range(len(m))] for i in range(len(m[0]))]


def nontrivial_automorphism(A: EtaleAlgebra) -> Automorphism:
    """The unique non-identity automorphism of a quadratic algebra."""
    others = [a for a in A.automorphisms if not a.is_identity()]
    if len(others) != 1:
        raise ValidationError("expected a quadratic algebra with exactly one non-trivial automorphism")
    return others[0]


def quadratic_algebra(k: BaseField, a1, a2, name: str = "a") -> EtaleAlgebra:
    """``k[t]/(t^2 + a1 t + a2)`` with the root swap ``t -> -a1 - t``."""
    a1, a2 = k(a1), k(a2)
    if a1 * a1 - 4 * a2 == 0:
        raise DegeneratePolynomial("quadratic has a repeated root")
    return make_extension(k, [a2, a1, k.one], [[-a1, -k.one]], name=name)


def monic_coeffs(k: BaseField, f, degree: int) -> tuple:
    """``(a1, ..., a_d)`` from a monic binary form or a coefficient sequence.

    Accepts a :class:`BinaryForm`, the full list ``[1, a1, ..., a_d]`` or the
    tail ``[a1, ..., a_d]``.
    """
    coeffs = list(f.coeffs) if isinstance(f, BinaryForm) else list(f)
    coeffs = [k(c) for c in coeffs]
    if len(coeffs) == degree + 1:
        if coeffs[0] != 1:
            raise DegeneratePolynomial("polynomial must be monic")
        coeffs = coeffs[1:]
    if len(coeffs) != degree:
        raise DegeneratePolynomial(f"expected a monic polynomial of degree {degree}")
    disc = binary_form_disc(BinaryForm([k.one] + coeffs, k))
    if disc == 0:
        raise DegeneratePolynomial("polynomial has a repeated root")
    return tuple(coeffs)


def random_matrix(ring, n: int, rng, height: int = 4):
    while True:
        m = [[_random(ring, rng, height) for _ in range(n)] for _ in range(n)]
        if is_unit(P.det(m)):
            return m


def _random(ring, rng, height):
    return ring.random(rng, height)


def base_of(tower) -> BaseField:
    return tower.bottom


def scalar_str(x) -> str:
    return str(Fraction(x)) if isinstance(x, (int, Fraction)) else repr(x)


def random_hermitian(tower, n: int, rng, height: int = 4):
    """A random n x n matrix over a quadratic tower with ``t(m)^sigma = m``."""
    sigma = nontrivial_automorphism(tower)
    k = tower.bottom
    m = [[tower.zero] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = tower(k.random(rng, height))
        for j in range(i + 1, n):
            m[i][j] = tower.random(rng, height)
            m[j][i] = sigma(m[i][j])
    return m
