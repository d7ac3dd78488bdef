"""Towers and random samplers shared by the tests."""
from functools import lru_cache

from pvext import case1 as C1
from pvext import case2 as C2
from pvext import case3 as C3
from pvext.algebra import make_extension, with_frobenius
from pvext.common import quadratic_algebra, random_hermitian, random_matrix
from pvext.fields import BaseField

# quadratic towers serve cases 1 and 3, cubic ones case 2
TOWER_SPECS = {
    1: {"Q": (0, (0, 1)), "F2": (2, (1, 1)), "F3": (3, (0, 1)), "F7": (7, (0, 1))},
    2: {"Q": (0, (-2, 0, 0)), "F2": (2, (1, 1, 0)), "F3": (3, (-1, -1, 0)), "F7": (7, (2, 0, 0))},
}


@lru_cache(maxsize=None)
def quad_tower(name):
    p, (a1, a2) = TOWER_SPECS[1][name]
    return quadratic_algebra(BaseField(p), a1, a2, name="t")


@lru_cache(maxsize=None)
def cubic_tower(name):
    p, (c0, c1, c2) = TOWER_SPECS[2][name]
    k = BaseField(p)
    poly = [k(c0), k(c1), k(c2), k.one]
    if p:
        return with_frobenius(k, poly, name="t")
    # x^3 - 2 is not Galois over Q; its automorphism group is trivial
    return make_extension(k, poly, name="t")


def tower_for(case, name):
    return cubic_tower(name) if case == 2 else quad_tower(name)


def random_element(case, T, rng):
    if case == 1:
        return C1.HermPair2(T, random_hermitian(T, 2, rng), random_hermitian(T, 2, rng))
    if case == 3:
        return C3.HermPair3(T, random_hermitian(T, 3, rng), random_hermitian(T, 3, rng))
    k = T.bottom
    return C2.V2Elem(T, k.random(rng, 5), T.random(rng), T.random(rng), k.random(rng, 5))


def random_group(case, T, rng):
    k = T.bottom
    if case == 1:
        return C1.GrpElt1(T, random_matrix(T, 2, rng, 3), random_matrix(k, 2, rng, 3))
    if case == 3:
        return C3.GrpElt3(T, random_matrix(T, 3, rng, 2), random_matrix(k, 2, rng, 3))
    return C2.GrpElt2(T, k.random_unit(rng, 4), random_matrix(T, 2, rng, 3))


def random_monic(k, degree, rng, lo=-9, hi=9):
    """A random monic squarefree coefficient tuple ``(a1, ..., a_d)``."""
    from pvext.forms import BinaryForm, binary_form_disc

    while True:
        a = tuple(k(rng.randint(lo, hi)) for _ in range(degree))
        if binary_form_disc(BinaryForm([k.one, *a], k)) != 0:
            return a


def all_monic(k, degree):
    from itertools import product

    from pvext.forms import BinaryForm, binary_form_disc

    for a in product(k.elements(), repeat=degree):
        if binary_form_disc(BinaryForm([k.one, *a], k)) != 0:
            yield tuple(a)
