from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pvext import poly as P
from pvext.fields import BaseField, FpElement, is_prime, squarefree_core, trial_factor

small_primes = st.sampled_from([2, 3, 5, 7, 11, 13])


def test_is_prime_small_values():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(small_primes, st.integers(), st.integers())
def test_fp_ring_axioms(p, a, b):
    x, y = FpElement(a, p), FpElement(b, p)
    assert int(x + y) == (a + b) % p
    assert int(x * y) == (a * b) % p
    assert int(x - y) == (a - b) % p
    if y != 0:
        assert (x / y) * y == x


def test_fp_rejects_mixed_characteristic():
    with pytest.raises(Exception):
        FpElement(1, 3) + FpElement(1, 5)


def test_base_field_elements_and_units():
    F5 = BaseField(5)
    assert len(F5.elements()) == 5
    assert len(F5.units()) == 4
    assert F5.order == 5
    assert not BaseField(0).is_finite


@pytest.mark.parametrize("x, core", [(12, 3), (-8, -2), (Fraction(9, 2), 2), (Fraction(-1, 4), -1), (1, 1)])
def test_squarefree_core(x, core):
    assert squarefree_core(x) == core


def test_trial_factor():
    assert trial_factor(360) == {2: 3, 3: 2, 5: 1}


poly_q = st.lists(st.builds(Fraction, st.integers(-50, 50), st.integers(1, 5)), min_size=1, max_size=5)


@given(poly_q, poly_q)
def test_divmod_reconstructs(a, b):
    b = b + [Fraction(1)]
    q, r = P.divmod_monic(a, b)
    assert P.trim(P.add(P.mul(q, b), r)) == P.trim(a)
    assert P.degree(r) < P.degree(b)


def test_gcd_of_products_is_common_factor():
    f = [Fraction(-1), Fraction(1)]  # t - 1
    g = P.mul(f, [Fraction(2), Fraction(1)])
    h = P.mul(f, [Fraction(5), Fraction(0), Fraction(1)])
    assert P.gcd(g, h) == f


def test_det_adjugate_and_nullspace():
    m = [[Fraction(x) for x in row] for row in ([2, 1, 0], [1, 3, 1], [0, 1, 4])]
    d = P.det(m)
    assert d == 18
    adj = P.adjugate(m)
    assert P.matmul(m, adj) == [[d if i == j else 0 for j in range(3)] for i in range(3)]
    sing = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    (v,) = P.nullspace(sing, Fraction(0), Fraction(1))
    assert P.matvec(sing, v) == [0, 0]


def test_charpoly_matches_det():
    m = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    cp = P.charpoly_berkowitz(m, Fraction(0), Fraction(1))
    # t^2 - 5t - 2, either coefficient order
    assert sorted(cp) == sorted([Fraction(-2), Fraction(-5), Fraction(1)])
