import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvext.algebra import (
    descend_to_bottom,
    finite_field,
    galois_descend,
    is_irreducible_over_prime_field,
    make_extension,
    norm_one_element,
    tensor_extend,
    with_frobenius,
)
from pvext.common import nontrivial_automorphism, quadratic_algebra
from pvext.errors import NotRational, NotSquarefree
from pvext.fields import BaseField

F7 = BaseField(7)
Q = BaseField(0)
K343 = finite_field(7, 3)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=3, max_size=3))
def test_finite_field_norm_is_power_map(cs):
    x = K343(cs)
    assert K343.norm(x) == descend_to_bottom(x ** (1 + 7 + 49))
    assert K343.trace(x) == descend_to_bottom(x + x ** 7 + x ** 49)


def test_inverse_and_units():
    rng = random.Random(0)
    for _ in range(30):
        x = K343.random_unit(rng)
        assert x * x.inverse() == K343.one
    assert len(K343.automorphisms) == 3
    assert K343.order == 343


def test_frobenius_group_is_cyclic_of_degree_order():
    A = with_frobenius(F7, [F7(2), F7(0), F7(0), F7(1)])
    sigma = next(a for a in A.automorphisms if not a.is_identity())
    t = A.gen
    assert sigma(sigma(sigma(t))) == t
    assert sigma(t) == t ** 7


def test_quadratic_conjugation_over_q():
    K = quadratic_algebra(Q, 0, 1)
    s = nontrivial_automorphism(K)
    i = K.gen
    assert i * i == K(-1)
    assert s(i) == -i
    assert K.norm(3 + 4 * i) == 25


def test_non_squarefree_rejected():
    with pytest.raises(NotSquarefree):
        make_extension(Q, [1, 2, 1])


def test_irreducibility():
    assert is_irreducible_over_prime_field([2, 0, 0, 1], F7)
    assert not is_irreducible_over_prime_field([1, 0, 0, 1], F7)
    assert is_irreducible_over_prime_field([-2, 0, 0, 1], Q)


def test_tensor_extend_and_descent():
    k1 = quadratic_algebra(Q, 0, 1, name="i")
    kd = quadratic_algebra(Q, 0, -2, name="r")
    K = tensor_extend(k1, kd)
    assert K.absolute_dimension == 4
    i, r = K.embed_a(k1.gen), K(kd.gen)
    assert i * i == K(-1) and r * r == K(2)
    # (i r)^2 = -2 descends to Q; i r itself does not
    assert descend_to_bottom(galois_descend((i * r) ** 2, K.automorphisms, K)) == -2
    with pytest.raises(NotRational):
        galois_descend(i * r, K.automorphisms, K)
    assert K.project_a(K.embed_a(k1.gen + 3)) == k1.gen + 3


def test_tensor_of_equal_fields_splits():
    k1 = quadratic_algebra(Q, 0, 1, name="i")
    k2 = quadratic_algebra(Q, 0, 1, name="j")
    K = tensor_extend(k1, k2)
    i, j = K.embed_a(k1.gen), K(k2.gen)
    e = (1 - i * j) / 2
    # (1 - ij)/2 is a nontrivial idempotent
    assert e * e == e and e != K.zero and e != K.one
    assert not e.is_unit()


def test_tensor_accepts_equal_base_fields():
    A = quadratic_algebra(BaseField(7), 0, 1)
    B = finite_field(7, 3)
    assert tensor_extend(A, B).absolute_dimension == 6


def test_norm_one_element():
    rng = random.Random(1)
    for _ in range(10):
        u = K343.random_unit(rng)
        assert K343.norm(norm_one_element(u)) == 1
