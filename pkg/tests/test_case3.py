import random
from fractions import Fraction

import pytest
from helpers import quad_tower, random_element, random_group, random_monic

from pvext import case3 as C3
from pvext import poly as P
from pvext.algebra import make_extension
from pvext.errors import FiberDataMismatch, NormConditionUnsatisfiable, NotRational, UnsupportedGaloisCase
from pvext.fields import BaseField
from pvext.forms import BinaryForm
from pvext.rootdata import CubicRootData, cubic_root_data, quadratic_root_data, universal_root_data

Q, F7 = BaseField(0), BaseField(7)


@pytest.fixture
def TQ():
    return quad_tower("Q")


@pytest.fixture
def T7():
    return quad_tower("F7")


def test_w_and_taus(TQ):
    w = C3.make_w3(TQ)
    assert C3.F3(w) == BinaryForm([0, -1, -1, 0])
    assert C3.delta3(w) == (1, True)
    t1, t2 = C3.make_taus(TQ)
    assert C3.act3(t1, w) == w and C3.act3(t2, w) == w
    assert C3.act3(C3.identity3(TQ), w) == w


def test_tau_permutations_generate_s3(TQ):
    t1, t2 = C3.make_taus(TQ)
    assert C3.zero_permutation(t1) == (1, 0, 2)
    assert C3.zero_permutation(t2) == (2, 1, 0)
    assert C3.zero_permutation(t1 * t1) == (0, 1, 2)
    p = C3.zero_permutation(t1 * t2)
    assert p != (0, 1, 2) and tuple(p[i] for i in p) != (0, 1, 2)  # order 3
    assert len(C3.tau_words(TQ)) == 6


def test_scalar_acts_by_norm(TQ):
    rng = random.Random(1)
    x = random_element(3, TQ, rng)
    c = TQ.random_unit(rng)
    z, k = TQ.zero, TQ.bottom
    g = C3.GrpElt3(TQ, [[c, z, z], [z, c, z], [z, z, c]], [[k.one, k.zero], [k.zero, k.one]])
    n = TQ.norm(c)
    assert C3.act3(g, x).x2 == tuple(tuple(n * e for e in row) for row in x.x2)


def test_w_alpha_example(TQ):
    x = C3.make_w_alpha3(TQ, (0, -1, 0))
    assert C3.F3(x) == BinaryForm([1, 0, -1, 0])
    assert C3.delta3(x) == (4, True)
    data = cubic_root_data(Q, (0, -1, 0))
    assert len(data.perms) == 6
    assert data.D ** 2 == 4 and data.A(2) == data.D


def test_d_and_a2_with_roots_one_minus_one_zero():
    L = make_extension(Q, [0, 1])  # Q itself, as a degree-1 algebra
    data = CubicRootData((0, -1, 0), L, (1, -1, 0))
    assert data.D == -2 and data.A(2) == -2
    assert P.det(data.P()) == 2 and P.det(data.P()) * P.det(data.Q()) == -1


def test_root_data_example_values():
    L = quadratic_root_data(Q, 0, -1)  # roots (1, -1, 0) of v1 (v1^2 - v2^2)
    a = L.roots
    assert a[0] ** 2 == 1 and a[1] == -a[0] and a[2] == 0
    D, A2 = L.D, L.A(2)
    assert D ** 2 == 4 and A2 == D
    assert P.det(L.P()) == -D
    assert P.det(L.P()) * P.det(L.Q()) == -1


@pytest.mark.parametrize("k, T", [(Q, "Q"), (F7, "F7")])
def test_lemma_and_determinant(k, T):
    T = quad_tower(T)
    rng = random.Random(2)
    for _ in range(20):
        f = random_monic(k, 3, rng)
        out = C3.lemma_check(k, cubic_root_data(k, f))
        assert C3.HermPair3(T, out["x1"], out["x2"]) == C3.make_w_alpha3(T, f)
        assert C3.F3(C3.make_w_alpha3(T, f)) == BinaryForm([k.one, *f], T)


def test_lemma_with_user_supplied_root_data():
    # x^3 - 2 over Q with its degree-6 splitting algebra built by hand
    data = universal_root_data(Q, (0, 0, -2))
    user = CubicRootData(data.f, data.splitting, data.roots)
    C3.lemma_check(Q, user)
    with pytest.raises(Exception):
        CubicRootData(data.f, data.splitting, (data.roots[0], data.roots[0], data.roots[2]))


def test_labels(TQ):
    assert str(C3.classify3(C3.make_w3(TQ))) == "trivial"
    assert str(C3.classify3(C3.make_w_alpha3(TQ, (0, -3, -1)))) == "cyclic-cubic"
    assert str(C3.classify3(C3.make_w_alpha3(TQ, (0, -1, -1)))) == "s3(-23)"


@pytest.mark.parametrize("name", ["Q", "F7", "F2", "F3"])
def test_action_axioms(name):
    T = quad_tower(name)
    rng = random.Random(3)
    for _ in range(20):
        g, h, x = random_group(3, T, rng), random_group(3, T, rng), random_element(3, T, rng)
        assert C3.act3(g, C3.act3(h, x)) == C3.act3(g * h, x)
        assert C3.act3(g.inverse(), C3.act3(g, x)) == x


def test_rep3_fibers(TQ, T7):
    assert C3.rep3(TQ, "trivial", beta=(1, 1, 1)) == C3.make_w3(TQ)
    x = C3.rep3(TQ, "quadratic", f=(0, -2))
    assert x == C3.make_w_alpha3(TQ, (0, -2, 0))
    with pytest.raises(FiberDataMismatch):
        C3.rep3(TQ, "quadratic", f=(0, 1))  # defines k1 = Q(i)
    y = C3.rep3(T7, "cyclic_cubic", f=(0, 0, 2))
    assert y == C3.make_w_alpha3(T7, (0, 0, 2))
    assert C3.classify3(y).degree == 3
    with pytest.raises(FiberDataMismatch):
        C3.rep3(TQ, "s3_cubic", f=(0, -3, -1))
    for fiber, f in (("kone", None), ("quadratic", (0, -2)), ("cyclic_cubic", (0, -3, -1)), ("s3_cubic", (0, 0, -2))):
        z = C3.rep3(TQ, fiber, f=f)
        assert C3.delta3(z)[1]
        assert C3.classify3(z) == C3.fiber_label(TQ, fiber, f=f)


def test_rep3_beta_changes_orbit_data_not_label(TQ):
    a = C3.rep3(TQ, "s3_cubic", f=(0, 0, -2), beta=(1, 1, 0))
    b = C3.rep3(TQ, "s3_cubic", f=(0, 0, -2))
    assert a != b
    assert C3.classify3(a) == C3.classify3(b)


def test_galois_cases(TQ, T7):
    assert C3.galois_case3(TQ, (0, -2, 0)) == "quadratic"
    assert C3.galois_case3(TQ, (0, 1, 0)) == "quadratic_k1"
    assert C3.galois_case3(TQ, (0, 0, -2)) == "cubic"
    assert C3.galois_case3(TQ, (3, 0, 2)) == "cubic_containing_k1"
    assert C3.galois_case3(T7, (0, 1, 0)) == "quadratic_k1"
    with pytest.raises(UnsupportedGaloisCase):
        C3.galois_case3(TQ, (0, -1, 0))


def test_stabilizer_of_w(TQ):
    c = TQ(3)
    g = C3.stab3_elem("w", TQ, (c, c, c))
    assert g.g2 == ((Fraction(1, 9), 0), (0, Fraction(1, 9)))
    assert C3.stab3_elem("w", TQ, (1, 1, 1)) == C3.identity3(TQ)
    with pytest.raises(NormConditionUnsatisfiable):
        C3.stab3_elem("w", TQ, (1, 2, 1))


def test_stabilizer_of_w_alpha_k1_case_over_f7(T7):
    rng = random.Random(4)
    data = quadratic_root_data(F7, 0, 1)
    x = C3.make_w_alpha3(T7, data.f)
    for _ in range(10):
        g = C3.stab3_elem("w_alpha", T7, C3.sample_stab3_param(T7, data, rng), data=data)
        assert C3.act3(g, x) == x


def test_stabilizer_rejects_incompatible_parameters(T7):
    data = cubic_root_data(F7, (0, 0, 2))
    K = C3.composite3(T7, data)
    with pytest.raises(NotRational):
        C3.stab3_elem("w_alpha", T7, [K(2), K(3), K(5)], data=data)
