from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvext.errors import DegenerateForm, DIsSquare, ZeroBeta
from pvext.fields import BaseField
from pvext.forms import (
    BinaryForm,
    binary_form_disc,
    factor_binary_form,
    hilbert_symbol,
    is_norm_quadratic_rational,
    rational_roots,
    splitting_label,
)

ints = st.integers(-20, 20)


@given(ints, ints, ints)
def test_quadratic_disc(a, b, c):
    assert binary_form_disc(BinaryForm([a, b, c])) == b * b - 4 * a * c


@settings(max_examples=50, deadline=None)
@given(st.lists(ints, min_size=4, max_size=4), st.lists(ints, min_size=4, max_size=4), ints)
def test_cubic_disc_covariance(cs, m, c):
    """disc(c F(vA)) = c^4 det(A)^6 disc(F)."""
    F = BinaryForm(cs)
    A = [m[:2], m[2:]]
    det = m[0] * m[3] - m[1] * m[2]
    G = F.substitute(A).scale(c)
    assert binary_form_disc(G) == c ** 4 * det ** 6 * binary_form_disc(F)


def test_cubic_disc_from_roots():
    # (v1 - v2)(v1 - 2 v2)(v1 + 3 v2): product of squared root differences
    F = BinaryForm([1, 0, -7, 6])
    assert binary_form_disc(F) == (1 * 5 * 4) ** 2


def test_substitution_order():
    F = BinaryForm([1, 2, 3, 4])
    A, B = [[1, 2], [0, 1]], [[2, 0], [1, 1]]
    BA = [[sum(B[i][k] * A[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert F.substitute(A).substitute(B) == F.substitute(BA)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.builds(Fraction, st.integers(-10**12, 10**12), st.integers(1, 10**4)), min_size=1, max_size=3),
       st.integers(1, 60))
def test_rational_roots_with_large_roots(roots, lead):
    f = [Fraction(lead)]
    for r in roots:
        f = [(f[i - 1] if i else 0) - r * (f[i] if i < len(f) else 0) for i in range(len(f) + 1)]
    assert sorted(rational_roots(f)) == sorted(set(roots))


def test_rational_roots():
    assert sorted(rational_roots([6, -5, 1])) == [2, 3]
    assert rational_roots([Fraction(-1, 4), 0, 1]) in ([Fraction(1, 2), Fraction(-1, 2)], [Fraction(-1, 2), Fraction(1, 2)])
    assert rational_roots([2, 0, 1]) == []


def test_factor_cubic_over_f5():
    k = BaseField(5)
    F = BinaryForm([1, 0, 0, -1], k)  # v1^3 - v2^3 = (v1 - v2)(v1^2 + v1 v2 + v2^2)
    degs = sorted(h.degree for h, _ in factor_binary_form(F, k))
    assert degs == [1, 2]


@pytest.mark.parametrize("coeffs, text", [
    ([1, 0, -1], "trivial"),
    ([1, 0, 1], "quadratic(-1)"),
    ([1, 0, -3, 1], "cyclic-cubic"),
    ([1, 0, 0, -2], "s3(-3)"),
    ([1, 0, -2, 0], "quadratic(2)"),
])
def test_labels_over_q(coeffs, text):
    assert str(splitting_label(BinaryForm(coeffs))) == text


def test_labels_over_finite_fields_are_degrees():
    k = BaseField(3)
    seen = set()
    for a in product(range(3), repeat=3):
        F = BinaryForm([1, *a], k)
        if binary_form_disc(F) != 0:
            seen.add(splitting_label(F).degree)
    assert seen == {1, 2, 3}


def test_cubic_labels_compare_by_type_and_core():
    # different cyclic cubic fields (conductors 9 and 7) share a label; the
    # defining cubic is kept for reference only
    a = splitting_label(BinaryForm([1, 0, -3, 1]))
    b = splitting_label(BinaryForm([1, -1, -2, 1]))
    assert a == b
    assert a.defining_poly != b.defining_poly


def test_degenerate_label_raises():
    with pytest.raises(DegenerateForm):
        splitting_label(BinaryForm([1, 2, 1]))


def test_hilbert_symbol_basics():
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert hilbert_symbol(2, 5, 5) == -1
    assert hilbert_symbol(5, 5, 5) == hilbert_symbol(5, -1, 5)


def test_norm_test_examples():
    assert is_norm_quadratic_rational(-1, 2)
    assert is_norm_quadratic_rational(-1, 5)
    assert not is_norm_quadratic_rational(-1, 3)
    assert not is_norm_quadratic_rational(-1, -1)
    assert is_norm_quadratic_rational(2, -1)
    assert is_norm_quadratic_rational(5, Fraction(11, 4))
    with pytest.raises(ZeroBeta):
        is_norm_quadratic_rational(2, 0)
    with pytest.raises(DIsSquare):
        is_norm_quadratic_rational(9, 2)
