import random
from fractions import Fraction

import pytest
from helpers import random_element, random_group, tower_for

from pvext.errors import ValidationError
from pvext.fields import BaseField
from pvext.serialize import (
    element_from_json,
    element_to_json,
    group_from_json,
    group_to_json,
    parse_scalar_list,
    scalar_from_json,
    scalar_to_json,
)


def test_scalars():
    Q, F5 = BaseField(0), BaseField(5)
    assert scalar_to_json(Fraction(6, 3)) == 2
    assert scalar_to_json(Fraction(-2, 4)) == "-1/2"
    assert scalar_to_json(F5(-1)) == 4
    assert scalar_from_json(Q, "3/6") == Fraction(1, 2)
    assert parse_scalar_list(F5, "1, -1, 7") == [F5(1), F5(4), F5(2)]
    for bad in (True, 1.5, None, "x"):
        with pytest.raises(ValidationError):
            scalar_from_json(Q, bad)


@pytest.mark.parametrize("case", [1, 2, 3])
@pytest.mark.parametrize("name", ["Q", "F2", "F7"])
def test_round_trip(case, name):
    rng = random.Random(case)
    T = tower_for(case, name)
    x, g = random_element(case, T, rng), random_group(case, T, rng)
    y = element_from_json(element_to_json(x))
    h = group_from_json(group_to_json(g))
    assert element_to_json(y) == element_to_json(x)
    assert group_to_json(h) == group_to_json(g)
    # elements read back share one tower object
    assert y.tower is h.tower


def test_rejects_non_hermitian():
    T = tower_for(1, "Q")
    d = element_to_json(random_element(1, T, random.Random(0)))
    d["x1"][0][1] = [1, 1]
    d["x1"][1][0] = [1, 1]
    with pytest.raises(ValidationError):
        element_from_json(d)


def test_rejects_wrong_shapes():
    T = tower_for(2, "Q")
    d = element_to_json(random_element(2, T, random.Random(0)))
    d["x211"] = [1, 2]
    with pytest.raises(ValidationError):
        element_from_json(d)
    with pytest.raises(ValidationError):
        element_from_json({"case": 2})
