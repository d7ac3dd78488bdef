import random

import numpy as np
import pytest

from pvext import case1 as C1
from pvext import case2 as C2
from pvext import case3 as C3
from pvext.errors import BudgetExceeded, UnsupportedField, ValidationError
from pvext.oracle import (
    Coordinates,
    census_tower,
    enumerate_orbits,
    estimate_bytes,
    generator_matrix,
    group_generators,
    memory_budget,
    predicted_counts,
    split_action_check,
)
from pvext.fields import BaseField


@pytest.mark.parametrize("case, q, table", [
    (1, 3, {"trivial": 1, "quadratic": 1}),
    (2, 7, {"trivial": 1, "quadratic": 1}),
    (3, 3, {"trivial": 1, "quadratic": 1, "cyclic-cubic": 1}),
    (3, 2, {"trivial": 1, "quadratic": 1, "cyclic-cubic": 1}),
])
def test_predicted_counts(case, q, table):
    assert predicted_counts(case, q) == table


def test_census_case1_q3():
    r = enumerate_orbits(1, 3)
    assert r.matches and r.orbit_count == 2
    assert r.fiber_table == {"trivial": 1, "quadratic": 1}
    assert sum(o.size for o in r.orbits) == r.semistable_count
    assert r.total_points == 3 ** 8


def test_census_is_deterministic_and_order_free():
    a = enumerate_orbits(2, 3, seed=1)
    b = enumerate_orbits(2, 3, seed=2, shuffle_generators=True)
    assert a.to_json()["orbits"] == b.to_json()["orbits"]
    # same partition of every point, not only the same summary
    assert np.array_equal(np.unique(a.components, return_inverse=True)[1],
                          np.unique(b.components, return_inverse=True)[1])


def _irreducible(k, f):
    return all(x * x + f[0] * x + f[1] != 0 for x in k.elements())


def _reps(case, T):
    k = T.bottom
    if case == 1:
        f = next(f for f in ((1, 1), (0, 1), (0, 2)) if _irreducible(k, f))
        return [C1.make_w1(T), C1.make_w_alpha1(T, f)]
    if case == 2:
        out = [C2.make_w2(T), C2.rep2(T, "trivial", beta=(1, k.p - 1))]
        f = next(f for f in ((1, 1), (0, 1), (0, 2)) if _irreducible(k, f))
        return out + [C2.rep2(T, "quadratic", f=f), C2.make_w_alpha2(T, f)]
    cub = next(f for f in ((0, 1, 1), (1, 0, 1), (1, 1, 1)) if C3.galois_case3(T, f) == "cubic")
    return [C3.make_w3(T), C3.rep3(T, "kone"), C3.rep3(T, "cyclic_cubic", f=cub), C3.make_w_alpha3(T, cub)]


@pytest.mark.parametrize("case, q", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_representatives_land_in_labelled_orbits(case, q):
    r = enumerate_orbits(case, q)
    label = {1: C1.classify1, 2: C2.field_label2, 3: C3.classify3}[case]
    for x in _reps(case, r.tower):
        orbit = r.orbit_of(x)
        assert orbit is not None
        assert orbit.label == label(x)


def test_generator_matrices_match_the_action():
    rng = random.Random(0)
    k = BaseField(3)
    for case, act in ((1, C1.act1), (2, C2.act2), (3, C3.act3)):
        T = census_tower(case, k)
        coords = Coordinates(case, T)
        for name, g in group_generators(case, T):
            M = generator_matrix(coords, g)
            for _ in range(3):
                vec = [rng.randrange(3) for _ in range(coords.dim)]
                x = coords.decode(vec)
                assert coords.encode(act(g, x)) == [int(v) for v in (M @ np.array(vec)) % 3], name


def test_budget_and_field_errors(monkeypatch):
    with pytest.raises(BudgetExceeded):
        enumerate_orbits(3, 3, allow_large=True)
    with pytest.raises(ValidationError):
        enumerate_orbits(3, 5)
    with pytest.raises(UnsupportedField):
        enumerate_orbits(1, 4)
    with pytest.raises(BudgetExceeded):
        enumerate_orbits(1, 2, budget=1000)
    monkeypatch.setenv("PVEXT_MEMORY_BUDGET", "1234")
    assert memory_budget() == 1234
    monkeypatch.setenv("PVEXT_MEMORY_BUDGET", "lots")
    with pytest.raises(ValidationError):
        memory_budget()


def test_memory_estimate_for_case3_q2_fits_default():
    assert estimate_bytes(3, 2, 12) < 2 * 1024 ** 3


def test_split_action_check_fixed_samples():
    r = split_action_check(5, samples=0)
    assert r["samples"] == 2 and r["ok"]
