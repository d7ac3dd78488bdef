"""Exhaustive orbit censuses over small prime fields.

Every group element acts F_p-linearly on the rational points, so each
generator becomes an integer matrix on coordinate vectors.  Points are
indexed densely in mixed radix, the generator images give a graph on the
indices, and its connected components are exactly the orbits.

:func:`predicted_counts` computes the orbit count of every fiber from the
norm-class quotients, using discrete logarithms in the (cyclic) unit groups
of the fields involved.  :func:`split_action_check` recomputes the case-2
action in eight coordinates over the splitting field.
"""
from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import poly as P
from . import case1 as C1
from . import case2 as C2
from . import case3 as C3
from .algebra import EtaleAlgebra, _prime_divisors, descend_to_bottom, find_irreducible, tensor_extend, with_frobenius
from .common import diag, quadratic_algebra, random_matrix
from .errors import BudgetExceeded, CheckFailure, UnsupportedField, ValidationError
from .fields import BaseField, is_prime
from .forms import BinaryForm, ErLabel, binary_form_disc, label_for_degree

DEFAULT_BUDGET = 2 * 1024 ** 3
MAX_Q = {1: 5, 2: 5, 3: 3}


def memory_budget() -> int:
    env = os.environ.get("PVEXT_MEMORY_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"PVEXT_MEMORY_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def _field(q: int) -> BaseField:
    if not isinstance(q, int) or q < 2:
        raise ValidationError(f"q must be a prime, got {q!r}")
    if not is_prime(q):
        raise UnsupportedField(f"only prime q is supported, got {q}")
    return BaseField(q)


def census_tower(case: int, k: BaseField) -> EtaleAlgebra:
    """The extension k1 used by the census: F_{q^2} for cases 1 and 3,
    F_{q^3} for case 2."""
    if case == 2:
        return with_frobenius(k, find_irreducible(k, 3))
    f = find_irreducible(k, 2)
    return quadratic_algebra(k, f[1], f[0], name="t")


# -- coordinates ------------------------------------------------------------------


class Coordinates:
    """Dense F_p coordinates of one of the three spaces."""

    def __init__(self, case: int, tower: EtaleAlgebra):
        self.case, self.tower, self.k = case, tower, tower.bottom
        self.p = self.k.p
        n = {1: 2, 2: None, 3: 3}[case]
        self.n = n
        if case == 2:
            self.dim = 8
        else:
            self.pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
            self.per_matrix = n + 2 * len(self.pairs)
            self.dim = 2 * self.per_matrix

    def encode(self, x) -> list[int]:
        T = self.tower
        if self.case == 2:
            vals = [x.x111, *T.flatten(x.x211), *T.flatten(x.x122), x.x222]
            return [int(v) for v in vals]
        out = []
        for m in (x.x1, x.x2):
            out += [int(descend_to_bottom(m[i][i])) for i in range(self.n)]
            for i, j in self.pairs:
                out += [int(c) for c in T.flatten(m[i][j])]
        return out

    def decode(self, vec):
        T, k = self.tower, self.k
        vec = [int(v) for v in vec]
        if self.case == 2:
            return C2.V2Elem(T, k(vec[0]), T.unflatten([k(c) for c in vec[1:4]]),
                             T.unflatten([k(c) for c in vec[4:7]]), k(vec[7]))
        sigma = C1.nontrivial_automorphism(T)
        mats = []
        for off in (0, self.per_matrix):
            m = [[T.zero] * self.n for _ in range(self.n)]
            for i in range(self.n):
                m[i][i] = T(k(vec[off + i]))
            pos = off + self.n
            for i, j in self.pairs:
                z = T.unflatten([k(vec[pos]), k(vec[pos + 1])])
                m[i][j], m[j][i] = z, sigma(z)
                pos += 2
            mats.append(m)
        cls = C1.HermPair2 if self.case == 1 else C3.HermPair3
        return cls(T, *mats)


def _act(case):
    return {1: C1.act1, 2: C2.act2, 3: C3.act3}[case]


def generator_matrix(coords: Coordinates, g) -> np.ndarray:
    """Integer matrix M with ``encode(g x) = M encode(x) mod p``."""
    act = _act(coords.case)
    cols = []
    for j in range(coords.dim):
        e = [0] * coords.dim
        e[j] = 1
        cols.append(coords.encode(act(g, coords.decode(e))))
    return np.array(cols, dtype=np.int64).T


# -- generators ---------------------------------------------------------------------


def _primitive(R):
    """A generator of the unit group of a finite field (lazy search)."""
    if isinstance(R, BaseField):
        m = R.p - 1
        cands = R.units()
    else:
        m = R.order - 1
        cands = (x for x in R.elements() if x != 0)
    primes = _prime_divisors(m)
    for g in cands:
        if all(g ** (m // r) != 1 for r in primes):
            return g
    raise ValidationError("no primitive element; not a field?")


def gl_generators(R, n: int) -> list[tuple[str, list]]:
    """``diag(zeta, 1, ...)`` and ``1 + b E_ij`` for b running over an F_p-basis."""
    one, zero = R.one, R.zero
    basis = [one] if isinstance(R, BaseField) else R.absolute_basis
    zeta = _primitive(R)
    out = [("diag(zeta,1..)", diag(zeta, *([one] * (n - 1)), zero=zero))]
    for i, j in itertools.permutations(range(n), 2):
        for bi, b in enumerate(basis):
            m = diag(*([one] * n), zero=zero)
            m[i][j] = b
            out.append((f"E{i + 1}{j + 1}(b{bi})", m))
    return out


def group_generators(case: int, tower: EtaleAlgebra) -> list[tuple[str, object]]:
    k = tower.bottom
    if case == 2:
        I = diag(tower.one, tower.one, zero=tower.zero)
        gens = [("GL1(k): zeta", C2.GrpElt2(tower, _primitive(k), I))]
        gens += [(f"GL2(k1): {name}", C2.GrpElt2(tower, 1, m)) for name, m in gl_generators(tower, 2)]
        gens.append(("tau", C2.make_tau2(tower)))
        return gens
    n = 2 if case == 1 else 3
    cls = C1.GrpElt1 if case == 1 else C3.GrpElt3
    I1 = diag(*([tower.one] * n), zero=tower.zero)
    I2 = diag(k.one, k.one, zero=k.zero)
    gens = [(f"GL{n}(k1): {name}", cls(tower, m, I2)) for name, m in gl_generators(tower, n)]
    gens += [(f"GL2(k): {name}", cls(tower, I1, m)) for name, m in gl_generators(k, 2)]
    if case == 1:
        gens.append(("tau", C1.make_tau1(tower)))
    else:
        t1, t2 = C3.make_taus(tower)
        gens += [("tau1", t1), ("tau2", t2)]
    return gens


# -- labels -----------------------------------------------------------------------------


def delta_of(case: int, x):
    return {1: C1.delta1, 2: C2.delta2, 3: C3.delta3}[case](x)[0]


def label_of(case: int, x) -> ErLabel:
    if case == 1:
        return C1.classify1(x)
    if case == 2:
        return C2.field_label2(x)
    return C3.classify3(x)


# -- census -------------------------------------------------------------------------------


@dataclass
class OrbitInfo:
    size: int
    label: ErLabel
    representative: list
    index: int


@dataclass
class CensusReport:
    case: int
    q: int
    semistable_count: int
    orbits: list
    fiber_table: dict
    predicted: dict
    generators: list
    total_points: int
    samples_per_orbit: int
    extra: dict = field(default_factory=dict)
    components: object = field(default=None, repr=False)
    tower: object = field(default=None, repr=False)

    def orbit_of(self, x) -> OrbitInfo | None:
        """The orbit containing x, or None when x is not semistable."""
        coords = Coordinates(self.case, self.tower)
        idx = sum(d * self.q ** i for i, d in enumerate(coords.encode(x)))
        comp = self.components[idx]
        for o in self.orbits:
            if self.components[o.index] == comp:
                return o
        return None

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def matches(self) -> bool:
        return self.fiber_table == self.predicted

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "q": self.q,
            "total_points": self.total_points,
            "semistable_count": self.semistable_count,
            "orbit_count": self.orbit_count,
            "orbits": [{"size": o.size, "label": str(o.label), "label_detail": o.label.to_json(),
                        "representative": o.representative} for o in self.orbits],
            "fiber_table": dict(sorted(self.fiber_table.items())),
            "predicted": dict(sorted(self.predicted.items())),
            "matches": self.matches,
            "generators": self.generators,
            "samples_per_orbit": self.samples_per_orbit,
            **self.extra,
        }


def estimate_bytes(case: int, q: int, n_gens: int) -> int:
    dim = {1: 8, 2: 8, 3: 18}[case]
    N = q ** dim
    # digits, per-generator edge arrays and the sparse graph with its copies
    return N * 8 * (dim + 4 * n_gens + 8)


def enumerate_orbits(case: int, q: int, seed: int = 0, samples: int = 100, budget: int | None = None,
                     shuffle_generators: bool = False, allow_large: bool = False) -> CensusReport:
    """Partition the semistable points of the case-``case`` space over F_q into orbits."""
    if case not in (1, 2, 3):
        raise ValidationError(f"case must be 1, 2 or 3, got {case!r}")
    k = _field(q)
    if q > MAX_Q[case] and not allow_large:
        raise ValidationError(f"case {case} census supports q <= {MAX_Q[case]}")
    budget = memory_budget() if budget is None else budget
    tower = census_tower(case, k)
    coords = Coordinates(case, tower)
    gens = group_generators(case, tower)
    need = estimate_bytes(case, q, len(gens))
    if need > budget:
        raise BudgetExceeded(f"case {case} at q = {q} needs about {need / 2 ** 30:.1f} GiB, budget {budget / 2 ** 30:.1f} GiB")
    if shuffle_generators:
        random.Random(seed).shuffle(gens)
    mats = [generator_matrix(coords, g) for _, g in gens]

    dim, N = coords.dim, q ** coords.dim
    powers = q ** np.arange(dim, dtype=np.int64)
    idx = np.arange(N, dtype=np.int64)
    digits = (idx[:, None] // powers) % q
    rows, cols = [], []
    for M in mats:
        img = ((digits @ M.T) % q) @ powers
        rows.append(idx)
        cols.append(img)
    del digits
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(N, N)).tocsr()
    del rows, cols
    n_comp, comp = connected_components(graph, directed=True, connection="weak")
    del graph
    _, first = np.unique(comp, return_index=True)
    sizes = np.bincount(comp, minlength=n_comp)

    rng = np.random.default_rng(seed)
    orbits, table, ss_count = [], {}, 0
    for c in range(n_comp):
        i = int(first[c])
        vec = [int(d) for d in (i // powers) % q]
        x = coords.decode(vec)
        if delta_of(case, x) == 0:
            continue
        lab = label_of(case, x)
        members = np.flatnonzero(comp == c)
        pick = rng.choice(members, size=min(samples, len(members)), replace=False)
        for j in pick:
            y = coords.decode([int(d) for d in (int(j) // powers) % q])
            if label_of(case, y) != lab:
                raise CheckFailure(f"label not constant on orbit of point {i}")
        ss_count += int(sizes[c])
        orbits.append(OrbitInfo(int(sizes[c]), lab, vec, i))
        table[str(lab)] = table.get(str(lab), 0) + 1
    return CensusReport(case, q, ss_count, orbits, table, predicted_counts(case, q),
                        [name for name, _ in gens], N, samples, components=comp, tower=tower)


# -- predictions -----------------------------------------------------------------------------


class _Cyclic:
    """Discrete logarithms in the unit group of a small finite field."""

    def __init__(self, F):
        self.F = F
        self.gen = _primitive(F)
        self.order = (F.p if isinstance(F, BaseField) else F.order) - 1
        self.log = {}
        x = F.one
        for e in range(self.order):
            self.log[x] = e
            x = x * self.gen


def _norm_image_exponent(big, small_log: _Cyclic) -> int:
    """Exponent generating ``N_{big/small}(big^x)`` inside small^x."""
    n = big.norm(_primitive(big))
    if isinstance(small_log.F, BaseField):
        n = descend_to_bottom(n)
    return small_log.log[small_log.F(n)]


def _base_exponent(small_log: _Cyclic, k: BaseField) -> int:
    """Exponent generating the image of k^x in small^x."""
    zk = _primitive(k)
    return small_log.log[small_log.F(zk)]


def _tuple_orbits(d: int, m: int) -> int:
    """``|S_m \\ (Z/d)^m / diagonal|``."""
    seen = set()
    for e in itertools.product(range(d), repeat=m):
        canon = min(tuple(sorted((x + s) % d for x in e)) for s in range(d))
        seen.add(canon)
    return len(seen)


def _frobenius_orbits(d: int, p: int, period: int) -> int:
    """Orbits of ``e -> p e`` (a group of order ``period``) on Z/d."""
    seen, count = set(), 0
    for e in range(d):
        if e in seen:
            continue
        count += 1
        x = e
        for _ in range(period):
            seen.add(x)
            x = x * p % d
    return count


def _h1_quadratic(A: EtaleAlgebra, sigma) -> int:
    """``|ker N / {v / sigma(v)}|``: H^1 of the order-2 group generated by
    sigma acting on A^x, with N the norm to the fixed ring."""
    units = [x for x in A.elements() if A.is_unit(x)]
    ker = {x for x in units if A.norm(x) == 1}
    im = {v * sigma(v).inverse() for v in units}
    if not im <= ker:
        raise CheckFailure("Hilbert 90 image is not inside the norm kernel")
    return len(ker) // len(im)


def predicted_counts(case: int, q: int) -> dict:
    """Expected number of orbits in each non-empty fiber over F_q.

    Computed from the explicit quotient groups; the only structural input is
    which extensions of F_q exist (one of each degree).
    """
    k = _field(q)
    p = q
    kq = _Cyclic(k)
    out = {}
    if case == 1:
        k1 = census_tower(1, k)
        s1 = C1.nontrivial_automorphism(k1)
        out[str(label_for_degree(1))] = _h1_quadratic(k1, s1) ** 2
        ka = census_tower(1, k)
        K = tensor_extend(k1, ka)
        out[str(label_for_degree(2))] = _h1_quadratic(K, C1.nontrivial_automorphism_lift(K))
        return out
    if case == 2:
        k1 = census_tower(2, k)
        d0 = gcd(kq.order, _norm_image_exponent(k1, kq))
        out[str(label_for_degree(1))] = _tuple_orbits(d0, 2)
        ka = census_tower(1, k)
        K = tensor_extend(k1, ka)
        la = _Cyclic(ka)
        d = gcd(la.order, _norm_image_exponent(K, la), _base_exponent(la, k))
        out[str(label_for_degree(2))] = _frobenius_orbits(d, p, 2)
        return out
    if case == 3:
        k1 = census_tower(3, k)
        d0 = gcd(kq.order, _norm_image_exponent(k1, kq))
        out[str(label_for_degree(1))] = _tuple_orbits(d0, 3)
        # the only quadratic extension of F_q is k1 itself: one orbit
        out[str(label_for_degree(2))] = 1
        kc = with_frobenius(k, find_irreducible(k, 3), name="c")
        K = tensor_extend(k1, kc)
        lc = _Cyclic(kc)
        d = gcd(lc.order, _norm_image_exponent(K, lc), _base_exponent(lc, k))
        out[str(label_for_degree(3))] = _frobenius_orbits(d, p, 3)
        return out
    raise ValidationError(f"case must be 1, 2 or 3, got {case!r}")


# -- eight-coordinate check of the case-2 action ---------------------------------------------


def _frob(x, q, times):
    for _ in range(times):
        x = x ** q
    return x


def to_eight(x: C2.V2Elem, q: int) -> dict:
    """The eight split coordinates over k1 = F_{q^3} (cyclic, sigma = Frobenius)."""
    T = x.tower
    f = lambda y, i: _frob(y, q, i)
    return {
        (1, 1, 1): T(x.x111), (2, 2, 2): T(x.x222),
        (2, 1, 1): x.x211, (1, 2, 1): f(x.x211, 1), (1, 1, 2): f(x.x211, 2),
        (1, 2, 2): x.x122, (2, 1, 2): f(x.x122, 1), (2, 2, 1): f(x.x122, 2),
    }


def act_eight(g: C2.GrpElt2, X: dict, q: int) -> dict:
    """``y_{abc} = t sum g_{ai} g^sigma_{bj} g^sigma^2_{ck} x_{ijk}``."""
    T = g.tower
    gs = [[[_frob(e, q, s) for e in row] for row in g.g] for s in range(3)]
    out = {}
    for a, b, c in itertools.product((1, 2), repeat=3):
        acc = T.zero
        for i, j, l in itertools.product((1, 2), repeat=3):
            acc = acc + gs[0][a - 1][i - 1] * gs[1][b - 1][j - 1] * gs[2][c - 1][l - 1] * X[(i, j, l)]
        out[(a, b, c)] = acc * g.t
    return out


def f_eight(X: dict) -> BinaryForm:
    """``det M_x(v)`` in split coordinates, v attached to the third slot."""
    x = lambda *i: X[i]
    A = x(1, 1, 1) * x(2, 2, 1) - x(1, 2, 1) * x(2, 1, 1)
    B = x(1, 1, 1) * x(2, 2, 2) + x(2, 2, 1) * x(1, 1, 2) - x(1, 2, 1) * x(2, 1, 2) - x(2, 1, 1) * x(1, 2, 2)
    C = x(1, 1, 2) * x(2, 2, 2) - x(1, 2, 2) * x(2, 1, 2)
    return BinaryForm([A, B, C], A.parent)


def delta_eight(X: dict):
    """Discriminant of ``det M_x(v)`` in split coordinates."""
    return binary_form_disc(f_eight(X))


def f_law_eight(g: C2.GrpElt2, X: dict, q: int) -> bool:
    """``F_{gx}(v) = t^2 det(g) det(g^sigma) F_x(v g^{sigma^2})``."""
    dets = [_frob(P.det(g.g), q, s) for s in range(2)]
    g2 = [[_frob(e, q, 2) for e in row] for row in g.g]
    rhs = f_eight(X).substitute(g2).scale(dets[0] * dets[1] * g.t ** 2)
    return f_eight(act_eight(g, X, q)) == rhs


def split_action_check(q: int, samples: int = 500, seed: int = 0) -> dict:
    """Compare :func:`case2.act2` and the rational Delta formula with the
    eight-coordinate computation; failures are counted, never raised."""
    k = _field(q)
    T = census_tower(2, k)
    rng = random.Random(seed)
    act_bad = delta_bad = f_bad = 0
    first_failure = None
    fixed = [(C2.identity2(T), C2.make_w2(T)), (C2.make_tau2(T), C2.make_w2(T))]
    for n in range(samples + len(fixed)):
        if n < len(fixed):
            g, x = fixed[n]
        else:
            g = C2.GrpElt2(T, k.random_unit(rng), random_matrix(T, 2, rng))
            x = C2.V2Elem(T, k.random(rng), T.random(rng), T.random(rng), k.random(rng))
        X = to_eight(x, q)
        lhs = to_eight(C2.act2(g, x), q)
        rhs = act_eight(g, X, q)
        if any(lhs[key] != rhs[key] for key in lhs):
            act_bad += 1
            first_failure = first_failure or {"sample": n, "kind": "action"}
        if not f_law_eight(g, X, q):
            f_bad += 1
            first_failure = first_failure or {"sample": n, "kind": "F"}
        if T(C2.delta2(x)[0]) != delta_eight(X):
            delta_bad += 1
            first_failure = first_failure or {"sample": n, "kind": "delta"}
    return {"q": q, "samples": samples + len(fixed), "action_mismatches": act_bad,
            "delta_mismatches": delta_bad, "f_mismatches": f_bad,
            "ok": act_bad == 0 and delta_bad == 0 and f_bad == 0,
            "first_failure": first_failure}
