"""Etale algebras presented as towers of monic polynomial quotients.

An :class:`EtaleAlgebra` is ``base[t]/(f)`` where ``base`` is a
:class:`~pvext.fields.BaseField` or another :class:`EtaleAlgebra`.  The
algebra carries a finite group of automorphisms over the bottom field.  An
automorphism is stored as the tuple of images of the tower generators (one
per level, all living in the top algebra), which is enough to describe maps
that move intermediate levels around, e.g. the root permutations of a
universal splitting algebra.

Norms and traces always come from the multiplication operator, never from
root formulas, so they are valid for products of fields and in every
characteristic.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Sequence

from . import poly as P
from .errors import (
    BaseMismatch,
    NotAUnit,
    NotARoot,
    NotClosedUnderComposition,
    NotRational,
    NotSquarefree,
    TowerMismatch,
    ValidationError,
)
from .fields import BaseField, FpElement

MAX_GROUP_ORDER = 720


class AlgebraElement:
    __slots__ = ("parent", "c")

    def __init__(self, parent: EtaleAlgebra, coords: tuple):
        self.parent = parent
        self.c = coords

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.parent is self.parent:
                return other
            if self.parent.has_subring(other.parent):
                return self.parent(other)
            if other.parent.has_subring(self.parent):
                return NotImplemented
            raise TowerMismatch(f"{self.parent!r} and {other.parent!r} share no tower")
        if isinstance(other, (int, Fraction, FpElement)):
            return self.parent(other)
        return NotImplemented

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.parent, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.parent, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return AlgebraElement(self.parent, tuple(-a for a in self.c))

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.parent._mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.parent.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> AlgebraElement:
        return self.parent.inverse(self)

    def is_unit(self) -> bool:
        return self.parent.is_unit(self)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TowerMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((id(self.parent), self.c))

    def __bool__(self):
        return any(self.c)

    def is_zero(self) -> bool:
        return not self

    def __repr__(self):
        return self.parent.format(self)

    # -- conveniences -----------------------------------------------------
    def char_poly(self) -> list:
        return self.parent.char_poly(self)

    def norm(self):
        return self.parent.norm(self)

    def trace(self):
        return self.parent.trace(self)


class Automorphism:
    """A ring automorphism of ``algebra`` fixing the bottom field, given by the
    images of the tower generators (bottom level first)."""

    def __init__(self, algebra: EtaleAlgebra, images: Sequence[AlgebraElement]):
        self.algebra = algebra
        self.images = tuple(algebra(x) for x in images)
        if len(self.images) != algebra.depth:
            raise ValidationError(f"need {algebra.depth} generator images, got {len(self.images)}")
        self._matrix = None

    def evaluate(self, x):
        """Apply by substituting the generator images (no caching)."""
        T = self.algebra
        return _evaluate(x, self.images, T)

    @property
    def matrix(self):
        if self._matrix is None:
            cols = [self.algebra.flatten(self.evaluate(b)) for b in self.algebra.absolute_basis]
            self._matrix = P.transpose(cols)
        return self._matrix

    def __call__(self, x):
        x = self.algebra(x)
        return self.algebra.unflatten(P.matvec(self.matrix, self.algebra.flatten(x)))

    def compose(self, other: Automorphism) -> Automorphism:
        """``self`` after ``other``."""
        return Automorphism(self.algebra, [self(img) for img in other.images])

    def __mul__(self, other: Automorphism) -> Automorphism:
        return self.compose(other)

    def is_identity(self) -> bool:
        return self.images == tuple(self.algebra.generators)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and other.algebra is self.algebra and other.images == self.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Automorphism({', '.join(map(repr, self.images))})"


def _evaluate(x, images, T):
    """Substitute the generator images into the nested representation of x."""
    if not isinstance(x, AlgebraElement):
        return T(x)
    level = x.parent.depth - 1
    g = images[level]
    acc = T.zero
    for c in reversed(x.c):
        acc = acc * g + _evaluate(c, images, T)
    return acc


class EtaleAlgebra:
    """``base[t]/(poly)`` with a validated finite group of automorphisms."""

    def __init__(self, base, poly: Sequence, aut_images: Iterable = (), name: str = "t", validate: bool = True):
        self.base = base
        coeffs = [base(c) for c in poly]
        coeffs = P.trim(coeffs)
        if len(coeffs) < 2:
            raise ValidationError("defining polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValidationError("defining polynomial must be monic")
        self.poly = tuple(coeffs)
        self.n = len(coeffs) - 1
        self.name = name
        self.bottom = base.bottom
        self.depth = base.depth + 1
        self.absolute_dimension = self.n * base.absolute_dimension
        self.zero = AlgebraElement(self, tuple([base.zero] * self.n))
        self.one = self([base.one])
        self.gen = self([base.zero, base.one]) if self.n > 1 else self([-self.poly[0]])
        self._reduction = self._reduction_table()
        self._basis = None
        if validate:
            self._check_separable()
        if callable(aut_images):
            aut_images = aut_images(self)
        self.automorphisms = self._close_group(aut_images, validate)

    # -- tower protocol ---------------------------------------------------
    def chain(self) -> list:
        return self.base.chain() + [self]

    def has_subring(self, other) -> bool:
        return any(other is a for a in self.chain())

    @property
    def dimension(self) -> int:
        return self.n

    @property
    def characteristic(self) -> int:
        return self.bottom.characteristic

    @property
    def generators(self) -> list:
        """Tower generators, bottom level first, as elements of this algebra."""
        return [self(a.gen) for a in self.chain()[1:]]

    def __call__(self, x) -> AlgebraElement:
        if isinstance(x, AlgebraElement):
            if x.parent is self:
                return x
            if self.base is x.parent or (isinstance(self.base, EtaleAlgebra) and self.base.has_subring(x.parent)):
                return self._constant(self.base(x))
            raise TowerMismatch(f"{x.parent!r} is not a subring of {self!r}")
        if isinstance(x, (list, tuple)):
            if len(x) > self.n:
                raise ValidationError(f"too many coordinates for dimension {self.n}")
            cs = [self.base(c) for c in x] + [self.base.zero] * (self.n - len(x))
            return AlgebraElement(self, tuple(cs))
        return self._constant(self.base(x))

    def _constant(self, c):
        return AlgebraElement(self, (c,) + tuple([self.base.zero] * (self.n - 1)))

    def contains(self, x) -> bool:
        return isinstance(x, AlgebraElement) and x.parent is self

    def flatten(self, x) -> list:
        x = self(x)
        out = []
        for c in x.c:
            out.extend(self.base.flatten(c))
        return out

    def unflatten(self, vec: Sequence) -> AlgebraElement:
        d = self.base.absolute_dimension
        if len(vec) != self.absolute_dimension:
            raise ValidationError("wrong flattened length")
        return AlgebraElement(self, tuple(self.base.unflatten(vec[i * d:(i + 1) * d]) for i in range(self.n)))

    @property
    def absolute_basis(self) -> list:
        if self._basis is None:
            k = self.bottom
            N = self.absolute_dimension
            self._basis = [self.unflatten([k.one if i == j else k.zero for i in range(N)]) for j in range(N)]
        return self._basis

    # -- arithmetic -------------------------------------------------------
    def _reduction_table(self):
        # rows: t^(n+k) expressed in the basis 1, t, ..., t^(n-1)
        n = self.n
        cur = [-c for c in self.poly[:n]]
        table = [cur]
        for _ in range(n - 2):
            nxt = [self.base.zero] + cur[:-1]
            top = cur[-1]
            nxt = [a - top * b for a, b in zip(nxt, self.poly[:n])]
            table.append(nxt)
            cur = nxt
        return table

    def _mul(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        n = self.n
        prod = P.mul(x.c, y.c)
        res = list(prod[:n])
        for k, ck in enumerate(prod[n:]):
            if ck:
                row = self._reduction[k]
                res = [a + ck * b for a, b in zip(res, row)]
        return AlgebraElement(self, tuple(res))

    def mult_matrix(self, x) -> list[list]:
        """Matrix of multiplication by x over the immediate base."""
        x = self(x)
        cols = []
        cur = x
        for _ in range(self.n):
            cols.append(list(cur.c))
            cur = cur * self.gen
        return P.transpose(cols)

    def char_poly(self, x) -> list:
        return P.charpoly_berkowitz(self.mult_matrix(x), self.base.zero, self.base.one)

    def norm(self, x):
        cp = self.char_poly(x)
        return cp[0] if self.n % 2 == 0 else -cp[0]

    def trace(self, x):
        return -self.char_poly(x)[self.n - 1]

    def absolute_norm(self, x):
        v = self.norm(x)
        return self.base.absolute_norm(v) if isinstance(self.base, EtaleAlgebra) else v

    def absolute_trace(self, x):
        v = self.trace(x)
        return self.base.absolute_trace(v) if isinstance(self.base, EtaleAlgebra) else v

    def is_unit(self, x) -> bool:
        return self.absolute_norm(x) != 0

    def inverse(self, x) -> AlgebraElement:
        # Cayley-Hamilton: x * (x^(n-1) + c_{n-1} x^(n-2) + ... + c_1) = -c_0
        x = self(x)
        cp = self.char_poly(x)
        c0 = cp[0]
        if isinstance(self.base, EtaleAlgebra):
            if not self.base.is_unit(c0):
                raise NotAUnit(f"{x!r} is not a unit")
            c0_inv = self.base.inverse(c0)
        else:
            if c0 == 0:
                raise NotAUnit(f"{x!r} is not a unit")
            c0_inv = 1 / c0
        acc = self.zero
        for c in reversed(cp[1:]):
            acc = acc * x + c
        return acc * (-c0_inv)

    # -- automorphisms ----------------------------------------------------
    def _normalize_images(self, img) -> tuple:
        if isinstance(img, Automorphism):
            return img.images
        if isinstance(img, tuple) and len(img) == self.depth and all(isinstance(i, AlgebraElement) for i in img):
            return img
        # a single image of the top generator, lower levels fixed
        return tuple(self.generators[:-1]) + (self(img),)

    def _is_hom(self, images: tuple) -> int | None:
        """Index of the first level whose relation fails under the images."""
        chain = self.chain()[1:]
        for level, alg in enumerate(chain):
            mapped = [_evaluate(c, images, self) for c in alg.poly]
            if P.evaluate(mapped, images[level], self.zero) != 0:
                return level
        return None

    def _close_group(self, aut_images, validate: bool) -> list[Automorphism]:
        gens = []
        for i, img in enumerate(aut_images):
            images = self._normalize_images(img)
            if validate:
                bad = self._is_hom(images)
                if bad is not None:
                    raise NotARoot(i)
            aut = Automorphism(self, images)
            if validate:
                rank, _ = P.rank_and_solve(aut.matrix)
                if rank != self.absolute_dimension:
                    raise NotARoot(i, f"automorphism image #{i} does not define a bijection")
            gens.append(aut)
        group = [Automorphism(self, self.generators)]
        seen = {group[0].images}
        frontier = list(group)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    h = g.compose(a)
                    if h.images not in seen:
                        seen.add(h.images)
                        group.append(h)
                        nxt.append(h)
                        if len(group) > MAX_GROUP_ORDER:
                            raise NotClosedUnderComposition("automorphism closure does not terminate")
            frontier = nxt
        return group

    def fixed_by_all(self, x, auts=None) -> bool:
        auts = self.automorphisms if auts is None else auts
        return all(a(x) == x for a in auts)

    def fixed_dimension(self, auts=None) -> int:
        """Dimension over the bottom field of the subalgebra fixed by ``auts``."""
        auts = self.automorphisms if auts is None else auts
        k = self.bottom
        N = self.absolute_dimension
        rows = []
        for a in auts:
            M = a.matrix
            for i in range(N):
                rows.append([M[i][j] - (k.one if i == j else k.zero) for j in range(N)])
        if not rows:
            return N
        rank, _ = P.rank_and_solve(rows)
        return N - rank

    # -- validation -------------------------------------------------------
    def _check_separable(self):
        f = list(self.poly)
        if self.n == 1:
            return
        df = P.derivative(f)
        if all(c == 0 for c in df):
            raise NotSquarefree("derivative of the defining polynomial vanishes")
        df = P.trim(df)
        res = P.det(P.sylvester(f, df, self.base.zero), self.base.zero, self.base.one)
        unit = self.base.is_unit(res) if isinstance(self.base, EtaleAlgebra) else res != 0
        if not unit:
            raise NotSquarefree(f"{self.format_poly()} is not squarefree over {self.base!r}")

    # -- sampling ---------------------------------------------------------
    def random(self, rng: random.Random, height: int = 5) -> AlgebraElement:
        return AlgebraElement(self, tuple(_random_in(self.base, rng, height) for _ in range(self.n)))

    def random_unit(self, rng: random.Random, height: int = 5) -> AlgebraElement:
        while True:
            x = self.random(rng, height)
            if self.is_unit(x):
                return x

    def elements(self):
        """All elements (finite bottom field only)."""
        k = self.bottom
        for vec in itertools.product(k.elements(), repeat=self.absolute_dimension):
            yield self.unflatten(list(vec))

    def units(self):
        return [x for x in self.elements() if self.is_unit(x)]

    @property
    def order(self) -> int:
        return self.bottom.order ** self.absolute_dimension

    # -- display ----------------------------------------------------------
    def format(self, x: AlgebraElement) -> str:
        terms = []
        for i, c in enumerate(x.c):
            if c == 0:
                continue
            cs = _scalar_text(c)
            if isinstance(c, AlgebraElement) or (i and cs.startswith("-")):
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            elif i == 1:
                terms.append(f"{cs}*{self.name}")
            else:
                terms.append(f"{cs}*{self.name}^{i}")
        return " + ".join(terms) if terms else "0"

    def format_poly(self) -> str:
        terms = []
        for i in range(self.n, -1, -1):
            c = self.poly[i]
            if c == 0:
                continue
            mono = "" if i == 0 else self.name if i == 1 else f"{self.name}^{i}"
            cs = _scalar_text(c)
            if isinstance(c, AlgebraElement):
                cs = f"({cs})"
            terms.append(cs if not mono else mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms)

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/({self.format_poly()})"


def _scalar_text(c) -> str:
    return str(c) if isinstance(c, Fraction) else repr(c)


def _random_in(ring, rng, height):
    if isinstance(ring, BaseField):
        return ring.random(rng, height)
    return ring.random(rng, height)


def _base_is_unit(ring, x) -> bool:
    return ring.is_unit(x) if isinstance(ring, EtaleAlgebra) else x != 0


# ---------------------------------------------------------------------------
# constructors


def make_extension(base, poly: Sequence, aut_images: Iterable = (), name: str = "t") -> EtaleAlgebra:
    """Validated ``base[t]/(poly)``.

    ``aut_images`` lists generator images; the automorphism set is closed
    under composition.  Raises :class:`NotSquarefree`, :class:`NotARoot` or
    :class:`NotClosedUnderComposition`.
    """
    return EtaleAlgebra(base, poly, aut_images, name=name)


def frobenius_images(A: EtaleAlgebra) -> tuple:
    p = A.characteristic
    if p == 0:
        raise ValidationError("Frobenius needs a finite bottom field")
    return tuple(g ** p for g in A.generators)


def with_frobenius(base, poly: Sequence, name: str = "t") -> EtaleAlgebra:
    """``base[t]/(poly)`` over a finite tower with its Frobenius-generated group."""
    return EtaleAlgebra(base, poly, lambda A: [frobenius_images(A)], name=name)


def is_irreducible_over_prime_field(f: Sequence, k: BaseField) -> bool:
    """Rabin's test over F_p (any degree) or a rational-root test over Q
    (degree at most 3)."""
    f = P.monic([k(c) for c in f])
    n = len(f) - 1
    if n <= 1:
        return n == 1
    if k.is_finite:
        p = k.p
        x = [k.zero, k.one]
        # x^(p^n) == x mod f
        xp = x
        for _ in range(n):
            xp = P.pow_mod(xp, p, f, k.one)
        if P.trim(P.sub(xp, x)):
            return False
        for d in _prime_divisors(n):
            xq = x
            for _ in range(n // d):
                xq = P.pow_mod(xq, p, f, k.one)
            g = P.gcd(P.sub(xq, x), f)
            if len(g) > 1:
                return False
        return True
    if n > 3:
        raise ValidationError("irreducibility over Q implemented for degree <= 3 only")
    from .forms import rational_roots

    return not rational_roots(f)


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_irreducible(k: BaseField, degree: int) -> list:
    """The lexicographically first monic irreducible of the given degree over F_p."""
    p = k.p
    for tail in itertools.product(range(p), repeat=degree):
        f = [k(c) for c in reversed(tail)] + [k.one]
        if f[0] == 0:
            continue
        if is_irreducible_over_prime_field(f, k):
            return f
    raise ValidationError(f"no irreducible polynomial of degree {degree} over F_{p}")


def finite_field(p: int, degree: int, name: str = "t") -> EtaleAlgebra:
    """F_{p^degree} with its Frobenius automorphism group."""
    k = BaseField(p)
    return with_frobenius(k, find_irreducible(k, degree), name=name)


def primitive_element(A) -> object:
    """A generator of the multiplicative group of a finite field."""
    q = A.order if isinstance(A, EtaleAlgebra) else A.p
    m = q - 1
    primes = _prime_divisors(m)
    elems = A.units() if isinstance(A, EtaleAlgebra) else A.units()
    for g in elems:
        if all(g ** (m // r) != 1 for r in primes):
            return g
    raise ValidationError("no primitive element; not a field?")


# ---------------------------------------------------------------------------
# tensor products


class TensorAlgebra(EtaleAlgebra):
    """``B[t]/(f_A)`` for a simple extension ``A = k[s]/(f_A)`` and any
    tower ``B`` over the same bottom field ``k``.

    Both factors embed; automorphisms of A and B lift componentwise.
    """

    def __init__(self, A: EtaleAlgebra, B, name: str = "u"):
        if not same_ring(A.base, B.bottom):
            raise BaseMismatch("tensor factors must share the bottom field")
        if A.depth != 1:
            raise BaseMismatch("the first tensor factor must be a simple extension of the bottom field")
        self.factor_a = A
        self.factor_b = B
        super().__init__(B, [B(c) for c in A.poly], (), name=name, validate=True)
        self.lifts_a = [self._lift_a(a) for a in A.automorphisms]
        self.lifts_b = [self._lift_b(b) for b in (B.automorphisms if isinstance(B, EtaleAlgebra) else [])]
        gens = [a.images for a in self.lifts_a + self.lifts_b if not a.is_identity()]
        self.automorphisms = self._close_group(gens, validate=True)
        self.is_field = _tensor_is_field(A, B)

    def embed_a(self, a) -> AlgebraElement:
        a = self.factor_a(a)
        return AlgebraElement(self, tuple(self.base(c) for c in a.c))

    def embed_b(self, b) -> AlgebraElement:
        return self(self.factor_b(b))

    def project_a(self, x) -> AlgebraElement:
        """Inverse of :meth:`embed_a`; raises :class:`NotRational` when x is not
        in the image."""
        x = self(x)
        return self.factor_a([descend_to_bottom(c) for c in x.c])

    def project_b(self, x):
        x = self(x)
        if any(x.c[1:]):
            raise NotRational(f"{x!r} does not lie in the second tensor factor")
        return x.c[0]

    def _lift_a(self, aut: Automorphism) -> Automorphism:
        img = aut.images[0]
        images = tuple(self.generators[:-1]) + (self.embed_a(img),)
        return Automorphism(self, images)

    def _lift_b(self, aut: Automorphism) -> Automorphism:
        images = tuple(self(i) for i in aut.images) + (self.gen,)
        return Automorphism(self, images)


def same_ring(a, b) -> bool:
    """Towers are compared by identity, base fields by characteristic."""
    return a is b or (isinstance(a, BaseField) and a == b)


def tensor_extend(A: EtaleAlgebra, B) -> TensorAlgebra:
    """``A ⊗_k B`` realized as ``B[t]/(f_A)``."""
    if isinstance(B, BaseField):
        if not same_ring(A.base, B):
            raise BaseMismatch("tensor factors over different base fields")
        return A
    if not same_ring(A.base, B.bottom):
        raise BaseMismatch("tensor factors over different base fields")
    return TensorAlgebra(A, B)


def _tensor_is_field(A: EtaleAlgebra, B) -> bool | None:
    k = A.base
    fa = is_simple_field(A)
    fb = is_simple_field(B) if isinstance(B, EtaleAlgebra) and B.depth == 1 else None
    if fa is False or fb is False:
        return False
    if fa and fb:
        if igcd(A.n, B.n) == 1:
            return True
        if k.is_finite:
            return False
        if A.n == 2 and B.n == 2:
            from .forms import is_square, poly_disc

            return not is_square(k, poly_disc(list(A.poly)) * poly_disc(list(B.poly)))
    return None


def is_simple_field(A: EtaleAlgebra) -> bool | None:
    if A.depth != 1:
        return None
    try:
        return is_irreducible_over_prime_field(list(A.poly), A.base)
    except ValidationError:
        return None


# ---------------------------------------------------------------------------
# descent


def descend_to_bottom(x):
    """Rewrite a tower element lying in the bottom field as a bottom scalar."""
    while isinstance(x, AlgebraElement):
        if any(x.c[1:]):
            raise NotRational(f"{x!r} does not lie in the base field")
        x = x.c[0]
    return x


def descend(x, target):
    """Coerce ``x`` down its own tower to the subring ``target``."""
    while isinstance(x, AlgebraElement) and x.parent is not target:
        if any(x.c[1:]):
            raise NotRational(f"{x!r} does not lie in {target!r}")
        x = x.c[0]
    if isinstance(target, BaseField):
        return target(x)
    return x


def galois_descend(x, auts, target):
    """Check x is fixed by every automorphism in ``auts`` and coerce to ``target``."""
    for a in auts:
        if a(x) != x:
            raise NotRational(f"{x!r} is not fixed by {a!r}")
    return descend(x, target)


def norm_one_element(u) -> AlgebraElement:
    """``u^n / N(u)``: an element of relative norm 1 in a degree-n algebra."""
    A = u.parent
    N = A.norm(u)
    N_inv = A.base.inverse(N) if isinstance(A.base, EtaleAlgebra) else 1 / N
    return (u ** A.n) * A(N_inv)
