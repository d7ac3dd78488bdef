"""Prime fields and the rationals.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field values are
:class:`FpElement` instances.  Both support the usual operators, so code
further up the tower never branches on the kind of base field.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FpElement:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise TypeError(f"cannot mix F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> FpElement:
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FpElement(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by 0 in F_{self.p}")
        return FpElement(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return FpElement(self._coerce(other), self.p) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            o = self._coerce(other)
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v}"


class BaseField:
    """The rationals (``p == 0``) or the prime field F_p."""

    def __init__(self, p: int = 0):
        if p != 0 and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    @classmethod
    def rationals(cls) -> BaseField:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> BaseField:
        return cls(p)

    @property
    def kind(self) -> str:
        return "Q" if self.p == 0 else "Fp"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def order(self) -> int:
        if self.p == 0:
            raise ValueError("Q is infinite")
        return self.p

    # tower protocol: a base field is the bottom of every tower
    @property
    def bottom(self) -> BaseField:
        return self

    @property
    def depth(self) -> int:
        return 0

    @property
    def absolute_dimension(self) -> int:
        return 1

    def chain(self) -> list:
        return [self]

    def __call__(self, x):
        if self.p == 0:
            if isinstance(x, FpElement):
                raise TypeError("cannot coerce a finite-field value into Q")
            if isinstance(x, str):
                return Fraction(x)
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} into Q")
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise TypeError(f"cannot coerce F_{x.p} value into F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return FpElement(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, int):
            return FpElement(x, self.p)
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def contains(self, x) -> bool:
        if self.p == 0:
            return isinstance(x, Fraction)
        return isinstance(x, FpElement) and x.p == self.p

    def flatten(self, x) -> list:
        return [self(x)]

    def unflatten(self, vec):
        (x,) = vec
        return self(x)

    def elements(self):
        if self.p == 0:
            raise ValueError("Q is infinite")
        return [FpElement(i, self.p) for i in range(self.p)]

    def units(self):
        return [FpElement(i, self.p) for i in range(1, self.p)]

    def random(self, rng: random.Random, height: int = 9):
        """Uniform over F_p; over Q a fraction with numerator and denominator
        bounded by ``height``."""
        if self.p:
            return FpElement(rng.randrange(self.p), self.p)
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        return Fraction(num, den)

    def random_unit(self, rng: random.Random, height: int = 9):
        while True:
            x = self.random(rng, height)
            if x != 0:
                return x

    def __eq__(self, other):
        return isinstance(other, BaseField) and other.p == self.p

    def __hash__(self):
        return hash(("BaseField", self.p))

    def __repr__(self):
        return "Q" if self.p == 0 else f"F{self.p}"


QQ = BaseField(0)


def is_perfect_square_int(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _trial_divide(n: int, bound: int) -> tuple[dict[int, int], int]:
    """Strip the prime factors up to ``bound``; returns them and the cofactor."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n and d <= bound:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1 and d * d > n:
        # what is left has no factor up to its square root
        out[n] = out.get(n, 0) + 1
        n = 1
    return out, n


def trial_factor(n: int, bound: int = 10**6) -> dict[int, int]:
    """Factor ``|n|`` by trial division up to ``bound``.

    The leftover cofactor is accepted as prime when it is below ``bound**2``,
    and as a square when it is a perfect square below ``bound**4``.
    Anything else raises :class:`~pvext.errors.FactorBoundExceeded`.
    """
    from .errors import FactorBoundExceeded

    out, n = _trial_divide(n, bound)
    if n > 1:
        if n < bound * bound:
            out[n] = out.get(n, 0) + 1
        else:
            r = isqrt(n)
            if r * r == n and r < bound * bound:
                out[r] = out.get(r, 0) + 2
            else:
                raise FactorBoundExceeded(f"cofactor {n} exceeds trial-division bound {bound}")
    return out


def _core_of_int(n: int, bound: int) -> int:
    from .errors import FactorBoundExceeded

    out, rest = _trial_divide(n, bound)
    core = 1
    for prime, e in out.items():
        if e % 2:
            core *= prime
    if rest > 1:
        # every prime factor of rest exceeds bound, so below bound^3 it is
        # p, p^2 or p*q and its core is 1 or rest itself
        if is_perfect_square_int(rest):
            pass
        elif rest < bound ** 3:
            core *= rest
        else:
            raise FactorBoundExceeded(f"cofactor {rest} exceeds trial-division bound {bound}")
    return core


def squarefree_core(x, bound: int = 10**6) -> int:
    """The squarefree integer ``c`` with ``x = c * (rational square)``."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("0 has no squarefree core")
    sign = -1 if x < 0 else 1
    core = 1
    # x = n/d ~ n*d modulo squares
    for part in (x.numerator, x.denominator):
        core *= _core_of_int(part, bound)
    # n and d are coprime, so their cores multiply without cancellation
    return sign * core
