# Pairs of binary Hermitian forms over Q(i)
#
# A point is a pair (x1, x2) of 2x2 Hermitian matrices.  Its invariant is the
# binary quadratic F_x(v) = det(v1 x1 + v2 x2), and the splitting field of F_x
# labels the orbit.

# %%
import random

from pvext import BaseField
from pvext import case1 as C1
from pvext.common import quadratic_algebra

Q = BaseField(0)
k1 = quadratic_algebra(Q, 0, 1, name="i")   # Q[i]/(i^2 + 1)
k1

# %% The split representative w has F = v1 v2, a product of two lines.

w = C1.make_w1(k1)
print("F_w     =", C1.F1(w))
print("Delta   =", C1.delta1(w)[0])
print("label   =", C1.classify1(w))

# %% For a quadratic f the representative w_alpha(f) has F proportional to f.
# Here f = v1^2 + v1 v2 + v2^2 cuts out Q(sqrt -3).

x = C1.make_w_alpha1(k1, (1, 1))
print("F_x     =", C1.F1(x))
print("label   =", C1.classify1(x))

# %% Move x by a random group element.  The label stays put and Delta
# rescales by N(det g1)^2 det(g2)^2.

rng = random.Random(1)
g = C1.GrpElt1(k1,
               [[k1.random(rng, 3) for _ in range(2)] for _ in range(2)],
               [[Q(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)])
y = C1.act1(g, x)
print("label(gx) =", C1.classify1(y))
print("Delta(gx) / Delta(x) =", C1.delta1(y)[0] / C1.delta1(x)[0])
