# Pairs of ternary Hermitian forms: from roots to representatives
#
# For a separable cubic f with roots a1, a2, a3 the Vandermonde pair
# (P, Q) carries the diagonal point w to w_alpha(f).  The identity is checked
# in the splitting algebra and the result descended back to the base field.

# %%
from pvext import BaseField
from pvext import case3 as C3
from pvext.common import quadratic_algebra
from pvext.rootdata import universal_root_data

Q = BaseField(0)
k1 = quadratic_algebra(Q, 0, 1, name="i")

# %% x^3 - 2 has Galois group S3.  Its universal splitting algebra has
# dimension 6.

data = universal_root_data(Q, (0, 0, -2))
print(data.splitting)
out = C3.lemma_check(Q, data)
for row in out["x1"]:
    print(row)

# %% The representative for this fiber and its invariants

x = C3.rep3(k1, "s3_cubic", f=(0, 0, -2), beta=(1, 0, 1))
print("F_x   =", C3.F3(x))
print("label =", C3.classify3(x))

# %% The k1 fiber: its cubic splits over k1 into a line and a quadratic.

y = C3.rep3(k1, "kone")
print("F_y   =", C3.F3(y))
print("label =", C3.classify3(y))
