# The twisted D4 space over a cubic extension, counted over a finite field
#
# Over F_q the space is finite, so its orbits can be listed outright.  The
# census compares the count per splitting type with the number predicted by
# Galois cohomology.

# %%
from pvext import case2 as C2
from pvext.oracle import enumerate_orbits, split_action_check

report = enumerate_orbits(2, 3, samples=20)
print("points       :", report.total_points)
print("semistable   :", report.semistable_count)
print("orbits       :", report.orbit_count)

# %% Orbit sizes and labels

for o in report.orbits:
    print(f"{o.size:6d}  {o.label}")

# %% Enumerated against predicted

print(report.fiber_table)
print(report.predicted)
print("match:", report.matches)

# %% The representative of the trivial fiber lands in the orbit with the
# split label.

T = report.tower
w = C2.rep2(T, "trivial", beta=(1, 1))
print(report.orbit_of(w).label, C2.field_label2(w))

# %% Over the split algebra F_q^3 the space unfolds into eight coordinates.
# The discriminant and the action can be recomputed there independently.

print(split_action_check(3, samples=50))
