"""Walk through the discriminant form of 2U(4) + A1 and its reflective cosets.

Run with ``python3 demos/discriminant_tour.py``.
"""

from collections import Counter
from fractions import Fraction

from reflex.dataset import load_dataset
from reflex.lattice import enumerate_cosets, pm_classes
from reflex.reflect import classify_reflective, induced_reflection, in_discriminant_kernel

ds = load_dataset("appendix_a")
lat, g = ds.lattice, ds.group

print(f"{ds.lattice_name}: rank {lat.rank}, signature {lat.signature}, det {lat.det}")
print("D =", " x ".join(f"Z/{f}" for f in g.invariant_factors), f"(order {g.order})")

# how the 512 cosets spread over (order, norm mod 2)
table = Counter((u.order, u.norm) for u in g.elements)
for (order, norm), n in sorted(table.items()):
    print(f"  order {order}  norm {str(norm):>4}  : {n}")

# norm 1/2 cosets of order 4 pair up as +-u: these carry the singular-weight products
quarter = enumerate_cosets(g, 4, "1/2")
print(len(quarter), "order-4 cosets of norm 1/2 in", len(pm_classes(quarter)), "+- classes")

# each is reflective for (r, r) = 1/2, i.e. d = 4
u = quarter[0]
rc = classify_reflective(u, Fraction(1, 2))
sigma = induced_reflection(rc)
print(f"{u}: d = {rc.d}, moves {sigma.moved} of {g.order} cosets")

# order-2 norm-1/2 cosets are reflective too, but their reflections fix D pointwise
half = enumerate_cosets(g, 2, "1/2")
trivial = [in_discriminant_kernel(induced_reflection(classify_reflective(v, Fraction(1, 2)))) for v in half]
print(f"{len(half)} order-2 cosets of norm 1/2; reflections trivial on D: {all(trivial)}")
