#!/usr/bin/env python3
"""Everything the kernel does, once, on the smallest interesting category.

Builds the walking arrow 0 -> 1, looks at its presheaves, sends an object
through the unit, extends a one-slot map along it, and watches the
collapse cell invert.  Run it; read the prints next to the code.
"""

from relmonad import FinCategory, strengthen, theta_cell, unit_map
from relmonad.kan import unit_cell
from relmonad.presheaf import coproduct_presheaves, representable

# the walking arrow: objects 0, 1; morphisms id0, id1, and f : 0 -> 1
arrow = FinCategory(
    "arrow",
    2,
    [0, 1, 0],
    [0, 1, 1],
    [0, 1],
    {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2},
)

print("category:", arrow)
for a in arrow.objects:
    for b in arrow.objects:
        print(f"  hom({a}, {b}) = {list(arrow.hom(a, b))}")

# a presheaf assigns a finite set to each object and a map to each morphism,
# contravariantly.  The representable at 1 is hom(-, 1).
y1 = representable(arrow, 1)
print("\nrepresentable at 1:", [len(y1.at[x]) for x in arrow.objects], "elements per object")

# the unit views each object through its representable
eta = unit_map(arrow)
print("unit at 0 has sizes", [len(eta.evaluate((0,)).at[x]) for x in arrow.objects])

# glue two representables: a presheaf that is not representable
glued, _ = coproduct_presheaves([representable(arrow, 0), y1])
print("glued presheaf sizes:", [len(glued.at[x]) for x in arrow.objects])

# extend the unit itself along its only slot: the slot now accepts whole
# presheaves instead of objects
ext = strengthen(eta, 0)
val = ext.evaluate((glued,))
print("\nextension of the unit at the glued presheaf:",
      [len(val.at[x]) for x in arrow.objects])
print("  (extending the unit is a no-op up to iso: same sizes as the input)")

# the collapse cell compares that round trip against the identity, and it
# is a pointwise bijection: that is the lax-idempotency of the construction
th = theta_cell(arrow)
for p in (glued, y1):
    comp = th.component((p,))
    print(f"collapse at sizes {[len(p.at[x]) for x in arrow.objects]}:",
          "bijective" if comp.is_bijection() else "NOT bijective")

# the unit cell exhibits the extension as agreeing with the original map
# on objects sent through the unit
cell = unit_cell(eta, 0)
comp = cell.component((0,))
print("unit comparison at object 0 is",
      "bijective" if comp.is_bijection() else "NOT bijective")
