"""Decide whether a cycle bounds inside a finite window, with receipts.

The solver assembles the boundary matrix over all candidate points
whose coordinates stay in chosen balls, Smith-reduces it, and either
returns a preimage (re-checked through the boundary operator) or the
exact integer obstruction.  A negative verdict only rules out the
window and says so.
"""

from coarsehom.complexes import Chain, boundary
from coarsehom.groups import IntLattice
from coarsehom.homology import is_boundary_window
from coarsehom.rings import ring_from_name

Z = IntLattice(1)
ZR = ring_from_name("Z")

# the boundary of something is certainly a boundary; the solver finds a
# (possibly different) preimage and re-verifies it
c = Chain(Z, ZR, 1, 2)
c.add_at((0,), ((1,), (2,)), (1,))
c.add_at((2,), ((2,), (1,)), (-3,))
cycle = boundary(c)
res = is_boundary_window(cycle, 4, 4)
print("verdict:", res["verdict"], "window:", res["window"])
print("preimage re-checked:", boundary(res["preimage"]) == cycle)

# a degree-0 point mass has augmentation 1 and never bounds; the
# obstruction names the exact failing position
pt = Chain(Z, ZR, 1, 0)
pt.add_at((0,), (), (1,))
res = is_boundary_window(pt, 3, 3)
print("\npoint mass verdict:", res["verdict"])
print("obstruction:", res["obstruction"])

# a difference of two distant points bounds globally but not inside a
# small window; growing the window flips the verdict honestly
far = Chain(Z, ZR, 1, 0)
far.add_at((10,), (), (1,))
far.add_at((0,), (), (-1,))
small = is_boundary_window(far, 3, 3)
big = is_boundary_window(far, 10, 10)
print("\ndistance-10 difference, window 3:", small["verdict"],
      "| window 10:", big["verdict"])
