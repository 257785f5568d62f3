"""Build the coarse inverse of an embedding and see its closed form.

The inverse omega is assembled greedily: the target is partitioned into
translates h . phi(X) and each block is pulled back through the stored
section.  For doubling, the result is the floor-halving map.
"""

from coarsehom.coarsemaps import omega
from coarsehom.gallery import get_map

phi = get_map("z-double")
om, partition = omega(phi, prefix=10)

print("partition blocks (coset representatives of the image):",
      [h for h, _ in partition.block_items()])

print("\n y  omega(y)")
for y in range(-6, 7):
    print(f"{y:3d}  {om((y,))[0]:3d}")

# omega retracts phi to the identity: the difference set of
# omega(phi(x)) against x collapses to the identity element
diff = om.closeness_to_identity(10)
print("\ndifference set of omega . phi against the identity on ball(10):",
      diff)

# omega is itself a coarse map, so it can be checked like any other
from coarsehom.coarsemaps import check_coarse_map
print("\nomega checked as a coarse map:",
      check_coarse_map(om, 8)["verdict"])
