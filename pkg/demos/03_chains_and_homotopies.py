"""Chains, two boundary routes, and the homotopy between close maps.

Chains live on points (x, (g1, ..., gn)); the boundary drops the first
entry (translating the base point), merges neighbours, or drops the
last.  The same operator can be computed through slices, and close maps
induce chain-homotopic maps with an explicit homotopy.
"""

from coarsehom.complexes import (Chain, bar_boundary, boundary, homotopy_k,
                                 induced_chain_map, random_chain)
from coarsehom.gallery import get_map
from coarsehom.groups import IntLattice
from coarsehom.rings import ring_from_name

Z = IntLattice(1)
ZR = ring_from_name("Z")

# one point mass in degree 2 and its boundary
c = Chain(Z, ZR, 1, 2)
c.add_at((0,), ((1,), (2,)), (1,))
print("chain:", c.to_json())
print("boundary:", boundary(c).to_json())
print("boundary of boundary is zero:", boundary(boundary(c)).is_zero())

# the slice route computes the same operator through the bar picture
r = random_chain(Z, ZR, 1, 3, 3, terms=5, seed=7)
print("\nrandom degree-3 chain, both boundary routes agree:",
      boundary(r) == bar_boundary(r))

# doubling and shifted doubling are close, so their induced chain maps
# differ by a boundary: dk + kd = D(shifted) - D(doubling)
phi, psi = get_map("z-double"), get_map("z-double-shift")
c = random_chain(Z, ZR, 1, 2, 3, terms=4, seed=21)
lhs = boundary(homotopy_k(phi, psi, c)) + homotopy_k(phi, psi, boundary(c))
rhs = induced_chain_map(psi, c) - induced_chain_map(phi, c)
print("\nhomotopy identity dk + kd = D(psi) - D(phi):", lhs == rhs)
