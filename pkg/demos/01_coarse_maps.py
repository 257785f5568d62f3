"""Certify and falsify coarse maps on balls, with explicit witnesses.

A coarse map has finite fibers and finite displacement sets; a coarse
embedding also bounds source distances by target distances.  Checks run
on a ball of chosen radius and return "certified-up-to-r", "falsified"
(with a witness), or "inconclusive".
"""

import json

from coarsehom.coarsemaps import check_coarse_embedding, check_coarse_map
from coarsehom.gallery import get_map


def jsonable(value):
    # reports key some tables by group elements (tuples); stringify keys
    # and turn tuples into lists so json can print them
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def show(title, report):
    print(f"--- {title}")
    print(json.dumps(jsonable(report), indent=2, sort_keys=True, default=str))
    print()


# doubling is a coarse embedding of the integers into themselves
phi = get_map("z-double")
show("x -> 2x as a coarse map, radius 8", check_coarse_map(phi, 8))
show("x -> 2x as a coarse embedding", check_coarse_embedding(phi, 8))

# absolute value is a coarse map but folds the line onto a ray: the
# pair (r, -r) has target distance 0 at every r, so the reverse bound
# fails with an explicit witness pair
psi = get_map("z-abs")
rep = check_coarse_embedding(psi, 10)
show("absolute value as a coarse embedding", rep)
print("witness pair mapped to equal points:",
      rep["reverse_witness"]["pair"])

# abelianization of the free group has exponentially growing fibers:
# every word with zero exponent sums lands on the lattice origin
chi = get_map("f2-abelianize")
rep = check_coarse_map(chi, 6)
print("abelianization properness verdict:", rep["verdict"])
print("coincident preimages of one lattice point in ball(6):",
      rep["max_fiber_size"])
