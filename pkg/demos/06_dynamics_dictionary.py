"""The finite dictionary: coupling -> orbit couple -> Kakutani -> back.

A coupling is a finite space with commuting free left/right actions and
fundamental domains for each.  From it the package extracts an orbit
couple (two orbit-preserving maps with cocycles), rebuilds a coupling,
and checks the explicit isomorphism; the couple in turn yields Kakutani
data (an exchange bijection between full subsets intertwining the
restricted actions) and can be recovered from it.
"""

from coarsehom import dynamics as dy
from coarsehom.gallery import get_scenario

# the product coupling of Z/4 and Z/2
coup = get_scenario("product-coupling")
print("coupling axioms:", coup.validate())

couple = dy.coupling_to_couple(coup)
print("\norbit couple identities:", couple.validate())
print("orbit map p:", couple.p)
print("cocycle a at the generator:",
      {x: couple.a[(1, x)] for x in couple.actX.points})

rt = dy.roundtrip_iso_check(coup)
print("\nround trip coupling -> couple -> coupling:",
      {k: v for k, v in rt.items() if isinstance(v, bool)})

# the couple yields Kakutani data: an exchange map between full subsets
kak = dy.couple_to_kakutani(couple)
print("\nKakutani data:", kak.validate())
print("A:", kak.A, " B:", kak.B, " exchange:", kak.phi)

back = dy.kakutani_to_couple(kak)
print("rebuilt couple from the Kakutani data:", back.validate()["ok"])

# the twisted coupling moves the right action through a pointer map;
# the induced cocycles become nontrivial
tw = get_scenario("z4-z2-twist")
couple_tw = dy.coupling_to_couple(tw)
print("\ntwisted couple cocycle b:", couple_tw.b)
print("twisted round trip:", dy.roundtrip_iso_check(tw)["ok"])
