"""Named example groups, maps, and dynamics scenarios.

Everything the tests, demos, and the command line refer to by name lives
here.  Names are stable strings; look-ups are case-sensitive.
"""

from __future__ import annotations

from .coarsemaps import CoarseMap, identity_map
from .errors import InvalidElementError
from .groups import (FiniteGroup, FreeGroup, InfiniteDihedral, IntLattice,
                     ProductGroup, cyclic_group, finite_dihedral,
                     trivial_group)

# -- groups ----------------------------------------------------------------

_GROUP_MAKERS = {
    "Z": lambda: IntLattice(1),
    "Z2": lambda: IntLattice(2),
    "F2": lambda: FreeGroup(2),
    "Dinf": lambda: InfiniteDihedral(),
    "triv": lambda: trivial_group(),
    "Z/2": lambda: cyclic_group(2),
    "Z/3": lambda: cyclic_group(3),
    "Z/4": lambda: cyclic_group(4),
    "Z/6": lambda: cyclic_group(6),
    "D3": lambda: finite_dihedral(3),
    "Z/2xZ/2": lambda: ProductGroup(cyclic_group(2), cyclic_group(2)),
}


def group_names():
    return sorted(_GROUP_MAKERS)


def get_group(name: str):
    """
    >>> get_group("Z/6").order()
    6
    """
    if name not in _GROUP_MAKERS:
        raise InvalidElementError(
            f"unknown group name {name!r}; known: {', '.join(group_names())}")
    return _GROUP_MAKERS[name]()


# -- coarse maps -------------------------------------------------------------

def _z_double():
    Z = IntLattice(1)
    return CoarseMap(Z, Z, lambda x: (2 * x[0],), name="z-double")


def _z_double_floor():
    Z = IntLattice(1)
    return CoarseMap(Z, Z, lambda x: (2 * (x[0] // 2),), name="z-double-floor")


def _z_double_shift():
    Z = IntLattice(1)
    return CoarseMap(Z, Z, lambda x: (2 * x[0] + 1,), name="z-double-shift")


def _z_abs():
    Z = IntLattice(1)
    return CoarseMap(Z, Z, lambda x: (abs(x[0]),), name="z-abs")


def _z_parity_shift():
    Z = IntLattice(1)
    return CoarseMap(Z, Z, lambda x: (x[0] + x[0] % 2,), name="z-parity-shift")


def _z_into_z2():
    Z, Z2 = IntLattice(1), IntLattice(2)
    return CoarseMap(Z, Z2, lambda x: (x[0], 0), name="z-into-z2")


def _f2_abelianize():
    F2, Z2 = FreeGroup(2), IntLattice(2)

    def rule(w):
        a = sum(1 if c == 1 else -1 for c in w if abs(c) == 1)
        b = sum(1 if c == 2 else -1 for c in w if abs(c) == 2)
        return (a, b)

    return CoarseMap(F2, Z2, rule, name="f2-abelianize")


def _z_to_dihedral():
    Z, D = IntLattice(1), InfiniteDihedral()
    return CoarseMap(Z, D, lambda x: (x[0], 0), name="z-to-dihedral")


def _triv_into_z2():
    T, C2 = trivial_group(), cyclic_group(2)
    return CoarseMap(T, C2, lambda g: 0, name="triv-into-z2")


def _z2_to_z3_const():
    C2, C3 = cyclic_group(2), cyclic_group(3)
    return CoarseMap(C2, C3, lambda g: 0, name="z2-to-z3-const")


def _z4_mod_z2():
    C4, C2 = cyclic_group(4), cyclic_group(2)
    return CoarseMap(C4, C2, lambda g: g % 2, name="z4-mod-z2")


_MAP_MAKERS = {
    "z-double": _z_double,
    "z-double-floor": _z_double_floor,
    "z-double-shift": _z_double_shift,
    "z-abs": _z_abs,
    "z-parity-shift": _z_parity_shift,
    "z-into-z2": _z_into_z2,
    "f2-abelianize": _f2_abelianize,
    "z-to-dihedral": _z_to_dihedral,
    "z-identity": lambda: CoarseMap(IntLattice(1), IntLattice(1),
                                lambda x: x, name="z-identity"),
    "triv-into-z2": _triv_into_z2,
    "z2-to-z3-const": _z2_to_z3_const,
    "z4-mod-z2": _z4_mod_z2,
}


def map_names():
    return sorted(_MAP_MAKERS)


def get_map(name: str) -> CoarseMap:
    """
    >>> get_map("z-double")((3,))
    (6,)
    >>> get_map("f2-abelianize")((1, 2, -1))
    (0, 1)
    """
    if name not in _MAP_MAKERS:
        raise InvalidElementError(
            f"unknown map name {name!r}; known: {', '.join(map_names())}")
    return _MAP_MAKERS[name]()


# -- dynamics scenarios ------------------------------------------------------

def scenario_names():
    return ["dihedral-flip", "product-coupling", "z4-z2-kakutani",
            "z4-z2-twist"]


def get_scenario(name: str):
    """Named finite coupling scenarios; imported lazily to keep the
    group/map part of the gallery free of dynamics dependencies."""
    from . import dynamics

    if name == "product-coupling":
        return dynamics.product_coupling(cyclic_group(4), cyclic_group(2))
    if name == "z4-z2-twist":
        return dynamics.twisted_coupling(
            cyclic_group(4), cyclic_group(2),
            rho={0: 0, 1: 1})
    if name == "dihedral-flip":
        # right factor acts through the flip of the triangle group
        return dynamics.twisted_coupling(
            finite_dihedral(3), cyclic_group(2),
            rho={0: 0, 1: 3})
    if name == "z4-z2-kakutani":
        coup = dynamics.product_coupling(cyclic_group(4), cyclic_group(2))
        return dynamics.coupling_to_couple(coup)
    raise InvalidElementError(
        f"unknown scenario {name!r}; known: {', '.join(scenario_names())}")
