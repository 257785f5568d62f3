"""Chains, cochains, and the maps coarse geometry induces on them.

The complex lives on the pair groupoid of the translation action: a
degree-n chain is a finitely supported function on composable n-tuples,
coordinatized as (x, (g_1, ..., g_n)) with x the range unit.  The same
data regrouped by the tuple part is a bar-type chain: a finitely
supported function on G^n with values in the module of finitely
supported functions on G.  chi and chi_inv convert between the two
pictures; the boundary is implemented twice, once pointwise on the
groupoid picture and once by the slice formulas, as independent routes
for cross-checking.

A coarse map phi induces a chain map through
phi1(x, g) = (phi(x), phi(x) phi(g^-1 x)^-1) applied entrywise, and a
cochain map by precomposition.  Close maps are chain homotopic; the
homotopy interleaves the two induced maps with a comparison arrow
theta(x) = (phi(x), phi(x) psi(x)^-1) in every slot, with alternating
signs.  The identity these satisfy is

    boundary . k  +  k . boundary  =  induced(psi) - induced(phi)

(second map minus first), and dually for cochains; the degree-0 case is
a two-line computation and the tests pin the general one numerically.
"""

from __future__ import annotations

import random

from .coarsemaps import CoarseMap, compose, identity_map
from .errors import GroupMismatchError, InvalidElementError
from .groups import Group
from .resmodules import FinSupFun
from .rings import Ring, ring_from_name, vec_add, vec_is_zero, vec_neg


class Chain:
    """Finitely supported degree-n chain, stored by points (x, gvec).

    >>> from .groups import IntLattice
    >>> from .rings import Integers
    >>> Z = IntLattice(1)
    >>> c = Chain(Z, Integers(), 1, 1)
    >>> c[(0,), ((2,),)] = (1,)
    >>> boundary(c).slices()[()].to_json()["support"]
    [[[0], [-1]], [[-2], [1]]]
    """

    def __init__(self, group: Group, ring: Ring, rank: int, degree: int,
                 points=None):
        if degree < 0:
            raise InvalidElementError("chain degree must be nonnegative")
        self.group = group
        self.ring = ring
        self.rank = rank
        self.degree = degree
        self.data = {}
        if points:
            for (x, gvec), v in points.items():
                self[x, gvec] = v

    def __setitem__(self, key, v):
        x, gvec = key
        self.group.check_element(x)
        if len(gvec) != self.degree:
            raise InvalidElementError(
                f"tuple {gvec!r} has length {len(gvec)}, "
                f"expected degree {self.degree}")
        for g in gvec:
            self.group.check_element(g)
        v = tuple(self.ring.normalize(c) for c in v)
        if len(v) != self.rank:
            raise InvalidElementError("value has the wrong rank")
        if vec_is_zero(self.ring, v):
            self.data.pop((x, gvec), None)
        else:
            self.data[(x, gvec)] = v

    def __getitem__(self, key):
        return self.data.get(tuple(key),
                             tuple(self.ring.zero()
                                   for _ in range(self.rank)))

    def add_at(self, x, gvec, v):
        cur = self.data.get((x, gvec))
        if cur is None:
            self[x, gvec] = v
        else:
            self[x, gvec] = vec_add(self.ring, cur, v)

    def is_zero(self):
        return not self.data

    def _check_compatible(self, other):
        if (self.group != other.group or self.ring != other.ring
                or self.rank != other.rank or self.degree != other.degree):
            raise GroupMismatchError("chains are not compatible")

    def __add__(self, other):
        self._check_compatible(other)
        out = self.copy()
        for (x, gvec), v in other.data.items():
            out.add_at(x, gvec, v)
        return out

    def __neg__(self):
        return Chain(self.group, self.ring, self.rank, self.degree,
                     {p: vec_neg(self.ring, v) for p, v in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring.normalize(c)
        return Chain(self.group, self.ring, self.rank, self.degree,
                     {p: tuple(self.ring.mul(c, t) for t in v)
                      for p, v in self.data.items()})

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.group == other.group and self.ring == other.ring
                and self.rank == other.rank and self.degree == other.degree
                and self.data == other.data)

    def copy(self):
        return Chain(self.group, self.ring, self.rank, self.degree,
                     dict(self.data))

    def __repr__(self):
        return (f"Chain(deg={self.degree}, {self.ring.name}^{self.rank}, "
                f"{len(self.data)} points)")

    # -- slice picture ------------------------------------------------------
    def slices(self):
        """Regroup by the tuple part: gvec -> FinSupFun in x."""
        out = {}
        for (x, gvec), v in self.data.items():
            f = out.get(gvec)
            if f is None:
                f = out[gvec] = FinSupFun(self.group, self.ring, self.rank)
            f[x] = v
        return out

    def _tuple_key(self, gvec):
        wl, sk = self.group.word_length, self.group.sort_key
        return tuple((wl(g), sk(g)) for g in gvec)

    def to_json(self):
        sl = self.slices()
        order = sorted(sl, key=self._tuple_key)
        return {"degree": self.degree,
                "slices": [[[self.group.element_to_json(g) for g in gvec],
                            sl[gvec].to_json()] for gvec in order]}

    @classmethod
    def from_json(cls, group: Group, obj) -> "Chain":
        degree = obj["degree"]
        slices = {}
        for gvec_json, fun_json in obj["slices"]:
            gvec = tuple(group.element_from_json(g) for g in gvec_json)
            if gvec in slices:
                raise InvalidElementError(
                    f"duplicate slice {gvec_json!r} in chain JSON")
            slices[gvec] = FinSupFun.from_json(group, fun_json)
        if not slices:
            raise InvalidElementError(
                "chain JSON needs at least one slice to fix ring and rank")
        some = next(iter(slices.values()))
        return chi(group, some.ring, some.rank, degree, slices)


def chi(group: Group, ring: Ring, rank: int, degree: int, slices) -> Chain:
    """Bar picture to groupoid picture: slices {gvec: FinSupFun} become
    point masses chain(x, gvec) = slice[gvec](x)."""
    out = Chain(group, ring, rank, degree)
    for gvec, f in slices.items():
        if len(gvec) != degree:
            raise InvalidElementError(
                f"slice tuple {gvec!r} does not match degree {degree}")
        if f.group != group or f.ring != ring or f.rank != rank:
            raise GroupMismatchError("slice function over the wrong module")
        for x, v in f.data.items():
            out.add_at(x, tuple(gvec), v)
    return out


def chi_inv(chain: Chain):
    """Groupoid picture back to bar picture (exact inverse of chi)."""
    return chain.slices()


# -- boundary, two independent routes ---------------------------------------

def _faces(group: Group, x, gvec):
    """Faces of the composable tuple coordinatized as (x, gvec)."""
    n = len(gvec)
    out = [(group.mul(group.inv(gvec[0]), x), gvec[1:])]
    for i in range(n - 1):
        merged = gvec[:i] + (group.mul(gvec[i], gvec[i + 1]),) + gvec[i + 2:]
        out.append((x, merged))
    out.append((x, gvec[:-1]))
    return out


def boundary(chain: Chain) -> Chain:
    """Alternating sum of the face pushforwards, computed point by point."""
    n = chain.degree
    out = Chain(chain.group, chain.ring, chain.rank, max(n - 1, 0))
    if n == 0:
        return out
    ring = chain.ring
    for (x, gvec), v in chain.data.items():
        for i, (fx, fg) in enumerate(_faces(chain.group, x, gvec)):
            out.add_at(fx, fg, v if i % 2 == 0 else vec_neg(ring, v))
    return out


def bar_boundary(chain: Chain) -> Chain:
    """The same boundary by the slice formulas: the first face translates
    the slice by the dropped letter, middle faces merge adjacent letters,
    the last face drops the final letter.  Independent of boundary()."""
    n = chain.degree
    G = chain.group
    out_slices = {}

    def add_slice(gvec, f, sign):
        cur = out_slices.get(gvec)
        add = f if sign > 0 else -f
        out_slices[gvec] = add if cur is None else cur + add

    if n == 0:
        return Chain(G, chain.ring, chain.rank, 0)
    for gvec, f in chain.slices().items():
        add_slice(gvec[1:], f.translate(G.inv(gvec[0])), +1)
        for i in range(n - 1):
            merged = (gvec[:i] + (G.mul(gvec[i], gvec[i + 1]),)
                      + gvec[i + 2:])
            add_slice(merged, f, +1 if (i + 1) % 2 == 0 else -1)
        add_slice(gvec[:-1], f, +1 if n % 2 == 0 else -1)
    out_slices = {gv: f for gv, f in out_slices.items() if not f.is_zero()}
    return chi(G, chain.ring, chain.rank, n - 1, out_slices)


# -- cochains -----------------------------------------------------------------

class Cochain:
    """Degree-n cochain: any rule (gvec, x) -> value vector.

    No support condition; equality is only decidable on windows, so the
    class carries a value() method and window comparison.
    """

    def __init__(self, group: Group, ring: Ring, rank: int, degree: int,
                 rule, name="cochain"):
        self.group = group
        self.ring = ring
        self.rank = rank
        self.degree = degree
        self.rule = rule
        self.name = name

    def value(self, gvec, x):
        if len(gvec) != self.degree:
            raise InvalidElementError(
                f"cochain of degree {self.degree} evaluated on {gvec!r}")
        v = self.rule(tuple(gvec), x)
        return tuple(self.ring.normalize(c) for c in v)

    def __add__(self, other):
        if (self.group != other.group or self.ring != other.ring
                or self.rank != other.rank or self.degree != other.degree):
            raise GroupMismatchError("cochains are not compatible")
        return Cochain(self.group, self.ring, self.rank, self.degree,
                       lambda gvec, x: vec_add(self.ring,
                                               self.value(gvec, x),
                                               other.value(gvec, x)),
                       name=f"({self.name}+{other.name})")

    def __neg__(self):
        return Cochain(self.group, self.ring, self.rank, self.degree,
                       lambda gvec, x: vec_neg(self.ring,
                                               self.value(gvec, x)),
                       name=f"(-{self.name})")

    def __sub__(self, other):
        return self + (-other)

    def equal_on_window(self, other, radius: int) -> bool:
        """Compare on all (gvec, x) with entries from ball(radius)."""
        ball = self.group.ball(radius)
        tuples = [()]
        for _ in range(self.degree):
            tuples = [t + (g,) for t in tuples for g in ball]
        for gvec in tuples:
            for x in ball:
                if self.value(gvec, x) != other.value(gvec, x):
                    return False
        return True

    def is_zero_on_window(self, radius: int) -> bool:
        zero = Cochain(self.group, self.ring, self.rank, self.degree,
                       lambda gvec, x: tuple(self.ring.zero()
                                             for _ in range(self.rank)))
        return self.equal_on_window(zero, radius)


def cochain_from_chain(chain: Chain) -> Cochain:
    """View a finitely supported chain as a cochain (its extension by
    zero); handy for building test cochains with known values."""
    return Cochain(chain.group, chain.ring, chain.rank, chain.degree,
                   lambda gvec, x: chain[(x, gvec)], name="finsup")


def coboundary(f: Cochain) -> Cochain:
    """d f = alternating sum of f over the faces of each (n+1)-tuple."""
    ring = f.ring

    def rule(gvec, x):
        acc = tuple(ring.zero() for _ in range(f.rank))
        for i, (fx, fg) in enumerate(_faces(f.group, x, gvec)):
            v = f.value(fg, fx)
            acc = vec_add(ring, acc, v if i % 2 == 0 else vec_neg(ring, v))
        return acc

    return Cochain(f.group, f.ring, f.rank, f.degree + 1, rule,
                   name=f"d({f.name})")


# -- induced maps --------------------------------------------------------------

def _image_point(phi: CoarseMap, x, gvec):
    """Image of the point (x, gvec) under the entrywise arrow map
    phi1(x, g) = (phi(x), phi(x) phi(g^-1 x)^-1)."""
    G, T = phi.source, phi.target
    xs = [x]
    for g in gvec:
        xs.append(G.mul(G.inv(g), xs[-1]))
    vals = [phi(t) for t in xs]
    hvec = tuple(T.mul(vals[i], T.inv(vals[i + 1])) for i in range(len(gvec)))
    return vals[0], hvec


def induced_chain_map(phi: CoarseMap, chain: Chain) -> Chain:
    """Pushforward along the degree-n arrow map of phi.

    >>> from .gallery import get_map
    >>> from .groups import IntLattice
    >>> from .rings import Integers
    >>> Z = IntLattice(1)
    >>> c = Chain(Z, Integers(), 1, 1, {((0,), ((3,),)): (1,)})
    >>> induced_chain_map(get_map("z-double"), c).to_json()["slices"]
    [[[[6]], {'ring': 'Z', 'rank': 1, 'support': [[[0], [1]]]}]]
    """
    if chain.group != phi.source:
        raise GroupMismatchError("chain lives on the wrong group")
    out = Chain(phi.target, chain.ring, chain.rank, chain.degree)
    for (x, gvec), v in chain.data.items():
        y, hvec = _image_point(phi, x, gvec)
        out.add_at(y, hvec, v)
    return out


def induced_cochain_map(phi: CoarseMap, f: Cochain) -> Cochain:
    """Pullback: evaluate f on the image point."""
    if f.group != phi.target:
        raise GroupMismatchError("cochain lives on the wrong group")

    def rule(gvec, x):
        y, hvec = _image_point(phi, x, gvec)
        return f.value(hvec, y)

    return Cochain(phi.source, f.ring, f.rank, f.degree, rule,
                   name=f"{phi.name}^*({f.name})")


def omega_chain_map(om: CoarseMap, chain: Chain) -> Chain:
    """Chain map induced by a coarse inverse; the lazy block resolution
    of omega happens pointwise inside the generic pushforward."""
    return induced_chain_map(om, chain)


def omega_cochain_map(om: CoarseMap, f: Cochain) -> Cochain:
    return induced_cochain_map(om, f)


# -- homotopies ----------------------------------------------------------------

def _homotopy_points(phi: CoarseMap, psi: CoarseMap, x, gvec):
    """The n+1 interleaved image points of (x, gvec), with signs.

    Slot h (1-based) maps the point to
    (phi-arrows 1..h-1, comparison arrow at x_h, psi-arrows h..n),
    where the comparison arrow is theta(x_h) = (phi(x_h),
    phi(x_h) psi(x_h)^-1).  Sign of slot h is (-1)^(h+1).
    """
    G, T = phi.source, phi.target
    n = len(gvec)
    xs = [x]
    for g in gvec:
        xs.append(G.mul(G.inv(g), xs[-1]))
    fv = [phi(t) for t in xs]
    pv = [psi(t) for t in xs]
    out = []
    for h in range(1, n + 2):
        comps = []
        for i in range(h - 1):
            comps.append(T.mul(fv[i], T.inv(fv[i + 1])))
        comps.append(T.mul(fv[h - 1], T.inv(pv[h - 1])))
        for i in range(h - 1, n):
            comps.append(T.mul(pv[i], T.inv(pv[i + 1])))
        sign = +1 if (h + 1) % 2 == 0 else -1
        out.append((fv[0], tuple(comps), sign))
    return out


def homotopy_k(phi: CoarseMap, psi: CoarseMap, chain: Chain) -> Chain:
    """Chain homotopy between the maps induced by two close coarse maps:

        boundary(k(c)) + k(boundary(c))
            = induced_chain_map(psi, c) - induced_chain_map(phi, c).

    Raises degree by one.  Meaningful when phi and psi are close (the
    comparison arrows then range over a finite set); the identity itself
    holds for any two maps and is what the tests check.
    """
    if phi.source != psi.source or phi.target != psi.target:
        raise GroupMismatchError("homotopy needs a parallel pair of maps")
    if chain.group != phi.source:
        raise GroupMismatchError("chain lives on the wrong group")
    out = Chain(phi.target, chain.ring, chain.rank, chain.degree + 1)
    for (x, gvec), v in chain.data.items():
        for y, hvec, sign in _homotopy_points(phi, psi, x, gvec):
            out.add_at(y, hvec, v if sign > 0 else vec_neg(chain.ring, v))
    return out


def homotopy_k_cochain(phi: CoarseMap, psi: CoarseMap, f: Cochain) -> Cochain:
    """Cochain homotopy, lowering degree by one:

        coboundary(k(f)) + k(coboundary(f))
            = induced_cochain_map(psi, f) - induced_cochain_map(phi, f).
    """
    if f.degree < 1:
        raise InvalidElementError(
            "cochain homotopy needs degree at least 1")
    if f.group != phi.target:
        raise GroupMismatchError("cochain lives on the wrong group")
    ring = f.ring

    def rule(gvec, x):
        acc = tuple(ring.zero() for _ in range(f.rank))
        for y, hvec, sign in _homotopy_points(phi, psi, x, gvec):
            v = f.value(hvec, y)
            acc = vec_add(ring, acc, v if sign > 0 else vec_neg(ring, v))
        return acc

    return Cochain(phi.source, f.ring, f.rank, f.degree - 1, rule,
                   name=f"k({f.name})")


def homotopy_l(phi: CoarseMap, om: CoarseMap, chain: Chain) -> Chain:
    """Homotopy witnessing that the composite phi . omega acts like the
    identity on target chains: the pair (identity, phi . omega) fed to
    the generic homotopy, so

        boundary(l(c)) + l(boundary(c))
            = induced_chain_map(phi . omega, c) - c.
    """
    H = phi.target
    return homotopy_k(identity_map(H), compose(phi, om), chain)


def homotopy_l_cochain(phi: CoarseMap, om: CoarseMap, f: Cochain) -> Cochain:
    H = phi.target
    return homotopy_k_cochain(identity_map(H), compose(phi, om), f)


# -- seeded test chains --------------------------------------------------------

def random_chain(group: Group, ring: Ring, rank: int, degree: int,
                 radius: int, terms: int, seed: int) -> Chain:
    """Deterministic pseudo-random chain: `terms` point masses with all
    coordinates drawn from ball(radius) and integer values in [-5, 5]
    excluding 0, mapped into the ring."""
    rng = random.Random(seed)
    ball = group.ball(radius)
    out = Chain(group, ring, rank, degree)
    for _ in range(terms):
        x = rng.choice(ball)
        gvec = tuple(rng.choice(ball) for _ in range(degree))
        v = []
        for _ in range(rank):
            c = rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
            v.append(ring.normalize(c))
        out.add_at(x, gvec, tuple(v))
    return out
