"""SL2 representation variety of the genus-g surface with one boundary arc.

Points are 2g-tuples of exact SL2 matrices (the surface group is free).
The moment map evaluates at the boundary loop, the product of commutators;
its upper-left entry splits the variety into the big and reduced cells.
Matrix entries live in a cyclotomic field, Q(zeta_4) by default, which
hosts the finite subgroups used for finite orbits.
"""

from __future__ import annotations

from math import lcm

from .cyclotomic import Cyclotomic
from .mcg import FreeGroupEndo, MappingClass, boundary_word


class SL2Mat:
    __slots__ = ("order", "a", "b", "c", "d")

    def __init__(self, a, b, c, d, order=4):
        target = lcm(order, *(x.order for x in (a, b, c, d) if isinstance(x, Cyclotomic)))
        vals = []
        for x in (a, b, c, d):
            if not isinstance(x, Cyclotomic):
                x = Cyclotomic.rational(target, x)
            elif x.order != target:
                x = x.embed(target)
            vals.append(x)
        self.order = target
        self.a, self.b, self.c, self.d = vals
        det = self.a * self.d - self.b * self.c
        if det != 1:
            raise ValueError("matrix determinant must be 1")

    @staticmethod
    def identity(order=4):
        return SL2Mat(1, 0, 0, 1, order=order)

    def __mul__(self, other):
        return SL2Mat(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            order=self.order,
        )

    def inverse(self):
        return SL2Mat(self.d, -self.b, -self.c, self.a, order=self.order)

    def trace(self):
        return self.a + self.d

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        return isinstance(other, SL2Mat) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"SL2[{self.a!r} {self.b!r}; {self.c!r} {self.d!r}]"

    def to_json(self):
        return [x.to_json() for x in self.entries()]


class SL2Rep:
    """A representation of the free surface group: images of a1..ag, b1..bg."""

    def __init__(self, genus, images):
        if len(images) != 2 * genus:
            raise ValueError("need 2g images (a1, b1, ..., ag, bg)")
        self.genus = genus
        # stored interleaved as given: (A1, B1, A2, B2, ...)
        self.images = tuple(images)

    def image_of_generator(self, gid):
        # generator ids: 1..g alphas, g+1..2g betas (as in mcg.parse_word)
        g = self.genus
        if 1 <= gid <= g:
            return self.images[2 * (gid - 1)]
        return self.images[2 * (gid - g - 1) + 1]

    def evaluate_word(self, word):
        out = SL2Mat.identity(order=self.images[0].order if self.images else 4)
        for t in word:
            m = self.image_of_generator(abs(t))
            out = out * (m if t > 0 else m.inverse())
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SL2Rep)
            and self.genus == other.genus
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.genus, self.images))

    def to_json(self):
        return {
            "genus": self.genus,
            "field": {"cyclotomicOrder": self.images[0].order if self.images else 4},
            "images": [m.to_json() for m in self.images],
        }


def moment_map(rep: SL2Rep) -> SL2Mat:
    """rho evaluated at the boundary loop [a1,b1]...[ag,bg]."""
    return rep.evaluate_word(boundary_word(rep.genus))


def classify_cell(rep: SL2Rep) -> str:
    """'big' when the moment value has nonzero upper-left entry."""
    return "big" if not moment_map(rep).a.is_zero() else "reduced"


def classify_sts_leaf(m: SL2Mat):
    """Leaf descriptor on SL2 with the Semenov-Tian-Shansky structure:
    (cell index, conjugacy data). Cell 1 matrices are the singleton
    dressing orbits C_b."""
    tr = m.trace()
    cell = 0 if not m.a.is_zero() else 1
    central = m.b.is_zero() and m.c.is_zero() and m.a == m.d and (m.a == 1 or m.a == -1)
    parabolic = (tr == 2 or tr == -2) and not central
    desc = {
        "cell": cell,
        "trace": tr.to_json(),
        "central": central,
        "parabolic": parabolic,
    }
    if cell == 1:
        desc["dressingOrbit"] = {"b": m.b.to_json()}
    return desc


def classify_double_leaf(g1: SL2Mat, g2: SL2Mat):
    """Symplectic leaf (i, j) of the double: cells of g2^-1 g1 and g2 g1^-1."""
    i = 0 if not (g2.inverse() * g1).a.is_zero() else 1
    j = 0 if not (g2 * g1.inverse()).a.is_zero() else 1
    return (i, j)


def toric_action(z: Cyclotomic, m: SL2Mat) -> SL2Mat:
    """z . m = [[a, z^2 b], [z^-2 c, d]]."""
    if not isinstance(z, Cyclotomic):
        z = Cyclotomic.rational(m.order, z)
    order = lcm(z.order, m.order)
    z = z.embed(order)
    z2 = z * z
    return SL2Mat(
        m.a.embed(order),
        z2 * m.b.embed(order),
        z2.inverse() * m.c.embed(order),
        m.d.embed(order),
        order=order,
    )


# ---------------------------------------------------------------------------
# Finite orbits


def group_closure(generators, cap=10**4):
    """Multiplicative closure of a set of SL2 matrices."""
    elems = {SL2Mat.identity(order=generators[0].order)}
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for gen in generators:
                y = x * gen
                if y not in elems:
                    if len(elems) >= cap:
                        raise ValueError("group closure exceeded cap")
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def enumerate_hom_to_finite(generators, genus, cap=10**4):
    """All homomorphisms of the free surface group into the closure of the
    given matrices: every 2g-tuple, since the group is free."""
    import itertools

    H = sorted(group_closure(generators, cap=cap), key=lambda m: repr(m))
    reps = []
    for tup in itertools.product(H, repeat=2 * genus):
        reps.append(SL2Rep(genus, tup))
    return reps


def quaternion_generators(order=4):
    i = Cyclotomic.zeta(order, order // 4) if order % 4 == 0 else None
    if i is None:
        raise ValueError("field must contain a fourth root of unity")
    return [
        SL2Mat(0, 1, -1, 0, order=order),
        SL2Mat(i, 0, 0, -i, order=order),
    ]


class OrbitData:
    def __init__(self, points, generators, moment, cell):
        self.points = points
        self.generators = generators
        self.moment = moment
        self.cell = cell

    @property
    def size(self):
        return len(self.points)


def act_on_rep(phi: FreeGroupEndo, rep: SL2Rep) -> SL2Rep:
    """(phi . rho)(gamma) = rho(phi(gamma)) on the generators."""
    g = rep.genus
    images = []
    for i in range(1, g + 1):
        images.append(rep.evaluate_word(phi.images[i]))
        images.append(rep.evaluate_word(phi.images[g + i]))
    return SL2Rep(g, images)


def orbit_closure(seeds, mapping_classes, cap=4096) -> OrbitData:
    """BFS closure of seed representations under the given (validated)
    automorphisms. Verifies the moment map is constant along the way."""
    endos = []
    for mc in mapping_classes:
        endo = mc.endo if isinstance(mc, MappingClass) else FreeGroupEndo(
            seeds[0].genus, mc
        )
        if not endo.is_valid_automorphism():
            raise ValueError("generator datum is not a boundary-fixing automorphism")
        endos.append(endo)
    mu = moment_map(seeds[0])
    seen = {}
    frontier = []
    for s in seeds:
        if s not in seen:
            seen[s] = True
            frontier.append(s)
    while frontier:
        nxt = []
        for rep in frontier:
            for endo in endos:
                img = act_on_rep(endo, rep)
                if img not in seen:
                    if len(seen) >= cap:
                        raise ValueError("orbit closure exceeded cap")
                    if moment_map(img) != mu:
                        raise AssertionError(
                            "moment map changed along the orbit: invalid generator"
                        )
                    seen[img] = True
                    nxt.append(img)
        frontier = nxt
    points = list(seen)
    cell = "big" if not mu.a.is_zero() else "reduced"
    return OrbitData(points, endos, mu, cell)


def rep_dimension(orbit: OrbitData, N: int) -> int:
    """dim W(O): N^(3g) |O| on the big cell, N^(3g-1) |O| on the reduced."""
    g = orbit.points[0].genus
    exp = 3 * g if orbit.cell == "big" else 3 * g - 1
    return N**exp * orbit.size
