"""Quantum tori at odd roots of unity, exactly.

Session convention: fix odd N and a primitive N-th root zeta. Then
A := zeta, A^(1/2) := A^((N+1)/2), A^(1/4) := A^(((N+1)/2)^2), so every
quarter power is again a power of zeta and all coefficients live in
Z[zeta_N]. Monomials are Weyl-normalized: Z_a Z_b = A^(-(a,b)/4) Z_{a+b}.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from . import intlinalg
from .cyclotomic import Cyclotomic, nth_root_of_unity_root
from .lattice import SkewLattice

IRREP_DIM_CAP = 2000


class QuantumTorus:
    """T_q(E) for a skew lattice E at an odd root of unity of order N."""

    def __init__(self, lattice: SkewLattice, N: int):
        if N < 1 or N % 2 == 0:
            raise ValueError("N must be odd and positive")
        self.lattice = lattice
        self.N = N
        self._half = (N + 1) // 2          # exponent with 2 * half == 1 mod N
        self._quarter = pow(self._half, 2, N)

    def A_power(self, k, quarters=0):
        """A^k * (A^(1/4))^quarters as an exact cyclotomic."""
        e = (k + self._quarter * quarters) % self.N
        return Cyclotomic.zeta(self.N, e)

    def twist(self, a, b):
        """A^(-(a,b)/4), the product twist of the defining relation."""
        return self.A_power(0, quarters=-self.lattice.pairing(a, b))

    # -- elements -------------------------------------------------------

    def zero(self):
        return TorusElement(self, {})

    def one(self):
        return self.monomial([0] * self.lattice.rank)

    def monomial(self, vec, coeff=1):
        vec = tuple(vec)
        if len(vec) != self.lattice.rank:
            raise ValueError("exponent vector has wrong rank")
        c = coeff if isinstance(coeff, Cyclotomic) else Cyclotomic.rational(self.N, coeff)
        if c.is_zero():
            return self.zero()
        return TorusElement(self, {vec: c})

    def element(self, terms):
        out = {}
        for vec, c in terms.items():
            if not isinstance(c, Cyclotomic):
                c = Cyclotomic.rational(self.N, c)
            if not c.is_zero():
                out[tuple(vec)] = c
        return TorusElement(self, out)

    def kernel_sublattice(self):
        return self.lattice.kernel_mod(self.N)


class TorusElement:
    """Finite sum of lattice monomials with exact cyclotomic coefficients."""

    __slots__ = ("torus", "terms")

    def __init__(self, torus, terms):
        self.torus = torus
        self.terms = terms

    def _check_same(self, other):
        if not isinstance(other, TorusElement) or other.torus is not self.torus:
            raise ValueError("elements live in different quantum tori")

    def __add__(self, other):
        self._check_same(other)
        out = dict(self.terms)
        for vec, c in other.terms.items():
            s = out.get(vec)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(vec, None)
            else:
                out[vec] = s
        return TorusElement(self.torus, out)

    def __neg__(self):
        return TorusElement(self.torus, {v: -c for v, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            if not isinstance(other, Cyclotomic):
                other = Cyclotomic.rational(self.torus.N, other)
            if other.is_zero():
                return self.torus.zero()
            return TorusElement(
                self.torus, {v: c * other for v, c in self.terms.items()}
            )
        self._check_same(other)
        out = {}
        for va, ca in self.terms.items():
            for vb, cb in other.terms.items():
                vec = tuple(x + y for x, y in zip(va, vb))
                c = ca * cb * self.torus.twist(va, vb)
                s = out.get(vec)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(vec, None)
                else:
                    out[vec] = s
        return TorusElement(self.torus, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers only for single monomials")
        result = self.torus.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, TorusElement)
            and other.torus is self.torus
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def is_central(self) -> bool:
        """True iff every exponent pairs to 0 mod N with the whole lattice."""
        L = self.torus.lattice
        N = self.torus.N
        for vec in self.terms:
            for i in range(L.rank):
                if sum(L.form[i][j] * vec[j] for j in range(L.rank)) % N != 0:
                    return False
        return True

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self):
        return {
            "lattice": self.torus.lattice.name,
            "N": self.torus.N,
            "terms": [
                {"exp": list(v), "coeff": c.to_json()} for v, c in self.sorted_terms()
            ],
        }

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c!r})*Z{list(v)}" for v, c in self.sorted_terms())


def frobenius(x: TorusElement, N=None) -> TorusElement:
    """Fr_N: Z_a -> Z_{Na}, extended linearly.

    Only defined on elements with integer coefficients (images of the
    A = +1 specialization); the result is always central.
    """
    torus = x.torus
    N = torus.N if N is None else N
    if N != torus.N:
        raise ValueError("Frobenius order must match the torus session")
    out = {}
    for vec, c in x.terms.items():
        if not c.is_rational() or c.rational_value().denominator != 1:
            raise ValueError("Frobenius needs integer coefficients")
        out[tuple(N * t for t in vec)] = c
    result = TorusElement(torus, out)
    assert result.is_central()
    return result


def chebyshev_apply(x: TorusElement, N: int) -> TorusElement:
    """Evaluate the N-th first-kind Chebyshev polynomial, trace form
    (T_0 = 2, T_1 = X, T_{n+1} = X T_n - T_{n-1})."""
    torus = x.torus
    if N == 0:
        return torus.one() * 2
    prev = torus.one() * 2
    cur = x
    for _ in range(N - 1):
        prev, cur = cur, x * cur - prev
    return cur


def chebyshev_coefficients(N: int):
    """Coefficient list of T_N as a polynomial (index = degree), T_0 = 2."""
    prev = [Fraction(2)]
    cur = [Fraction(0), Fraction(1)]
    if N == 0:
        return prev
    for _ in range(N - 1):
        nxt = [Fraction(0)] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


# ---------------------------------------------------------------------------
# Central characters


class CentralCharacter:
    """A multiplicative character on the mod-N kernel sublattice E^0.

    Values are prescribed on the HNF basis of E^0 and must be roots of
    unity, so that the Azumaya scaling below stays exact.
    """

    def __init__(self, torus: QuantumTorus, values):
        self.torus = torus
        self.kernel_basis = torus.kernel_sublattice()
        if len(values) != len(self.kernel_basis):
            raise ValueError(
                f"need {len(self.kernel_basis)} values on the kernel HNF basis"
            )
        vals = []
        for v in values:
            if not isinstance(v, Cyclotomic):
                v = Cyclotomic.rational(torus.N, v)
            if v.as_root_of_unity() is None:
                raise ValueError("character values must be roots of unity")
            vals.append(v)
        self.values = vals
        # the twist A^(-(a,b)/4) is trivial on E^0 by definition of the kernel
        for a in self.kernel_basis:
            for b in self.kernel_basis:
                if torus.lattice.pairing(a, b) % torus.N != 0:
                    raise AssertionError("kernel pairing not divisible by N")

    @staticmethod
    def trivial(torus: QuantumTorus):
        basis = torus.kernel_sublattice()
        return CentralCharacter(torus, [1] * len(basis))

    def value_of(self, vec) -> Cyclotomic:
        coords = intlinalg.lattice_coordinates(self.kernel_basis, list(vec))
        if coords is None:
            raise ValueError("vector is not in the kernel sublattice E^0")
        order = lcm(self.torus.N, *(v.order for v in self.values))
        out = Cyclotomic.rational(order, 1)
        for c, v in zip(coords, self.values):
            out = out * v.embed(order) ** c
        return out


# ---------------------------------------------------------------------------
# Monomial matrices (generalized permutation matrices)


class MonomialMatrix:
    """dim x dim matrix with one nonzero per column: col j carries
    coeff[j] at row perm[j]. Closed under products; exact entries."""

    __slots__ = ("dim", "perm", "coeffs")

    def __init__(self, dim, perm, coeffs):
        self.dim = dim
        self.perm = tuple(perm)
        self.coeffs = list(coeffs)

    @staticmethod
    def identity(dim, field_order):
        one = Cyclotomic.rational(field_order, 1)
        return MonomialMatrix(dim, range(dim), [one] * dim)

    def __mul__(self, other):
        if isinstance(other, MonomialMatrix):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            perm = [self.perm[other.perm[j]] for j in range(self.dim)]
            coeffs = [
                self.coeffs[other.perm[j]] * other.coeffs[j] for j in range(self.dim)
            ]
            return MonomialMatrix(self.dim, perm, coeffs)
        return MonomialMatrix(
            self.dim, self.perm, [c * other for c in self.coeffs]
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, MonomialMatrix)
            and self.dim == other.dim
            and self.perm == other.perm
            and self.coeffs == other.coeffs
        )

    def is_scalar(self, value) -> bool:
        if any(p != j for j, p in enumerate(self.perm)):
            return False
        return all(c == value for c in self.coeffs)

    def kron(self, other):
        dim = self.dim * other.dim
        perm = []
        coeffs = []
        for j1 in range(self.dim):
            for j2 in range(other.dim):
                perm.append(self.perm[j1] * other.dim + other.perm[j2])
                coeffs.append(self.coeffs[j1] * other.coeffs[j2])
        return MonomialMatrix(dim, perm, coeffs)

    def dense(self):
        zero = self.coeffs[0] * 0
        rows = [[zero] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            rows[self.perm[j]][j] = self.coeffs[j]
        return rows


# ---------------------------------------------------------------------------
# Irreducible representations (Azumaya by dimension)


class TorusIrrep:
    """The irreducible representation over a central character.

    Generators go to tensor products of clock and shift matrices in the
    Weyl normalization, scaled by a homomorphism chosen to hit the
    character on E^0. All invariants are verified after construction.
    """

    def __init__(self, torus: QuantumTorus, character: CentralCharacter):
        if character.torus is not torus:
            raise ValueError("character belongs to a different torus")
        self.torus = torus
        self.character = character
        L = torus.lattice
        N = torus.N
        P, blocks = intlinalg.skew_normal_form(L.form)
        self.pair_invariants = blocks
        self.pair_orders = [N // gcd(d, N) for d in blocks]
        dim = 1
        for m in self.pair_orders:
            dim *= m
        if dim > IRREP_DIM_CAP:
            raise ValueError(f"irrep dimension {dim} exceeds cap {IRREP_DIM_CAP}")
        index = intlinalg.sublattice_index(
            intlinalg.identity(L.rank), character.kernel_basis
        )
        if intlinalg.perfect_square_root(index) != dim:
            raise AssertionError("kernel index is not the square of the dimension")
        self.dimension = dim
        self._P = P
        # P is unimodular; invert via SNF (D must be the identity)
        D, U, V = intlinalg.smith_normal_form(P)
        assert all(D[i][i] == 1 for i in range(L.rank))
        self._P_inv = intlinalg.mat_mul(V, U)
        n_pairs = len(blocks)
        radical = [
            [P[i][j] for i in range(L.rank)] for j in range(2 * n_pairs, L.rank)
        ]

        # scaling homomorphism on the adapted basis, fixed by the character
        u_vals, v_vals, w_vals = [], [], []
        for i, (d, m) in enumerate(zip(blocks, self.pair_orders)):
            u_i = [P[r][2 * i] for r in range(L.rank)]
            v_i = [P[r][2 * i + 1] for r in range(L.rank)]
            u_vals.append(
                nth_root_of_unity_root(character.value_of([m * x for x in u_i]), m)
            )
            v_vals.append(
                nth_root_of_unity_root(character.value_of([m * x for x in v_i]), m)
            )
        for w in radical:
            w_vals.append(character.value_of(w))
        self.field_order = lcm(
            N, *(v.order for v in u_vals + v_vals + w_vals + character.values)
        )
        self._scale_u = [v.embed(self.field_order) for v in u_vals]
        self._scale_v = [v.embed(self.field_order) for v in v_vals]
        self._scale_w = [v.embed(self.field_order) for v in w_vals]
        self.generator_images = {
            i: self.image_of_monomial(
                [1 if j == i else 0 for j in range(L.rank)]
            )
            for i in range(L.rank)
        }
        self._verify()

    def _eta(self, pair_index):
        # A^(-d/4) for the pair's invariant d, embedded in the work field
        d = self.pair_invariants[pair_index]
        return self.torus.A_power(0, quarters=-d).embed(self.field_order)

    def image_of_monomial(self, vec) -> MonomialMatrix:
        L = self.torus.lattice
        coords = intlinalg.mat_vec(self._P_inv, list(vec))
        n_pairs = len(self.pair_invariants)
        scalar = Cyclotomic.rational(self.field_order, 1)
        out = None
        for i in range(n_pairs):
            x, y = coords[2 * i], coords[2 * i + 1]
            m = self.pair_orders[i]
            eta = self._eta(i)
            omega = eta * eta
            # Weyl-normalized eta^(-xy) X^x Y^y with X = diag(omega^r), Y = shift
            scalar = scalar * eta ** (-x * y)
            scalar = scalar * self._scale_u[i] ** x * self._scale_v[i] ** y
            perm = [(r + y) % m for r in range(m)]
            # column j holds omega^(x * perm[j]) at row perm[j]
            coeffs = [omega ** (x * ((j + y) % m)) for j in range(m)]
            block = MonomialMatrix(m, perm, coeffs)
            out = block if out is None else out.kron(block)
        for j, z in enumerate(coords[2 * n_pairs :]):
            scalar = scalar * self._scale_w[j] ** z
        if out is None:
            out = MonomialMatrix.identity(1, self.field_order)
        return scalar * out

    def image_of(self, elem: TorusElement):
        """Dense image of a general torus element (sum of monomials)."""
        acc = {}
        for vec, c in elem.terms.items():
            m = self.image_of_monomial(vec)
            cc = c.embed(self.field_order)
            for j in range(m.dim):
                key = (m.perm[j], j)
                val = acc.get(key)
                add = cc * m.coeffs[j]
                acc[key] = add if val is None else val + add
        return acc

    def _verify(self):
        L = self.torus.lattice
        N = self.torus.N
        one = Cyclotomic.rational(self.field_order, 1)
        # pairwise commutation relations on generators
        for i in range(L.rank):
            for j in range(L.rank):
                gi, gj = self.generator_images[i], self.generator_images[j]
                lhs = gi * gj
                phase = self.torus.A_power(
                    0, quarters=-2 * L.form[i][j]
                ).embed(self.field_order)
                rhs = phase * (gj * gi)
                if lhs != rhs:
                    raise AssertionError("generator commutation relation failed")
        # the kernel sublattice acts by the character
        for kvec in self.character.kernel_basis:
            img = self.image_of_monomial(kvec)
            val = self.character.value_of(kvec).embed(self.field_order)
            if not img.is_scalar(val):
                raise AssertionError("central character not realized on E^0")
        # invertibility sanity: Z_a Z_{-a} = Z_0 = 1 (self-pairing vanishes)
        for i in range(min(L.rank, 1)):
            inv = self.image_of_monomial(
                [-1 if j == i else 0 for j in range(L.rank)]
            )
            if not (self.generator_images[i] * inv).is_scalar(one):
                raise AssertionError("monomial inverse failed")


def build_irrep(lattice: SkewLattice, N: int, character=None) -> TorusIrrep:
    torus = QuantumTorus(lattice, N)
    if character is None:
        character = CentralCharacter.trivial(torus)
    return TorusIrrep(torus, character)
