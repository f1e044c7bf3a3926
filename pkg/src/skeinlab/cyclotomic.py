"""Exact cyclotomic arithmetic.

Elements of Q(zeta_m) are residue polynomials modulo the m-th cyclotomic
polynomial Phi_m, with Fraction coefficients. Equality is equality of the
canonical coefficient vector, so exact zero tests are trivial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _poly_divmod_exact(num, den):
    # den monic with integer coefficients; num has integer coefficients
    num = list(num)
    d = len(den) - 1
    quot = [0] * max(len(num) - d, 1)
    while len(num) - 1 >= d and any(num):
        lead = num[-1]
        if lead == 0:
            num.pop()
            continue
        shift = len(num) - 1 - d
        quot[shift] = lead
        for i, c in enumerate(den):
            num[shift + i] -= lead * c
        num.pop()
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Coefficients of Phi_m, low degree first, monic over Z."""
    if m < 1:
        raise ValueError("order must be positive")
    if m == 1:
        return (-1, 1)
    # Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod_exact(num, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class Cyclotomic:
    """An element of Q(zeta_m) in canonical reduced form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        phi = euler_phi(order)
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > phi:
            coeffs = _reduce_mod_phi(coeffs, order)
        coeffs += [Fraction(0)] * (phi - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(order, q) -> "Cyclotomic":
        return Cyclotomic(order, [Fraction(q)])

    @staticmethod
    def zeta(order, power=1) -> "Cyclotomic":
        power %= order
        c = [Fraction(0)] * (power + 1)
        c[power] = Fraction(1)
        return Cyclotomic(order, c)

    # -- ring structure ------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        prod[i + j] += ca * cb
        return Cyclotomic(self.order, prod)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero cyclotomic")
        # extended Euclid in Q[x] against Phi_m
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _poly_divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 = gcd, a nonzero constant since Phi_m is irreducible
        assert len(_trim(r0)) == 1
        c = r0[0]
        return Cyclotomic(self.order, [x / c for x in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclotomic.rational(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates and canonical form ----------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational value")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(self.order, other)
        return (
            isinstance(other, Cyclotomic)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z" if c != 1 else "z")
            else:
                terms.append(f"{c}*z^{i}" if c != 1 else f"z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyc({self.order}; {body})"

    # -- field embeddings -----------------------------------------------

    def embed(self, target_order: int) -> "Cyclotomic":
        """Image under Q(zeta_m) -> Q(zeta_L), zeta_m |-> zeta_L^(L/m)."""
        if target_order == self.order:
            return self
        if target_order % self.order != 0:
            raise ValueError("target order must be a multiple of the current order")
        step = target_order // self.order
        out = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[step * i] = c
        return Cyclotomic(target_order, out)

    def as_root_of_unity(self):
        """Return (M, k) with self == zeta_M^k, or None.

        M is self.order when the value is a plain power of zeta, and
        2*order when it is minus such a power.
        """
        m = self.order
        z = Cyclotomic.zeta(m)
        power = Cyclotomic.rational(m, 1)
        for k in range(m):
            if self == power:
                return (m, k)
            if self == -power:
                # -zeta_m^k = zeta_{2m}^{m + 2k}
                return (2 * m, (m + 2 * k) % (2 * m))
            power = power * z
        return None

    def to_json(self):
        return {
            "order": self.order,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @staticmethod
    def from_json(obj):
        return Cyclotomic(obj["order"], [Fraction(n, d) for n, d in obj["coeffs"]])


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod_q(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and any(r):
        if r[-1] == 0:
            r.pop()
            continue
        shift = len(r) - len(b)
        coef = r[-1] / b[-1]
        q[shift] = coef
        for i, c in enumerate(b):
            r[shift + i] -= coef * c
        r.pop()
    return q, _trim(r)


def _reduce_mod_phi(coeffs, order):
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            for j, p in enumerate(phi):
                c[i - deg + j] -= lead * p
        c.pop()
    return c


def nth_root_of_unity_root(value: Cyclotomic, n: int) -> Cyclotomic:
    """An exact x with x^n == value, for value a root of unity and n odd.

    Stays in mu_M when possible, otherwise enlarges to mu_{M n}.
    """
    ru = value.as_root_of_unity()
    if ru is None:
        raise ValueError("value is not a root of unity")
    M, k = ru
    g = gcd(n, M)
    if k % g == 0:
        # solve t*n == k (mod M)
        Mg, ng, kg = M // g, n // g, k // g
        t = (kg * pow(ng, -1, Mg)) % Mg
        return Cyclotomic.zeta(M, t)
    return Cyclotomic.zeta(M * n, k)


class DualNumber:
    """Element of Q[hbar]/(hbar^2): value + eps*hbar, exact rationals."""

    __slots__ = ("value", "eps")

    def __init__(self, value, eps=0):
        self.value = Fraction(value)
        self.eps = Fraction(eps)

    def __add__(self, other):
        other = DualNumber._wrap(other)
        return DualNumber(self.value + other.value, self.eps + other.eps)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.value, -self.eps)

    def __sub__(self, other):
        return self + (-DualNumber._wrap(other))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = DualNumber._wrap(other)
        return DualNumber(
            self.value * other.value,
            self.value * other.eps + self.eps * other.value,
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("dual number with zero value part")
        inv = 1 / self.value
        return DualNumber(inv, -self.eps * inv * inv)

    def __truediv__(self, other):
        return self * DualNumber._wrap(other).inverse()

    def __eq__(self, other):
        other = DualNumber._wrap(other)
        return self.value == other.value and self.eps == other.eps

    def __hash__(self):
        return hash((self.value, self.eps))

    def __repr__(self):
        return f"DualNumber({self.value}, {self.eps}*h)"

    @staticmethod
    def _wrap(x):
        return x if isinstance(x, DualNumber) else DualNumber(x)
