"""Exact coefficient fields: prime fields F_p and cyclotomic rationals Q(zeta_m).

Scalars are immutable and kept in canonical form, so equality is literal.
Prime-field scalars are residues in [0, p); cyclotomic scalars are tuples of
Fractions giving a polynomial of degree < phi(m), reduced mod the m-th
cyclotomic polynomial.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, FieldMismatch, OrderUnavailable


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_divmod(num, den):
    """Exact division of integer polynomials (lists, low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], den[-1])
        assert r == 0
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert all(c == 0 for c in num[len(den) - 1 :])
    return out


def cyclotomic_polynomial(m: int):
    """Integer coefficients of Phi_m, low degree first."""
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divmod(poly, cyclotomic_polynomial(d))
    return poly


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


class PrimeField:
    """F_p with scalars as canonical residues."""

    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self._roots = {}

    # raw scalar layer (plain ints in [0, p))
    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        return n % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def eq(self, a, b) -> bool:
        return (a - b) % self.p == 0

    # roots of unity
    def root_group_order(self) -> int:
        return self.p - 1

    def has_root_of_order(self, order: int) -> bool:
        return order >= 1 and (self.p - 1) % order == 0

    def primitive_root_raw(self) -> int:
        """Smallest generator of F_p^x (deterministic)."""
        if self.p == 2:
            return 1
        n = self.p - 1
        prime_divs = [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]
        for g in range(2, self.p):
            if all(pow(g, n // q, self.p) != 1 for q in prime_divs):
                return g
        raise AssertionError("no primitive root found")

    def root_of_unity_raw(self, order: int):
        if order in self._roots:
            return self._roots[order]
        if not self.has_root_of_order(order):
            raise OrderUnavailable(
                f"F_{self.p} has no element of multiplicative order {order}"
            )
        w = pow(self.primitive_root_raw(), (self.p - 1) // order, self.p)
        self._roots[order] = w
        return w

    def scalar_to_json(self, a):
        return {"residue": int(a % self.p)}

    def scalar_from_json(self, obj):
        return int(obj["residue"]) % self.p

    def key(self):
        return ("prime", self.p)

    def __repr__(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(self.key())


class CyclotomicField:
    """Q(zeta_m) with scalars as Fraction tuples of length phi(m)."""

    kind = "cyclotomic"

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.characteristic = 0
        self.degree = euler_phi(m)
        phi = cyclotomic_polynomial(m)
        assert len(phi) == self.degree + 1 and phi[-1] == 1
        # x^(degree + k) expressed in the power basis, for k = 0 .. degree - 2
        red = []
        cur = [Fraction(-c) for c in phi[:-1]]
        for _ in range(max(self.degree - 1, 1)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            first = red[0]
            cur = [cur[i] + top * first[i] for i in range(self.degree)]
        self._reduction = red
        self._roots = {}

    def zero(self):
        return (Fraction(0),) * self.degree

    def one(self):
        return (Fraction(1),) + (Fraction(0),) * (self.degree - 1)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        n = self.degree
        conv = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:n]
        for k in range(n, 2 * n - 1):
            c = conv[k]
            if c:
                row = self._reduction[k - n]
                out = [out[i] + c * row[i] for i in range(n)]
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of 0")

        def trim(p):
            while p and p[-1] == 0:
                p.pop()
            return p

        def q_polymul(p, q):
            out = [Fraction(0)] * (len(p) + len(q) - 1) if p and q else []
            for i, x in enumerate(p):
                if x:
                    for j, y in enumerate(q):
                        out[i + j] += x * y
            return trim(out)

        def q_polysub(p, q):
            out = [Fraction(0)] * max(len(p), len(q))
            for i, x in enumerate(p):
                out[i] += x
            for i, x in enumerate(q):
                out[i] -= x
            return trim(out)

        def q_polydivmod(num, den):
            num, q = list(num), [Fraction(0)] * max(len(num) - len(den) + 1, 0)
            for i in range(len(num) - len(den), -1, -1):
                coef = num[i + len(den) - 1] / den[-1]
                q[i] = coef
                for j, c in enumerate(den):
                    num[i + j] -= coef * c
            return trim(q), trim(num)

        # extended Euclid in Q[x]: maintain r_i = s_i * a  (mod Phi_m)
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        r0, r1 = phi, trim([Fraction(x) for x in a])
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, rem = q_polydivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, q_polysub(s0, q_polymul(q, s1))
        # Phi_m is irreducible, so the gcd r0 is a nonzero constant
        assert len(r0) == 1 and r0[0] != 0
        out = [x / r0[0] for x in s0]
        out += [Fraction(0)] * (self.degree - len(out))
        return tuple(out[: self.degree])

    def scale(self, a, c: Fraction):
        return tuple(x * c for x in a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        return (Fraction(n),) + (Fraction(0),) * (self.degree - 1)

    def is_zero(self, a) -> bool:
        return all(x == 0 for x in a)

    def eq(self, a, b) -> bool:
        return all(x == y for x, y in zip(a, b))

    def _zeta_raw(self):
        if self.degree == 1:
            # m in {1, 2}: zeta is 1 or -1
            return self.from_int(1 if self.m == 1 else -1)
        return (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2)

    def root_group_order(self) -> int:
        return self.m if self.m % 2 == 0 else 2 * self.m

    def has_root_of_order(self, order: int) -> bool:
        return order >= 1 and self.root_group_order() % order == 0

    def root_of_unity_raw(self, order: int):
        if order in self._roots:
            return self._roots[order]
        big = self.root_group_order()
        if not self.has_root_of_order(order):
            raise OrderUnavailable(
                f"Q(zeta_{self.m}) has no root of unity of order {order}"
            )
        gen = self._zeta_raw() if self.m % 2 == 0 else self.neg(self._zeta_raw())
        w = self.one()
        for _ in range(big // order):
            w = self.mul(w, gen)
        self._roots[order] = w
        return w

    def scalar_to_json(self, a):
        return {"coeffs": [[x.numerator, x.denominator] for x in a]}

    def scalar_from_json(self, obj):
        coeffs = [Fraction(n, d) for n, d in obj["coeffs"]]
        assert len(coeffs) == self.degree
        return tuple(coeffs)

    def key(self):
        return ("cyclotomic", self.m)

    def __repr__(self):
        return f"Q(zeta_{self.m})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self):
        return hash(self.key())


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field; canonical form, bitwise equality."""

    field: object
    raw: object

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.raw
        if isinstance(other, int):
            return self.field.from_int(other)
        raise TypeError(f"cannot combine Scalar with {type(other)!r}")

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.raw, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.raw, self._coerce(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._coerce(other), self.raw))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.raw, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.raw, self._coerce(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._coerce(other), self.raw))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.raw))

    def __pow__(self, e: int):
        if e < 0:
            return (self ** (-e)).inverse()
        out = Scalar(self.field, self.field.one())
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.field.eq(self.raw, self.field.from_int(other))
        if not isinstance(other, Scalar) or other.field != self.field:
            return NotImplemented
        return self.field.eq(self.raw, other.raw)

    def __hash__(self):
        return hash((self.field.key(), self.raw))

    def __repr__(self):
        return f"{self.raw!r}:{self.field!r}"

    def to_json(self):
        return self.field.scalar_to_json(self.raw)


def scalar(field, value) -> Scalar:
    if isinstance(value, Scalar):
        if value.field != field:
            raise FieldMismatch(f"{field} vs {value.field}")
        return value
    if isinstance(value, int):
        return Scalar(field, field.from_int(value))
    return Scalar(field, value)


def integer_in_field(field, n: int) -> Scalar:
    """Image of n under the unique ring map from the integers."""
    return Scalar(field, field.from_int(n))


def is_invertible_integer(field, n: int) -> bool:
    return not field.is_zero(field.from_int(n))


def root_of_unity(field, order: int) -> Scalar:
    """A fixed primitive root of unity of the given order; deterministic."""
    return Scalar(field, field.root_of_unity_raw(order))


def largest_available_root_order(field, bound: int) -> int:
    """Largest divisor of `bound` whose roots of unity exist in the field."""
    for d in sorted((d for d in range(1, bound + 1) if bound % d == 0), reverse=True):
        if field.has_root_of_order(d):
            return d
    return 1


def field_to_json(field):
    if field.kind == "prime":
        return {"kind": "prime", "p": field.p}
    return {"kind": "cyclotomic", "m": field.m}


def field_from_json(obj):
    if obj["kind"] == "prime":
        return PrimeField(int(obj["p"]))
    if obj["kind"] == "cyclotomic":
        return CyclotomicField(int(obj["m"]))
    raise ValueError(f"unknown field kind {obj['kind']!r}")
