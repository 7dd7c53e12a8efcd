"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

An element is stored as its coefficient vector in the power basis
1, z, ..., z^(phi(m)-1) of Q(z)/Phi_m(z).  Coefficients are ints or
Fractions, always reduced (no trailing zeros are stripped, the vector has
length phi(m) exactly).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

DEFAULT_ORDERS = frozenset({1, 2, 3, 4, 6, 12})


class OrderError(ValueError):
    pass


def validate_order(m, allow_any_order=False):
    if not isinstance(m, int) or m < 1:
        raise OrderError(f"root of unity order must be a positive integer, got {m!r}")
    if m not in DEFAULT_ORDERS and not allow_any_order:
        raise OrderError(
            f"order m={m} is outside the supported set {sorted(DEFAULT_ORDERS)}; "
            "pass allow_any_order=True to use it"
        )
    return m


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _poly_divexact_int(num, den):
    """Exact division of integer polynomials, den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1]
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Coefficients of Phi_m, constant term first."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact_int(num, cyclotomic_poly(d))
    return tuple(num)


def euler_phi(m):
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@lru_cache(maxsize=None)
def power_table(m):
    """Row j is the coefficient vector of z^j for 0 <= j < m."""
    phi_poly = cyclotomic_poly(m)
    phi = len(phi_poly) - 1
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by z and reduce the overflow with z^phi = -sum(c_i z^i)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi_poly[:-1])]
    return tuple(rows)


def _reduce(coeffs, m):
    """Reduce an arbitrary-length coefficient list modulo Phi_m."""
    phi_poly = cyclotomic_poly(m)
    phi = len(phi_poly) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, phi - 1, -1):
        top = c[i]
        if top:
            c[i] = 0
            for j in range(phi):
                c[i - phi + j] -= top * phi_poly[j]
    c = c[:phi] + [0] * (phi - len(c))
    return tuple(_norm(x) for x in c)


def _strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = _strip(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while True:
        a = _strip(a)
        if len(a) < len(b):
            return q, a
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] += f
        for i, y in enumerate(b):
            a[i + shift] -= f * y


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


class CycScalar:
    """An element of Q(zeta_m)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m, coeffs=None, allow_any_order=False):
        validate_order(m, allow_any_order)
        self.m = m
        phi = len(cyclotomic_poly(m)) - 1
        if coeffs is None:
            coeffs = (0,) * phi
        coeffs = tuple(coeffs)
        if len(coeffs) != phi:
            coeffs = _reduce(coeffs, m)
        else:
            coeffs = tuple(_norm(x) for x in coeffs)
        self.coeffs = coeffs

    @classmethod
    def rational(cls, m, q, allow_any_order=False):
        phi = len(cyclotomic_poly(m)) - 1
        return cls(m, (q,) + (0,) * (phi - 1), allow_any_order)

    @classmethod
    def zeta(cls, m, k=1, allow_any_order=False):
        """zeta_m ** k for any integer k."""
        return cls(m, power_table(m)[k % m], allow_any_order)

    @property
    def phi(self):
        return len(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.m != self.m:
                raise ValueError(f"cannot combine Q(zeta_{self.m}) with Q(zeta_{other.m})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar(self.m, (other,) + (0,) * (self.phi - 1), True)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycScalar(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)], True)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.m, [-a for a in self.coeffs], True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycScalar(self.m, [a - b for a, b in zip(self.coeffs, o.coeffs)], True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycScalar(self.m, _reduce(_poly_mul(self.coeffs, o.coeffs), self.m), True)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.m)
        # extended Euclid: u*a + v*Phi = g with g a nonzero constant
        r0, r1 = list(cyclotomic_poly(self.m)), _strip(self.coeffs)
        s0, s1 = [], [1]
        while len(_strip(r1)) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _strip(_poly_sub(s0, _poly_mul(q, s1)))
        g = Fraction(_strip(r1)[0])
        return CycScalar(self.m, _reduce([Fraction(x) / g for x in s1], self.m), True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycScalar.rational(self.m, 1, True)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    def to_text(self):
        """Canonical text such as ``1 + -1/2*z + 3*z^2``; ``0`` for zero."""
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*z")
            else:
                parts.append(f"{c}*z^{i}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"CycScalar({self.m}, {self.to_text()!r})"


def parse_scalar(m, text, allow_any_order=False):
    """Inverse of :meth:`CycScalar.to_text`."""
    phi = len(cyclotomic_poly(m)) - 1
    coeffs = [0] * max(phi, 1)
    text = text.strip()
    if text != "0":
        for part in text.split(" + "):
            part = part.strip()
            if "*z" in part:
                c, _, e = part.partition("*z")
                power = int(e[1:]) if e.startswith("^") else 1
            else:
                c, power = part, 0
            if power >= phi:
                raise ValueError(f"power z^{power} is not canonical for m={m}")
            coeffs[power] += Fraction(c)
    return CycScalar(m, coeffs, allow_any_order)
