"""The quantum torus C_sigma over Q(zeta_m), with optional formal variables.

Elements are finite sums of t * c_lambda * s1^e1 ... with t in Q(zeta_m),
lambda in Lambda = Z^nu and e_i >= 0 (or any integer for the variables
declared Laurent).  The variables are central.  Multiplication follows
c_lambda c_tau = sigma(lambda, tau) c_{lambda + tau} with the bicharacter
sigma(lambda, tau) = zeta_m ** (lambda^T K tau).
"""
from __future__ import annotations

from fractions import Fraction

from . import kernels
from .scalars import CycScalar, euler_phi, power_table, validate_order

FIELD = 16
OFFSET = 1 << (FIELD - 1)
MASK = (1 << FIELD) - 1
JBITS = 3


class CocycleError(ValueError):
    pass


class Cocycle:
    """sigma(lambda, tau) = zeta_m ** (lambda^T K tau)."""

    def __init__(self, m, K, allow_any_order=False):
        validate_order(m, allow_any_order)
        self.m = m
        self.allow_any_order = allow_any_order
        self.K = tuple(tuple(int(x) for x in row) for row in K)
        self.nu = len(self.K)
        if any(len(r) != self.nu for r in self.K):
            raise CocycleError("K must be a square integer matrix")

    @classmethod
    def trivial(cls, nu, m=1):
        return cls(m, [[0] * nu for _ in range(nu)])

    def exponent(self, lam, tau):
        K = self.K
        return sum(lam[i] * K[i][j] * tau[j] for i in range(self.nu) if lam[i] for j in range(self.nu) if tau[j]) % self.m

    def sigma(self, lam, tau):
        return CycScalar.zeta(self.m, self.exponent(lam, tau), self.allow_any_order)

    def is_commutative(self):
        return all((self.K[i][j] - self.K[j][i]) % self.m == 0 for i in range(self.nu) for j in range(self.nu))

    def is_trivial(self):
        return all(x % self.m == 0 for r in self.K for x in r)

    def to_json(self):
        return {"m": self.m, "K": [list(r) for r in self.K]}

    def __eq__(self, other):
        return isinstance(other, Cocycle) and (self.m, self.K) == (other.m, other.K)

    def __hash__(self):
        return hash((self.m, self.K))

    def __repr__(self):
        return f"Cocycle(m={self.m}, K={[list(r) for r in self.K]})"


def _pack(values):
    key = 0
    for i, v in enumerate(values):
        if not -OFFSET <= v < OFFSET:
            raise OverflowError(f"exponent {v} outside the packed range")
        key |= (v + OFFSET) << (FIELD * i)
    return key


def _unpack(key, n):
    return tuple(((key >> (FIELD * i)) & MASK) - OFFSET for i in range(n))


class TorusRing:
    """C_sigma[variables] with the listed variables allowed negative powers."""

    def __init__(self, cocycle, variables=(), laurent=()):
        self.cocycle = cocycle
        self.m = cocycle.m
        self.nu = cocycle.nu
        self.variables = tuple(variables)
        self.laurent = frozenset(laurent)
        if not self.laurent <= set(self.variables):
            raise ValueError("Laurent variables must be among the declared variables")
        self.nfields = self.nu + len(self.variables)
        self.phi = euler_phi(self.m)
        self.bias = sum(OFFSET << (FIELD * i) for i in range(self.nfields))
        self.latmask = (1 << (FIELD * self.nu)) - 1
        ptab = [[(jj, c) for jj, c in enumerate(row) if c] for row in power_table(self.m)]
        coc = None if cocycle.is_trivial() else self._packed_exponent
        self.ctx = ((JBITS, (1 << JBITS) - 1, self.bias, self.latmask, self.m, ptab, coc, {}))
        self._one = {self.key((0,) * self.nu): 1}

    # ---- layout
    def key(self, lat, varexp=None, j=0):
        varexp = (0,) * len(self.variables) if varexp is None else tuple(varexp)
        return (_pack(tuple(lat) + varexp) << JBITS) | j

    def decode(self, key):
        j = key & ((1 << JBITS) - 1)
        fields = _unpack(key >> JBITS, self.nfields)
        return fields[:self.nu], fields[self.nu:], j

    def _packed_exponent(self, la, lb):
        return self.cocycle.exponent(_unpack(la, self.nu), _unpack(lb, self.nu))

    def compatible(self, other):
        return (self.cocycle, self.variables, self.laurent) == (other.cocycle, other.variables, other.laurent)

    # ---- constructors
    def element(self, terms):
        return TorusElement(self, terms)

    def zero(self):
        return TorusElement(self, {})

    def one(self):
        return TorusElement(self, dict(self._one))

    def scalar_terms(self, value, lat=None, varexp=None):
        lat = (0,) * self.nu if lat is None else tuple(lat)
        if isinstance(value, CycScalar):
            if value.m != self.m:
                raise ValueError(f"scalar from Q(zeta_{value.m}) used in a ring over Q(zeta_{self.m})")
            coeffs = value.coeffs
        else:
            coeffs = (value,) + (0,) * (self.phi - 1)
        return {self.key(lat, varexp, j): c for j, c in enumerate(coeffs) if c}

    def scalar(self, value):
        return TorusElement(self, self.scalar_terms(value))

    def monomial(self, lat, value=1, varexp=None):
        """value * c_lat * (variables ** varexp)."""
        return TorusElement(self, self.scalar_terms(value, lat, varexp))

    def c(self, lat):
        return self.monomial(lat)

    def var(self, name, power=1):
        if name not in self.variables:
            raise ValueError(f"unknown variable {name!r}")
        if power < 0 and name not in self.laurent:
            raise ValueError(f"variable {name!r} is not invertible")
        exp = [0] * len(self.variables)
        exp[self.variables.index(name)] = power
        return self.monomial((0,) * self.nu, 1, exp)

    def coerce(self, x):
        if isinstance(x, TorusElement):
            if x.ring is not self and not self.compatible(x.ring):
                raise CocycleError("elements live in different torus rings")
            return x
        return self.scalar(x)

    def __repr__(self):
        return f"TorusRing({self.cocycle!r}, variables={self.variables})"


class TorusElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _wrap(self, terms):
        return TorusElement(self.ring, terms)

    def __add__(self, other):
        o = self.ring.coerce(other)
        return self._wrap(kernels.poly_add(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other):
        o = self.ring.coerce(other)
        return self._wrap(kernels.poly_sub(self.terms, o.terms))

    def __rsub__(self, other):
        return self.ring.coerce(other) - self

    def __neg__(self):
        return self._wrap({k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(kernels.poly_scale(self.terms, other))
        o = self.ring.coerce(other)
        return self._wrap(kernels.poly_mul(self.terms, o.terms, self.ring.ctx))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(kernels.poly_scale(self.terms, other))
        o = self.ring.coerce(other)
        return self._wrap(kernels.poly_mul(o.terms, self.terms, self.ring.ctx))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, TorusElement):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.terms == self.ring.scalar_terms(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # ---- structure
    def blocks(self):
        """{(lat, varexp): CycScalar} grouping the zeta-power terms."""
        out = {}
        for k, c in self.terms.items():
            lat, ve, j = self.ring.decode(k)
            out.setdefault((lat, ve), [0] * self.ring.phi)[j] += c
        return {b: CycScalar(self.ring.m, v, True) for b, v in out.items()}

    def is_monomial(self):
        return len(self.blocks()) == 1

    def monomial_parts(self):
        b = self.blocks()
        if len(b) != 1:
            raise ValueError("unit test unsupported beyond monomials")
        ((lat, ve), t), = b.items()
        return t, lat, ve

    def inverse(self):
        return torus_inv_unit(self)

    def coefficient(self, varexp):
        """Part of the element multiplying the given variable monomial."""
        varexp = tuple(varexp)
        ring = self.ring
        out = {}
        for k, c in self.terms.items():
            lat, ve, j = ring.decode(k)
            if ve == varexp:
                out[ring.key(lat, None, j)] = c
        return TorusElement(ring, out)

    def scalar_value(self):
        """The element as a CycScalar when it is a constant multiple of c_0."""
        b = self.blocks()
        zero = ((0,) * self.ring.nu, (0,) * len(self.ring.variables))
        if not b:
            return CycScalar.rational(self.ring.m, 0, True)
        if set(b) != {zero}:
            return None
        return b[zero]

    def support(self):
        return sorted({lat for lat, _ in self.blocks()})

    def to_text(self):
        ring = self.ring
        parts = []
        for (lat, ve), t in sorted(self.blocks().items()):
            s = f"({t.to_text()})"
            if any(lat):
                s += f"*c[{','.join(map(str, lat))}]"
            for name, e in zip(ring.variables, ve):
                if e == 1:
                    s += f"*{name}"
                elif e:
                    s += f"*{name}^{e}"
            parts.append(s)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"TorusElement({self.to_text()})"


def torus_mul(a, b):
    if not a.ring.compatible(b.ring):
        raise CocycleError("cocycle mismatch")
    return a * b


def torus_inv_unit(u):
    """Inverse of a monomial unit t * c_delta * x^e (e only on Laurent variables)."""
    ring = u.ring
    t, lat, ve = u.monomial_parts()
    for name, e in zip(ring.variables, ve):
        if e and name not in ring.laurent:
            raise ValueError(f"variable {name!r} is not invertible")
    neg = tuple(-x for x in lat)
    s = ring.cocycle.sigma(lat, neg)
    return ring.monomial(neg, t.inverse() * s.inverse(), tuple(-e for e in ve))


def st2_twist(cocycle, i, j, d_alpha, d_beta):
    """sigma(i d_a, j d_b) prod_{k<i} sigma(k d_a, d_a) prod_{k<j} sigma(d_b, k d_b)."""
    if i < 1 or j < 1:
        raise ValueError("i and j must be positive")

    def mul(q, v):
        return tuple(q * x for x in v)

    e = cocycle.exponent(mul(i, d_alpha), mul(j, d_beta))
    for k in range(1, i):
        e += cocycle.exponent(mul(k, d_alpha), d_alpha)
    for k in range(1, j):
        e += cocycle.exponent(d_beta, mul(k, d_beta))
    return CycScalar.zeta(cocycle.m, e, cocycle.allow_any_order)


def polynomial_extension(cocycle, variables, laurent=()):
    return TorusRing(cocycle, variables, laurent)
