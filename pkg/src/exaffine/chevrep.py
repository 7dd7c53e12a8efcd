"""The Chevalley Lie algebra of a finite root system and its adjoint
exponentials with coefficients in a torus ring.

Matrices act on column vectors in the basis (X_r for r in frs.roots, then
H_1..H_l); H_i is the simple coroot alpha_i^vee.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import kernels
from .finroot import build_finite, chevalley_constants


class ChevAlgebra:
    def __init__(self, frs):
        self.frs = frs
        self.consts = chevalley_constants(frs.symbol)
        self.roots = frs.roots
        self.rank = frs.rank
        self.nroots = len(self.roots)
        self.dim = self.nroots + self.rank
        self.index = {r: i for i, r in enumerate(self.roots)}
        self._ad = {}
        self._powers = {}

    def h_index(self, i):
        return self.nroots + i

    def coroot(self, a):
        """Coordinates of H_a = a^vee in the simple coroots."""
        f = self.frs
        out = []
        for i in range(self.rank):
            num = a[i] * f.gram[i][i]
            den = f.norm(a)
            if num % den:
                raise ArithmeticError("non-integral coroot coordinate")
            out.append(num // den)
        return tuple(out)

    def bracket(self, i, j):
        """[b_i, b_j] as a sparse dict {index: int}."""
        n = self.nroots
        f = self.frs
        if i >= n and j >= n:
            return {}
        if i >= n:
            return {k: -v for k, v in self.bracket(j, i).items()}
        a = self.roots[i]
        if j >= n:
            # [X_a, H_l] = -<a, alpha_l> X_a
            p = f.pairing(a, f.simple_roots[j - n])
            return {i: -p} if p else {}
        b = self.roots[j]
        s = tuple(x + y for x, y in zip(a, b))
        if not any(s):
            return {self.h_index(l): c for l, c in enumerate(self.coroot(a)) if c}
        if s in self.index:
            return {self.index[s]: self.consts.get(a, b)}
        return {}

    def ad(self, i):
        """ad(b_i) as a sparse integer matrix (list of row dicts)."""
        m = self._ad.get(i)
        if m is None:
            rows = [dict() for _ in range(self.dim)]
            for j in range(self.dim):
                for k, c in self.bracket(i, j).items():
                    rows[k][j] = c
            m = self._ad[i] = rows
        return m

    def ad_powers(self, root):
        """[(ad X_root)^k / k! for k = 0, 1, ...] up to the last nonzero power."""
        out = self._powers.get(root)
        if out is not None:
            return out
        ad = self.ad(self.index[tuple(root)])
        ident = [{i: 1} for i in range(self.dim)]
        out = [ident]
        cur = ident
        k = 0
        while True:
            k += 1
            cur = _int_mat_mul(ad, cur)
            if not any(cur):
                break
            scaled = []
            for row in cur:
                r = {}
                for j, v in row.items():
                    q = Fraction(v, factorial(k))
                    if q.denominator != 1:
                        raise ArithmeticError("non-integral divided power")
                    r[j] = int(q)
                scaled.append(r)
            out.append(scaled)
        self._powers[root] = out
        return out

    def check_jacobi(self):
        """Exhaustive Jacobi identity and [ad x, ad y] = ad [x, y]; returns failures."""
        fails = []
        n = self.dim
        for i in range(n):
            for j in range(n):
                lhs = _int_mat_sub(_int_mat_mul(self.ad(i), self.ad(j)), _int_mat_mul(self.ad(j), self.ad(i)))
                rhs = [dict() for _ in range(n)]
                for k, c in self.bracket(i, j).items():
                    for r, row in enumerate(self.ad(k)):
                        for col, v in row.items():
                            rhs[r][col] = rhs[r].get(col, 0) + c * v
                rhs = [{c: v for c, v in row.items() if v} for row in rhs]
                if lhs != rhs:
                    fails.append((i, j))
        return fails


def _int_mat_mul(A, B):
    out = []
    for row in A:
        acc = {}
        for k, a in row.items():
            for j, b in B[k].items():
                acc[j] = acc.get(j, 0) + a * b
        out.append({j: v for j, v in acc.items() if v})
    return out


def _int_mat_sub(A, B):
    out = []
    for ra, rb in zip(A, B):
        r = dict(ra)
        for j, v in rb.items():
            r[j] = r.get(j, 0) - v
        out.append({j: v for j, v in r.items() if v})
    return out


@lru_cache(maxsize=None)
def chev_algebra(symbol):
    return ChevAlgebra(build_finite(symbol))


class AdMatrix:
    """Square matrix over a torus ring, stored as sparse rows of term dicts."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = rows

    @classmethod
    def identity(cls, ring, n):
        one = ring.one().terms
        return cls(ring, [{i: dict(one)} for i in range(n)])

    @classmethod
    def from_entries(cls, ring, entries):
        rows = []
        for r in entries:
            rows.append({j: ring.coerce(x).terms for j, x in enumerate(r) if ring.coerce(x).terms})
        return cls(ring, rows)

    @property
    def dim(self):
        return len(self.rows)

    def __matmul__(self, other):
        return AdMatrix(self.ring, kernels.mat_mul(self.rows, other.rows, self.ring.ctx))

    def __eq__(self, other):
        return isinstance(other, AdMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(frozenset((j, frozenset(p.items())) for j, p in r.items()) for r in self.rows))

    def entry(self, i, j):
        from .qtorus import TorusElement
        return TorusElement(self.ring, self.rows[i].get(j, {}))

    def is_identity(self):
        one = self.ring.one().terms
        return all(r == {i: one} for i, r in enumerate(self.rows))

    def difference(self, other, limit=10):
        """Entries where the two matrices differ, as canonical text."""
        out = []
        for i, (ra, rb) in enumerate(zip(self.rows, other.rows)):
            for j in sorted(set(ra) | set(rb)):
                if ra.get(j) != rb.get(j):
                    out.append({"row": i, "col": j, "lhs": self.entry(i, j).to_text(), "rhs": other.entry(i, j).to_text()})
                    if len(out) >= limit:
                        return out
        return out

    def to_text(self):
        return [[self.entry(i, j).to_text() for j in range(self.dim)] for i in range(self.dim)]


def ad_exp(alg, ring, root, a):
    """exp(ad(a X_root)) = sum_k a^k (ad X_root)^k / k! for a central-enough a."""
    a = ring.coerce(a)
    powers = alg.ad_powers(tuple(root))
    apow = [ring.one().terms]
    for _ in range(1, len(powers)):
        apow.append(kernels.poly_mul(apow[-1], a.terms, ring.ctx))
    rows = []
    for i in range(alg.dim):
        row = {}
        for k, M in enumerate(powers):
            if not apow[k]:
                continue
            for j, c in M[i].items():
                term = kernels.poly_scale(apow[k], c)
                cur = row.get(j)
                row[j] = term if cur is None else kernels.poly_add(cur, term)
        rows.append({j: p for j, p in row.items() if p})
    return AdMatrix(ring, rows)


class AdjointModel:
    """Images of Steinberg generators in Aut(g (x) C_sigma)."""

    def __init__(self, frs, ring):
        if not ring.cocycle.is_commutative():
            raise ValueError("the adjoint model needs a commutative cocycle")
        self.frs = frs
        self.ring = ring
        self.alg = chev_algebra(frs.symbol)
        self.dim = self.alg.dim

    def identity(self):
        return AdMatrix.identity(self.ring, self.dim)

    # ring-side generators x^_a(a), n^_a(a), h^_a(a)
    def xhat(self, fin, a):
        return ad_exp(self.alg, self.ring, fin, a)

    def nhat(self, fin, a):
        a = self.ring.coerce(a)
        neg = tuple(-x for x in fin)
        x = self.xhat(fin, a)
        return x @ self.xhat(neg, -a.inverse()) @ x

    def hhat(self, fin, a):
        return self.nhat(fin, a) @ self.nhat(fin, -1)

    # EARS-side generators x_alpha(t), n_alpha(t), h_alpha(t)
    def x(self, root, t):
        t = self.ring.coerce(t)
        return self.xhat(root.fin, t * self.ring.c(root.iso))

    def n(self, root, t):
        t = self.ring.coerce(t)
        s = self.ring.cocycle.sigma(root.iso, tuple(-v for v in root.iso))
        return self.x(root, t) @ self.x(-root, -(t.inverse() * s.inverse())) @ self.x(root, t)

    def h(self, root, t):
        return self.n(root, t) @ self.n(root, -1)


def x_gen(model, root, t):
    return model.x(root, t)


def n_gen(model, root, t):
    return model.n(root, t)


def h_gen(model, root, t):
    return model.h(root, t)


def cartan_restriction(M, rank):
    """The block of M on span{H_i} as a rational matrix; errors unless M stabilises it."""
    n = M.dim - rank
    out = [[Fraction(0)] * rank for _ in range(rank)]
    for i, row in enumerate(M.rows):
        for j, p in row.items():
            if j < n:
                continue
            if i < n:
                raise ValueError("matrix does not stabilise the Cartan subalgebra")
            val = M.entry(i, j).scalar_value()
            if val is None or not val.is_rational():
                raise ValueError("Cartan block has non-rational entries")
            out[i - n][j - n] = Fraction(val.coeffs[0])
    return out


def coroot_reflection(frs, root_fin):
    """Matrix of w_alpha on the coroot basis H_1..H_l."""
    rank = frs.rank
    out = [[Fraction(0)] * rank for _ in range(rank)]
    for j in range(rank):
        # w(alpha_j^vee) = alpha_j^vee - <alpha, alpha_j^vee> alpha^vee
        p = frs.pairing(root_fin, frs.simple_roots[j])
        cor = chev_algebra(frs.symbol).coroot(root_fin)
        for i in range(rank):
            out[i][j] = Fraction(int(i == j)) - p * cor[i]
    return out


# ---------------------------------------------------------------- rank-one 2x2 model

def rank1_x(ring, delta, t):
    t = ring.coerce(t)
    return AdMatrix.from_entries(ring, [[1, t * ring.c(delta)], [0, 1]])


def rank1_x_neg(ring, delta, u):
    """x_{-alpha}(u) for alpha = alpha' + delta."""
    u = ring.coerce(u)
    return AdMatrix.from_entries(ring, [[1, 0], [u * ring.c(tuple(-d for d in delta)), 1]])


def rank1_n(ring, delta, t):
    t = ring.coerce(t)
    s = ring.cocycle.sigma(delta, tuple(-d for d in delta))
    return rank1_x(ring, delta, t) @ rank1_x_neg(ring, delta, -(t.inverse() * s.inverse())) @ rank1_x(ring, delta, t)


def rank1_rep(ring, delta, t, form="x"):
    if form == "x":
        return rank1_x(ring, delta, t)
    if form == "n":
        return rank1_n(ring, delta, t)
    raise ValueError("form must be 'x' or 'n'")


# ---------------------------------------------------------------- commutator constants

@lru_cache(maxsize=None)
def commutator_constants(symbol, a, b):
    """c_ij with (x_a(s), x_b(t)) = prod x_{ia+jb}(c_ij s^i t^j), product ordered by (i+j, i).

    Read off the classical adjoint group by peeling one factor at a time.
    """
    from .qtorus import Cocycle, TorusRing

    frs = build_finite(symbol)
    a, b = tuple(a), tuple(b)
    if not frs.is_root(tuple(x + y for x, y in zip(a, b))):
        return ()
    ring = TorusRing(Cocycle.trivial(0), ("s", "t"))
    model = AdjointModel(frs, ring)
    s, t = ring.var("s"), ring.var("t")
    comm = model.xhat(a, s) @ model.xhat(b, t) @ model.xhat(a, -s) @ model.xhat(b, -t)
    factors = []
    for i in range(1, 5):
        for j in range(1, 5):
            r = tuple(i * x + j * y for x, y in zip(a, b))
            if frs.is_root(r):
                factors.append((i, j, r))
    factors.sort(key=lambda f: (f[0] + f[1], f[0]))
    out = []
    rem = comm
    n = model.alg.nroots
    for i, j, r in factors:
        l = next(l for l in range(frs.rank) if frs.pairing(r, frs.simple_roots[l]))
        p = frs.pairing(r, frs.simple_roots[l])
        entry = rem.entry(model.alg.index[r], n + l)
        mono = ring.monomial((), 1, (i, j))
        coeff = entry.coefficient((i, j)).scalar_value()
        if coeff is None or entry != mono * coeff or not coeff.is_rational():
            raise ArithmeticError(f"unexpected commutator entry for {r}")
        c = -Fraction(coeff.coeffs[0]) / p
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral commutator constant for {r}")
        c = int(c)
        out.append((i, j, c))
        rem = model.xhat(r, mono * (-c)) @ rem
    if not rem.is_identity():
        raise ArithmeticError("commutator is not a product over the expected roots")
    return tuple(out)
