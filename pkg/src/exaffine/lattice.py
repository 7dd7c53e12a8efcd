"""Integer lattices in Z^nu and semilattices stored as cosets of 2<S>.

Vectors are plain tuples of ints written in the fixed basis sigma_1..sigma_nu.
A semilattice S is kept as an echelon basis of its span <S> together with the
set of residues of S modulo 2<S>, written in the coordinates of that basis.
"""
from __future__ import annotations


from fractions import Fraction
from itertools import product


class LatticeError(ValueError):
    pass


# ---------------------------------------------------------------- integer linear algebra

def smith_normal_form(rows):
    """Return (D, U, V) with U*A*V = D diagonal, U and V unimodular.

    ``rows`` is a list of integer rows (any shape); the invariant factors on
    the diagonal are nonnegative and each divides the next.
    """
    a = [list(r) for r in rows]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(n_rows)] for i in range(n_rows)]
    v = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for r in a:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    t = 0
    while t < min(n_rows, n_cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, n_rows) for j in range(t, n_cols) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, n_rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n_cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if done:
                # enforce the divisibility chain
                bad = [(i, j) for i in range(t + 1, n_rows) for j in range(t + 1, n_cols) if a[i][j] % p]
                if not bad:
                    break
                add_row(t, bad[0][0], 1)
                continue
            entries = [(abs(a[i][t]), i, 0) for i in range(t, n_rows) if a[i][t]]
            entries += [(abs(a[t][j]), t, j) for j in range(t, n_cols) if a[t][j]]
            _, i, j = min(entries)
            if j == 0:
                swap_rows(t, i)
            else:
                swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(rows):
    d, _, _ = smith_normal_form(rows)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def integer_rank(rows):
    if not rows:
        return 0
    return len(invariant_factors(rows))


def echelon_basis(vectors, dim):
    """Row-echelon Z-basis (Hermite form) of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for col in range(dim):
        active = [r for r in rows if r[col]]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            for r in active[1:]:
                q = r[col] // piv[col]
                for k in range(dim):
                    r[k] -= q * piv[k]
            active = [r for r in active if r[col]]
        piv = active[0]
        rows = [r for r in rows if r is not piv and any(r)]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(tuple(piv))
    # reduce entries above pivots to keep the basis canonical
    for i in range(len(basis) - 1, -1, -1):
        p = _pivot(basis[i])
        for k in range(i):
            q = basis[k][p] // basis[i][p]
            if q:
                basis[k] = tuple(x - q * y for x, y in zip(basis[k], basis[i]))
    return tuple(basis)


def _pivot(row):
    return next(i for i, x in enumerate(row) if x)


def coordinates(basis, v):
    """Integer coordinates of ``v`` in an echelon basis, or None."""
    rem = list(v)
    out = []
    for b in basis:
        p = _pivot(b)
        if rem[p] % b[p]:
            return None
        q = rem[p] // b[p]
        out.append(q)
        if q:
            rem = [x - q * y for x, y in zip(rem, b)]
    if any(rem):
        return None
    return tuple(out)


def combine(basis, coords, dim):
    out = [0] * dim
    for c, b in zip(coords, basis):
        if c:
            for k in range(dim):
                out[k] += c * b[k]
    return tuple(out)


def lattice_index(sub_basis, dim):
    """|Z^dim / L| for a full-rank lattice L, or None when L is not full rank."""
    if len(sub_basis) != dim:
        return None
    idx = 1
    for f in invariant_factors(sub_basis):
        idx *= f
    return idx


def rational_rank(rows):
    return len(rref(rows)[1])


def rref(rows):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    pivots = []
    r = 0
    for c in range(len(m[0])):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        f = m[r][c]
        m[r] = [x / f for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                g = m[i][c]
                m[i] = [x - g * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows, dim):
    """Basis of {x in Q^dim : rows * x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    m, pivots = rref(rows)
    free = [c for c in range(dim) if c not in pivots]
    out = []
    for f in free:
        x = [Fraction(0)] * dim
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -m[i][f]
        out.append(tuple(x))
    return out


# ---------------------------------------------------------------- semilattices

class CosetUnion:
    """A union of cosets r + 2*<basis> with r running over ``residues``."""

    def __init__(self, dim, basis, residues):
        self.dim = dim
        self.basis = tuple(tuple(b) for b in basis)
        self.residues = frozenset(tuple(x % 2 for x in r) for r in residues)

    @property
    def rank(self):
        return len(self.basis)

    def __contains__(self, v):
        return self.contains(v)

    def contains(self, v):
        c = coordinates(self.basis, v)
        if c is None:
            return False
        return tuple(x % 2 for x in c) in self.residues

    def coset_reps(self):
        return frozenset(combine(self.basis, r, self.dim) for r in self.residues)

    def elements_in_box(self, bound):
        rng = range(-bound, bound + 1)
        return [v for v in product(rng, repeat=self.dim) if self.contains(v)]

    def __eq__(self, other):
        if not isinstance(other, CosetUnion):
            return NotImplemented
        return (self.dim, self.basis, self.residues) == (other.dim, other.basis, other.residues)

    def __hash__(self):
        return hash((self.dim, self.basis, self.residues))


class Semilattice(CosetUnion):
    """A semilattice: 0 in S, S - 2S in S, spanning <S>."""

    def __init__(self, dim, basis, residues):
        super().__init__(dim, basis, residues)
        zero = (0,) * self.rank
        if zero not in self.residues:
            raise LatticeError("semilattice must contain 0")
        # the residues together with 2<S> must generate <S>
        gens = [combine(self.basis, r, dim) for r in self.residues]
        gens += [tuple(2 * x for x in b) for b in self.basis]
        span = echelon_basis(gens, dim)
        if span != self.basis:
            raise LatticeError("coset representatives do not span the stated lattice")

    def is_lattice(self):
        return len(self.residues) == 2 ** self.rank

    def sumset(self, other=None):
        """S + T as a union of cosets of 2<S>; requires <T> inside <S>."""
        other = self if other is None else other
        res = set()
        for a in self.residues:
            for rep in other.coset_reps():
                c = coordinates(self.basis, rep)
                if c is None:
                    raise LatticeError("sumset needs <T> contained in <S>")
                res.add(tuple((x + y) % 2 for x, y in zip(a, c)))
        # 2<T> sits inside 2<S> only when <T> is inside <S>, checked above
        return CosetUnion(self.dim, self.basis, res)

    def __repr__(self):
        reps = sorted(self.coset_reps())
        return f"Semilattice(basis={list(self.basis)}, reps={reps})"


def semilattice_from_generators(gens, dim):
    """Smallest semilattice containing 0 and ``gens``.

    The closure under x -> x +- 2y never leaves the residue classes of
    {0} + gens modulo 2<gens>, so those classes describe S completely.
    """
    gens = [tuple(g) for g in gens]
    for g in gens:
        if len(g) != dim:
            raise LatticeError(f"generator {g} has wrong length, expected {dim}")
    basis = echelon_basis(gens, dim)
    residues = {(0,) * len(basis)}
    for g in gens:
        residues.add(tuple(x % 2 for x in coordinates(basis, g)))
    return Semilattice(dim, basis, residues)


def semilattice_contains(s, v):
    return s.contains(v)


def full_lattice(dim):
    # every coset of 2*Lambda must be listed, not just the unit vectors
    reps = [v for v in product((0, 1), repeat=dim) if any(v)]
    return semilattice_from_generators(reps, dim)


def twist_number(l_semilattice, k, nu):
    """t with |Lambda / <L>| = k**t."""
    idx = lattice_index(l_semilattice.basis, nu)
    if idx is None:
        raise LatticeError("<L> is not of full rank in Lambda")
    if idx == 1:
        return 0
    if k <= 1:
        raise LatticeError(f"index {idx} of <L> is not a power of k={k}")
    t = 0
    while idx % k == 0:
        idx //= k
        t += 1
    if idx != 1:
        raise LatticeError(f"index of <L> is not a power of k={k}")
    return t
