"""The extended affine Weyl group acting on V~ = V_fin + V0 + (V0)*.

Coordinates on V~ are (simple-root coordinates | sigma_1..sigma_nu |
dual basis sigma_1*..sigma_nu*).  Matrices act on column vectors and are
stored as tuples of rows with int/Fraction entries.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .ears import EarsError, Root, enumerate_roots, nonisotropic


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class WeylMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(_norm(x) for x in r) for r in rows)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def dim(self):
        return len(self.rows)

    def __matmul__(self, other):
        cols = list(zip(*other.rows))
        return WeylMatrix([[sum(a * b for a, b in zip(r, c) if a and b) for c in cols] for r in self.rows])

    def apply(self, v):
        return tuple(_norm(sum(a * b for a, b in zip(r, v) if a and b)) for r in self.rows)

    def transpose(self):
        return WeylMatrix(list(zip(*self.rows)))

    def __eq__(self, other):
        return isinstance(other, WeylMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_identity(self):
        return all(x == int(i == j) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = WeylMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def inverse(self):
        n = self.dim
        a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next(i for i in range(c, n) if a[i][c])
            a[c], a[p] = a[p], a[c]
            f = a[c][c]
            a[c] = [x / f for x in a[c]]
            for i in range(n):
                if i != c and a[i][c]:
                    g = a[i][c]
                    a[i] = [x - g * y for x, y in zip(a[i], a[c])]
        return WeylMatrix([r[n:] for r in a])

    def to_text(self):
        return [[str(x) for x in r] for r in self.rows]


class TildeSpace:
    def __init__(self, D):
        self.D = D
        self.l = D.rank
        self.nu = D.nu
        self.dim = self.l + 2 * self.nu
        g = [[0] * self.dim for _ in range(self.dim)]
        for i in range(self.l):
            for j in range(self.l):
                g[i][j] = D.finite.gram[i][j]
        for i in range(self.nu):
            g[self.l + i][self.l + self.nu + i] = 1
            g[self.l + self.nu + i][self.l + i] = 1
        self.gram = WeylMatrix(g)

    def vector(self, root):
        return tuple(root.fin) + tuple(root.iso) + (0,) * self.nu

    def inner(self, u, v):
        g = self.gram.rows
        return sum(u[i] * g[i][j] * v[j] for i in range(self.dim) if u[i] for j in range(self.dim) if v[j])

    def preserves_form(self, m):
        return m.transpose() @ self.gram @ m == self.gram

    def root_of(self, v):
        """Back from a V~ vector to a Root, or None if it has a (V0)* part."""
        if any(v[self.l + self.nu:]):
            return None
        return Root(tuple(v[:self.l]), tuple(v[self.l:self.l + self.nu]))


def reflection_matrix(space, alpha):
    if alpha.isotropic:
        raise EarsError("reflections need a non-isotropic root")
    a = space.vector(alpha)
    ga = [sum(space.gram.rows[i][j] * a[j] for j in range(space.dim)) for i in range(space.dim)]
    norm = space.inner(a, a)
    rows = []
    for i in range(space.dim):
        rows.append([int(i == j) - Fraction(2 * a[i] * ga[j], norm) for j in range(space.dim)])
    return WeylMatrix(rows)


def k_of(frs, which):
    """k(theta_l) = 1, k(theta_s) = 3 for G2 and 2 otherwise; 1 when simply laced."""
    if which not in ("s", "l"):
        raise ValueError("which must be 's' (theta_s) or 'l' (theta_l)")
    if frs.simply_laced or which == "l":
        return 1
    return 3 if frs.letter == "G" else 2


def theta(frs, which):
    if frs.simply_laced:
        return frs.theta_s
    return frs.theta_s if which == "s" else frs.theta_l


def conj_element(D, space, alpha, sigma, reflections=None):
    """c_(alpha, sigma) = (w_{alpha+sigma} w_alpha) prod_i (w_alpha w_{alpha+sigma_i})^{m_i}."""
    refl = reflections if reflections is not None else {}

    def w(r):
        m = refl.get(r)
        if m is None:
            if not D.contains(r):
                raise EarsError(f"{r} is not a root")
            m = reflection_matrix(space, r)
            refl[r] = m
        return m

    sigma = tuple(sigma)
    shifted = Root(alpha.fin, tuple(a + s for a, s in zip(alpha.iso, sigma)))
    out = w(shifted) @ w(alpha)
    for i, mi in enumerate(sigma):
        if mi == 0:
            continue
        e = Root(alpha.fin, tuple(a + int(i == j) for j, a in enumerate(alpha.iso)))
        factor = w(alpha) @ w(e)
        out = out @ (factor ** mi)
    return out


def is_reduced_collection(frs, nu, twist, coll):
    for entry in coll:
        if len(entry) != 3:
            raise ValueError(f"malformed triple {entry!r}")
        eps, which, eta = entry
        if eps not in (1, -1) or which not in ("s", "l") or len(eta) != nu:
            raise ValueError(f"malformed triple {entry!r}")
        if which == "l" and not frs.simply_laced and any(eta[:twist]):
            raise ValueError(f"theta_l entry {entry!r} must be supported on sigma_{twist + 1}..")
    for i in range(nu):
        for j in range(i + 1, nu):
            if sum(k_of(frs, which) * eps * eta[i] * eta[j] for eps, which, eta in coll):
                return False
    return True


def _theta_root(D, which, eta):
    return Root(theta(D.finite, which), tuple(eta))


def collection_admissible(D, coll):
    """Every factor root of every c_(theta, eta) lies in R."""
    for _, which, eta in coll:
        r = _theta_root(D, which, eta)
        if not D.contains(r):
            return False
        for i, m in enumerate(eta):
            if m and not D.contains(Root(r.fin, tuple(int(i == j) for j in range(D.nu)))):
                return False
    return True


def random_reduced_collection(D, seed, length=6, spread=2):
    """Deterministic reduced collection built from cancelling blocks."""
    if D.nu < 2:
        raise ValueError("reduced collections are only constrained for nullity >= 2")
    rng = random.Random(seed)
    frs = D.finite
    nu, t = D.nu, D.twist
    whiches = ("s",) if frs.simply_laced else ("s", "l")

    def vec(which):
        while True:
            v = [rng.randint(-spread, spread) for _ in range(nu)]
            if which == "l" and not frs.simply_laced:
                v[:t] = [0] * t
            if any(v):
                return tuple(v)

    def admissible(block):
        return collection_admissible(D, block)

    coll = []
    attempts = 0
    while len(coll) < length:
        attempts += 1
        if attempts > 10000:
            raise RuntimeError("could not generate an admissible reduced collection")
        kind = rng.randrange(4)
        which = rng.choice(whiches)
        if kind == 0:
            eta = vec(which)
            eps = rng.choice((1, -1))
            block = [(eps, which, eta), (-eps, which, eta)]
        elif kind == 1:
            a, b = vec(which), vec(which)
            s = tuple(x + y for x, y in zip(a, b))
            d = tuple(x - y for x, y in zip(a, b))
            if not any(s) or not any(d):
                continue
            eps = rng.choice((1, -1))
            block = [(eps, which, s), (eps, which, d)] + [(-eps, which, a)] * 2 + [(-eps, which, b)] * 2
        elif kind == 2 and not frs.simply_laced:
            eta = vec("l")
            kk = k_of(frs, "s")
            eps = rng.choice((1, -1))
            block = [(eps, "s", eta)] + [(-eps, "l", eta)] * kk
        else:
            i = rng.randrange(nu)
            if which == "l" and not frs.simply_laced and i < t:
                continue
            m = rng.choice([x for x in range(-spread, spread + 1) if x])
            eta = tuple(m * int(i == j) for j in range(nu))
            block = [(rng.choice((1, -1)), which, eta)]
        if admissible(block):
            coll.extend(block)
    rng.shuffle(coll)
    assert is_reduced_collection(frs, nu, t, coll)
    return coll


def collection_product(D, space, coll, use_eps=True, reflections=None):
    out = WeylMatrix.identity(space.dim)
    for eps, which, eta in coll:
        c = conj_element(D, space, _theta_root(D, which, tuple(0 for _ in eta)), eta, reflections)
        out = out @ (c ** eps if use_eps else c)
    return out


def check_presentation(D, samples=500, collections=50, seed=0, bound=2):
    rng = random.Random(seed)
    space = TildeSpace(D)
    rx = nonisotropic(enumerate_roots(D, bound))
    refl = {}

    def w(r):
        m = refl.get(r)
        if m is None:
            m = reflection_matrix(space, r)
            refl[r] = m
        return m

    out = {"samples": samples, "bound": bound}
    fails_i, fails_form = [], []
    for r in rx:
        m = w(r)
        if not (m @ m).is_identity():
            fails_i.append(r.to_json())
    for r in rng.sample(rx, min(len(rx), 40)):
        if not space.preserves_form(w(r)):
            fails_form.append(r.to_json())
    out["i"] = {"instances": len(rx), "failures": fails_i, "passed": not fails_i}

    fails_ii = []
    for _ in range(samples):
        a, b = rng.choice(rx), rng.choice(rx)
        image = D.reflect(a, b)
        lhs = w(a) @ w(b) @ w(a)
        if not D.contains(image) or lhs != w(image):
            fails_ii.append({"alpha": a.to_json(), "beta": b.to_json()})
    out["ii"] = {"instances": samples, "failures": fails_ii[:20], "passed": not fails_ii}
    out["form_preserved"] = {"instances": min(len(rx), 40), "failures": fails_form, "passed": not fails_form}

    if D.nu >= 2 and collections:
        fails_iii = []
        plain_identity = 0
        for k in range(collections):
            coll = random_reduced_collection(D, rng.randrange(2 ** 31), length=4 + k % 6)
            prod_eps = collection_product(D, space, coll, True, refl)
            if not prod_eps.is_identity():
                fails_iii.append({"collection": _coll_json(coll), "product": prod_eps.to_text()})
            if collection_product(D, space, coll, False, refl).is_identity():
                plain_identity += 1
        out["iii"] = {
            "instances": collections,
            "failures": fails_iii[:5],
            "passed": not fails_iii,
            "unsigned_product_identity": plain_identity,
        }
    else:
        out["iii"] = {"instances": 0, "failures": [], "passed": True, "note": "nullity < 2"}
    out["passed"] = all(out[k]["passed"] for k in ("i", "ii", "iii", "form_preserved"))
    return out


def _coll_json(coll):
    return [[eps, "theta_" + which, list(eta)] for eps, which, eta in coll]
