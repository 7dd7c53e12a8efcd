"""Finite reduced irreducible root systems and Chevalley structure constants.

Roots are integer tuples in simple-root coordinates.  The Gram matrix of the
simple roots is normalised so that short roots have norm 2 (long roots have
norm 4 in types B, C, F and 6 in G_2; every root counts as short in the
simply-laced types).
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache


class RootSystemError(ValueError):
    pass


def _chain_gram(n, norms, links):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = norms[i]
    for i, j, v in links:
        g[i][j] = g[j][i] = v
    return g


def _gram(letter, n):
    if letter == "A" and n >= 1:
        return _chain_gram(n, [2] * n, [(i, i + 1, -1) for i in range(n - 1)])
    if letter == "B" and n == 2:
        # alpha_1 short, alpha_2 long
        return [[2, -2], [-2, 4]]
    if letter == "B" and n >= 3:
        return _chain_gram(n, [4] * (n - 1) + [2], [(i, i + 1, -2) for i in range(n - 1)])
    if letter == "C" and n >= 3:
        links = [(i, i + 1, -1) for i in range(n - 2)] + [(n - 2, n - 1, -2)]
        return _chain_gram(n, [2] * (n - 1) + [4], links)
    if letter == "D" and n >= 4:
        links = [(i, i + 1, -1) for i in range(n - 2)] + [(n - 3, n - 1, -1)]
        return _chain_gram(n, [2] * n, links)
    if letter == "E" and n in (6, 7, 8):
        # Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
        links = [(0, 2, -1), (1, 3, -1)] + [(i, i + 1, -1) for i in range(2, n - 1)]
        return _chain_gram(n, [2] * n, links)
    if letter == "F" and n == 4:
        return _chain_gram(4, [4, 4, 2, 2], [(0, 1, -2), (1, 2, -2), (2, 3, -1)])
    if letter == "G" and n == 2:
        return [[2, -3], [-3, 6]]
    raise RootSystemError(f"unsupported finite type {letter}{n}")


def parse_type(symbol):
    m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", str(symbol))
    if not m:
        raise RootSystemError(f"cannot parse root system type {symbol!r}")
    letter, n = m.group(1).upper(), int(m.group(2))
    if letter == "C" and n == 2:
        letter = "B"
    _gram(letter, n)
    return letter, n


class FiniteRootSystem:
    """A finite root system with its roots, pairings and long/short split."""

    def __init__(self, letter, rank):
        self.letter = letter
        self.rank = rank
        self.symbol = f"{letter}{rank}"
        self.gram = tuple(tuple(r) for r in _gram(letter, rank))
        self.simply_laced = len({self.gram[i][i] for i in range(rank)}) == 1
        self.k = {"G": 3}.get(letter, 1 if self.simply_laced else 2)
        self.cartan = tuple(
            tuple(2 * self.gram[i][j] // self.gram[j][j] for j in range(rank)) for i in range(rank)
        )
        self.simple_roots = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
        pos = self._positive_roots()
        pos.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
        self.positive_roots = tuple(pos)
        self.roots = self.positive_roots + tuple(tuple(-x for x in r) for r in pos)
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.short_norm = 2
        self.long_norm = max(self.gram[i][i] for i in range(rank))

    def _positive_roots(self):
        found = set(self.simple_roots)
        frontier = list(found)
        while frontier:
            new = []
            for b in frontier:
                for i in range(self.rank):
                    r = self.reflect(self.simple_roots[i], b)
                    if r not in found and any(r):
                        found.add(r)
                        new.append(r)
            frontier = new
        return [r for r in found if all(x >= 0 for x in r)]

    def inner(self, a, b):
        g = self.gram
        n = self.rank
        return sum(a[i] * g[i][j] * b[j] for i in range(n) if a[i] for j in range(n) if b[j])

    def norm(self, a):
        return self.inner(a, a)

    def pairing(self, b, a):
        """<b, a> = 2 (b, a) / (a, a)."""
        num = 2 * self.inner(b, a)
        den = self.norm(a)
        if num % den:
            return Fraction(num, den)
        return num // den

    def reflect(self, a, b):
        p = self.pairing(b, a)
        return tuple(x - p * y for x, y in zip(b, a))

    def is_root(self, v):
        return tuple(v) in self.index

    def is_long(self, a):
        return not self.simply_laced and self.norm(a) == self.long_norm

    def is_short(self, a):
        return not self.is_long(a)

    @property
    def long_roots(self):
        return tuple(r for r in self.roots if self.is_long(r))

    @property
    def short_roots(self):
        return tuple(r for r in self.roots if self.is_short(r))

    def height(self, a):
        return sum(a)

    @property
    def theta_s(self):
        """Highest short root (every root is short when simply laced)."""
        return max((r for r in self.positive_roots if self.is_short(r)), key=self.height)

    @property
    def theta_l(self):
        if self.simply_laced:
            return self.theta_s
        return max((r for r in self.positive_roots if self.is_long(r)), key=self.height, default=None)

    def string_p(self, r, s):
        """Largest p with s - p*r a root."""
        p = 0
        while True:
            v = tuple(y - (p + 1) * x for x, y in zip(r, s))
            if v not in self.index:
                return p
            p += 1

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def __repr__(self):
        return f"FiniteRootSystem({self.symbol})"


def canonical_order(items):
    """Sort (i, j, root) triples of a rank-2 positive system by height i + j.

    Among the simple roots (height 1) the first basis element (i = 1) comes
    first; no other height has ties in a rank-2 system.
    """
    return sorted(items, key=lambda e: (e[0] + e[1], -e[0]))


@lru_cache(maxsize=None)
def build_finite(symbol):
    letter, n = parse_type(symbol)
    return FiniteRootSystem(letter, n)


# ---------------------------------------------------------------- structure constants

class ChevalleyConstants:
    """N_{a,b} with [X_a, X_b] = N_{a,b} X_{a+b}, fixed by extraspecial pairs.

    Every extraspecial pair (r, s) gets the positive sign N_{r,s} = p + 1; all
    remaining constants follow from the standard relations between the N's.
    """

    def __init__(self, frs):
        self.frs = frs
        self.table = {}
        self.extraspecial = {}
        self._build()

    def _norm(self, a):
        return self.frs.norm(a)

    def _build(self):
        f = self.frs
        order = {r: i for i, r in enumerate(f.positive_roots)}
        for xi in f.positive_roots:
            if sum(xi) == 1:
                continue
            special = []
            for r in f.positive_roots:
                s = tuple(x - y for x, y in zip(xi, r))
                if s in order and order[r] < order[s]:
                    special.append((r, s))
            special.sort(key=lambda rs: order[rs[0]])
            r0, s0 = special[0]
            self.extraspecial[xi] = (r0, s0)
            self.table[(r0, s0)] = f.string_p(r0, s0) + 1
            for r, s in special[1:]:
                # Carter's four-root relation with r + s - r0 - s0 = 0
                t, u = _neg(r0), _neg(s0)
                acc = Fraction(0)
                rt = f.add(s, t)
                if f.is_root(rt):
                    acc += Fraction(self.get(s, t) * self.get(r, u), self._norm(rt))
                tr = f.add(t, r)
                if f.is_root(tr):
                    acc += Fraction(self.get(t, r) * self.get(s, u), self._norm(tr))
                val = -acc * self._norm(xi) / self.get(t, u)
                if val.denominator != 1:
                    raise ArithmeticError(f"non-integral structure constant for {r}, {s}")
                self.table[(r, s)] = int(val)

    def get(self, a, b):
        a, b = tuple(a), tuple(b)
        f = self.frs
        c = f.add(a, b)
        if not f.is_root(c):
            return 0
        key = (a, b)
        if key in self.table:
            return self.table[key]
        pa = all(x >= 0 for x in a)
        pb = all(x >= 0 for x in b)
        if pa and pb:
            if (b, a) in self.table:
                val = -self.table[(b, a)]
            else:
                raise KeyError(f"structure constant for {a}, {b} not yet fixed")
        elif not pa and not pb:
            p = f.string_p(a, b)
            val = Fraction(-(p + 1) ** 2, self.get(_neg(a), _neg(b)))
            val = int(val)
        elif pa and not pb:
            # a + b + (-c) = 0
            if all(x >= 0 for x in c):
                val = Fraction(self._norm(c), self._norm(a)) * self.get(b, _neg(c))
            else:
                val = Fraction(self._norm(c), self._norm(b)) * self.get(_neg(c), a)
            val = int(val)
        else:
            val = -self.get(b, a)
        self.table[key] = val
        return val

    def full_table(self):
        f = self.frs
        return {(a, b): self.get(a, b) for a in f.roots for b in f.roots if f.is_root(f.add(a, b))}


def _neg(a):
    return tuple(-x for x in a)


@lru_cache(maxsize=None)
def chevalley_constants(symbol):
    return ChevalleyConstants(build_finite(symbol))


# ---------------------------------------------------------------- classification

def classify_roots(vectors, gram):
    """Cartan-Killing type of a finite root set, e.g. ``"A2"`` or ``"A1xA1"``.

    ``vectors`` are coordinate tuples, ``gram`` the ambient bilinear form.
    """
    vecs = [tuple(v) for v in vectors]
    n = len(gram)

    def ip(a, b):
        return sum(a[i] * gram[i][j] * b[j] for i in range(n) for j in range(n))

    seen = set()
    comps = []
    for v in vecs:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in vecs:
                if y not in seen and ip(x, y) != 0:
                    seen.add(y)
                    stack.append(y)
        comps.append(comp)
    names = sorted(_classify_irreducible(c, ip) for c in comps)
    return "x".join(names) if names else "empty"


def _classify_irreducible(roots, ip):
    from .lattice import rational_rank

    r = rational_rank(roots)
    count = len(roots)
    norms = sorted({ip(x, x) for x in roots})
    if len(norms) == 1:
        if count == r * (r + 1):
            return f"A{r}"
        if count == 2 * r * (r - 1):
            return f"D{r}"
        return {72: "E6", 126: "E7", 240: "E8"}.get(count, f"?{r}/{count}")
    ratio = Fraction(norms[1], norms[0])
    if ratio == 3:
        return "G2"
    if count == 48 and r == 4:
        return "F4"
    n_short = sum(1 for x in roots if ip(x, x) == norms[0])
    if n_short == 2 * r:
        return f"B{r}"
    return f"C{r}"
