"""Extended affine root systems R = (S+S) u (R_sh + S) u (R_lg + L).

A root is a pair (fin, iso): ``fin`` is an element of the finite root system
(or zero) in simple-root coordinates and ``iso`` its isotropic part in the
basis sigma_1..sigma_nu of Lambda.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .finroot import build_finite, classify_roots
from .lattice import (
    LatticeError,
    full_lattice,
    integer_rank,
    lattice_index,
    nullspace,
    semilattice_from_generators,
    twist_number,
)


class EarsError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Root:
    fin: tuple
    iso: tuple

    def __add__(self, other):
        return Root(tuple(a + b for a, b in zip(self.fin, other.fin)),
                    tuple(a + b for a, b in zip(self.iso, other.iso)))

    def __sub__(self, other):
        return Root(tuple(a - b for a, b in zip(self.fin, other.fin)),
                    tuple(a - b for a, b in zip(self.iso, other.iso)))

    def __neg__(self):
        return Root(tuple(-a for a in self.fin), tuple(-a for a in self.iso))

    def scale(self, q):
        return Root(tuple(q * a for a in self.fin), tuple(q * a for a in self.iso))

    @property
    def isotropic(self):
        return not any(self.fin)

    def to_json(self):
        return {"fin": list(self.fin), "iso": list(self.iso)}

    def __str__(self):
        return f"{list(self.fin)}+{list(self.iso)}"


@dataclass(eq=False)
class EarsDescriptor:
    finite: object
    nu: int
    S: object
    L: object
    k: int
    twist: int
    cocycle: object = None
    _cache: dict = field(default_factory=dict, repr=False)
    _r0: object = field(default=None, repr=False)

    @property
    def rank(self):
        return self.finite.rank

    @property
    def symbol(self):
        return self.finite.symbol

    @property
    def r0(self):
        if self._r0 is None:
            self._r0 = self.S.sumset()
        return self._r0

    def root(self, fin, iso=None):
        iso = (0,) * self.nu if iso is None else tuple(iso)
        return Root(tuple(fin), iso)

    def iso_class(self, fin):
        """Which set the isotropic part must lie in: 'S', 'L', 'R0' or None."""
        if not any(fin):
            return "R0"
        if not self.finite.is_root(fin):
            return None
        return "L" if self.finite.is_long(fin) else "S"

    def contains(self, x):
        key = (x.fin, x.iso)
        hit = self._cache.get(key)
        if hit is None:
            cls = self.iso_class(x.fin)
            if cls is None:
                hit = False
            elif cls == "R0":
                hit = self.r0.contains(x.iso)
            elif cls == "S":
                hit = self.S.contains(x.iso)
            else:
                hit = self.L.contains(x.iso)
            self._cache[key] = hit
        return hit

    __contains__ = contains

    def pairing(self, b, a):
        """(b, a^vee) for a non-isotropic; the isotropic parts do not contribute."""
        return self.finite.pairing(b.fin, a.fin)

    def inner(self, a, b):
        return self.finite.inner(a.fin, b.fin)

    def reflect(self, a, b):
        p = self.pairing(b, a)
        return b - a.scale(p)

    def spec_echo(self):
        return {
            "type": self.symbol,
            "nullity": self.nu,
            "S_basis": [list(b) for b in self.S.basis],
            "S_reps": sorted(list(r) for r in self.S.coset_reps()),
            "L_basis": [list(b) for b in self.L.basis] if self.L is not None else None,
            "L_reps": sorted(list(r) for r in self.L.coset_reps()) if self.L is not None else None,
            "k": self.k,
            "twist": self.twist,
        }


def build_descriptor(type_symbol, nu, s_generators, l_generators=None, k=None, twist=None, cocycle=None):
    """Validate (S, L) data and return an :class:`EarsDescriptor`."""
    frs = build_finite(type_symbol)
    if nu < 0:
        raise EarsError("nullity must be nonnegative")
    try:
        S = semilattice_from_generators(s_generators, nu) if nu else full_lattice(0)
    except LatticeError as e:
        raise EarsError(f"S: {e}") from e
    for i in range(nu):
        e_i = tuple(int(i == j) for j in range(nu))
        if not S.contains(e_i):
            raise EarsError(f"S must contain the basis vector sigma_{i + 1}")
    expected_k = frs.k
    if k is not None and k != expected_k:
        raise EarsError(f"k={k} does not match type {frs.symbol} (expected {expected_k})")
    k = expected_k
    if frs.simply_laced:
        if l_generators:
            raise EarsError(f"type {frs.symbol} has no long roots; L_generators must be empty")
        L = S
        t = 0
    else:
        if l_generators is None:
            raise EarsError(f"type {frs.symbol} needs L_generators")
        try:
            L = semilattice_from_generators(l_generators, nu) if nu else full_lattice(0)
        except LatticeError as e:
            raise EarsError(f"L: {e}") from e
        _check_interaction(S, L, k)
        try:
            t = twist_number(L, k, nu) if nu else 0
        except LatticeError as e:
            raise EarsError(f"L: {e}") from e
        # adapted basis: <L> contains k*sigma_1..k*sigma_t and sigma_{t+1}..sigma_nu
        for i in range(nu):
            v = tuple((k if i < t else 1) * int(i == j) for j in range(nu))
            if lattice_index(L.basis, nu) is None or not _in_span(L.basis, v):
                raise EarsError(
                    f"basis not adapted to L: expected {list(v)} in <L> for twist {t}"
                )
    # w_a(b) with <b, a> = -1 adds the isotropic parts, so that set must be closed under sums
    for label, cls, sl in (("S", frs.short_roots, S), ("L", frs.long_roots if not frs.simply_laced else (), L)):
        if nu and not sl.is_lattice() and any(abs(frs.pairing(b, a)) == 1 for a in cls for b in cls):
            raise EarsError(f"{label}: type {frs.symbol} needs {label} to be a lattice (roots of equal length pair to -1)")
    if twist is not None and twist != t:
        raise EarsError(f"twist {twist} does not match the index of <L> (computed twist {t})")
    if cocycle is not None:
        if cocycle.nu != nu:
            raise EarsError("cocycle rank does not match nullity")
        if not (frs.letter == "A" and frs.rank >= 2) and not cocycle.is_commutative():
            raise EarsError(
                f"type {frs.symbol} requires a commutative cocycle (K symmetric mod m)"
            )
    return EarsDescriptor(frs, nu, S, L, k, t, cocycle)


def _in_span(basis, v):
    from .lattice import coordinates
    return coordinates(basis, v) is not None


def _check_interaction(S, L, k):
    # L inside S and S + L inside S, tested on coset representatives
    for r in L.coset_reps():
        if not S.contains(r):
            raise EarsError("L must be contained in S")
    for a in S.coset_reps():
        for b in L.coset_reps():
            if not S.contains(tuple(x + y for x, y in zip(a, b))):
                raise EarsError("interaction condition S + L in S fails")
    # L + kS inside L: needs k<S> inside <L> and the representative sums in L
    for b in S.basis:
        if not _in_span(L.basis, tuple(k * x for x in b)):
            raise EarsError(f"interaction condition L + {k}S in L fails (k<S> not in <L>)")
    for a in S.coset_reps():
        for b in L.coset_reps():
            if not L.contains(tuple(y + k * x for x, y in zip(a, b))):
                raise EarsError(f"interaction condition L + {k}S in L fails")


def ears_contains(D, x):
    if len(x.fin) != D.rank or len(x.iso) != D.nu:
        raise EarsError("root dimensions do not match the descriptor")
    return D.contains(x)


def iso_box(nu, bound):
    rng = range(-bound, bound + 1)
    return list(product(rng, repeat=nu))


def enumerate_roots(D, bound):
    """All roots with max-norm of the isotropic part at most ``bound``."""
    out = []
    zero = (0,) * D.rank
    box = iso_box(D.nu, bound)
    for fin in (zero,) + D.finite.roots:
        for iso in box:
            r = Root(fin, iso)
            if D.contains(r):
                out.append(r)
    return out


def nonisotropic(roots):
    return [r for r in roots if not r.isotropic]


# ---------------------------------------------------------------- axioms

def verify_axioms(D, bound, samples=None, seed=0):
    roots = enumerate_roots(D, bound)
    rx = nonisotropic(roots)
    report = {"bound": bound, "roots_in_box": len(roots)}
    fails = {}

    vecs = [r.fin + r.iso for r in roots]
    rank = integer_rank(vecs)
    expected = D.rank + D.nu
    fails["R1"] = [] if rank == expected else [{"rank": rank, "expected": expected}]

    bad = []
    fins = sorted({r.fin for r in rx})
    for a in fins:
        for b in fins:
            p = D.finite.pairing(b, a)
            if not isinstance(p, int):
                bad.append({"alpha": list(a), "beta": list(b), "pairing": str(p)})
    fails["R2"] = bad

    # R3 against the global oracle; the image only depends on (fin, iso) data
    bad = []
    checked = 0
    by_fin = {}
    for r in roots:
        by_fin.setdefault(r.fin, []).append(r.iso)
    for a_fin in fins:
        a_isos = by_fin[a_fin]
        for b_fin, b_isos in by_fin.items():
            p = D.finite.pairing(b_fin, a_fin)
            w_fin = tuple(y - p * x for x, y in zip(a_fin, b_fin))
            for da in a_isos:
                for db in b_isos:
                    checked += 1
                    w = Root(w_fin, tuple(y - p * x for x, y in zip(da, db)))
                    if not D.contains(w):
                        bad.append({"alpha": Root(a_fin, da).to_json(), "beta": Root(b_fin, db).to_json()})
    report["R3_checked"] = checked
    fails["R3"] = bad[:20]

    # R4: isotropic differences lie in R0 and every isotropic root is a difference
    bad = []
    for fin_, isos in by_fin.items():
        if not any(fin_):
            continue
        for d1 in isos:
            for d2 in isos:
                diff = tuple(x - y for x, y in zip(d1, d2))
                if not D.contains(Root((0,) * D.rank, diff)):
                    bad.append({"difference_of": [list(d1), list(d2)], "fin": list(fin_)})
    search = iso_box(D.nu, bound + 1)
    short = D.finite.short_roots[0]
    for iso in by_fin.get((0,) * D.rank, []):
        witness = None
        for s1 in search:
            s2 = tuple(x - y for x, y in zip(s1, iso))
            if D.contains(Root(short, s1)) and D.contains(Root(short, s2)):
                witness = s1
                break
        if witness is None:
            bad.append({"isotropic_without_witness": list(iso)})
    fails["R4"] = bad[:20]

    rng = random.Random(seed)
    sample = rx if samples is None or samples >= len(rx) else rng.sample(rx, samples)
    fails["R5"] = [r.to_json() for r in sample if D.contains(r.scale(2))]

    # irreducibility of R^x reduces to the non-orthogonality graph of the finite part
    t = classify_roots(D.finite.roots, D.finite.gram)
    fails["irreducible"] = [] if "x" not in t else [{"type": t}]

    report["axioms"] = {k: {"passed": not v, "failures": v} for k, v in fails.items()}
    report["passed"] = all(not v for v in fails.values())
    return report


# ---------------------------------------------------------------- pairs and subsystems

def is_nilpotent_pair(D, a, b):
    if a.isotropic or b.isotropic:
        raise EarsError("nilpotent pairs are formed from non-isotropic roots")
    c = a + b
    return not c.isotropic and D.contains(c)


def finite_pattern(D, a, b, reading="span"):
    """Roots of the finite system in the rational (or integral) span of a, b.

    Each entry is (gamma, q1, q2) with gamma = q1*a + q2*b.
    """
    F = D.finite
    out = []
    for g in F.roots:
        q = _solve2(a.fin, b.fin, g)
        if q is None:
            continue
        if reading == "lattice" and (q[0].denominator != 1 or q[1].denominator != 1):
            continue
        out.append((g, q[0], q[1]))
    return out


def _solve2(u, v, w):
    """Rational (x, y) with x*u + y*v = w, or None."""
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            det = u[i] * v[j] - u[j] * v[i]
            if det:
                x = Fraction(w[i] * v[j] - w[j] * v[i], det)
                y = Fraction(u[i] * w[j] - u[j] * w[i], det)
                if all(x * u[k] + y * v[k] == w[k] for k in range(n)):
                    return x, y
                return None
    return None


def finite_pattern_type(D, a, b, reading="span"):
    pat = finite_pattern(D, a, b, reading)
    return classify_roots([g for g, _, _ in pat], D.finite.gram)


@dataclass
class Rank2Subsystem:
    alpha: Root
    beta: Root
    roots: list            # (root, q1, q2) for every non-isotropic root of R_{a,b}
    type: str
    missing: list          # lifts of finite-pattern roots that are not in R
    norms: dict = field(default_factory=dict)

    def root_set(self):
        return frozenset(r for r, _, _ in self.roots)

    def positive_pairs(self):
        """(i, j, root) with i, j >= 1 integers, sorted by canonical order."""
        out = []
        for r, x, y in self.roots:
            if x.denominator == 1 and y.denominator == 1 and x >= 1 and y >= 1:
                out.append((int(x), int(y), r))
        out.sort(key=lambda e: (e[0] + e[1], e[0]))
        return out


def _lift(a, b, x, y):
    iso = tuple(x * p + y * q for p, q in zip(a.iso, b.iso))
    if any(getattr(v, "denominator", 1) != 1 for v in iso):
        return None, iso
    return tuple(int(v) for v in iso), iso


def rank2_subsystem(D, a, b):
    if not is_nilpotent_pair(D, a, b):
        raise EarsError(f"({a}, {b}) is not a nilpotent pair")
    roots, missing = [], []
    for g, x, y in finite_pattern(D, a, b, "span"):
        iso, raw = _lift(a, b, x, y)
        if iso is not None and D.contains(Root(g, iso)):
            roots.append((Root(g, iso), x, y))
        else:
            missing.append({"fin": list(g), "iso": [str(v) for v in raw], "coeffs": [str(x), str(y)]})
    t = classify_roots([r.fin for r, _, _ in roots], D.finite.gram)
    sub = Rank2Subsystem(a, b, roots, t, missing)
    sub.norms = {r: D.finite.norm(r.fin) for r, _, _ in roots}
    return sub


def nilpotent_pairs(D, bound):
    """Unordered nilpotent pairs {a, b} among the non-isotropic roots of the box."""
    rx = nonisotropic(enumerate_roots(D, bound))
    out = []
    for i, a in enumerate(rx):
        for b in rx[i + 1:]:
            c_fin = tuple(x + y for x, y in zip(a.fin, b.fin))
            if not D.finite.is_root(c_fin):
                continue
            if D.contains(a + b):
                out.append((a, b))
    return out


def classify_pairs(D, bound):
    """Type of every nilpotent pair against the finite-pattern prediction."""
    counts = {}
    mismatches = []
    lattice_mismatches = 0
    pairs = nilpotent_pairs(D, bound)
    for a, b in pairs:
        sub = rank2_subsystem(D, a, b)
        counts[sub.type] = counts.get(sub.type, 0) + 1
        predicted = finite_pattern_type(D, a, b, "span")
        if predicted != sub.type:
            mismatches.append({
                "alpha": a.to_json(), "beta": b.to_json(),
                "type": sub.type, "predicted": predicted,
                "missing_lifts": sub.missing,
            })
        if finite_pattern_type(D, a, b, "lattice") != sub.type:
            lattice_mismatches += 1
    return {
        "pairs": len(pairs),
        "counts": dict(sorted(counts.items())),
        "mismatches": mismatches,
        "lattice_reading_mismatches": lattice_mismatches,
        "passed": not mismatches,
    }


def rebase(sub):
    """Simple roots (short one first) of the positive system of R_ab containing a and b."""
    # generic functional, positive on both a and b
    val = {r: 7 * x + 5 * y for r, x, y in sub.roots}
    pos = [r for r, _, _ in sub.roots if val[r] > 0]
    posset = set(pos)
    simple = [r for r in pos if not any((r - p) in posset for p in pos if p != r)]
    simple.sort(key=lambda r: (sub_norm(sub, r), val[r]))
    return simple


def sub_norm(sub, r):
    return sub.norms[r]


def pair_delta_semilattices(D, a, b):
    """(S_ab, L_ab) = (Z delta, m Z delta) for a base {a', b'} of R_ab.

    When {a, b} is not itself a base of R_ab the pair is first rebased and
    delta = delta_a' + delta_b', falling back to delta_a + delta_b when that
    sum vanishes.  The containments r + S_ab (short r) and
    r + L_ab (long r) in R are then tested for every root r of R_ab on a
    window of multiples.
    """
    delta_in = tuple(x + y for x, y in zip(a.iso, b.iso))
    if not any(delta_in):
        raise EarsError("pair_delta_semilattices needs delta_a + delta_b != 0")
    sub = rank2_subsystem(D, a, b)
    base = rebase(sub)
    delta = tuple(x + y for x, y in zip(base[0].iso, base[1].iso))
    letter = sub.type[0]
    l_mult = {"B": 2, "C": 2, "G": 3}.get(letter, 1)
    out = {
        "input_delta": list(delta_in),
        "delta": list(delta),
        "type": sub.type,
        "base": [r.to_json() for r in base],
        "S_mult": 1,
        "L_mult": l_mult,
        "failures": [],
    }
    if not any(delta):
        # the base's isotropic parts cancel; the table is then read with the input delta
        out["rebased_delta_zero"] = True
        delta = tuple(delta_in)
        out["delta"] = list(delta)
    short_norm = min(sub.norms.values())
    for r, _, _ in sub.roots:
        mult = l_mult if sub.norms[r] > short_norm else 1
        for n in range(-4, 5):
            x = Root(r.fin, tuple(v + n * mult * d for v, d in zip(r.iso, delta)))
            if not D.contains(x):
                out["failures"].append({"root": r.to_json(), "shift": n * mult})
    return out


def observed_multiples(D, a, b, window=6):
    """Which multiples n*delta keep each root of R_ab inside R (short/long split)."""
    delta = tuple(x + y for x, y in zip(a.iso, b.iso))
    sub = rank2_subsystem(D, a, b)
    norms = {D.finite.norm(r.fin) for r, _, _ in sub.roots}
    out = {}
    for label, nrm in (("short", min(norms)), ("long", max(norms))):
        if label == "long" and len(norms) == 1:
            continue
        ok = []
        for n in range(-window, window + 1):
            if all(D.contains(Root(r.fin, tuple(v + n * d for v, d in zip(r.iso, delta))))
                   for r, _, _ in sub.roots if D.finite.norm(r.fin) == nrm):
                ok.append(n)
        out[label] = ok
    return out


# ---------------------------------------------------------------- affine subsystems

def affine_subsystem(D, T, lam, bound):
    """Window of T_lam = (T^x + Z lam) cap R with the reflection and radical checks.

    ``T`` is a list of non-isotropic roots forming an irreducible finite subsystem.
    """
    lam = tuple(lam)
    if not any(lam):
        raise EarsError("lambda must be nonzero")
    t_type = classify_roots([g.fin for g in T], D.finite.gram)
    if "x" in t_type:
        raise EarsError(f"T is reducible ({t_type})")
    tset = set(T)
    window = []
    for g in T:
        for n in range(-bound, bound + 1):
            x = Root(g.fin, tuple(v + n * w for v, w in zip(g.iso, lam)))
            if D.contains(x):
                window.append((g, n, x))
    wset = {x for _, _, x in window}
    identity_fail = []
    literal_fail = 0
    closure_fail = []
    for g, n, x in window:
        for g2, n2, y in window:
            w = D.reflect(x, y)
            p = D.pairing(g2, g)
            base = D.reflect(g, g2)
            # w_{g + n lam}(g' + n' lam) = w_g(g') + n' lam - <g', g> n lam
            expected = Root(base.fin, tuple(v + (n2 - p * n) * l for v, l in zip(base.iso, lam)))
            literal = Root(base.fin, tuple(v + (n2 + p * n) * l for v, l in zip(base.iso, lam)))
            if w != expected:
                identity_fail.append({"x": x.to_json(), "y": y.to_json()})
            if w != literal:
                literal_fail += 1
            if base not in tset and -base not in tset:
                closure_fail.append({"x": x.to_json(), "y": y.to_json()})
            if not D.contains(w):
                closure_fail.append({"x": x.to_json(), "y": y.to_json(), "image": w.to_json()})
    # radical of the form restricted to span(T + Z lam)
    vecs = [x.fin + x.iso for x in wset]
    radical_ok, radical_dim = _radical_is_lambda(D, vecs, lam)
    return {
        "type": t_type,
        "lambda": list(lam),
        "window_size": len(window),
        "identity_failures": identity_fail[:10],
        "literal_sign_mismatches": literal_fail,
        "closure_failures": closure_fail[:10],
        "radical_is_span_lambda": radical_ok,
        "radical_dim": radical_dim,
        "passed": not identity_fail and not closure_fail and radical_ok,
    }


def _radical_is_lambda(D, vecs, lam):
    from .lattice import echelon_basis, rref

    n = D.rank + D.nu
    basis = echelon_basis(vecs, n)
    # Gram of the span in V = V_fin (+) V0 with V0 in the radical
    gram = [[0] * n for _ in range(n)]
    for i in range(D.rank):
        for j in range(D.rank):
            gram[i][j] = D.finite.gram[i][j]
    g = [[sum(u[i] * gram[i][j] * v[j] for i in range(n) for j in range(n)) for v in basis] for u in basis]
    rad = nullspace(g, len(basis))
    if len(rad) != 1:
        return False, len(rad)
    vec = [sum(c * b[k] for c, b in zip(rad[0], basis)) for k in range(n)]
    target = [0] * D.rank + list(lam)
    m, piv = rref([vec, target])
    return len(piv) == 1, 1


def lambda_covering(D):
    nu = D.nu
    S_gens = list(D.S.basis)
    if D.finite.simply_laced:
        return build_descriptor(D.symbol, nu, S_gens + _sum_closure(S_gens), None, D.k, None, D.cocycle)
    L_gens = list(D.L.basis)
    return build_descriptor(
        D.symbol, nu, S_gens + _sum_closure(S_gens), L_gens + _sum_closure(L_gens), D.k, D.twist, D.cocycle
    )


def _sum_closure(basis):
    # adding all subset sums of a basis turns the generated semilattice into the lattice
    out = []
    n = len(basis)
    for mask in range(1, 2 ** n):
        if bin(mask).count("1") > 1:
            v = [0] * len(basis[0])
            for i in range(n):
                if mask >> i & 1:
                    v = [a + b for a, b in zip(v, basis[i])]
            out.append(tuple(v))
    return out
