import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exaffine.chevrep import (
    AdjointModel,
    ad_exp,
    cartan_restriction,
    chev_algebra,
    commutator_constants,
    coroot_reflection,
    h_gen,
    n_gen,
    rank1_rep,
    x_gen,
)
from exaffine.ears import Root
from exaffine.finroot import build_finite, chevalley_constants
from exaffine.qtorus import Cocycle, TorusRing
from exaffine.scalars import CycScalar


def model(sym, coc=None, variables=("s", "t"), laurent=("s", "t")):
    coc = coc or Cocycle.trivial(2)
    return AdjointModel(build_finite(sym), TorusRing(coc, variables, laurent))


def R(fin, iso=(0, 0)):
    return Root(tuple(fin), tuple(iso))


def test_ad_exp_zero_and_sl2_nilpotency():
    M = model("A1", Cocycle.trivial(2))
    assert ad_exp(M.alg, M.ring, (1,), 0).is_identity()
    assert len(chev_algebra("A1").ad_powers((1,))) == 3


@pytest.mark.parametrize("sym", ["A2", "B2", "G2"])
def test_ad_exp_additive(sym):
    M = model(sym, Cocycle(4, [[1, 1], [1, 0]]))
    s, t = M.ring.var("s"), M.ring.var("t")
    for r in M.frs.roots:
        a, b = s * M.ring.c((1, 0)), t * M.ring.c((1, 0))
        assert M.xhat(r, a) @ M.xhat(r, b) == M.xhat(r, a + b)


def test_x_gen_entries_supported_on_delta_line():
    M = model("G2", Cocycle(6, [[1, 2], [2, 5]]))
    t = M.ring.var("t")
    x = x_gen(M, R((1, 0), (1, 2)), t)
    assert x_gen(M, R((1, 0), (1, 2)), 0).is_identity()
    for row in x.rows:
        for p in row.values():
            for key in p:
                lat, ve, _ = M.ring.decode(key)
                k = ve[1]
                assert 0 <= k <= 4 and lat == (k, 2 * k) and ve[0] == 0


def test_x_gen_zero_delta_is_classical():
    M = model("B2")
    t = M.ring.var("t")
    assert x_gen(M, R((0, 1)), t) == M.xhat((0, 1), t)


def test_sl2_weyl_element():
    M = model("A1", Cocycle.trivial(2))
    n = n_gen(M, R((1,)), 1)
    e, f, h = M.alg.index[(1,)], M.alg.index[(-1,)], M.alg.h_index(0)
    # column j holds the image of basis vector j
    assert n.entry(f, e) == -1 and n.entry(e, f) == -1 and n.entry(h, h) == -1
    assert h_gen(M, R((1,)), 1).is_identity()


@pytest.mark.parametrize("sym", ["A1", "A2", "B2", "G2"])
def test_n_inverse_is_n_of_minus_t(sym):
    M = model(sym, Cocycle(4, [[1, 1], [1, 0]]) if sym != "G2" else Cocycle(6, [[1, 2], [2, 5]]))
    t = M.ring.var("t")
    for r in M.frs.roots[:4]:
        a = R(r, (1, 1))
        assert (n_gen(M, a, t) @ n_gen(M, a, -t)).is_identity()
        assert (x_gen(M, a, t) @ x_gen(M, a, -t)).is_identity()


def test_rank1_model():
    coc = Cocycle(4, [[1, 1], [1, 0]])
    ring = TorusRing(coc, ("t", "u"), ("t",))
    t, u = ring.var("t"), ring.var("u")
    d = (1, 1)
    assert rank1_rep(ring, d, 0).is_identity()
    assert (rank1_rep(ring, d, t, "n") @ rank1_rep(ring, d, -t, "n")).is_identity()
    n = rank1_rep(ring, d, t, "n")
    lhs = n @ rank1_rep(ring, d, u) @ rank1_rep(ring, d, -t, "n")
    s = coc.sigma(d, (-1, -1))
    coef = -(s.inverse()) * t.inverse() * t.inverse() * u * ring.c((-1, -1))
    assert lhs.entry(0, 0) == 1 and lhs.entry(1, 1) == 1 and lhs.entry(0, 1) == 0
    assert lhs.entry(1, 0) == coef


@pytest.mark.parametrize("sym", ["A2", "B2", "G2"])
def test_cartan_restrictions(sym):
    M = model(sym, Cocycle(4, [[1, 1], [1, 0]]) if sym != "G2" else Cocycle(6, [[1, 2], [2, 5]]))
    rank = M.frs.rank
    ident = [[Fraction(int(i == j)) for j in range(rank)] for i in range(rank)]
    t = M.ring.var("t")
    for r in M.frs.roots:
        a = R(r, (1, 0))
        assert cartan_restriction(h_gen(M, a, t), rank) == ident
        for tv in (t, 2, CycScalar.zeta(M.ring.m, 1)):
            assert cartan_restriction(n_gen(M, a, tv), rank) == coroot_reflection(M.frs, r)
        with pytest.raises(ValueError):
            cartan_restriction(x_gen(M, a, t), rank)


def test_commutator_constants_closed_form():
    """c_i1 = prod_{k < i} N(a, k a + b) / i! against the peeled values."""
    for sym in ("A2", "B2", "G2", "B3", "D4"):
        f = build_finite(sym)
        N = chevalley_constants(sym)
        for a, b in itertools.product(f.roots, repeat=2):
            cs = commutator_constants(sym, a, b)
            for i, j, c in cs:
                if j != 1:
                    continue
                prod = 1
                for k in range(i):
                    prod *= N.get(a, tuple(k * x + y for x, y in zip(a, b)))
                assert Fraction(prod, factorial(i)) == c, (sym, a, b, i)


def test_integrality_simply_laced():
    M = model("D4", Cocycle.trivial(1), ("t",), ())
    t = M.ring.var("t")
    w = M.identity()
    for r in M.frs.roots[:6]:
        w = w @ x_gen(M, Root(r, (0,)), t)
    for row in w.rows:
        for p in row.values():
            assert all(isinstance(c, int) for c in p.values())


@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from(build_finite("B2").roots))
def test_nilpotent_model_homomorphism(p, q, r):
    M = model("B2", Cocycle(4, [[1, 1], [1, 0]]), ("t",), ("t",))
    t = M.ring.var("t")
    a = R(r, (p, q))
    assert x_gen(M, a, t) @ x_gen(M, a, t) == x_gen(M, a, 2 * t)
