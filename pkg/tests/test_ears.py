import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exaffine.ears import (
    EarsError,
    Root,
    affine_subsystem,
    build_descriptor,
    classify_pairs,
    ears_contains,
    enumerate_roots,
    is_nilpotent_pair,
    lambda_covering,
    nilpotent_pairs,
    nonisotropic,
    pair_delta_semilattices,
    rank2_subsystem,
    verify_axioms,
)
from exaffine.lattice import semilattice_from_generators

LAMBDA2 = [[1, 0], [0, 1], [1, 1]]
SPECS = ["a1n1", "a2n2", "a1n2_semi", "b2n2_t0", "b2n2_t1", "g2n2_t0", "g2n2_t1", "d4n1"]


def R(fin, iso):
    return Root(tuple(fin), tuple(iso))


def test_membership_examples(load):
    a1 = build_descriptor("A1", 1, [[1]])
    assert ears_contains(a1, R([1], [1]))
    b2 = build_descriptor("B2", 2, LAMBDA2, [[2, 0], [0, 2], [2, 2]], twist=2)
    assert not ears_contains(b2, R([0, 1], [1, 0]))
    assert ears_contains(b2, R([0, 1], [2, 0]))
    semi = load("a1n2_semi")
    assert ears_contains(semi, R([0], [1, 1]))
    assert not ears_contains(semi, R([1], [1, 1]))
    with pytest.raises(EarsError):
        ears_contains(a1, R([1, 0], [0]))


def test_enumerate_a1():
    D = build_descriptor("A1", 1, [[1]])
    got = set(enumerate_roots(D, 1))
    want = {R([s], [n]) for s in (1, -1) for n in (-1, 0, 1)} | {R([0], [n]) for n in (-1, 0, 1)}
    assert got == want


def test_enumerate_bound_zero():
    D = build_descriptor("A2", 2, LAMBDA2)
    got = set(enumerate_roots(D, 0))
    assert got == {R(f, [0, 0]) for f in D.finite.roots} | {R([0, 0], [0, 0])}


def test_enumerate_a2_count():
    D = build_descriptor("A2", 2, LAMBDA2)
    roots = enumerate_roots(D, 1)
    assert len(nonisotropic(roots)) == 6 * 9
    assert len(roots) - 6 * 9 == 9


@pytest.mark.parametrize("name", SPECS)
def test_axioms_hold(load, name):
    rep = verify_axioms(load(name), 2)
    assert rep["passed"], {k: v for k, v in rep["axioms"].items() if not v["passed"]}


def test_simply_laced_needs_lattice():
    with pytest.raises(EarsError, match="lattice"):
        build_descriptor("A2", 2, [[1, 0], [0, 1]])
    with pytest.raises(EarsError, match="lattice"):
        build_descriptor("B3", 2, LAMBDA2, [[1, 0], [0, 1]])
    build_descriptor("B2", 2, [[1, 0], [0, 1]], [[2, 0], [0, 2], [2, 2]], twist=2)


def test_bad_descriptors():
    with pytest.raises(EarsError):
        build_descriptor("A2", 2, [[1, 0]])
    with pytest.raises(EarsError):
        build_descriptor("B2", 2, LAMBDA2, LAMBDA2, twist=1)
    with pytest.raises(EarsError):
        build_descriptor("G2", 2, LAMBDA2)
    with pytest.raises(EarsError):
        build_descriptor("A2", 2, LAMBDA2, [[1, 0]])


def test_nilpotent_pairs():
    D = build_descriptor("A2", 2, LAMBDA2)
    a, b = R([1, 0], [0, 0]), R([0, 1], [0, 0])
    assert is_nilpotent_pair(D, a, b)
    assert not is_nilpotent_pair(D, a, -a)
    assert is_nilpotent_pair(D, R([1, 0], [1, 0]), R([0, 1], [0, 1]))
    with pytest.raises(EarsError):
        is_nilpotent_pair(D, a, R([0, 0], [1, 0]))


def test_rank2_examples():
    D = build_descriptor("A2", 2, LAMBDA2)
    sub = rank2_subsystem(D, R([1, 0], [0, 0]), R([0, 1], [0, 0]))
    assert sub.type == "A2" and len(sub.roots) == 6
    b2 = build_descriptor("B2", 2, LAMBDA2, [[2, 0], [0, 1], [2, 1]], twist=1)
    a, b = R([1, 0], [1, 0]), R([0, 1], [0, 0])
    sub = rank2_subsystem(b2, a, b)
    assert sub.type == "B2"
    want = {a, b, a + b, a + a + b}
    assert sub.root_set() == want | {-x for x in want}
    with pytest.raises(EarsError):
        rank2_subsystem(D, R([1, 0], [0, 0]), R([-1, 0], [0, 0]))


@pytest.mark.parametrize("name", ["a1n1", "a2n2", "a1n2_semi", "b2n2_t0", "b2n2_t1", "d4n1"])
def test_consequence_type_match(load, name):
    rep = classify_pairs(load(name), 1)
    assert rep["mismatches"] == []


@pytest.mark.parametrize("name", ["a2n2", "b2n2_t0", "b2n2_t1", "g2n2_t0"])
def test_weyl_equivariance(load, name):
    D = load(name)
    rng = random.Random(1)
    pairs = nilpotent_pairs(D, 1)
    rx = nonisotropic(enumerate_roots(D, 1))
    for a, b in rng.sample(pairs, min(40, len(pairs))):
        ws = rng.sample(rx, 3)

        def w(x):
            for g in ws:
                x = D.reflect(g, x)
            return x

        lhs = {w(x) for x in rank2_subsystem(D, a, b).root_set()}
        assert lhs == rank2_subsystem(D, w(a), w(b)).root_set()


@pytest.mark.parametrize("name", ["a2n2", "b2n2_t0", "b2n2_t1"])
def test_rank2_closed_and_reduced(load, name):
    D = load(name)
    for a, b in nilpotent_pairs(D, 1)[:60]:
        rs = rank2_subsystem(D, a, b).root_set()
        for x in rs:
            assert x.scale(2) not in rs
            assert {D.reflect(x, y) for y in rs} == rs


def test_pair_delta_table(load):
    seen = set()
    for name, want in (("a2n2", (1, 1)), ("b2n2_t0", (1, 2)), ("g2n2_t0", (1, 3))):
        D = load(name)
        for a, b in nilpotent_pairs(D, 1):
            if not any(x + y for x, y in zip(a.iso, b.iso)):
                continue
            rep = pair_delta_semilattices(D, a, b)
            if rep.get("rebased_delta_zero") or rep["type"][0] != name[0].upper():
                continue
            assert (rep["S_mult"], rep["L_mult"]) == want
            assert rep["failures"] == []
            seen.add(name)
            break
    assert seen == {"a2n2", "b2n2_t0", "g2n2_t0"}


def test_pair_delta_needs_delta(load):
    D = load("a2n2")
    with pytest.raises(EarsError):
        pair_delta_semilattices(D, R([1, 0], [0, 0]), R([0, 1], [0, 0]))


def test_affine_subsystem_a1():
    D = build_descriptor("A1", 1, [[1]])
    T = [R([1], [0]), R([-1], [0])]
    rep = affine_subsystem(D, T, (1,), 2)
    assert rep["passed"] and rep["window_size"] == 10
    with pytest.raises(EarsError):
        affine_subsystem(D, T, (0,), 2)


def test_affine_subsystem_rank2(load):
    D = load("b2n2_t0")
    sub = rank2_subsystem(D, R([1, 0], [0, 0]), R([0, 1], [0, 0]))
    rep = affine_subsystem(D, sorted(sub.root_set(), key=str), (0, 1), 2)
    assert rep["passed"] and rep["radical_is_span_lambda"]


def test_affine_subsystem_reducible():
    D = build_descriptor("D4", 1, [[1]])
    f = D.finite.roots
    # two orthogonal roots span A1 x A1
    a = f[0]
    b = next(r for r in f if D.finite.inner(a, r) == 0)
    T = [R(a, [0]), R(tuple(-x for x in a), [0]), R(b, [0]), R(tuple(-x for x in b), [0])]
    with pytest.raises(EarsError):
        affine_subsystem(D, T, (1,), 1)


def test_lambda_covering(load):
    D = load("a2n2")
    C = lambda_covering(D)
    assert C.S == D.S and C.L == D.L
    semi = lambda_covering(load("a1n2_semi"))
    assert semi.S == semilattice_from_generators(LAMBDA2, 2)
    t1 = lambda_covering(load("b2n2_t1"))
    assert t1.twist == 1 and (t1.symbol, t1.rank, t1.nu) == ("B2", 2, 2)


@settings(max_examples=200)
@given(st.sampled_from(["a1n2_semi", "b2n2_t1", "g2n2_t1"]), st.data())
def test_reflection_closure(load, name, data):
    D = load(name)
    roots = enumerate_roots(D, 3)
    a = data.draw(st.sampled_from(nonisotropic(roots)))
    b = data.draw(st.sampled_from(roots))
    assert D.contains(D.reflect(a, b))
