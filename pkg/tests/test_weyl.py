import random

import pytest

from exaffine.ears import EarsError, Root, build_descriptor, enumerate_roots, nilpotent_pairs, nonisotropic, rank2_subsystem
from exaffine.weyl import (
    TildeSpace,
    WeylMatrix,
    check_presentation,
    conj_element,
    is_reduced_collection,
    k_of,
    random_reduced_collection,
    reflection_matrix,
)
from exaffine.finroot import build_finite

LAMBDA2 = [[1, 0], [0, 1], [1, 1]]
SPECS = ["a1n1", "a1n2", "a2n2", "b2n2_t0", "b2n2_t1", "g2n2_t0", "g2n2_t1", "d4n1"]


def R(fin, iso):
    return Root(tuple(fin), tuple(iso))


def test_reflection_examples():
    D = build_descriptor("A2", 2, LAMBDA2)
    sp = TildeSpace(D)
    a = R([1, 0], [0, 0])
    w = reflection_matrix(sp, a)
    assert w.apply(sp.vector(a)) == tuple(-x for x in sp.vector(a))
    for i in range(2):
        e = [0] * sp.dim
        e[2 + i] = 1
        assert w.apply(tuple(e)) == tuple(e)
    assert sp.root_of(w.apply(sp.vector(R([0, 1], [1, 0])))) == R([1, 1], [1, 0])
    assert (w @ w).is_identity() and sp.preserves_form(w)
    with pytest.raises(EarsError):
        reflection_matrix(sp, R([0, 0], [1, 0]))


def test_k_values():
    assert k_of(build_finite("G2"), "s") == 3
    assert k_of(build_finite("B2"), "s") == 2
    assert k_of(build_finite("A2"), "s") == 1
    assert k_of(build_finite("B2"), "l") == 1


def test_conj_element(load):
    D = load("b2n2_t0")
    sp = TildeSpace(D)
    a = R([1, 0], [0, 0])
    assert conj_element(D, sp, a, (0, 0)).is_identity()
    c = conj_element(D, sp, a, (1, 2))
    assert sp.preserves_form(c)
    n = sp.dim
    # identity on V, changes only the (V0)* block in the image
    for i in range(D.rank + D.nu):
        e = tuple(int(i == j) for j in range(n))
        assert c.apply(e) == e
    # independent product of reflection matrices
    w = lambda r: reflection_matrix(sp, r)
    s1, s2 = R([1, 0], [1, 0]), R([1, 0], [0, 1])
    want = w(R([1, 0], [1, 2])) @ w(a) @ (w(a) @ w(s1)) @ (w(a) @ w(s2)) @ (w(a) @ w(s2))
    assert c == want
    with pytest.raises(EarsError):
        conj_element(load("b2n2_t1"), TildeSpace(load("b2n2_t1")), R([0, 1], [0, 0]), (1, 0))


def test_nullity_one_conj_trivial():
    D = build_descriptor("A1", 1, [[1]])
    sp = TildeSpace(D)
    for m in range(-3, 4):
        assert conj_element(D, sp, R([1], [0]), (m,)).is_identity()


def test_reduced_collection_examples():
    b2 = build_finite("B2")
    assert is_reduced_collection(b2, 2, 0, [(1, "s", (1, 1)), (-1, "s", (1, 1))])
    assert not is_reduced_collection(b2, 2, 0, [(1, "s", (1, 1))])
    assert is_reduced_collection(b2, 2, 0, [])
    with pytest.raises(ValueError):
        is_reduced_collection(b2, 2, 1, [(1, "l", (1, 1))])
    with pytest.raises(ValueError):
        is_reduced_collection(b2, 2, 0, [(2, "s", (1, 1))])


@pytest.mark.parametrize("name", ["a2n2", "b2n2_t1", "g2n2_t1"])
def test_random_collections(load, name):
    D = load(name)
    for seed in range(20):
        c = random_reduced_collection(D, seed)
        assert is_reduced_collection(D.finite, D.nu, D.twist, c)
        assert c == random_reduced_collection(D, seed)


@pytest.mark.parametrize("name", SPECS)
def test_presentation(load, name):
    rep = check_presentation(load(name), samples=150, collections=10, seed=3)
    assert rep["passed"]


@pytest.mark.parametrize("name", ["a2n2", "b2n2_t1", "g2n2_t0"])
def test_type_labels_equivariant(load, name):
    D = load(name)
    rng = random.Random(0)
    rx = nonisotropic(enumerate_roots(D, 1))
    for a, b in rng.sample(nilpotent_pairs(D, 1), 30):
        g = rng.choice(rx)
        wa, wb = D.reflect(g, a), D.reflect(g, b)
        assert rank2_subsystem(D, a, b).type == rank2_subsystem(D, wa, wb).type


def test_matrix_inverse():
    m = WeylMatrix([[1, 2], [0, 1]])
    assert (m @ m.inverse()).is_identity()
    assert (m ** -2) @ (m ** 2) == WeylMatrix.identity(2)
