import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exaffine import _kernels_py as py
from exaffine import kernels
from exaffine.qtorus import Cocycle, TorusRing

cy = pytest.importorskip("exaffine._kernels")

RINGS = [TorusRing(Cocycle.trivial(2), ("s",)), TorusRing(Cocycle(4, [[1, 1], [1, 0]]), ("s",)),
         TorusRing(Cocycle(6, [[1, 2], [2, 5]]), ("s", "t")), TorusRing(Cocycle(3, [[0, 1], [2, 0]]))]

coeffs = st.one_of(st.integers(-5, 5), st.fractions(-3, 3, max_denominator=4))


@st.composite
def polys(draw, ring):
    out = {}
    for _ in range(draw(st.integers(0, 4))):
        lat = (draw(st.integers(-3, 3)), draw(st.integers(-3, 3)))
        ve = tuple(draw(st.integers(0, 2)) for _ in ring.variables)
        j = draw(st.integers(0, ring.phi - 1))
        c = draw(coeffs)
        if c:
            out[ring.key(lat, ve, j)] = c
    return out


@pytest.mark.parametrize("ring", RINGS)
@given(st.data())
def test_poly_parity(ring, data):
    a, b = data.draw(polys(ring)), data.draw(polys(ring))
    assert cy.poly_add(a, b) == py.poly_add(a, b)
    assert cy.poly_sub(a, b) == py.poly_sub(a, b)
    assert cy.poly_scale(a, Fraction(2, 3)) == py.poly_scale(a, Fraction(2, 3))
    assert cy.poly_mul(a, b, ring.ctx) == py.poly_mul(a, b, ring.ctx)


@pytest.mark.parametrize("ring", RINGS)
def test_matrix_parity(ring):
    rng = random.Random(7)

    def rand_mat(n):
        rows = []
        for _ in range(n):
            row = {}
            for j in rng.sample(range(n), 2):
                row[j] = {ring.key((rng.randint(-2, 2), rng.randint(-2, 2)), None, rng.randrange(ring.phi)): rng.randint(1, 3)}
            rows.append(row)
        return rows

    for _ in range(20):
        A, B = rand_mat(5), rand_mat(5)
        assert cy.mat_mul(A, B, ring.ctx) == py.mat_mul(A, B, ring.ctx)
        assert cy.mat_add(A, B) == py.mat_add(A, B)


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
