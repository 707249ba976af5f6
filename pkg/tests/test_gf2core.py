import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zee2 import gf2core as g
from zee2.gf2core import BoolPoly, Cochain, CubicPoly, Gl2Map, XYPoly
from zee2.twist import make_twist

c = g.from_coords


# -- oracles -------------------------------------------------------------------


def test_weight_examples():
    assert g.weight(c(0, 0, 0)) == 0
    assert g.weight(c(1, 1, 1)) == 3
    assert g.weight(c(1, 0, 1, 1, 0)) == 3


def test_bit_strings_coordinate_one_leftmost():
    assert g.to_bits(c(1, 0, 1, 1, 0), 5) == "10110"
    assert g.from_bits("10110") == c(1, 0, 1, 1, 0)
    assert g.from_bits("100") == 1


def test_split_octonion_map_examples():
    T = Gl2Map.from_strings(["100", "110", "111"])
    assert g.apply_map(T, c(1, 0, 0)) == c(1, 1, 1)
    assert g.apply_map(T, c(0, 1, 0)) == c(0, 1, 1)
    I = Gl2Map.identity(3)
    assert all(I(x) == x for x in range(8))


def test_singular_map_rejected():
    with pytest.raises(ValueError):
        Gl2Map.from_strings(["110", "011", "101"])  # rows sum to zero


def test_gl_inverse_transpose_compose():
    T = Gl2Map.from_strings(["100", "110", "111"])
    Ti = T.inverse()
    assert all(Ti(T(x)) == x for x in range(8))
    assert T.compose(Ti) == Gl2Map.identity(3)
    assert T.transpose().to_strings() == ["111", "011", "001"]
    X = g.elements(3)
    assert (T(X) == np.array([T(int(x)) for x in X])).all()


def test_delta1_examples():
    n = 2
    zero = Cochain(n, 1, lambda x: x & 0)
    assert g.delta1(zero).is_zero()
    lin = Cochain(n, 1, lambda x: x & 1)
    assert g.delta1(lin).is_zero()
    b = BoolPoly.from_terms(2, [(1, 2)])
    d = g.delta1(b)
    expect = XYPoly.build(2, [(1, 2), (2, 1)])  # x1 y2 + x2 y1
    assert (d.table() == expect.table()).all()


def test_delta2_of_cochain2_examples():
    # bilinear cochains are cocycles
    bil = XYPoly.build(3, [(1, 2), (4, 4), (2, 1)]).cochain()
    assert not g.delta2_of_cochain2(bil).fn(*np.ix_(g.elements(3), g.elements(3), g.elements(3))).any()
    fO = make_twist("O", 3, 0).cochain
    assert g.delta2_of_cochain2(fO)(1, 2, 4) == 1


def test_delta2_fM_is_sum_over_distinct_indices():
    n = 4
    phi = g.delta2_of_cochain2(make_twist("M", n, n).cochain)
    X = g.elements(n)
    x, y, z = np.ix_(X, X, X)
    expect = np.zeros((16, 16, 16), dtype=np.uint8)
    for i, j, k in itertools.permutations(range(n), 3):
        expect ^= (((x >> i) & 1) & ((y >> j) & 1) & ((z >> k) & 1)).astype(np.uint8)
    assert (phi.fn(x, y, z) == expect).all()


def test_delta2_of_fn_examples():
    quad = BoolPoly.from_terms(3, [(1, 2), (2, 3), (1,), (3,)])
    X = g.elements(3)
    assert not g.delta2_of_fn(quad).fn(*np.ix_(X, X, X)).any()
    cub = BoolPoly.from_terms(3, [(1, 2, 3)])
    assert g.delta2_of_fn(cub)(1, 2, 4) == 1
    t = g.delta2_of_fn(cub).fn
    x, y = np.ix_(X, X)
    assert not t(x, x, y).any() and not t(x, y, x).any() and not t(y, x, x).any()


def test_delta3_examples():
    t = np.zeros(16, dtype=np.uint8)
    t[15] = 1  # x1 x2 x3 x4 as a raw table
    d3 = g.delta3(Cochain.from_table(t))
    assert d3(1, 2, 4, 8) == 1
    assert g.delta3(Cochain.from_table(np.zeros(16, dtype=np.uint8)))(1, 2, 4, 8) == 0
    cub = CubicPoly.from_terms(4, [(1, 2, 3), (2, 4), (1,)])
    X = g.elements(4)
    assert not g.delta3(cub).fn(*np.ix_(X, X, X, X)).any()


def test_anf_examples():
    assert not g.anf(np.zeros(8, dtype=np.uint8)).monomials
    from zee2.twist import closed_alpha
    a = closed_alpha("O", 3)
    p = g.anf(a.table())
    assert p.terms() == [(1, 2, 3), (1, 2), (1, 3), (2, 3), (1,), (2,), (3,)]


def test_cubic_text_form():
    p = CubicPoly.from_terms(3, [(1,), (1, 2), (1, 2, 3)])
    assert str(p) == "x1*x2*x3 + x1*x2 + x1"
    assert CubicPoly.coerce(BoolPoly.parse(str(p), 3)) == p
    with pytest.raises(ValueError):
        CubicPoly.from_terms(4, [(1, 2, 3, 4)])


def test_repeated_monomials_cancel():
    p = BoolPoly.from_terms(3, [(1, 2), (2, 1), (3,)])
    assert p.terms() == [(3,)]


def test_xypoly_text_and_table():
    f = XYPoly.build(2, [(1, 2), (3, 1)])
    assert str(f) == "x1*x2*y1 + x1*y2"
    assert str(make_twist("Cl", 2, 0).polynomial()) == "x1*y1 + x1*y2 + x2*y2"
    X = g.elements(2)
    t = f.table()
    assert all(t[x, y] == f.evaluate(x, y) for x in range(4) for y in range(4))
    assert (t == f.evaluate(X[:, None], X[None, :])).all()


def test_dense_limit():
    f = make_twist("O", 13, 0).cochain
    with pytest.raises(ValueError):
        f.table()


def test_arity_cap():
    with pytest.raises(ValueError):
        BoolPoly(25)
    with pytest.raises(ValueError):
        g.check_element(8, 3)


# -- invariants ----------------------------------------------------------------


@given(st.integers(1, 24).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_xor_group_laws(nx):
    n, x = nx
    assert x ^ x == 0 and x ^ 0 == x
    assert g.from_bits(g.to_bits(x, n)) == x


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_delta1_symmetric_zero_diagonal(n, data):
    t = np.array(data.draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n)), dtype=np.uint8)
    t[0] = 0  # normalized cochain
    d = g.delta1(Cochain.from_table(t)).table()
    assert (d == d.T).all() and not d.diagonal().any()


def _pentagon_zero(f: Cochain, quads):
    phi = g.delta2_of_cochain2(f).fn
    x, y, z, t = quads
    d = phi(y, z, t) ^ phi(x ^ y, z, t) ^ phi(x, y ^ z, t) ^ phi(x, y, z ^ t) ^ phi(x, y, z)
    return not np.asarray(d).any()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pentagon_exhaustive(n):
    rng = np.random.default_rng(n)
    X = g.elements(n)
    grid = np.ix_(X, X, X, X)
    for _ in range(20):
        f = Cochain.from_table(rng.integers(0, 2, size=(1 << n, 1 << n), dtype=np.uint8))
        assert _pentagon_zero(f, grid)


@pytest.mark.parametrize("n", [4, 5])
def test_pentagon_randomized(n):
    rng = np.random.default_rng(n)
    for _ in range(10):
        f = Cochain.from_table(rng.integers(0, 2, size=(1 << n, 1 << n), dtype=np.uint8))
        quads = tuple(g.sample_elements(rng, n, 5000) for _ in range(4))
        assert _pentagon_zero(f, quads)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_delta2_is_partial_delta_of_delta1(n):
    rng = np.random.default_rng(7)
    X = g.elements(n)
    grid = np.ix_(X, X, X)
    for _ in range(20):
        a = Cochain.from_table(rng.integers(0, 2, size=1 << n, dtype=np.uint8))
        beta = g.delta1(a)
        d2 = g.delta2_of_fn(a).fn(*grid)
        assert (g.partial_delta(beta, 0).fn(*grid) == d2).all()
        assert (g.partial_delta(beta, 1).fn(*grid) == d2).all()
        # the full coboundary of a coboundary vanishes (δ∘δ = 0)
        assert not g.delta2_of_cochain2(beta).fn(*grid).any()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_delta3_iff_degree_le_3(n):
    X = g.elements(n)
    grid = np.ix_(X, X, X, X)
    rng = np.random.default_rng(n)
    tables = (itertools.product((0, 1), repeat=1 << n) if n <= 3
              else (rng.integers(0, 2, size=16) for _ in range(300)))
    for t in tables:
        t = np.array(t, dtype=np.uint8)
        vanishes = not g.delta3(Cochain.from_table(t)).fn(*grid).any()
        p = g.anf(t)
        assert vanishes == (p.degree <= 3 and 0 not in p.monomials)


def test_anf_roundtrip_exhaustive_n3():
    for t in itertools.product((0, 1), repeat=8):
        t = np.array(t, dtype=np.uint8)
        assert (g.anf(t).truth_table() == t).all()


@settings(max_examples=50, deadline=None)
@given(st.integers(4, 10), st.integers(0, 2**32 - 1))
def test_anf_roundtrip_random(n, seed):
    t = np.random.default_rng(seed).integers(0, 2, size=1 << n, dtype=np.uint8)
    p = g.anf(t)
    assert (p.truth_table() == t).all()
    X = g.elements(n)
    assert (p.evaluate(X) == t).all()
