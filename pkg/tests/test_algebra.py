import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zee2 import gf2core as g
from zee2.algebra import (HALF, I, ONE, Algebra, AlgebraElement, DiagnosticError, GaussianRational,
                          NormError, random_element, simple_closed_form)
from zee2.identities import hr_set
from zee2.twist import make_twist

e = lambda i: 1 << (i - 1)
c = g.from_coords


@pytest.fixture(scope="module")
def O3():
    return Algebra.of("O", 3, 0)


@pytest.fixture(scope="module")
def O5():
    return Algebra.of("O", 5, 0)


# -- numbers and elements --------------------------------------------------------


def test_gaussian_rational_arithmetic():
    a = GaussianRational(Fraction(1, 2), 3)
    b = GaussianRational(2, -1)
    assert a * b == GaussianRational(Fraction(1) + 3, Fraction(-1, 2) + 6)
    assert (a / b) * b == a
    assert I * I == -ONE
    assert str(GaussianRational(Fraction(-3, 4), 2)) == "-3/4+2i"
    assert GaussianRational.parse("1/3", "-2") == GaussianRational(Fraction(1, 3), -2)
    with pytest.raises(ZeroDivisionError):
        ONE / GaussianRational()


def test_gaussian_rational_huge_exact():
    big = GaussianRational(10**40 + 1, 10**39)
    assert (big * big.conjugate()).im == 0
    assert (big * big.conjugate()).re == (10**40 + 1) ** 2 + 10**78


def test_element_json_roundtrip():
    a = AlgebraElement(4, {3: Fraction(1, 3), 0: GaussianRational(0, 2), 5: 0})
    assert a.support() == [0, 3]
    assert AlgebraElement.from_json(a.to_json()) == a
    assert a.to_json()["terms"][0] == {"x": "0000", "re": "0", "im": "2"}


def test_real_mode_rejects_imaginary(O3):
    with pytest.raises(ValueError):
        O3.element({1: I})
    Algebra.of("O", 3, complex=True).element({1: I})


# -- products ------------------------------------------------------------------


def test_basis_product_examples(O3):
    assert O3.basis_product(e(1), e(1)) == (-1, 0)
    for y in range(8):
        assert O3.basis_product(0, y) == (1, y)
    M3 = Algebra.of("M", 3, 3)
    assert M3.basis_product(e(1), e(2)) == (1, e(1) | e(2))
    assert M3.basis_product(e(2), e(1)) == (1, e(1) | e(2))


def test_unit_and_small_product(O3):
    rng = np.random.default_rng(0)
    one = O3.u(0)
    b = random_element(rng, 3, range(8))
    assert O3.multiply(one, b) == b and O3.multiply(b, one) == b
    a = O3.u(e(1)) + O3.u(e(2))
    bb = O3.u(e(1)) - O3.u(e(2))
    ab = O3.multiply(a, bb)
    # (u1+u2)(u1-u2) = u1^2 - u1u2 + u2u1 - u2^2 = -2 u1u2
    s, z = O3.basis_product(e(1), e(2))
    assert ab == O3.u(z, -2 * s)
    assert O3.norm(ab) == O3.norm(a) * O3.norm(bb) == 4


def test_complex_o4_central_square():
    O4 = Algebra.of("O", 4, complex=True)
    z = c(1, 1, 1, 1)
    assert O4.multiply(O4.u(z), O4.u(z)) == O4.u(0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_multiply_distributive(seed):
    A = Algebra.of("M", 4, 1)
    rng = np.random.default_rng(seed)
    a, b, d = (random_element(rng, 4, rng.choice(16, 4, replace=False), bound=50) for _ in range(3))
    assert A.multiply(a, b + d) == A.multiply(a, b) + A.multiply(a, d)
    assert A.multiply(a + b, d) == A.multiply(a, d) + A.multiply(b, d)


def test_multiply_matches_basis_product():
    A = Algebra.of("Cl", 3, 2)
    for x, y in itertools.product(range(8), repeat=2):
        s, z = A.basis_product(x, y)
        assert A.multiply(A.u(x), A.u(y)) == A.u(z, s)


def test_multiply_arity_checks():
    A = Algebra.of("O", 3)
    with pytest.raises(ValueError):
        A.multiply(AlgebraElement.basis(4, 1), A.u(1))
    with pytest.raises(ValueError):
        A.basis_product(8, 1)


def test_octonion_relations(O3):
    # generators square to -1, anticommute, and anti-associate
    for i in range(1, 4):
        assert O3.basis_product(e(i), e(i)) == (-1, 0)
    for i, j in itertools.permutations(range(1, 4), 2):
        assert O3.basis_product(e(i), e(j))[0] == -O3.basis_product(e(j), e(i))[0]
    for i, j, k in itertools.permutations(range(1, 4)):
        left = O3.mul(O3.u(e(i)), O3.multiply(O3.u(e(j)), O3.u(e(k))))
        right = O3.mul(O3.u(e(i)), O3.u(e(j)), O3.u(e(k)))
        assert left == -right


# -- conjugation and norm --------------------------------------------------------


def test_conjugate_examples(O3):
    assert O3.conjugate(O3.u(0)) == O3.u(0)
    assert O3.conjugate(O3.u(e(1))) == -O3.u(e(1))
    rng = np.random.default_rng(3)
    a = random_element(rng, 3, range(8))
    assert O3.conjugate(O3.conjugate(a)) == a
    for x, y in itertools.product(range(8), repeat=2):
        lhs = O3.conjugate(O3.multiply(O3.u(x), O3.u(y)))
        rhs = O3.multiply(O3.conjugate(O3.u(y)), O3.conjugate(O3.u(x)))
        assert lhs == rhs


def test_norm_is_unit_coefficient_of_a_abar(O3):
    rng = np.random.default_rng(4)
    for _ in range(20):
        a = random_element(rng, 3, range(8))
        prod = O3.multiply(a, O3.conjugate(a))
        assert prod[0].re == O3.norm(a)
        assert prod == O3.u(0, O3.norm(a))


def test_norm_precondition():
    # p = n gives f(x, x) != α(x)
    with pytest.raises(NormError):
        Algebra.of("O", 3, 3).norm(AlgebraElement.basis(3, 1))
    assert Algebra.of("O", 5, 0).norm_ok


def test_conjugate_rejects_non_symmetric_phi():
    from tests.test_twist import cd_twist
    A = Algebra(cd_twist(4))
    with pytest.raises(ValueError):
        A.conjugate(A.u(1))


# -- centers and centralizers ----------------------------------------------------


def test_centralizer_examples(O5):
    assert O5.centralizer_dim(c(1, 1, 1, 1, 0)) == 24
    assert Algebra.of("M", 5).centralizer_dim(c(1, 1, 0, 0, 0)) == 24
    assert O5.centralizer_dim(0) == 32


def test_center_examples(O5):
    assert O5.center() == (1, [0])
    assert Algebra.of("O", 4, complex=True).center() == (2, [0, 15])
    assert Algebra.of("M", 6, complex=True).center() == (2, [0, 63])


def test_center_brute_force():
    for fam, n in [("O", 3), ("O", 4), ("M", 4), ("M", 6), ("Cl", 3)]:
        A = Algebra.of(fam, n, 1)
        brute = [x for x in range(1 << n)
                 if all(A.basis_product(x, y)[0] == A.basis_product(y, x)[0] for y in range(1 << n))]
        assert A.center()[1] == brute


# -- simplicity ----------------------------------------------------------------


def test_complex_simplicity():
    for n in range(3, 9):
        assert Algebra.of("O", n, complex=True).is_simple().computational == (n not in (4, 8))
        assert Algebra.of("M", n, complex=True).is_simple().computational == (n != 6)


def test_real_simplicity_all_signatures():
    for fam in ("O", "M"):
        for n in range(3, 9):
            for p in range(n + 1):
                v = Algebra.of(fam, n, p).is_simple()
                assert v.computational == v.closed_form == simple_closed_form(fam, n, p)


def test_simplicity_examples():
    assert Algebra.of("O", 4, 1).is_simple().computational
    v = Algebra.of("O", 4, complex=True).is_simple()
    assert v.summary == "not simple; splits as O3 ⊕ O3"
    assert v.central == (15,) and v.uz_square == 1
    assert Algebra.of("O", 4, 0).is_simple().summary == "not simple; splits as O_{0,3} ⊕ O_{0,3}"
    with pytest.raises(ValueError):
        Algebra.of("Cl", 3).is_simple()


def test_closed_form_rules():
    assert simple_closed_form("O", 8, 3) and not simple_closed_form("O", 8, 2)
    assert simple_closed_form("M", 6, 1) and not simple_closed_form("M", 6, None)
    assert simple_closed_form("M", 4, None)


# -- splitting -----------------------------------------------------------------


def test_split_projectors():
    A = Algebra.of("O", 4, complex=True)
    ep, em = A.split_central()
    assert A.multiply(ep, em) == AlgebraElement(4)
    assert A.multiply(ep, ep) == ep and A.multiply(em, em) == em
    assert ep + em == A.u(0)
    assert ep == (A.u(0) + A.u(15)).scale(HALF)
    Algebra.of("O", 4, 2).split_central()
    with pytest.raises(ValueError):
        Algebra.of("O", 4, 1).split_central()


@pytest.mark.parametrize("fam,n", [("O", 4), ("M", 6)])
def test_splitting_maps_multiplicative(fam, n):
    assert Algebra.of(fam, n, complex=True).verify_splitting()
    assert Algebra.of(fam, n, 0).verify_splitting()


def test_complexification_case():
    assert Algebra.of("O", 4, 1).complexification_map()
    with pytest.raises(ValueError):
        Algebra.of("O", 4, 0).complexification_map()


# -- composition ---------------------------------------------------------------


def test_composition_octonions(O3):
    rng = np.random.default_rng(5)
    for _ in range(50):
        a, b = random_element(rng, 3, range(8)), random_element(rng, 3, range(8))
        r = O3.composition_pair(a, b)
        assert r.criterion and r.direct


def test_composition_hr_support(O5):
    rng = np.random.default_rng(6)
    a = random_element(rng, 5, range(32))
    b = random_element(rng, 5, hr_set(5))
    r = O5.composition_pair(a, b)
    assert r.criterion and r.direct


def test_composition_negative(O5):
    a = O5.u(0) + O5.u(c(1, 1, 0, 0, 0)) + O5.u(c(0, 0, 1, 1, 0))
    r = O5.composition_pair(a, a)
    assert not r.criterion and not r.direct
    assert r.witness is not None
    x, y, z, t = r.witness
    assert x ^ y ^ z ^ t == 0 and g.weight(x ^ z) == 4


# -- signature isomorphisms ------------------------------------------------------


def test_signature_iso_single_bit():
    for fam, n in [("O", 3), ("M", 4), ("Cl", 3)]:
        A = Algebra.of(fam, n, complex=True)
        for i in range(1, n + 1):
            theta = A.signature_iso([i])
            for x in range(1 << n):
                if not (x >> (i - 1)) & 1:
                    assert theta[x] == ONE
                else:
                    assert theta[x] == I


def test_signature_iso_composes():
    A = Algebra.of("O", 4, complex=True)
    t12 = A.signature_iso([1, 2])
    t1 = A.signature_iso([1])
    B = Algebra(A.spec.plus(g.Cochain(4, 2, lambda x, y: g.parity(x & y & 1))), complex=True)
    t2 = B.signature_iso([2])
    assert all(t12[x] == t1[x] * t2[x] for x in range(16))


def test_signature_iso_real_mode_rejected(O3):
    with pytest.raises(ValueError):
        O3.signature_iso([1])


def test_diagnostic_error_is_runtime():
    assert issubclass(DiagnosticError, RuntimeError)
