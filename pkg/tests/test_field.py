import itertools

import pytest

from intaut import Field, is_irreducible, least_irreducible, make_field
from intaut.field import poly_str

SMALL_FIELDS = [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2)]


def _field(p, h):
    return Field(p, h)


# -- construction -----------------------------------------------------------

def test_default_modulus_degree_one_is_x():
    assert Field(3, 1).modulus == (0, 1)


def test_default_modulus_f9_is_x_squared_plus_one():
    # exhaustive root check: x^2 and x^2 + 2x-free candidates below it fail
    assert Field(3, 2).modulus == (1, 0, 1)
    assert not is_irreducible((0, 0, 1), 3)   # x^2 has root 0
    assert is_irreducible((1, 0, 1), 3)


def test_rejects_non_prime_and_even():
    with pytest.raises(ValueError, match="prime"):
        Field(4, 1)
    with pytest.raises(ValueError, match="odd"):
        Field(2, 1)
    with pytest.raises(ValueError, match="h"):
        Field(3, 0)


def test_rejects_reducible_and_wrong_degree_modulus():
    with pytest.raises(ValueError, match="reducible"):
        Field(3, 2, [0, 0, 1])
    with pytest.raises(ValueError, match="monic"):
        Field(3, 2, [1, 1])
    with pytest.raises(ValueError, match="monic"):
        Field(3, 2, [1, 0, 2])


def test_make_field_deterministic():
    a, b = make_field(5, 2), make_field(5, 2)
    assert a.modulus == b.modulus
    assert a == b


@pytest.mark.parametrize("p,h", SMALL_FIELDS)
def test_least_irreducible_truly_least(p, h):
    mod = least_irreducible(p, h)
    k_found = sum(c * p ** i for i, c in enumerate(mod[:-1]))
    for k in range(k_found):
        coeffs = [(k // p ** i) % p for i in range(h)] + [1]
        assert not is_irreducible(coeffs, p)


# -- element ordering -------------------------------------------------------

def test_element_order_and_coeffs(f9):
    assert list(f9.elements()) == list(range(9))
    assert f9.coeffs(0) == (0, 0)
    assert f9.coeffs(1) == (1, 0)
    assert f9.coeffs(3) == (0, 1)        # the adjoined root sits at index 3
    assert f9.element((0, 1)) == 3
    for a in f9.elements():
        assert f9.element(f9.coeffs(a)) == a


def test_enumeration_length():
    for p, h in SMALL_FIELDS:
        assert len(_field(p, h).elements()) == p ** h


# -- arithmetic examples ----------------------------------------------------

def test_prime_field_arithmetic(f3, f5):
    assert f3.add(2, 2) == 1
    assert f3.inv(2) == 2
    assert f5.inv(3) == 2
    assert f5.mul(3, 2) == 1


def test_f9_examples(f9):
    t = 3
    assert f9.mul(t, t) == 2                       # t^2 = -1
    assert f9.inv(t) == f9.element((0, 2))         # 1/t = 2t
    assert f9.mul(t, f9.inv(t)) == 1
    assert f9.frobenius(t, 1) == f9.neg(t)         # t^3 = -t


def test_additive_inverse_everywhere():
    for p, h in SMALL_FIELDS:
        f = _field(p, h)
        for a in f.elements():
            assert f.add(a, f.neg(a)) == 0


def test_inv_of_zero_raises(f3):
    with pytest.raises(ZeroDivisionError):
        f3.inv(0)


def test_out_of_range_rejected(f3):
    with pytest.raises(ValueError):
        f3.add(3, 0)
    with pytest.raises(ValueError):
        f3.coeffs(-1)


# -- field axioms, exhaustive for q <= 81 ------------------------------------

@pytest.mark.parametrize("p,h", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1),
                                 (5, 2), (7, 1), (7, 2)])
def test_field_axioms_exhaustive(p, h):
    f = _field(p, h)
    q = f.q
    assert q <= 81
    els = range(q)
    for a, b in itertools.product(els, els):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
    for a, b, c in itertools.product(els, els, els):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in range(1, q):
        assert f.mul(a, f.inv(a)) == 1


# -- Frobenius ---------------------------------------------------------------

@pytest.mark.parametrize("p,h", [(3, 2), (3, 3), (5, 2), (7, 2)])
def test_frobenius_is_field_automorphism(p, h):
    f = _field(p, h)
    for a, b in itertools.product(f.elements(), f.elements()):
        assert f.frobenius(f.add(a, b), 1) == f.add(f.frobenius(a, 1),
                                                    f.frobenius(b, 1))
        assert f.frobenius(f.mul(a, b), 1) == f.mul(f.frobenius(a, 1),
                                                    f.frobenius(b, 1))


@pytest.mark.parametrize("p,h", [(3, 2), (3, 3), (5, 2)])
def test_frobenius_order_and_fixed_field(p, h):
    f = _field(p, h)
    # order divides h: iterating sigma h times is the identity
    for a in f.elements():
        x = a
        for _ in range(h):
            x = f.frobenius(x, 1)
        assert x == a
    fixed = [a for a in f.elements() if f.frobenius(a, 1) == a]
    assert len(fixed) == p   # exactly the prime subfield
    # elements of the prime subfield are untouched by every power
    for a in fixed:
        for i in range(h):
            assert f.frobenius(a, i) == a


def test_frobenius_composition(f9):
    h = f9.h
    for a in f9.elements():
        assert f9.frobenius(f9.frobenius(a, 1), h - 1) == a


def test_frobenius_exponent_range(f9):
    with pytest.raises(ValueError):
        f9.frobenius(1, 2)
    with pytest.raises(ValueError):
        f9.frobenius(1, -1)


# -- squares -----------------------------------------------------------------

def test_zero_is_square(f3, f9):
    assert f3.is_square(0)
    assert f9.is_square(0)


def test_square_examples(f3, f9):
    assert not f3.is_square(2)
    assert f9.is_square(2)     # 2 = -1 = t^2 in GF(9)


@pytest.mark.parametrize("p,h", SMALL_FIELDS)
def test_square_census_and_multiplicativity(p, h):
    f = _field(p, h)
    q = f.q
    squares = [a for a in range(1, q) if f.is_square(a)]
    assert len(squares) == (q - 1) // 2
    for a in range(1, q):
        for b in range(1, q):
            expected = not (f.is_square(a) ^ f.is_square(b))
            assert f.is_square(f.mul(a, b)) == expected


@pytest.mark.parametrize("p,h", SMALL_FIELDS)
def test_squares_agree_with_direct_squaring(p, h):
    f = _field(p, h)
    by_squaring = {f.mul(a, a) for a in f.elements()}
    by_test = {a for a in f.elements() if f.is_square(a)}
    assert by_squaring == by_test
    for a in f.elements():
        assert f.is_square(f.mul(a, a))


def test_primitive_element(f9, f49):
    for f in (f9, f49):
        g = f.primitive_element()
        power, seen = 1, set()
        for _ in range(f.q - 1):
            power = f.mul(power, g)
            seen.add(power)
        assert len(seen) == f.q - 1


def test_poly_str():
    assert poly_str((1, 0, 1)) == "x^2 + 1"
    assert poly_str((0, 1)) == "x"
    assert poly_str((2, 1, 0, 0, 1)) == "x^4 + x + 2"
