"""Graded polynomial pieces: bases, arithmetic, composition, parsing."""

import math
import random

import pytest

from pushsplit.errors import FormSyntaxError, InputError
from pushsplit.polyring import (
    HomogPoly,
    graded_basis,
    graded_dim,
    monomials_of_degree,
    multiplication_matrix,
    multiply,
    compose,
    parse_form,
)
from pushsplit.exactla import rank_rational


def random_poly(rng, num_vars, degree):
    monos = monomials_of_degree(num_vars, degree)
    terms = {m: rng.randrange(-3, 4) for m in rng.sample(monos, k=min(3, len(monos)))}
    poly = HomogPoly.from_dict(num_vars, degree, terms)
    if poly.is_zero():
        return HomogPoly.monomial(num_vars, monos[0])
    return poly


def test_graded_dim_matches_binomial():
    assert graded_dim(5, 2) == 15
    assert graded_dim(5, 0) == 1
    assert graded_dim(5, -1) == 0
    assert graded_dim(1, 9) == 1
    for n in range(1, 6):
        for d in range(0, 8):
            assert graded_dim(n + 1, d) == math.comb(n + d, n)


def test_monomials_enumeration():
    for num_vars in (1, 2, 3, 4):
        for degree in (0, 1, 2, 3):
            monos = monomials_of_degree(num_vars, degree)
            assert len(monos) == graded_dim(num_vars, degree)
            assert all(len(m) == num_vars and sum(m) == degree for m in monos)
            assert list(monos) == sorted(monos, reverse=True)
    assert monomials_of_degree(3, 2)[0] == (2, 0, 0)
    assert monomials_of_degree(3, 2)[-1] == (0, 0, 2)


def test_basis_index_round_trip():
    basis = graded_basis(4, 3)
    assert len(basis) == graded_dim(4, 3)
    for i, mono in enumerate(basis.monomials):
        assert basis.index(mono) == i


def test_poly_arithmetic():
    y0 = HomogPoly.variable(2, 0)
    y1 = HomogPoly.variable(2, 1)
    square = multiply(y0 + y1, y0 + y1)
    assert square.coeff((2, 0)) == 1
    assert square.coeff((1, 1)) == 2
    assert square.coeff((0, 2)) == 1
    assert (square - square).is_zero()
    assert square.scale(0).is_zero()


def test_poly_validation():
    with pytest.raises(InputError):
        HomogPoly.from_dict(2, 2, {(1, 0): 1})
    with pytest.raises(InputError):
        HomogPoly.from_dict(2, 2, {(2, 0, 0): 1})


def test_multiply_properties():
    rng = random.Random(2024)
    for _ in range(15):
        p = random_poly(rng, 3, rng.randrange(1, 3))
        q = random_poly(rng, 3, rng.randrange(1, 3))
        r = random_poly(rng, 3, q.degree)
        assert multiply(p, q) == multiply(q, p)
        assert multiply(p, q + r) == multiply(p, q) + multiply(p, r)
        assert multiply(p, q).degree == p.degree + q.degree


def test_compose_is_ring_morphism():
    rng = random.Random(11)
    forms = tuple(random_poly(rng, 3, 2) for _ in range(3))
    for _ in range(10):
        p = random_poly(rng, 3, 2)
        q = random_poly(rng, 3, 2)
        assert compose(p + q, forms) == compose(p, forms) + compose(q, forms)
        assert compose(multiply(p, q), forms) == multiply(
            compose(p, forms), compose(q, forms)
        )
        assert compose(p, forms).degree == p.degree * 2


def test_compose_on_coordinates_is_identity():
    coords = tuple(HomogPoly.variable(3, i) for i in range(3))
    p = parse_form("y0^2 + 3*y1*y2", 3)
    assert compose(p, coords) == p


def test_multiplication_matrix_power_map():
    forms = (parse_form("y0^2", 2), parse_form("y1^2", 2))
    m = multiplication_matrix(forms, 0)
    assert (m.rows, m.cols) == (3, 2)
    assert rank_rational(m) == 2
    m1 = multiplication_matrix(forms, 1)
    assert (m1.rows, m1.cols) == (4, 4)
    assert rank_rational(m1) == 4


def test_multiplication_matrix_column_convention():
    # columns grouped by form index, source monomials in basis order inside
    forms = (parse_form("y0^2", 2), parse_form("y0*y1", 2))
    m = multiplication_matrix(forms, 1)
    basis3 = graded_basis(2, 3)
    # col 0 = f0 * y0 = y0^3, col 3 = f1 * y1 = y0*y1^2
    assert m.entry(basis3.index((3, 0)), 0) == 1
    assert m.entry(basis3.index((1, 2)), 3) == 1


def test_parse_form_examples():
    p = parse_form("y0^2 + 3*y1*y2", 3)
    assert p.degree == 2
    assert p.coeff((2, 0, 0)) == 1
    assert p.coeff((0, 1, 1)) == 3
    q = parse_form("-y0^3+y1^3", 2)
    assert q.coeff((3, 0)) == -1
    assert q.coeff((0, 3)) == 1
    r = parse_form("2*y0*y0*y1", 2)
    assert r.coeff((2, 1)) == 2
    assert parse_form("  y0 \t+ y1 ", 2).degree == 1


def test_parse_form_alternate_letter():
    p = parse_form("x0*x1", 2, letter="x")
    assert p.coeff((1, 1)) == 1
    with pytest.raises(FormSyntaxError):
        parse_form("y0*y1", 2, letter="x")


def test_parse_form_errors():
    with pytest.raises(InputError):
        parse_form("y0 + y1^2", 2)
    with pytest.raises(InputError):
        parse_form("y0 - y0", 2)
    with pytest.raises(FormSyntaxError) as err:
        parse_form("y9^2", 3)
    assert err.value.position is not None
    with pytest.raises(FormSyntaxError):
        parse_form("y0^", 2)
    with pytest.raises(FormSyntaxError):
        parse_form("", 2)
    with pytest.raises(FormSyntaxError):
        parse_form("3", 2)
    with pytest.raises(FormSyntaxError) as err:
        parse_form("y0^2 + @", 2)
    assert "position" in str(err.value)


def test_text_round_trips_through_parser():
    rng = random.Random(5)
    for _ in range(20):
        p = random_poly(rng, 4, rng.randrange(1, 4))
        assert parse_form(p.text(), 4) == p
