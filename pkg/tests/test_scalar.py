import cmath
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import extended, gaussians
from singtwin.scalar import (
    ContextMismatch,
    DivisionByZero,
    InconsistentRoot,
    Scalar,
    ScalarError,
    parse_scalar,
    to_float,
)


def test_conjugate_pair_sums_to_one():
    assert parse_scalar("1/2+i") + parse_scalar("1/2-i") == 1


def test_root_relation_d3():
    r = Scalar.root(3)
    ir = Scalar.i(3) * r
    assert ir * ir == -3


def test_gaussian_division():
    assert Scalar(2) / parse_scalar("1-i") == parse_scalar("1+i")


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Scalar(1) / Scalar(0)
    with pytest.raises(ZeroDivisionError):
        Scalar(1).inverse() / Scalar(0)


def test_to_float_identity_embedding():
    assert to_float(Scalar(1)) == 1 + 0j


def test_to_float_wrong_root_sign():
    with pytest.raises(InconsistentRoot):
        to_float(Scalar.root(3), root_value=1.732050808j)


def test_to_float_imaginary_root():
    z = to_float(Scalar.root(-3), root_value=1j * 3 ** 0.5)
    assert abs(z - 1.7320508j) < 1e-7
    assert abs(z * z + 3) < 1e-9


def test_square_root_squares_rejected():
    for D in (4, -9, 1, -1):
        with pytest.raises(ScalarError):
            Scalar.root(D)


def test_root_part_needs_context():
    with pytest.raises(ContextMismatch):
        Scalar(0, 0, 1, 0, root_square=0)


def test_context_promotion_and_mismatch():
    assert (Scalar(1) + Scalar.root(-3)).D == -3
    with pytest.raises(ContextMismatch):
        Scalar.root(-3) + Scalar.root(2)


@pytest.mark.parametrize("text,D,expected", [
    ("1/2-3i", 0, Scalar(Fraction(1, 2), -3)),
    ("i", 0, Scalar(0, 1)),
    ("-i", 0, Scalar(0, -1)),
    ("2r", -3, Scalar(0, 0, 2, 0, root_square=-3)),
    ("(1+i)r", 5, Scalar(0, 0, 1, 1, root_square=5)),
    ("1+0i+(0+1i)r", 3, Scalar(1, 0, 0, 1, root_square=3)),
    ("3+-2i", 0, Scalar(3, -2)),
])
def test_parse(text, D, expected):
    assert parse_scalar(text, D) == expected


def test_string_round_trip_format():
    s = Scalar(Fraction(1, 2), Fraction(-3, 4), 2, Fraction(1, 3), root_square=-3)
    assert str(s) == "1/2-3/4i+(2+1/3i)r"
    assert parse_scalar(str(s), -3) == s


@given(extended(), extended(), extended())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    if x:
        assert x * x.inverse() == 1


@given(gaussians(), gaussians())
def test_float_embedding_agrees(x, y):
    for a, b in ((x * y, to_float(x) * to_float(y)), (x + y, to_float(x) + to_float(y))):
        assert cmath.isclose(to_float(a), b, abs_tol=1e-9)


@given(extended(D=-3))
def test_str_parse_round_trip(x):
    assert parse_scalar(str(x), -3) == x
    assert hash(parse_scalar(str(x), -3)) == hash(x)


@given(extended(D=2))
def test_normalization_idempotent(x):
    a, b, c, d = x.parts
    assert Scalar(a, b, c, d, root_square=2) == x
    assert str(Scalar(a, b, c, d, root_square=2)) == str(x)


def test_equality_matches_float_on_1000_samples():
    import random
    rng = random.Random(7)
    for _ in range(1000):
        parts = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
        x = Scalar(*parts, root_square=-3)
        y = Scalar(*parts[:3], parts[3] + rng.choice([0, 0, Fraction(1, 7)]), root_square=-3)
        assert (x == y) == cmath.isclose(to_float(x), to_float(y), abs_tol=1e-9)
