"""Field arithmetic and exact linear algebra."""

import random

import pytest

from pdacache.gf2 import (
    DEFAULT_POLYNOMIALS,
    GF2m,
    GFMatrix,
    default_polynomial,
    is_irreducible,
    poly_str,
)
from helpers import EXAMPLE_G, example_cauchy, example_field


# ----------------------------------------------------------------------
# field construction
# ----------------------------------------------------------------------

def test_gf8_with_worked_polynomial():
    f = GF2m(3, 0b1011)
    # alpha^3 = alpha + 1 under x^3 + x + 1
    assert f.mul(2, f.mul(2, 2)) == 0b011
    assert f.order == 8


def test_gf2_default_is_prime_field():
    f = GF2m(1)
    assert f.order == 2
    assert f.add(1, 1) == 0
    assert f.mul(1, 1) == 1
    assert f.inv(1) == 1


def test_reducible_polynomial_rejected():
    # x^3 + x^2 + x + 1 has root 1, i.e. is divisible by x + 1
    assert (0b1111).bit_count() % 2 == 0
    with pytest.raises(ValueError, match="reducible"):
        GF2m(3, 0b1111)


def test_wrong_degree_polynomial_rejected():
    with pytest.raises(ValueError, match="degree"):
        GF2m(3, 0b111)


def test_default_polynomials_are_irreducible():
    for r, poly in DEFAULT_POLYNOMIALS.items():
        assert poly.bit_length() - 1 == r
        assert is_irreducible(poly), poly_str(poly)


def test_default_polynomial_search_beyond_table():
    poly = default_polynomial(17)
    assert poly.bit_length() - 1 == 17
    assert is_irreducible(poly)


def test_poly_str():
    assert poly_str(0b1011) == "x^3 + x + 1"
    assert poly_str(0b11) == "x + 1"


# ----------------------------------------------------------------------
# scalar operations
# ----------------------------------------------------------------------

def test_add_examples():
    f = example_field()
    assert f.add(5, 5) == 0
    assert f.add(2, 4) == 6
    assert f.add(3, 6) == 5
    assert f.sub(3, 6) == f.add(3, 6)


def test_mul_examples():
    f = example_field()
    # alpha * alpha^2 = alpha^3 = alpha + 1
    assert f.mul(2, 4) == 3
    for x in f.elements():
        assert f.mul(1, x) == x
        assert f.mul(0, x) == 0


def test_inv_examples():
    f = example_field()
    assert f.mul(3, 6) == 1
    assert f.inv(3) == 6
    assert f.inv(1) == 1
    # independent search oracle for inv(2)
    wanted = next(x for x in f.elements() if f.mul(2, x) == 1)
    assert wanted == 5
    assert f.inv(2) == wanted


def test_inv_zero_raises():
    with pytest.raises(ZeroDivisionError):
        example_field().inv(0)


def test_pow_matches_repeated_multiplication():
    f = GF2m(4)
    for a in (0, 1, 3, 9, 15):
        acc = 1
        for e in range(12):
            assert f.pow(a, e) == acc
            acc = f.mul(acc, a)


@pytest.mark.parametrize("r", [2, 3])
def test_algebra_laws_exhaustive(r):
    f = GF2m(r)
    elems = list(f.elements())
    for a in elems:
        for b in elems:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in elems:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_algebra_laws_random_gf256():
    f = GF2m(8)
    rng = random.Random(7)
    for _ in range(300):
        a, b, c = (rng.randrange(256) for _ in range(3))
        assert f.mul(a, b) == f.mul(b, a)
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    for a in range(1, 256):
        assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("r", [1, 2, 3, 5, 8, 9])
def test_table_multiplication_matches_shift_reduce(r):
    f = GF2m(r)
    rng = random.Random(r)
    pairs = (
        [(a, b) for a in f.elements() for b in f.elements()]
        if r <= 4
        else [(rng.randrange(f.order), rng.randrange(f.order)) for _ in range(500)]
    )
    for a, b in pairs:
        assert f.mul(a, b) == f._mul_raw(a, b)


# ----------------------------------------------------------------------
# matrices
# ----------------------------------------------------------------------

def test_matmul_identity():
    f = example_field()
    B = GFMatrix(f, [[1, 2], [3, 4], [5, 6]])
    I3 = GFMatrix.identity(f, 3)
    assert I3 @ B == B


def test_matmul_dimension_mismatch():
    f = example_field()
    A = GFMatrix(f, [[1, 2]])
    with pytest.raises(ValueError, match="mismatch"):
        A @ A


def test_worked_matrix_inverse():
    G = example_cauchy().matrix
    assert G.to_lists() == [list(row) for row in EXAMPLE_G]
    inv = G.inverse()
    # first row of the inverse matches the worked decode coefficients
    assert inv.rows[0] == (1, 6, 2, 4)
    assert G @ inv == GFMatrix.identity(G.field, 4)


def test_random_inverse_roundtrip():
    f = example_field()
    rng = random.Random(11)
    built = 0
    while built < 5:
        A = GFMatrix(f, [[rng.randrange(8) for _ in range(3)] for _ in range(3)])
        if A.rank() != 3:
            continue
        built += 1
        assert A @ A.inverse() == GFMatrix.identity(f, 3)


def test_singular_matrix_raises():
    f = example_field()
    A = GFMatrix(f, [[1, 2], [1, 2]])
    with pytest.raises(ValueError, match="singular"):
        A.inverse()


def test_rank_examples():
    f = example_field()
    assert GFMatrix.zeros(f, 3, 4).rank() == 0
    assert example_cauchy().matrix.rank() == 4
    repeated = GFMatrix(f, [[1, 2, 3], [4, 5, 6], [1, 2, 3]])
    assert repeated.rank() < repeated.nrows


def test_rank_equals_transpose_rank():
    f = GF2m(4)
    rng = random.Random(3)
    for _ in range(20):
        A = GFMatrix(f, [[rng.randrange(16) for _ in range(5)] for _ in range(3)])
        assert A.rank() == A.transpose().rank()


def test_null_space():
    f = example_field()
    rng = random.Random(5)
    for _ in range(15):
        A = GFMatrix(f, [[rng.randrange(8) for _ in range(6)] for _ in range(3)])
        basis = A.null_space()
        assert len(basis) == A.ncols - A.rank()
        for vec in basis:
            assert all(v == 0 for v in A.mul_vec(vec))


def test_left_null_space():
    f = example_field()
    A = GFMatrix(f, [[1, 2], [1, 2], [0, 1]])
    basis = A.left_null_space()
    assert len(basis) == A.nrows - A.rank()
    At = A.transpose()
    for vec in basis:
        assert all(v == 0 for v in At.mul_vec(vec))
