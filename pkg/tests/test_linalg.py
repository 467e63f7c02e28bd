from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rowcox import QQ, IntPolynomial, PermutationMatrix, PrimeField, RationalMatrix, coxeter_from_cartan, field_for, minimal_polynomial
from rowcox.errors import NonSquare, Singular
from rowcox.fields import kernel, rank, rref
from rowcox.linalg import check_identity_square, check_nilpotent_shift, permutation_from_matrix

from strategies import square_matrices, unit_triangular


def sym(m):
    return sympy.Matrix(m)


def plain(m):
    """sympy matrix -> nested lists of int / Fraction."""
    return [[int(x) if x.is_integer else Fraction(int(x.p), int(x.q)) for x in row] for row in m.tolist()]


def sympy_minimal_polynomial(m):
    """Least k with A^k in the span of lower powers, found by an exact linear solve."""
    a = sym(m)
    n = a.shape[0]
    powers = [sympy.eye(n)]
    while True:
        target = a ** len(powers)
        basis = sympy.Matrix.hstack(*[p.reshape(n * n, 1) for p in powers])
        try:
            sol, params = basis.gauss_jordan_solve(target.reshape(n * n, 1))
        except ValueError:
            powers.append(target)
            continue
        coeffs = [-c for c in sol.subs({t: 0 for t in params})] + [1]
        den = sympy.ilcm(*[sympy.fraction(c)[1] for c in coeffs])
        return [int(c * den) for c in coeffs]


# -- RationalMatrix ----------------------------------------------------------

@given(square_matrices(), square_matrices())
def test_product_matches_sympy(a, b):
    assume(len(a) == len(b))
    assert (RationalMatrix(a) @ RationalMatrix(b)).to_lists() == plain(sym(a) * sym(b))


@settings(deadline=None)
@given(square_matrices())
def test_inverse_matches_sympy(a):
    m = sym(a)
    if m.det() == 0:
        with pytest.raises(Singular):
            RationalMatrix(a).inverse()
    else:
        assert RationalMatrix(a).inverse().to_lists() == plain(m.inv())


def test_entries_stay_exact():
    m = RationalMatrix([[2, 1], [1, 1]]).inverse()
    assert m.to_lists() == [[1, -1], [-1, 2]]
    assert all(type(x) is int for row in m.to_lists() for x in row)
    half = RationalMatrix([[2]]).inverse()
    assert half[0, 0] == Fraction(1, 2)
    assert RationalMatrix.from_json(half.to_json()) == half


def test_floats_rejected():
    with pytest.raises(TypeError):
        RationalMatrix([[0.5]])


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        RationalMatrix([[1, 2], [3]])


def test_powers_and_transpose():
    m = RationalMatrix([[1, 1], [0, 1]])
    assert (m ** 3).to_lists() == [[1, 3], [0, 1]]
    assert m.T.to_lists() == [[1, 0], [1, 1]]
    assert (m ** 0).is_identity()


# -- Coxeter -----------------------------------------------------------------------

@settings(deadline=None)
@given(unit_triangular())
def test_coxeter_matches_sympy(m):
    expected = -sym(m).inv() * sym(m).T
    cox = coxeter_from_cartan(RationalMatrix(m))
    assert cox.to_lists() == plain(expected)
    assert cox.is_integral()


def test_coxeter_of_one_vertex():
    assert coxeter_from_cartan(RationalMatrix([[1]])).to_lists() == [[-1]]


def test_coxeter_needs_square():
    with pytest.raises(NonSquare):
        coxeter_from_cartan(RationalMatrix([[1, 0]]))


# -- minimal polynomial ----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(square_matrices(max_size=4, entries=st.integers(-2, 2)))
def test_minimal_polynomial_matches_dependency_search(a):
    poly = minimal_polynomial(RationalMatrix(a))
    assert list(poly.coefficients) == sympy_minimal_polynomial(a)
    assert poly(RationalMatrix(a)).is_zero()


@settings(max_examples=30, deadline=None)
@given(square_matrices(max_size=3))
def test_minimal_polynomial_divides_characteristic(a):
    poly = minimal_polynomial(RationalMatrix(a))
    x = sympy.Symbol("x")
    charpoly = sym(a).charpoly(x).as_expr()
    ours = sum(c * x**k for k, c in enumerate(poly.coefficients))
    assert sympy.rem(charpoly, ours, x) == 0


def test_minimal_polynomial_examples():
    assert minimal_polynomial(RationalMatrix.identity(3)).coefficients == (-1, 1)
    assert minimal_polynomial(RationalMatrix.zeros(2, 2)).coefficients == (0, 1)
    swap = RationalMatrix([[0, 1], [1, 0]])
    assert str(minimal_polynomial(swap)) == "x^2 - 1"
    jordan = RationalMatrix([[-1, 1], [0, -1]])
    assert str(minimal_polynomial(jordan)) == "x^2 + 2*x + 1"


def test_polynomial_normalisation_and_text():
    assert IntPolynomial([Fraction(1, 2), 0, Fraction(-1, 2)]).coefficients == (-1, 0, 1)
    assert str(IntPolynomial([1, -1, -1, 1])) == "x^3 - x^2 - x + 1"
    assert str(IntPolynomial([])) == "0"


# -- identity checks and permutations ------------------------------------------------------

def test_identity_checks():
    swap = RationalMatrix([[0, 1], [1, 0]])
    assert check_identity_square(swap)
    assert not check_nilpotent_shift(swap)
    jordan = RationalMatrix([[-1, 1], [0, -1]])
    assert check_nilpotent_shift(jordan)
    assert not check_identity_square(jordan)
    with pytest.raises(NonSquare):
        check_identity_square(RationalMatrix([[1, 2]]))


@given(st.permutations(range(6)))
def test_permutation_matrix_round_trip(image):
    perm = PermutationMatrix(image)
    m = perm.to_matrix()
    assert permutation_from_matrix(m) == perm
    assert (perm.inverse().to_matrix() @ m).is_identity()
    assert perm.inverse().to_matrix() == m.T
    assert sorted(x for c in perm.cycles() for x in c) == list(range(6))


def test_permutation_convention():
    # image[j] = i puts a 1 at row i, column j
    m = PermutationMatrix([2, 0, 1]).to_matrix()
    assert m.column(0) == (0, 0, 1)
    assert PermutationMatrix([1, 2, 0]).order() == 3


def test_permutation_rejects_repeats():
    with pytest.raises(ValueError):
        PermutationMatrix([0, 0])


# -- fields -----------------------------------------------------------------------------

@given(square_matrices(max_size=4))
def test_rank_and_rref_match_sympy(a):
    n = len(a)
    rows, pivots = rref(a, n)
    expected, expected_pivots = sym(a).rref()
    assert rank(a, n) == sym(a).rank()
    assert list(pivots) == list(expected_pivots)
    assert rows == plain(expected)[: len(rows)]


@given(square_matrices(max_size=4))
def test_kernel_vectors_are_annihilated(a):
    n = len(a)
    basis, _ = kernel(a, n)
    assert len(basis) == n - sym(a).rank()
    for v in basis:
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)


def test_prime_field_arithmetic():
    f = PrimeField(5)
    assert f(7) == 2 and f(Fraction(1, 2)) == 3
    assert f.div(1, 2) == 3
    # singular mod 5 but not over the rationals
    m = [[1, 2], [3, 1]]
    assert rank(m, 2, QQ) == 2
    assert rank(m, 2, f) == 1


def test_field_selection():
    assert field_for(0) is QQ
    assert field_for(7) == PrimeField(7)
    with pytest.raises(ValueError):
        field_for(4)
