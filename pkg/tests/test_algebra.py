"""
Tests for the core algebra.

Tests simplicial objects, Weil elements and exact linear algebra.
"""

from fractions import Fraction

import pytest


class TestSimplicialObject:
    """Tests for SimplicialObject and the basis enumeration."""

    @pytest.mark.parametrize(
        "arity,forbidden,expected",
        [
            (1, [], 2),
            (2, [], 4),
            (3, [], 8),
            (2, [(1, 2)], 3),
            (3, [(1, 3), (2, 3)], 5),
            (3, [(2, 3)], 6),
            (4, [(2, 4), (3, 4)], 10),
            (4, [(1, 3), (2, 3), (1, 4), (2, 4), (3, 4)], 6),
        ],
    )
    def test_dimensions(self, arity, forbidden, expected):
        """Test dimensions of the named small objects."""
        from src.algebra.simplicial import SimplicialObject

        assert SimplicialObject(arity, frozenset(forbidden)).dim == expected

    def test_d_paren_is_all_pairs(self):
        """Test D(n) forbids every pair."""
        from src.algebra.simplicial import make_D_paren

        d3 = make_D_paren(3)
        assert d3.dim == 4
        assert d3.forbidden == frozenset({(1, 2), (1, 3), (2, 3)})

    def test_basis_order(self, c_object):
        """Test basis is ordered by degree then lexicographically."""
        assert c_object.basis == ((), (1,), (2,), (3,), (1, 2))
        assert c_object.index[(1, 2)] == 4

    def test_forbidden_family_is_normalised(self):
        """Test supersets of forbidden sets are dropped and order is irrelevant."""
        from src.algebra.simplicial import SimplicialObject

        a = SimplicialObject(3, frozenset({(2, 1), (1, 2, 3)}))
        b = SimplicialObject(3, frozenset({(1, 2)}))
        assert a == b
        assert a.forbidden == frozenset({(1, 2)})

    def test_is_forbidden(self, c_object):
        """Test forbidden detection on supersets."""
        assert c_object.is_forbidden((1, 3))
        assert c_object.is_forbidden((1, 2, 3))
        assert not c_object.is_forbidden((1, 2))

    def test_is_forbidden_out_of_range(self, c_object):
        """Test indices outside 1..n are rejected."""
        from src.algebra.simplicial import IndexOutOfRangeError

        with pytest.raises(IndexOutOfRangeError):
            c_object.is_forbidden((1, 4))

    @pytest.mark.parametrize(
        "arity,forbidden",
        [
            (0, []),
            (2, [(1,)]),
            (2, [(1, 1)]),
            (2, [(1, 3)]),
        ],
    )
    def test_invalid_definitions(self, arity, forbidden):
        """Test malformed objects raise ObjectDefinitionError."""
        from src.algebra.simplicial import ObjectDefinitionError, SimplicialObject

        with pytest.raises(ObjectDefinitionError):
            SimplicialObject(arity, frozenset(forbidden))

    def test_str(self, e_object, d1, d3):
        """Test the printed form."""
        assert str(d1) == "D"
        assert str(d3) == "D^3"
        assert str(e_object) == "D^4{(1,3),(1,4),(2,3),(2,4),(3,4)}"


class TestOplus:
    """Tests for the direct sum of objects."""

    def test_oplus_dimension(self, d3):
        """Test D^3 (+) D^3 has dimension 15."""
        from src.algebra.simplicial import oplus

        big = oplus(d3, d3)
        assert big.arity == 6
        assert big.dim == 15

    def test_oplus_forbids_cross_pairs(self, d1):
        """Test every cross pair is forbidden and blocks keep their own sets."""
        from src.algebra.simplicial import SimplicialObject, oplus

        c = SimplicialObject(2, frozenset({(1, 2)}))
        big = oplus(c, d1)
        assert big.is_forbidden((1, 2))
        assert big.is_forbidden((1, 3))
        assert big.is_forbidden((2, 3))

    def test_oplus_all_and_offsets(self, d1, d2, d3):
        """Test offsets of consecutive blocks."""
        from src.algebra.simplicial import block_offsets, oplus_all

        assert block_offsets([d1, d2, d3]) == [0, 1, 3]
        assert oplus_all([d1, d2, d3]).dim == d1.dim + d2.dim + d3.dim - 2


class TestWeilElement:
    """Tests for WeilElement arithmetic."""

    def test_squares_vanish(self, d2):
        """Test X_i^2 = 0."""
        from src.algebra.weil import WeilElement

        x1 = WeilElement.generator(d2, 1)
        assert (x1 * x1).is_zero()

    def test_forbidden_products_vanish(self, c_object):
        """Test X1*X3 = 0 in W_C while X1*X2 survives."""
        from src.algebra.weil import WeilElement

        x1, x2, x3 = WeilElement.generators(c_object)
        assert (x1 * x3).is_zero()
        assert (x1 * x2).coefficient((1, 2)) == 1

    def test_constructor_reduces(self, c_object):
        """Test forbidden and repeated monomials are dropped on construction."""
        from src.algebra.weil import WeilElement

        a = WeilElement(c_object, {(1, 3): 5, (2, 2): 1, (2, 1): Fraction(1, 2)})
        assert a.terms() == [((1, 2), Fraction(1, 2))]

    def test_binomial_expansion(self, d2):
        """Test (X1 + X2)^2 = 2*X1*X2 in W_{D^2}."""
        from src.algebra.weil import WeilElement

        x1, x2 = WeilElement.generators(d2)
        assert (x1 + x2) ** 2 == 2 * x1 * x2

    def test_arithmetic_with_scalars(self, d1):
        """Test mixed scalar arithmetic."""
        from src.algebra.weil import WeilElement

        x = WeilElement.generator(d1, 1)
        a = 1 + x
        b = 1 - x
        assert a * b == 1
        assert (3 - a).constant_term == 2
        assert -x == WeilElement(d1, {(1,): -1})

    def test_mixed_algebras(self, d1, d2):
        """Test elements of different algebras do not mix."""
        from src.algebra.weil import MixedAlgebraError, WeilElement

        with pytest.raises(MixedAlgebraError):
            WeilElement.generator(d1, 1) + WeilElement.generator(d2, 1)

    def test_vector_round_trip(self, e_object):
        """Test to_vector/from_vector agree with the basis order."""
        from src.algebra.weil import WeilElement

        vector = [Fraction(k, 3) for k in range(e_object.dim)]
        assert WeilElement.from_vector(e_object, vector).to_vector() == tuple(vector)

    def test_substitute(self, d2, c_object):
        """Test substitution of X1*X2 + X3 along (d1, d2, d1*d2)."""
        from src.algebra.weil import WeilElement

        x1, x2, x3 = WeilElement.generators(c_object)
        d1_, d2_ = WeilElement.generators(d2)
        image = (x1 * x2 + x3).substitute([d1_, d2_, d1_ * d2_])
        assert image == 2 * d1_ * d2_

    def test_format(self, c_object):
        """Test the printed polynomial."""
        from src.algebra.weil import WeilElement

        a = WeilElement(c_object, {(1,): -1, (1, 2): Fraction(1, 3), (): 2})
        assert a.format() == "2 - X1 + 1/3*X1*X2"
        assert a.format("d") == "2 - d1 + 1/3*d1*d2"
        assert WeilElement.zero(c_object).format() == "0"

    def test_negative_power(self, d1):
        """Test negative powers are rejected."""
        from src.algebra.weil import WeilElement

        with pytest.raises(ValueError):
            WeilElement.one(d1) ** -1


class TestMatrix:
    """Tests for exact rational elimination."""

    def test_rank_and_nullspace(self):
        """Test rank and kernel of a singular matrix."""
        from src.algebra import matrix as mx

        m = mx.to_matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        assert mx.rank(m, 3) == 2
        kernel = mx.nullspace(m, 3)
        assert len(kernel) == 1
        assert mx.matvec(m, kernel[0]) == (0, 0, 0)

    def test_solve_unique(self):
        """Test an invertible system has a unique exact solution."""
        from src.algebra import matrix as mx

        m = mx.to_matrix([[2, 1], [1, 3]])
        solution, nullity = mx.solve(m, [Fraction(3), Fraction(5)], 2)
        assert nullity == 0
        assert solution == (Fraction(4, 5), Fraction(7, 5))

    def test_solve_inconsistent(self):
        """Test an inconsistent system has no solution."""
        from src.algebra import matrix as mx

        m = mx.to_matrix([[1, 1], [1, 1]])
        solution, _ = mx.solve(m, [Fraction(1), Fraction(2)], 2)
        assert solution is None

    def test_matmul_identity(self):
        """Test multiplying by the identity."""
        from src.algebra import matrix as mx

        m = mx.to_matrix([[1, 2], [3, 4], [5, 6]])
        assert mx.matmul(m, mx.identity(2)) == m
        assert mx.transpose(mx.transpose(m)) == m
