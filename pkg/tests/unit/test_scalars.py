"""Unit tests for exact scalars: generalized binomials and t-Laurent polynomials."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.algebra.scalars import TPoly, binomial, tpoly_arith
from app.errors import ContractViolation, NotInvertibleError

tpolys = st.dictionaries(st.integers(-3, 3), st.integers(-5, 5), max_size=4).map(TPoly)


# ---------------------------------------------------------------------------
# binomial
# ---------------------------------------------------------------------------


class TestBinomial:
    def test_ordinary(self) -> None:
        assert binomial(5, 2) == 10
        assert binomial(4, 0) == 1
        assert binomial(3, 5) == 0

    def test_negative_upper_index(self) -> None:
        """Generalized binomial (-1)^k C(k-n-1, k) for n < 0."""
        assert binomial(-1, 3) == -1
        assert binomial(-2, 2) == 3
        assert binomial(-3, 1) == -3

    def test_result_is_exact_rational(self) -> None:
        assert isinstance(binomial(7, 3), Fraction)

    def test_negative_lower_index_rejected(self) -> None:
        with pytest.raises(ContractViolation):
            binomial(4, -1)

    @pytest.mark.parametrize("n", range(-10, 11))
    def test_pascal_recurrence(self, n: int) -> None:
        """C(n, k) = C(n-1, k-1) + C(n-1, k) for negative n as well."""
        for k in range(1, 11):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)

    @pytest.mark.parametrize("D", range(0, 8))
    def test_even_index_above_top_vanishes(self, D: int) -> None:
        """C(D, 2i) = 0 once 2i > D >= 0, so finite sums stop at D // 2."""
        for i in range(D // 2 + 1, D + 4):
            assert binomial(D, 2 * i) == 0


# ---------------------------------------------------------------------------
# TPoly arithmetic
# ---------------------------------------------------------------------------


class TestTPolyArithmetic:
    def test_t_squared(self) -> None:
        t = TPoly.t()
        assert t * t == TPoly.monomial(1, 2)

    def test_binomial_square(self) -> None:
        x = TPoly.one() + TPoly.t()
        assert (x**2) == TPoly({0: 1, 1: 2, 2: 1})

    def test_zero_coefficients_not_stored(self) -> None:
        """Cancelled terms disappear from the exponent list."""
        x = TPoly({0: 1, 1: 1}) - TPoly.t()
        assert x == 1
        assert x.exponents() == [0]

    def test_monomial_inverse(self) -> None:
        x = TPoly.monomial(Fraction(2, 3), 4)
        assert x.pow(-1) == TPoly.monomial(Fraction(3, 2), -4)
        assert x * x.pow(-1) == 1

    def test_non_monomial_inverse_rejected(self) -> None:
        """Only t-monomials are units in Q[t, t^-1]."""
        with pytest.raises(NotInvertibleError, match="not invertible in localized ring"):
            (TPoly.one() + TPoly.t()).pow(-1)

    def test_division_by_monomial(self) -> None:
        x = TPoly({1: 4, 3: 2})
        assert x / TPoly.monomial(2, 1) == TPoly({0: 2, 2: 1})

    def test_division_by_zero_scalar(self) -> None:
        with pytest.raises(ZeroDivisionError):
            TPoly.t() / 0

    def test_shift(self) -> None:
        assert TPoly({0: 1, 2: 3}).shift(-2) == TPoly({-2: 1, 0: 3})

    def test_as_rat(self) -> None:
        assert TPoly.const(Fraction(-5, 2)).as_rat() == Fraction(-5, 2)
        with pytest.raises(ContractViolation):
            TPoly.t().as_rat()

    def test_arith_by_name(self) -> None:
        x, y = TPoly({0: 1, 1: 1}), TPoly.monomial(2, 1)
        assert tpoly_arith(x, y, "add") == TPoly({0: 1, 1: 3})
        assert tpoly_arith(x, y, "mul") == TPoly({1: 2, 2: 2})
        assert tpoly_arith(x, y, "neg") == TPoly({0: -1, 1: -1})


@given(tpolys, tpolys, tpolys)
def test_ring_axioms(x: TPoly, y: TPoly, z: TPoly) -> None:
    """TPoly is a commutative ring."""
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


class TestTPolyRendering:
    def test_zero(self) -> None:
        assert TPoly.zero().render() == "0"

    def test_constant(self) -> None:
        assert TPoly.const(-8404).render() == "-8404"

    def test_sorted_terms_with_signs(self) -> None:
        """Terms render by increasing exponent with explicit signs."""
        x = TPoly({2: 8, -1: Fraction(1, 2), 0: -3})
        assert x.render() == "1/2*t^-1 - 3 + 8*t^2"

    def test_json_shape(self) -> None:
        x = TPoly({2: Fraction(-3, 4)})
        assert x.to_json() == {"t_terms": [{"exp": 2, "num": "-3", "den": "4"}]}
