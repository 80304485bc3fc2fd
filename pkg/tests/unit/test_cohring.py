"""Unit tests for the truncated integrand ring in a1, a2, theta1, theta2, B."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.algebra.cohring import CohClass, CohMono, RingContext, coh_exp, coh_mul, coh_pow
from app.algebra.scalars import TPoly
from app.errors import ContextMismatchError, NonNilpotentError, NotInvertibleError

CTX = RingContext(g=1, maxdeg=4)


def _gen(name: str, ctx: RingContext = CTX) -> CohClass:
    return CohClass.generator(ctx, name)


monos = st.builds(
    CohMono,
    p1=st.integers(0, 2),
    p2=st.integers(0, 2),
    j=st.integers(0, 1),
    k=st.integers(0, 1),
    l=st.integers(0, 2),
)
classes = st.dictionaries(monos, st.integers(-3, 3).map(TPoly.const), max_size=4).map(
    lambda d: CohClass(CTX, d)
)


# ---------------------------------------------------------------------------
# Pruning
# ---------------------------------------------------------------------------


class TestPruning:
    def test_theta_above_genus_vanishes(self) -> None:
        """theta1^2 = 0 at g = 1."""
        th = _gen("theta1")
        assert coh_mul(th, th).is_zero()

    def test_B_above_twice_genus_vanishes(self) -> None:
        """B^3 = 0 at g = 1 while B^2 survives."""
        b = _gen("B")
        assert not coh_pow(b, 2).is_zero()
        assert coh_pow(b, 3).is_zero()

    def test_degree_truncation(self) -> None:
        """Total degree above maxdeg is pruned."""
        a = _gen("a1")
        assert not coh_pow(a, 4).is_zero()
        assert coh_pow(a, 5).is_zero()

    def test_budgets_prune_per_factor(self) -> None:
        """Budgets bound the degree carried by each factor."""
        ctx = RingContext(g=1, maxdeg=4, budgets=(1, 3))
        a1 = CohClass.generator(ctx, "a1")
        assert coh_pow(a1, 2).is_zero()
        b = CohClass.generator(ctx, "B")
        # B^2 uses one unit of each budget
        assert coh_mul(b, b).coefficient(CohMono(l=2)) == 1
        assert coh_mul(coh_mul(b, b), a1).is_zero()

    def test_contexts_must_agree(self) -> None:
        """Classes from different ring contexts do not mix."""
        other = RingContext(g=2, maxdeg=4)
        with pytest.raises(ContextMismatchError):
            _gen("a1") + CohClass.generator(other, "a1")


# ---------------------------------------------------------------------------
# Powers, inverses, exponentials
# ---------------------------------------------------------------------------


class TestPowers:
    def test_inverse_of_linear_class(self) -> None:
        """a1 + 2t times its inverse is 1."""
        ctx = RingContext(g=0, maxdeg=3)
        x = CohClass.linear(ctx, 1, 0, 2)
        assert coh_mul(x, coh_pow(x, -1)) == CohClass.one(ctx)

    def test_inverse_expansion(self) -> None:
        ctx = RingContext(g=0, maxdeg=2)
        inv = coh_pow(CohClass.linear(ctx, 1, 0, 1), -1)
        # 1/(t + a) = 1/t - a/t^2 + a^2/t^3
        assert inv.coefficient(CohMono()) == TPoly.monomial(1, -1)
        assert inv.coefficient(CohMono(p1=1)) == TPoly.monomial(-1, -2)
        assert inv.coefficient(CohMono(p1=2)) == TPoly.monomial(1, -3)

    def test_non_monomial_constant_part_not_invertible(self) -> None:
        """A constant part 1 + t is not a unit."""
        x = CohClass.scalar(CTX, TPoly({0: 1, 1: 1}))
        with pytest.raises(NotInvertibleError):
            coh_pow(x, -1)

    def test_fractional_binomials(self) -> None:
        """(t + a1)^-3 has a1-coefficient -3 t^-4."""
        ctx = RingContext(g=0, maxdeg=1)
        x = CohClass.linear(ctx, 1, 0, 1)
        assert coh_pow(x, -3).coefficient(CohMono(p1=1)) == TPoly.monomial(-3, -4)

    def test_exp_of_nilpotent(self) -> None:
        """exp(-theta1/2) = 1 - theta1/2 at g = 1."""
        th = _gen("theta1")
        e = coh_exp(th.scale(Fraction(-1, 2)))
        assert e.coefficient(CohMono()) == 1
        assert e.coefficient(CohMono(j=1)) == Fraction(-1, 2)

    def test_exp_of_non_nilpotent_rejected(self) -> None:
        with pytest.raises(NonNilpotentError, match="exponential of non-nilpotent"):
            coh_exp(CohClass.one(CTX))

    def test_exp_is_multiplicative(self) -> None:
        """exp(x + y) = exp(x) exp(y) for fixed nilpotents."""
        x = _gen("theta1") + _gen("B").scale(2)
        y = _gen("a2").scale(3)
        assert coh_exp(x + y) == coh_mul(coh_exp(x), coh_exp(y))


class TestHomogeneity:
    def test_linear_power_is_homogeneous(self) -> None:
        """(a1 - a2 + 3t)^-2 is homogeneous of weight -2."""
        ctx = RingContext(g=1, maxdeg=3)
        x = CohClass.linear(ctx, 1, -1, 3)
        assert coh_pow(x, -2).is_homogeneous() == -2

    def test_mixed_degrees_detected(self) -> None:
        x = CohClass.one(CTX) + _gen("a1")
        assert x.is_homogeneous() is None


@settings(max_examples=40, deadline=None)
@given(classes, classes, classes)
def test_ring_axioms_hold_after_truncation(x: CohClass, y: CohClass, z: CohClass) -> None:
    """Ring axioms survive pruning."""
    assert coh_mul(coh_mul(x, y), z) == coh_mul(x, coh_mul(y, z))
    assert coh_mul(x, y + z) == coh_mul(x, y) + coh_mul(x, z)
    assert coh_mul(x, y) == coh_mul(y, x)


nilpotents = st.dictionaries(
    monos.filter(lambda m: m.deg > 0), st.integers(-3, 3).map(TPoly.const), max_size=4
).map(lambda d: CohClass(CTX, d))
units = st.builds(TPoly.monomial, st.integers(-3, 3).filter(bool), st.integers(-2, 2)).map(
    lambda c: CohClass.scalar(CTX, c)
)


@settings(max_examples=40, deadline=None)
@given(units, nilpotents)
def test_inverse_of_unit_plus_nilpotent(u: CohClass, n: CohClass) -> None:
    """t-monomial plus nilpotent is invertible and coh_pow(x, -1) is its inverse."""
    x = u + n
    assert coh_mul(coh_pow(x, -1), x) == CohClass.one(CTX)


@settings(max_examples=40, deadline=None)
@given(nilpotents, nilpotents)
def test_exp_of_sum_property(x: CohClass, y: CohClass) -> None:
    """coh_exp turns sums of nilpotents into products."""
    assert coh_exp(x + y) == coh_mul(coh_exp(x), coh_exp(y))
