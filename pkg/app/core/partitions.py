"""Closed-form degree-2 partition functions and the GW/PT bridge.

The GW side is a function of s = (2 sin(u/2))^2; under -q = e^{iu} this is
s = q^{-1}(1+q)^2, so the correspondence is checked in exact rational
arithmetic without ever touching the exponential.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from app.algebra.scalars import Rat, TPoly, binomial
from app.algebra.series import QRatFun, QSeries
from app.core.geometry import GeomData
from app.errors import ContractViolation

# ---------------------------------------------------------------------------
# Z^PT_2(d) in closed form
# ---------------------------------------------------------------------------


def zpt_closed(gd: GeomData) -> QRatFun:
    """Z^PT_2(d) as an exact rational function of q.

    For d+1-g >= 0 this is the finite sum over i; otherwise the resummed
    form 2^{2g-1} s^d (1-s/4)^{d+1-g} sum_j C(g-1-d, 2j)(s/4)^j with
    s = (1+q)^2/q and 1 - s/4 = -(1-q)^2/(4q).
    """
    g, d, D = gd.g, gd.d, gd.D
    pref = TPoly.monomial(1, gd.t_exponent)
    total = QRatFun({})
    if D >= 0:
        for i in range(D // 2 + 1):
            coef = binomial(D, 2 * i) * Rat(2) ** (2 * g - 1 - 2 * i)
            total = total + QRatFun.from_factors(
                pref * coef, q_power=2 - 2 * g - i, one_plus_q=2 * d + 2 * i
            )
        return total
    M = -D
    for j in range(M // 2 + 1):
        coef = Rat(2) ** (2 * g - 1) * binomial(M, 2 * j) * Rat(1, 4) ** j * Rat(-1, 4) ** D
        total = total + QRatFun.from_factors(
            pref * coef,
            q_power=2 - 2 * g - j - D,
            one_plus_q=2 * d + 2 * j,
            one_minus_q=2 * D,
        )
    return total


# ---------------------------------------------------------------------------
# GW side in the s variable
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SForm:
    """Z^GW_2(d) = prefactor * u^u_power * sum_k s_terms[k] s^(k + s_shift) (1 - s/4)^cos_power."""

    prefactor: TPoly
    u_power: int
    s_terms: dict[int, Rat] = field(default_factory=dict)
    cos_power: int = 0
    s_shift: int = 0


def zgw_s_form(gd: GeomData) -> SForm:
    """s-representation of Z^GW_2(d); resummed when d+1-g < 0."""
    g, d, D = gd.g, gd.d, gd.D
    pref = TPoly.monomial(1, gd.t_exponent)
    if D >= 0:
        terms = {
            i + d: binomial(D, 2 * i) * Rat(2) ** (2 * g - 1 - 2 * i) for i in range(D // 2 + 1)
        }
        return SForm(pref, gd.t_exponent, terms)
    M = -D
    terms = {
        j: Rat(2) ** (2 * g - 1) * binomial(M, 2 * j) * Rat(1, 4) ** j for j in range(M // 2 + 1)
    }
    return SForm(pref, gd.t_exponent, terms, cos_power=D, s_shift=d)


def sform_to_qratfun(form: SForm) -> QRatFun:
    """The s-sum with s -> q^{-1}(1+q)^2 (prefactor not included)."""
    c = form.cos_power
    total = QRatFun({})
    for k, coef in form.s_terms.items():
        p = k + form.s_shift
        total = total + QRatFun.from_factors(
            coef * Rat(-1, 4) ** c, q_power=-p - c, one_plus_q=2 * p, one_minus_q=2 * c
        )
    return total


class CorrespondenceSides(NamedTuple):
    gw: QRatFun
    pt: QRatFun


def gwpt_sides(gd: GeomData) -> CorrespondenceSides:
    """Both sides of the GW/PT correspondence as rational functions of q."""
    form = zgw_s_form(gd)
    gw = sform_to_qratfun(form) * QRatFun.from_factors(
        form.prefactor, q_power=gd.d + 2 - 2 * gd.g
    )
    return CorrespondenceSides(gw, zpt_closed(gd))


def gwpt_check(gd: GeomData) -> bool:
    """u^{4-4g+2d} Z^GW_2 = q^{2g-2-d} Z^PT_2 after s -> q^{-1}(1+q)^2."""
    gw, pt = gwpt_sides(gd)
    return gw == pt


def bridge_identity_holds() -> bool:
    """2 + q + q^{-1} == q^{-1}(1+q)^2."""
    return QRatFun({-1: 1, 0: 2, 1: 1}) == QRatFun.from_factors(1, q_power=-1, one_plus_q=2)


def sform_s_series(form: SForm, order: int) -> QSeries:
    """Power series in s of the s-sum (prefactor not included), through s^order."""
    if not form.s_terms:
        return QSeries.zero(order)
    lowest = min(form.s_terms) + form.s_shift
    rel = max(order - lowest, 0)
    weight = QSeries.from_terms({0: 1, 1: Rat(-1, 4)}, rel, min_exp=0).pow(form.cos_power)
    total: QSeries | None = None
    for k, coef in sorted(form.s_terms.items()):
        term = weight.scale(coef).shift(k + form.s_shift)
        total = term if total is None else total + term
    assert total is not None
    return total.truncate(order) if total.order >= order else total


def termwise_s_series(gd: GeomData, order: int) -> QSeries:
    """sum_i C(d+1-g, 2i) 2^{2g-1-2i} s^{i+d} with generalized binomials, through s^order."""
    terms: dict[int, TPoly] = {}
    i = 0
    while i + gd.d <= order:
        c = binomial(gd.D, 2 * i) * Rat(2) ** (2 * gd.g - 1 - 2 * i)
        if c:
            terms[i + gd.d] = TPoly.const(c)
        i += 1
    return QSeries.from_terms(terms, order, min_exp=min(gd.d, order + 1))


def s_of_u(order: int) -> QSeries:
    """(2 sin(u/2))^2 = 2 - 2 cos u as a power series in u."""
    terms: dict[int, Rat] = {}
    k, fact = 1, Rat(2)
    while 2 * k <= order:
        terms[2 * k] = Rat(2 * (-1) ** (k + 1)) / fact
        k += 1
        fact = fact * (2 * k - 1) * (2 * k)
    return QSeries.from_terms(terms, order, min_exp=min(2, order + 1))


def gw_u_series(gd: GeomData, order: int) -> QSeries:
    """Z^GW_2(d) as a Laurent series in u through u^order; for display."""
    form = zgw_s_form(gd)
    order_f = order - form.u_power
    if not form.s_terms:
        return QSeries.zero(order)
    p_min = min(form.s_terms) + form.s_shift
    s = s_of_u(order_f + 2 + 2 * max(0, -p_min) + 2)
    one_minus = QSeries.one(s.order) - s.scale(Rat(1, 4))
    weight = one_minus.pow(form.cos_power)
    total: QSeries | None = None
    for k, coef in sorted(form.s_terms.items()):
        term = (s.pow(k + form.s_shift) * weight).scale(coef)
        total = term if total is None else total + term
    assert total is not None
    return total.truncate(order_f).shift(form.u_power).scale(form.prefactor)


# ---------------------------------------------------------------------------
# Degree-0 DT and MacMahon
# ---------------------------------------------------------------------------


def macmahon(order: int) -> QSeries:
    """M(q) = prod_n (1 - q^n)^{-n} through q^order."""
    if order < 0:
        raise ContractViolation(f"macmahon order {order} < 0")
    result = QSeries.one(order)
    for n in range(1, order + 1):
        factor = QSeries.from_terms({0: 1, n: -1}, order, min_exp=0).pow(-n)
        result = result * factor
    return result


def zdt0(gd: GeomData, order: int) -> QSeries:
    """Z^DT_0(d) = M(-q)^{8g-8-d} through q^order."""
    return macmahon(order).substitute_sign().pow(8 * gd.g - 8 - gd.d)


# ---------------------------------------------------------------------------
# Maximal subbundles and minimal Euler characteristic
# ---------------------------------------------------------------------------


class MaximalSubbundle(NamedTuple):
    epsilon: int
    e: int


class MinimalInvariant(NamedTuple):
    chi_min: int
    value: TPoly


def maximal_subbundle_degree(gd: GeomData) -> MaximalSubbundle:
    """(epsilon, e) with g - 1 + epsilon = d - 2e, epsilon in {0, 1}."""
    eps = (gd.d - gd.g + 1) % 2
    return MaximalSubbundle(eps, (gd.d - gd.g + 1 - eps) // 2)


def minimal_invariant(gd: GeomData) -> MinimalInvariant:
    """Lowest q-term of Z^PT_2(d): exponent 2-2g-e and its DT=PT value."""
    eps, e = maximal_subbundle_degree(gd)
    power = TPoly.monomial(1, gd.t_exponent)
    if eps == 0:
        value = power * Rat(2) ** (3 * gd.g - 2 - gd.d)
    else:
        value = power * (gd.D * Rat(2) ** (3 * gd.g - 1 - gd.d))
    return MinimalInvariant(2 - 2 * gd.g - e, value)


def segre_count(g: int) -> int:
    """Number of maximal line subbundles of a generic rank-2 bundle with epsilon = 0."""
    if g < 0:
        raise ContractViolation(f"negative genus {g}")
    return 2**g
