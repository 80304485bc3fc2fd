"""Stable-pairs residue invariants in class 2[C] by torus localization.

The fixed locus of P_chi(E, 2) is the disjoint union of Quot^e E x Sym^n C over
2n - e = m, chi = 2 - 2g + m; components whose Quot factor has negative
expected dimension carry no virtual class and are skipped.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import structlog

from app.algebra.cohring import CohClass, CohMono, RingContext, coh_mul, coh_pow
from app.algebra.scalars import TPoly
from app.algebra.series import QSeries, qratfun_expand
from app.core.geometry import GeomData
from app.core.normal_bundle import Side, euler_class_power, normal_bundle_terms
from app.core.partitions import zpt_closed
from app.errors import ContractViolation, NegativeDimensionError
from app.intersection.context import QuotContext
from app.intersection.integrals import integrate_Y

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class FixedComponent:
    """Quot^e E x Sym^n C inside P_chi(E, 2)."""

    geom: GeomData
    e: int
    n: int

    @property
    def m(self) -> int:
        return 2 * self.n - self.e

    @property
    def chi(self) -> int:
        return 2 - 2 * self.geom.g + self.m

    @property
    def context(self) -> QuotContext:
        return QuotContext(g=self.geom.g, N=2, d=self.geom.d, e=self.e, n=self.n)

    @property
    def vdim1(self) -> int:
        return self.context.vdim1

    @property
    def vdim(self) -> int:
        return self.context.vdim


def fixed_components(gd: GeomData, m: int) -> list[FixedComponent]:
    """All (e, n) with 2n - e = m, n >= 0 and nonnegative Quot expected dimension, by n."""
    out: list[FixedComponent] = []
    n = 0
    while True:
        comp = FixedComponent(gd, e=2 * n - m, n=n)
        # vdim1 decreases by 4 with every step in n
        if comp.vdim1 < 0:
            break
        out.append(comp)
        n += 1
    return out


def etnvir(gd: GeomData, comp: FixedComponent) -> CohClass:
    """e_T(-N^vir): negative terms over positive terms, truncated at comp.vdim."""
    ring = comp.context.ring()
    result = CohClass.one(ring)
    for term in normal_bundle_terms(gd.d, comp.e, comp.n):
        power = -1 if term.side is Side.POSITIVE else 1
        result = coh_mul(result, euler_class_power(term, gd.g, ring, power))
    return result


def component_contribution(gd: GeomData, comp: FixedComponent) -> TPoly:
    """Integral of e_T(-N^vir) over [Quot^e E]^vir x [Sym^n C]."""
    if comp.vdim1 < 0:
        raise NegativeDimensionError(comp.vdim1)
    value = integrate_Y(etnvir(gd, comp), comp.context)
    logger.debug(
        "localization.component", g=gd.g, d=gd.d, e=comp.e, n=comp.n, value=value.render()
    )
    return value


def _sum(values: list[TPoly]) -> TPoly:
    total = TPoly.zero()
    for v in values:
        total = total + v
    return total


def _contributions(
    gd: GeomData, comps: list[FixedComponent], parallel: bool, max_workers: int
) -> list[TPoly]:
    if parallel and len(comps) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(lambda c: component_contribution(gd, c), comps))
    return [component_contribution(gd, c) for c in comps]


def pt_invariant(gd: GeomData, chi: int, parallel: bool = False, max_workers: int = 4) -> TPoly:
    """P_{chi,2}(d): sum of the contributions of all fixed components."""
    comps = fixed_components(gd, chi - 2 + 2 * gd.g)
    return _sum(_contributions(gd, comps, parallel, max_workers))


def pt_series(
    gd: GeomData, chi_max: int, parallel: bool = False, max_workers: int = 4
) -> QSeries:
    """sum_{chi <= chi_max} P_{chi,2}(d) q^chi, exact through q^chi_max."""
    chi_min = gd.chi_min
    comps = [
        c for chi in range(chi_min, chi_max + 1) for c in fixed_components(gd, chi - 2 + 2 * gd.g)
    ]
    values = _contributions(gd, comps, parallel, max_workers)
    terms: dict[int, TPoly] = {}
    for comp, value in zip(comps, values):
        terms[comp.chi] = terms.get(comp.chi, TPoly.zero()) + value
    logger.info("localization.series", g=gd.g, d=gd.d, chi_max=chi_max, components=len(comps))
    return QSeries.from_terms(terms, chi_max, min_exp=min(chi_min, chi_max + 1))


def genus0_C(d: int, e: int, n: int) -> TPoly:
    """Coefficient of a1^(1+d-2e) a2^n in the genus-0 integrand, written out factor by factor."""
    vdim1 = 1 + d - 2 * e
    if vdim1 < 0 or n < 0:
        raise ContractViolation(f"genus0_C needs 1+d-2e >= 0 and n >= 0 (d={d}, e={e}, n={n})")
    ring = RingContext(g=0, maxdeg=vdim1 + n, budgets=(vdim1, n))

    def lin(x1: int, x2: int, w: int) -> CohClass:
        return CohClass.linear(ring, x1, x2, w)

    numerator = [
        (lin(1, 0, -1), 1 - e),
        (lin(0, 0, 2), 2 * d + 2),
        (lin(-1, 0, 3), d + e + 1),
        (lin(-1, 0, 1), e + 1),
        (lin(1, 0, 1), 1 + d - e),
    ]
    denominator = [
        (lin(1, 1, -1), 1 + n - e),
        (lin(0, -1, 2), 1 + d - n),
        (lin(-1, -1, 3), 1 + d + e - n),
        (lin(0, 0, 1), 2 * d + 4),
        (lin(-1, 0, 2), d + 2 * e + 2),
    ]
    result = CohClass.one(ring)
    for base, r in numerator:
        result = coh_mul(result, coh_pow(base, r))
    for base, r in denominator:
        result = coh_mul(result, coh_pow(base, -r))
    return result.coefficient(CohMono(p1=vdim1, p2=n))


# ---------------------------------------------------------------------------
# Closed-form comparison
# ---------------------------------------------------------------------------


@dataclass
class SeriesComparison:
    """Localized series against the expansion of the closed form."""

    geom: GeomData
    order: int
    localized: QSeries
    closed: QSeries
    mismatches: list[int] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return not self.mismatches

    @property
    def minimal_match(self) -> bool:
        return self.geom.chi_min not in self.mismatches


def series_cross_check(
    gd: GeomData, extra_orders: int, parallel: bool = False, max_workers: int = 4
) -> SeriesComparison:
    """Compare pt_series with zpt_closed through q^(chi_min + extra_orders).

    A mismatch above minimal chi for g >= 1 is reported, not treated as an error.
    """
    order = gd.chi_min + extra_orders
    localized = pt_series(gd, order, parallel=parallel, max_workers=max_workers)
    closed = qratfun_expand(zpt_closed(gd), order)
    low = min(localized.min_exp, closed.min_exp)
    mismatches = [
        k for k in range(low, order + 1) if localized.coefficient(k) != closed.coefficient(k)
    ]
    if mismatches:
        logger.warning(
            "localization.closed_form_mismatch", g=gd.g, d=gd.d, exponents=mismatches
        )
    return SeriesComparison(gd, order, localized, closed, mismatches)
