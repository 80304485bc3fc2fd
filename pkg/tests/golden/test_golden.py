"""Golden-value suites stored as YAML next to this file.

Each suite is validated with a pydantic model before any value is checked, so a
malformed suite fails loudly instead of silently skipping cases.
"""

from fractions import Fraction
from pathlib import Path

import pytest
import yaml
from pydantic import BaseModel

from app.algebra.scalars import TPoly
from app.core.geometry import GeomData
from app.core.localization import (
    FixedComponent,
    component_contribution,
    pt_invariant,
    pt_series,
)
from app.core.partitions import minimal_invariant

GOLDEN_DIR = Path(__file__).parent


class ComponentCase(BaseModel):
    e: int
    n: int
    value: int


class InvariantCase(BaseModel):
    chi: int
    value: int


class SeriesCase(BaseModel):
    chi_max: int
    text: str


class LocalSuite(BaseModel):
    name: str
    genus: int
    degree: int
    components: list[ComponentCase]
    invariants: list[InvariantCase]
    series: SeriesCase


class MinimalCase(BaseModel):
    genus: int
    degree: int
    chi_min: int
    coef: str


class MinimalSuite(BaseModel):
    name: str
    cases: list[MinimalCase]


def _load(name: str) -> dict:
    with open(GOLDEN_DIR / name, encoding="utf-8") as f:
        return yaml.safe_load(f)


LOCAL = LocalSuite.model_validate(_load("local_p1.yaml"))
MINIMAL = MinimalSuite.model_validate(_load("minimal_chi.yaml"))


def _geom() -> GeomData:
    return GeomData(LOCAL.genus, LOCAL.degree)


@pytest.mark.parametrize("case", LOCAL.components, ids=lambda c: f"e{c.e}_n{c.n}")
def test_component(case: ComponentCase) -> None:
    """Each stored component contribution of local P^1."""
    gd = _geom()
    assert component_contribution(gd, FixedComponent(gd, case.e, case.n)) == case.value


@pytest.mark.parametrize("case", LOCAL.invariants, ids=lambda c: f"chi{c.chi}")
def test_invariant(case: InvariantCase) -> None:
    """Each stored P_chi of local P^1."""
    assert pt_invariant(_geom(), case.chi) == case.value


def test_series_text() -> None:
    """Text rendering of the stored local P^1 series."""
    assert pt_series(_geom(), LOCAL.series.chi_max).render() == LOCAL.series.text


@pytest.mark.parametrize("case", MINIMAL.cases, ids=lambda c: f"g{c.genus}_d{c.degree}")
def test_minimal_chi_localized(case: MinimalCase) -> None:
    """Localization at chi_min reproduces the stored value."""
    gd = GeomData(case.genus, case.degree)
    expected = TPoly.monomial(Fraction(case.coef), gd.t_exponent)
    assert gd.chi_min == case.chi_min
    assert pt_invariant(gd, case.chi_min) == expected


@pytest.mark.parametrize("case", MINIMAL.cases, ids=lambda c: f"g{c.genus}_d{c.degree}")
def test_minimal_chi_closed(case: MinimalCase) -> None:
    """The closed minimal formula reproduces the stored value."""
    chi_min, value = minimal_invariant(GeomData(case.genus, case.degree))
    assert chi_min == case.chi_min
    assert value == TPoly.monomial(Fraction(case.coef), 4 * case.genus - 4 - 2 * case.degree)
