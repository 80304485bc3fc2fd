"""Pydantic v2 models for the CLI boundary.

Numerators and denominators travel as decimal strings so no integer width is
assumed by JSON consumers.
"""

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from app.algebra.scalars import Rat, TPoly
from app.algebra.series import QSeries

Subcommand = Literal[
    "pt-series",
    "pt-invariant",
    "contribution",
    "genus0-c",
    "quot-integral",
    "theta-integral",
    "oracle-check",
    "gw-pt-check",
    "minimal",
    "max-subbundles",
    "macmahon",
    "zdt0",
    "series-check",
    "gw-series",
]

# parameters each subcommand needs before anything is computed
REQUIRED_PARAMS: dict[str, tuple[str, ...]] = {
    "pt-series": ("genus", "degree", "chi_max"),
    "pt-invariant": ("genus", "degree", "chi"),
    "contribution": ("genus", "degree", "e", "n"),
    "genus0-c": ("degree", "e", "n"),
    "quot-integral": ("genus", "vdim1", "even_pairs"),
    "theta-integral": ("genus", "k"),
    "oracle-check": ("gmax",),
    "gw-pt-check": ("genus", "degree"),
    "minimal": ("genus", "degree"),
    "max-subbundles": ("genus",),
    "macmahon": ("order",),
    "zdt0": ("genus", "degree", "order"),
    "series-check": ("genus", "degree", "extra_orders"),
    "gw-series": ("genus", "degree", "order"),
}


class Invocation(BaseModel):
    """Validated CLI request."""

    subcommand: Subcommand = Field(..., description="Pipeline to run")
    genus: int | None = Field(default=None, ge=0, description="Genus g of the curve")
    degree: int | None = Field(default=None, description="Degree d of the rank-2 bundle")
    e: int | None = Field(default=None, description="Degree of the rank-1 subsheaf")
    n: int | None = Field(default=None, ge=0, description="Symmetric power of the curve")
    chi: int | None = Field(default=None, description="Holomorphic Euler characteristic")
    chi_max: int | None = Field(default=None, description="Top q-exponent of a series")
    order: int | None = Field(default=None, description="Expansion order")
    gmax: int | None = Field(default=None, ge=0, description="Largest genus of the oracle sweep")
    vdim1: int | None = Field(default=None, description="Expected dimension of the Quot factor")
    even_pairs: int | None = Field(default=None, ge=0, description="Number of b-pairs")
    a_exp: int | None = Field(default=None, description="Power of a (default vdim1 - even_pairs)")
    k: int | None = Field(default=None, ge=0, description="Index k of a^(m-1+k) theta^(g-k)")
    rank: int = Field(default=2, ge=1, description="Rank N of the trivial bundle")
    extra_orders: int | None = Field(default=None, ge=0, description="Orders beyond chi_min")
    format: Literal["text", "json"] = Field(default="text", description="Output format")
    parallel: bool = Field(default=False, description="Fan components out to a thread pool")
    out: str | None = Field(default=None, description="Also write JSON to this file")

    @model_validator(mode="after")
    def _required_present(self) -> "Invocation":
        missing = [p for p in REQUIRED_PARAMS[self.subcommand] if getattr(self, p) is None]
        if missing:
            flags = ", ".join("--" + p.replace("_", "-") for p in missing)
            raise ValueError(f"{self.subcommand} requires {flags}")
        return self

    def params(self) -> dict[str, int]:
        """The integer parameters this subcommand consumed."""
        return {p: getattr(self, p) for p in REQUIRED_PARAMS[self.subcommand]}


# ---------------------------------------------------------------------------
# Output payloads
# ---------------------------------------------------------------------------


class TTerm(BaseModel):
    exp: int
    num: str
    den: str


class TPolyPayload(BaseModel):
    t_terms: list[TTerm] = Field(default_factory=list)

    @classmethod
    def from_tpoly(cls, p: TPoly) -> "TPolyPayload":
        return cls.model_validate(p.to_json())

    def to_tpoly(self) -> TPoly:
        out = TPoly.zero()
        for term in self.t_terms:
            out = out + TPoly.monomial(Rat(int(term.num), int(term.den)), term.exp)
        return out


class SeriesTerm(BaseModel):
    q: int = Field(..., description="Exponent of the series variable")
    t_terms: list[TTerm] = Field(default_factory=list)


class SeriesMeta(BaseModel):
    chi_min: int | None = Field(default=None, description="Lowest nonzero exponent allowed")
    order: int = Field(..., description="Series is exact through this exponent")
    variable: str = Field(default="q", description="Series variable")


class SeriesPayload(BaseModel):
    """{"genus","degree","series":[{"q","t_terms"}],"meta":{...}}."""

    genus: int | None = None
    degree: int | None = None
    series: list[SeriesTerm] = Field(default_factory=list)
    meta: SeriesMeta

    @classmethod
    def from_series(
        cls,
        s: QSeries,
        genus: int | None = None,
        degree: int | None = None,
        chi_min: int | None = None,
        variable: str = "q",
    ) -> "SeriesPayload":
        rows = [
            SeriesTerm(q=e, t_terms=TPolyPayload.from_tpoly(c).t_terms)
            for e, c in sorted(s.terms().items())
        ]
        return cls(
            genus=genus,
            degree=degree,
            series=rows,
            meta=SeriesMeta(chi_min=chi_min, order=s.order, variable=variable),
        )


class ValuePayload(BaseModel):
    """A single invariant or intersection number."""

    command: str
    params: dict[str, int] = Field(default_factory=dict)
    value: TPolyPayload
    chi: int | None = Field(default=None, description="Euler characteristic, for minimal")


class CheckPayload(BaseModel):
    """Outcome of a correspondence check with both sides rendered."""

    command: str
    params: dict[str, int] = Field(default_factory=dict)
    passed: bool
    lhs: str
    rhs: str
    mismatches: list[int] = Field(default_factory=list)
    minimal_match: bool | None = None
