"""Brute-force exterior-algebra check of the closed monomial integration rule.

Odd classes b_{f,i} (factor f in {1, 2}, i in 1..2g) are expanded literally;
a monomial is integrated by splitting it into its factor-1 and factor-2
blocks, each of which must be a product of pairs b_i b_{g+i}.

Canonical generator order is factor-major, index-minor, so a sorted monomial is
already split and the Koszul sign of the split is +1; the sign of rewriting a
sorted block into pair form is computed per term.
"""

import math
from bisect import bisect_right
from collections.abc import Iterator, Mapping

import structlog
from pydantic import BaseModel, Field

from app.algebra.cohring import CohClass, CohMono
from app.algebra.scalars import Rat
from app.errors import ContractViolation
from app.intersection.context import QuotContext
from app.intersection.integrals import integrate_Y

logger = structlog.get_logger(__name__)

MAX_ORACLE_GENUS = 4

ExtKey = tuple[tuple[int, ...], int, int]


def generator_index(g: int, factor: int, i: int) -> int:
    """Position of b_{factor,i} in the canonical order."""
    if factor not in (1, 2) or not 1 <= i <= 2 * g:
        raise ContractViolation(f"no generator b_({factor},{i}) in genus {g}")
    return (factor - 1) * 2 * g + (i - 1)


def _sign(inversions: int) -> int:
    return -1 if inversions % 2 else 1


def _inversions(seq: list[int] | tuple[int, ...]) -> int:
    return sum(1 for x in range(len(seq)) for y in range(x + 1, len(seq)) if seq[x] > seq[y])


class ExtClass:
    """Element of the exterior algebra on 4g odd generators, tensored with Q[a1, a2]."""

    __slots__ = ("g", "terms")

    def __init__(self, g: int, terms: Mapping[ExtKey, Rat | int] | None = None) -> None:
        self.g = g
        self.terms: dict[ExtKey, Rat] = {k: Rat(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, g: int) -> "ExtClass":
        return cls(g, {((), 0, 0): 1})

    @classmethod
    def generator(cls, g: int, factor: int, i: int) -> "ExtClass":
        return cls(g, {((generator_index(g, factor, i),), 0, 0): 1})

    def items(self) -> Iterator[tuple[ExtKey, Rat]]:
        return iter(sorted(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ExtClass") -> "ExtClass":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Rat(0)) + c
        return ExtClass(self.g, out)

    def __neg__(self) -> "ExtClass":
        return ExtClass(self.g, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ExtClass") -> "ExtClass":
        return self + (-other)

    def scale(self, c: Rat | int) -> "ExtClass":
        return ExtClass(self.g, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "ExtClass") -> "ExtClass":
        return wedge(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtClass):
            return NotImplemented
        return self.g == other.g and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.g, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        parts = []
        for (gens, e1, e2), c in self.items():
            names = [f"b{1 + x // (2 * self.g)},{1 + x % (2 * self.g)}" for x in gens]
            parts.append(f"{c}*a1^{e1}*a2^{e2}*[{' '.join(names)}]")
        return f"ExtClass(g={self.g}: {' + '.join(parts) or '0'})"


def wedge(x: ExtClass, y: ExtClass) -> ExtClass:
    """Graded-commutative product; repeated odd generators annihilate."""
    if x.g != y.g:
        raise ContractViolation(f"wedge of genus {x.g} and genus {y.g} classes")
    out: dict[ExtKey, Rat] = {}
    for (s1, a1, b1), c1 in x.terms.items():
        set1 = set(s1)
        for (s2, a2, b2), c2 in y.terms.items():
            if set1.intersection(s2):
                continue
            # moving each generator of s2 left past the larger ones of s1
            inv = sum(len(s1) - bisect_right(s1, z) for z in s2)
            key = (tuple(sorted(s1 + s2)), a1 + a2, b1 + b2)
            out[key] = out.get(key, Rat(0)) + _sign(inv) * c1 * c2
    return ExtClass(x.g, out)


def ext_pow(x: ExtClass, r: int) -> ExtClass:
    if r < 0:
        raise ContractViolation("negative power in the exterior algebra")
    out = ExtClass.one(x.g)
    for _ in range(r):
        out = wedge(out, x)
    return out


def a_monomial(g: int, p1: int, p2: int, coef: Rat | int = 1) -> ExtClass:
    """coef * a1^p1 * a2^p2."""
    return ExtClass(g, {((), p1, p2): coef})


def build_theta(factor: int, g: int) -> ExtClass:
    """theta_f = sum_i b_{f,i} b_{f,g+i}."""
    out = ExtClass(g)
    for i in range(1, g + 1):
        out = out + wedge(ExtClass.generator(g, factor, i), ExtClass.generator(g, factor, g + i))
    return out


def build_B(g: int) -> ExtClass:
    """B = sum_i b_{1,i} b_{2,g+i} - b_{1,g+i} b_{2,i}."""
    out = ExtClass(g)
    for i in range(1, g + 1):
        out = out + wedge(ExtClass.generator(g, 1, i), ExtClass.generator(g, 2, g + i))
        out = out - wedge(ExtClass.generator(g, 1, g + i), ExtClass.generator(g, 2, i))
    return out


def _pair_block(block: list[int], g: int) -> tuple[int, int] | None:
    """(sign, pairs) with sorted block = sign * prod_i b_i b_{g+i}, or None for an odd block."""
    members = set(block)
    lows = [i for i in range(g) if i in members]
    if any((g + i in members) != (i in members) for i in range(g)) or len(block) != 2 * len(lows):
        return None
    pair_form = [x for i in lows for x in (i, g + i)]
    return _sign(_inversions(pair_form)), len(lows)


def _split_block(gens: tuple[int, ...], g: int) -> tuple[int, list[int], list[int]]:
    """Koszul sign of moving factor-1 generators in front, and both local blocks."""
    width = 2 * g
    inv = 0
    seen_second = 0
    first: list[int] = []
    second: list[int] = []
    for x in gens:
        if x < width:
            inv += seen_second
            first.append(x)
        else:
            seen_second += 1
            second.append(x - width)
    return _sign(inv), sorted(first), sorted(second)


def oracle_integrate(x: ExtClass, ctx: QuotContext) -> Rat:
    """Integrate over [Quot^e E]^vir x [Sym^n C] by literal pair decomposition."""
    if x.g != ctx.g:
        raise ContractViolation(f"class of genus {x.g} against context of genus {ctx.g}")
    g = ctx.g
    total = Rat(0)
    for (gens, e1, e2), c in x.terms.items():
        koszul, first, second = _split_block(gens, g)
        quot = _pair_block(first, g)
        sym = _pair_block(second, g)
        if quot is None or sym is None:
            continue
        (sign1, s1), (sign2, s2) = quot, sym
        if e1 != ctx.vdim1 - s1 or e2 != ctx.n - s2 or e1 < 0 or e2 < 0:
            continue
        total += c * koszul * sign1 * sign2 * ctx.N ** (g - s1)
    return total


def even_pair_coefficients(x: ExtClass) -> dict[tuple[tuple[int, ...], tuple[int, ...]], Rat]:
    """Coefficients of x on pair-form monomials (prod pairs of factor 1)(prod pairs of factor 2).

    Keys are the 0-based pair index sets of the two blocks; terms with an odd
    block are dropped.
    """
    g = x.g
    out: dict[tuple[tuple[int, ...], tuple[int, ...]], Rat] = {}
    for (gens, _, _), c in x.terms.items():
        koszul, first, second = _split_block(gens, g)
        quot = _pair_block(first, g)
        sym = _pair_block(second, g)
        if quot is None or sym is None:
            continue
        key = (tuple(i for i in first if i < g), tuple(i for i in second if i < g))
        out[key] = out.get(key, Rat(0)) + c * koszul * quot[0] * sym[0]
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# Sweep against the closed rule
# ---------------------------------------------------------------------------


class OracleRow(BaseModel):
    """One (g, j, k, B-power) comparison."""

    g: int = Field(..., description="Genus")
    j: int = Field(..., description="Power of theta1")
    k: int = Field(..., description="Power of theta2")
    b_power: int = Field(..., description="Power of B")
    oracle: str = Field(..., description="Exterior-algebra value")
    closed_form: str = Field(..., description="Closed monomial rule value")
    match: bool = Field(..., description="Exact equality")


class OracleReport(BaseModel):
    """Pass/fail matrix of the oracle sweep."""

    gmax: int = Field(..., description="Largest genus swept")
    rows: list[OracleRow] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.match for r in self.rows)


def _compare(
    g: int,
    j: int,
    k: int,
    b_power: int,
    thetas: tuple[list[ExtClass], ...],
    b_powers: list[ExtClass],
) -> OracleRow:
    lh = b_power // 2
    # a1 and a2 both appear to the first power so the a-rules are exercised too
    if b_power % 2:
        ctx = QuotContext.with_vdim1(g, vdim1=j + lh + 1, n=k + lh)
        mono = CohMono(p1=0, p2=0, j=j, k=k, l=b_power)
    else:
        ctx = QuotContext.with_vdim1(g, vdim1=j + lh + 1, n=k + lh + 1)
        mono = CohMono(p1=1, p2=1, j=j, k=k, l=b_power)
    ext = a_monomial(g, mono.p1, mono.p2)
    for factor in (thetas[0][j], thetas[1][k], b_powers[b_power]):
        ext = wedge(ext, factor)
    oracle = oracle_integrate(ext, ctx)
    closed = integrate_Y(CohClass.monomial(ctx.ring(pruned=False), mono), ctx).as_rat()
    if oracle != closed:
        logger.warning(
            "oracle.row_mismatch",
            g=g, j=j, k=k, b_power=b_power, oracle=str(oracle), closed=str(closed),
        )
    return OracleRow(
        g=g,
        j=j,
        k=k,
        b_power=b_power,
        oracle=str(oracle),
        closed_form=str(closed),
        match=oracle == closed,
    )


def validate_mainformula(gmax: int) -> OracleReport:
    """Compare the oracle with the closed rule for every g <= gmax and admissible (j, k, l)."""
    if not 0 <= gmax <= MAX_ORACLE_GENUS:
        raise ContractViolation(f"gmax={gmax} outside [0, {MAX_ORACLE_GENUS}]")
    report = OracleReport(gmax=gmax)
    for g in range(gmax + 1):
        thetas = tuple(
            [ext_pow(build_theta(f, g), r) for r in range(g + 1)] for f in (1, 2)
        )
        b = build_B(g)
        b_powers = [ExtClass.one(g)]
        for _ in range(2 * g):
            b_powers.append(wedge(b_powers[-1], b))
        for b_power in range(2 * g + 1):
            lh = b_power // 2
            for j in range(g - lh + 1):
                for k in range(g - lh + 1):
                    report.rows.append(_compare(g, j, k, b_power, thetas, b_powers))
        logger.debug("oracle.genus_done", g=g, rows=len(report.rows))
    return report
