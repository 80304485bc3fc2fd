"""Truncated ring Q[t, 1/t][a1, a2, theta1, theta2, B] of localization integrands.

All generators have complex degree one and commute. theta_i vanishes above
power g and B above power 2g; monomials above the context's maxdeg are
dropped after every operation, so only the top degree needed for integration
is ever carried.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from typing import NamedTuple

from app.algebra.scalars import Rat, Scalar, TPoly, binomial
from app.errors import ContextMismatchError, NonNilpotentError, NotInvertibleError


class CohMono(NamedTuple):
    """Exponents of a1, a2, theta1, theta2, B."""

    p1: int = 0
    p2: int = 0
    j: int = 0
    k: int = 0
    l: int = 0

    @property
    def deg(self) -> int:
        return self.p1 + self.p2 + self.j + self.k + self.l

    def times(self, other: "CohMono") -> "CohMono":
        return CohMono(
            self.p1 + other.p1,
            self.p2 + other.p2,
            self.j + other.j,
            self.k + other.k,
            self.l + other.l,
        )


ONE = CohMono()

GENERATORS: dict[str, CohMono] = {
    "a1": CohMono(p1=1),
    "a2": CohMono(p2=1),
    "theta1": CohMono(j=1),
    "theta2": CohMono(k=1),
    "B": CohMono(l=1),
}


@dataclass(frozen=True)
class RingContext:
    """Genus, truncation degree and optional per-factor budgets (vdim1, n).

    With budgets set, monomials with p1 + j + l/2 > vdim1 or p2 + k + l/2 > n
    are dropped too: no further multiplication can bring them back to an
    integrable monomial.
    """

    g: int
    maxdeg: int
    budgets: tuple[int, int] | None = None

    def admits(self, m: CohMono) -> bool:
        g = self.g
        if m.j > g or m.k > g or m.l > 2 * g:
            return False
        if m.p1 + m.p2 + m.j + m.k + m.l > self.maxdeg:
            return False
        if self.budgets is not None:
            b1, b2 = self.budgets
            if 2 * (m.p1 + m.j) + m.l > 2 * b1 or 2 * (m.p2 + m.k) + m.l > 2 * b2:
                return False
        return True


class CohClass:
    """Sparse element of the truncated ring: CohMono -> nonzero TPoly."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: RingContext, terms: Mapping[CohMono, TPoly] | None = None) -> None:
        self.ctx = ctx
        self.terms: dict[CohMono, TPoly] = {}
        for m, c in (terms or {}).items():
            mono = CohMono(*m)
            if not c.is_zero() and ctx.admits(mono):
                self.terms[mono] = c

    @classmethod
    def _wrap(cls, ctx: RingContext, terms: dict[CohMono, TPoly]) -> "CohClass":
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        return obj

    # ---------------------------------------------------------------------------
    # Constructors
    # ---------------------------------------------------------------------------

    @classmethod
    def zero(cls, ctx: RingContext) -> "CohClass":
        return cls._wrap(ctx, {})

    @classmethod
    def scalar(cls, ctx: RingContext, c: "TPoly | Scalar") -> "CohClass":
        c = c if isinstance(c, TPoly) else TPoly.const(c)
        return cls(ctx, {ONE: c})

    @classmethod
    def one(cls, ctx: RingContext) -> "CohClass":
        return cls.scalar(ctx, 1)

    @classmethod
    def generator(cls, ctx: RingContext, name: str, coef: "TPoly | Scalar" = 1) -> "CohClass":
        c = coef if isinstance(coef, TPoly) else TPoly.const(coef)
        return cls(ctx, {GENERATORS[name]: c})

    @classmethod
    def monomial(cls, ctx: RingContext, mono: CohMono, coef: "TPoly | Scalar" = 1) -> "CohClass":
        c = coef if isinstance(coef, TPoly) else TPoly.const(coef)
        return cls(ctx, {mono: c})

    @classmethod
    def linear(cls, ctx: RingContext, x1: int, x2: int, w: int) -> "CohClass":
        """x1*a1 + x2*a2 + w*t."""
        terms: dict[CohMono, TPoly] = {}
        if w:
            terms[ONE] = TPoly.monomial(w, 1)
        if x1:
            terms[GENERATORS["a1"]] = TPoly.const(x1)
        if x2:
            terms[GENERATORS["a2"]] = TPoly.const(x2)
        return cls(ctx, terms)

    # ---------------------------------------------------------------------------
    # Inspection
    # ---------------------------------------------------------------------------

    def coefficient(self, mono: CohMono) -> TPoly:
        return self.terms.get(CohMono(*mono), TPoly.zero())

    def constant_part(self) -> TPoly:
        """Generator-free coefficient."""
        return self.terms.get(ONE, TPoly.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> int | None:
        """The common value of (t-exponent + complex degree) over all terms, if there is one."""
        value: int | None = None
        for m, c in self.terms.items():
            for k in c.exponents():
                w = k + m.deg
                if value is None:
                    value = w
                elif w != value:
                    return None
        return value

    def _check(self, other: "CohClass") -> None:
        if self.ctx.g != other.ctx.g or self.ctx.maxdeg != other.ctx.maxdeg:
            raise ContextMismatchError(f"ring contexts differ: {self.ctx} vs {other.ctx}")

    # ---------------------------------------------------------------------------
    # Arithmetic
    # ---------------------------------------------------------------------------

    def __add__(self, other: "CohClass") -> "CohClass":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return CohClass._wrap(self.ctx, out)

    def __neg__(self) -> "CohClass":
        return CohClass._wrap(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-other)

    def scale(self, c: "TPoly | Scalar") -> "CohClass":
        if isinstance(c, TPoly):
            if c.is_zero():
                return CohClass.zero(self.ctx)
            return CohClass._wrap(self.ctx, {m: x * c for m, x in self.terms.items()})
        if not c:
            return CohClass.zero(self.ctx)
        return CohClass._wrap(self.ctx, {m: x * c for m, x in self.terms.items()})

    def __mul__(self, other: "CohClass | TPoly | Scalar") -> "CohClass":
        if isinstance(other, CohClass):
            return coh_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other: "CohClass") -> "CohClass":
        return coh_mul(self, coh_pow(other, -1))

    def __pow__(self, r: int) -> "CohClass":
        return coh_pow(self, r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.ctx.g == other.ctx.g and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ctx.g, frozenset(self.terms.items())))

    def render(self) -> str:
        """Debug form: sorted monomial list."""
        if not self.terms:
            return "0"
        names = ("a1", "a2", "theta1", "theta2", "B")
        parts = []
        for m in sorted(self.terms):
            gens = "*".join(f"{n}^{e}" for n, e in zip(names, m) if e)
            parts.append(f"({self.terms[m].render()})" + (f"*{gens}" if gens else ""))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"CohClass(g={self.ctx.g}, maxdeg={self.ctx.maxdeg}: {self.render()})"


def coh_mul(x: CohClass, y: CohClass) -> CohClass:
    """Exact product with degree and nilpotency pruning."""
    x._check(y)
    ctx = x.ctx
    admits = ctx.admits
    out: dict[CohMono, TPoly] = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            m = CohMono(m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3], m1[4] + m2[4])
            if not admits(m):
                continue
            c = c1 * c2
            prev = out.get(m)
            out[m] = c if prev is None else prev + c
    return CohClass._wrap(ctx, {m: c for m, c in out.items() if not c.is_zero()})


def _split_unit(x: CohClass) -> tuple[TPoly, CohClass] | None:
    """x = u * (1 + y) with u a t-monomial and y nilpotent, or None."""
    u = x.constant_part()
    if not u.is_monomial():
        return None
    u_inv = u.pow(-1)
    y = CohClass._wrap(x.ctx, {m: c * u_inv for m, c in x.terms.items() if m != ONE})
    return u, y


def coh_pow(x: CohClass, r: int) -> CohClass:
    """x^r; negative r requires the generator-free part of x to be a t-monomial."""
    split = _split_unit(x)
    if split is None:
        if r < 0:
            raise NotInvertibleError(x.render())
        result = CohClass.one(x.ctx)
        base = x
        while r:
            if r & 1:
                result = coh_mul(result, base)
            base = coh_mul(base, base)
            r >>= 1
        return result
    u, y = split
    # (1 + y)^r = sum_m binomial(r, m) y^m, finite because y is nilpotent
    total = CohClass.one(x.ctx)
    power = CohClass.one(x.ctx)
    m = 0
    while True:
        m += 1
        power = coh_mul(power, y)
        if power.is_zero():
            break
        b = binomial(r, m)
        if b:
            total = total + power.scale(b)
    return total.scale(u.pow(r))


def coh_exp(x: CohClass) -> CohClass:
    """sum_m x^m / m! for nilpotent x."""
    if not x.constant_part().is_zero():
        raise NonNilpotentError(x.constant_part().render())
    total = CohClass.one(x.ctx)
    term = CohClass.one(x.ctx)
    m = 0
    while True:
        m += 1
        term = coh_mul(term, x).scale(Rat(1, m))
        if term.is_zero():
            break
        total = total + term
    return total
