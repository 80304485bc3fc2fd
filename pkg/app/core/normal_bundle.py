"""Virtual normal bundle of a fixed component Quot^e E x Sym^n C.

Each term of N^vir is p_! of a line bundle on Y x C, possibly tensored with
the rank-2 bundle E (torus weight 1). Line bundles are tracked by their Chern
data only: c1 = x1*a1 + x2*a2 + w*t + (odd part u1*gamma1 + u2*gamma2) + delta*eta,
where gamma_f = sum_i b_{f,i} delta_i squares to -2*theta_f*eta and
gamma1*gamma2 = -B*eta.
"""

from dataclasses import dataclass
from enum import Enum

from app.algebra.cohring import CohClass, RingContext, coh_exp, coh_mul, coh_pow
from app.errors import ZeroWeightError

E_WEIGHT = 1
E_RANK = 2


@dataclass(frozen=True)
class LineClass:
    """Chern data of an equivariant line bundle on Y x C."""

    x1: int = 0
    x2: int = 0
    w: int = 0
    u1: int = 0
    u2: int = 0
    delta: int = 0

    def __mul__(self, other: "LineClass") -> "LineClass":
        return LineClass(
            self.x1 + other.x1,
            self.x2 + other.x2,
            self.w + other.w,
            self.u1 + other.u1,
            self.u2 + other.u2,
            self.delta + other.delta,
        )

    def dual(self) -> "LineClass":
        return LineClass(-self.x1, -self.x2, -self.w, -self.u1, -self.u2, -self.delta)


TRIVIAL = LineClass()


def s_dual(e: int) -> LineClass:
    """S^v: ch = e^{a1-t}(1 - sum b_{1,i} delta_i - e*eta - theta1*eta)."""
    return LineClass(x1=1, w=-1, u1=-1, delta=-e)


def divisor_bundle(n: int) -> LineClass:
    """D = O(Delta): ch = e^{a2}(1 - sum b_{2,i} delta_i + n*eta - theta2*eta)."""
    return LineClass(x2=1, u2=-1, delta=n)


def det_e(d: int) -> LineClass:
    """Determinant of E: weight 2, fiber degree d."""
    return LineClass(w=2 * E_WEIGHT, delta=d)


class Side(str, Enum):
    """Positive terms sit in N^vir (denominator), negative ones in its inverse (numerator)."""

    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class PushTerm:
    """One summand of N^vir: multiplicity * p_!(line [x E])."""

    label: str
    line: LineClass
    side: Side
    with_e: bool = False
    multiplicity: int = 1
    e_degree: int = 0

    @property
    def total_weight(self) -> int:
        return self.line.w + (E_WEIGHT if self.with_e else 0)

    @property
    def sign(self) -> int:
        return 1 if self.side is Side.POSITIVE else -1


def normal_bundle_terms(d: int, e: int, n: int) -> list[PushTerm]:
    """The ten terms of N^vir for Y = Quot^e E x Sym^n C, positive ones first."""
    sv, dd, det = s_dual(e), divisor_bundle(n), det_e(d)
    s, dv = sv.dual(), dd.dual()
    pos, neg = Side.POSITIVE, Side.NEGATIVE
    terms = [
        PushTerm("S^v D", sv * dd, pos),
        PushTerm("D^v det E", dv * det, pos),
        PushTerm("D^v S det E", dv * s * det, pos),
        PushTerm("2 E", TRIVIAL, pos, with_e=True, multiplicity=2, e_degree=d),
        PushTerm("S E", s, pos, with_e=True, e_degree=d),
        PushTerm("S^v", sv, neg),
        PushTerm("2 det E", det, neg, multiplicity=2),
        PushTerm("S det E", s * det, neg),
        PushTerm("S", s, neg),
        PushTerm("S^v det E", sv * det, neg),
    ]
    for term in terms:
        if term.total_weight == 0:
            raise ZeroWeightError(term.label)
    return terms


def euler_class_power(term: PushTerm, g: int, ring: RingContext, power: int) -> CohClass:
    """e_T(p_! term)^power (the term's multiplicity is applied on top).

    p_! of a line with c1 = c + gamma + delta*eta has Chern character
    e^c (chi - Theta), so its Euler class is c^chi exp(-Theta/c); tensoring
    with E doubles chi and Theta and adds deg E to chi.
    """
    if term.total_weight == 0:
        raise ZeroWeightError(term.label)
    line = term.line
    rho = E_RANK if term.with_e else 1
    chi = rho * (1 - g + line.delta) + (term.e_degree if term.with_e else 0)
    c = CohClass.linear(ring, line.x1, line.x2, term.total_weight)
    theta = (
        CohClass.generator(ring, "theta1", line.u1 * line.u1)
        + CohClass.generator(ring, "theta2", line.u2 * line.u2)
        + CohClass.generator(ring, "B", line.u1 * line.u2)
    )
    p = power * term.multiplicity
    if p == 0:
        return CohClass.one(ring)
    base = coh_pow(c, chi * p)
    if theta.is_zero():
        return base
    return coh_mul(base, coh_exp(coh_mul(theta, coh_pow(c, -1)).scale(-rho * p)))


def euler_pushforward(term: PushTerm, g: int, ring: RingContext) -> CohClass:
    """e_T(p_! term) including multiplicity."""
    return euler_class_power(term, g, ring, 1)


# every term weight is independent of (d, e, n)
normal_bundle_terms(0, 0, 0)
