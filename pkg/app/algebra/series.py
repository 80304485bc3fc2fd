"""Truncated q-series and exact q-rational functions with TPoly coefficients."""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import sympy

from app.algebra.scalars import Rat, Scalar, TPoly
from app.errors import ContractViolation, NotInvertibleError, TruncationError

_Q = sympy.Symbol("q")


def _as_tpoly(c: "TPoly | Scalar") -> TPoly:
    return c if isinstance(c, TPoly) else TPoly.const(c)


def render_terms(terms: Mapping[int, TPoly], var: str = "q") -> str:
    """Text form "c_m*q^m + ..." by exponent; multi-term t-coefficients are bracketed."""
    parts: list[str] = []
    for e in sorted(terms):
        c = terms[e]
        if c.is_zero():
            continue
        negative = False
        if c.is_monomial():
            ((_, r),) = c.items()
            negative = r < 0
            body = (-c if negative else c).render()
        else:
            body = f"({c.render()})"
        if e != 0:
            body = f"{body}*{var}^{e}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# QSeries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QSeries:
    """Laurent series sum_{k >= min_exp} coeffs[k - min_exp] q^k, exact through q^order.

    Nothing is known about exponents above order.
    """

    min_exp: int
    coeffs: tuple[TPoly, ...]
    order: int

    def __post_init__(self) -> None:
        expected = max(0, self.order - self.min_exp + 1)
        if len(self.coeffs) != expected:
            raise ContractViolation(
                f"QSeries: {len(self.coeffs)} coefficients for min_exp={self.min_exp}, "
                f"order={self.order}"
            )

    @classmethod
    def from_terms(
        cls, terms: Mapping[int, "TPoly | Scalar"], order: int, min_exp: int | None = None
    ) -> "QSeries":
        """Build from an exponent map; exponents above order are dropped."""
        clean = {e: _as_tpoly(c) for e, c in terms.items() if e <= order}
        clean = {e: c for e, c in clean.items() if not c.is_zero()}
        if min_exp is None:
            min_exp = min(clean) if clean else order + 1
        if clean and min(clean) < min_exp:
            raise ContractViolation(f"QSeries: term below min_exp={min_exp}")
        coeffs = tuple(clean.get(e, TPoly.zero()) for e in range(min_exp, order + 1))
        return cls(min_exp, coeffs, order)

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls(order + 1, (), order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.from_terms({0: TPoly.one()}, order, min_exp=min(0, order + 1))

    # ---------------------------------------------------------------------------
    # Inspection
    # ---------------------------------------------------------------------------

    def coefficient(self, k: int) -> TPoly:
        if k > self.order:
            raise TruncationError(f"q^{k} requested beyond order {self.order}")
        if k < self.min_exp:
            return TPoly.zero()
        return self.coeffs[k - self.min_exp]

    def terms(self) -> dict[int, TPoly]:
        """Nonzero coefficients by exponent."""
        return {
            self.min_exp + i: c for i, c in enumerate(self.coeffs) if not c.is_zero()
        }

    def valuation(self) -> int | None:
        """Lowest exponent with nonzero coefficient."""
        t = self.terms()
        return min(t) if t else None

    def normalized(self) -> "QSeries":
        """Same series with leading zero coefficients stripped."""
        v = self.valuation()
        if v is None:
            return QSeries.zero(self.order)
        return QSeries(v, self.coeffs[v - self.min_exp :], self.order)

    # ---------------------------------------------------------------------------
    # Arithmetic
    # ---------------------------------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        order = min(self.order, other.order)
        out: dict[int, TPoly] = {}
        for src in (self.terms(), other.terms()):
            for e, c in src.items():
                if e <= order:
                    out[e] = out.get(e, TPoly.zero()) + c
        return QSeries.from_terms(out, order, min_exp=min(self.min_exp, other.min_exp, order + 1))

    def __neg__(self) -> "QSeries":
        return QSeries(self.min_exp, tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, c: "TPoly | Scalar") -> "QSeries":
        c = _as_tpoly(c)
        return QSeries(self.min_exp, tuple(x * c for x in self.coeffs), self.order)

    def __mul__(self, other: "QSeries") -> "QSeries":
        # a = q^ma(...) known through oa, b = q^mb(...) known through ob
        order = min(self.order + other.min_exp, other.order + self.min_exp)
        a, b = self.terms(), other.terms()
        out: dict[int, TPoly] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                if e <= order:
                    out[e] = out.get(e, TPoly.zero()) + ca * cb
        return QSeries.from_terms(
            out, order, min_exp=min(self.min_exp + other.min_exp, order + 1)
        )

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k."""
        return QSeries(self.min_exp + k, self.coeffs, self.order + k)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return QSeries.from_terms(self.terms(), order, min_exp=min(self.min_exp, order + 1))

    def substitute_sign(self) -> "QSeries":
        """q -> -q."""
        return QSeries(
            self.min_exp,
            tuple(c if (self.min_exp + i) % 2 == 0 else -c for i, c in enumerate(self.coeffs)),
            self.order,
        )

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; the leading coefficient must be a t-monomial."""
        s = self.normalized()
        if not s.coeffs:
            raise NotInvertibleError("zero series")
        lead = s.coeffs[0]
        if not lead.is_monomial():
            raise NotInvertibleError(f"leading coefficient {lead.render()}")
        inv_lead = lead.pow(-1)
        m = s.min_exp
        length = s.order - m + 1
        out: list[TPoly] = [inv_lead]
        for k in range(1, length):
            acc = TPoly.zero()
            for i in range(1, k + 1):
                c = s.coeffs[i]
                if not c.is_zero():
                    acc = acc + c * out[k - i]
            out.append(-(acc * inv_lead))
        return QSeries(-m, tuple(out), -m + length - 1)

    def pow(self, r: int) -> "QSeries":
        if r < 0:
            return self.inverse().pow(-r)
        s = self.normalized()
        if r == 0:
            rel = s.order - s.min_exp if s.coeffs else s.order
            return QSeries.one(rel)
        result = s
        for _ in range(r - 1):
            result = result * s
        return result

    # ---------------------------------------------------------------------------
    # Equality / rendering
    # ---------------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.terms() == other.terms()

    def __hash__(self) -> int:
        return hash((self.order, frozenset(self.terms().items())))

    def render(self, var: str = "q") -> str:
        return render_terms(self.terms(), var)

    def __str__(self) -> str:
        return self.render()


# ---------------------------------------------------------------------------
# Rat polynomial helpers (coefficient lists, lowest degree first)
# ---------------------------------------------------------------------------


def _poly_trim(p: list[Rat]) -> list[Rat]:
    while len(p) > 1 and not p[-1]:
        p = p[:-1]
    return p


def _poly_mul(a: list[Rat], b: list[Rat]) -> list[Rat]:
    out = [Rat(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_pow(a: list[Rat], r: int) -> list[Rat]:
    out = [Rat(1)]
    for _ in range(r):
        out = _poly_mul(out, a)
    return out


def _to_sympy(p: list[Rat]) -> sympy.Poly:
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], _Q, domain=sympy.QQ
    )


def _from_sympy(p: sympy.Poly) -> list[Rat]:
    return _poly_trim([Rat(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())])


def _laurent_mul_poly(num: Mapping[int, TPoly], p: list[Rat]) -> dict[int, TPoly]:
    out: dict[int, TPoly] = {}
    for e, c in num.items():
        for i, r in enumerate(p):
            if r:
                out[e + i] = out.get(e + i, TPoly.zero()) + c * r
    return {e: c for e, c in out.items() if not c.is_zero()}


def _laurent_mul(a: Mapping[int, TPoly], b: Mapping[int, TPoly]) -> dict[int, TPoly]:
    out: dict[int, TPoly] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] = out.get(ea + eb, TPoly.zero()) + ca * cb
    return {e: c for e, c in out.items() if not c.is_zero()}


def _laurent_add(a: Mapping[int, TPoly], b: Mapping[int, TPoly]) -> dict[int, TPoly]:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, TPoly.zero()) + c
    return {e: c for e, c in out.items() if not c.is_zero()}


# ---------------------------------------------------------------------------
# QRatFun
# ---------------------------------------------------------------------------


class QRatFun:
    """num(q) / den(q): num a q-Laurent polynomial with TPoly coefficients, den a Rat
    polynomial with den(0) != 0.

    Stored reduced: den(0) == 1 and gcd(den, num) == 1 over Q[t, 1/t].
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Mapping[int, "TPoly | Scalar"], den: Iterable[Scalar] = (1,)) -> None:
        n = {e: _as_tpoly(c) for e, c in num.items()}
        n = {e: c for e, c in n.items() if not c.is_zero()}
        d = _poly_trim([Rat(c) for c in den]) or [Rat(1)]
        if not d[0]:
            raise ContractViolation("QRatFun denominator must have nonzero constant term")
        self.num, self.den = self._reduce(n, d)

    @staticmethod
    def _reduce(
        num: dict[int, TPoly], den: list[Rat]
    ) -> tuple[dict[int, TPoly], tuple[Rat, ...]]:
        if not num:
            return {}, (Rat(1),)
        if len(den) > 1:
            low = min(num)
            by_t: dict[int, list[Rat]] = {}
            span = max(num) - low + 1
            for e, c in num.items():
                for k, r in c.items():
                    by_t.setdefault(k, [Rat(0)] * span)[e - low] = r
            g = _to_sympy(den)
            for p in by_t.values():
                g = g.gcd(_to_sympy(_poly_trim(p)))
                if g.degree() == 0:
                    break
            if g.degree() > 0:
                den = _from_sympy(_to_sympy(den).exquo(g))
                new_num: dict[int, TPoly] = {}
                for k, p in by_t.items():
                    for i, r in enumerate(_from_sympy(_to_sympy(_poly_trim(p)).exquo(g))):
                        if r:
                            prev = new_num.get(low + i, TPoly.zero())
                            new_num[low + i] = prev + TPoly.monomial(r, k)
                num = new_num
        c0 = den[0]
        return {e: c / c0 for e, c in num.items()}, tuple(c / c0 for c in den)

    @classmethod
    def from_factors(
        cls,
        coef: "TPoly | Scalar" = 1,
        q_power: int = 0,
        one_plus_q: int = 0,
        one_minus_q: int = 0,
    ) -> "QRatFun":
        """coef * q^q_power * (1+q)^one_plus_q * (1-q)^one_minus_q."""
        num_poly = [Rat(1)]
        den_poly = [Rat(1)]
        for base, r in (([Rat(1), Rat(1)], one_plus_q), ([Rat(1), Rat(-1)], one_minus_q)):
            if r >= 0:
                num_poly = _poly_mul(num_poly, _poly_pow(base, r))
            else:
                den_poly = _poly_mul(den_poly, _poly_pow(base, -r))
        num = _laurent_mul_poly({q_power: _as_tpoly(coef)}, num_poly)
        return cls(num, den_poly)

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "QRatFun") -> "QRatFun":
        num = _laurent_add(
            _laurent_mul_poly(self.num, list(other.den)),
            _laurent_mul_poly(other.num, list(self.den)),
        )
        return QRatFun(num, _poly_mul(list(self.den), list(other.den)))

    def __neg__(self) -> "QRatFun":
        return QRatFun({e: -c for e, c in self.num.items()}, self.den)

    def __sub__(self, other: "QRatFun") -> "QRatFun":
        return self + (-other)

    def __mul__(self, other: "QRatFun | TPoly | int | Rat") -> "QRatFun":
        if not isinstance(other, QRatFun):
            c = _as_tpoly(other)
            return QRatFun({e: x * c for e, x in self.num.items()}, self.den)
        return QRatFun(
            _laurent_mul(self.num, other.num), _poly_mul(list(self.den), list(other.den))
        )

    __rmul__ = __mul__

    def pow(self, r: int) -> "QRatFun":
        if r < 0:
            raise ContractViolation("QRatFun.pow: negative exponents are not supported")
        out = QRatFun({0: TPoly.one()})
        for _ in range(r):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QRatFun):
            return NotImplemented
        lhs = _laurent_mul_poly(self.num, list(other.den))
        rhs = _laurent_mul_poly(other.num, list(self.den))
        return lhs == rhs

    def __hash__(self) -> int:
        return hash((frozenset(self.num.items()), self.den))

    def render(self) -> str:
        num = render_terms(self.num)
        if self.den == (Rat(1),):
            return num
        den = render_terms({i: TPoly.const(c) for i, c in enumerate(self.den)})
        return f"({num})/({den})"

    def __repr__(self) -> str:
        return f"QRatFun({self.render()})"


def _inverse_power_series(den: tuple[Rat, ...], length: int) -> list[Rat]:
    """First `length` coefficients of 1/den(q)."""
    inv0 = 1 / den[0]
    out: list[Rat] = []
    for k in range(length):
        if k == 0:
            out.append(inv0)
            continue
        acc = sum((den[i] * out[k - i] for i in range(1, min(k, len(den) - 1) + 1)), Rat(0))
        out.append(-acc * inv0)
    return out


def qratfun_expand(f: QRatFun, order: int) -> QSeries:
    """Laurent expansion of f exact through q^order."""
    if f.is_zero():
        return QSeries.zero(order)
    low = min(f.num)
    if order < low:
        return QSeries(low, (), order)
    inv = _inverse_power_series(f.den, order - low + 1)
    out: dict[int, TPoly] = {}
    for e in range(low, order + 1):
        acc = TPoly.zero()
        for a, c in f.num.items():
            if a <= e:
                acc = acc + c * inv[e - a]
        out[e] = acc
    return QSeries.from_terms(out, order, min_exp=low)
