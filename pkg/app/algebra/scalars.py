"""Exact scalars: rationals, t-Laurent polynomials and the generalized binomial.

No floating point anywhere; every value is kept in canonical form so equality
is structural.
"""

import math
from collections.abc import Iterator, Mapping
from fractions import Fraction
from typing import Literal, Union

from app.errors import ContractViolation, NotInvertibleError

Rat = Fraction

Scalar = Union[int, Fraction]


def binomial(n: int, k: int) -> Rat:
    """n(n-1)...(n-k+1)/k!, valid for every integer n so negative exponents expand as usual."""
    if k < 0:
        raise ContractViolation(f"binomial: negative k={k}")
    return Rat(math.prod(n - i for i in range(k)), math.factorial(k))


def _rat_str(c: Rat) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class TPoly:
    """Laurent polynomial in the equivariant parameter t over Q.

    Immutable; zero coefficients are never stored, exponents may be negative.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None) -> None:
        clean: dict[int, Rat] = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[int(k)] = Rat(c)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, terms: dict[int, Rat]) -> "TPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # ---------------------------------------------------------------------------
    # Constructors
    # ---------------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "TPoly":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "TPoly":
        return cls._wrap({0: Rat(1)})

    @classmethod
    def const(cls, c: Scalar) -> "TPoly":
        return cls._wrap({0: Rat(c)} if c else {})

    @classmethod
    def monomial(cls, c: Scalar, k: int) -> "TPoly":
        """c * t^k."""
        return cls._wrap({k: Rat(c)} if c else {})

    @classmethod
    def t(cls) -> "TPoly":
        return cls._wrap({1: Rat(1)})

    # ---------------------------------------------------------------------------
    # Inspection
    # ---------------------------------------------------------------------------

    def items(self) -> Iterator[tuple[int, Rat]]:
        """(exponent, coefficient) pairs sorted by exponent."""
        return iter(sorted(self._terms.items()))

    def coefficient(self, k: int) -> Rat:
        return self._terms.get(k, Rat(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    def leading_exponent(self) -> int | None:
        """Lowest t-exponent present, None for zero."""
        return min(self._terms) if self._terms else None

    def as_rat(self) -> Rat:
        """The value of a t-free polynomial."""
        if any(k != 0 for k in self._terms):
            raise ContractViolation(f"not a constant: {self.render()}")
        return self._terms.get(0, Rat(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ---------------------------------------------------------------------------
    # Arithmetic
    # ---------------------------------------------------------------------------

    @staticmethod
    def _coerce(other: object) -> "TPoly | None":
        if isinstance(other, TPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return TPoly.const(other)
        return None

    def __add__(self, other: object) -> "TPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        out = dict(self._terms)
        for k, c in o._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "TPoly":
        return TPoly._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: object) -> "TPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "TPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "TPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return TPoly.zero()
            return TPoly._wrap({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, TPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return TPoly.zero()
        out: dict[int, Rat] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return TPoly._wrap({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "TPoly":
        """Division by a nonzero scalar or by a t-monomial (a unit)."""
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("TPoly division by zero")
            return TPoly._wrap({k: c / other for k, c in self._terms.items()})
        if isinstance(other, TPoly):
            return self * other.pow(-1)
        return NotImplemented

    def pow(self, r: int) -> "TPoly":
        """Integer power; negative exponents only for t-monomials."""
        if r >= 0:
            result = TPoly.one()
            base = self
            while r:
                if r & 1:
                    result = result * base
                base = base * base
                r >>= 1
            return result
        if not self.is_monomial():
            raise NotInvertibleError(f"({self.render()})^{r}")
        ((k, c),) = self._terms.items()
        return TPoly._wrap({k * r: c**r})

    def __pow__(self, r: int) -> "TPoly":
        return self.pow(r)

    def shift(self, k: int) -> "TPoly":
        """Multiply by t^k."""
        return TPoly._wrap({e + k: c for e, c in self._terms.items()})

    # ---------------------------------------------------------------------------
    # Equality / rendering
    # ---------------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def render(self) -> str:
        """Canonical text: "c*t^k" terms sorted by exponent, "0" for zero."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for i, (k, c) in enumerate(self.items()):
            body = _rat_str(abs(c)) if k == 0 else f"{_rat_str(abs(c))}*t^{k}"
            if i == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def to_json(self) -> dict[str, list[dict[str, int | str]]]:
        return {
            "t_terms": [
                {"exp": k, "num": str(c.numerator), "den": str(c.denominator)}
                for k, c in self.items()
            ]
        }

    def __repr__(self) -> str:
        return f"TPoly({self.render()})"

    def __str__(self) -> str:
        return self.render()


def tpoly_arith(x: TPoly, y: TPoly, op: Literal["add", "mul", "neg"]) -> TPoly:
    """Ring operation by name; "neg" ignores y."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise ContractViolation(f"unknown TPoly operation {op!r}")
