"""Virtual intersection numbers on [Quot^e E]^vir x [Sym^n C].

For distinct indices, a product of m pairs b_i b_{g+i} against a^{vdim1-m} on
the Quot factor gives N^{g-m}; on Sym^n C it gives 1 against a^{n-m}. Summing
over the pair decompositions of theta1^j theta2^k B^{2l} yields the closed
monomial rule used by integrate_Y.

B^{2l} = (-1)^l (2l)! sum_{|I| = l} prod_{i in I} eta1_i eta2_i, and
(2l)! = C(2l, l) l! l!: one l! is absorbed by choosing I, the other stays in
the rule.
"""

import math

from app.algebra.cohring import CohClass, CohMono
from app.algebra.scalars import Rat, TPoly, binomial
from app.errors import ContextMismatchError, ContractViolation, NegativeDimensionError
from app.intersection.context import QuotContext


def mainformula_value(ctx: QuotContext, mono: CohMono) -> Rat:
    """Integral of a1^p1 a2^p2 theta1^j theta2^k B^l over Quot x Sym."""
    p1, p2, j, k, l = mono
    g = ctx.g
    if l % 2:
        return Rat(0)
    lh = l // 2
    if p1 + j + lh != ctx.vdim1 or p2 + k + lh != ctx.n:
        return Rat(0)
    if j + lh > g or k + lh > g:
        return Rat(0)
    sign = -1 if lh % 2 else 1
    return (
        sign
        * binomial(2 * lh, lh)
        * math.factorial(lh)
        * Rat(
            math.factorial(g) * math.factorial(g - lh) * ctx.N ** (g - j - lh),
            math.factorial(g - j - lh) * math.factorial(g - k - lh),
        )
    )


def integrate_Y(x: CohClass, ctx: QuotContext) -> TPoly:
    """Pair x against [Quot^e E]^vir x [Sym^n C]; only degree vdim1 + n contributes."""
    if ctx.vdim1 < 0:
        raise NegativeDimensionError(ctx.vdim1)
    if x.ctx.g != ctx.g:
        raise ContextMismatchError(f"class built for g={x.ctx.g}, context has g={ctx.g}")
    total = TPoly.zero()
    target = ctx.vdim
    for mono, coef in x.terms.items():
        if mono.deg != target:
            continue
        value = mainformula_value(ctx, mono)
        if value:
            total = total + coef * value
    return total


def quot_intersection(ctx: QuotContext, a_exp: int, even_pairs: int) -> TPoly:
    """Integral over [Quot^e E]^vir of a^a_exp times an even monomial with even_pairs pairs."""
    if not 0 <= even_pairs <= ctx.g:
        raise ContractViolation(f"even_pairs={even_pairs} outside [0, {ctx.g}]")
    if a_exp < 0 or a_exp != ctx.vdim1 - even_pairs:
        return TPoly.zero()
    return TPoly.const(ctx.N ** (ctx.g - even_pairs))


def quot_theta_integral(ctx: QuotContext, k_idx: int) -> TPoly:
    """Integral of a^{m-1+k} theta^{g-k}: N^k g!/k!."""
    if not 0 <= k_idx <= ctx.g:
        raise ContractViolation(f"k={k_idx} outside [0, {ctx.g}]")
    return TPoly.const(Rat(ctx.N**k_idx * math.factorial(ctx.g), math.factorial(k_idx)))


def quot_top_power(ctx: QuotContext) -> TPoly:
    """Integral of a^{vdim1}; N^g, the subbundle count when vdim1 = 0."""
    if ctx.vdim1 < 0:
        raise NegativeDimensionError(ctx.vdim1)
    return quot_intersection(ctx, ctx.vdim1, 0)
