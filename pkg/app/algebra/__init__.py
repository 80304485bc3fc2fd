"""Exact algebra: scalars, q-series and the truncated integrand ring."""

from app.algebra.cohring import CohClass, CohMono, RingContext, coh_exp, coh_mul, coh_pow
from app.algebra.scalars import Rat, TPoly, binomial, tpoly_arith
from app.algebra.series import QRatFun, QSeries, qratfun_expand

__all__ = [
    "CohClass",
    "CohMono",
    "QRatFun",
    "QSeries",
    "Rat",
    "RingContext",
    "TPoly",
    "binomial",
    "coh_exp",
    "coh_mul",
    "coh_pow",
    "qratfun_expand",
    "tpoly_arith",
]
