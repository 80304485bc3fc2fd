"""Intersection theory on [Quot^e E]^vir x [Sym^n C]."""

from app.intersection.context import QuotContext
from app.intersection.integrals import (
    integrate_Y,
    mainformula_value,
    quot_intersection,
    quot_theta_integral,
    quot_top_power,
)

__all__ = [
    "QuotContext",
    "integrate_Y",
    "mainformula_value",
    "quot_intersection",
    "quot_theta_integral",
    "quot_top_power",
]
