"""Command-line entry point.

Every subcommand is a pure request/response: parse, validate with the
Invocation model, compute, render to stdout. Diagnostics go to stderr.

Exit codes: 0 ok, 1 contract violation or unwritable --out, 2 usage error or bad
settings, 3 failed cross-check.
"""

import argparse
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

import structlog
from pydantic import BaseModel, ValidationError

from app.algebra.scalars import TPoly
from app.config import get_settings
from app.core.geometry import GeomData
from app.core.localization import (
    FixedComponent,
    component_contribution,
    genus0_C,
    pt_invariant,
    pt_series,
    series_cross_check,
)
from app.core.partitions import (
    gw_u_series,
    gwpt_sides,
    macmahon,
    minimal_invariant,
    segre_count,
    zdt0,
)
from app.errors import ContractViolation, NegativeDimensionError, QuotPairsError
from app.intersection.context import QuotContext
from app.intersection.integrals import quot_intersection, quot_theta_integral
from app.intersection.oracle import validate_mainformula
from app.log import configure_logging
from app.models import CheckPayload, Invocation, SeriesPayload, TPolyPayload, ValuePayload
from app.render import render

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_CONTRACT = 1
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so run() owns the exit code."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


_INT_FLAGS = (
    ("--genus", "genus g of the curve"),
    ("--degree", "degree d of E"),
    ("--e", "degree of the subsheaf"),
    ("--n", "symmetric power"),
    ("--chi", "Euler characteristic"),
    ("--chi-max", "top q-exponent"),
    ("--order", "expansion order"),
    ("--gmax", "largest genus of the sweep"),
    ("--vdim1", "expected dimension of the Quot factor"),
    ("--even-pairs", "number of b-pairs"),
    ("--a-exp", "power of a"),
    ("--k", "theta index"),
    ("--rank", "rank N of the trivial bundle"),
    ("--extra-orders", "orders beyond chi_min"),
)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quotpairs", description="Stable pair invariants in class 2[C]")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    for name in _HANDLERS:
        p = sub.add_parser(name)
        for flag, help_text in _INT_FLAGS:
            p.add_argument(flag, type=int, default=None, help=help_text)
        p.add_argument("--format", choices=("text", "json"), default=None)
        p.add_argument("--parallel", action="store_true")
        p.add_argument("--out", default=None, help="also write JSON to this file")
    return parser


# ---------------------------------------------------------------------------
# Handlers: each returns (payload, passed)
# ---------------------------------------------------------------------------

Outcome = tuple[BaseModel, bool]


def _geom(inv: Invocation) -> GeomData:
    assert inv.genus is not None and inv.degree is not None
    return GeomData(inv.genus, inv.degree)


def _value(inv: Invocation, value: TPoly, chi: int | None = None) -> Outcome:
    payload = ValuePayload(
        command=inv.subcommand,
        params=inv.params(),
        value=TPolyPayload.from_tpoly(value),
        chi=chi,
    )
    return payload, True


def _pt_series(inv: Invocation) -> Outcome:
    gd = _geom(inv)
    assert inv.chi_max is not None
    s = pt_series(gd, inv.chi_max, parallel=inv.parallel, max_workers=get_settings().max_workers)
    return SeriesPayload.from_series(s, gd.g, gd.d, chi_min=gd.chi_min), True


def _pt_invariant(inv: Invocation) -> Outcome:
    assert inv.chi is not None
    value = pt_invariant(
        _geom(inv), inv.chi, parallel=inv.parallel, max_workers=get_settings().max_workers
    )
    return _value(inv, value)


def _contribution(inv: Invocation) -> Outcome:
    assert inv.e is not None and inv.n is not None
    gd = _geom(inv)
    return _value(inv, component_contribution(gd, FixedComponent(gd, inv.e, inv.n)))


def _genus0_c(inv: Invocation) -> Outcome:
    assert inv.degree is not None and inv.e is not None and inv.n is not None
    return _value(inv, genus0_C(inv.degree, inv.e, inv.n))


def _quot_integral(inv: Invocation) -> Outcome:
    assert inv.genus is not None and inv.vdim1 is not None and inv.even_pairs is not None
    if inv.vdim1 < 0:
        raise NegativeDimensionError(inv.vdim1)
    ctx = QuotContext.with_vdim1(inv.genus, inv.vdim1, N=inv.rank)
    a_exp = inv.a_exp if inv.a_exp is not None else inv.vdim1 - inv.even_pairs
    return _value(inv, quot_intersection(ctx, a_exp, inv.even_pairs))


def _theta_integral(inv: Invocation) -> Outcome:
    assert inv.genus is not None and inv.k is not None
    ctx = QuotContext(g=inv.genus, N=inv.rank)
    return _value(inv, quot_theta_integral(ctx, inv.k))


def _oracle_check(inv: Invocation) -> Outcome:
    assert inv.gmax is not None
    cap = get_settings().oracle_max_genus
    if inv.gmax > cap:
        raise ContractViolation(f"gmax={inv.gmax} above the configured cap {cap}")
    report = validate_mainformula(inv.gmax)
    return report, report.passed


def _gw_pt_check(inv: Invocation) -> Outcome:
    sides = gwpt_sides(_geom(inv))
    passed = sides.gw == sides.pt
    payload = CheckPayload(
        command=inv.subcommand,
        params=inv.params(),
        passed=passed,
        lhs=sides.gw.render(),
        rhs=sides.pt.render(),
    )
    return payload, passed


def _minimal(inv: Invocation) -> Outcome:
    chi_min, value = minimal_invariant(_geom(inv))
    return _value(inv, value, chi=chi_min)


def _max_subbundles(inv: Invocation) -> Outcome:
    assert inv.genus is not None
    return _value(inv, TPoly.const(segre_count(inv.genus)))


def _macmahon(inv: Invocation) -> Outcome:
    assert inv.order is not None
    return SeriesPayload.from_series(macmahon(inv.order)), True


def _zdt0(inv: Invocation) -> Outcome:
    gd = _geom(inv)
    assert inv.order is not None
    return SeriesPayload.from_series(zdt0(gd, inv.order), gd.g, gd.d), True


def _series_check(inv: Invocation) -> Outcome:
    gd = _geom(inv)
    assert inv.extra_orders is not None
    cmp = series_cross_check(
        gd, inv.extra_orders, parallel=inv.parallel, max_workers=get_settings().max_workers
    )
    payload = CheckPayload(
        command=inv.subcommand,
        params=inv.params(),
        passed=cmp.match,
        lhs=cmp.localized.render(),
        rhs=cmp.closed.render(),
        mismatches=cmp.mismatches,
        minimal_match=cmp.minimal_match,
    )
    return payload, cmp.match


def _gw_series(inv: Invocation) -> Outcome:
    gd = _geom(inv)
    assert inv.order is not None
    return SeriesPayload.from_series(gw_u_series(gd, inv.order), gd.g, gd.d, variable="u"), True


_HANDLERS: dict[str, Callable[[Invocation], Outcome]] = {
    "pt-series": _pt_series,
    "pt-invariant": _pt_invariant,
    "contribution": _contribution,
    "genus0-c": _genus0_c,
    "quot-integral": _quot_integral,
    "theta-integral": _theta_integral,
    "oracle-check": _oracle_check,
    "gw-pt-check": _gw_pt_check,
    "minimal": _minimal,
    "max-subbundles": _max_subbundles,
    "macmahon": _macmahon,
    "zdt0": _zdt0,
    "series-check": _series_check,
    "gw-series": _gw_series,
}


# ---------------------------------------------------------------------------
# Entry
# ---------------------------------------------------------------------------


def parse_invocation(argv: Sequence[str]) -> Invocation:
    """argv -> validated Invocation; raises _UsageError on anything malformed."""
    parser = build_parser()
    ns = parser.parse_args(list(argv))
    fields = {k: v for k, v in vars(ns).items() if v is not None}
    fields.setdefault("format", get_settings().output_format)
    try:
        return Invocation.model_validate(fields)
    except ValidationError as exc:
        msgs = "; ".join(err["msg"] for err in exc.errors())
        raise _UsageError(f"{parser.format_usage()}quotpairs: error: {msgs}") from exc


def run(argv: Sequence[str] | None = None) -> int:
    try:
        settings = get_settings()
    except ValidationError as exc:
        msgs = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
        print(f"quotpairs: invalid settings: {msgs}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(settings.log_level)
    try:
        inv = parse_invocation(sys.argv[1:] if argv is None else argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE

    try:
        payload, passed = _HANDLERS[inv.subcommand](inv)
    except QuotPairsError as exc:
        logger.error("cli.contract_violation", subcommand=inv.subcommand, error=str(exc))
        print(f"quotpairs: {exc}", file=sys.stderr)
        return EXIT_CONTRACT

    print(render(payload, inv.format))
    if inv.out:
        try:
            Path(inv.out).write_text(payload.model_dump_json(), encoding="utf-8")
        except OSError as exc:
            logger.error("cli.write_failed", path=inv.out, error=str(exc))
            print(f"quotpairs: cannot write {inv.out}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_CONTRACT
    if not passed:
        logger.warning("cli.check_failed", subcommand=inv.subcommand)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
