"""Text and JSON rendering of CLI payloads."""

from pydantic import BaseModel

from app.algebra.series import render_terms
from app.intersection.oracle import OracleReport
from app.models import CheckPayload, SeriesPayload, TPolyPayload, ValuePayload


def series_text(payload: SeriesPayload) -> str:
    terms = {row.q: TPolyPayload(t_terms=row.t_terms).to_tpoly() for row in payload.series}
    return render_terms(terms, payload.meta.variable)


def value_text(payload: ValuePayload) -> str:
    value = payload.value.to_tpoly().render()
    if payload.chi is not None:
        return f"chi={payload.chi} {value}"
    return value


def check_text(payload: CheckPayload) -> str:
    head = "PASS" if payload.passed else "FAIL"
    lines = [f"{head} {payload.command}", f"lhs: {payload.lhs}", f"rhs: {payload.rhs}"]
    if payload.mismatches:
        lines.append("mismatch at: " + ", ".join(str(k) for k in payload.mismatches))
    if payload.minimal_match is not None:
        lines.append(f"minimal chi match: {payload.minimal_match}")
    return "\n".join(lines)


def oracle_text(report: OracleReport) -> str:
    lines = ["g  j  k  l  oracle  closed  match"]
    for r in report.rows:
        lines.append(
            f"{r.g}  {r.j}  {r.k}  {r.b_power}  {r.oracle}  {r.closed_form}  "
            f"{'ok' if r.match else 'MISMATCH'}"
        )
    lines.append("PASS" if report.passed else "FAIL")
    return "\n".join(lines)


def render(payload: BaseModel, fmt: str) -> str:
    if fmt == "json":
        return payload.model_dump_json()
    if isinstance(payload, SeriesPayload):
        return series_text(payload)
    if isinstance(payload, ValuePayload):
        return value_text(payload)
    if isinstance(payload, CheckPayload):
        return check_text(payload)
    if isinstance(payload, OracleReport):
        return oracle_text(payload)
    raise TypeError(f"no text rendering for {type(payload).__name__}")
