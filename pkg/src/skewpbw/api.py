"""Request models and command handlers shared by the HTTP service and the CLI.

Every command takes the algebra as document text plus string expressions and
returns a CommandResult envelope.  Handlers keep the document text out of
the echoed inputs (the CLI substitutes the file path), so local and remote
runs of the same command print identical JSON apart from timing_ms.
"""

import time

from pydantic import BaseModel

from .annihilator import BivariatePoly, BoundsConfig, annihilating_polynomial, \
    evaluate_bivariate
from .centralizer import centralizer_bounded, commutes
from .errors import CapExhaustedError
from .exprs import format_element, parse_element
from .specfile import load_document, parse_document


class ValidateRequest(BaseModel):
    spec_text: str


class EvalRequest(BaseModel):
    spec_text: str
    expr: str


class CommutesRequest(BaseModel):
    spec_text: str
    p: str
    q: str


class CentralizerRequest(BaseModel):
    spec_text: str
    expr: str
    deg: int = 2
    coeff_deg: int = 0


class AnnihilateRequest(BaseModel):
    spec_text: str
    p: str
    q: str
    max_s: int | None = None


class VerifyRequest(BaseModel):
    spec_text: str
    p: str
    q: str
    polynomial: str


class CommandResult(BaseModel):
    command: str
    inputs: dict
    result: dict
    residual: str | None = None
    bounds: dict | None = None
    timing_ms: int


def _done(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def do_validate(req: ValidateRequest) -> CommandResult:
    start = time.perf_counter()
    _, report = load_document(req.spec_text)
    issues = [{"code": issue.code, "message": issue.message}
              for issue in report.issues]
    return CommandResult(
        command="validate",
        inputs={},
        result={"ok": report.ok, "issues": issues, "checks": list(report.checks)},
        timing_ms=_done(start))


def do_eval(req: EvalRequest) -> CommandResult:
    start = time.perf_counter()
    algebra = parse_document(req.spec_text)
    value = parse_element(req.expr, algebra)
    return CommandResult(
        command="eval",
        inputs={"expr": req.expr},
        result={"value": format_element(value)},
        timing_ms=_done(start))


def do_commutes(req: CommutesRequest) -> CommandResult:
    start = time.perf_counter()
    algebra = parse_document(req.spec_text)
    p = parse_element(req.p, algebra)
    q = parse_element(req.q, algebra)
    return CommandResult(
        command="commutes",
        inputs={"p": req.p, "q": req.q},
        result={"commutes": commutes(p, q)},
        timing_ms=_done(start))


def do_centralizer(req: CentralizerRequest) -> CommandResult:
    start = time.perf_counter()
    algebra = parse_document(req.spec_text)
    f = parse_element(req.expr, algebra)
    basis = centralizer_bounded(f, req.deg, req.coeff_deg)
    elements = [format_element(g) for g in basis.elements]
    return CommandResult(
        command="centralizer",
        inputs={"expr": req.expr, "deg": req.deg, "coeff_deg": req.coeff_deg},
        result={"elements": elements, "count": len(elements)},
        bounds={"deg": req.deg, "coeff_deg": req.coeff_deg},
        timing_ms=_done(start))


def do_annihilate(req: AnnihilateRequest) -> CommandResult:
    start = time.perf_counter()
    algebra = parse_document(req.spec_text)
    p = parse_element(req.p, algebra)
    q = parse_element(req.q, algebra)
    inputs = {"p": req.p, "q": req.q, "max_s": req.max_s}
    if not commutes(p, q):
        return CommandResult(
            command="annihilate",
            inputs=inputs,
            result={"found": False, "reason": "inputs do not commute"},
            timing_ms=_done(start))
    try:
        found = annihilating_polynomial(p, q, BoundsConfig(max_s=req.max_s))
    except CapExhaustedError as exc:
        return CommandResult(
            command="annihilate",
            inputs=inputs,
            result={"found": False, "reason": "cap-exhausted"},
            bounds={"t": exc.t_bound, "max_s": exc.s_max},
            timing_ms=_done(start))
    return CommandResult(
        command="annihilate",
        inputs=inputs,
        result={"found": True, "polynomial": str(found.poly),
                "verified": found.verified},
        residual=format_element(found.residual),
        bounds={"s": found.s_bound, "t": found.t_bound, "max_s": req.max_s},
        timing_ms=_done(start))


def do_verify(req: VerifyRequest) -> CommandResult:
    start = time.perf_counter()
    algebra = parse_document(req.spec_text)
    p = parse_element(req.p, algebra)
    q = parse_element(req.q, algebra)
    poly = BivariatePoly.from_string(req.polynomial)
    inputs = {"p": req.p, "q": req.q, "polynomial": req.polynomial}
    if not commutes(p, q):
        return CommandResult(
            command="verify",
            inputs=inputs,
            result={"zero": False, "reason": "inputs do not commute"},
            timing_ms=_done(start))
    value = evaluate_bivariate(poly, p, q)
    return CommandResult(
        command="verify",
        inputs=inputs,
        result={"zero": value.is_zero},
        residual=format_element(value),
        timing_ms=_done(start))
