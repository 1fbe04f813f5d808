"""HTTP front end: one POST route per command plus the preset catalog."""

from fastapi import FastAPI, HTTPException

from . import api
from .errors import ParseError, SpecValidationError
from .presets import PRESET_NAMES, preset_document

app = FastAPI(title="skewpbw", version="0.1.0")


def _guard(handler, request):
    try:
        return handler(request)
    except ParseError as exc:
        raise HTTPException(status_code=400, detail={
            "kind": "parse", "message": str(exc),
            "line": exc.line, "col": exc.col}) from None
    except SpecValidationError as exc:
        raise HTTPException(status_code=400, detail={
            "kind": "validation", "message": str(exc)}) from None


@app.post("/validate", response_model=api.CommandResult)
def validate(req: api.ValidateRequest):
    return _guard(api.do_validate, req)


@app.post("/eval", response_model=api.CommandResult)
def eval_expr(req: api.EvalRequest):
    return _guard(api.do_eval, req)


@app.post("/commutes", response_model=api.CommandResult)
def commutes(req: api.CommutesRequest):
    return _guard(api.do_commutes, req)


@app.post("/centralizer", response_model=api.CommandResult)
def centralizer(req: api.CentralizerRequest):
    return _guard(api.do_centralizer, req)


@app.post("/annihilate", response_model=api.CommandResult)
def annihilate(req: api.AnnihilateRequest):
    return _guard(api.do_annihilate, req)


@app.post("/verify", response_model=api.CommandResult)
def verify(req: api.VerifyRequest):
    return _guard(api.do_verify, req)


@app.get("/presets")
def presets():
    return {"presets": list(PRESET_NAMES)}


@app.get("/presets/{name}")
def preset_detail(name: str):
    try:
        return {"name": name, "document": preset_document(name)}
    except ValueError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from None


@app.get("/health")
def health():
    return {"ok": True}
