"""Command line front end.

Every command runs in process by default; `--server URL` sends the same
request to a running HTTP service instead and prints the same output.
Exit codes: 0 success, 1 negative result (validation issues, a false
predicate, non-commuting inputs), 2 usage or parse errors, 3 solver cap
exhausted.
"""

import argparse
import json
import sys

from . import api
from .errors import ParseError, SpecValidationError

_PATHS = {
    "validate": "/validate",
    "eval": "/eval",
    "commutes": "/commutes",
    "centralizer": "/centralizer",
    "annihilate": "/annihilate",
    "verify": "/verify",
}

_HANDLERS = {
    "validate": api.do_validate,
    "eval": api.do_eval,
    "commutes": api.do_commutes,
    "centralizer": api.do_centralizer,
    "annihilate": api.do_annihilate,
    "verify": api.do_verify,
}


class _RemoteRefused(Exception):
    """The server rejected the request with a diagnostic."""


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _run(command: str, request, args, http_client) -> api.CommandResult:
    if getattr(args, "server", None):
        import httpx
        client = http_client if http_client is not None else httpx
        url = args.server.rstrip("/") + _PATHS[command]
        response = client.post(url, json=request.model_dump())
        if response.status_code == 400:
            detail = response.json().get("detail", {})
            message = detail.get("message") if isinstance(detail, dict) else detail
            raise _RemoteRefused(message or "request rejected")
        if response.status_code != 200:
            raise _RemoteRefused(f"server returned status {response.status_code}")
        return api.CommandResult(**response.json())
    return _HANDLERS[command](request)


def _emit_json(result: api.CommandResult, args) -> None:
    data = result.model_dump()
    data["inputs"] = {"spec": args.spec, **data["inputs"]}
    print(json.dumps(data, sort_keys=True))


def _cmd_validate(args, http_client) -> int:
    request = api.ValidateRequest(spec_text=_read_text(args.spec))
    result = _run("validate", request, args, http_client)
    if args.json:
        _emit_json(result, args)
    elif result.result["ok"]:
        print("ok")
    else:
        for issue in result.result["issues"]:
            print(f"{issue['code']}: {issue['message']}")
    return 0 if result.result["ok"] else 1


def _cmd_eval(args, http_client) -> int:
    request = api.EvalRequest(spec_text=_read_text(args.spec), expr=args.expr)
    result = _run("eval", request, args, http_client)
    if args.json:
        _emit_json(result, args)
    else:
        print(result.result["value"])
    return 0


def _cmd_commutes(args, http_client) -> int:
    request = api.CommutesRequest(spec_text=_read_text(args.spec),
                                  p=args.p, q=args.q)
    result = _run("commutes", request, args, http_client)
    if args.json:
        _emit_json(result, args)
    else:
        print("true" if result.result["commutes"] else "false")
    return 0 if result.result["commutes"] else 1


def _cmd_centralizer(args, http_client) -> int:
    request = api.CentralizerRequest(spec_text=_read_text(args.spec),
                                     expr=args.expr, deg=args.deg,
                                     coeff_deg=args.coeff_deg)
    result = _run("centralizer", request, args, http_client)
    if args.json:
        _emit_json(result, args)
    else:
        for element in result.result["elements"]:
            print(element)
    return 0


def _cmd_annihilate(args, http_client) -> int:
    request = api.AnnihilateRequest(spec_text=_read_text(args.spec),
                                    p=args.p, q=args.q, max_s=args.max_s)
    result = _run("annihilate", request, args, http_client)
    if args.json:
        _emit_json(result, args)
    if result.result["found"]:
        if not args.json:
            print(result.result["polynomial"])
        return 0
    reason = result.result.get("reason", "no annihilator found")
    if not args.json:
        print(f"error: {reason}", file=sys.stderr)
    return 3 if reason == "cap-exhausted" else 1


def _cmd_verify(args, http_client) -> int:
    request = api.VerifyRequest(spec_text=_read_text(args.spec),
                                p=args.p, q=args.q, polynomial=args.polynomial)
    result = _run("verify", request, args, http_client)
    if args.json:
        _emit_json(result, args)
    else:
        print("true" if result.result["zero"] else "false")
    return 0 if result.result["zero"] else 1


def _cmd_preset(args, http_client) -> int:
    from .presets import PRESET_NAMES, preset_document
    if args.list or args.name is None:
        for name in PRESET_NAMES:
            print(name)
        return 0
    params = {}
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            print(f"error: --param takes NAME=VALUE, got {item!r}", file=sys.stderr)
            return 2
        params[key.strip()] = value.strip()
    try:
        sys.stdout.write(preset_document(args.name, **params))
    except (ValueError, SpecValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_serve(args, http_client) -> int:
    import uvicorn
    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewpbw",
        description="Exact arithmetic, centralizers, and annihilating curves "
                    "for skew PBW extensions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text, func, spec=True):
        p = sub.add_parser(name, help=help_text)
        if spec:
            p.add_argument("spec", help="algebra document file")
        p.set_defaults(func=func)
        return p

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="print the machine-readable envelope")
        p.add_argument("--server", metavar="URL",
                       help="send the request to a running service")

    p = command("validate", "check a document and report issues", _cmd_validate)
    common(p)

    p = command("eval", "normalize an expression", _cmd_eval)
    p.add_argument("expr", help="expression to evaluate")
    common(p)

    p = command("commutes", "test whether two elements commute", _cmd_commutes)
    p.add_argument("p", help="first element")
    p.add_argument("q", help="second element")
    common(p)

    p = command("centralizer", "basis of a degree-bounded centralizer slice",
                _cmd_centralizer)
    p.add_argument("expr", help="element whose centralizer is computed")
    p.add_argument("--deg", type=int, default=2, help="monomial degree bound")
    p.add_argument("--coeff-deg", type=int, default=0,
                   help="coefficient degree bound")
    common(p)

    p = command("annihilate", "find a verified annihilating polynomial",
                _cmd_annihilate)
    p.add_argument("p", help="first element (maps to s)")
    p.add_argument("q", help="second element (maps to t)")
    p.add_argument("--max-s", type=int, default=None, help="s-degree cap")
    common(p)

    p = command("verify", "evaluate a bivariate polynomial on a pair",
                _cmd_verify)
    p.add_argument("p", help="first element (maps to s)")
    p.add_argument("q", help="second element (maps to t)")
    p.add_argument("polynomial", help="polynomial in s and t")
    common(p)

    p = command("preset", "print a cataloged document (no name lists them)",
                _cmd_preset, spec=False)
    p.add_argument("name", nargs="?", help="preset name")
    p.add_argument("--param", action="append", metavar="NAME=VALUE",
                   help="preset parameter, may repeat")
    p.add_argument("--list", action="store_true", help="list preset names")

    p = command("serve", "run the HTTP service", _cmd_serve, spec=False)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv=None, http_client=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args, http_client)
    except _RemoteRefused as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, SpecValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main(sys.argv[1:]))
