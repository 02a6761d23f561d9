"""Command-line front end, a thin client over the service-layer handlers.

Exit codes: 0 success, 1 verification found failures, 2 usage error.
Operand values accept 0b-prefixed binary, 0x-prefixed hex and bare
decimal; a value that does not fit the adder width is a usage error,
never a silent truncation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .builders import FAMILIES, SUM_FORMS
from .service import api
from .service.schemas import (
    AdderSpecModel,
    BuildRequest,
    CompareRequest,
    EvalRequest,
    ExportRequest,
    NetlistDoc,
    VerifyRequest,
)
from .verify import EXHAUSTIVE_INPUT_BIT_CAP

_ROLE_PREFIX_ORDER = {"g": 0, "p": 1, "d": 2, "Gs": 3, "Ps": 4, "H": 5, "c": 6, "s": 7}


def _operand(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a 0b/0x-prefixed or decimal value")
    if value < 0:
        raise argparse.ArgumentTypeError("operand values must be non-negative")
    return value


def _add_spec_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=FAMILIES, default="ling4")
    parser.add_argument("--width", type=int, default=4)
    parser.add_argument("--group", type=int, default=None, help="group size for grouped families")
    parser.add_argument(
        "--cin",
        choices=["0", "1", "none"],
        default="none",
        help="carry-in: none omits the input, 0/1 builds with one",
    )
    parser.add_argument("--sum-form", choices=SUM_FORMS, default="xor", dest="sum_form")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adderkit",
        description="Build, simulate, verify and compare gate-level binary adders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build an adder netlist and write it as JSON")
    _add_spec_flags(p_build)
    p_build.add_argument("--out", required=True, help="output path for the JSON netlist")

    p_eval = sub.add_parser("eval", help="evaluate a JSON netlist on operand values")
    p_eval.add_argument("--netlist", required=True, help="path to a JSON netlist")
    p_eval.add_argument("--a", type=_operand, required=True)
    p_eval.add_argument("--b", type=_operand, required=True)
    p_eval.add_argument("--cin", choices=["0", "1"], default=None, help="carry-in value")
    p_eval.add_argument("--taps", action="store_true", help="also print every tapped net")

    p_verify = sub.add_parser(
        "verify",
        help="sweep an adder against integer addition",
        description=(
            "Exhaustive mode covers every vector and is capped at "
            f"{EXHAUSTIVE_INPUT_BIT_CAP} total input bits; random mode runs seeded "
            "uniform vectors plus the corner vectors."
        ),
    )
    _add_spec_flags(p_verify)
    p_verify.add_argument("--netlist", default=None, help="verify a JSON netlist file instead")
    p_verify.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p_verify.add_argument("--samples", type=int, default=100_000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--jobs", type=int, default=1)

    p_compare = sub.add_parser("compare", help="cost/depth table across adder families")
    p_compare.add_argument(
        "--families", default="rca,cla-flat,ling4", help="comma-separated family list"
    )
    p_compare.add_argument("--width", type=int, default=4)
    p_compare.add_argument("--group", type=int, default=None)
    p_compare.add_argument("--cin", choices=["0", "1", "none"], default="none")
    p_compare.add_argument("--sum-form", choices=SUM_FORMS, default="xor", dest="sum_form")
    p_compare.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown")

    p_export = sub.add_parser("export", help="convert a JSON netlist to DOT (or re-emit JSON)")
    p_export.add_argument("--netlist", required=True)
    p_export.add_argument("--format", choices=["dot", "json"], default="dot")
    p_export.add_argument("--out", default=None, help="write here instead of stdout")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _spec_model(args: argparse.Namespace, family: str | None = None) -> AdderSpecModel:
    return AdderSpecModel(
        family=family or args.family,
        width=args.width,
        group_size=args.group,
        cin=args.cin != "none",
        sum_form=args.sum_form,
    )


def _load_doc(path: str) -> NetlistDoc:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ValueError(f"cannot read netlist file: {exc}")
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}")
    return NetlistDoc.model_validate(raw)


def _tap_sort_key(role: str) -> tuple[int, int]:
    if role == "cout":
        return (len(_ROLE_PREFIX_ORDER), 0)
    prefix, _, rest = role.partition("[")
    return (_ROLE_PREFIX_ORDER.get(prefix, 99), int(rest.rstrip("]") or 0))


def _cmd_build(args: argparse.Namespace) -> int:
    doc = api.build(BuildRequest(**_spec_model(args).model_dump()))
    Path(args.out).write_text(json.dumps(doc.model_dump(by_alias=True), indent=2) + "\n")
    print(f"wrote {args.out}")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    resp = api.run_eval(
        EvalRequest(
            netlist=_load_doc(args.netlist),
            a=args.a,
            b=args.b,
            cin=None if args.cin is None else int(args.cin),
            taps=args.taps,
        )
    )
    print(f"s = {resp.s_binary} ({resp.s})")
    print(f"cout = {resp.cout}")
    if resp.taps is not None:
        for role in sorted(resp.taps, key=_tap_sort_key):
            print(f"{role} = {resp.taps[role]}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.netlist is not None:
        req = VerifyRequest(
            netlist=_load_doc(args.netlist),
            mode=args.mode,
            samples=args.samples,
            seed=args.seed,
            jobs=args.jobs,
        )
    else:
        req = VerifyRequest(
            spec=_spec_model(args),
            mode=args.mode,
            samples=args.samples,
            seed=args.seed,
            jobs=args.jobs,
        )
    resp = api.run_verify(req)
    print(f"{resp.vectors_tested} vectors, {len(resp.failures)} failures")
    for fail in resp.failures:
        line = (
            f"  a={fail.a} b={fail.b} cin={fail.cin}: "
            f"expected s={fail.expected[0]} cout={fail.expected[1]}, "
            f"got s={fail.actual[0]} cout={fail.actual[1]}"
        )
        if fail.identity:
            line += f" [{fail.identity}]"
        print(line)
    return 0 if resp.passed else 1


def _cmd_compare(args: argparse.Namespace) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    if not families:
        raise ValueError("--families must name at least one family")
    specs = [_spec_model(args, family=f) for f in families]
    resp = api.run_compare(CompareRequest(specs=specs, format=args.format))
    sys.stdout.write(resp.table if resp.table.endswith("\n") else resp.table + "\n")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    resp = api.run_export(ExportRequest(netlist=_load_doc(args.netlist), format=args.format))
    if args.out:
        Path(args.out).write_text(resp.text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(resp.text)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "build": _cmd_build,
        "eval": _cmd_eval,
        "verify": _cmd_verify,
        "compare": _cmd_compare,
        "export": _cmd_export,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
