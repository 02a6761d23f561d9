"""Service-layer handlers, shared by the FastAPI routes and the CLI.

Every handler takes a request model and returns a response model;
domain errors surface as ValueError and are mapped to HTTP 400 by the
app (and to a usage error by the CLI).
"""

from __future__ import annotations

from ..builders import build_adder, make_spec
from ..metrics import compare as compare_table
from ..netlist import (
    AdderSpec,
    Netlist,
    adder_shape,
    eval_adder,
    eval_adder_taps,
    from_json_dict,
    to_dot,
    to_json,
    to_json_dict,
)
from ..verify import verify_against_oracle
from .schemas import (
    AdderSpecModel,
    BuildRequest,
    CompareRequest,
    CompareResponse,
    EvalRequest,
    EvalResponse,
    ExportRequest,
    ExportResponse,
    NetlistDoc,
    VerifyRequest,
    VerifyResponse,
)


def spec_from_model(model: AdderSpecModel) -> AdderSpec:
    return make_spec(model.family, model.width, model.group_size, model.cin, model.sum_form)


def doc_from_netlist(netlist: Netlist) -> NetlistDoc:
    return NetlistDoc.model_validate(to_json_dict(netlist))


def netlist_from_doc(doc: NetlistDoc) -> Netlist:
    return from_json_dict(doc.model_dump(by_alias=True))


def _resolve(netlist_doc: NetlistDoc | None, spec_model: AdderSpecModel | None) -> Netlist:
    if (netlist_doc is None) == (spec_model is None):
        raise ValueError("provide exactly one of 'netlist' and 'spec'")
    if netlist_doc is not None:
        return netlist_from_doc(netlist_doc)
    return build_adder(spec_from_model(spec_model))


def build(req: BuildRequest) -> NetlistDoc:
    return doc_from_netlist(build_adder(spec_from_model(req)))


def run_eval(req: EvalRequest) -> EvalResponse:
    netlist = _resolve(req.netlist, req.spec)
    width, _ = adder_shape(netlist)
    s, cout = eval_adder(netlist, req.a, req.b, req.cin)
    taps = eval_adder_taps(netlist, req.a, req.b, req.cin) if req.taps else None
    return EvalResponse(
        width=width, s=s, cout=cout, s_binary=f"0b{s:0{width}b}", taps=taps
    )


def run_verify(req: VerifyRequest) -> VerifyResponse:
    netlist = _resolve(req.netlist, req.spec)
    report = verify_against_oracle(netlist, req.mode, req.samples, req.seed, req.jobs)
    return VerifyResponse(**report.to_json_dict(), passed=report.passed)


def run_compare(req: CompareRequest) -> CompareResponse:
    specs = [spec_from_model(model) for model in req.specs]
    return CompareResponse(format=req.format, table=compare_table(specs, req.format))


def run_export(req: ExportRequest) -> ExportResponse:
    netlist = netlist_from_doc(req.netlist)
    text = to_dot(netlist) if req.format == "dot" else to_json(netlist)
    return ExportResponse(format=req.format, text=text)
