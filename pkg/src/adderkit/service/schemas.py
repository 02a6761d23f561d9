"""Pydantic request/response models for the service endpoints.

``NetlistDoc`` mirrors the on-disk JSON netlist schema one-to-one, so a
document built by the service round-trips through files, the CLI and the
core codec without translation.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

Family = Literal["rca", "cla-flat", "ling4", "ling-flat", "cla-grouped", "ling-grouped"]
SumForm = Literal["xor", "mux"]


class AdderSpecModel(BaseModel):
    family: Family = "ling4"
    width: int = 4
    group_size: int | None = None
    cin: bool = False
    sum_form: SumForm | None = None


class InputPortModel(BaseModel):
    id: int
    name: str | None = None


class NodeModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: int
    kind: str
    inputs: list[int] = Field(default_factory=list, alias="in")
    name: str | None = None


class OutputsModel(BaseModel):
    s: list[int] = Field(default_factory=list)
    cout: int | None = None


class NetlistDoc(BaseModel):
    width: int | None = None
    cin: bool | None = None
    family: str | None = None
    group_size: int | None = None
    sum_form: str | None = None
    inputs: list[InputPortModel] = Field(default_factory=list)
    nodes: list[NodeModel] = Field(default_factory=list)
    outputs: OutputsModel = Field(default_factory=OutputsModel)
    taps: dict[str, int] = Field(default_factory=dict)


class BuildRequest(AdderSpecModel):
    pass


class EvalRequest(BaseModel):
    netlist: NetlistDoc | None = None
    spec: AdderSpecModel | None = None
    a: int
    b: int
    cin: Literal[0, 1] | None = None
    taps: bool = False

    @model_validator(mode="after")
    def _one_source(self) -> "EvalRequest":
        if (self.netlist is None) == (self.spec is None):
            raise ValueError("provide exactly one of 'netlist' and 'spec'")
        return self


class EvalResponse(BaseModel):
    width: int
    s: int
    cout: int
    s_binary: str
    taps: dict[str, int] | None = None


class VerifyRequest(BaseModel):
    netlist: NetlistDoc | None = None
    spec: AdderSpecModel | None = None
    mode: Literal["exhaustive", "random"] = "exhaustive"
    samples: int = 100_000
    seed: int = 0
    jobs: int = 1

    @model_validator(mode="after")
    def _one_source(self) -> "VerifyRequest":
        if (self.netlist is None) == (self.spec is None):
            raise ValueError("provide exactly one of 'netlist' and 'spec'")
        return self


class FailureModel(BaseModel):
    a: int
    b: int
    cin: int
    expected: list[int]
    actual: list[int]
    identity: str | None = None


class VerifyResponse(BaseModel):
    mode: str
    vectors_tested: int
    failures: list[FailureModel]
    seed: int | None
    passed: bool


class CompareRequest(BaseModel):
    specs: list[AdderSpecModel]
    format: Literal["markdown", "csv", "json"] = "markdown"


class CompareResponse(BaseModel):
    format: str
    table: str


class ExportRequest(BaseModel):
    netlist: NetlistDoc
    format: Literal["dot", "json"] = "dot"


class ExportResponse(BaseModel):
    format: str
    text: str
