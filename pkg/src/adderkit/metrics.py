"""Comparative cost and depth tables across adder families.

Depth figures are always taken after fan-in-2 normalization, because
"logic levels" only mean something under a two-input-gate cost model;
gate counts and fan-in figures describe the raw netlist as built, where
a sum-of-products term is one wide gate. ``or_terms_widest`` (the widest
OR as built) is reported so the reader can compare term counts between
families without the table taking a position on how terms are counted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .builders import LING_FAMILIES, build_adder
from .netlist import AdderSpec, GateKind, decompose_fanin2, depth_profile

COLUMNS = (
    "family",
    "width",
    "sum_form",
    "gates_total",
    "depth_cout",
    "depth_carry_signal",
    "max_fanin_raw",
    "or_terms_widest",
)


@dataclass(frozen=True)
class ComparisonRow:
    """One family/width data point.

    ``depth_carry_signal`` is the level of the top carry tap: c[w-1] for
    ripple/lookahead families, H[w-1] for Ling families (the net whose
    arrival actually gates the sum logic).
    """

    family: str
    width: int
    sum_form: str
    gates_total: int
    gates_by_kind: dict[str, int]
    depth_cout: int
    depth_carry_signal: int
    max_fanin_raw: int
    or_terms_widest: int

    def cells(self) -> list[str]:
        return [str(getattr(self, col)) for col in COLUMNS]

    def to_json_dict(self) -> dict:
        doc = {col: getattr(self, col) for col in COLUMNS}
        doc["gates_by_kind"] = dict(self.gates_by_kind)
        return doc


def analyze(spec: AdderSpec) -> ComparisonRow:
    """Build one adder, normalize it, and extract its comparison row."""
    netlist = build_adder(spec)
    raw = depth_profile(netlist)
    or_widest = max(
        (len(g.inputs) for g in netlist.gates if g.kind is GateKind.OR), default=0
    )
    norm = depth_profile(decompose_fanin2(netlist))
    carry_role = (
        f"H[{spec.width - 1}]" if spec.family in LING_FAMILIES else f"c[{spec.width - 1}]"
    )
    return ComparisonRow(
        family=spec.family,
        width=spec.width,
        sum_form=spec.sum_form or "-",
        gates_total=raw.total_gates,
        gates_by_kind={k.value: n for k, n in raw.gate_counts.items()},
        depth_cout=norm.depth_per_output["cout"],
        depth_carry_signal=norm.depth_per_tap[carry_role],
        max_fanin_raw=raw.max_fanin,
        or_terms_widest=or_widest,
    )


def compare(specs: list[AdderSpec], fmt: str = "markdown") -> str:
    """Render one row per spec, in the given order."""
    if not specs:
        raise ValueError("compare needs at least one adder spec")
    rows = [analyze(spec) for spec in specs]
    if fmt == "markdown":
        lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "|".join(" --- " for _ in COLUMNS) + "|"]
        lines += ["| " + " | ".join(row.cells()) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        lines = [",".join(COLUMNS)] + [",".join(row.cells()) for row in rows]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps([row.to_json_dict() for row in rows], indent=2)
    raise ValueError(f"format must be markdown, csv or json, got {fmt!r}")
