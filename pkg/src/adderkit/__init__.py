"""Gate-level toolkit for binary adders.

Builds ripple-carry, carry-lookahead and Ling adder netlists, simulates
them, verifies them exhaustively (or randomly) against integer addition,
and measures two-input-gate logic depth and structural cost.
"""

__version__ = "0.1.0"

from .builders import (
    FAMILIES,
    FLAT_WIDTH_CAP,
    bit_prepare,
    build_adder,
    build_cla_flat,
    build_grouped,
    build_ling4,
    build_ling_flat,
    build_rca,
    make_spec,
)
from .metrics import ComparisonRow, analyze, compare
from .netlist import (
    AdderSpec,
    Gate,
    GateKind,
    Metrics,
    Netlist,
    NetlistBuilder,
    adder_shape,
    decompose_fanin2,
    depth_profile,
    eval_adder,
    eval_adder_taps,
    evaluate,
    evaluate_packed,
    evaluate_taps,
    from_json,
    from_json_dict,
    stuck_output,
    to_dot,
    to_json,
    to_json_dict,
)
from .verify import (
    EXHAUSTIVE_INPUT_BIT_CAP,
    VerifyFailure,
    VerifyReport,
    check_ling_identities,
    check_ling_identities_netlist,
    corner_vectors,
    equivalence_check,
    random_vectors,
    verify_against_oracle,
)

__all__ = [
    "AdderSpec",
    "ComparisonRow",
    "EXHAUSTIVE_INPUT_BIT_CAP",
    "FAMILIES",
    "FLAT_WIDTH_CAP",
    "Gate",
    "GateKind",
    "Metrics",
    "Netlist",
    "NetlistBuilder",
    "VerifyFailure",
    "VerifyReport",
    "adder_shape",
    "analyze",
    "bit_prepare",
    "build_adder",
    "build_cla_flat",
    "build_grouped",
    "build_ling4",
    "build_ling_flat",
    "build_rca",
    "check_ling_identities",
    "check_ling_identities_netlist",
    "compare",
    "corner_vectors",
    "decompose_fanin2",
    "depth_profile",
    "equivalence_check",
    "eval_adder",
    "eval_adder_taps",
    "evaluate",
    "evaluate_packed",
    "evaluate_taps",
    "from_json",
    "from_json_dict",
    "make_spec",
    "random_vectors",
    "stuck_output",
    "to_dot",
    "to_json",
    "to_json_dict",
    "verify_against_oracle",
]
