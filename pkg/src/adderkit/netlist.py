"""Gate-level combinational netlists.

A :class:`Netlist` is an immutable DAG of gates with dense integer ids.
Every gate's inputs reference strictly smaller ids, so the gate list is
already in topological order and evaluation is a single forward pass with
no cycle detection.

Multi-input AND/OR/XOR gates are allowed at build time (convenient for
sum-of-products carry equations); :func:`decompose_fanin2` rewrites them
into balanced trees of two-input gates, which is the cost model used for
logic-depth claims.

Adder netlists label their nets with the usual adder vocabulary, LSB
first: generate ``g[i] = a&b``, propagate ``p[i] = a|b`` (inclusive OR),
half-sum ``d[i] = a^b``, carries ``c[i]``, Ling pseudo-carries ``H[i]``,
pairwise Ling terms ``Gs[i]``/``Ps[i]``, sums ``s[i]`` and ``cout``.
These labels live in ``Netlist.taps`` so verification and depth analysis
can observe internal nets without knowing how a netlist was built.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping, Sequence


class GateKind(str, Enum):
    INPUT = "INPUT"
    CONST0 = "CONST0"
    CONST1 = "CONST1"
    NOT = "NOT"
    AND = "AND"
    OR = "OR"
    XOR = "XOR"


# (min_inputs, max_inputs); None means unbounded
_ARITY: dict[GateKind, tuple[int, int | None]] = {
    GateKind.INPUT: (0, 0),
    GateKind.CONST0: (0, 0),
    GateKind.CONST1: (0, 0),
    GateKind.NOT: (1, 1),
    GateKind.AND: (2, None),
    GateKind.OR: (2, None),
    GateKind.XOR: (2, None),
}


@dataclass(frozen=True)
class Gate:
    """One node of the DAG. ``gid`` is the dense index into Netlist.gates."""

    gid: int
    kind: GateKind
    inputs: tuple[int, ...]
    name: str | None = None


@dataclass(frozen=True)
class AdderSpec:
    """Recipe describing which adder a netlist realizes.

    ``family`` is one of rca, cla-flat, ling4, ling-flat, cla-grouped,
    ling-grouped. ``group_size`` applies to grouped families only and
    ``sum_form`` ("xor" or "mux") to Ling families only.
    """

    family: str
    width: int
    group_size: int | None = None
    has_cin: bool = False
    sum_form: str | None = None


@dataclass(frozen=True)
class Netlist:
    """Immutable gate DAG with named primary I/O and role-labelled taps.

    Primary inputs are ordered a bits LSB-first, b bits LSB-first, then
    the optional carry-in. Primary outputs are the sum bits LSB-first
    followed by ``cout`` when present. ``taps`` maps role labels such as
    ``"H[3]"`` or ``"cout"`` to gate ids; several roles may share an id.
    """

    gates: tuple[Gate, ...]
    primary_inputs: tuple[int, ...]
    sum_outputs: tuple[int, ...]
    cout: int | None
    taps: dict[str, int] = field(default_factory=dict)
    meta: AdderSpec | None = None

    @property
    def primary_outputs(self) -> tuple[int, ...]:
        if self.cout is None:
            return self.sum_outputs
        return self.sum_outputs + (self.cout,)

    def input_names(self) -> list[str | None]:
        return [self.gates[i].name for i in self.primary_inputs]

    def output_roles(self) -> list[str]:
        roles = [f"s[{i}]" for i in range(len(self.sum_outputs))]
        if self.cout is not None:
            roles.append("cout")
        return roles


class NetlistBuilder:
    """Append-only construction of a Netlist.

    ``add`` enforces the arity rules and the inputs-precede-gate id
    ordering, which is what makes the finished netlist acyclic by
    construction.
    """

    def __init__(self) -> None:
        self._gates: list[Gate] = []
        self._primary_inputs: list[int] = []
        self._taps: dict[str, int] = {}
        self._consts: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._gates)

    def add(self, kind: GateKind | str, inputs: Iterable[int] = (), name: str | None = None) -> int:
        kind = GateKind(kind)
        ins = tuple(inputs)
        lo, hi = _ARITY[kind]
        if len(ins) < lo or (hi is not None and len(ins) > hi):
            raise ValueError(f"{kind.value} gate takes {lo}{'' if hi == lo else '+'} inputs, got {len(ins)}")
        gid = len(self._gates)
        for src in ins:
            if not 0 <= src < gid:
                raise ValueError(f"unknown input id {src} for gate {gid}")
        self._gates.append(Gate(gid, kind, ins, name))
        return gid

    def add_input(self, name: str | None = None) -> int:
        gid = self.add(GateKind.INPUT, (), name)
        self._primary_inputs.append(gid)
        return gid

    def const(self, value: int) -> int:
        """Constant-0 or constant-1 net, deduplicated per builder."""
        if value not in (0, 1):
            raise ValueError(f"constant must be 0 or 1, got {value}")
        if value not in self._consts:
            kind = GateKind.CONST1 if value else GateKind.CONST0
            self._consts[value] = self.add(kind)
        return self._consts[value]

    def tap(self, role: str, gid: int) -> int:
        if not 0 <= gid < len(self._gates):
            raise ValueError(f"tap {role!r} references unknown id {gid}")
        self._taps[role] = gid
        return gid

    def finish(self, sum_outputs: Sequence[int], cout: int | None, meta: AdderSpec | None = None) -> Netlist:
        for gid in list(sum_outputs) + ([cout] if cout is not None else []):
            if not 0 <= gid < len(self._gates):
                raise ValueError(f"output references unknown id {gid}")
        return Netlist(
            gates=tuple(self._gates),
            primary_inputs=tuple(self._primary_inputs),
            sum_outputs=tuple(sum_outputs),
            cout=cout,
            taps=dict(self._taps),
            meta=meta,
        )


# ---------------------------------------------------------------------------
# evaluation


def _input_bits(netlist: Netlist, assignment: Sequence[int] | Mapping[str, int]) -> list[int]:
    n = len(netlist.primary_inputs)
    if isinstance(assignment, Mapping):
        names = netlist.input_names()
        if any(name is None for name in names):
            raise ValueError("netlist has unnamed inputs, use a positional assignment")
        missing = [n_ for n_ in names if n_ not in assignment]
        extra = [k for k in assignment if k not in names]
        if missing or extra:
            raise ValueError(f"assignment mismatch: missing {missing}, extra {extra}")
        bits = [assignment[name] for name in names]  # type: ignore[index]
    else:
        bits = list(assignment)
        if len(bits) != n:
            raise ValueError(f"assignment has {len(bits)} bits, netlist has {n} inputs")
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"input bits must be 0 or 1, got {b!r}")
    return bits


def _forward(netlist: Netlist, bits: list[int]) -> list[int]:
    values = [0] * len(netlist.gates)
    feed = {gid: bits[pos] for pos, gid in enumerate(netlist.primary_inputs)}
    for gate in netlist.gates:
        k = gate.kind
        if k is GateKind.INPUT:
            values[gate.gid] = feed[gate.gid]
        elif k is GateKind.CONST0:
            values[gate.gid] = 0
        elif k is GateKind.CONST1:
            values[gate.gid] = 1
        elif k is GateKind.NOT:
            values[gate.gid] = 1 - values[gate.inputs[0]]
        elif k is GateKind.AND:
            v = 1
            for src in gate.inputs:
                v &= values[src]
            values[gate.gid] = v
        elif k is GateKind.OR:
            v = 0
            for src in gate.inputs:
                v |= values[src]
            values[gate.gid] = v
        else:  # XOR folds associatively: parity of the inputs
            v = 0
            for src in gate.inputs:
                v ^= values[src]
            values[gate.gid] = v
    return values


def evaluate(netlist: Netlist, assignment: Sequence[int] | Mapping[str, int]) -> list[int]:
    """Pure combinational evaluation; returns bits per primary output."""
    values = _forward(netlist, _input_bits(netlist, assignment))
    return [values[gid] for gid in netlist.primary_outputs]


def evaluate_taps(netlist: Netlist, assignment: Sequence[int] | Mapping[str, int]) -> dict[str, int]:
    """Like :func:`evaluate` but returns the value of every tapped net."""
    values = _forward(netlist, _input_bits(netlist, assignment))
    return {role: values[gid] for role, gid in netlist.taps.items()}


def evaluate_packed(netlist: Netlist, input_words: Sequence[int], mask: int) -> list[int]:
    """Bit-parallel evaluation of many vectors at once.

    ``input_words[j]`` holds the value of primary input j across all
    vectors: bit k of the word is input j's value on vector k. ``mask``
    has one bit per vector. Returns one word per gate; index by gate id
    (outputs and taps are looked up by their ids).
    """
    if len(input_words) != len(netlist.primary_inputs):
        raise ValueError(
            f"got {len(input_words)} input words, netlist has {len(netlist.primary_inputs)} inputs"
        )
    words = [0] * len(netlist.gates)
    feed = {gid: input_words[pos] & mask for pos, gid in enumerate(netlist.primary_inputs)}
    for gate in netlist.gates:
        k = gate.kind
        if k is GateKind.INPUT:
            words[gate.gid] = feed[gate.gid]
        elif k is GateKind.CONST0:
            words[gate.gid] = 0
        elif k is GateKind.CONST1:
            words[gate.gid] = mask
        elif k is GateKind.NOT:
            words[gate.gid] = words[gate.inputs[0]] ^ mask
        elif k is GateKind.AND:
            v = mask
            for src in gate.inputs:
                v &= words[src]
            words[gate.gid] = v
        elif k is GateKind.OR:
            v = 0
            for src in gate.inputs:
                v |= words[src]
            words[gate.gid] = v
        else:
            v = 0
            for src in gate.inputs:
                v ^= words[src]
            words[gate.gid] = v
    return words


# ---------------------------------------------------------------------------
# adder-shaped conveniences


def adder_shape(netlist: Netlist) -> tuple[int, bool]:
    """(width, has_cin) of an adder-shaped netlist, else ValueError."""
    width = len(netlist.sum_outputs)
    if netlist.meta is not None and netlist.meta.width != width:
        raise ValueError(
            f"meta width {netlist.meta.width} disagrees with {width} sum outputs"
        )
    n_in = len(netlist.primary_inputs)
    if width < 1 or netlist.cout is None or n_in not in (2 * width, 2 * width + 1):
        raise ValueError("netlist is not adder-shaped (w sum bits, cout, 2w(+1) inputs)")
    return width, n_in == 2 * width + 1


def operand_assignment(netlist: Netlist, a: int, b: int, cin: int | None = None) -> list[int]:
    """Positional assignment for operand values (LSB-first packing)."""
    width, has_cin = adder_shape(netlist)
    for label, val in (("a", a), ("b", b)):
        if not 0 <= val < (1 << width):
            raise ValueError(f"operand {label}={val} exceeds width {width}")
    bits = [(a >> i) & 1 for i in range(width)] + [(b >> i) & 1 for i in range(width)]
    if has_cin:
        if cin not in (0, 1):
            raise ValueError("netlist has a carry-in input, pass cin=0 or cin=1")
        bits.append(cin)
    elif cin not in (None, 0):
        raise ValueError("netlist has no carry-in input")
    return bits


def eval_adder(netlist: Netlist, a: int, b: int, cin: int | None = None) -> tuple[int, int]:
    """Evaluate an adder netlist on integer operands, returns (sum, cout)."""
    values = _forward(netlist, operand_assignment(netlist, a, b, cin))
    s = 0
    for i, gid in enumerate(netlist.sum_outputs):
        s |= values[gid] << i
    return s, values[netlist.cout]  # type: ignore[index]


def eval_adder_taps(netlist: Netlist, a: int, b: int, cin: int | None = None) -> dict[str, int]:
    values = _forward(netlist, operand_assignment(netlist, a, b, cin))
    return {role: values[gid] for role, gid in netlist.taps.items()}


# ---------------------------------------------------------------------------
# fan-in-2 normalization


def _balanced_tree(builder: NetlistBuilder, kind: GateKind, ids: Sequence[int], name: str | None) -> int:
    # pair left-to-right at each tree level; an odd leftover passes through
    level = list(ids)
    while len(level) > 2:
        nxt = [builder.add(kind, (level[i], level[i + 1])) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return builder.add(kind, tuple(level), name)


def decompose_fanin2(netlist: Netlist) -> Netlist:
    """Rewrite every multi-input AND/OR/XOR into a balanced two-input tree.

    Deterministic (left-to-right pairing), preserves primary I/O order,
    tap roles and the Boolean function of every output and tap.
    """
    builder = NetlistBuilder()
    old2new: dict[int, int] = {}
    for gate in netlist.gates:
        if gate.kind is GateKind.INPUT:
            nid = builder.add_input(gate.name)
        elif gate.kind in (GateKind.CONST0, GateKind.CONST1):
            nid = builder.add(gate.kind, (), gate.name)
        else:
            ins = tuple(old2new[src] for src in gate.inputs)
            if len(ins) <= 2:
                nid = builder.add(gate.kind, ins, gate.name)
            else:
                nid = _balanced_tree(builder, gate.kind, ins, gate.name)
        old2new[gate.gid] = nid
    for role, gid in netlist.taps.items():
        builder.tap(role, old2new[gid])
    return builder.finish(
        [old2new[gid] for gid in netlist.sum_outputs],
        None if netlist.cout is None else old2new[netlist.cout],
        netlist.meta,
    )


# ---------------------------------------------------------------------------
# structural metrics


@dataclass(frozen=True)
class Metrics:
    """Structural cost figures for one netlist.

    Depth counts every gate (NOT included) as one level with primary
    inputs and constants at level 0. ``total_gates`` excludes INPUT and
    CONST nodes. ``wire_count`` is the number of input edges.
    """

    gate_counts: dict[GateKind, int]
    total_gates: int
    depth_per_output: dict[str, int]
    depth_per_tap: dict[str, int]
    max_depth: int
    max_fanin: int
    wire_count: int


def gate_levels(netlist: Netlist) -> list[int]:
    """Logic level of every gate: inputs/constants 0, else 1 + max(inputs)."""
    levels = [0] * len(netlist.gates)
    for gate in netlist.gates:
        if gate.inputs:
            levels[gate.gid] = 1 + max(levels[src] for src in gate.inputs)
    return levels


def depth_profile(netlist: Netlist) -> Metrics:
    levels = gate_levels(netlist)
    counts: dict[GateKind, int] = {}
    for gate in netlist.gates:
        counts[gate.kind] = counts.get(gate.kind, 0) + 1
    total = sum(
        n for k, n in counts.items() if k not in (GateKind.INPUT, GateKind.CONST0, GateKind.CONST1)
    )
    per_output = {
        role: levels[gid] for role, gid in zip(netlist.output_roles(), netlist.primary_outputs)
    }
    per_tap = {role: levels[gid] for role, gid in netlist.taps.items()}
    return Metrics(
        gate_counts=counts,
        total_gates=total,
        depth_per_output=per_output,
        depth_per_tap=per_tap,
        max_depth=max(per_output.values(), default=0),
        max_fanin=max((len(g.inputs) for g in netlist.gates), default=0),
        wire_count=sum(len(g.inputs) for g in netlist.gates),
    )


# ---------------------------------------------------------------------------
# serialization

_KIND_FROM_STR = {k.value: k for k in GateKind}


def to_json_dict(netlist: Netlist) -> dict:
    meta = netlist.meta
    doc: dict = {
        "width": meta.width if meta else None,
        "cin": meta.has_cin if meta else None,
        "family": meta.family if meta else None,
    }
    if meta and meta.group_size is not None:
        doc["group_size"] = meta.group_size
    if meta and meta.sum_form is not None:
        doc["sum_form"] = meta.sum_form
    doc["inputs"] = [
        {"id": gid, "name": netlist.gates[gid].name} for gid in netlist.primary_inputs
    ]
    nodes = []
    for gate in netlist.gates:
        if gate.kind is GateKind.INPUT:
            continue
        node: dict = {"id": gate.gid, "kind": gate.kind.value, "in": list(gate.inputs)}
        if gate.name is not None:
            node["name"] = gate.name
        nodes.append(node)
    doc["nodes"] = nodes
    doc["outputs"] = {"s": list(netlist.sum_outputs), "cout": netlist.cout}
    doc["taps"] = dict(netlist.taps)
    return doc


def from_json_dict(doc: Mapping) -> Netlist:
    entries: list[tuple[int, Gate]] = []
    inputs_order: list[int] = []
    for item in doc.get("inputs", []):
        gid = item["id"]
        inputs_order.append(gid)
        entries.append((gid, Gate(gid, GateKind.INPUT, (), item.get("name"))))
    for item in doc.get("nodes", []):
        gid = item["id"]
        kind = _KIND_FROM_STR.get(item["kind"])
        if kind is None or kind is GateKind.INPUT:
            raise ValueError(f"bad gate kind {item.get('kind')!r} for node {gid}")
        entries.append((gid, Gate(gid, kind, tuple(item["in"]), item.get("name"))))
    entries.sort(key=lambda e: e[0])
    ids = [gid for gid, _ in entries]
    if ids != list(range(len(ids))):
        raise ValueError("gate ids are not dense 0..n-1")
    gates = tuple(g for _, g in entries)
    for gate in gates:
        lo, hi = _ARITY[gate.kind]
        if len(gate.inputs) < lo or (hi is not None and len(gate.inputs) > hi):
            raise ValueError(f"gate {gate.gid}: bad arity for {gate.kind.value}")
        if any(not 0 <= src < gate.gid for src in gate.inputs):
            raise ValueError(f"gate {gate.gid}: input id out of range")
    outputs = doc.get("outputs", {})
    sum_ids = tuple(outputs.get("s", []))
    cout = outputs.get("cout")
    taps = dict(doc.get("taps", {}))
    n = len(gates)
    for gid in list(sum_ids) + ([cout] if cout is not None else []) + list(taps.values()):
        if not 0 <= gid < n:
            raise ValueError(f"output/tap references unknown id {gid}")
    meta = None
    if doc.get("family") is not None:
        meta = AdderSpec(
            family=doc["family"],
            width=doc["width"],
            group_size=doc.get("group_size"),
            has_cin=bool(doc.get("cin")),
            sum_form=doc.get("sum_form"),
        )
    return Netlist(gates, tuple(inputs_order), sum_ids, cout, taps, meta)


def to_json(netlist: Netlist, indent: int | None = 2) -> str:
    return json.dumps(to_json_dict(netlist), indent=indent)


def from_json(text: str) -> Netlist:
    return from_json_dict(json.loads(text))


def to_dot(netlist: Netlist, graph_name: str = "netlist") -> str:
    """GraphViz digraph: one node per gate, one edge per input reference."""
    lines = [f"digraph {graph_name} {{"]
    for gate in netlist.gates:
        label = gate.kind.value if gate.name is None else f"{gate.kind.value}\\n{gate.name}"
        lines.append(f'  n{gate.gid} [label="{label}"];')
    for gate in netlist.gates:
        for src in gate.inputs:
            lines.append(f"  n{src} -> n{gate.gid};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def stuck_output(netlist: Netlist, role: str, value: int) -> Netlist:
    """Copy of the netlist with one output/tap net forced to a constant.

    Used as a fault-injection probe to check that verification sweeps
    actually observe each output.
    """
    if value not in (0, 1):
        raise ValueError("stuck value must be 0 or 1")
    kind = GateKind.CONST1 if value else GateKind.CONST0
    const = Gate(len(netlist.gates), kind, (), None)
    gates = netlist.gates + (const,)
    sum_outputs = list(netlist.sum_outputs)
    cout = netlist.cout
    taps = dict(netlist.taps)
    hit = False
    if role == "cout" and cout is not None:
        cout = const.gid
        hit = True
    else:
        for i in range(len(sum_outputs)):
            if role == f"s[{i}]":
                sum_outputs[i] = const.gid
                hit = True
    if role in taps:
        taps[role] = const.gid
        hit = True
    if not hit:
        raise ValueError(f"no output or tap named {role!r}")
    return replace(
        netlist, gates=gates, sum_outputs=tuple(sum_outputs), cout=cout, taps=taps
    )
