"""Builders for ripple-carry, carry-lookahead and Ling adder netlists.

All builders share the same conventions:

* bit order is LSB-first: index i carries weight 2**i;
* per-bit preparation nets are generate ``g = a&b``, propagate
  ``p = a|b`` (inclusive OR, so g implies p) and half-sum ``d = a^b``;
* carries ``c[i]`` are the carry *out* of position i, with ``c[-1]``
  being the external carry-in (constant 0 when absent);
* the Ling pseudo-carry is ``H[i] = c[i] | c[i-1]``, recovered through
  ``c[i] = p[i] & H[i]``, which is what makes H one gate level cheaper
  to produce than c itself.

Flat builders realize each carry (or pseudo-carry) as a two-level
sum-of-products using multi-input gates; grouped builders chain flat
blocks by rippling each block's carry-out into the next block's
carry-in. ``build_ling4`` instead uses the pairwise factoring
``Gs[i] = g[i]|g[i-1]``, ``Ps[i] = p[i]&p[i-1]`` with the recurrence
``H[i] = Gs[i] | (Ps[i-1] & H[i-2])``, the form that reaches H in four
two-input gate levels at width 4.

A carry-in is injected into Ling blocks through a synthetic position -1
with ``g[-1] = cin`` and ``p[-1] = 1`` (so ``H[-1] = cin``); grounding
both to 0, as the plain 4-bit design does, is the cin-free special case.
"""

from __future__ import annotations

from .netlist import AdderSpec, GateKind, Netlist, NetlistBuilder

FAMILIES = ("rca", "cla-flat", "ling4", "ling-flat", "cla-grouped", "ling-grouped")
LING_FAMILIES = ("ling4", "ling-flat", "ling-grouped")
GROUPED_FAMILIES = ("cla-grouped", "ling-grouped")
SUM_FORMS = ("xor", "mux")

# Flat sum-of-products carries grow one OR term and one product literal per
# bit; 16 keeps the widest gate at 17 inputs.
FLAT_WIDTH_CAP = 16


def make_spec(
    family: str,
    width: int | None = None,
    group_size: int | None = None,
    has_cin: bool = False,
    sum_form: str | None = None,
) -> AdderSpec:
    """Fill in family-appropriate defaults and validate."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}, expected one of {', '.join(FAMILIES)}")
    if width is None:
        width = 4
    if family in GROUPED_FAMILIES and group_size is None:
        group_size = 4
    if family not in GROUPED_FAMILIES:
        group_size = None
    if family in LING_FAMILIES:
        sum_form = sum_form or "xor"
    else:
        sum_form = None
    spec = AdderSpec(family, width, group_size, has_cin, sum_form)
    validate_spec(spec)
    return spec


def validate_spec(spec: AdderSpec) -> None:
    if spec.family not in FAMILIES:
        raise ValueError(f"unknown family {spec.family!r}")
    if spec.width < 1:
        raise ValueError(f"width must be >= 1, got {spec.width}")
    if spec.family == "ling4" and spec.width != 4:
        raise ValueError("ling4 is the fixed 4-bit design; use ling-flat for other widths")
    if spec.family in ("cla-flat", "ling-flat") and spec.width > FLAT_WIDTH_CAP:
        raise ValueError(f"flat builders are capped at width {FLAT_WIDTH_CAP}, got {spec.width}")
    if spec.family in GROUPED_FAMILIES:
        gs = spec.group_size
        if gs is None or gs < 1 or gs > FLAT_WIDTH_CAP:
            raise ValueError(f"group_size must be in 1..{FLAT_WIDTH_CAP}, got {gs}")
        if spec.width % gs != 0:
            raise ValueError(f"width {spec.width} is not a multiple of group_size {gs}")
    if spec.family in LING_FAMILIES and spec.sum_form not in SUM_FORMS:
        raise ValueError(f"sum_form must be one of {SUM_FORMS}, got {spec.sum_form!r}")


def build_adder(spec: AdderSpec) -> Netlist:
    """Build the netlist described by an AdderSpec."""
    validate_spec(spec)
    if spec.family == "rca":
        return build_rca(spec.width, spec.has_cin)
    if spec.family == "cla-flat":
        return build_cla_flat(spec.width, spec.has_cin)
    if spec.family == "ling4":
        return build_ling4(spec.has_cin, spec.sum_form or "xor")
    if spec.family == "ling-flat":
        return build_ling_flat(spec.width, spec.has_cin, spec.sum_form or "xor")
    kind = "cla" if spec.family == "cla-grouped" else "ling"
    return build_grouped(kind, spec.width, spec.group_size or 4, spec.has_cin, spec.sum_form or "xor")


# ---------------------------------------------------------------------------
# shared pieces


def bit_prepare(builder: NetlistBuilder, a_id: int, b_id: int, index: int) -> tuple[int, int, int]:
    """Generate/propagate/half-sum nets for one bit position, tapped."""
    g = builder.add(GateKind.AND, (a_id, b_id), f"g[{index}]")
    p = builder.add(GateKind.OR, (a_id, b_id), f"p[{index}]")
    d = builder.add(GateKind.XOR, (a_id, b_id), f"d[{index}]")
    builder.tap(f"g[{index}]", g)
    builder.tap(f"p[{index}]", p)
    builder.tap(f"d[{index}]", d)
    return g, p, d


def _operand_inputs(builder: NetlistBuilder, width: int, has_cin: bool):
    a_ids = [builder.add_input(f"a{i}") for i in range(width)]
    b_ids = [builder.add_input(f"b{i}") for i in range(width)]
    cin = builder.add_input("cin") if has_cin else None
    return a_ids, b_ids, cin


def _prepare_all(builder: NetlistBuilder, a_ids, b_ids):
    g, p, d = [], [], []
    for i, (ai, bi) in enumerate(zip(a_ids, b_ids)):
        gi, pi, di = bit_prepare(builder, ai, bi, i)
        g.append(gi)
        p.append(pi)
        d.append(di)
    return g, p, d


def _product(builder: NetlistBuilder, ids: list[int]) -> int:
    return ids[0] if len(ids) == 1 else builder.add(GateKind.AND, ids)


def _sum_terms(builder: NetlistBuilder, terms: list[int], name: str) -> int:
    return terms[0] if len(terms) == 1 else builder.add(GateKind.OR, terms, name)


def _flat_cla_carries(builder: NetlistBuilder, g, p, cin: int | None, base: int) -> list[int]:
    """Two-level lookahead: c[i] = g[i] + p[i]g[i-1] + ... (+ p[i]..p[0]cin)."""
    carries = []
    for i in range(len(g)):
        terms = [g[i]]
        for j in range(i - 1, -1, -1):
            terms.append(_product(builder, [p[k] for k in range(i, j, -1)] + [g[j]]))
        if cin is not None:
            terms.append(_product(builder, [p[k] for k in range(i, -1, -1)] + [cin]))
        ci = _sum_terms(builder, terms, f"c[{base + i}]")
        builder.tap(f"c[{base + i}]", ci)
        carries.append(ci)
    return carries


def _flat_ling_carries(builder: NetlistBuilder, g, p, cin: int | None, base: int):
    """Two-level pseudo-carries H[i] = g[i] + g[i-1] + p[i-1]g[i-2] + ...

    The product for g[j] runs over p[i-1]..p[j+1] only (one propagate
    shorter than the lookahead form, thanks to g[i] <= p[i] absorption);
    the optional carry-in term is p[i-1]..p[0]*cin. True carries are
    recovered as c[i] = p[i] & H[i].
    """
    hs, carries = [], []
    for i in range(len(g)):
        terms = [g[i]]
        if i >= 1:
            terms.append(g[i - 1])
        for j in range(i - 2, -1, -1):
            terms.append(_product(builder, [p[k] for k in range(i - 1, j, -1)] + [g[j]]))
        if cin is not None:
            terms.append(_product(builder, [p[k] for k in range(i - 1, -1, -1)] + [cin]))
        hi = _sum_terms(builder, terms, f"H[{base + i}]")
        builder.tap(f"H[{base + i}]", hi)
        ci = builder.add(GateKind.AND, (p[i], hi), f"c[{base + i}]")
        builder.tap(f"c[{base + i}]", ci)
        hs.append(hi)
        carries.append(ci)
    return hs, carries


def _xor_sums(builder: NetlistBuilder, d, carries, cin: int | None) -> list[int]:
    """s[i] = d[i] ^ c[i-1]; position 0 folds to d[0] without a carry-in."""
    sums = []
    for i in range(len(d)):
        prev = cin if i == 0 else carries[i - 1]
        if prev is None:
            si = builder.tap(f"s[{i}]", d[i])
        else:
            si = builder.add(GateKind.XOR, (d[i], prev), f"s[{i}]")
            builder.tap(f"s[{i}]", si)
        sums.append(si)
    return sums


def _ling_sums(builder: NetlistBuilder, d, p, hs, carries, cin: int | None, sum_form: str) -> list[int]:
    """Sum recombination from pseudo-carries.

    xor form: s[i] = d[i] ^ (p[i-1] & H[i-1]), reusing the c[i-1] net.
    mux form: s[i] = (~H[i-1] & d[i]) | (H[i-1] & (d[i] ^ p[i-1])), which
    selects between d[i] and d[i]^p[i-1] without waiting for the AND that
    rebuilds the true carry. At position 0 the synthetic H[-1] = cin and
    p[-1] = 1 fold to d[0] ^ cin (or plain d[0] without carry-in).
    """
    if sum_form == "xor":
        return _xor_sums(builder, d, carries, cin)
    if sum_form != "mux":
        raise ValueError(f"unknown sum_form {sum_form!r}")
    sums = []
    for i in range(len(d)):
        if i == 0:
            if cin is None:
                si = builder.tap("s[0]", d[0])
            else:
                keep = builder.add(GateKind.AND, (builder.add(GateKind.NOT, (cin,)), d[0]))
                flip = builder.add(GateKind.AND, (cin, builder.add(GateKind.NOT, (d[0],))))
                si = builder.add(GateKind.OR, (keep, flip), "s[0]")
                builder.tap("s[0]", si)
        else:
            h_prev = hs[i - 1]
            keep = builder.add(GateKind.AND, (builder.add(GateKind.NOT, (h_prev,)), d[i]))
            flip = builder.add(
                GateKind.AND, (h_prev, builder.add(GateKind.XOR, (d[i], p[i - 1])))
            )
            si = builder.add(GateKind.OR, (keep, flip), f"s[{i}]")
            builder.tap(f"s[{i}]", si)
        sums.append(si)
    return sums


# ---------------------------------------------------------------------------
# families


def build_rca(width: int, has_cin: bool = False) -> Netlist:
    """Ripple-carry chain of uniform full-adder cells.

    Each stage computes s[i] = d[i] ^ c[i-1] and c[i] = g[i] | (p[i] &
    c[i-1]); c[-1] is the carry-in input or an explicit constant-0 net.
    """
    if width < 1:
        raise ValueError(f"width must be >= 1, got {width}")
    builder = NetlistBuilder()
    a_ids, b_ids, cin = _operand_inputs(builder, width, has_cin)
    g, p, d = _prepare_all(builder, a_ids, b_ids)
    prev = cin if cin is not None else builder.const(0)
    sums = []
    for i in range(width):
        si = builder.add(GateKind.XOR, (d[i], prev), f"s[{i}]")
        builder.tap(f"s[{i}]", si)
        ripple = builder.add(GateKind.AND, (p[i], prev))
        ci = builder.add(GateKind.OR, (g[i], ripple), f"c[{i}]")
        builder.tap(f"c[{i}]", ci)
        sums.append(si)
        prev = ci
    builder.tap("cout", prev)
    return builder.finish(sums, prev, AdderSpec("rca", width, None, has_cin, None))


def build_cla_flat(width: int, has_cin: bool = False) -> Netlist:
    """Flat carry-lookahead adder: every carry as a two-level sum-of-products."""
    spec = make_spec("cla-flat", width, has_cin=has_cin)
    builder = NetlistBuilder()
    a_ids, b_ids, cin = _operand_inputs(builder, width, has_cin)
    g, p, d = _prepare_all(builder, a_ids, b_ids)
    carries = _flat_cla_carries(builder, g, p, cin, 0)
    sums = _xor_sums(builder, d, carries, cin)
    builder.tap("cout", carries[-1])
    return builder.finish(sums, carries[-1], spec)


def build_ling4(has_cin: bool = False, sum_form: str = "xor") -> Netlist:
    """The 4-bit pairwise Ling adder.

    Uses Gs[i] = g[i]|g[i-1] and Ps[i] = p[i]&p[i-1] with the recurrence
    H[i] = Gs[i] | (Ps[i-1] & H[i-2]), H[-1] = cin. Without a carry-in
    the recurrence collapses to H0 = g0, H1 = Gs1, H2 = Gs2 | Ps1&Gs0,
    H3 = Gs3 | Ps2&Gs1, leaving H[3] four two-input gate levels deep
    (one less than the flat lookahead carry).
    """
    spec = make_spec("ling4", 4, has_cin=has_cin, sum_form=sum_form)
    builder = NetlistBuilder()
    a_ids, b_ids, cin = _operand_inputs(builder, 4, has_cin)
    g, p, d = _prepare_all(builder, a_ids, b_ids)

    # pairwise terms; position -1 contributes g[-1] = cin, p[-1] = 1
    if cin is None:
        gs0 = builder.tap("Gs[0]", g[0])
    else:
        gs0 = builder.add(GateKind.OR, (g[0], cin), "Gs[0]")
        builder.tap("Gs[0]", gs0)
    gs = [gs0] + [
        builder.tap(f"Gs[{i}]", builder.add(GateKind.OR, (g[i], g[i - 1]), f"Gs[{i}]"))
        for i in range(1, 4)
    ]
    ps: dict[int, int] = {
        i: builder.tap(f"Ps[{i}]", builder.add(GateKind.AND, (p[i], p[i - 1]), f"Ps[{i}]"))
        for i in (1, 2)
    }
    if cin is not None:
        ps[0] = builder.tap("Ps[0]", p[0])

    h0 = builder.tap("H[0]", gs[0])
    if cin is None:
        h1 = builder.tap("H[1]", gs[1])
    else:
        h1 = builder.add(GateKind.OR, (gs[1], builder.add(GateKind.AND, (ps[0], cin))), "H[1]")
        builder.tap("H[1]", h1)
    h2 = builder.add(GateKind.OR, (gs[2], builder.add(GateKind.AND, (ps[1], h0))), "H[2]")
    builder.tap("H[2]", h2)
    h3 = builder.add(GateKind.OR, (gs[3], builder.add(GateKind.AND, (ps[2], h1))), "H[3]")
    builder.tap("H[3]", h3)
    hs = [h0, h1, h2, h3]

    carries = []
    for i in range(4):
        ci = builder.add(GateKind.AND, (p[i], hs[i]), f"c[{i}]")
        builder.tap(f"c[{i}]", ci)
        carries.append(ci)
    sums = _ling_sums(builder, d, p, hs, carries, cin, sum_form)
    builder.tap("cout", carries[-1])
    return builder.finish(sums, carries[-1], spec)


def build_ling_flat(width: int, has_cin: bool = False, sum_form: str = "xor") -> Netlist:
    """Flat Ling adder: every pseudo-carry as a two-level sum-of-products."""
    spec = make_spec("ling-flat", width, has_cin=has_cin, sum_form=sum_form)
    builder = NetlistBuilder()
    a_ids, b_ids, cin = _operand_inputs(builder, width, has_cin)
    g, p, d = _prepare_all(builder, a_ids, b_ids)
    hs, carries = _flat_ling_carries(builder, g, p, cin, 0)
    sums = _ling_sums(builder, d, p, hs, carries, cin, sum_form)
    builder.tap("cout", carries[-1])
    return builder.finish(sums, carries[-1], spec)


def build_grouped(
    kind: str,
    width: int,
    group_size: int = 4,
    has_cin: bool = False,
    sum_form: str = "xor",
) -> Netlist:
    """Cascade of flat blocks, each block's cout rippling into the next cin.

    ``kind`` is "cla" or "ling". Taps use global bit indices; sums are
    assembled over the global carry/pseudo-carry arrays, so a block
    boundary behaves exactly like any other position.
    """
    if kind not in ("cla", "ling"):
        raise ValueError(f"kind must be 'cla' or 'ling', got {kind!r}")
    spec = make_spec(f"{kind}-grouped", width, group_size, has_cin, sum_form)
    builder = NetlistBuilder()
    a_ids, b_ids, cin = _operand_inputs(builder, width, has_cin)
    g, p, d = _prepare_all(builder, a_ids, b_ids)
    hs: list[int] = []
    carries: list[int] = []
    block_cin = cin
    for base in range(0, width, group_size):
        gw = g[base : base + group_size]
        pw = p[base : base + group_size]
        if kind == "cla":
            carries.extend(_flat_cla_carries(builder, gw, pw, block_cin, base))
        else:
            block_hs, block_cs = _flat_ling_carries(builder, gw, pw, block_cin, base)
            hs.extend(block_hs)
            carries.extend(block_cs)
        block_cin = carries[-1]
    if kind == "cla":
        sums = _xor_sums(builder, d, carries, cin)
    else:
        sums = _ling_sums(builder, d, p, hs, carries, cin, sum_form)
    builder.tap("cout", carries[-1])
    return builder.finish(sums, carries[-1], spec)
