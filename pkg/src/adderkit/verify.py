"""Oracle-based and identity-based verification of adder netlists.

The reference for every sweep is plain integer arithmetic, never another
netlist: an adder is correct iff ``sum + 2**width * cout == a + b + cin``
for every vector, and the Ling identities are checked against carries
computed arithmetically from the operands.

Sweeps are bit-parallel: vectors are packed into big integers (bit k of a
net's word is the net's value on vector k), so an exhaustive 2**20-vector
sweep costs one pass over the gate list instead of a million. Failing
vectors are re-evaluated one at a time through the scalar evaluator when
building the report, which also cross-checks the packed path.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
import json

import numpy as np

from .builders import build_adder, make_spec
from .netlist import Netlist, adder_shape, eval_adder, eval_adder_taps, evaluate, evaluate_packed

# Exhaustive sweeps are allowed up to 2**20 vectors (~1M); beyond that use
# random mode. Surfaced by the CLI in its error messages.
EXHAUSTIVE_INPUT_BIT_CAP = 20

# Stored counterexamples are capped per report to keep reports bounded.
FAILURE_CAP = 16

_CHUNK_BITS = 16


@dataclass(frozen=True)
class VerifyFailure:
    """One counterexample vector.

    For oracle and equivalence sweeps ``expected``/``actual`` are
    (sum, cout) pairs. For identity sweeps they hold the required and
    observed bit of the named identity's left-hand side in the first
    slot, and ``identity`` says which identity broke.
    """

    a: int
    b: int
    cin: int
    expected: tuple[int, int]
    actual: tuple[int, int]
    identity: str | None = None

    def to_json_dict(self) -> dict:
        doc: dict = {
            "a": self.a,
            "b": self.b,
            "cin": self.cin,
            "expected": list(self.expected),
            "actual": list(self.actual),
        }
        if self.identity is not None:
            doc["identity"] = self.identity
        return doc


@dataclass(frozen=True)
class VerifyReport:
    mode: str
    vectors_tested: int
    failures: list[VerifyFailure] = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "vectors_tested": self.vectors_tested,
            "failures": [f.to_json_dict() for f in self.failures],
            "seed": self.seed,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


# ---------------------------------------------------------------------------
# vector generation


def corner_operands(width: int) -> list[int]:
    """0, 1, all-ones, top bit, and the two alternating patterns."""
    alternating = sum(1 << i for i in range(0, width, 2))
    vals = [0, 1, (1 << width) - 1, 1 << (width - 1), alternating, ((1 << width) - 1) ^ alternating]
    return list(dict.fromkeys(vals))


def corner_vectors(width: int, has_cin: bool) -> list[tuple[int, int, int]]:
    ops = corner_operands(width)
    cins = (0, 1) if has_cin else (0,)
    return [(a, b, c) for a in ops for b in ops for c in cins]


def random_vectors(width: int, has_cin: bool, samples: int, seed: int) -> list[tuple[int, int, int]]:
    """Corner vectors followed by seeded uniform vectors, deduplicated."""
    rng = random.Random(seed)
    vectors = corner_vectors(width, has_cin)
    for _ in range(samples):
        vectors.append(
            (rng.getrandbits(width), rng.getrandbits(width), rng.getrandbits(1) if has_cin else 0)
        )
    return list(dict.fromkeys(vectors))


# ---------------------------------------------------------------------------
# packed-plane plumbing


def _iter_set_bits(word: int):
    while word:
        lsb = word & -word
        yield lsb.bit_length() - 1
        word ^= lsb


def _chunk_plane(bit: int, lo: int, size_bits: int) -> int:
    """Truth-table plane of input ``bit`` over vectors [lo, lo + 2**size_bits).

    ``lo`` must be a multiple of the chunk size, so high input bits are
    constant across the chunk and low bits follow the canonical
    alternating pattern.
    """
    csize = 1 << size_bits
    if bit >= size_bits:
        return ((1 << csize) - 1) if (lo >> bit) & 1 else 0
    half = 1 << bit
    plane = ((1 << half) - 1) << half
    period = half << 1
    while period < csize:
        plane |= plane << period
        period <<= 1
    return plane


def _np_pack(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits.astype(np.uint8), bitorder="little").tobytes(), "little")


def _pack_column(values, bit: int) -> int:
    plane = 0
    for k, v in enumerate(values):
        plane |= ((v >> bit) & 1) << k
    return plane


def _operand_planes(a_vals, b_vals, cin_vals, width: int, has_cin: bool) -> list[int]:
    """Input planes (a bits, b bits, cin) for an explicit vector list."""
    if width <= 62:
        a_arr = np.asarray(a_vals, dtype=np.int64)
        b_arr = np.asarray(b_vals, dtype=np.int64)
        planes = [_np_pack((a_arr >> i) & 1) for i in range(width)]
        planes += [_np_pack((b_arr >> i) & 1) for i in range(width)]
        if has_cin:
            planes.append(_np_pack(np.asarray(cin_vals, dtype=np.int64) & 1))
        return planes
    planes = [_pack_column(a_vals, i) for i in range(width)]
    planes += [_pack_column(b_vals, i) for i in range(width)]
    if has_cin:
        planes.append(_pack_column(cin_vals, 0))
    return planes


def _expected_planes(a_vals, b_vals, cin_vals, width: int) -> tuple[list[int], int]:
    """Packed integer-addition results: per-sum-bit planes and the cout plane."""
    if width <= 62:
        tot = (
            np.asarray(a_vals, dtype=np.int64)
            + np.asarray(b_vals, dtype=np.int64)
            + np.asarray(cin_vals, dtype=np.int64)
        )
        return [_np_pack((tot >> i) & 1) for i in range(width)], _np_pack((tot >> width) & 1)
    tot = [a + b + c for a, b, c in zip(a_vals, b_vals, cin_vals)]
    return [_pack_column(tot, i) for i in range(width)], _pack_column(tot, width)


def _decode_vector(idx: int, width: int, has_cin: bool) -> tuple[int, int, int]:
    wmask = (1 << width) - 1
    return idx & wmask, (idx >> width) & wmask, (idx >> (2 * width)) & 1 if has_cin else 0


# ---------------------------------------------------------------------------
# oracle sweep


def _oracle_chunk(args) -> list[int]:
    netlist, lo, size_bits, nbits, width, has_cin = args
    csize = 1 << size_bits
    mask = (1 << csize) - 1
    planes = [_chunk_plane(t, lo, size_bits) for t in range(nbits)]
    words = evaluate_packed(netlist, planes, mask)
    idx = np.arange(lo, lo + csize, dtype=np.int64)
    a = idx & ((1 << width) - 1)
    b = (idx >> width) & ((1 << width) - 1)
    c = (idx >> (2 * width)) & 1 if has_cin else np.zeros(csize, dtype=np.int64)
    tot = a + b + c
    diff = 0
    for i, gid in enumerate(netlist.sum_outputs):
        diff |= words[gid] ^ _np_pack((tot >> i) & 1)
    diff |= words[netlist.cout] ^ _np_pack((tot >> width) & 1)
    return [lo + pos for pos in islice(_iter_set_bits(diff), FAILURE_CAP)]


def _vector_list_chunk(args) -> list[int]:
    netlist, vectors, offset, width, has_cin = args
    n = len(vectors)
    mask = (1 << n) - 1
    a_vals = [v[0] for v in vectors]
    b_vals = [v[1] for v in vectors]
    cin_vals = [v[2] for v in vectors]
    planes = _operand_planes(a_vals, b_vals, cin_vals, width, has_cin)
    words = evaluate_packed(netlist, planes, mask)
    s_planes, cout_plane = _expected_planes(a_vals, b_vals, cin_vals, width)
    diff = words[netlist.cout] ^ cout_plane
    for i, gid in enumerate(netlist.sum_outputs):
        diff |= words[gid] ^ s_planes[i]
    return [offset + pos for pos in _iter_set_bits(diff & mask)]


def _run_tasks(task_fn, tasks, jobs: int, stop_at: int | None = None) -> list[int]:
    hits: list[int] = []
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk_hits in pool.map(task_fn, tasks):
                hits.extend(chunk_hits)
        return hits
    for task in tasks:
        hits.extend(task_fn(task))
        if stop_at is not None and len(hits) >= stop_at:
            break
    return hits


def _oracle_failure(netlist: Netlist, a: int, b: int, cin: int, width: int, has_cin: bool) -> VerifyFailure:
    tot = a + b + cin
    actual = eval_adder(netlist, a, b, cin if has_cin else None)
    return VerifyFailure(a, b, cin, (tot & ((1 << width) - 1), tot >> width), actual)


def verify_against_oracle(
    netlist: Netlist,
    mode: str = "exhaustive",
    samples: int = 100_000,
    seed: int = 0,
    jobs: int = 1,
) -> VerifyReport:
    """Sweep an adder netlist against integer addition.

    Exhaustive mode covers all 2**(2w+cin) vectors and requires that to
    be at most 2**EXHAUSTIVE_INPUT_BIT_CAP. Random mode evaluates the
    corner vectors plus ``samples`` seeded uniform vectors and is
    reproducible bit-for-bit for a given seed.
    """
    width, has_cin = adder_shape(netlist)
    if mode == "exhaustive":
        nbits = 2 * width + (1 if has_cin else 0)
        if nbits > EXHAUSTIVE_INPUT_BIT_CAP:
            raise ValueError(
                f"exhaustive sweep needs {nbits} input bits, cap is {EXHAUSTIVE_INPUT_BIT_CAP}; use random mode"
            )
        size_bits = min(nbits, _CHUNK_BITS)
        tasks = [
            (netlist, lo, size_bits, nbits, width, has_cin)
            for lo in range(0, 1 << nbits, 1 << size_bits)
        ]
        hits = _run_tasks(_oracle_chunk, tasks, jobs, stop_at=FAILURE_CAP)
        failures = [
            _oracle_failure(netlist, *_decode_vector(idx, width, has_cin), width, has_cin)
            for idx in sorted(hits)[:FAILURE_CAP]
        ]
        return VerifyReport("exhaustive", 1 << nbits, failures, None)
    if mode != "random":
        raise ValueError(f"mode must be 'exhaustive' or 'random', got {mode!r}")
    vectors = random_vectors(width, has_cin, samples, seed)
    tasks = []
    for off in range(0, len(vectors), 1 << _CHUNK_BITS):
        tasks.append((netlist, vectors[off : off + (1 << _CHUNK_BITS)], off, width, has_cin))
    hits = _run_tasks(_vector_list_chunk, tasks, jobs)
    wmask_bits = 2 * width
    failing = sorted(
        (vectors[pos] for pos in hits),
        key=lambda v: v[0] | (v[1] << width) | (v[2] << wmask_bits),
    )[:FAILURE_CAP]
    failures = [_oracle_failure(netlist, a, b, c, width, has_cin) for a, b, c in failing]
    return VerifyReport("random", len(vectors), failures, seed)


# ---------------------------------------------------------------------------
# pairwise equivalence


def _equiv_shapes(netlist_a: Netlist, netlist_b: Netlist) -> None:
    same = (
        len(netlist_a.primary_inputs) == len(netlist_b.primary_inputs)
        and len(netlist_a.sum_outputs) == len(netlist_b.sum_outputs)
        and (netlist_a.cout is None) == (netlist_b.cout is None)
    )
    if not same:
        raise ValueError("netlists have different primary I/O shapes")


def _equiv_chunk(args) -> list[int]:
    netlist_a, netlist_b, lo, size_bits, nbits = args
    csize = 1 << size_bits
    mask = (1 << csize) - 1
    planes = [_chunk_plane(t, lo, size_bits) for t in range(nbits)]
    words_a = evaluate_packed(netlist_a, planes, mask)
    words_b = evaluate_packed(netlist_b, planes, mask)
    diff = 0
    for oa, ob in zip(netlist_a.primary_outputs, netlist_b.primary_outputs):
        diff |= words_a[oa] ^ words_b[ob]
    return [lo + pos for pos in islice(_iter_set_bits(diff), FAILURE_CAP)]


def _equiv_vectors_chunk(args) -> list[int]:
    netlist_a, netlist_b, xs, offset, nbits = args
    n = len(xs)
    mask = (1 << n) - 1
    planes = [_pack_column(xs, t) for t in range(nbits)]
    words_a = evaluate_packed(netlist_a, planes, mask)
    words_b = evaluate_packed(netlist_b, planes, mask)
    diff = 0
    for oa, ob in zip(netlist_a.primary_outputs, netlist_b.primary_outputs):
        diff |= words_a[oa] ^ words_b[ob]
    return [offset + pos for pos in _iter_set_bits(diff & mask)]


def _packed_outputs(netlist: Netlist, bits: list[int]) -> tuple[int, int]:
    outs = evaluate(netlist, bits)
    if netlist.cout is None:
        return sum(v << i for i, v in enumerate(outs)), 0
    return sum(v << i for i, v in enumerate(outs[:-1])), outs[-1]


def _equiv_failure(netlist_a: Netlist, netlist_b: Netlist, x: int, nbits: int) -> VerifyFailure:
    bits = [(x >> t) & 1 for t in range(nbits)]
    try:
        width, has_cin = adder_shape(netlist_a)
        a, b, cin = _decode_vector(x, width, has_cin)
    except ValueError:
        a, b, cin = x, 0, 0
    return VerifyFailure(a, b, cin, _packed_outputs(netlist_a, bits), _packed_outputs(netlist_b, bits))


def equivalence_check(
    netlist_a: Netlist,
    netlist_b: Netlist,
    mode: str = "exhaustive",
    samples: int = 100_000,
    seed: int = 0,
    jobs: int = 1,
) -> VerifyReport:
    """Check that two same-shaped netlists agree on every primary output.

    ``expected`` in a failure entry is netlist_a's output, ``actual`` is
    netlist_b's. Non-adder netlists report the raw packed input vector in
    the ``a`` slot.
    """
    _equiv_shapes(netlist_a, netlist_b)
    nbits = len(netlist_a.primary_inputs)
    if mode == "exhaustive":
        if nbits > EXHAUSTIVE_INPUT_BIT_CAP:
            raise ValueError(
                f"exhaustive sweep needs {nbits} input bits, cap is {EXHAUSTIVE_INPUT_BIT_CAP}; use random mode"
            )
        size_bits = min(nbits, _CHUNK_BITS)
        tasks = [
            (netlist_a, netlist_b, lo, size_bits, nbits)
            for lo in range(0, 1 << nbits, 1 << size_bits)
        ]
        hits = _run_tasks(_equiv_chunk, tasks, jobs, stop_at=FAILURE_CAP)
        failures = [
            _equiv_failure(netlist_a, netlist_b, x, nbits) for x in sorted(hits)[:FAILURE_CAP]
        ]
        return VerifyReport("exhaustive", 1 << nbits, failures, None)
    if mode != "random":
        raise ValueError(f"mode must be 'exhaustive' or 'random', got {mode!r}")
    try:
        width, has_cin = adder_shape(netlist_a)
        vectors = random_vectors(width, has_cin, samples, seed)
        xs = [a | (b << width) | (c << (2 * width)) for a, b, c in vectors]
    except ValueError:
        rng = random.Random(seed)
        corners = [0, 1, (1 << nbits) - 1, 1 << (nbits - 1), sum(1 << t for t in range(0, nbits, 2))]
        corners.append(((1 << nbits) - 1) ^ corners[-1])
        xs = list(dict.fromkeys(corners + [rng.getrandbits(nbits) for _ in range(samples)]))
    tasks = []
    for off in range(0, len(xs), 1 << _CHUNK_BITS):
        tasks.append((netlist_a, netlist_b, xs[off : off + (1 << _CHUNK_BITS)], off, nbits))
    hits = _run_tasks(_equiv_vectors_chunk, tasks, jobs)
    failing = sorted(xs[pos] for pos in hits)[:FAILURE_CAP]
    failures = [_equiv_failure(netlist_a, netlist_b, x, nbits) for x in failing]
    return VerifyReport("random", len(xs), failures, seed)


# ---------------------------------------------------------------------------
# Ling identity suite


def _reference_carry(a: int, b: int, cin: int, i: int) -> int:
    """True carry out of position i, straight from integer arithmetic."""
    if i < 0:
        return cin
    m = (1 << (i + 1)) - 1
    return ((a & m) + (b & m) + cin) >> (i + 1)


_IDENTITY_ORDER = {"H": 0, "c": 1, "g": 2}


def check_ling_identities_netlist(netlist: Netlist) -> VerifyReport:
    """Exhaustively check H[i] = c[i]|c[i-1], c[i] = p[i]&H[i], g[i] <= p[i].

    Reference carries come from integer arithmetic on the operands, so
    the check is independent of how the netlist computes anything.
    """
    width, has_cin = adder_shape(netlist)
    nbits = 2 * width + (1 if has_cin else 0)
    if nbits > EXHAUSTIVE_INPUT_BIT_CAP:
        raise ValueError(
            f"identity sweep needs {nbits} input bits, cap is {EXHAUSTIVE_INPUT_BIT_CAP}"
        )
    for i in range(width):
        for role in (f"H[{i}]", f"c[{i}]", f"p[{i}]", f"g[{i}]"):
            if role not in netlist.taps:
                raise ValueError(f"netlist has no {role!r} tap; build a Ling family with taps")
    size_bits = min(nbits, _CHUNK_BITS)
    hits: list[tuple[int, str, int]] = []
    for lo in range(0, 1 << nbits, 1 << size_bits):
        csize = 1 << size_bits
        mask = (1 << csize) - 1
        planes = [_chunk_plane(t, lo, size_bits) for t in range(nbits)]
        words = evaluate_packed(netlist, planes, mask)
        idx = np.arange(lo, lo + csize, dtype=np.int64)
        a = idx & ((1 << width) - 1)
        b = (idx >> width) & ((1 << width) - 1)
        c = (idx >> (2 * width)) & 1 if has_cin else np.zeros(csize, dtype=np.int64)
        cin_plane = planes[2 * width] if has_cin else 0
        cref_prev = cin_plane
        for i in range(width):
            m = (1 << (i + 1)) - 1
            cref = _np_pack((((a & m) + (b & m) + c) >> (i + 1)) & 1)
            h_word = words[netlist.taps[f"H[{i}]"]]
            c_word = words[netlist.taps[f"c[{i}]"]]
            p_word = words[netlist.taps[f"p[{i}]"]]
            g_word = words[netlist.taps[f"g[{i}]"]]
            for kind, violation in (
                ("H", h_word ^ (cref | cref_prev)),
                ("c", c_word ^ (p_word & h_word)),
                ("g", g_word & ~p_word & mask),
            ):
                for pos in islice(_iter_set_bits(violation), FAILURE_CAP):
                    hits.append((lo + pos, kind, i))
            cref_prev = cref
        if len(hits) >= FAILURE_CAP:
            # later chunks only hold larger vector indices; the report is full
            break
    hits.sort(key=lambda h: (h[0], h[2], _IDENTITY_ORDER[h[1]]))
    failures = []
    for vec, kind, i in hits[:FAILURE_CAP]:
        a_v, b_v, cin_v = _decode_vector(vec, width, has_cin)
        taps = eval_adder_taps(netlist, a_v, b_v, cin_v if has_cin else None)
        if kind == "H":
            expected = _reference_carry(a_v, b_v, cin_v, i) | _reference_carry(a_v, b_v, cin_v, i - 1)
            actual = taps[f"H[{i}]"]
            label = f"H[{i}] == c[{i}] | " + ("cin" if i == 0 else f"c[{i - 1}]")
        elif kind == "c":
            expected = taps[f"p[{i}]"] & taps[f"H[{i}]"]
            actual = taps[f"c[{i}]"]
            label = f"c[{i}] == p[{i}] & H[{i}]"
        else:
            expected = 0
            actual = taps[f"g[{i}]"] & (1 - taps[f"p[{i}]"])
            label = f"g[{i}] <= p[{i}]"
        failures.append(VerifyFailure(a_v, b_v, cin_v, (expected, 0), (actual, 0), label))
    return VerifyReport("exhaustive", 1 << nbits, failures, None)


def check_ling_identities(
    width: int,
    has_cin: bool = False,
    family: str = "ling-flat",
    group_size: int = 4,
    sum_form: str = "xor",
) -> VerifyReport:
    """Build a Ling-family adder and run the identity suite on its taps."""
    if family not in ("ling4", "ling-flat", "ling-grouped"):
        raise ValueError(f"identity suite applies to Ling families, got {family!r}")
    spec = make_spec(family, width, group_size if family == "ling-grouped" else None, has_cin, sum_form)
    return check_ling_identities_netlist(build_adder(spec))
