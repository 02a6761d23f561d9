"""Acceptance suite: one test per shipping criterion, one printed line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Criteria are exact (integer depths, zero-failure sweeps) and carry the
runtime budgets they were specified with.
"""

import time

from adderkit.builders import (
    build_adder,
    build_cla_flat,
    build_grouped,
    build_ling4,
    build_ling_flat,
    build_rca,
    make_spec,
)
from adderkit.metrics import analyze
from adderkit.netlist import (
    decompose_fanin2,
    depth_profile,
    eval_adder_taps,
    stuck_output,
)
from adderkit.verify import equivalence_check, check_ling_identities, verify_against_oracle


def _report(number, ok, detail, budget_s=None, elapsed=None):
    status = "PASS" if ok else "FAIL"
    timing = f" [{elapsed:.2f}s < {budget_s:.0f}s]" if budget_s is not None else ""
    print(f"criterion {number}: {status} - {detail}{timing}")
    assert ok, f"criterion {number} failed: {detail}"
    if budget_s is not None:
        assert elapsed < budget_s, f"criterion {number} exceeded {budget_s}s ({elapsed:.2f}s)"


def test_criterion_1_depth_claims():
    """Fan-in-2 levels: flat CLA carry-out at exactly 5, Ling H[3] at exactly 4."""
    t0 = time.perf_counter()
    cla = depth_profile(decompose_fanin2(build_cla_flat(4)))
    ling = depth_profile(decompose_fanin2(build_ling4()))
    cla_depth = cla.depth_per_tap["c[3]"]
    ling_depth = ling.depth_per_tap["H[3]"]
    elapsed = time.perf_counter() - t0
    _report(
        1,
        cla_depth == 5 and ling_depth == 4,
        f"cla-flat4 c[3] level {cla_depth} (want 5), ling4 H[3] level {ling_depth} (want 4)",
        1.0,
        elapsed,
    )


def test_criterion_2_exhaustive_width_4():
    """Every width-4 family matches integer addition on all vectors."""
    t0 = time.perf_counter()
    builds = []
    for has_cin in (False, True):
        builds.append((f"rca cin={has_cin}", build_rca(4, has_cin)))
        builds.append((f"cla-flat cin={has_cin}", build_cla_flat(4, has_cin)))
        for form in ("xor", "mux"):
            builds.append((f"ling4/{form} cin={has_cin}", build_ling4(has_cin, form)))
        builds.append((f"ling-flat cin={has_cin}", build_ling_flat(4, has_cin)))
    bad = []
    tested = 0
    for label, net in builds:
        report = verify_against_oracle(net, "exhaustive")
        tested += report.vectors_tested
        if not report.passed:
            bad.append(label)
    elapsed = time.perf_counter() - t0
    _report(2, not bad, f"{len(builds)} builds, {tested} vectors, failing: {bad or 'none'}", 1.0, elapsed)


def test_criterion_3_ling_identity_suite():
    """H[i] = c[i]|c[i-1] and c[i] = p[i]&H[i] hold exhaustively at widths 4 and 8."""
    t0 = time.perf_counter()
    bad = []
    tested = 0
    for width in (4, 8):
        for has_cin in (False, True):
            report = check_ling_identities(width, has_cin)
            tested += report.vectors_tested
            if not report.passed:
                bad.append((width, has_cin))
    elapsed = time.perf_counter() - t0
    _report(3, not bad, f"{tested} vectors across widths 4 and 8, failing: {bad or 'none'}", 10.0, elapsed)


def test_criterion_4_flat_matches_pairwise():
    """ling-flat width 4 produces the same H taps as ling4 on all 256 vectors."""
    t0 = time.perf_counter()
    flat = build_ling_flat(4)
    pairwise = build_ling4()
    mismatches = 0
    for a in range(16):
        for b in range(16):
            tf = eval_adder_taps(flat, a, b)
            tp = eval_adder_taps(pairwise, a, b)
            if any(tf[f"H[{i}]"] != tp[f"H[{i}]"] for i in range(4)):
                mismatches += 1
    elapsed = time.perf_counter() - t0
    _report(4, mismatches == 0, f"256 vectors, {mismatches} H-tap mismatches", 1.0, elapsed)


def test_criterion_5_grouped_cascades():
    """Grouped Ling: width 8 exhaustive; widths 16 and 32 random + corners."""
    t0 = time.perf_counter()
    r8 = verify_against_oracle(build_grouped("ling", 8, 4), "exhaustive")
    r16 = verify_against_oracle(build_grouped("ling", 16, 4), "random", samples=100_000, seed=42)
    r32 = verify_against_oracle(build_grouped("ling", 32, 4), "random", samples=100_000, seed=42)
    ok = r8.passed and r16.passed and r32.passed and r8.vectors_tested == 1 << 16
    elapsed = time.perf_counter() - t0
    _report(
        5,
        ok,
        f"width 8: {r8.vectors_tested} vectors, width 16: {r16.vectors_tested}, "
        f"width 32: {r32.vectors_tested}, all clean",
        30.0,
        elapsed,
    )


def test_criterion_6_normalization_soundness():
    """decompose_fanin2 preserves IO behavior of every built width-4 netlist."""
    t0 = time.perf_counter()
    specs = []
    for has_cin in (False, True):
        specs.append(make_spec("rca", 4, has_cin=has_cin))
        specs.append(make_spec("cla-flat", 4, has_cin=has_cin))
        specs.append(make_spec("cla-grouped", 4, 2, has_cin))
        for form in ("xor", "mux"):
            specs.append(make_spec("ling4", 4, has_cin=has_cin, sum_form=form))
            specs.append(make_spec("ling-flat", 4, has_cin=has_cin, sum_form=form))
            specs.append(make_spec("ling-grouped", 4, 2, has_cin, form))
    bad = []
    for spec in specs:
        net = build_adder(spec)
        if not equivalence_check(net, decompose_fanin2(net), "exhaustive").passed:
            bad.append(spec.family)
    elapsed = time.perf_counter() - t0
    _report(6, not bad, f"{len(specs)} width-4 builds, mismatching: {bad or 'none'}", None, elapsed)


def test_criterion_7_fanin_ordering():
    """Raw max fan-in of ling4 is strictly below the flat CLA's at width 4."""
    t0 = time.perf_counter()
    ling = analyze(make_spec("ling4"))
    cla = analyze(make_spec("cla-flat", 4))
    elapsed = time.perf_counter() - t0
    _report(
        7,
        ling.max_fanin_raw < cla.max_fanin_raw,
        f"max_fanin_raw ling4={ling.max_fanin_raw}, cla-flat4={cla.max_fanin_raw}; "
        f"widest OR {ling.or_terms_widest} vs {cla.or_terms_widest}",
        None,
        elapsed,
    )


def test_criterion_8_fault_detection():
    """A stuck-at-0 cout on ling4 is caught by the exhaustive sweep."""
    t0 = time.perf_counter()
    report = verify_against_oracle(stuck_output(build_ling4(), "cout", 0), "exhaustive")
    elapsed = time.perf_counter() - t0
    detected = not report.passed
    first = report.failures[0] if report.failures else None
    _report(
        8,
        detected,
        f"stuck-at-0 cout detected with {len(report.failures)} stored counterexamples, "
        f"first at a={getattr(first, 'a', None)} b={getattr(first, 'b', None)}",
        None,
        elapsed,
    )
