"""Acceptance gate: ten verdicts, one summary line each.

Every test appends exactly one ``criterion NN [PASS|FAIL|SKIP]`` line to
RESULTS (printed by conftest in a terminal section) and then asserts.  The
full-range checks — criterion 3, and the n = 1105 halves of criteria 9 and
10 — run only with ``--long``; without it criterion 3 records a SKIP and 9
and 10 fall back to the [1, 100] window.

Frozen expectations come from three independent sources: the brute-force
oracle (small n), the vendored A102698 b-file, and regression values from a
verified run of this package that was cross-checked against both.
"""

import math

import pytest

from trilattice.analysis import (
    REFERENCE_GROWTH_DEVIATION,
    REFERENCE_GROWTH_FIT,
    GrowthSample,
    SqrtRationalFit,
    fit_g_three_points,
    fit_power,
    growth_sequence,
    mean_abs_deviation,
    monotonicity_report,
)
from trilattice.counting import ENGINES, count_range, fast_count, oracle_count
from trilattice.diophantine import (
    Triple,
    degeneracy,
    enumerate_triples,
    iter_rs,
    smallest_degenerate_d,
)
from trilattice.oeis import compare, fixture_bfile
from trilattice.parametrization import (
    NonIntegralParametrization,
    build_params,
    canonical_params,
    equivalent_parametrizations,
    solve_mn,
    third_vertex_check,
    triangle_at,
)

RESULTS: list[str] = []

ANCHOR_N = 1105
ANCHOR_COUNT = 2474524936846512

SEVEN_DEGENERATE = {
    (187, 415, 1859),
    (265, 533, 1819),
    (299, 493, 1825),
    (475, 1309, 1313),
    (493, 1001, 1555),
    (731, 1183, 1315),
    (1027, 1139, 1145),
}

# canonical coefficient table of the family (731, 1183, 1315, 1105), reached
# at companion pair (r, s) = (540, -1730)
GOLD_1105 = {
    "m_u": 901, "n_u": 1428, "m_v": -1157, "n_v": -221, "m_w": 540, "n_w": -595,
    "m_x": -527, "n_x": 901, "m_y": -936, "n_y": -1157, "m_z": 1135, "n_z": 540,
}

# regression anchor: mean |f - g_ref| over [1, 100] from a verified run
MEAN_DEV_1_100 = 0.029050789653046437


def record(num: int, desc: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    tail = f" — {detail}" if detail else ""
    line = f"criterion {num:02d} [{status}] {desc}{tail}"
    RESULTS.append(line)
    assert ok, line


def record_skip(num: int, desc: str) -> None:
    RESULTS.append(f"criterion {num:02d} [SKIP] {desc} — enable with --long")
    pytest.skip("long tier; enable with --long")


def dist2(p, q):
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 + (p[2] - q[2]) ** 2


@pytest.fixture(scope="session")
def records_100():
    return count_range(0, 100)


@pytest.fixture(scope="session")
def full_records(request):
    if not request.config.getoption("--long"):
        return None
    return count_range(0, ANCHOR_N, threads=4)


def test_criterion_01_engines_match_oracle():
    bad = []
    for n in range(11):
        expected = oracle_count(n)
        for engine in ENGINES:
            got = fast_count(n, engine=engine)
            if got != expected:
                bad.append(f"n={n} {engine}: {got} != {expected}")
    record(
        1, "every counting engine matches the brute-force oracle for n <= 10",
        not bad, "; ".join(bad[:3]) or f"11 grids x {len(ENGINES)} engines, exact agreement",
    )


def test_criterion_02_reference_prefix(records_100):
    reference = fixture_bfile().as_dict
    bad = [(r.n, r.count, reference[r.n]) for r in records_100 if r.count != reference[r.n]]
    record(
        2, "count_range(0, 100) reproduces the vendored A102698 values exactly",
        not bad, str(bad[:3]) if bad else "101 values, zero mismatches",
    )


def test_criterion_03_full_range_anchor(full_records):
    if full_records is None:
        record_skip(3, "full count to n = 1105 matches the reference sequence")
    report = compare(full_records, fixture_bfile())
    last = full_records[-1]
    ok = report.passed and not report.absent and (last.n, last.count) == (ANCHOR_N, ANCHOR_COUNT)
    record(
        3, "full count to n = 1105 matches the reference sequence",
        ok, f"ET(1105) = {last.count}; {len(report.matched)} indices matched",
    )


def test_criterion_04_degenerate_families():
    found = {
        (t.a, t.b, t.c)
        for t in enumerate_triples(1105)
        if degeneracy(t).is_degenerate
    }
    first = smallest_degenerate_d(1105)
    below = smallest_degenerate_d(1104)
    ok = found == SEVEN_DEGENERATE and first == 1105 and below is None
    record(
        4, "d = 1105 is the first degenerate level and carries exactly seven families",
        ok, f"{len(found)} degenerate families at d = 1105; none below (scan result {below})",
    )


def test_criterion_05_construction_identities():
    families = 0
    triangles = 0
    bad = []
    for d in range(1, 201, 2):
        for triple in enumerate_triples(d):
            params = canonical_params(triple)
            a, b, c = triple.normal
            families += 1
            cross_ok = (
                params.m_v * params.n_w - params.m_w * params.n_v == a * d
                and params.m_w * params.n_u - params.m_u * params.n_w == b * d
                and params.m_u * params.n_v - params.m_v * params.n_u == c * d
            )
            if not cross_ok:
                bad.append(f"cross products broken for {triple}")
                continue
            for m in range(-10, 11):
                for n in range(-10, 11):
                    if (m, n) == (0, 0):
                        continue
                    tri = triangle_at(params, (m, n))
                    o, p, q = tri.vertices
                    side = params.side_squared((m, n))
                    triangles += 1
                    if not (
                        a * p[0] + b * p[1] + c * p[2] == 0
                        and a * q[0] + b * q[1] + c * q[2] == 0
                        and dist2(o, p) == side
                        and dist2(p, q) == side
                        and dist2(o, q) == side
                        and third_vertex_check(tri, triple)
                    ):
                        bad.append(f"{triple} at ({m}, {n})")
    record(
        5, "plane, side-length, cross-product and third-vertex identities hold exactly",
        not bad,
        "; ".join(bad[:3]) or f"{families} families (d <= 200) x 440 indices = {triangles} triangles",
    )


def test_criterion_06_degenerate_table_reproduction():
    triple = Triple(731, 1183, 1315, 1105)
    params = canonical_params(triple)
    table = {name: getattr(params, name) for name in GOLD_1105}
    canonical_ok = table == GOLD_1105 and (params.rs.r, params.rs.s) == (540, -1730)
    alternates_ok = all(
        equivalent_parametrizations(params, build_params(triple, rs))
        for rs in ((595, 1675), (1135, -55))
    )
    record(
        6, "canonical table of (731, 1183, 1315, 1105) reproduced bit-for-bit",
        canonical_ok and alternates_ok,
        "companion pair (540, -1730); tables at (595, 1675) and (1135, -55) equivalent",
    )


def test_criterion_07_index_inversion():
    checked = 0
    failures = 0
    for d in range(1, 201, 2):
        for triple in enumerate_triples(d):
            params = canonical_params(triple)
            for m in range(-10, 11):
                for n in range(-10, 11):
                    if (m, n) == (0, 0):
                        continue
                    checked += 1
                    if solve_mn(params, params.p_vertex(m, n)) != (m, n):
                        failures += 1
    record(
        7, "solve_mn inverts the vertex map on every family with d <= 200",
        failures == 0, f"{checked} roundtrips, {failures} failures",
    )


def test_criterion_08_companion_pair_divisibility():
    bad = []
    integral_pairs = 0
    for abc in sorted(SEVEN_DEGENERATE):
        triple = Triple(*abc, 1105)
        zeta = math.gcd(triple.d, triple.c)
        suitable = 0
        for rs in iter_rs(triple.q):  # full scan, no divisibility filter
            try:
                build_params(triple, rs)
            except NonIntegralParametrization:
                continue
            suitable += 1
            if rs.r % zeta or rs.s % zeta:
                bad.append(f"{abc}: ({rs.r}, {rs.s}) not divisible by {zeta}")
        integral_pairs += suitable
        if not suitable:
            bad.append(f"{abc}: no integral coefficient table")
    record(
        8, "gcd(d, c) divides r and s in every integral table of the seven families",
        not bad,
        "; ".join(bad[:3]) or f"{integral_pairs} integral pairs across 7 families",
    )


def test_criterion_09_growth_deviation(records_100, full_records):
    truth = SqrtRationalFit(5.0, -0.7, -0.8)
    fit = fit_g_three_points(
        [GrowthSample(n, truth.predict(n)) for n in (10, 100, 1000)], 10, 100, 1000
    )
    synth_ok = max(abs(fit.a - 5.0), abs(fit.b + 0.7), abs(fit.c + 0.8)) < 1e-6

    pfit = fit_power([2.0 * (k + 1) ** 4.0 for k in range(50)], n_start=0)
    power_ok = abs(pfit.coefficient - 2.0) < 1e-9 and abs(pfit.exponent - 4.0) < 1e-9

    dev100 = mean_abs_deviation(growth_sequence(records_100), REFERENCE_GROWTH_FIT, 1, 100)
    short_ok = abs(dev100 - MEAN_DEV_1_100) < 1e-9

    ok = synth_ok and power_ok and short_ok
    detail = f"synthetic fits recovered; mean |f - g_ref| over [1, 100] = {dev100:.12f}"
    if full_records is not None:
        dev_full = mean_abs_deviation(
            growth_sequence(full_records), REFERENCE_GROWTH_FIT, 1, ANCHOR_N
        )
        ok = ok and abs(dev_full - REFERENCE_GROWTH_DEVIATION) <= 1e-6
        detail += (
            f"; over [1, 1105] = {dev_full:.12f} vs reference {REFERENCE_GROWTH_DEVIATION}"
        )
    else:
        detail += "; full-range comparison needs --long"
    record(9, "growth fits recover known parameters and the deviation statistic", ok, detail)


def test_criterion_10_monotone_growth(records_100, full_records):
    if full_records is not None:
        report = monotonicity_report(growth_sequence(full_records))
        scope = "[1, 1105]"
    else:
        report = monotonicity_report(growth_sequence(records_100))
        scope = "[1, 100] (full range needs --long)"
    record(
        10, "the growth sequence is strictly increasing",
        report.passed,
        f"{report.checked_pairs} adjacent pairs over {scope}, "
        f"{len(report.violations)} violations",
    )
