"""Normal triples a^2 + b^2 + c^2 = 3 d^2 and companion pairs 2q = s^2 + 3r^2."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trilattice.diophantine import (
    DegeneracyInfo,
    RsPair,
    Triple,
    degeneracy,
    degenerate_triples,
    enumerate_triples,
    iter_rs,
    smallest_degenerate_d,
    solve_rs,
)


def naive_triples(d):
    """Independent reference: scan every a <= b <= c directly."""
    target = 3 * d * d
    out = []
    for a in range(1, int(math.isqrt(target)) + 1):
        for b in range(a, int(math.isqrt(target - a * a)) + 1):
            rest = target - a * a - b * b
            if rest < b * b:
                break
            c = math.isqrt(rest)
            if c * c == rest and math.gcd(math.gcd(a, b), c) == 1:
                out.append((a, b, c, d))
    return out


def test_d1_single_triple():
    assert [(t.a, t.b, t.c, t.d) for t in enumerate_triples(1)] == [(1, 1, 1, 1)]


def test_d3_single_triple():
    assert [(t.a, t.b, t.c, t.d) for t in enumerate_triples(3)] == [(1, 1, 5, 3)]


@pytest.mark.parametrize("bad", [0, -3, 2, 10])
def test_even_or_nonpositive_d_rejected(bad):
    with pytest.raises(ValueError):
        enumerate_triples(bad)


def test_non_integer_d_rejected():
    with pytest.raises((TypeError, ValueError)):
        enumerate_triples(1.5)


def test_matches_naive_scan_small_d():
    for d in range(1, 100, 2):
        got = [(t.a, t.b, t.c, t.d) for t in enumerate_triples(d)]
        assert got == naive_triples(d), f"d={d}"


def test_matches_naive_scan_larger_d():
    # spot checks in the 100..200 band; the full band is covered by the
    # acceptance identity suite anyway
    for d in (101, 123, 145, 167, 199):
        got = [(t.a, t.b, t.c, t.d) for t in enumerate_triples(d)]
        assert got == naive_triples(d)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=75))
def test_triple_invariants(k):
    d = 2 * k + 1
    for t in enumerate_triples(d):
        assert t.a * t.a + t.b * t.b + t.c * t.c == 3 * d * d
        assert t.a <= t.b <= t.c
        assert t.a % 2 == t.b % 2 == t.c % 2 == 1
        assert math.gcd(math.gcd(t.a, t.b), t.c) == 1
        assert t.q == t.a * t.a + t.b * t.b


def test_triple_sorts_components():
    t = Triple(1315, 731, 1183, 1105)
    assert (t.a, t.b, t.c) == (731, 1183, 1315)
    assert t.normal == (731, 1183, 1315)


@pytest.mark.parametrize(
    "a,b,c,d",
    [
        (1, 1, 1, 2),  # even d
        (1, 1, 3, 1),  # wrong equation
        (3, 3, 3, 3),  # not primitive
        (1, 1, -1, 1),  # nonpositive component
    ],
)
def test_triple_validation(a, b, c, d):
    with pytest.raises(ValueError):
        Triple(a, b, c, d)


def test_rs_pairs_for_q2():
    assert [(p.r, p.s) for p in solve_rs(2)] == [(1, -1), (1, 1)]


def test_rs_pairs_satisfy_equation_and_order():
    q = Triple(731, 1183, 1315, 1105).q
    pairs = solve_rs(q)
    assert pairs == sorted(pairs)
    assert len(set(pairs)) == len(pairs)
    for p in pairs:
        assert 2 * q == p.s * p.s + 3 * p.r * p.r
        assert p.r > 0
        assert (p.r - p.s) % 2 == 0


def test_rs_zeta_filter_is_a_subset():
    q = Triple(731, 1183, 1315, 1105).q
    everything = set(solve_rs(q))
    fives = set(iter_rs(q, zeta=5))
    assert fives <= everything
    assert all(p.r % 5 == 0 and p.s % 5 == 0 for p in fives)
    assert (540, -1730) in {(p.r, p.s) for p in fives}


def test_rspair_validation():
    with pytest.raises(ValueError):
        RsPair(1, 2, 2)  # wrong equation
    with pytest.raises(ValueError):
        RsPair(-1, 1, 1)  # r must be positive


def test_rs_zero_s_once():
    # 2q = 3r^2 has s = 0 solutions; they must not be emitted twice
    q = 6  # 2*6 = 12 = 3*4 -> r = 2, s = 0
    zero = [p for p in solve_rs(q) if p.s == 0]
    assert len(zero) == 1


def test_degeneracy_trivial_family():
    info = degeneracy(Triple(1, 1, 1, 1))
    assert info == DegeneracyInfo(1, 1, 1)
    assert not info.is_degenerate


def test_degeneracy_fully_shared_family():
    info = degeneracy(Triple(731, 1183, 1315, 1105))
    # 1105 = 5 * 13 * 17 and each component grabs one prime factor
    assert (info.zeta_a, info.zeta_b, info.zeta_c) == (17, 13, 5)
    assert info.is_degenerate


@pytest.mark.parametrize("d", [105, 165, 315, 1105])
def test_degenerate_scan_equals_filtered_enumeration(d):
    fast = degenerate_triples(d)
    slow = tuple(t for t in enumerate_triples(d) if degeneracy(t).is_degenerate)
    assert fast == slow


def test_no_degenerate_family_below_1105():
    assert smallest_degenerate_d(1104) is None


def test_first_degenerate_family():
    assert smallest_degenerate_d(1105) == 1105
    assert len(degenerate_triples(1105)) == 7
