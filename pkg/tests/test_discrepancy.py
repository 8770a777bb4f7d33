import math
from fractions import Fraction

import numpy as np
import pytest

from lowdisc.constructions import (
    arbitrary_n_trim,
    davenport_symmetrized,
    dp_net,
    dp_sequence,
    faure_matrices,
    van_der_corput,
)
from lowdisc.discrepancy import (
    append_index_coordinate,
    l2_exact,
    l2_exact_rational,
    trim_inequality_check,
    local_discrepancy,
    lq_estimate,
    profile_grid,
    roth_constant,
    roth_lower_bound,
    sequence_profile,
    sum_of_digits,
)
from lowdisc.errors import CapacityError, ParameterError
from lowdisc.nets import DigitVector, PointSet, generate_net_points


def single_point(*fracs, precision=8):
    return pointset([fracs], precision=precision)


def pointset(rows, precision=8):
    pts = [
        tuple(DigitVector.from_fraction(Fraction(f), 2, precision) for f in row)
        for row in rows
    ]
    return PointSet(pts, base=2, s=len(rows[0]), precision=precision)


ORIGIN_1D = pointset([[0]], precision=1)
TWO_1D = pointset([[0], [Fraction(1, 2)]], precision=1)


# ---------------------------------------------------------
# Local discrepancy
# ---------------------------------------------------------

def test_local_discrepancy_examples():
    assert local_discrepancy(ORIGIN_1D, (1.0,)) == 0.0
    assert local_discrepancy(ORIGIN_1D, (0.5,)) == 0.5
    two_d = pointset([[0, 0]], precision=1)
    assert local_discrepancy(two_d, (0.0, 0.7)) == 0.0  # empty box


def test_local_discrepancy_counts_strictly_below():
    ps = pointset([[Fraction(1, 2)]], precision=4)
    assert local_discrepancy(ps, (0.5,)) == -0.5  # boundary point excluded


# ---------------------------------------------------------
# Exact L2: closed forms and the rational oracle
# ---------------------------------------------------------

def test_l2_rational_closed_forms():
    assert l2_exact_rational(ORIGIN_1D) == Fraction(1, 3)
    assert l2_exact_rational(TWO_1D) == Fraction(1, 12)
    origin_2d = pointset([[0, 0]], precision=1)
    # 1 - 2*(1/2)^2 + 1/9, worked out by integrating (A - t1 t2)^2 by hand
    assert l2_exact_rational(origin_2d) == Fraction(11, 18)


def test_l2_float_matches_closed_forms():
    assert abs(l2_exact(ORIGIN_1D).value - math.sqrt(1 / 3)) < 1e-15
    assert abs(l2_exact(TWO_1D).value - math.sqrt(1 / 12)) < 1e-15


def test_l2_rational_capacity():
    big = van_der_corput(2, 7)
    with pytest.raises(CapacityError):
        l2_exact_rational(big)


def piecewise_l2_squared(ps):
    """Independent s=1 oracle: integrate the local discrepancy piecewise.

    On each interval between consecutive knots the counting term is
    constant, recovered through local_discrepancy at the midpoint, so the
    integral of (c - t)^2 has an exact antiderivative.
    """
    n = len(ps)
    values = sorted(ps.fractions(i)[0] for i in range(n))
    knots = [Fraction(0)] + values + [Fraction(1)]
    total = Fraction(0)
    for a, b in zip(knots, knots[1:]):
        if a == b:
            continue
        mid = (a + b) / 2
        c = Fraction(round((local_discrepancy(ps, (float(mid),)) + float(mid)) * n), n)
        total += ((c - a) ** 3 - (c - b) ** 3) / 3
    return total


def test_pairwise_formula_agrees_with_piecewise_integration():
    cases = [
        ORIGIN_1D,
        TWO_1D,
        van_der_corput(2, 2),
        van_der_corput(2, 4),
        van_der_corput(3, 2),
        dp_sequence(1, 11),
    ]
    rng = np.random.default_rng(21)
    for _ in range(5):
        rows = [[Fraction(int(v), 256)] for v in rng.integers(0, 256, size=10)]
        cases.append(pointset(rows, precision=8))
    for ps in cases:
        assert l2_exact_rational(ps) == piecewise_l2_squared(ps)


def test_l2_float_vs_rational_random_sets():
    rng = np.random.default_rng(33)
    for _ in range(10):
        n = int(rng.integers(1, 65))
        s = int(rng.integers(1, 4))
        rows = [[Fraction(int(v), 1024) for v in rng.integers(0, 1024, size=s)] for _ in range(n)]
        ps = pointset(rows, precision=10)
        exact = math.sqrt(l2_exact_rational(ps))
        assert abs(l2_exact(ps).value - exact) <= 1e-12


def test_l2_symmetry_under_permutations():
    ps = generate_net_points(faure_matrices(5, 2, 2))
    value = l2_exact(ps).value
    rng = np.random.default_rng(4)
    order = rng.permutation(len(ps))
    shuffled = PointSet(
        [ps.points[i] for i in order], base=ps.base, s=ps.s, precision=ps.precision
    )
    swapped = PointSet(
        [(pt[1], pt[0]) for pt in ps.points], base=ps.base, s=ps.s, precision=ps.precision
    )
    assert abs(l2_exact(shuffled).value - value) <= 1e-12
    assert abs(l2_exact(swapped).value - value) <= 1e-12


def test_l2_deterministic_and_thread_invariant():
    ps = dp_net(2, 6, 2)
    serial = l2_exact(ps, threads=1).value
    assert l2_exact(ps, threads=1).value == serial
    assert l2_exact(ps, threads=4).value == serial


def test_report_fields():
    rep = l2_exact(van_der_corput(2, 4))
    assert rep.N == 16 and rep.s == 1 and rep.q == 2.0
    assert rep.method == "exact-pairwise"
    assert rep.roth_ratio is not None and rep.roth_ratio >= 1 - 1e-9
    row = rep.csv_row("van-der-corput", "b=2;m=4")
    assert row.startswith("van-der-corput,b=2;m=4,16,1,2.0,exact-pairwise,")


# ---------------------------------------------------------
# Lq estimation
# ---------------------------------------------------------

def test_lq_q1_closed_form():
    # integral of (1 - t) over [0,1] is 1/2 for the origin point set
    rep = lq_estimate(ORIGIN_1D, 1.0, 4096, seed=7)
    assert abs(rep.value - 0.5) <= 3 * rep.stderr + 1e-3


def test_lq_q2_matches_exact():
    exact = math.sqrt(1 / 12)
    rep = lq_estimate(TWO_1D, 2.0, 8192, seed=11)
    assert abs(rep.value - exact) <= 3 * rep.stderr


def test_lq_rejects_bad_arguments():
    with pytest.raises(ParameterError):
        lq_estimate(ORIGIN_1D, 2.0, 0)
    with pytest.raises(ParameterError):
        lq_estimate(ORIGIN_1D, math.inf, 100)
    with pytest.raises(ParameterError):
        lq_estimate(ORIGIN_1D, 0.5, 100)


def test_lq_deterministic_for_fixed_seed():
    a = lq_estimate(TWO_1D, 3.0, 1000, seed=5)
    b = lq_estimate(TWO_1D, 3.0, 1000, seed=5)
    assert a.value == b.value and a.stderr == b.stderr


# ---------------------------------------------------------
# Lower bound comparators
# ---------------------------------------------------------

def test_roth_constant_values():
    assert roth_constant(1) == 7 / 54
    assert abs(roth_constant(2) - 7 / (27 * 8 * math.sqrt(math.log(2)))) < 1e-16


def test_roth_lower_bound_values():
    val, known = roth_lower_bound(1, 2, 2.0)
    assert known and abs(val - 7 / 108) < 1e-16
    val, known = roth_lower_bound(3, 100, 1.5)
    assert not known and val == 0.0
    with pytest.raises(ParameterError):
        roth_lower_bound(1, 1)
    with pytest.raises(ParameterError):
        roth_lower_bound(1, 10, 0.5)


def test_sum_of_digits():
    assert sum_of_digits(5) == 2
    for m in range(1, 12):
        assert sum_of_digits(2**m) == 1
        assert sum_of_digits(2 ** (m + 1) - 1) == m + 1
        assert sum_of_digits(2**m) <= 1 + math.log2(2**m)
    with pytest.raises(ParameterError):
        sum_of_digits(0)


# ---------------------------------------------------------
# Sequence profile
# ---------------------------------------------------------

def test_profile_grid_contract():
    grid = profile_grid(300)
    assert set(range(2, 257)).issubset(grid)
    assert 3 in grid and 7 in grid and 255 in grid
    assert max(grid) <= 300


def test_sequence_profile_exact_entry_and_positivity():
    prof = sequence_profile(dp_sequence, 1, 32)
    first = prof.rows[0]
    assert first.N == 2
    exact = math.sqrt(l2_exact_rational(dp_sequence(1, 2)))
    assert abs(first.value - exact) <= 1e-12
    assert all(r.ratio_roth > 0 and r.ratio_partition > 0 for r in prof.rows)
    assert 31 in [r.N for r in prof.rows]
    csv = prof.csv()
    assert csv.startswith("N,value,S_N,ratio_roth,ratio_partition")


# ---------------------------------------------------------
# Trim inequality and the index-coordinate device
# ---------------------------------------------------------

def test_trim_inequality_full_size_is_trivially_true():
    assert trim_inequality_check(van_der_corput(2, 3), 8)


def test_trim_inequality_exact_rational_small_case():
    """Exact check of N^2 L2(trim)^2 <= b (b^m)^2 L2(full)^2 at m=2, N=3."""
    full = van_der_corput(2, 2)
    trimmed = arbitrary_n_trim(full, 3)
    lhs_sq = 9 * l2_exact_rational(trimmed)
    rhs_sq = 2 * 16 * l2_exact_rational(full)
    assert lhs_sq <= rhs_sq
    assert trim_inequality_check(full, 3)


def test_trim_inequality_more_sizes():
    for n in (5, 6, 7, 8):
        assert trim_inequality_check(van_der_corput(2, 3), n)


def test_append_index_coordinate():
    one = append_index_coordinate(ORIGIN_1D, 1)
    assert one.s == 2 and one.fractions(0)[1] == 0
    vdc = van_der_corput(2, 2)
    ham = append_index_coordinate(vdc, 4)
    assert [ham.fractions(k)[1] for k in range(4)] == [
        Fraction(0),
        Fraction(1, 4),
        Fraction(1, 2),
        Fraction(3, 4),
    ]
    assert [ham.fractions(k)[0] for k in range(4)] == [vdc.fractions(k)[0] for k in range(4)]
    with pytest.raises(ParameterError):
        append_index_coordinate(vdc, 5)


def test_append_index_coordinate_non_power():
    ps = append_index_coordinate(van_der_corput(2, 3), 6)
    for k in range(6):
        assert abs(ps.fractions(k)[1] - Fraction(k, 6)) <= Fraction(1, 2**47)


# ---------------------------------------------------------
# Roth validity on constructed sets
# ---------------------------------------------------------

def test_roth_ratio_above_one_everywhere():
    sets = [
        van_der_corput(2, 6),
        generate_net_points(faure_matrices(5, 2, 2)),
        dp_net(2, 6, 1),
        davenport_symmetrized(32),
        dp_sequence(1, 100),
    ]
    for ps in sets:
        rep = l2_exact(ps)
        assert rep.roth_ratio >= 1 - 1e-9
