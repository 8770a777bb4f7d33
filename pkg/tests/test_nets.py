from fractions import Fraction

import numpy as np
import pytest

from lowdisc.constructions import cs_matrices, faure_matrices, van_der_corput
from lowdisc.errors import CapacityError, ParameterError, PrecisionError
from lowdisc.field import FieldMatrix
from lowdisc.nets import (
    DigitVector,
    GeneratingMatrixSet,
    PointSet,
    char_property_sum,
    compute_t_value,
    digit_vector_of_index,
    dual_space,
    generate_net_points,
    generate_sequence_points,
    geometric_net_check,
    is_tms_net,
    walsh_eval,
)


def identity_net(b, m, s):
    return GeneratingMatrixSet.from_matrices([FieldMatrix.identity(m, b)] * s)


# ---------------------------------------------------------
# Digit vectors and index digits
# ---------------------------------------------------------

def test_digit_vector_of_index():
    assert list(digit_vector_of_index(0, 2, 3)) == [0, 0, 0]
    assert list(digit_vector_of_index(6, 2, 3)) == [0, 1, 1]  # 6 = 0 + 1*2 + 1*4
    assert list(digit_vector_of_index(7, 5, 2)) == [2, 1]  # 7 = 2 + 1*5
    with pytest.raises(ParameterError):
        digit_vector_of_index(8, 2, 3)
    with pytest.raises(ParameterError):
        digit_vector_of_index(-1, 2, 3)


def test_digit_vector_values():
    dv = DigitVector(2, (1, 0, 1))
    assert dv.to_fraction() == Fraction(5, 8)
    assert dv.padded(5).digits == (1, 0, 1, 0, 0)
    with pytest.raises(PrecisionError):
        dv.padded(2)
    assert DigitVector.from_fraction(Fraction(5, 8), 2, 3) == dv
    # truncation drops digits beyond precision
    assert DigitVector.from_fraction(Fraction(2, 3), 2, 4).digits == (1, 0, 1, 0)
    with pytest.raises(ParameterError):
        DigitVector(2, (2,))
    with pytest.raises(ParameterError):
        DigitVector(4, (1,))


# ---------------------------------------------------------
# Net generation
# ---------------------------------------------------------

def test_identity_net_is_van_der_corput():
    ps = generate_net_points(identity_net(2, 2, 1))
    assert [ps.fractions(n)[0] for n in range(4)] == [
        Fraction(0),
        Fraction(1, 2),
        Fraction(1, 4),
        Fraction(3, 4),
    ]


def radical_inverse(n, b, m):
    digits = []
    for _ in range(m):
        n, d = divmod(n, b)
        digits.append(d)
    return sum(Fraction(d, b ** (i + 1)) for i, d in enumerate(digits))


def test_identity_net_any_dimension_radical_inverse():
    for b, m, s in ((2, 3, 2), (3, 2, 3), (5, 2, 2)):
        ps = generate_net_points(identity_net(b, m, s))
        for n in range(len(ps)):
            for j in range(s):
                assert ps.fractions(n)[j] == radical_inverse(n, b, m)


def test_point_zero_is_origin():
    gm = cs_matrices(5, 2, 2, 2)
    ps = generate_net_points(gm)
    assert len(ps) == 625
    assert ps.fractions(0) == (Fraction(0), Fraction(0))


# ---------------------------------------------------------
# Sequence generation
# ---------------------------------------------------------

class _DiagonalSource:
    """Identity sequence matrices: x_n = radical inverse of n."""

    def max_row(self, col):
        return col

    def matrix(self, j, rows, cols):
        arr = np.zeros((rows, cols), dtype=np.uint8)
        for k in range(min(rows, cols)):
            arr[k, k] = 1
        return arr


class _DeepColumnSource(_DiagonalSource):
    def max_row(self, col):
        return 2 * col  # pretend columns reach twice as deep


def test_sequence_points_basics():
    src = _DiagonalSource()
    ps = generate_sequence_points(src, 1, 2, 0, 4, precision=2)
    assert [ps.fractions(n)[0] for n in range(4)] == [
        Fraction(0),
        Fraction(1, 2),
        Fraction(1, 4),
        Fraction(3, 4),
    ]
    empty = generate_sequence_points(src, 1, 2, 3, 3, precision=2)
    assert len(empty) == 0
    assert generate_sequence_points(src, 2, 2, 0, 1, precision=1).fractions(0) == (
        Fraction(0),
        Fraction(0),
    )


def test_sequence_insufficient_precision_is_refused():
    with pytest.raises(PrecisionError):
        generate_sequence_points(_DeepColumnSource(), 1, 2, 0, 8, precision=3)


# ---------------------------------------------------------
# t-values
# ---------------------------------------------------------

def test_t_value_identity_single_dimension():
    assert compute_t_value(identity_net(2, 4, 1)) == 0


def test_t_value_duplicated_matrices():
    # rows (1,0) and (1,0) pooled at d=(1,1) are dependent
    assert compute_t_value(identity_net(2, 2, 2)) == 1


def test_t_value_cs_net_is_zero():
    assert compute_t_value(cs_matrices(5, 2, 2, 2)) == 0


def test_is_tms_net():
    assert is_tms_net(identity_net(2, 3, 1), 0)
    assert not is_tms_net(identity_net(2, 2, 2), 0)
    assert is_tms_net(cs_matrices(5, 2, 2, 2), 0)
    with pytest.raises(ParameterError):
        is_tms_net(identity_net(2, 2, 1), 3)


# ---------------------------------------------------------
# Geometric counting
# ---------------------------------------------------------

def test_geometric_check_examples():
    vdc = van_der_corput(2, 2)
    assert geometric_net_check(vdc, 0)
    dup = generate_net_points(identity_net(2, 2, 2))
    assert not geometric_net_check(dup, 0)
    assert geometric_net_check(dup, 2)  # t = m: one interval holds everything
    bad = PointSet([(DigitVector(2, (0,)),)] * 3, base=2, s=1, precision=1)
    with pytest.raises(ParameterError):
        geometric_net_check(bad, 0)


def test_geometric_agrees_with_algebraic_t():
    """Counting and row-independence give the same verdict for every t."""
    cases = [
        identity_net(2, 3, 1),
        identity_net(2, 2, 2),
        faure_matrices(5, 2, 2),
        faure_matrices(3, 2, 2),
        cs_matrices(5, 2, 2, 2),
    ]
    for gm in cases:
        assert gm.base**gm.cols <= 625
        t_alg = compute_t_value(gm)
        ps = generate_net_points(gm)
        for t in range(gm.cols + 1):
            assert geometric_net_check(ps, t) == (t >= t_alg)


# ---------------------------------------------------------
# Dual space
# ---------------------------------------------------------

def test_dual_trivial_for_invertible_single_matrix():
    dual = dual_space(identity_net(2, 3, 1), cap=100)
    assert dual.elements() == [(0,)]


def test_dual_two_copies_base2():
    gm = GeneratingMatrixSet.from_matrices([FieldMatrix([[1]], 2)] * 2)
    dual = dual_space(gm, cap=100)
    assert sorted(dual.elements()) == [(0, 0), (1, 1)]


def test_dual_cs_size_and_membership():
    gm = cs_matrices(5, 2, 2, 2)
    dual = dual_space(gm, cap=1000)
    elements = dual.elements()
    assert len(elements) == 625  # kernel dimension 4 over F_5
    for k in elements[:50]:
        assert dual.contains(k)
    assert not dual.contains((1, 0))


def test_dual_elements_resubstitute_to_zero():
    for gm in (cs_matrices(5, 2, 2, 2), faure_matrices(3, 2, 2)):
        dual = dual_space(gm, cap=1000)
        stacked = dual.stacked.array
        b, p = gm.base, gm.rows
        for row in dual.element_digits():
            assert not np.any((stacked @ row.reshape(-1).astype(np.int64)) % b)


def test_dual_cap_is_enforced():
    with pytest.raises(CapacityError):
        dual_space(cs_matrices(5, 2, 2, 2), cap=624)


# ---------------------------------------------------------
# Walsh functions and character sums
# ---------------------------------------------------------

def test_walsh_values():
    x = DigitVector(2, (1,))
    assert walsh_eval(0, x) == 1
    assert walsh_eval(1, x) == -1  # omega_2^(1*1)
    assert walsh_eval(1, DigitVector(5, (0, 0))) == 1
    v = walsh_eval(3, DigitVector(5, (2, 4)))
    assert abs(abs(v) - 1) < 1e-12


def test_char_sum_zero_index_is_one():
    ps = van_der_corput(2, 3)
    assert char_property_sum(ps, (0,)) == 1.0


def test_char_sum_on_cs_net():
    gm = cs_matrices(5, 2, 2, 2)
    ps = generate_net_points(gm)
    dual = dual_space(gm, cap=1000)
    for k in dual.elements()[:20]:
        assert abs(char_property_sum(ps, k) - 1.0) <= 1e-9
    assert abs(char_property_sum(ps, (1, 0))) <= 1e-9  # (1,0) is not dual


def test_char_sum_indicator_small_nets():
    """|sum - [k in dual]| <= 1e-9 across every k below b^p on tiny nets."""
    gm = faure_matrices(3, 2, 2)
    ps = generate_net_points(gm)
    dual = dual_space(gm, cap=10000)
    members = set(dual.elements())
    for k1 in range(9):
        for k2 in range(9):
            expect = 1.0 if (k1, k2) in members else 0.0
            assert abs(char_property_sum(ps, (k1, k2)) - expect) <= 1e-9


# ---------------------------------------------------------
# Point sets
# ---------------------------------------------------------

def test_pointset_normalises_precision():
    ps = PointSet([(DigitVector(2, (1,)),)], base=2, s=1, precision=4)
    assert ps.points[0][0].digits == (1, 0, 0, 0)
    with pytest.raises(ParameterError):
        PointSet([(DigitVector(3, (1,)),)], base=2, s=1, precision=2)


def test_pointset_prefix():
    ps = van_der_corput(2, 3)
    pre = ps.prefix(3)
    assert len(pre) == 3
    assert pre.points == ps.points[:3]
    with pytest.raises(ParameterError):
        ps.prefix(9)
