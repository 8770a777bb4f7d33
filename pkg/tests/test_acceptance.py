"""Acceptance suite: every criterion at its stated tolerance.

Each test prints one pass/fail line (visible with `pytest -s` or in the
failure report) and then asserts.  `lowdisc selftest` runs the same
checks through the same functions.
"""

from lowdisc import selftest


def _run(name, fn):
    passed, detail = fn()
    print(f"[{name}] {'PASS' if passed else 'FAIL'}: {detail}")
    assert passed, f"{name}: {detail}"


def test_criterion_01_worked_example_matrices():
    _run(*selftest.CRITERIA[0])


def test_criterion_02_zero_t_and_hamming_floor():
    _run(*selftest.CRITERIA[1])


def test_criterion_03_dual_nrt_identity():
    _run(*selftest.CRITERIA[2])


def test_criterion_04_higher_order_dual_condition():
    _run(*selftest.CRITERIA[3])


def test_criterion_05_l2_oracle_equivalence():
    _run(*selftest.CRITERIA[4])


def test_criterion_06_lower_bound_sweep():
    _run(*selftest.CRITERIA[5])


def test_criterion_07_character_property():
    _run(*selftest.CRITERIA[6])


def test_criterion_08_interlaced_net_ratio():
    _run(*selftest.CRITERIA[7])


def test_criterion_09_trim_inequality():
    _run(*selftest.CRITERIA[8])


def test_criterion_10_sequence_ratio():
    _run(*selftest.CRITERIA[9])


def test_criterion_11_symmetrized_ratio():
    _run(*selftest.CRITERIA[10])


def test_criterion_12_interlacing_path_equality():
    _run(*selftest.CRITERIA[11])


def test_criterion_13_estimator_calibration():
    _run(*selftest.CRITERIA[12])
