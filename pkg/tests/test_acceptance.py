"""One test per acceptance criterion; each prints and records a pass/fail line."""

from __future__ import annotations

import pytest

from cubforge import acceptance
from cubforge.search import default_workers

from conftest import CRITERION_LINES


def _check(result):
    line = result.line()
    CRITERION_LINES[result.number] = line
    print(line)
    for name, ok in result.checks.items():
        print(f"  {'ok ' if ok else 'BAD'} {name}")
    assert result.passed, line


def test_criterion_1_minimal_24():
    _check(acceptance.criterion_1(workers=default_workers()))


def test_criterion_2_refute_23():
    _check(acceptance.criterion_2(workers=default_workers()))


def test_criterion_3_arithmetic_36():
    _check(acceptance.criterion_3())


def test_criterion_4_euler_x():
    # time the complexes from scratch
    acceptance.x_instance.cache_clear()
    _check(acceptance.criterion_4())


def test_criterion_5_flag_and_girth():
    _check(acceptance.criterion_5())


def test_criterion_6_not_f3():
    _check(acceptance.criterion_6())


def test_criterion_7_join_homology():
    _check(acceptance.criterion_7())


def test_criterion_8_branched():
    _check(acceptance.criterion_8())


@pytest.mark.parametrize("seed", [acceptance.C4_SEED])
def test_criterion_9_random_c4(seed):
    _check(acceptance.criterion_9(seed))
