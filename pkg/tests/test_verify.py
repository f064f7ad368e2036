import time

import pytest

from kasner_resonance.api import verify_appendix, verify_chain
from kasner_resonance.core.appendix import build_sections, iter_rows
from kasner_resonance.core.cfrac import CFWord, CoeffVector
from kasner_resonance.core.errors import ConfigError
from kasner_resonance.core.resonance import KVector
from kasner_resonance.core.verify import VerifyTarget, target_from_row, verify_target, verify_targets


def test_oracle_equivalence_all_rows():
    """暴力搜索（阶 ≤ 30）不会找到比约化 k 更小的共振，且所有解都是其整数倍"""
    start = time.perf_counter()
    report = verify_appendix("all", oracle_order=30)
    assert time.perf_counter() - start < 30.0
    assert len(report.records) == 99
    assert report.passed, report.first_failure


def test_common_factor_row():
    rows = [r for r in iter_rows(build_sections("a2")) if r.word == "1;2,4"]
    record = verify_target(target_from_row(rows[0]), 30)
    assert record.passed
    assert record.k_reduced == (6, 5, -1)
    assert record.order == 12


def test_rows_beyond_bound_have_no_hits():
    rows = [r for r in iter_rows(build_sections("a3")) if r.word == "1;3,2,3"]
    record = verify_target(target_from_row(rows[0]), 30)
    assert record.order == 52
    assert record.checks["oracle_minimal"]
    assert record.passed


def test_wrong_vector_detected():
    target = VerifyTarget("bad", CFWord.parse("1;2"), KVector(1, 2, 1), CoeffVector(-2, 0, 1))
    record = verify_target(target, 10)
    assert not record.passed
    assert not record.checks["identity"]
    assert "failed" in record.detail


def test_bound_below_known_order_is_config_error():
    with pytest.raises(ConfigError) as exc:
        verify_chain("1;2", oracle_order=2)
    assert exc.value.details["smallest_order"] == 4


def test_empty_targets():
    with pytest.raises(ConfigError):
        verify_targets([], 30)


def test_verify_chain_with_transients():
    report = verify_chain("5;2,3", oracle_order=30)
    assert len(report.records) == 7
    assert report.passed
