import numpy as np
import pytest

from kasner_resonance.core.cfrac import CFWord, canonicalize, cf_value, minimal_period
from kasner_resonance.core.errors import InvalidWord, TaubPoint
from kasner_resonance.core.exactfield import QuadExt
from kasner_resonance.core.kasner import (
    base_point_keys,
    base_points,
    eigen_numerators,
    eigenvalues,
    kasner_map,
    kasner_orbit,
    kasner_step,
    transient_points,
)


def W(text):
    return CFWord.parse(text)


def test_eigenvalues_sum_to_six():
    for text in ["1", "1;2", "2,3", "5;3,2"]:
        eig = eigenvalues(cf_value(W(text)))
        assert eig.lambda1 + eig.lambda2 + eig.lambda3 == 6


def test_golden_ratio_relation():
    """u² = u + 1 时 λ2 = λ1 + λ3"""
    eig = eigenvalues(cf_value(W("1")))
    assert eig.lambda2 == eig.lambda1 + eig.lambda3


def test_eigenvalue_signs():
    eig = eigenvalues(QuadExt.sqrt(2))
    assert eig.lambda1 < 0 < eig.lambda2 < eig.lambda3
    assert eig.approx()[0] == pytest.approx(-6 * 2 ** 0.5 / (3 + 2 ** 0.5))


def test_eigen_numerators():
    assert eigen_numerators() == ((0, -6, 0), (6, 6, 0), (0, 6, 6))


def test_taub_point_rejected():
    with pytest.raises(TaubPoint):
        eigenvalues(QuadExt.from_parts(1))
    with pytest.raises(TaubPoint):
        kasner_map(QuadExt.from_parts(1))


def test_kasner_map_values():
    r2 = QuadExt.sqrt(2)
    assert kasner_map(1 + r2) == r2
    assert kasner_map(r2) == 1 + r2


class TestKasnerStep:
    def test_decrement_head(self):
        assert kasner_step(W("5;2,3")) == W("4;2,3")

    def test_head_one_drops_to_tail(self):
        assert kasner_step(W("1;2")) == W("2")

    def test_purely_periodic(self):
        assert kasner_step(W("2")) == W("1;2")
        assert kasner_step(W("3,2")) == W("2;2,3")

    def test_step_agrees_with_kasner_map(self):
        for text in ["5;2,3", "1;2", "2", "3,2", "1;1,1,2", "1,4;2,3"]:
            w = W(text)
            assert cf_value(kasner_step(w)) == kasner_map(cf_value(w))


class TestBasePoints:
    def test_count_is_entry_sum(self):
        assert len(base_points((2, 3))) == 5
        assert len(base_points((1, 1, 2))) == 4
        assert len(base_points((9,))) == 9

    def test_layout(self):
        assert base_points((2, 3)) == [
            W("1;3,2"), W("2;3,2"), W("1;2,3"), W("2;2,3"), W("3;2,3"),
        ]

    def test_minimal_period_used(self):
        assert base_points((2, 3, 2, 3)) == base_points((2, 3))

    def test_empty_period(self):
        with pytest.raises(InvalidWord):
            base_points(())


def test_orbit_matches_base_points():
    """随机周期词的Kasner轨道长度 = 项和，且与基点集合一致"""
    rng = np.random.default_rng(42)
    for _ in range(200):
        period = tuple(int(x) for x in rng.integers(1, 7, size=rng.integers(1, 6)))
        orbit = kasner_orbit(CFWord((), period))
        assert len(orbit) == sum(minimal_period(period))
        assert set(orbit) == base_point_keys(period)


def test_orbit_needs_periodic_word():
    with pytest.raises(InvalidWord):
        kasner_orbit(W("5;2,3"))


class TestTransients:
    def test_preperiodic_heads(self):
        assert transient_points(W("5;2,3")) == [W("5;2,3"), W("4;2,3")]
        assert transient_points(W("3;1,1,2")) == [W("3;1,1,2")]

    def test_base_point_has_no_transients(self):
        assert transient_points(W("3;2,3")) == []
        assert transient_points(W("2,3")) == []

    def test_transients_never_in_chain(self):
        keys = base_point_keys((2, 3))
        for w in transient_points(W("9;2,3")):
            assert canonicalize(w) not in keys
