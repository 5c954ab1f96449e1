#!/usr/bin/env python3
"""
随机实例、信道与验证套件测试
"""

import numpy as np
import pytest

from qig.core.metrics import metric_eval
from qig.core.verify import (
    SUITE_NAMES,
    apply_cptp,
    check_monotonicity,
    default_runner,
    random_cptp,
    random_state,
    random_tangent,
    run_suite,
)
from qig.types import CptpMap, DimensionError, DimensionMismatch, InvalidChannel, MetricKind, SuiteNotFound


class TestRandomInstances:
    """随机实例测试类"""

    def test_random_state(self):
        """测试随机态为正定单位迹矩阵"""
        rho = random_state(4, True, 5)
        assert rho.unit_trace
        assert rho.trace == pytest.approx(1.0, abs=1e-12)
        assert np.min(np.linalg.eigvalsh(rho.data)) > 0

    def test_random_state_reproducible(self):
        """测试相同种子得到相同矩阵"""
        np.testing.assert_array_equal(random_state(3, False, 42).data, random_state(3, False, 42).data)

    def test_dimension_range(self):
        """测试维数越界"""
        with pytest.raises(DimensionError):
            random_state(1)
        with pytest.raises(DimensionError):
            random_state(65)
        with pytest.raises(DimensionError):
            random_tangent(0)

    def test_traceless_tangent(self, rng):
        """测试无迹切向量"""
        assert random_tangent(5, True, rng).trace == pytest.approx(0.0, abs=1e-12)


class TestChannels:
    """信道测试类"""

    def test_random_cptp_preserves_trace(self, rng):
        """测试随机信道保迹"""
        channel = random_cptp(3, 2, rng)
        assert len(channel.kraus) == 2
        rho = random_state(3, True, rng)
        assert apply_cptp(channel, rho).trace == pytest.approx(1.0, abs=1e-12)

    def test_invalid_kraus(self):
        """测试不保迹的 Kraus 算子"""
        with pytest.raises(InvalidChannel):
            CptpMap((2.0 * np.eye(2),))
        with pytest.raises(DimensionError):
            random_cptp(3, 0)

    def test_depolarizing(self, rng):
        """测试完全去极化信道输出最大混合态"""
        rho = random_state(2, True, rng)
        np.testing.assert_allclose(apply_cptp(CptpMap.depolarizing(1.0), rho).data, 0.5 * np.eye(2), atol=1e-12)

    def test_dimension_mismatch(self, rng):
        """测试维数不一致"""
        with pytest.raises(DimensionMismatch):
            apply_cptp(CptpMap.identity(2), random_state(3, True, rng))


class TestMonotonicity:
    """单调性测试类"""

    def test_random_channel(self, rng):
        """测试随机信道下所有内置度量收缩"""
        channel = random_cptp(3, 2, rng)
        rho = random_state(3, True, rng)
        h = random_tangent(3, True, rng)
        for kind in MetricKind.builtins():
            assert check_monotonicity(kind, channel, rho, h).passed

    def test_unitary_is_isometry(self, rng):
        """测试酉信道下度量不变"""
        u, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        rho = random_state(2, True, rng)
        h = random_tangent(2, True, rng)
        result = check_monotonicity(MetricKind.wy(), CptpMap.unitary(u), rho, h)
        assert result.margin == pytest.approx(0.0, abs=1e-9 * result.scale)
        assert not result.regularized

    def test_depolarizing_contracts(self, rng):
        """测试去极化信道严格收缩"""
        rho = random_state(2, True, rng)
        h = random_tangent(2, True, rng)
        result = check_monotonicity(MetricKind.bures(), CptpMap.depolarizing(0.5), rho, h)
        assert result.margin > 0
        assert metric_eval(MetricKind.bures(), rho, h, h) > result.margin


class TestSuites:
    """内置验证套件测试类"""

    def setup_method(self):
        """测试前准备"""
        self.runner = default_runner(kinds=[MetricKind.bures(), MetricKind.rld(), MetricKind.wyd(2.0)], dims=(2, 3), panels=64)

    def test_suite_names(self):
        """测试内置套件齐全"""
        assert set(SUITE_NAMES) == {"chain", "monotonicity", "lengths", "residuals", "hessian_crosscheck", "frechet_fd", "bounds_f"}
        assert self.runner.suite_names() == list(SUITE_NAMES)

    @pytest.mark.parametrize("name", ["chain", "monotonicity", "residuals", "hessian_crosscheck", "frechet_fd", "bounds_f"])
    def test_suite_passes(self, name):
        """测试各套件在少量试验下全部通过"""
        report = self.runner.run(name, 3, 2024)
        assert report.checks
        assert report.all_passed, [c.model_dump() for c in report.failed_checks()]

    def test_lengths_suite_passes(self):
        """测试长度套件"""
        report = self.runner.run("lengths", 2, 5)
        assert report.all_passed, [c.model_dump() for c in report.failed_checks()]
        assert any(c.name == "length.rld_dual" for c in report.checks)

    def test_run_suite_deterministic(self):
        """测试 run_suite 按种子确定"""
        first = run_suite("bounds_f", 2, 9)
        second = run_suite("bounds_f", 2, 9)
        assert [c.worst_margin for c in first.checks] == [c.worst_margin for c in second.checks]

    def test_zero_trials(self):
        """测试零次试验"""
        report = run_suite("chain", 0, 1)
        assert report.checks == []
        assert report.all_passed

    def test_unknown_suite(self):
        """测试未知套件"""
        with pytest.raises(SuiteNotFound):
            run_suite("nope", 1, 0)

    async def test_run_async_matches_run(self):
        """测试并行执行内置套件与顺序执行一致"""
        sequential = self.runner.run("chain", 4, 77)
        parallel = await self.runner.run_async("chain", 4, 77)
        assert [c.worst_margin for c in parallel.checks] == [c.worst_margin for c in sequential.checks]
