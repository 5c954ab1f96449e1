#!/usr/bin/env python3
"""
套件运行器与装饰器单元测试
"""

import pytest

from qig.core.suite_runner import SuiteRunner, TrialHandler, assemble_report, derive_seed
from qig.decorators import VerificationSuite
from qig.types import SuiteNotFound, TrialCheck


@VerificationSuite
class CountingSuite:
    """按随机数给出余量的套件"""
    name = "counting"

    def run_trial(self, rng, index):
        value = float(rng.uniform(0.0, 1.0))
        return [TrialCheck("counting.positive", value, 0.0), TrialCheck("counting.index", float(index), 0.0)]


@VerificationSuite
class FailingSuite:
    """第二次试验抛出异常的套件"""

    def run_trial(self, rng, index):
        if index == 1:
            raise ValueError("boom")
        return [TrialCheck("failing.ok", 1.0, 0.0)]


class TestVerificationSuiteDecorator:
    """验证套件装饰器测试类"""

    def test_marks_class(self):
        """测试装饰器标记类"""
        assert getattr(CountingSuite, "_is_verification_suite", False)
        assert CountingSuite.name == "counting"

    def test_default_name(self):
        """测试缺省套件名为类名"""
        assert FailingSuite.name == "FailingSuite"

    def test_rejects_function(self):
        """测试装饰函数报错"""
        with pytest.raises(TypeError):
            @VerificationSuite
            def not_a_class():
                pass

    def test_rejects_missing_run_trial(self):
        """测试缺少 run_trial 方法报错"""
        with pytest.raises(TypeError):
            @VerificationSuite
            class Incomplete:
                pass


class TestDeriveSeed:
    """子种子派生测试类"""

    def test_deterministic(self):
        """测试相同输入得到相同子种子"""
        assert derive_seed(7, 3) == derive_seed(7, 3)

    def test_distinct(self):
        """测试不同序号得到不同子种子"""
        seeds = {derive_seed(7, index) for index in range(50)}
        assert len(seeds) == 50
        assert derive_seed(7, 0) != derive_seed(8, 0)


class TestTrialHandler:
    """试验处理器测试类"""

    def test_error_becomes_check(self):
        """测试异常被记录为失败的检查"""
        handler = TrialHandler(FailingSuite(), 0)
        checks = handler.handle_trial(1)
        assert len(checks) == 1
        assert checks[0].name == "trial_error"
        assert checks[0].margin == -1.0
        assert not checks[0].passed
        assert "boom" in checks[0].detail


class TestAssembleReport:
    """报告汇总测试类"""

    def test_worst_margin(self):
        """测试同名检查取最小余量"""
        results = [[TrialCheck("a", 0.5, 0.0)], [TrialCheck("a", -2e-10, 1e-9)], [TrialCheck("a", 0.1, 0.0)]]
        report = assemble_report("demo", 1, 3, results, 0)
        assert len(report.checks) == 1
        assert report.checks[0].worst_margin == pytest.approx(-2e-10)
        assert report.checks[0].passed

    def test_failure_detail(self):
        """测试失败时记录说明"""
        results = [[TrialCheck("a", -1.0, 0.0, "太小")]]
        report = assemble_report("demo", 1, 1, results, 0)
        assert not report.all_passed
        assert "太小" in report.checks[0].detail


class TestSuiteRunner:
    """套件运行器测试类"""

    def setup_method(self):
        """测试前准备"""
        self.runner = SuiteRunner()
        self.runner.register_suite(CountingSuite())
        self.runner.register_suite(FailingSuite(), "failing")

    def test_register_requires_marker(self):
        """测试注册未标记的对象"""
        with pytest.raises(TypeError):
            self.runner.register_suite(object())

    def test_suite_names(self):
        """测试已注册的套件名"""
        assert self.runner.suite_names() == ["counting", "failing"]

    def test_run(self):
        """测试顺序执行"""
        report = self.runner.run("counting", 5, 11)
        assert report.suite == "counting"
        assert report.trials == 5
        assert report.all_passed
        names = [check.name for check in report.checks]
        assert names == ["counting.positive", "counting.index"]

    def test_run_is_deterministic(self):
        """测试相同种子得到相同余量"""
        first = self.runner.run("counting", 4, 3)
        second = self.runner.run("counting", 4, 3)
        assert [c.worst_margin for c in first.checks] == [c.worst_margin for c in second.checks]

    def test_zero_trials(self):
        """测试零次试验返回空的通过报告"""
        report = self.runner.run("counting", 0, 0)
        assert report.checks == []
        assert report.all_passed

    def test_failure_is_reported(self):
        """测试异常不会中断运行"""
        report = self.runner.run("failing", 3, 0)
        assert not report.all_passed
        assert [c.name for c in report.failed_checks()] == ["trial_error"]

    def test_unknown_suite(self):
        """测试未注册的套件"""
        with pytest.raises(SuiteNotFound):
            self.runner.run("missing", 1, 0)

    async def test_run_async_matches_run(self):
        """测试并行执行与顺序执行结果一致"""
        sequential = self.runner.run("counting", 6, 21)
        parallel = await self.runner.run_async("counting", 6, 21, max_workers=3)
        assert [c.worst_margin for c in parallel.checks] == [c.worst_margin for c in sequential.checks]
        assert parallel.all_passed

    async def test_run_async_unknown_suite(self):
        """测试并行执行未注册的套件"""
        with pytest.raises(SuiteNotFound):
            await self.runner.run_async("missing", 1, 0)
