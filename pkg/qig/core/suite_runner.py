"""
验证套件运行器
"""

import asyncio
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..types.base import SuiteNotFound
from ..types.report import CheckOutcome, TrialCheck, VerificationReport

logger = logging.getLogger(__name__)


def derive_seed(master_seed: int, index: int) -> int:
    """
    由主种子与试验序号确定性地派生子种子。
    :param master_seed: 主种子（非负）
    :param index: 试验序号
    :return: 子种子
    """
    sequence = np.random.SeedSequence([int(master_seed), int(index)])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


class TrialHandler:
    """
    单次试验处理器：派生子种子、调用套件，并把异常记录为失败的检查而不是抛出。
    """
    def __init__(self, suite: Any, seed: int) -> None:
        """
        :param suite: 套件实例
        :param seed: 主种子
        """
        self.suite = suite
        self.seed = seed

    def handle_trial(self, index: int) -> List[TrialCheck]:
        """
        执行第 index 次试验。
        :param index: 试验序号
        :return: 检查列表
        """
        rng = np.random.default_rng(derive_seed(self.seed, index))
        try:
            checks = list(self.suite.run_trial(rng, index))
            logger.debug(f"试验完成: {self.suite.name}#{index}, {len(checks)} 项检查")
            return checks
        except Exception as e:
            logger.exception(f"试验失败: {self.suite.name}#{index}")
            return [self._create_error_check(f"第 {index} 次试验异常: {type(e).__name__}: {e}")]

    def _create_error_check(self, message: str) -> TrialCheck:
        return TrialCheck(name="trial_error", margin=-1.0, tolerance=0.0, detail=message)


def assemble_report(suite: str, seed: int, trials: int, results: Sequence[List[TrialCheck]], runtime_ms: int) -> VerificationReport:
    """
    汇总各次试验：同名检查取最小余量，全部通过才算通过。
    """
    grouped: Dict[str, List[TrialCheck]] = {}
    for checks in results:
        for check in checks:
            grouped.setdefault(check.name, []).append(check)
    outcomes = []
    for name, checks in grouped.items():
        worst = min(checks, key=lambda c: c.margin)
        failures = [c for c in checks if not c.passed]
        detail = f"样本数={len(checks)}, 容差={worst.tolerance:g}"
        if failures:
            detail += f", 失败={len(failures)}"
            if failures[0].detail:
                detail += f": {failures[0].detail}"
        outcomes.append(CheckOutcome(name=name, passed=not failures, worst_margin=float(worst.margin), detail=detail))
    return VerificationReport(suite=suite, seed=seed, trials=trials, checks=outcomes, runtime_ms=runtime_ms)


class SuiteRunner:
    """
    验证套件运行器。
    管理套件注册，同步或经事件循环并行地执行试验。
    """
    def __init__(self) -> None:
        self.suites: Dict[str, Any] = {}

    def register_suite(self, suite_instance: Any, suite_name: Optional[str] = None) -> None:
        """
        注册套件。
        :param suite_instance: 由 @VerificationSuite 标记的套件实例
        :param suite_name: 套件名称，未指定则用套件的 name
        :raises TypeError: 未被 @VerificationSuite 标记
        """
        if not getattr(suite_instance, "_is_verification_suite", False):
            raise TypeError(f"{type(suite_instance).__name__} 不是验证套件")
        name = suite_name or suite_instance.name
        self.suites[name] = suite_instance
        logger.info(f"套件已注册: {name}")

    def suite_names(self) -> List[str]:
        return list(self.suites)

    def _get(self, name: str) -> Any:
        suite = self.suites.get(name)
        if suite is None:
            logger.error(f"套件不存在: {name}")
            raise SuiteNotFound(f"套件不存在: {name}，可选: {', '.join(self.suites)}")
        return suite

    def run(self, name: str, trials: int, seed: int) -> VerificationReport:
        """
        顺序执行套件。
        :param name: 套件名
        :param trials: 试验次数，0 时返回空的通过报告
        :param seed: 主种子
        :return: 验证报告
        :raises SuiteNotFound: 套件未注册
        """
        handler = TrialHandler(self._get(name), seed)
        logger.info(f"开始执行套件: {name}, trials={trials}, seed={seed}")
        started = time.perf_counter()
        results = [handler.handle_trial(index) for index in range(trials)]
        report = assemble_report(name, seed, trials, results, int((time.perf_counter() - started) * 1000))
        logger.info(f"套件执行完成: {name}, 通过={report.all_passed}, 用时 {report.runtime_ms} ms")
        return report

    async def run_async(self, name: str, trials: int, seed: int, max_workers: Optional[int] = None) -> VerificationReport:
        """
        经事件循环把各次试验分派到线程池，余量与 run 完全一致。
        :param name: 套件名
        :param trials: 试验次数
        :param seed: 主种子
        :param max_workers: 线程数
        :return: 验证报告
        :raises SuiteNotFound: 套件未注册
        """
        handler = TrialHandler(self._get(name), seed)
        logger.info(f"开始并行执行套件: {name}, trials={trials}, seed={seed}")
        loop = asyncio.get_running_loop()
        started = time.perf_counter()
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            futures = [loop.run_in_executor(executor, handler.handle_trial, index) for index in range(trials)]
            results = await asyncio.gather(*futures)
        report = assemble_report(name, seed, trials, results, int((time.perf_counter() - started) * 1000))
        logger.info(f"套件并行执行完成: {name}, 通过={report.all_passed}, 用时 {report.runtime_ms} ms")
        return report
