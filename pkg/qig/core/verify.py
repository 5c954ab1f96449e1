"""
随机实例、随机CPTP信道与性质验证套件
"""

import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from ..decorators.verification_suite import VerificationSuite
from ..types.base import DEFAULT_CONFIG, DimensionError, DimensionMismatch
from ..types.channel import CptpMap, MonotonicityMargin
from ..types.geometry import CurveKind, CurveSpec, MetricKind
from ..types.matrices import HermitianMatrix, ScalarFunctionSpec, StateMatrix
from ..types.report import TrialCheck, VerificationReport
from .divergences import classical_bhattacharya, quasi_entropy_S, relative_entropy_H
from .geodesics import (
    bounded_perturbation,
    bures_distance_cone,
    bures_distance_density,
    curve_length,
    rld_dual_partner,
    rld_geodesic_residual,
    rld_upper_bound_cone,
    rld_upper_bound_density,
    wy_distance_cone,
    wy_distance_density,
)
from .matkern import commutator_norm, eigh_array, fn_array, frechet_derivative, hermitize, positivity_threshold, validate_state
from .metrics import check_f_bounds, metric_eval, metric_f, wy_metric_closed_form, wyd_metric_hessian
from .suite_runner import SuiteRunner, derive_seed

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.Generator, None]

__all__ = [
    "random_state",
    "random_tangent",
    "random_cptp",
    "apply_cptp",
    "check_monotonicity",
    "derive_seed",
    "default_runner",
    "run_suite",
    "SUITE_NAMES",
]


def _rng(seed: SeedLike) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / math.sqrt(2.0)


def _check_dimension(n: int) -> None:
    if not 2 <= n <= 64:
        logger.error(f"维数必须位于 [2, 64]: {n}")
        raise DimensionError(f"维数必须位于 [2, 64]: {n}")


def random_state(n: int, unit_trace: bool = True, rng_seed: SeedLike = None) -> StateMatrix:
    """
    随机正定矩阵 G·G* + eps_reg·I，G 为 n×2n 复高斯矩阵；unit_trace 时归一化。
    :param n: 维数 2 ≤ n ≤ 64
    :param unit_trace: 是否归一化为密度矩阵
    :param rng_seed: 种子或随机数生成器
    :return: 态矩阵
    :raises DimensionError: 维数越界
    """
    _check_dimension(n)
    g = _complex_gaussian(_rng(rng_seed), n, 2 * n)
    m = hermitize(g @ g.conj().T) + DEFAULT_CONFIG.eps_reg * np.eye(n)
    if unit_trace:
        m = m / float(np.real(np.trace(m)))
    return validate_state(m, unit_trace=unit_trace)


def random_tangent(n: int, traceless: bool = False, rng_seed: SeedLike = None) -> HermitianMatrix:
    """
    随机厄米方向（对称化的复高斯矩阵），traceless 时投影掉迹。
    """
    _check_dimension(n)
    x = _complex_gaussian(_rng(rng_seed), n, n)
    h = hermitize(x)
    if traceless:
        h = h - np.trace(h) / n * np.eye(n)
    return HermitianMatrix(h)


def random_cptp(n: int, kraus_count: int, rng_seed: SeedLike = None) -> CptpMap:
    """
    随机CPTP信道：把 m 个 n×n 高斯块叠成 (mn)×n 矩阵，列正交化后切分为 Kraus 算子。
    :param n: 维数
    :param kraus_count: Kraus 算子个数 m ≥ 1
    :param rng_seed: 种子或随机数生成器
    :return: 信道
    :raises DimensionError: n 或 m 越界
    """
    _check_dimension(n)
    if kraus_count < 1:
        raise DimensionError(f"Kraus 算子个数至少为 1: {kraus_count}")
    stacked = _complex_gaussian(_rng(rng_seed), kraus_count * n, n)
    q, _ = scipy.linalg.qr(stacked, mode="economic")
    return CptpMap(tuple(q[i * n:(i + 1) * n, :] for i in range(kraus_count)))


def apply_cptp(channel: CptpMap, x: Union[HermitianMatrix, StateMatrix]) -> HermitianMatrix:
    """
    T(x) = Σ K_i·x·K_i*。
    :raises DimensionMismatch: 维数不一致
    """
    if x.n != channel.n:
        raise DimensionMismatch(f"信道维数 {channel.n} 与输入维数 {x.n} 不一致")
    out = sum(k @ x.data @ k.conj().T for k in channel.kraus)
    return HermitianMatrix(hermitize(out))


def check_monotonicity(m: MetricKind, channel: CptpMap, rho: StateMatrix, h: HermitianMatrix) -> MonotonicityMargin:
    """
    收缩余量 λ_ρ(h,h) - λ_T(ρ)(T(h),T(h))。T(ρ) 不正定时加 eps_reg·I 并在结果中记录。
    :param m: 度量种类
    :param channel: 信道
    :param rho: 态矩阵
    :param h: 切向量
    :return: 余量，通过条件 margin ≥ -1e-9·scale
    """
    image = apply_cptp(channel, rho).data
    d = scipy.linalg.eigvalsh(image)
    regularized = bool(d[0] <= positivity_threshold(d))
    if regularized:
        logger.warning(f"信道输出接近边界，最小特征值 {d[0]:.3e}，加入 eps_reg 正则化")
        image = image + DEFAULT_CONFIG.eps_reg * np.eye(channel.n)
    before = metric_eval(m, rho, h, h)
    after = metric_eval(m, validate_state(image), apply_cptp(channel, h), apply_cptp(channel, h))
    return MonotonicityMargin(margin=before - after, scale=max(before, 1.0), regularized=regularized)


# ---------------------------------------------------------------- 套件

def _relative_gap(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1.0)


def _pick_dimension(rng: np.random.Generator, dims: Sequence[int]) -> int:
    return int(dims[int(rng.integers(len(dims)))])


def _diagonal_state(rng: np.random.Generator, n: int, unit_trace: bool) -> StateMatrix:
    p = rng.uniform(0.05, 1.0, n)
    if unit_trace:
        p = p / p.sum()
    return validate_state(np.diag(p), unit_trace=unit_trace)


class _Suite:
    name = ""

    def __init__(self, dims: Optional[Sequence[int]] = None, kinds: Optional[Iterable[MetricKind]] = None) -> None:
        self.dims = tuple(dims or DEFAULT_CONFIG.default_dims)
        self.kinds: List[MetricKind] = list(kinds) if kinds is not None else MetricKind.builtins()


@VerificationSuite
class ChainSuite(_Suite):
    """
    距离不等式链、对易情形的坍缩、拟熵恒等式与上界的对偶点。
    """
    name = "chain"

    def run_trial(self, rng: np.random.Generator, index: int) -> List[TrialCheck]:
        n = _pick_dimension(rng, self.dims)
        checks: List[TrialCheck] = []

        rho0, rho1 = random_state(n, False, rng), random_state(n, False, rng)
        bures = bures_distance_cone(rho0, rho1)
        upper = rld_upper_bound_cone(rho0, rho1)
        ceiling = 2.0 * math.sqrt(rho0.trace + rho1.trace)
        checks.append(TrialCheck("cone.bures_le_rld_upper", upper - bures, 1e-9))
        checks.append(TrialCheck("cone.rld_upper_lt_trace_bound", ceiling - upper, 0.0))
        if commutator_norm(rho0, rho1) > DEFAULT_CONFIG.commute_threshold:
            checks.append(TrialCheck("cone.strict_gap", upper - bures - 1e-8, 0.0))

        s = quasi_entropy_S(ScalarFunctionSpec.g0(), rho0, rho1)
        checks.append(TrialCheck(
            "identity.wy_from_quasi_entropy", -_relative_gap(math.sqrt(max(2.0 * s, 0.0)), wy_distance_cone(rho0, rho1)), 1e-9
        ))
        h = relative_entropy_H(ScalarFunctionSpec.g0(), rho0, rho1)
        checks.append(TrialCheck("identity.rld_upper_from_relative_entropy", -_relative_gap(math.sqrt(max(2.0 * h, 0.0)), upper), 1e-9))
        partner = rld_dual_partner(rho0, rho1)
        checks.append(TrialCheck("partner.bures_equals_rld_upper", -_relative_gap(bures_distance_cone(rho0, partner), upper), 1e-9))

        sigma0, sigma1 = random_state(n, True, rng), random_state(n, True, rng)
        d_bures = bures_distance_density(sigma0, sigma1)
        d_wy = wy_distance_density(sigma0, sigma1)
        d_upper = rld_upper_bound_density(sigma0, sigma1)
        checks.append(TrialCheck("density.bures_le_wy", d_wy - d_bures, 1e-10))
        checks.append(TrialCheck("density.wy_le_rld_upper", d_upper - d_wy, 1e-10))
        checks.append(TrialCheck("density.rld_upper_lt_pi", math.pi - d_upper, 0.0))
        if commutator_norm(sigma0, sigma1) > DEFAULT_CONFIG.commute_threshold:
            checks.append(TrialCheck("density.strict_gap", d_upper - d_bures - 1e-8, 0.0))

        p, q = _diagonal_state(rng, n, True), _diagonal_state(rng, n, True)
        reference = classical_bhattacharya(np.real(np.diag(p.data)), np.real(np.diag(q.data)))
        values = (bures_distance_density(p, q), wy_distance_density(p, q), rld_upper_bound_density(p, q))
        checks.append(TrialCheck("commuting.collapse", -max(abs(v - reference) for v in values), 1e-10))
        return checks


@VerificationSuite
class MonotonicitySuite(_Suite):
    """
    随机信道下的收缩性，覆盖全部内置度量。
    """
    name = "monotonicity"

    def run_trial(self, rng: np.random.Generator, index: int) -> List[TrialCheck]:
        n = _pick_dimension(rng, self.dims)
        channel = random_cptp(n, int(rng.integers(1, 4)), rng)
        rho = random_state(n, True, rng)
        h = random_tangent(n, True, rng)
        checks = []
        for kind in self.kinds:
            result = check_monotonicity(kind, channel, rho, h)
            detail = "已正则化" if result.regularized else ""
            checks.append(TrialCheck(f"monotonicity.{kind.label}", result.margin / result.scale, 1e-9, detail))
        return checks


@VerificationSuite
class LengthsSuite(_Suite):
    """
    数值曲线长度与闭式距离的一致性、不等式链与局部极小性。
    """
    name = "lengths"

    def __init__(self, dims: Optional[Sequence[int]] = None, kinds: Optional[Iterable[MetricKind]] = None, panels: int = 1024) -> None:
        super().__init__(dims or (2, 3, 4), kinds)
        self.panels = panels

    def _minimality(self, rng: np.random.Generator, kind: CurveKind, metric: MetricKind, rho0: StateMatrix, rho1: StateMatrix) -> TrialCheck:
        base = CurveSpec(kind=kind, rho0=rho0, rho1=rho1)
        geodesic = curve_length(metric, base, self.panels)
        direction = random_tangent(rho0.n, False, rng)
        direction = HermitianMatrix(direction.data / np.linalg.norm(direction.data))
        amplitude = 0.05 * float(np.linalg.norm(rho1.data - rho0.data)) * float(rng.uniform(0.1, 1.0))
        bump = bounded_perturbation(base, direction, amplitude, int(rng.integers(1, 4)))
        perturbed = CurveSpec(kind=kind, rho0=rho0, rho1=rho1, perturbation=bump)
        return TrialCheck(f"minimality.{metric.label}", curve_length(metric, perturbed, self.panels) - geodesic, 1e-7)

    def run_trial(self, rng: np.random.Generator, index: int) -> List[TrialCheck]:
        n = _pick_dimension(rng, self.dims)
        rho0, rho1 = random_state(n, False, rng), random_state(n, False, rng)
        bures = bures_distance_cone(rho0, rho1)
        upper = rld_upper_bound_cone(rho0, rho1)
        bures_line = CurveSpec(kind=CurveKind.BURES_LINE, rho0=rho0, rho1=rho1)
        wy_line = CurveSpec(kind=CurveKind.WY_LINE, rho0=rho0, rho1=rho1)
        dual = CurveSpec(kind=CurveKind.RLD_DUAL, rho0=rho0, rho1=rho1)

        checks = [
            TrialCheck("length.bures_line", -_relative_gap(curve_length(MetricKind.bures(), bures_line, self.panels), bures), 1e-6),
            TrialCheck("length.wy_line", -_relative_gap(curve_length(MetricKind.wy(), wy_line, self.panels), wy_distance_cone(rho0, rho1)), 1e-6),
        ]
        dual_length = curve_length(MetricKind.rld(), dual, 2 * self.panels)
        checks.append(TrialCheck("length.rld_dual", -_relative_gap(dual_length, upper), 2e-6))
        checks.append(TrialCheck("chain.rld_dual_le_upper", upper - dual_length, 2e-6))
        for kind in self.kinds:
            checks.append(TrialCheck("chain.bures_le_length", curve_length(kind, bures_line, self.panels) - bures, 1e-9, kind.label))
        checks.append(self._minimality(rng, CurveKind.BURES_LINE, MetricKind.bures(), rho0, rho1))
        checks.append(self._minimality(rng, CurveKind.WY_LINE, MetricKind.wy(), rho0, rho1))
        return checks


@VerificationSuite
class ResidualsSuite(_Suite):
    """
    RLD 对偶曲线的测地线方程残差：端点对易时为零，明显不对易时不为零。
    """
    name = "residuals"
    sample_ts = (0.25, 0.5, 0.75)

    def _max_defect(self, curve: CurveSpec) -> float:
        return max(rld_geodesic_residual(curve, t).orthogonal_defect for t in self.sample_ts)

    def _noncommuting_qubits(self, rng: np.random.Generator) -> Tuple[StateMatrix, StateMatrix]:
        best: Optional[Tuple[float, StateMatrix, StateMatrix]] = None
        for _ in range(100):
            rho0, rho1 = random_state(2, False, rng), random_state(2, False, rng)
            gap = commutator_norm(rho0, rho1)
            if best is None or gap > best[0]:
                best = (gap, rho0, rho1)
            if gap > 0.1:
                break
        assert best is not None
        return best[1], best[2]

    def run_trial(self, rng: np.random.Generator, index: int) -> List[TrialCheck]:
        n = _pick_dimension(rng, self.dims)
        p, q = _diagonal_state(rng, n, False), _diagonal_state(rng, n, False)
        commuting = CurveSpec(kind=CurveKind.RLD_DUAL, rho0=p, rho1=q)
        rho0, rho1 = self._noncommuting_qubits(rng)
        noncommuting = CurveSpec(kind=CurveKind.RLD_DUAL, rho0=rho0, rho1=rho1)
        return [
            TrialCheck("residual.commuting", -self._max_defect(commuting), 1e-6),
            TrialCheck("residual.noncommuting", self._max_defect(noncommuting) - 1e-4, 0.0),
        ]


@VerificationSuite
class HessianCrosscheckSuite(_Suite):
    """
    WYD 度量的 Hessian 定义与特征基系数实现互相校验。
    """
    name = "hessian_crosscheck"
    alphas = (-3.0, -1.5, 0.0, 1.0, 2.5, 3.0)

    def __init__(self, dims: Optional[Sequence[int]] = None, kinds: Optional[Iterable[MetricKind]] = None) -> None:
        super().__init__(dims or (2, 3), kinds)

    def run_trial(self, rng: np.random.Generator, index: int) -> List[TrialCheck]:
        n = _pick_dimension(rng, self.dims)
        rho = random_state(n, True, rng)
        h, k = random_tangent(n, False, rng), random_tangent(n, False, rng)
        checks = []
        for alpha in self.alphas:
            kind = MetricKind.wyd(alpha)
            scale = math.sqrt(metric_eval(kind, rho, h, h) * metric_eval(kind, rho, k, k))
            gap = abs(wyd_metric_hessian(alpha, rho, h, k) - metric_eval(kind, rho, h, k))
            checks.append(TrialCheck(f"hessian.alpha={alpha:g}", -gap / scale, 1e-8))
            swapped = abs(wyd_metric_hessian(alpha, rho, h, k) - wyd_metric_hessian(-alpha, rho, k, h))
            checks.append(TrialCheck("hessian.symmetry", -swapped / scale, 1e-9))
        endpoints = ((0.0, MetricKind.wy()), (3.0, MetricKind.rld()), (-3.0, MetricKind.rld()), (1.0, MetricKind.bkm()), (-1.0, MetricKind.bkm()))
        for alpha, kind in endpoints:
            scale = math.sqrt(metric_eval(kind, rho, h, h) * metric_eval(kind, rho, k, k))
            gap = abs(wyd_metric_hessian(alpha, rho, h, k) - metric_eval(kind, rho, h, k))
            checks.append(TrialCheck(f"hessian.alpha={alpha:g}_vs_{kind.label}", -gap / scale, 1e-8))
        wy = metric_eval(MetricKind.wy(), rho, h, k)
        wy_scale = math.sqrt(metric_eval(MetricKind.wy(), rho, h, h) * metric_eval(MetricKind.wy(), rho, k, k))
        checks.append(TrialCheck("hessian.wy_closed_form", -abs(wy_metric_closed_form(rho, h, k) - wy) / wy_scale, 1e-8))
        return checks


@VerificationSuite
class FrechetFdSuite(_Suite):
    """
    Fréchet 导数与中心差分：步长减半误差约缩小为四分之一。
    """
    name = "frechet_fd"
    functions = (("sqrt", ScalarFunctionSpec.sqrt()), ("log", ScalarFunctionSpec.log()))
    step = 1e-3

    def run_trial(self, rng: np.random.Generator, index: int) -> List[TrialCheck]:
        n = _pick_dimension(rng, self.dims)
        a = hermitize(np.eye(n) + random_state(n, True, rng).data)
        h = random_tangent(n, False, rng).data
        h = h / float(np.max(np.abs(eigh_array(h)[0])))
        k = random_tangent(n, False, rng).data
        checks = []
        for label, spec in self.functions:
            exact = frechet_derivative(spec, a, h).data
            errors = []
            for step in (self.step, self.step / 2.0):
                central = (fn_array(a + step * h, spec) - fn_array(a - step * h, spec)) / (2.0 * step)
                errors.append(float(np.linalg.norm(central - exact)))
            ratio = errors[0] / errors[1]
            checks.append(TrialCheck(f"frechet.{label}.ratio", min(ratio - 3.0, 5.0 - ratio), 0.0, f"ratio={ratio:.4f}"))
            left = np.real(np.trace(k @ exact))
            right = np.real(np.trace(h @ frechet_derivative(spec, a, k).data))
            checks.append(TrialCheck(f"frechet.{label}.symmetry", -_relative_gap(left, right), 1e-10))
        return checks


@VerificationSuite
class BoundsFSuite(_Suite):
    """
    2t/(1+t) ≤ f(t) ≤ (1+t)/2 与归一化 f(1) = 1。
    """
    name = "bounds_f"
    fixed_grid = np.geomspace(0.01, 100.0, 65)

    def run_trial(self, rng: np.random.Generator, index: int) -> List[TrialCheck]:
        grid = np.exp(rng.uniform(math.log(0.01), math.log(100.0), 64))
        # t≈1 附近两侧余量都是 O((t-1)²)，由固定网格（含 t=1）覆盖
        grid = np.concatenate([self.fixed_grid, grid[np.abs(np.log(grid)) > 1e-3]])
        checks = []
        for kind in self.kinds:
            report = check_f_bounds(kind, grid)
            checks.append(TrialCheck(f"bounds.{kind.label}", min(report.lower_margin, report.upper_margin), 1e-12))
            checks.append(TrialCheck(f"normalization.{kind.label}", -abs(float(metric_f(kind, np.array([1.0]))[0]) - 1.0), 1e-12))
        return checks


SUITE_CLASSES = (ChainSuite, MonotonicitySuite, LengthsSuite, ResidualsSuite, HessianCrosscheckSuite, FrechetFdSuite, BoundsFSuite)
SUITE_NAMES = tuple(cls.name for cls in SUITE_CLASSES)


def default_runner(
    kinds: Optional[Iterable[MetricKind]] = None, dims: Optional[Sequence[int]] = None, panels: int = DEFAULT_CONFIG.default_panels
) -> SuiteRunner:
    """
    注册全部内置套件的运行器。
    :param kinds: 限定单调性、边界与长度链检查的度量种类
    :param dims: 限定试验维数
    :param panels: 长度积分的分段数
    :return: 运行器
    """
    runner = SuiteRunner()
    kind_list = list(kinds) if kinds is not None else None
    for cls in SUITE_CLASSES:
        suite = cls(dims=dims, kinds=kind_list, panels=panels) if cls is LengthsSuite else cls(dims=dims, kinds=kind_list)
        runner.register_suite(suite)
    return runner


def run_suite(name: str, trials: int, seed: int, kinds: Optional[Iterable[MetricKind]] = None) -> VerificationReport:
    """
    执行一个验证套件，结果按种子确定；失败记录在报告中而不抛出。
    :param name: chain|monotonicity|lengths|residuals|hessian_crosscheck|frechet_fd|bounds_f
    :param trials: 试验次数
    :param seed: 主种子
    :param kinds: 可选的度量种类限定
    :return: 验证报告
    :raises SuiteNotFound: 套件名未知
    """
    return default_runner(kinds).run(name, trials, seed)
