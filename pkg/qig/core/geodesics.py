"""
测地线与距离：振幅（纯化）与水平提升、Bures 与 WY 闭式测地线、
RLD 上界曲线、RLD 测地线方程残差，以及任意度量下的曲线长度数值积分。
"""

import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
from scipy.integrate import simpson

from ..types.base import DEFAULT_CONFIG, DegenerateTangent, DimensionMismatch, DomainError, TraceNotOne
from ..types.geometry import (
    Amplitude,
    CurveKind,
    CurveSamples,
    CurveSpec,
    GeodesicResidual,
    HorizontalityCheck,
    MetricKind,
    Perturbation,
)
from ..types.matrices import HermitianMatrix, StateMatrix
from .divergences import fidelity_root, geometric_mean_array
from .matkern import (
    check_same_dimension,
    eigh_stack,
    hermitize,
    inv_sqrt_array,
    is_unit_trace,
    sqrt_array,
    validate_state,
)
from .metrics import metric_quadratic_stack

logger = logging.getLogger(__name__)

AmplitudeLike = Union[Amplitude, np.ndarray]
Derivatives = Tuple[np.ndarray, np.ndarray, np.ndarray]


def _amplitude_pair(w: AmplitudeLike, w_dot: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    wa = w.w if isinstance(w, Amplitude) else Amplitude(w).w
    wd = np.asarray(w_dot, dtype=np.complex128)
    if wd.shape != wa.shape:
        logger.error(f"振幅与速度维数不一致: {wa.shape} != {wd.shape}")
        raise DimensionMismatch(f"振幅与速度维数不一致: {wa.shape} != {wd.shape}")
    return wa, wd


# ---------------------------------------------------------------- 振幅与提升

def amplitude_velocity_projection(w: AmplitudeLike, w_dot: np.ndarray) -> HermitianMatrix:
    """
    振幅速度在 ρ = W·W* 上的投影 Ẇ·W* + W·Ẇ*。
    :param w: 振幅
    :param w_dot: 振幅速度
    :return: 切向量
    :raises DimensionMismatch: 维数不一致
    """
    wa, wd = _amplitude_pair(w, w_dot)
    return HermitianMatrix(hermitize(wd @ wa.conj().T + wa @ wd.conj().T))


def dual_velocity_projection(w: AmplitudeLike, w_dot: np.ndarray) -> HermitianMatrix:
    """
    振幅速度在 σ = W*·W 上的投影 Ẇ*·W + W*·Ẇ。
    """
    wa, wd = _amplitude_pair(w, w_dot)
    return HermitianMatrix(hermitize(wd.conj().T @ wa + wa.conj().T @ wd))


def _horizontality(defect: float, wa: np.ndarray, wd: np.ndarray) -> HorizontalityCheck:
    bound = 1e-9 * float(np.linalg.norm(wa)) * float(np.linalg.norm(wd))
    return HorizontalityCheck(horizontal=defect <= bound, defect=defect)


def is_horizontal(w: AmplitudeLike, w_dot: np.ndarray) -> HorizontalityCheck:
    """
    水平性 W*·Ẇ = Ẇ*·W，等价于 Ẇ = g·W（g 厄米）。
    :param w: 振幅
    :param w_dot: 振幅速度
    :return: 检查结果，defect = ‖W*Ẇ - Ẇ*W‖，阈值 1e-9·‖W‖·‖Ẇ‖
    """
    wa, wd = _amplitude_pair(w, w_dot)
    defect = float(np.linalg.norm(wa.conj().T @ wd - wd.conj().T @ wa))
    return _horizontality(defect, wa, wd)


def is_dual_horizontal(w: AmplitudeLike, w_dot: np.ndarray) -> HorizontalityCheck:
    """
    对偶水平性 Ẇ·W* = W·Ẇ*，等价于 Ẇ = W·g（g 厄米），也等价于 is_horizontal(W*, Ẇ*)。
    """
    wa, wd = _amplitude_pair(w, w_dot)
    defect = float(np.linalg.norm(wd @ wa.conj().T - wa @ wd.conj().T))
    return _horizontality(defect, wa, wd)


def horizontal_lift(w: AmplitudeLike, h: HermitianMatrix) -> np.ndarray:
    """
    切向量 h 在 W 处的水平提升 ĥ = g·W，g 由 g·ρ + ρ·g = h 唯一确定（ρ = W·W*）。
    :param w: 可逆振幅
    :param h: 切向量
    :return: 复矩阵 ĥ
    """
    wa, h_arr = _amplitude_pair(w, h.data)
    rho = hermitize(wa @ wa.conj().T)
    g = hermitize(scipy.linalg.solve_sylvester(rho, rho, h_arr))
    return g @ wa


def dual_lift(w: AmplitudeLike, h: HermitianMatrix) -> np.ndarray:
    """
    对偶提升 h̃ = ½·h·(W*)⁻¹：{W·g} 中投影为 h 的唯一元素。
    """
    wa, h_arr = _amplitude_pair(w, h.data)
    return scipy.linalg.solve(wa, 0.5 * h_arr).conj().T


def lift_metric(w: AmplitudeLike, h: HermitianMatrix, k: HermitianMatrix, dual: bool = False) -> float:
    """
    4·Re⟨ĥ, k̂⟩：水平提升给出 Bures 度量，对偶提升给出 RLD 度量。
    :param w: 可逆振幅
    :param h: 切向量
    :param k: 切向量
    :param dual: 是否使用对偶提升
    :return: 实数
    """
    lift = dual_lift if dual else horizontal_lift
    return float(4.0 * np.real(np.vdot(lift(w, h), lift(w, k))))


def parallel_amplitude(rho0: StateMatrix, rho1: StateMatrix) -> Amplitude:
    """
    与 W0 = ρ0^{1/2} 平行的 ρ1 振幅 W1 = ρ0^{-1/2}·(ρ0^{1/2}·ρ1·ρ0^{1/2})^{1/2}，
    满足 W1·W1* = ρ1 与 W1*·W0 ≥ 0。
    :param rho0: 态矩阵
    :param rho1: 态矩阵
    :return: 振幅 W1
    :raises DimensionMismatch: 维数不一致
    """
    check_same_dimension(rho0.data, rho1.data)
    root = sqrt_array(rho0.data)
    inner = sqrt_array(hermitize(root @ rho1.data @ root))
    return Amplitude(inv_sqrt_array(rho0.data) @ inner)


# ---------------------------------------------------------------- 距离

def _require_unit_trace(*states: StateMatrix) -> None:
    for rho in states:
        if not is_unit_trace(rho):
            logger.error(f"需要密度矩阵，迹: {rho.trace!r}")
            raise TraceNotOne(f"需要密度矩阵，迹: {rho.trace!r}")


def _cone_distance(tr0: float, tr1: float, overlap: float) -> float:
    return float(2.0 * np.sqrt(max(tr0 + tr1 - 2.0 * overlap, 0.0)))


def _arc_distance(overlap: float) -> float:
    return float(2.0 * np.arccos(np.clip(overlap, -1.0, 1.0)))


def bures_distance_cone(rho0: StateMatrix, rho1: StateMatrix) -> float:
    """
    d_Bures = 2·√(Trρ0 + Trρ1 - 2·Tr(ρ0^{1/2}ρ1ρ0^{1/2})^{1/2})。
    """
    return _cone_distance(rho0.trace, rho1.trace, fidelity_root(rho0, rho1))


def bures_distance_density(rho0: StateMatrix, rho1: StateMatrix) -> float:
    """
    D_Bures = 2·arccos Tr(ρ0^{1/2}ρ1ρ0^{1/2})^{1/2}。
    :raises TraceNotOne: 端点不是密度矩阵
    """
    _require_unit_trace(rho0, rho1)
    return _arc_distance(fidelity_root(rho0, rho1))


def _wy_overlap(rho0: StateMatrix, rho1: StateMatrix) -> float:
    check_same_dimension(rho0.data, rho1.data)
    return float(np.real(np.trace(sqrt_array(rho0.data) @ sqrt_array(rho1.data))))


def wy_distance_cone(rho0: StateMatrix, rho1: StateMatrix) -> float:
    """
    d_WY = 2·‖ρ0^{1/2} - ρ1^{1/2}‖。
    """
    check_same_dimension(rho0.data, rho1.data)
    return float(2.0 * np.linalg.norm(sqrt_array(rho0.data) - sqrt_array(rho1.data)))


def wy_distance_density(rho0: StateMatrix, rho1: StateMatrix) -> float:
    """
    D_WY = 2·arccos Tr ρ0^{1/2}ρ1^{1/2}。
    """
    _require_unit_trace(rho0, rho1)
    return _arc_distance(_wy_overlap(rho0, rho1))


def _mean_overlap(rho0: StateMatrix, rho1: StateMatrix) -> float:
    check_same_dimension(rho0.data, rho1.data)
    return float(np.real(np.trace(geometric_mean_array(rho0.data, rho1.data))))


def rld_upper_bound_cone(rho0: StateMatrix, rho1: StateMatrix) -> float:
    """
    所有单调度量测地距离的上界 2·√(Trρ0 + Trρ1 - 2·Tr ρ0#ρ1)，关于两端对称。
    """
    return _cone_distance(rho0.trace, rho1.trace, _mean_overlap(rho0, rho1))


def rld_upper_bound_density(rho0: StateMatrix, rho1: StateMatrix) -> float:
    """
    密度矩阵上的上界 2·arccos Tr ρ0#ρ1 < π。
    """
    _require_unit_trace(rho0, rho1)
    return _arc_distance(_mean_overlap(rho0, rho1))


def _dual_root(rho0: np.ndarray, rho1: np.ndarray) -> np.ndarray:
    inv_root = inv_sqrt_array(rho0)
    return sqrt_array(hermitize(inv_root @ rho1 @ inv_root))


def rld_dual_partner(rho0: StateMatrix, rho1: StateMatrix) -> StateMatrix:
    """
    ρ0^{-1/2}·(ρ0#ρ1)²·ρ0^{-1/2} = q·ρ0·q，q = (ρ0^{-1/2}ρ1ρ0^{-1/2})^{1/2}。
    它与 ρ0 的 Bures 距离等于 rld_upper_bound_cone(ρ0, ρ1)。
    """
    check_same_dimension(rho0.data, rho1.data)
    q = _dual_root(rho0.data, rho1.data)
    return validate_state(hermitize(q @ rho0.data @ q))


# ---------------------------------------------------------------- 曲线

class CurveModel:
    """
    曲线的解析模型。除线性插值外，所有内置种类都写成 A(t) = P(t)·P(t)*，P 关于 t 为一次式，
    于是 Ȧ = Ṗ·P* + P·Ṗ*，Ä = 2·Ṗ·Ṗ*；归一化曲线 ρ = A/Tr A 用商的求导法则。
    """
    def __init__(self, curve: CurveSpec) -> None:
        self.curve = curve
        rho0, rho1 = curve.rho0.data, curve.rho1.data
        self._p0: Optional[np.ndarray] = None
        self._dp: Optional[np.ndarray] = None
        kind = curve.kind
        if kind in (CurveKind.BURES_LINE, CurveKind.BURES_ARC):
            self._p0 = sqrt_array(rho0)
            self._dp = parallel_amplitude(curve.rho0, curve.rho1).w - self._p0
        elif kind in (CurveKind.WY_LINE, CurveKind.WY_ARC):
            self._p0 = sqrt_array(rho0)
            self._dp = sqrt_array(rho1) - self._p0
        elif kind == CurveKind.RLD_DUAL:
            self._p0 = sqrt_array(rho0)
            self._dp = self._p0 @ (_dual_root(rho0, rho1) - np.eye(curve.n))
        self._rho0 = rho0
        self._delta = rho1 - rho0

    def _unnormalized(self, t: float) -> Derivatives:
        if self._p0 is None or self._dp is None:
            return self._rho0 + t * self._delta, self._delta, np.zeros_like(self._delta)
        p = self._p0 + t * self._dp
        dp = self._dp
        a = hermitize(p @ p.conj().T)
        a1 = hermitize(dp @ p.conj().T + p @ dp.conj().T)
        a2 = hermitize(2.0 * dp @ dp.conj().T)
        return a, a1, a2

    def derivatives(self, t: float) -> Derivatives:
        """
        曲线在 t 处的 (ρ, ρ̇, ρ̈)。
        """
        a, a1, a2 = self._unnormalized(t)
        if self.curve.is_normalized:
            s, s1, s2 = (float(np.real(np.trace(x))) for x in (a, a1, a2))
            rho = a / s
            rho1 = a1 / s - a * s1 / s**2
            rho2 = a2 / s - 2.0 * a1 * s1 / s**2 - a * s2 / s**2 + 2.0 * a * s1**2 / s**3
            a, a1, a2 = rho, rho1, rho2
        perturbation = self.curve.perturbation
        if perturbation is not None:
            c0, c1, c2 = perturbation.coefficients(t)
            direction = perturbation.direction.data
            a, a1, a2 = a + c0 * direction, a1 + c1 * direction, a2 + c2 * direction
        return a, a1, a2

    def state(self, t: float) -> np.ndarray:
        return self.derivatives(t)[0]

    def stacked(self, ts: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        一次算出整个参数网格上的 (ρ, ρ̇)，形状均为 (len(ts), n, n)。
        """
        t = np.asarray(ts, dtype=np.float64)[:, None, None]
        if self._p0 is None or self._dp is None:
            a = self._rho0 + t * self._delta
            a1 = np.broadcast_to(self._delta, a.shape)
        else:
            p = self._p0 + t * self._dp
            ph = np.conj(np.swapaxes(p, -1, -2))
            a = p @ ph
            cross = self._dp @ ph
            a1 = cross + np.conj(np.swapaxes(cross, -1, -2))
        if self.curve.is_normalized:
            s = np.real(np.trace(a, axis1=1, axis2=2))[:, None, None]
            s1 = np.real(np.trace(a1, axis1=1, axis2=2))[:, None, None]
            a, a1 = a / s, a1 / s - a * s1 / s**2
        perturbation = self.curve.perturbation
        if perturbation is not None:
            coefficients = np.array([perturbation.coefficients(float(x))[:2] for x in np.ravel(t)])
            direction = perturbation.direction.data
            a = a + coefficients[:, 0, None, None] * direction
            a1 = a1 + coefficients[:, 1, None, None] * direction
        return a, a1

    def finite_differences(self, t: float, step: float) -> Derivatives:
        """
        中心差分 (ρ, ρ̇, ρ̈)。
        """
        rho = self.state(t)
        forward, backward = self.state(t + step), self.state(t - step)
        return rho, (forward - backward) / (2.0 * step), (forward - 2.0 * rho + backward) / step**2


def _check_parameter(t: float) -> float:
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"曲线参数必须位于 [0, 1]: {t}")
    return float(t)


def _curve_state(kind: CurveKind, rho0: StateMatrix, rho1: StateMatrix, t: float, normalized: bool) -> StateMatrix:
    curve = CurveSpec(kind=kind, rho0=rho0, rho1=rho1, normalized=normalized)
    state = CurveModel(curve).state(_check_parameter(t))
    return validate_state(state, unit_trace=curve.is_normalized)


def bures_geodesic(rho0: StateMatrix, rho1: StateMatrix, t: float, normalized: bool = False) -> StateMatrix:
    """
    Bures 测地线 ρ_t = (t·W1 + (1-t)·W0)(t·W1 + (1-t)·W0)*，W1 与 W0 = ρ0^{1/2} 平行。
    normalized 为真时除以迹，得到 D 上的弧（端点须为密度矩阵）。
    :param rho0: 起点
    :param rho1: 终点
    :param t: t ∈ [0, 1]
    :param normalized: 是否归一化
    :return: 态矩阵
    """
    kind = CurveKind.BURES_ARC if normalized else CurveKind.BURES_LINE
    return _curve_state(kind, rho0, rho1, t, normalized)


def wy_geodesic(rho0: StateMatrix, rho1: StateMatrix, t: float, normalized: bool = False) -> StateMatrix:
    """
    WY 测地线 ρ_t = (t·ρ1^{1/2} + (1-t)·ρ0^{1/2})²，normalized 时除以迹。
    """
    kind = CurveKind.WY_ARC if normalized else CurveKind.WY_LINE
    return _curve_state(kind, rho0, rho1, t, normalized)


def rld_dual_curve(rho0: StateMatrix, rho1: StateMatrix, t: float) -> StateMatrix:
    """
    ρ_t = ρ0^{1/2}·(I + t(q - I))²·ρ0^{1/2}，q = (ρ0^{-1/2}ρ1ρ0^{-1/2})^{1/2}。
    其 RLD 长度等于 rld_upper_bound_cone(ρ0, ρ1)。
    """
    return _curve_state(CurveKind.RLD_DUAL, rho0, rho1, t, False)


def sample_curve(curve: CurveSpec, ts: Sequence[float]) -> CurveSamples:
    """
    在参数网格上采样曲线。
    :param curve: 曲线描述
    :param ts: [0, 1] 内的参数
    :return: 采样结果
    """
    grid = np.array([_check_parameter(t) for t in ts], dtype=np.float64)
    model = CurveModel(curve)
    states = np.array([model.state(t) for t in grid], dtype=np.complex128).reshape(len(grid), curve.n, curve.n)
    logger.debug(f"曲线 {curve.kind.value} 采样 {len(grid)} 点")
    return CurveSamples(ts=grid, states=states)


def curve_derivatives(
    curve: CurveSpec, t: float, analytic: bool = True, step: Optional[float] = None
) -> Tuple[HermitianMatrix, HermitianMatrix, HermitianMatrix]:
    """
    曲线在 t 处的 (ρ, ρ̇, ρ̈)。
    :param curve: 曲线描述
    :param t: 参数
    :param analytic: 是否使用解析导数；否则中心差分
    :param step: 差分步长，默认 fd_step
    :return: 三个厄米矩阵
    """
    model = CurveModel(curve)
    if analytic:
        values = model.derivatives(t)
    else:
        values = model.finite_differences(t, step or DEFAULT_CONFIG.fd_step)
    rho, rho_dot, rho_ddot = (HermitianMatrix(hermitize(x)) for x in values)
    return rho, rho_dot, rho_ddot


def bounded_perturbation(
    curve: CurveSpec, direction: HermitianMatrix, amplitude: float, frequency: int = 1, samples: int = 33
) -> Perturbation:
    """
    构造不离开正定锥的扰动：幅度不超过基曲线上最小特征值的一半（方向按算子范数计）。
    :param curve: 基曲线（不带扰动）
    :param direction: 厄米方向
    :param amplitude: 期望幅度
    :param frequency: 频率 k
    :param samples: 沿曲线检查最小特征值的点数
    :return: 扰动
    """
    model = CurveModel(curve)
    lowest = float(np.min(eigh_stack(model.stacked(np.linspace(0.0, 1.0, samples))[0])[0]))
    spread = float(np.linalg.norm(direction.data, 2))
    cap = 0.5 * lowest / spread if spread > 0 else abs(amplitude)
    return Perturbation(direction=direction, amplitude=float(np.clip(amplitude, -cap, cap)), frequency=frequency)


def rld_geodesic_residual(
    curve: CurveSpec, t: float, analytic: bool = True, step: Optional[float] = None
) -> GeodesicResidual:
    """
    RLD 测地线方程残差 r = ρ̈ + (L_ρ+R_ρ)⁻¹(ρ̇²) - ρ̇·ρ⁻¹·ρ̇。
    曲线是（重新参数化的）RLD 测地线当且仅当 r 与 ρ̇ 共线；
    a = Re⟨ρ̇, r⟩/⟨ρ̇, ρ̇⟩ 为最小二乘系数，orthogonal_defect = ‖r - a·ρ̇‖。
    :param curve: 曲线描述
    :param t: 参数
    :param analytic: 是否使用解析导数
    :param step: 差分步长，默认 1e-4
    :return: 残差结果
    :raises DegenerateTangent: ‖ρ̇‖ < 1e-12
    """
    model = CurveModel(curve)
    if analytic:
        rho, rho_dot, rho_ddot = model.derivatives(t)
    else:
        rho, rho_dot, rho_ddot = model.finite_differences(t, step or DEFAULT_CONFIG.fd_step)
    speed = float(np.linalg.norm(rho_dot))
    if speed < 1e-12:
        logger.error(f"切向量退化: ‖ρ̇‖ = {speed:.3e}")
        raise DegenerateTangent(f"切向量退化: ‖ρ̇‖ = {speed:.3e}")
    rho = hermitize(rho)
    square = rho_dot @ rho_dot
    sylvester = scipy.linalg.solve_sylvester(rho, rho, square)
    residual = hermitize(rho_ddot + sylvester - rho_dot @ scipy.linalg.solve(rho, rho_dot, assume_a="her"))
    fitted = float(np.real(np.vdot(rho_dot, residual)) / speed**2)
    defect = float(np.linalg.norm(residual - fitted * rho_dot))
    logger.debug(f"RLD 残差 t={t:g}: a={fitted:.6g}, defect={defect:.3e}")
    return GeodesicResidual(residual=HermitianMatrix(residual), fitted_a=fitted, orthogonal_defect=defect)


def curve_length(m: MetricKind, curve: CurveSpec, panels: int = DEFAULT_CONFIG.default_panels, analytic: bool = True) -> float:
    """
    l = ∫_0^1 √λ_ρt(ρ̇t, ρ̇t) dt，复合 Simpson 求积。
    :param m: 度量种类
    :param curve: 曲线描述
    :param panels: 分段数（≥ 8）
    :param analytic: 是否使用解析切向量；否则步长 1/(8·panels) 的中心差分
    :return: 长度
    :raises DomainError: panels < 8
    """
    if panels < 8:
        raise DomainError(f"panels 至少为 8: {panels}")
    model = CurveModel(curve)
    step = 1.0 / (8.0 * panels)
    ts = np.linspace(0.0, 1.0, panels + 1)
    rhos, rho_dots = model.stacked(ts)
    if not analytic:
        rho_dots = (model.stacked(ts + step)[0] - model.stacked(ts - step)[0]) / (2.0 * step)
    rho_dots = 0.5 * (rho_dots + np.conj(np.swapaxes(rho_dots, -1, -2)))
    speeds = np.sqrt(np.maximum(metric_quadratic_stack(m, rhos, rho_dots), 0.0))
    length = float(simpson(speeds, x=ts))
    logger.debug(f"曲线长度[{m.label}, {curve.kind.value}, panels={panels}] = {length:.12g}")
    return length
