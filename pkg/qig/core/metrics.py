"""
单调黎曼度量 λ_ρ(h,k) = Tr h·J_ρ(k)

J_ρ 在 ρ 的特征基中按 Morozova–Chentsov 系数 c(x,y) = 1/(y·f(x/y)) 逐元素作用。
"""

import logging
from typing import Iterable, Union

import numpy as np
import scipy.linalg

from ..types.base import DEFAULT_CONFIG, DomainError
from ..types.geometry import FBoundsReport, MetricFamily, MetricKind
from ..types.matrices import HermitianMatrix, ScalarFunctionSpec, StateMatrix
from .matkern import (
    MatrixLike,
    as_array,
    check_same_dimension,
    eig_hermitian,
    eigh_stack,
    frechet_derivative,
    hs_inner,
    scalar_eval,
    sqrt_array,
)

logger = logging.getLogger(__name__)

ArrayOrFloat = Union[float, np.ndarray]


def _bkm_f(t: np.ndarray) -> np.ndarray:
    u = t - 1.0
    near = np.abs(u) < DEFAULT_CONFIG.bkm_series_radius
    out = np.empty_like(t)
    # (t-1)/log t 在 t=1 处为 0/0，使用级数 1 + u/2 - u²/12 + u³/24
    un = u[near]
    out[near] = 1.0 + un / 2.0 - un**2 / 12.0 + un**3 / 24.0
    out[~near] = u[~near] / np.log(t[~near])
    return out


def _check_positive(name: str, values: np.ndarray) -> None:
    if not np.all(values > 0):
        logger.error(f"{name} 必须为正: min={np.min(values):.3e}")
        raise DomainError(f"{name} 必须为正: min={np.min(values):.3e}")


def wyd_f(alpha: float) -> ScalarFunctionSpec:
    """
    WYD(α) 度量对应的对称归一算子单调函数。
    闭式 f(t) = (1-α²)(t-1)² / (4(t^p - 1)(t^(1-p) - 1))，p = (1-α)/2。
    与 wyd_metric_hessian 的 c(x,y) = f_α[x,y]·f_{-α}[x,y] 独立，两者互为校验。
    α=0 为 WY，α=±1 为 BKM，α=±3 为 RLD。
    :param alpha: α ∈ [-3, 3]
    :return: 函数描述
    :raises DomainError: |α| > 3
    """
    return ScalarFunctionSpec.wyd_mean(alpha)


def metric_f(m: MetricKind, t: np.ndarray) -> np.ndarray:
    """
    逐点计算度量函数 f(t)。
    """
    t = np.asarray(t, dtype=np.float64)
    _check_positive("t", t)
    family = m.family
    if family == MetricFamily.BURES:
        return (1.0 + t) / 2.0
    if family == MetricFamily.RLD:
        return 2.0 * t / (1.0 + t)
    if family == MetricFamily.WY:
        return ((1.0 + np.sqrt(t)) / 2.0) ** 2
    if family == MetricFamily.BKM:
        return _bkm_f(t)
    if family == MetricFamily.WYD:
        assert m.alpha is not None
        return scalar_eval(wyd_f(m.alpha), t)
    assert m.spec is not None
    return scalar_eval(m.spec, t)


def builtin_f(m: MetricKind, t: float) -> float:
    """
    度量函数 f(t)。
    :param m: 度量种类
    :param t: t > 0
    :return: f(t)
    :raises DomainError: t ≤ 0
    """
    return float(metric_f(m, np.array([t], dtype=np.float64))[0])


def mc_coefficients(m: MetricKind, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    逐元素的 Morozova–Chentsov 系数 c(x,y)。
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    _check_positive("x", x)
    _check_positive("y", y)
    family = m.family
    if family == MetricFamily.BURES:
        return 2.0 / (x + y)
    if family == MetricFamily.RLD:
        return (x + y) / (2.0 * x * y)
    if family == MetricFamily.WY:
        return 4.0 / (np.sqrt(x) + np.sqrt(y)) ** 2
    # WYD 与自定义度量都经由 f；WYD 的 Hessian 定义不经过这里
    return 1.0 / (y * metric_f(m, x / y))


def mc_coefficient(m: MetricKind, x: float, y: float) -> float:
    """
    Morozova–Chentsov 系数 c(x,y) = 1/(y·f(x/y))，关于 (x,y) 对称且 c(x,x) = 1/x。
    :raises DomainError: 参数非正
    """
    return float(mc_coefficients(m, np.array([x], dtype=np.float64), np.array([y], dtype=np.float64))[0])


def _coefficient_matrix(m: MetricKind, d: np.ndarray) -> np.ndarray:
    return mc_coefficients(m, d[:, None], d[None, :])


def apply_J(m: MetricKind, rho: StateMatrix, k: MatrixLike) -> HermitianMatrix:
    """
    J_ρ(k)：在 ρ 的特征基中 (J k)_ij = k̃_ij·c(d_i, d_j)。
    Bures 时 g = J_ρ(k) 满足 ρg + gρ = 2k；RLD 时 J_ρ(k) = (ρ⁻¹k + kρ⁻¹)/2。
    :param m: 度量种类
    :param rho: 态矩阵
    :param k: 厄米方向
    :return: 厄米矩阵
    :raises DimensionMismatch: 维数不一致
    """
    decomposition = eig_hermitian(rho)
    k_arr = as_array(k)
    check_same_dimension(rho.data, k_arr)
    weights = _coefficient_matrix(m, decomposition.eigenvalues)
    return HermitianMatrix(decomposition.from_eigenbasis(decomposition.to_eigenbasis(k_arr) * weights))


def metric_eval(m: MetricKind, rho: StateMatrix, h: MatrixLike, k: MatrixLike) -> float:
    """
    λ_ρ(h,k) = Σ_ij conj(h̃_ij)·k̃_ij·c(d_i, d_j)。
    :param m: 度量种类
    :param rho: 态矩阵
    :param h: 厄米方向
    :param k: 厄米方向
    :return: 实数
    :raises DimensionMismatch: 维数不一致
    """
    decomposition = eig_hermitian(rho)
    h_arr, k_arr = as_array(h), as_array(k)
    check_same_dimension(rho.data, h_arr, k_arr)
    weights = _coefficient_matrix(m, decomposition.eigenvalues)
    h_tilde = decomposition.to_eigenbasis(h_arr)
    k_tilde = decomposition.to_eigenbasis(k_arr)
    value = float(np.real(np.sum(np.conj(h_tilde) * k_tilde * weights)))
    logger.debug(f"λ[{m.label}] = {value:.12g}")
    return value


def metric_quadratic_stack(m: MetricKind, rhos: np.ndarray, hs: np.ndarray) -> np.ndarray:
    """
    批量计算 λ_ρ(h,h)，rhos 与 hs 形状为 (N, n, n)，供曲线长度积分使用。
    :return: 形状 (N,) 的实数组
    """
    d, u = eigh_stack(rhos)
    uh = np.conj(np.swapaxes(u, -1, -2))
    h_tilde = uh @ hs @ u
    weights = mc_coefficients(m, d[:, :, None], d[:, None, :])
    return np.real(np.sum(np.abs(h_tilde) ** 2 * weights, axis=(1, 2)))


def wyd_metric_hessian(alpha: float, rho: StateMatrix, h: MatrixLike, k: MatrixLike) -> float:
    """
    WYD 度量的 Hessian 定义：∂²/∂t∂s Tr f_α(ρ+th)·f_{-α}(ρ+sk) = Tr Df_α[ρ](h)·Df_{-α}[ρ](k)。
    与 metric_eval(WYD(α), ...) 互为独立校验。
    :param alpha: α ∈ [-3, 3]
    :param rho: 态矩阵
    :param h: 厄米方向
    :param k: 厄米方向
    :return: 实数
    :raises DomainError: α 越界
    """
    dh = frechet_derivative(ScalarFunctionSpec.f_alpha(alpha), rho, h)
    dk = frechet_derivative(ScalarFunctionSpec.f_alpha(-alpha), rho, k)
    return float(np.real(hs_inner(dh, dk)))


def wy_metric_closed_form(rho: StateMatrix, h: MatrixLike, k: MatrixLike) -> float:
    """
    WY 度量 4·Tr h·(√L_ρ + √R_ρ)⁻²(k)，两次求解 Sylvester 方程 √ρ·X + X·√ρ = k，不经过特征基系数。
    """
    h_arr, k_arr = as_array(h), as_array(k)
    check_same_dimension(rho.data, h_arr, k_arr)
    root = sqrt_array(rho.data)
    x = scipy.linalg.solve_sylvester(root, root, k_arr)
    y = scipy.linalg.solve_sylvester(root, root, x)
    return float(4.0 * np.real(np.trace(h_arr @ y)))


def check_f_bounds(m: MetricKind, grid: Iterable[float]) -> FBoundsReport:
    """
    检查 2t/(1+t) ≤ f(t) ≤ (1+t)/2。
    :param m: 度量种类
    :param grid: 正数网格
    :return: 两侧的最小余量
    :raises DomainError: 网格为空或含非正数
    """
    t = np.asarray(list(grid), dtype=np.float64)
    if t.size == 0:
        raise DomainError("网格不能为空")
    f = metric_f(m, t)
    report = FBoundsReport(
        lower_margin=float(np.min(f - 2.0 * t / (1.0 + t))),
        upper_margin=float(np.min((1.0 + t) / 2.0 - f)),
    )
    logger.debug(f"f 边界余量[{m.label}]: {report}")
    return report
