"""
几何平均、拟熵 S_g、广义相对熵 H_g 以及经典对角情形的距离
"""

import logging
from typing import Sequence

import numpy as np

from ..types.base import DEFAULT_CONFIG, InvalidDistribution, InvalidMeasure
from ..types.matrices import ConvexFunctionSpec, StateMatrix
from .matkern import (
    check_same_dimension,
    eigh_array,
    fn_array,
    hermitize,
    inv_sqrt_array,
    scalar_eval,
    sqrt_array,
    validate_state,
)

logger = logging.getLogger(__name__)


def geometric_mean_array(rho0: np.ndarray, rho1: np.ndarray) -> np.ndarray:
    """
    ρ0#ρ1 = ρ0^{1/2}·(ρ0^{-1/2}·ρ1·ρ0^{-1/2})^{1/2}·ρ0^{1/2}（数组层面，不做校验）。
    """
    root = sqrt_array(rho0)
    inv_root = inv_sqrt_array(rho0)
    middle = sqrt_array(hermitize(inv_root @ rho1 @ inv_root))
    return hermitize(root @ middle @ root)


def geometric_mean(rho0: StateMatrix, rho1: StateMatrix) -> StateMatrix:
    """
    矩阵几何平均 ρ0#ρ1，按合同变换公式计算。
    :param rho0: 态矩阵
    :param rho1: 态矩阵
    :return: 正定矩阵，关于两个参数对称
    :raises DimensionMismatch: 维数不一致
    :raises NotPositiveDefinite: 结果数值上失去正定性
    """
    check_same_dimension(rho0.data, rho1.data)
    return validate_state(geometric_mean_array(rho0.data, rho1.data))


def fidelity_root(rho0: StateMatrix, rho1: StateMatrix) -> float:
    """
    Tr(ρ0^{1/2}·ρ1·ρ0^{1/2})^{1/2}，Bures 距离的公共部分。
    """
    check_same_dimension(rho0.data, rho1.data)
    root = sqrt_array(rho0.data)
    inner = hermitize(root @ rho1.data @ root)
    d, _ = eigh_array(inner)
    return float(np.sum(np.sqrt(np.clip(d, 0.0, None))))


def quasi_entropy_S(g: ConvexFunctionSpec, rho: StateMatrix, sigma: StateMatrix) -> float:
    """
    拟熵 S_g(ρ,σ) = Tr ρ^{1/2}·g(Δ_{σ,ρ})(ρ^{1/2})，Δ_{σ,ρ} = L_σ·R_ρ⁻¹。
    双特征基计算：σ = U·diag(s)·U*，ρ = V·diag(r)·V*，X = U*·ρ^{1/2}·V，S_g = Σ g(s_i/r_j)·|X_ij|²。
    :param g: 凸函数
    :param rho: 态矩阵
    :param sigma: 态矩阵
    :return: 实数
    :raises DomainError: g 在某个 s_i/r_j 处无定义
    """
    check_same_dimension(rho.data, sigma.data)
    s, u = eigh_array(sigma.data)
    r, v = eigh_array(rho.data)
    x = u.conj().T @ sqrt_array(rho.data) @ v
    ratios = s[:, None] / r[None, :]
    value = float(np.sum(scalar_eval(g, ratios) * np.abs(x) ** 2))
    logger.debug(f"S_{g.kind.value} = {value:.12g}")
    return value


def relative_entropy_H(g: ConvexFunctionSpec, rho0: StateMatrix, rho1: StateMatrix) -> float:
    """
    广义相对熵 H_g(ρ0,ρ1) = Tr ρ0·g(ρ0^{-1/2}·ρ1·ρ0^{-1/2})。
    取 g0 时等于 2Trρ0 + 2Trρ1 - 4Tr(ρ0#ρ1)。
    :param g: 凸函数
    :param rho0: 态矩阵
    :param rho1: 态矩阵
    :return: 实数
    :raises DimensionMismatch: 维数不一致
    """
    check_same_dimension(rho0.data, rho1.data)
    inv_root = inv_sqrt_array(rho0.data)
    argument = hermitize(inv_root @ rho1.data @ inv_root)
    value = float(np.real(np.trace(rho0.data @ fn_array(argument, g))))
    logger.debug(f"H_{g.kind.value} = {value:.12g}")
    return value


def _as_measure(p: Sequence[float], name: str, normalized: bool) -> np.ndarray:
    arr = np.asarray(p, dtype=np.float64)
    error = InvalidDistribution if normalized else InvalidMeasure
    if arr.ndim != 1 or arr.size == 0:
        raise error(f"{name} 必须是非空一维向量")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        logger.error(f"{name} 的分量必须严格为正: {arr}")
        raise error(f"{name} 的分量必须严格为正")
    if normalized and abs(float(np.sum(arr)) - 1.0) > DEFAULT_CONFIG.trace_tol:
        logger.error(f"{name} 的分量之和必须为1: {np.sum(arr)!r}")
        raise error(f"{name} 的分量之和必须为1: {np.sum(arr)!r}")
    return arr


def _pair(p: Sequence[float], q: Sequence[float], normalized: bool):
    pa, qa = _as_measure(p, "p", normalized), _as_measure(q, "q", normalized)
    if pa.shape != qa.shape:
        error = InvalidDistribution if normalized else InvalidMeasure
        raise error(f"长度不一致: {pa.size} != {qa.size}")
    return pa, qa


def classical_bhattacharya(p: Sequence[float], q: Sequence[float]) -> float:
    """
    D(p,q) = 2·arccos(Σ√(p_i·q_i))，arccos 参数截断到 [-1, 1]。
    :raises InvalidDistribution: 不是严格为正的概率向量
    """
    pa, qa = _pair(p, q, normalized=True)
    return float(2.0 * np.arccos(np.clip(np.sum(np.sqrt(pa * qa)), -1.0, 1.0)))


def classical_hellinger_H(p: Sequence[float], q: Sequence[float]) -> float:
    """
    H(p,q) = 2·Σ(√p_i - √q_i)²。
    :raises InvalidMeasure: 分量非正
    """
    pa, qa = _pair(p, q, normalized=False)
    return float(2.0 * np.sum((np.sqrt(pa) - np.sqrt(qa)) ** 2))


def classical_hellinger_d(p: Sequence[float], q: Sequence[float]) -> float:
    """
    d(p,q) = 2·(Σ(√p_i - √q_i)²)^{1/2} = √(2H(p,q))。
    :raises InvalidMeasure: 分量非正
    """
    pa, qa = _pair(p, q, normalized=False)
    return float(2.0 * np.sqrt(np.sum((np.sqrt(pa) - np.sqrt(qa)) ** 2)))
