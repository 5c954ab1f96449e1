"""
矩阵相关类型定义
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from .base import DEFAULT_CONFIG, DimensionMismatch, DomainError, NotHermitian

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """
    n×n厄米矩阵，切向量与一般自伴算子的载体。
    构造时检查 |H - H*| ≤ tol_herm_rel · max|H_ij|，并存储对称化后的只读副本。
    :param data: 复矩阵（任意可转换为 complex128 的二维数组）
    """
    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            logger.error(f"需要n×n方阵，实际形状: {arr.shape}")
            raise DimensionMismatch(f"需要n×n方阵，实际形状: {arr.shape}")
        if not np.all(np.isfinite(arr)):
            logger.error("矩阵含有 NaN 或 Inf")
            raise DomainError("矩阵含有 NaN 或 Inf")
        scale = float(np.max(np.abs(arr)))
        defect = float(np.max(np.abs(arr - arr.conj().T)))
        if defect > DEFAULT_CONFIG.tol_herm_rel * scale:
            logger.error(f"矩阵不是厄米矩阵，偏差: {defect:.3e}")
            raise NotHermitian("矩阵不是厄米矩阵", defect)
        arr = 0.5 * (arr + arr.conj().T)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.data)))

    def __array__(self, dtype: Any = None, copy: Any = None) -> np.ndarray:
        return self.data if dtype is None else self.data.astype(dtype)

    @classmethod
    def from_parts(cls, re: Sequence[Sequence[float]], im: Optional[Sequence[Sequence[float]]] = None) -> "HermitianMatrix":
        """
        由实部和虚部构造。
        :param re: 实部，行优先
        :param im: 虚部，可省略
        :return: 厄米矩阵
        """
        arr = np.asarray(re, dtype=np.float64).astype(np.complex128)
        if im is not None:
            arr = arr + 1j * np.asarray(im, dtype=np.float64)
        return cls(arr)

    @classmethod
    def diag(cls, values: Sequence[float]) -> "HermitianMatrix":
        return cls(np.diag(np.asarray(values, dtype=np.float64)))

    @classmethod
    def identity(cls, n: int) -> "HermitianMatrix":
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, n: int) -> "HermitianMatrix":
        return cls(np.zeros((n, n)))


@dataclass(frozen=True, eq=False)
class StateMatrix:
    """
    正定厄米矩阵（锥 M 的元素），unit_trace 为真时为密度矩阵（D 的元素）。
    请通过 matkern.validate_state 构造，以保证正定性与迹条件已检查。
    :param base: 底层厄米矩阵
    :param unit_trace: 是否要求单位迹
    """
    base: HermitianMatrix
    unit_trace: bool = False

    @property
    def data(self) -> np.ndarray:
        return self.base.data

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def trace(self) -> float:
        return self.base.trace

    def __array__(self, dtype: Any = None, copy: Any = None) -> np.ndarray:
        return self.base.__array__(dtype)


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """
    厄米矩阵的谱分解 H = U·diag(d)·U*。
    :param eigenvalues: 升序排列的实特征值
    :param eigenvectors: 酉矩阵，列为特征向量
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def apply(self, values: np.ndarray) -> np.ndarray:
        """
        以同一特征基重组 U·diag(values)·U*。
        :param values: 对角元
        :return: 复矩阵
        """
        u = self.eigenvectors
        return (u * values) @ u.conj().T

    def reconstruct(self) -> np.ndarray:
        return self.apply(self.eigenvalues)

    def to_eigenbasis(self, x: np.ndarray) -> np.ndarray:
        """
        变换到特征基：U*·x·U。
        """
        u = self.eigenvectors
        return u.conj().T @ x @ u

    def from_eigenbasis(self, x: np.ndarray) -> np.ndarray:
        """
        由特征基变换回来：U·x·U*。
        """
        u = self.eigenvectors
        return u @ x @ u.conj().T


class FunctionKind(str, Enum):
    """
    标量函数种类。
    """
    POWER = "power"
    LOG = "log"
    SQRT = "sqrt"
    F_ALPHA = "f_alpha"
    G0 = "g0"
    CUSTOM_GRID = "custom_grid"
    WYD_MEAN = "wyd_mean"


@dataclass(frozen=True)
class ScalarFunctionSpec:
    """
    标量函数描述，用于谱函数演算、单调度量与拟熵。
    f_alpha 为 WYD 幂函数 2/(1-α)·x^((1-α)/2)（α=1 时为 log），
    wyd_mean 为 WYD(α) 度量对应的对称归一算子单调函数，
    custom_grid 在网格内做单调三次插值，网格外报错。
    :param kind: 函数种类
    :param exponent: 幂指数（仅 power）
    :param alpha: 参数 α（仅 f_alpha 与 wyd_mean）
    :param points: 网格点 (x, y)（仅 custom_grid）
    """
    kind: FunctionKind
    exponent: Optional[float] = None
    alpha: Optional[float] = None
    points: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        if self.kind == FunctionKind.POWER:
            if self.exponent is None or not math.isfinite(self.exponent):
                logger.error(f"幂指数必须为有限实数: {self.exponent}")
                raise DomainError(f"幂指数必须为有限实数: {self.exponent}")
        elif self.kind in (FunctionKind.F_ALPHA, FunctionKind.WYD_MEAN):
            if self.alpha is None or not -3.0 <= self.alpha <= 3.0:
                logger.error(f"α 必须位于 [-3, 3]: {self.alpha}")
                raise DomainError(f"α 必须位于 [-3, 3]: {self.alpha}")
        elif self.kind == FunctionKind.CUSTOM_GRID:
            if len(self.points) < 2:
                raise DomainError("自定义网格至少需要2个点")
            xs = [p[0] for p in self.points]
            if any(b <= a for a, b in zip(xs, xs[1:])):
                logger.error(f"网格横坐标必须严格递增: {xs}")
                raise DomainError("网格横坐标必须严格递增")

    @classmethod
    def power(cls, exponent: float) -> "ScalarFunctionSpec":
        return cls(FunctionKind.POWER, exponent=float(exponent))

    @classmethod
    def log(cls) -> "ScalarFunctionSpec":
        return cls(FunctionKind.LOG)

    @classmethod
    def sqrt(cls) -> "ScalarFunctionSpec":
        return cls(FunctionKind.SQRT)

    @classmethod
    def f_alpha(cls, alpha: float) -> "ScalarFunctionSpec":
        return cls(FunctionKind.F_ALPHA, alpha=float(alpha))

    @classmethod
    def g0(cls) -> "ScalarFunctionSpec":
        return cls(FunctionKind.G0)

    @classmethod
    def wyd_mean(cls, alpha: float) -> "ScalarFunctionSpec":
        return cls(FunctionKind.WYD_MEAN, alpha=float(alpha))

    @classmethod
    def custom_grid(cls, points: Sequence[Tuple[float, float]]) -> "ScalarFunctionSpec":
        return cls(FunctionKind.CUSTOM_GRID, points=tuple((float(x), float(y)) for x, y in points))


# 凸函数与标量函数共用同一描述
ConvexFunctionSpec = ScalarFunctionSpec
