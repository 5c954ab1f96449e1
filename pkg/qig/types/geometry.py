"""
几何相关类型定义：度量种类、振幅、曲线描述及计算结果
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from .base import DEFAULT_CONFIG, DimensionMismatch, DomainError, TraceNotOne
from .matrices import HermitianMatrix, ScalarFunctionSpec, StateMatrix

logger = logging.getLogger(__name__)

# WYD 度量族的内置 α 取值
WYD_BUILTIN_ALPHAS = (-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0)


class MetricFamily(str, Enum):
    """
    单调度量族。
    """
    BURES = "bures"
    RLD = "rld"
    WY = "wy"
    BKM = "bkm"
    WYD = "wyd"
    CUSTOM = "custom"


@dataclass(frozen=True)
class MetricKind:
    """
    单调黎曼度量，由对称归一算子单调函数 f 标记。
    内置：Bures f(t)=(1+t)/2，RLD f(t)=2t/(1+t)，WY f(t)=((1+√t)/2)²，
    BKM f(t)=(t-1)/log t，WYD(α) 由 Hessian 定义导出。
    自定义 f 在构造时于网格 t∈[0.1, 10] 上数值检查对称性与归一化；算子单调性不做检查。
    :param family: 度量族
    :param alpha: WYD 参数 α ∈ [-3, 3]
    :param spec: 自定义函数描述（仅 CUSTOM）
    """
    family: MetricFamily
    alpha: Optional[float] = None
    spec: Optional[ScalarFunctionSpec] = None

    def __post_init__(self) -> None:
        if self.family == MetricFamily.WYD:
            if self.alpha is None or not -3.0 <= self.alpha <= 3.0:
                logger.error(f"WYD 参数 α 必须位于 [-3, 3]: {self.alpha}")
                raise DomainError(f"WYD 参数 α 必须位于 [-3, 3]: {self.alpha}")
        elif self.family == MetricFamily.CUSTOM:
            if self.spec is None:
                raise DomainError("自定义度量需要提供函数描述")
            self._check_custom_f()

    def _check_custom_f(self) -> None:
        """
        检查 f(t) = t·f(1/t) 与 f(1) = 1。
        """
        # 延迟导入避免循环依赖
        from ..core.matkern import scalar_eval

        assert self.spec is not None
        grid = np.geomspace(0.1, 10.0, 21)
        f_t = scalar_eval(self.spec, grid)
        f_inv = scalar_eval(self.spec, 1.0 / grid)
        defect = float(np.max(np.abs(f_t - grid * f_inv) / np.maximum(1.0, np.abs(f_t))))
        if defect > 1e-10:
            logger.error(f"自定义函数不满足对称性 f(t)=t·f(1/t)，偏差: {defect:.3e}")
            raise DomainError(f"自定义函数不满足对称性 f(t)=t·f(1/t)，偏差: {defect:.3e}")
        f_one = float(scalar_eval(self.spec, np.array([1.0]))[0])
        if abs(f_one - 1.0) > 1e-12:
            logger.error(f"自定义函数不满足归一化 f(1)=1，实际: {f_one}")
            raise DomainError(f"自定义函数不满足归一化 f(1)=1，实际: {f_one}")

    @property
    def label(self) -> str:
        if self.family == MetricFamily.WYD:
            return f"wyd(alpha={self.alpha:g})"
        return self.family.value

    @classmethod
    def bures(cls) -> "MetricKind":
        return cls(MetricFamily.BURES)

    @classmethod
    def rld(cls) -> "MetricKind":
        return cls(MetricFamily.RLD)

    @classmethod
    def wy(cls) -> "MetricKind":
        return cls(MetricFamily.WY)

    @classmethod
    def bkm(cls) -> "MetricKind":
        return cls(MetricFamily.BKM)

    @classmethod
    def wyd(cls, alpha: float) -> "MetricKind":
        return cls(MetricFamily.WYD, alpha=float(alpha))

    @classmethod
    def custom(cls, spec: ScalarFunctionSpec) -> "MetricKind":
        return cls(MetricFamily.CUSTOM, spec=spec)

    @classmethod
    def parse(cls, name: str, alpha: Optional[float] = None) -> "MetricKind":
        """
        由名称构造度量种类。
        :param name: bures|rld|wy|bkm|wyd
        :param alpha: 仅 wyd 需要
        :return: 度量种类
        :raises DomainError: 名称未知或 α 用法不当
        """
        key = name.strip().lower()
        builders = {"bures": cls.bures, "rld": cls.rld, "wy": cls.wy, "bkm": cls.bkm}
        if key == "wyd":
            if alpha is None:
                raise DomainError("wyd 度量需要提供 α")
            return cls.wyd(alpha)
        if key not in builders:
            logger.error(f"未知的度量种类: {name}")
            raise DomainError(f"未知的度量种类: {name}")
        if alpha is not None:
            raise DomainError(f"α 仅适用于 wyd 度量，当前种类: {name}")
        return builders[key]()

    @classmethod
    def builtins(cls) -> List["MetricKind"]:
        """
        全部内置度量，WYD 取 α ∈ {-3,…,3}。
        """
        kinds = [cls.bures(), cls.rld(), cls.wy(), cls.bkm()]
        kinds.extend(cls.wyd(a) for a in WYD_BUILTIN_ALPHAS)
        return kinds


@dataclass(frozen=True, eq=False)
class Amplitude:
    """
    振幅（纯化）W：左态 ρ = W·W*，右态 σ = W*·W。
    :param w: n×n 复矩阵
    """
    w: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.w, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"振幅需要n×n方阵，实际形状: {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "w", arr)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def left_state(self) -> np.ndarray:
        return self.w @ self.w.conj().T

    def right_state(self) -> np.ndarray:
        return self.w.conj().T @ self.w


class CurveKind(str, Enum):
    """
    曲线种类。
    """
    BURES_LINE = "bures-line"
    BURES_ARC = "bures-arc"
    WY_LINE = "wy-line"
    WY_ARC = "wy-arc"
    RLD_DUAL = "rld-dual"
    LINEAR_INTERPOLATION = "linear"


@dataclass(frozen=True)
class Perturbation:
    """
    固定端点的光滑扰动 amplitude·sin(kπt)·direction。
    :param direction: 厄米方向矩阵
    :param amplitude: 幅度
    :param frequency: 频率 k（正整数）
    """
    direction: HermitianMatrix
    amplitude: float
    frequency: int = 1

    def __post_init__(self) -> None:
        if self.frequency < 1:
            raise DomainError(f"扰动频率必须为正整数: {self.frequency}")

    def coefficients(self, t: float) -> Tuple[float, float, float]:
        """
        扰动系数及其一阶、二阶导数。
        """
        w = self.frequency * math.pi
        return (
            self.amplitude * math.sin(w * t),
            self.amplitude * w * math.cos(w * t),
            -self.amplitude * w * w * math.sin(w * t),
        )


@dataclass(frozen=True)
class CurveSpec:
    """
    参数曲线 t∈[0,1] → M，由种类和端点确定。
    *-arc 种类总是归一化到 D；其余种类由 normalized 决定。
    :param kind: 曲线种类
    :param rho0: 起点
    :param rho1: 终点
    :param normalized: 是否归一化到单位迹
    :param perturbation: 可选的固定端点扰动
    """
    kind: CurveKind
    rho0: StateMatrix
    rho1: StateMatrix
    normalized: bool = False
    perturbation: Optional[Perturbation] = None

    def __post_init__(self) -> None:
        if self.rho0.n != self.rho1.n:
            raise DimensionMismatch(f"端点维数不一致: {self.rho0.n} != {self.rho1.n}")
        if self.perturbation is not None and self.perturbation.direction.n != self.rho0.n:
            raise DimensionMismatch("扰动方向维数与端点不一致")
        if self.is_normalized:
            for rho in (self.rho0, self.rho1):
                if abs(rho.trace - 1.0) > DEFAULT_CONFIG.trace_tol:
                    logger.error(f"归一化曲线要求端点为密度矩阵，迹: {rho.trace}")
                    raise TraceNotOne(f"归一化曲线要求端点为密度矩阵，迹: {rho.trace}")

    @property
    def is_normalized(self) -> bool:
        return self.normalized or self.kind in (CurveKind.BURES_ARC, CurveKind.WY_ARC)

    @property
    def n(self) -> int:
        return self.rho0.n


@dataclass(frozen=True, eq=False)
class CurveSamples:
    """
    曲线采样结果。
    :param ts: 参数取值
    :param states: 形状 (m, n, n) 的态数组
    """
    ts: np.ndarray
    states: np.ndarray


@dataclass(frozen=True)
class HorizontalityCheck:
    """
    水平性检查结果。
    :param horizontal: 是否水平
    :param defect: ‖W*Ẇ - Ẇ*W‖
    """
    horizontal: bool
    defect: float

    def __bool__(self) -> bool:
        return self.horizontal


@dataclass(frozen=True)
class FBoundsReport:
    """
    f 的上下界余量：min f(t) - 2t/(1+t) 与 min (1+t)/2 - f(t)。
    """
    lower_margin: float
    upper_margin: float


@dataclass(frozen=True)
class GeodesicResidual:
    """
    RLD 测地线方程残差。
    :param residual: 残差矩阵 r(t)
    :param fitted_a: 最小二乘拟合的 a(t)
    :param orthogonal_defect: ‖r - a·ρ̇‖
    """
    residual: HermitianMatrix
    fitted_a: float
    orthogonal_defect: float

