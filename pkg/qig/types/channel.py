"""
量子信道类型定义
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .base import DEFAULT_CONFIG, DimensionError, DomainError, InvalidChannel

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CptpMap:
    """
    完全正保迹映射，以 Kraus 算子 K_1…K_m 表示。
    构造时检查 Σ K_i*·K_i = I（容差 1e-10）。
    :param kraus: n×n 复矩阵序列
    """
    kraus: Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        ops = tuple(np.array(k, dtype=np.complex128) for k in self.kraus)
        if not ops:
            raise InvalidChannel("至少需要一个Kraus算子")
        n = ops[0].shape[0]
        for k in ops:
            if k.shape != (n, n):
                logger.error(f"Kraus算子形状不一致: {k.shape}")
                raise DimensionError(f"Kraus算子形状不一致: {k.shape}")
            k.setflags(write=False)
        accum = sum(k.conj().T @ k for k in ops)
        defect = float(np.max(np.abs(accum - np.eye(n))))
        if defect > DEFAULT_CONFIG.trace_tol:
            logger.error(f"Kraus算子不保迹，偏差: {defect:.3e}")
            raise InvalidChannel(f"Kraus算子不保迹，偏差: {defect:.3e}")
        object.__setattr__(self, "kraus", ops)

    @property
    def n(self) -> int:
        return self.kraus[0].shape[0]

    @classmethod
    def identity(cls, n: int) -> "CptpMap":
        return cls((np.eye(n),))

    @classmethod
    def unitary(cls, u: Sequence[Sequence[complex]]) -> "CptpMap":
        return cls((np.asarray(u, dtype=np.complex128),))

    @classmethod
    def depolarizing(cls, p: float, n: int = 2) -> "CptpMap":
        """
        去极化信道 T(x) = (1-p)·x + p·Tr(x)·I/n。
        Kraus 集取 Weyl 算子 X^a Z^b，n=2 时即 I、Z、X、XZ。
        :param p: 去极化概率 ∈ [0, 1]
        :param n: 维数
        :return: 信道
        """
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"去极化概率必须位于 [0, 1]: {p}")
        shift = np.roll(np.eye(n), 1, axis=0)
        clock = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
        ops = []
        for a in range(n):
            for b in range(n):
                weyl = np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
                weight = 1.0 - p + p / n**2 if a == b == 0 else p / n**2
                ops.append(np.sqrt(max(0.0, weight)) * weyl)
        return cls(tuple(ops))


@dataclass(frozen=True)
class MonotonicityMargin:
    """
    单调性检查结果：margin = λ_ρ(h,h) - λ_T(ρ)(T(h),T(h))。
    :param margin: 收缩余量
    :param scale: 尺度 max(λ_ρ(h,h), 1)
    :param regularized: T(ρ) 是否加了 eps_reg·I
    """
    margin: float
    scale: float
    regularized: bool = False

    @property
    def passed(self) -> bool:
        return self.margin >= -1e-9 * self.scale
