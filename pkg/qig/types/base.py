"""
基础类型定义：数值配置、异常体系与序列化器接口
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Optional, Tuple, Type


@dataclass(frozen=True)
class NumericConfig:
    """
    数值计算配置对象。
    :param tol_herm_rel: 厄米对称性相对容差（乘以最大元素模）
    :param eps_pd_rel: 正定性阈值（乘以最大特征值，下限为1.0）
    :param trace_tol: 单位迹容差
    :param eps_dd: 一阶差商切换为导数的相对特征值间隔
    :param eps_reg: 信道输出的正则化量
    :param commute_threshold: 判定两个态不对易的HS范数阈值
    :param bkm_series_radius: BKM函数在t=1附近使用级数展开的半径
    :param fd_step: 曲线导数的中心差分步长
    :param default_dims: 验证试验的默认维数
    :param default_panels: 曲线长度积分的默认分段数
    :param default_samples: 测地线导出的默认采样数
    :param default_seed: 默认随机种子
    :param output_digits: 数值输出的有效数字位数
    """
    tol_herm_rel: float = 1e-12
    eps_pd_rel: float = 1e-10
    trace_tol: float = 1e-10
    eps_dd: float = 1e-7
    eps_reg: float = 1e-9
    commute_threshold: float = 1e-6
    bkm_series_radius: float = 1e-4
    fd_step: float = 1e-4
    default_dims: Tuple[int, ...] = (2, 3, 4, 5)
    default_panels: int = 1024
    default_samples: int = 101
    default_seed: int = 0
    output_digits: int = 12


DEFAULT_CONFIG = NumericConfig()


class QigException(Exception):
    """
    异常基类。
    :param message: 异常信息
    :param cause: 原始异常
    """
    def __init__(self, message: str, cause: Optional[Exception] = None) -> None:
        super().__init__(message)
        self.cause = cause


class NotHermitian(QigException):
    """
    矩阵不满足厄米对称性。
    :param message: 异常信息
    :param defect: 最大非对称偏差
    """
    def __init__(self, message: str, defect: float) -> None:
        super().__init__(f"{message} (偏差: {defect:.3e})")
        self.defect = defect


class NotPositiveDefinite(QigException):
    """
    矩阵不是严格正定的。
    :param message: 异常信息
    :param min_eigenvalue: 最小特征值
    """
    def __init__(self, message: str, min_eigenvalue: float) -> None:
        super().__init__(f"{message} (最小特征值: {min_eigenvalue:.3e})")
        self.min_eigenvalue = min_eigenvalue


class TraceNotOne(QigException):
    """
    迹不等于1。
    """
    pass


class DimensionMismatch(QigException):
    """
    维数不匹配。
    """
    pass


class DimensionError(QigException):
    """
    维数超出允许范围。
    """
    pass


class DomainError(QigException):
    """
    参数落在函数定义域之外。
    """
    pass


class DegenerateTangent(QigException):
    """
    曲线切向量退化（常曲线）。
    """
    pass


class InvalidDistribution(QigException):
    """
    概率向量非法。
    """
    pass


class InvalidMeasure(QigException):
    """
    正测度向量非法。
    """
    pass


class InvalidChannel(QigException):
    """
    Kraus算子不满足保迹条件。
    """
    pass


class SerializationException(QigException):
    """
    序列化异常。
    """
    pass


class SuiteNotFound(QigException):
    """
    验证套件未注册。
    """
    pass


class Serializer(ABC):
    """
    序列化器接口。
    """
    @abstractmethod
    def serialize(self, obj: Any) -> bytes:
        """
        序列化对象为字节数组。
        :param obj: 任意对象
        :return: 字节数组
        :raises SerializationException: 序列化失败
        """
        pass

    @abstractmethod
    def deserialize(self, data: bytes, target_type: Type) -> Any:
        """
        从字节数组反序列化对象。
        :param data: 字节数组
        :param target_type: 目标类型
        :return: 反序列化后的对象
        :raises SerializationException: 反序列化失败
        """
        pass

    @abstractmethod
    def serialize_to_string(self, obj: Any) -> str:
        """
        序列化对象为字符串。
        :param obj: 任意对象
        :return: 字符串
        :raises SerializationException: 序列化失败
        """
        pass

    @abstractmethod
    def deserialize_from_string(self, data: str, target_type: Type) -> Any:
        """
        从字符串反序列化对象。
        :param data: 字符串
        :param target_type: 目标类型
        :return: 反序列化后的对象
        :raises SerializationException: 反序列化失败
        """
        pass
