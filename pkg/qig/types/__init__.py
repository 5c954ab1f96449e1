"""
类型定义模块。
导出数值配置、异常体系、矩阵与几何类型、信道及报告格式。
"""

from .base import (
    DEFAULT_CONFIG,
    DegenerateTangent,
    DimensionError,
    DimensionMismatch,
    DomainError,
    InvalidChannel,
    InvalidDistribution,
    InvalidMeasure,
    NotHermitian,
    NotPositiveDefinite,
    NumericConfig,
    QigException,
    SerializationException,
    SuiteNotFound,
    TraceNotOne,
)
from .channel import CptpMap, MonotonicityMargin
from .geometry import (
    Amplitude,
    CurveKind,
    CurveSamples,
    CurveSpec,
    FBoundsReport,
    GeodesicResidual,
    HorizontalityCheck,
    MetricFamily,
    MetricKind,
    Perturbation,
)
from .matrices import (
    ConvexFunctionSpec,
    FunctionKind,
    HermitianMatrix,
    ScalarFunctionSpec,
    SpectralDecomposition,
    StateMatrix,
)
from .report import CheckOutcome, CliConfig, MatrixPayload, TrialCheck, VerificationReport

__all__ = [
    "DEFAULT_CONFIG",
    "NumericConfig",
    "QigException",
    "NotHermitian",
    "NotPositiveDefinite",
    "TraceNotOne",
    "DimensionMismatch",
    "DimensionError",
    "DomainError",
    "DegenerateTangent",
    "InvalidDistribution",
    "InvalidMeasure",
    "InvalidChannel",
    "SerializationException",
    "SuiteNotFound",
    "HermitianMatrix",
    "StateMatrix",
    "SpectralDecomposition",
    "FunctionKind",
    "ScalarFunctionSpec",
    "ConvexFunctionSpec",
    "MetricFamily",
    "MetricKind",
    "Amplitude",
    "CurveKind",
    "CurveSpec",
    "CurveSamples",
    "Perturbation",
    "HorizontalityCheck",
    "FBoundsReport",
    "GeodesicResidual",
    "CptpMap",
    "MonotonicityMargin",
    "MatrixPayload",
    "CheckOutcome",
    "VerificationReport",
    "TrialCheck",
    "CliConfig",
]
