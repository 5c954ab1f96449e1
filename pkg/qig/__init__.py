"""
QIG-GEO-PY - 量子信息几何计算库
"""

from .core.suite_runner import SuiteRunner
from .core.verify import run_suite
from .decorators import VerificationSuite
from .types import HermitianMatrix, MetricKind, NumericConfig, QigException, StateMatrix

__version__ = "1.0.0"
__author__ = "QIG Team"

__all__ = [
    "SuiteRunner",
    "VerificationSuite",
    "run_suite",
    "NumericConfig",
    "HermitianMatrix",
    "StateMatrix",
    "MetricKind",
    "QigException",
]
