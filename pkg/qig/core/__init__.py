"""
核心计算模块
"""

from . import divergences, geodesics, matkern, metrics, verify
from .suite_runner import SuiteRunner, TrialHandler, derive_seed

__all__ = [
    "matkern",
    "metrics",
    "divergences",
    "geodesics",
    "verify",
    "SuiteRunner",
    "TrialHandler",
    "derive_seed",
]
