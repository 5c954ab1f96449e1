"""
装饰器模块
"""

from .verification_suite import VerificationSuite

__all__ = ["VerificationSuite"]
