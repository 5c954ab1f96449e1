"""
序列化器模块
"""

from ..types.base import Serializer
from .base import BaseSerializer
from .csv_serializer import CsvCurveSerializer
from .json_serializer import JsonSerializer, matrix_to_payload, payload_to_matrix

__all__ = [
    "Serializer",
    "BaseSerializer",
    "JsonSerializer",
    "CsvCurveSerializer",
    "matrix_to_payload",
    "payload_to_matrix",
]
