"""
JSON序列化器：矩阵JSON与验证报告JSON
"""

import json
import logging
from typing import Any, Optional, Type

import numpy as np
from pydantic import BaseModel

from ..types.matrices import HermitianMatrix, StateMatrix
from ..types.report import MatrixPayload, VerificationReport
from .base import BaseSerializer

logger = logging.getLogger(__name__)


def matrix_to_payload(m: Any) -> MatrixPayload:
    """
    矩阵转换为 {"n", "re", "im"} 格式，虚部全为零时省略 im。
    :param m: 厄米矩阵、态矩阵或复数组
    :return: 矩阵载荷
    """
    arr = np.asarray(m, dtype=np.complex128)
    im = arr.imag.tolist() if np.any(arr.imag != 0.0) else None
    return MatrixPayload(n=arr.shape[0], re=arr.real.tolist(), im=im)


def payload_to_matrix(payload: MatrixPayload) -> HermitianMatrix:
    return HermitianMatrix.from_parts(payload.re, payload.im)


class JsonSerializer(BaseSerializer):
    """
    JSON序列化器。
    矩阵（HermitianMatrix、StateMatrix、ndarray）按矩阵JSON格式编码，
    验证报告按报告JSON格式编码，其余对象交给 json 模块。
    """
    def __init__(self, ensure_ascii: bool = False, indent: Optional[int] = None) -> None:
        """
        初始化JSON序列化器。
        :param ensure_ascii: 是否确保ASCII编码
        :param indent: 缩进空格数
        """
        self.ensure_ascii = ensure_ascii
        self.indent = indent

    def _encode(self, obj: Any) -> str:
        return json.dumps(self._to_jsonable(obj), ensure_ascii=self.ensure_ascii, indent=self.indent)

    def _decode(self, text: str, target_type: Type) -> Any:
        obj = json.loads(text)
        if target_type is Any:
            return obj
        return self._convert_type(obj, target_type)

    def _to_jsonable(self, obj: Any) -> Any:
        if isinstance(obj, (HermitianMatrix, StateMatrix)):
            return matrix_to_payload(obj).model_dump(exclude_none=True)
        if isinstance(obj, VerificationReport):
            return obj.to_json_dict()
        if isinstance(obj, BaseModel):
            return obj.model_dump(by_alias=True, exclude_none=True)
        if isinstance(obj, np.ndarray):
            if obj.ndim == 2 and obj.shape[0] == obj.shape[1]:
                return matrix_to_payload(obj).model_dump(exclude_none=True)
            return obj.tolist()
        if isinstance(obj, np.generic):
            return obj.item()
        if isinstance(obj, dict):
            return {key: self._to_jsonable(value) for key, value in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [self._to_jsonable(value) for value in obj]
        return obj

    def _convert_type(self, obj: Any, target_type: Type) -> Any:
        """
        类型转换。
        :param obj: json.loads 的结果
        :param target_type: 目标类型
        :return: 转换后的对象
        """
        if target_type is HermitianMatrix:
            return payload_to_matrix(MatrixPayload.model_validate(obj))
        if target_type is MatrixPayload:
            return MatrixPayload.model_validate(obj)
        if target_type is VerificationReport:
            return VerificationReport.model_validate(obj)
        if target_type in (str, int, float, bool, list, dict):
            return target_type(obj)
        # 其余类型原样返回
        return obj
