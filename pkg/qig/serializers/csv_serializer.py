"""
曲线CSV序列化器
"""

import csv
import io
import logging
from typing import Any, List, Type

import numpy as np

from ..types.base import DEFAULT_CONFIG
from ..types.geometry import CurveSamples
from .base import BaseSerializer

logger = logging.getLogger(__name__)


def curve_header(n: int) -> List[str]:
    """
    表头 t, re_i_j..., im_i_j...（行优先）。
    """
    re = [f"re_{i}_{j}" for i in range(n) for j in range(n)]
    im = [f"im_{i}_{j}" for i in range(n) for j in range(n)]
    return ["t"] + re + im


class CsvCurveSerializer(BaseSerializer):
    """
    曲线采样的CSV编解码，每个采样点一行，数值保留 digits 位有效数字。
    """
    def __init__(self, digits: int = DEFAULT_CONFIG.output_digits) -> None:
        self.digits = digits

    def _fmt(self, value: float) -> str:
        return f"{value:.{self.digits}g}"

    def _encode(self, obj: Any) -> str:
        if not isinstance(obj, CurveSamples):
            raise TypeError(f"只能编码 CurveSamples，实际: {type(obj).__name__}")
        states = np.asarray(obj.states, dtype=np.complex128)
        m, n, _ = states.shape
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(curve_header(n))
        for t, state in zip(obj.ts, states):
            row = [self._fmt(float(t))]
            row.extend(self._fmt(v) for v in state.real.ravel())
            row.extend(self._fmt(v) for v in state.imag.ravel())
            writer.writerow(row)
        logger.debug(f"曲线CSV编码: {m} 行, n={n}")
        return buffer.getvalue()

    def _decode(self, text: str, target_type: Type) -> CurveSamples:
        rows = list(csv.reader(io.StringIO(text)))
        if not rows:
            raise ValueError("CSV内容为空")
        header, body = rows[0], rows[1:]
        n = int(round(((len(header) - 1) / 2) ** 0.5))
        if header != curve_header(n):
            raise ValueError(f"CSV表头不合法: {header[:3]}...")
        data = np.array([[float(v) for v in row] for row in body], dtype=np.float64).reshape(len(body), 1 + 2 * n * n)
        ts = data[:, 0]
        states = (data[:, 1:1 + n * n] + 1j * data[:, 1 + n * n:]).reshape(len(body), n, n)
        return CurveSamples(ts=ts, states=states)
