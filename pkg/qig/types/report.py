"""
外部数据格式：矩阵JSON、验证报告JSON与命令行配置
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class MatrixPayload(BaseModel):
    """
    矩阵JSON格式 {"n": int, "re": [[float]], "im": [[float]]}，行优先，实矩阵可省略 im。
    """
    model_config = ConfigDict(allow_inf_nan=False)

    n: int = Field(ge=1, le=256)
    re: List[List[float]]
    im: Optional[List[List[float]]] = None

    @model_validator(mode="after")
    def _check_shape(self) -> "MatrixPayload":
        for name, rows in (("re", self.re), ("im", self.im)):
            if rows is None:
                continue
            if len(rows) != self.n or any(len(row) != self.n for row in rows):
                raise ValueError(f"{name} 必须是 {self.n}×{self.n} 数组")
        return self


class CheckOutcome(BaseModel):
    """
    单项检查结果。
    :param name: 检查名
    :param passed: 是否通过（JSON键为 "pass"）
    :param worst_margin: 最差余量
    :param detail: 说明
    """
    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    worst_margin: float
    detail: str = ""


class VerificationReport(BaseModel):
    """
    验证报告。
    """
    model_config = ConfigDict(populate_by_name=True)

    suite: str
    seed: int
    trials: int
    checks: List[CheckOutcome] = Field(default_factory=list)
    runtime_ms: int = 0

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_checks(self) -> List[CheckOutcome]:
        return [check for check in self.checks if not check.passed]

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True)


class CliConfig(BaseModel):
    """
    命令行配置，校验各参数的取值约束。
    """
    command: str
    inputs: List[str] = Field(default_factory=list)
    metric: str = "bures"
    alpha: Optional[float] = None
    t_grid: Optional[List[float]] = None
    panels: int = 1024
    samples: int = 101
    seed: int = Field(default=0, ge=0)
    trials: int = 100
    output: Optional[str] = None
    format: Literal["json", "csv"] = "json"

    @field_validator("panels")
    @classmethod
    def _check_panels(cls, value: int) -> int:
        if value < 8:
            raise ValueError(f"panels 至少为 8: {value}")
        return value

    @field_validator("samples")
    @classmethod
    def _check_samples(cls, value: int) -> int:
        if value < 2:
            raise ValueError(f"samples 至少为 2: {value}")
        return value

    @field_validator("trials")
    @classmethod
    def _check_trials(cls, value: int) -> int:
        if value < 0:
            raise ValueError(f"trials 不能为负: {value}")
        return value

    @field_validator("t_grid")
    @classmethod
    def _check_t_grid(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        if value is not None and any(not 0.0 <= t <= 1.0 for t in value):
            raise ValueError("t 取值必须位于 [0, 1]")
        return value

    @model_validator(mode="after")
    def _check_alpha(self) -> "CliConfig":
        if self.alpha is not None and self.metric.lower() != "wyd":
            raise ValueError("--alpha 只能与 --metric wyd 一起使用")
        return self

    @model_validator(mode="after")
    def _check_format(self) -> "CliConfig":
        if self.command == "verify" and self.format != "json":
            raise ValueError("verify 只支持 --format json")
        return self


@dataclass(frozen=True)
class TrialCheck:
    """
    单次试验中的一项检查，margin ≥ -tolerance 为通过。
    :param name: 检查名
    :param margin: 余量
    :param tolerance: 容差
    :param detail: 说明
    """
    name: str
    margin: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.margin >= -self.tolerance
