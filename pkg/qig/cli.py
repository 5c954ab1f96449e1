"""
命令行入口：距离与上界、测地线导出、度量求值、验证套件、随机态生成

退出码：0 成功，1 验证未通过，2 输入错误，3 读写错误。
"""

import argparse
import logging
import math
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from dotenv import load_dotenv
from pydantic import ValidationError

from .core.geodesics import (
    bures_distance_cone,
    bures_distance_density,
    rld_upper_bound_cone,
    rld_upper_bound_density,
    sample_curve,
    wy_distance_cone,
    wy_distance_density,
)
from .core.matkern import commutator_norm, is_unit_trace, validate_state
from .core.metrics import metric_eval
from .core.verify import SUITE_NAMES, default_runner, random_state
from .serializers import CsvCurveSerializer, JsonSerializer
from .types.base import DEFAULT_CONFIG, DomainError, QigException
from .types.geometry import CurveKind, CurveSpec, MetricKind
from .types.matrices import HermitianMatrix, StateMatrix
from .types.report import CliConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_IO_ERROR = 3


def _digits(value: float) -> float:
    return float(f"{value:.{DEFAULT_CONFIG.output_digits}g}")


def _default_seed() -> int:
    raw = os.getenv("QIG_SEED")
    if raw is None:
        return DEFAULT_CONFIG.default_seed
    try:
        return int(raw)
    except ValueError as e:
        raise DomainError(f"环境变量 QIG_SEED 不是整数: {raw!r}", e)


def _t_grid(text: Optional[str]) -> Optional[List[float]]:
    if text is None:
        return None
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise DomainError(f"--t 需要逗号分隔的实数: {text!r}", e)


def _load_state(path: str) -> StateMatrix:
    matrix = JsonSerializer().read_file(path, HermitianMatrix)
    return validate_state(matrix, unit_trace=is_unit_trace(matrix))


def _load_matrix(path: str) -> HermitianMatrix:
    return JsonSerializer().read_file(path, HermitianMatrix)


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    Path(output).write_text(text, encoding="utf-8")
    logger.info(f"已写入文件: {output}")


def _render_record(record: Dict[str, Any], fmt: str) -> str:
    if fmt == "csv":
        return "".join(f"{key},{value}\n" for key, value in record.items())
    return JsonSerializer(indent=2).serialize_to_string(record)


def distance_record(rho0: StateMatrix, rho1: StateMatrix) -> Dict[str, Any]:
    """
    两个态之间的全部距离、上界、对易标志与不等式链结论。
    """
    bures, wy, upper = bures_distance_cone(rho0, rho1), wy_distance_cone(rho0, rho1), rld_upper_bound_cone(rho0, rho1)
    chain = bures <= wy + 1e-9 and wy <= upper + 1e-9 and upper < 2.0 * math.sqrt(rho0.trace + rho1.trace)
    record: Dict[str, Any] = {"n": rho0.n, "bures_cone": _digits(bures), "wy_cone": _digits(wy), "rld_upper_cone": _digits(upper)}
    if rho0.unit_trace and rho1.unit_trace:
        d_bures = bures_distance_density(rho0, rho1)
        d_wy = wy_distance_density(rho0, rho1)
        d_upper = rld_upper_bound_density(rho0, rho1)
        chain = chain and d_bures <= d_wy + 1e-10 and d_wy <= d_upper + 1e-10 and d_upper < math.pi
        record.update(bures_density=_digits(d_bures), wy_density=_digits(d_wy), rld_upper_density=_digits(d_upper))
    record["commuting"] = commutator_norm(rho0, rho1) <= DEFAULT_CONFIG.commute_threshold
    record["chain"] = bool(chain)
    return record


def cmd_dist(config: CliConfig) -> int:
    rho0, rho1 = (_load_state(path) for path in config.inputs)
    record = distance_record(rho0, rho1)
    _emit(_render_record(record, config.format), config.output)
    if not record["chain"]:
        logger.error("距离不等式链不成立")
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_geodesic(config: CliConfig, kind: str) -> int:
    try:
        curve_kind = CurveKind(kind)
    except ValueError as e:
        raise DomainError(f"未知的曲线种类: {kind}，可选: {', '.join(k.value for k in CurveKind)}", e)
    rho0, rho1 = (_load_state(path) for path in config.inputs)
    curve = CurveSpec(kind=curve_kind, rho0=rho0, rho1=rho1)
    ts = config.t_grid if config.t_grid is not None else np.linspace(0.0, 1.0, config.samples).tolist()
    samples = sample_curve(curve, ts)
    if config.format == "json":
        payload = {"kind": curve_kind.value, "ts": samples.ts.tolist(), "states": list(samples.states)}
        text = JsonSerializer().serialize_to_string(payload)
    else:
        text = CsvCurveSerializer().serialize_to_string(samples)
    _emit(text, config.output)
    return EXIT_OK


def cmd_metric(config: CliConfig) -> int:
    kind = MetricKind.parse(config.metric, config.alpha)
    rho = _load_state(config.inputs[0])
    h, k = _load_matrix(config.inputs[1]), _load_matrix(config.inputs[2])
    value = metric_eval(kind, rho, h, k)
    record = {"metric": kind.label, "value": _digits(value)}
    _emit(_render_record(record, config.format), config.output)
    return EXIT_OK


def cmd_verify(config: CliConfig, suite: str, restrict: bool) -> int:
    kinds = [MetricKind.parse(config.metric, config.alpha)] if restrict else None
    report = default_runner(kinds, panels=config.panels).run(suite, config.trials, config.seed)
    _emit(JsonSerializer(indent=2).serialize_to_string(report), config.output)
    for check in report.failed_checks():
        logger.error(f"检查未通过: {check.name}, 最差余量 {check.worst_margin:.3e}")
    return EXIT_OK if report.all_passed else EXIT_VERIFICATION_FAILED


def cmd_rand(config: CliConfig, n: int, count: int, unit_trace: bool) -> int:
    if count < 0:
        raise DomainError(f"--count 不能为负: {count}")
    out_dir = Path(config.output or ".")
    if count:
        out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(config.seed)
    serializer = JsonSerializer()
    for index in range(count):
        serializer.write_file(random_state(n, unit_trace, rng), out_dir / f"rho_{index:03d}.json")
    logger.info(f"已生成 {count} 个随机态: {out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qig", description="量子信息几何：单调度量、测地距离与性质验证")
    parser.add_argument(
        "--log-level", default="WARNING", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="日志级别（默认 WARNING）"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", default="json", help="输出格式 json|csv")
        p.add_argument("--out", dest="output", default=None, help="输出路径，缺省为标准输出")

    dist = sub.add_parser("dist", help="两个态之间的距离与上界")
    dist.add_argument("rho0")
    dist.add_argument("rho1")
    common(dist)

    geodesic = sub.add_parser("geodesic", help="采样并导出曲线")
    geodesic.add_argument("kind", help=", ".join(k.value for k in CurveKind))
    geodesic.add_argument("rho0")
    geodesic.add_argument("rho1")
    geodesic.add_argument("--samples", type=int, default=DEFAULT_CONFIG.default_samples)
    geodesic.add_argument("--t", dest="t_grid", default=None, help="逗号分隔的参数网格，覆盖 --samples")
    common(geodesic)
    geodesic.set_defaults(format="csv")

    metric = sub.add_parser("metric", help="λ_ρ(h,k)")
    metric.add_argument("rho")
    metric.add_argument("h")
    metric.add_argument("k")
    metric.add_argument("--metric", default="bures", help="bures|rld|wy|bkm|wyd")
    metric.add_argument("--alpha", type=float, default=None)
    common(metric)

    verify = sub.add_parser("verify", help="执行验证套件")
    verify.add_argument("suite", help=", ".join(SUITE_NAMES))
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--metric", default=None, help="只检查一种度量")
    verify.add_argument("--alpha", type=float, default=None)
    verify.add_argument("--panels", type=int, default=DEFAULT_CONFIG.default_panels)
    common(verify)

    rand = sub.add_parser("rand", help="生成随机态矩阵JSON文件")
    rand.add_argument("n", type=int)
    rand.add_argument("--count", type=int, default=1)
    rand.add_argument("--unit-trace", action="store_true")
    rand.add_argument("--seed", type=int, default=None)
    rand.add_argument("--out-dir", dest="output", default=".")
    return parser


def _config(args: argparse.Namespace) -> CliConfig:
    inputs = [getattr(args, name) for name in ("rho0", "rho1", "rho", "h", "k") if getattr(args, name, None) is not None]
    seed = getattr(args, "seed", None)
    metric = getattr(args, "metric", None)
    return CliConfig(
        command=args.command,
        inputs=inputs,
        metric=metric or "bures",
        alpha=getattr(args, "alpha", None),
        t_grid=_t_grid(getattr(args, "t_grid", None)),
        panels=getattr(args, "panels", DEFAULT_CONFIG.default_panels),
        samples=getattr(args, "samples", DEFAULT_CONFIG.default_samples),
        seed=_default_seed() if seed is None else seed,
        trials=getattr(args, "trials", 100),
        output=getattr(args, "output", None),
        format=getattr(args, "format", "json"),
    )


def run(args: argparse.Namespace) -> int:
    config = _config(args)
    logger.debug(f"命令行配置: {config}")
    if config.command == "dist":
        return cmd_dist(config)
    if config.command == "geodesic":
        return cmd_geodesic(config, args.kind)
    if config.command == "metric":
        return cmd_metric(config)
    if config.command == "verify":
        return cmd_verify(config, args.suite, restrict=args.metric is not None)
    return cmd_rand(config, args.n, args.count, args.unit_trace)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    命令行入口。
    :param argv: 参数列表，缺省为 sys.argv[1:]
    :return: 退出码
    """
    load_dotenv()
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except (QigException, ValidationError) as e:
        sys.stderr.write(f"输入错误: {e}\n")
        return EXIT_INPUT_ERROR
    except OSError as e:
        sys.stderr.write(f"读写错误: {e}\n")
        return EXIT_IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
