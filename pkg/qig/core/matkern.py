"""
稠密厄米线性代数内核：谱分解、谱函数演算、Fréchet导数与态校验
"""

import logging
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
import scipy.linalg
from scipy.interpolate import PchipInterpolator

from ..types.base import DEFAULT_CONFIG, DimensionMismatch, DomainError, NotPositiveDefinite, TraceNotOne
from ..types.matrices import FunctionKind, HermitianMatrix, ScalarFunctionSpec, SpectralDecomposition, StateMatrix

logger = logging.getLogger(__name__)

MatrixLike = Union[HermitianMatrix, StateMatrix, np.ndarray]


def as_array(x: MatrixLike) -> np.ndarray:
    """
    统一转换为 complex128 二维数组。
    :param x: 厄米矩阵、态矩阵或数组
    :return: 复数组
    """
    if isinstance(x, (HermitianMatrix, StateMatrix)):
        return x.data
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"需要n×n方阵，实际形状: {arr.shape}")
    return arr


def hermitize(arr: np.ndarray) -> np.ndarray:
    return 0.5 * (arr + arr.conj().T)


def check_same_dimension(*mats: np.ndarray) -> int:
    """
    检查所有矩阵维数一致。
    :return: 公共维数
    :raises DimensionMismatch: 维数不一致
    """
    shapes = {m.shape for m in mats}
    if len(shapes) != 1:
        logger.error(f"维数不匹配: {sorted(shapes)}")
        raise DimensionMismatch(f"维数不匹配: {sorted(shapes)}")
    return mats[0].shape[0]


def eigh_array(arr: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    对已知厄米的数组做谱分解（不再检查对称性），特征值升序。
    """
    return scipy.linalg.eigh(hermitize(arr))


def eigh_stack(stack: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    对 (N, n, n) 厄米数组栈逐个做谱分解，一次批量调用，特征值升序。
    """
    return np.linalg.eigh(0.5 * (stack + np.conj(np.swapaxes(stack, -1, -2))))


def eig_hermitian(h: MatrixLike) -> SpectralDecomposition:
    """
    厄米矩阵的谱分解。
    :param h: 厄米矩阵
    :return: 升序特征值与酉特征向量
    :raises NotHermitian: 对称性偏差超出容差
    """
    base = h if isinstance(h, (HermitianMatrix, StateMatrix)) else HermitianMatrix(h)
    d, u = scipy.linalg.eigh(base.data)
    return SpectralDecomposition(eigenvalues=d, eigenvectors=u)


@lru_cache(maxsize=64)
def _pchip(points: Tuple[Tuple[float, float], ...]) -> PchipInterpolator:
    xs = np.array([p[0] for p in points])
    ys = np.array([p[1] for p in points])
    return PchipInterpolator(xs, ys, extrapolate=False)


def _power_domain_ok(exponent: float, x: np.ndarray) -> bool:
    if exponent >= 0 and float(exponent).is_integer():
        return True
    if exponent > 0:
        return bool(np.all(x >= 0))
    return bool(np.all(x > 0))


def check_domain(spec: ScalarFunctionSpec, x: np.ndarray, derivative: bool = False) -> None:
    """
    检查取值是否落在函数（或其导数）的定义域内。
    :param spec: 函数描述
    :param x: 实数组
    :param derivative: 是否检查导数的定义域
    :raises DomainError: 超出定义域
    """
    x = np.asarray(x, dtype=np.float64)
    kind = spec.kind
    if kind == FunctionKind.CUSTOM_GRID:
        lo, hi = spec.points[0][0], spec.points[-1][0]
        ok = bool(np.all((x >= lo) & (x <= hi)))
    elif kind == FunctionKind.POWER:
        assert spec.exponent is not None
        exponent = spec.exponent - 1.0 if derivative else spec.exponent
        ok = _power_domain_ok(exponent, x) and _power_domain_ok(spec.exponent, x)
    elif kind in (FunctionKind.SQRT, FunctionKind.G0):
        ok = bool(np.all(x > 0)) if derivative else bool(np.all(x >= 0))
    elif kind == FunctionKind.F_ALPHA:
        assert spec.alpha is not None
        exponent = (1.0 - spec.alpha) / 2.0
        ok = bool(np.all(x > 0)) if (derivative or exponent <= 0) else bool(np.all(x >= 0))
    else:
        ok = bool(np.all(x > 0))
    if not ok:
        logger.error(f"取值超出 {kind.value} 的定义域: min={np.min(x):.3e}, max={np.max(x):.3e}")
        raise DomainError(f"取值超出 {kind.value} 的定义域: min={np.min(x):.3e}, max={np.max(x):.3e}")


def scalar_eval(spec: ScalarFunctionSpec, x: np.ndarray) -> np.ndarray:
    """
    逐点计算 f(x)。
    :param spec: 函数描述
    :param x: 实数组
    :return: 函数值
    :raises DomainError: 超出定义域
    """
    x = np.asarray(x, dtype=np.float64)
    check_domain(spec, x)
    kind = spec.kind
    if kind == FunctionKind.POWER:
        return np.power(x, spec.exponent)
    if kind == FunctionKind.LOG:
        return np.log(x)
    if kind == FunctionKind.SQRT:
        return np.sqrt(x)
    if kind == FunctionKind.F_ALPHA:
        assert spec.alpha is not None
        if spec.alpha == 1.0:
            return np.log(x)
        return 2.0 / (1.0 - spec.alpha) * np.power(x, (1.0 - spec.alpha) / 2.0)
    if kind == FunctionKind.G0:
        return 2.0 + 2.0 * x - 4.0 * np.sqrt(x)
    if kind == FunctionKind.CUSTOM_GRID:
        return _pchip(spec.points)(x)
    assert spec.alpha is not None
    return _wyd_mean(spec.alpha, x)


def _wyd_mean(alpha: float, x: np.ndarray) -> np.ndarray:
    """
    f(t) = (1-α²)(t-1)² / (4(t^p - 1)(t^(1-p) - 1))，p = (1-α)/2；α=±1 时为 (t-1)/log t。
    以 u = log t 写成 expm1 形式，t → 1 时不损失精度。
    """
    u = np.log(x)
    out = np.ones_like(u)
    live = u != 0.0
    ul = u[live]
    if abs(alpha) == 1.0:
        out[live] = np.expm1(ul) / ul
        return out
    p = (1.0 - alpha) / 2.0
    out[live] = (1.0 - alpha * alpha) * np.expm1(ul) ** 2 / (4.0 * np.expm1(p * ul) * np.expm1((1.0 - p) * ul))
    return out


def scalar_derivative(spec: ScalarFunctionSpec, x: np.ndarray) -> np.ndarray:
    """
    逐点计算 f'(x)。
    wyd_mean 没有简单的闭式导数，使用相对步长 1e-5 的中心差分。
    :param spec: 函数描述
    :param x: 实数组
    :return: 导数值
    :raises DomainError: 超出定义域
    """
    x = np.asarray(x, dtype=np.float64)
    check_domain(spec, x, derivative=True)
    kind = spec.kind
    if kind == FunctionKind.POWER:
        assert spec.exponent is not None
        if spec.exponent == 0.0:
            return np.zeros_like(x)
        return spec.exponent * np.power(x, spec.exponent - 1.0)
    if kind == FunctionKind.LOG:
        return 1.0 / x
    if kind == FunctionKind.SQRT:
        return 0.5 / np.sqrt(x)
    if kind == FunctionKind.F_ALPHA:
        assert spec.alpha is not None
        return np.power(x, (1.0 - spec.alpha) / 2.0 - 1.0)
    if kind == FunctionKind.G0:
        return 2.0 - 2.0 / np.sqrt(x)
    if kind == FunctionKind.CUSTOM_GRID:
        return _pchip(spec.points).derivative()(x)
    step = 1e-5 * x
    return (scalar_eval(spec, x + step) - scalar_eval(spec, x - step)) / (2.0 * step)


def divided_difference(spec: ScalarFunctionSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    一阶差商 f[x,y]：|x-y| > eps_dd·max(x,y) 时为 (f(x)-f(y))/(x-y)，否则为 f'((x+y)/2)。
    :param spec: 函数描述
    :param x: 实数组
    :param y: 与 x 同形状的实数组
    :return: 差商
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    gap = x - y
    close = np.abs(gap) <= DEFAULT_CONFIG.eps_dd * np.maximum(np.abs(x), np.abs(y))
    result = np.empty(x.shape, dtype=np.float64)
    if np.any(close):
        result[close] = scalar_derivative(spec, 0.5 * (x[close] + y[close]))
    far = ~close
    if np.any(far):
        result[far] = (scalar_eval(spec, x[far]) - scalar_eval(spec, y[far])) / gap[far]
    return result


def fn_array(arr: np.ndarray, spec: ScalarFunctionSpec) -> np.ndarray:
    """
    数组层面的谱函数演算 U·diag(f(d))·U*，供内核之外的模块复用。
    """
    d, u = eigh_array(arr)
    return hermitize((u * scalar_eval(spec, d)) @ u.conj().T)


def sqrt_array(arr: np.ndarray) -> np.ndarray:
    return fn_array(arr, ScalarFunctionSpec.sqrt())


def inv_sqrt_array(arr: np.ndarray) -> np.ndarray:
    return fn_array(arr, ScalarFunctionSpec.power(-0.5))


def mat_fn(a: MatrixLike, f: ScalarFunctionSpec) -> HermitianMatrix:
    """
    谱函数演算 f(A) = U·diag(f(d_i))·U*。
    :param a: 厄米矩阵（谱位于 f 的定义域内）
    :param f: 函数描述
    :return: 厄米矩阵 f(A)
    :raises DomainError: 有特征值落在定义域之外
    """
    decomposition = eig_hermitian(a)
    values = scalar_eval(f, decomposition.eigenvalues)
    return HermitianMatrix(decomposition.apply(values))


def frechet_derivative(f: ScalarFunctionSpec, a: MatrixLike, h: MatrixLike) -> HermitianMatrix:
    """
    方向导数 Df[A](h)：在 A 的特征基中 (Df[A](h))_ij = h̃_ij · f[d_i, d_j]。
    :param f: 函数描述
    :param a: 正定矩阵
    :param h: 厄米方向
    :return: 厄米矩阵
    :raises DomainError: 谱落在定义域之外
    :raises DimensionMismatch: 维数不一致
    """
    decomposition = eig_hermitian(a)
    h_arr = as_array(h)
    check_same_dimension(decomposition.eigenvectors, h_arr)
    d = decomposition.eigenvalues
    weights = divided_difference(f, d[:, None], d[None, :])
    h_tilde = decomposition.to_eigenbasis(h_arr)
    return HermitianMatrix(decomposition.from_eigenbasis(h_tilde * weights))


def positivity_threshold(eigenvalues: np.ndarray) -> float:
    """
    正定性阈值 eps_pd = eps_pd_rel · max(最大特征值, 1)。
    """
    return DEFAULT_CONFIG.eps_pd_rel * max(float(eigenvalues[-1]), 1.0)


def validate_state(m: MatrixLike, unit_trace: bool = False) -> StateMatrix:
    """
    校验并构造态矩阵。
    :param m: 厄米矩阵
    :param unit_trace: 是否要求单位迹
    :return: 态矩阵
    :raises NotHermitian: 不是厄米矩阵
    :raises NotPositiveDefinite: 最小特征值 ≤ eps_pd
    :raises TraceNotOne: 要求单位迹但 |Tr - 1| > 1e-10
    """
    base = m.base if isinstance(m, StateMatrix) else (m if isinstance(m, HermitianMatrix) else HermitianMatrix(m))
    d = scipy.linalg.eigvalsh(base.data)
    if d[0] <= positivity_threshold(d):
        logger.error(f"矩阵不是严格正定的，最小特征值: {d[0]:.3e}")
        raise NotPositiveDefinite("矩阵不是严格正定的", float(d[0]))
    if unit_trace and abs(base.trace - 1.0) > DEFAULT_CONFIG.trace_tol:
        logger.error(f"密度矩阵的迹必须为1，实际: {base.trace!r}")
        raise TraceNotOne(f"密度矩阵的迹必须为1，实际: {base.trace!r}")
    return StateMatrix(base=base, unit_trace=unit_trace)


def is_unit_trace(m: MatrixLike) -> bool:
    return abs(float(np.real(np.trace(as_array(m)))) - 1.0) <= DEFAULT_CONFIG.trace_tol


def hs_inner(x: MatrixLike, y: MatrixLike) -> complex:
    """
    Hilbert-Schmidt 内积 ⟨x,y⟩ = Tr x*·y。
    :raises DimensionMismatch: 维数不一致
    """
    xa, ya = as_array(x), as_array(y)
    check_same_dimension(xa, ya)
    return complex(np.vdot(xa, ya))


def hs_norm(x: MatrixLike) -> float:
    return float(np.linalg.norm(as_array(x)))


def commutator_norm(a: MatrixLike, b: MatrixLike) -> float:
    """
    ‖[a,b]‖_HS。
    """
    aa, ba = as_array(a), as_array(b)
    check_same_dimension(aa, ba)
    return float(np.linalg.norm(aa @ ba - ba @ aa))
