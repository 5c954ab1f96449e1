#!/usr/bin/env python3
"""
矩阵内核单元测试
"""

import math

import numpy as np
import pytest

from qig.core.matkern import (
    commutator_norm,
    divided_difference,
    eig_hermitian,
    frechet_derivative,
    hs_inner,
    mat_fn,
    scalar_derivative,
    scalar_eval,
    validate_state,
)
from qig.core.verify import random_state, random_tangent
from qig.types import (
    DimensionMismatch,
    DomainError,
    HermitianMatrix,
    NotHermitian,
    NotPositiveDefinite,
    ScalarFunctionSpec,
    TraceNotOne,
)


class TestHermitianMatrix:
    """厄米矩阵类型测试类"""

    def test_rejects_non_hermitian(self):
        """测试非厄米矩阵被拒绝"""
        with pytest.raises(NotHermitian) as exc_info:
            HermitianMatrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
        assert exc_info.value.defect == pytest.approx(1.0)

    def test_rejects_non_square(self):
        """测试非方阵被拒绝"""
        with pytest.raises(DimensionMismatch):
            HermitianMatrix(np.zeros((2, 3)))

    @pytest.mark.parametrize("bad", [math.nan, math.inf])
    def test_rejects_non_finite(self, bad):
        """测试含 NaN 或 Inf 的矩阵被拒绝"""
        with pytest.raises(DomainError):
            HermitianMatrix(np.array([[bad, 0.0], [0.0, 0.5]]))
        with pytest.raises(DomainError):
            validate_state([[0.5, 0.0], [0.0, bad]])

    def test_from_parts(self):
        """测试由实部虚部构造"""
        h = HermitianMatrix.from_parts([[1.0, 0.5], [0.5, 2.0]], [[0.0, -0.25], [0.25, 0.0]])
        assert h.data[0, 1] == pytest.approx(0.5 - 0.25j)
        assert h.trace == pytest.approx(3.0)

    def test_data_is_read_only(self):
        """测试数据只读"""
        h = HermitianMatrix.identity(2)
        with pytest.raises(ValueError):
            h.data[0, 0] = 5.0


class TestEigHermitian:
    """谱分解测试类"""

    def test_identity(self):
        """测试单位矩阵"""
        decomposition = eig_hermitian(HermitianMatrix.identity(2))
        np.testing.assert_allclose(decomposition.eigenvalues, [1.0, 1.0])

    def test_diagonal(self):
        """测试对角矩阵"""
        decomposition = eig_hermitian(HermitianMatrix.diag([0.1, 0.9]))
        np.testing.assert_allclose(decomposition.eigenvalues, [0.1, 0.9])
        np.testing.assert_allclose(np.abs(decomposition.eigenvectors), np.eye(2), atol=1e-12)

    def test_pauli_x(self):
        """测试 [[0,1],[1,0]] 的特征值为 ±1"""
        decomposition = eig_hermitian(np.array([[0.0, 1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(decomposition.eigenvalues, [-1.0, 1.0], atol=1e-14)

    def test_reconstruction_and_unitarity(self, rng):
        """测试重构与酉性"""
        for n in range(2, 9):
            h = random_tangent(n, False, rng)
            decomposition = eig_hermitian(h)
            scale = float(np.max(np.abs(h.data)))
            assert np.max(np.abs(decomposition.reconstruct() - h.data)) <= 1e-10 * scale
            u = decomposition.eigenvectors
            assert np.max(np.abs(u.conj().T @ u - np.eye(n))) <= 1e-10
            assert np.all(np.diff(decomposition.eigenvalues) >= 0)


class TestScalarFunctions:
    """标量函数测试类"""

    def test_wyd_mean_endpoints(self):
        """测试 WYD 函数在 α=0、3、1 处分别给出 WY、RLD、BKM"""
        assert scalar_eval(ScalarFunctionSpec.wyd_mean(0.0), np.array([4.0]))[0] == pytest.approx(2.25, rel=1e-12)
        assert scalar_eval(ScalarFunctionSpec.wyd_mean(3.0), np.array([3.0]))[0] == pytest.approx(1.5, rel=1e-12)
        assert scalar_eval(ScalarFunctionSpec.wyd_mean(1.0), np.array([math.e]))[0] == pytest.approx(math.e - 1.0, rel=1e-12)

    def test_wyd_mean_normalized(self):
        """测试 f(1) = 1"""
        for alpha in (-3.0, -1.5, 0.0, 2.0):
            assert scalar_eval(ScalarFunctionSpec.wyd_mean(alpha), np.array([1.0]))[0] == pytest.approx(1.0, abs=1e-12)

    def test_custom_grid_interpolates_nodes(self):
        """测试自定义网格在节点处取值准确"""
        spec = ScalarFunctionSpec.custom_grid([(0.5, 0.75), (1.0, 1.0), (2.0, 1.5)])
        np.testing.assert_allclose(scalar_eval(spec, np.array([0.5, 1.0, 2.0])), [0.75, 1.0, 1.5])

    def test_custom_grid_outside_domain(self):
        """测试自定义网格之外报错"""
        spec = ScalarFunctionSpec.custom_grid([(0.5, 0.75), (2.0, 1.5)])
        with pytest.raises(DomainError):
            scalar_eval(spec, np.array([3.0]))

    def test_invalid_specs(self):
        """测试非法函数描述"""
        with pytest.raises(DomainError):
            ScalarFunctionSpec.f_alpha(3.5)
        with pytest.raises(DomainError):
            ScalarFunctionSpec.power(float("inf"))
        with pytest.raises(DomainError):
            ScalarFunctionSpec.custom_grid([(1.0, 1.0), (0.5, 0.5)])

    def test_log_domain(self):
        """测试 log 的定义域"""
        with pytest.raises(DomainError):
            scalar_eval(ScalarFunctionSpec.log(), np.array([0.0]))

    def test_divided_difference_switches_to_derivative(self):
        """测试近简并时差商切换为导数"""
        spec = ScalarFunctionSpec.sqrt()
        x = np.array([4.0])
        y = np.array([4.0 * (1.0 + 1e-9)])
        expected = scalar_derivative(spec, 0.5 * (x + y))
        np.testing.assert_allclose(divided_difference(spec, x, y), expected, rtol=1e-15)

    def test_divided_difference_far_apart(self):
        """测试相距较远时为普通差商"""
        value = divided_difference(ScalarFunctionSpec.sqrt(), np.array([4.0]), np.array([1.0]))
        assert value[0] == pytest.approx(1.0 / 3.0)


class TestMatFn:
    """谱函数演算测试类"""

    def test_sqrt_identity(self):
        """测试单位矩阵的平方根"""
        np.testing.assert_allclose(mat_fn(HermitianMatrix.identity(3), ScalarFunctionSpec.sqrt()).data, np.eye(3))

    def test_sqrt_diagonal(self):
        """测试对角矩阵的平方根"""
        np.testing.assert_allclose(mat_fn(HermitianMatrix.diag([4.0, 9.0]), ScalarFunctionSpec.sqrt()).data, np.diag([2.0, 3.0]))

    def test_power_one(self, rng):
        """测试恒等函数"""
        rho = random_state(4, True, rng)
        np.testing.assert_allclose(mat_fn(rho, ScalarFunctionSpec.power(1.0)).data, rho.data, atol=1e-13)

    def test_sqrt_squares_back(self, rng):
        """测试平方根的平方还原"""
        rho = random_state(5, False, rng)
        root = mat_fn(rho, ScalarFunctionSpec.sqrt()).data
        assert np.linalg.norm(root @ root - rho.data) <= 1e-9 * np.linalg.norm(rho.data)

    def test_domain_error(self):
        """测试谱落在定义域之外"""
        with pytest.raises(DomainError):
            mat_fn(HermitianMatrix.diag([1.0, -1.0]), ScalarFunctionSpec.log())


class TestFrechetDerivative:
    """Fréchet 导数测试类"""

    def test_identity_function(self, rng):
        """测试恒等函数的导数为 h"""
        rho = random_state(3, True, rng)
        h = random_tangent(3, False, rng)
        np.testing.assert_allclose(frechet_derivative(ScalarFunctionSpec.power(1.0), rho, h).data, h.data, atol=1e-12)

    def test_sqrt_divided_difference(self):
        """测试 A=diag(1,4)、f=sqrt 的解析结果"""
        result = frechet_derivative(ScalarFunctionSpec.sqrt(), HermitianMatrix.diag([1.0, 4.0]), np.array([[0.0, 1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(result.data, [[0.0, 1.0 / 3.0], [1.0 / 3.0, 0.0]], atol=1e-15)

    def test_trace_slope(self, rng):
        """测试 Tr f(A+th) 的数值斜率"""
        a = random_state(3, True, rng).data + np.eye(3)
        h = random_tangent(3, False, rng)
        spec = ScalarFunctionSpec.log()
        step = 1e-5
        slope = (np.trace(mat_fn(a + step * h.data, spec).data) - np.trace(mat_fn(a - step * h.data, spec).data)) / (2 * step)
        assert abs(np.real(slope) - np.real(np.trace(frechet_derivative(spec, a, h).data))) <= 1e-6

    def test_symmetry(self, rng):
        """测试 Tr k·Df(h) = Tr h·Df(k)"""
        rho = random_state(4, True, rng)
        h, k = random_tangent(4, False, rng), random_tangent(4, False, rng)
        for spec in (ScalarFunctionSpec.sqrt(), ScalarFunctionSpec.log(), ScalarFunctionSpec.f_alpha(2.0)):
            left = np.real(np.trace(k.data @ frechet_derivative(spec, rho, h).data))
            right = np.real(np.trace(h.data @ frechet_derivative(spec, rho, k).data))
            assert left == pytest.approx(right, rel=1e-10)

    def test_second_order_convergence(self, rng):
        """测试中心差分的二阶收敛"""
        a = random_state(3, True, rng).data + np.eye(3)
        h = random_tangent(3, False, rng).data
        h = h / np.linalg.norm(h, 2)
        spec = ScalarFunctionSpec.sqrt()
        exact = frechet_derivative(spec, a, h).data
        errors = []
        for step in (1e-3, 5e-4):
            central = (mat_fn(a + step * h, spec).data - mat_fn(a - step * h, spec).data) / (2 * step)
            errors.append(np.linalg.norm(central - exact))
        assert 3.0 <= errors[0] / errors[1] <= 5.0


class TestValidateState:
    """态校验测试类"""

    def test_accepts_density(self):
        """测试接受合法密度矩阵"""
        state = validate_state(HermitianMatrix.diag([0.5, 0.5]), unit_trace=True)
        assert state.unit_trace
        assert state.trace == pytest.approx(1.0)

    def test_rejects_boundary(self):
        """测试拒绝边界上的矩阵"""
        with pytest.raises(NotPositiveDefinite):
            validate_state(HermitianMatrix.diag([1.0, 0.0]))

    def test_rejects_wrong_trace(self):
        """测试拒绝迹不为1的矩阵"""
        with pytest.raises(TraceNotOne):
            validate_state(HermitianMatrix.diag([0.6, 0.6]), unit_trace=True)

    def test_cone_state_without_trace_condition(self):
        """测试锥上的元素不要求单位迹"""
        assert validate_state(HermitianMatrix.diag([0.6, 0.6])).trace == pytest.approx(1.2)


class TestInnerProduct:
    """HS 内积测试类"""

    def test_identity(self):
        """测试 ⟨I,I⟩ = 2"""
        assert hs_inner(HermitianMatrix.identity(2), HermitianMatrix.identity(2)) == pytest.approx(2.0)

    def test_orthogonal(self):
        """测试正交"""
        assert hs_inner(HermitianMatrix.diag([1.0, -1.0]), HermitianMatrix.diag([1.0, 1.0])) == pytest.approx(0.0)

    def test_positive_norm(self, rng):
        """测试自内积非负且为实数"""
        x = random_tangent(3, False, rng)
        value = hs_inner(x, x)
        assert value.real > 0
        assert abs(value.imag) <= 1e-14

    def test_dimension_mismatch(self):
        """测试维数不一致"""
        with pytest.raises(DimensionMismatch):
            hs_inner(HermitianMatrix.identity(2), HermitianMatrix.identity(3))

    def test_commutator_of_diagonals(self):
        """测试对角矩阵对易"""
        assert commutator_norm(HermitianMatrix.diag([1.0, 2.0]), HermitianMatrix.diag([3.0, 5.0])) == 0.0
