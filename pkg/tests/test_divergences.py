#!/usr/bin/env python3
"""
几何平均与散度单元测试
"""

import math

import numpy as np
import pytest

from qig.core.divergences import (
    classical_bhattacharya,
    classical_hellinger_d,
    classical_hellinger_H,
    fidelity_root,
    geometric_mean,
    quasi_entropy_S,
    relative_entropy_H,
)
from qig.core.geodesics import rld_upper_bound_cone, wy_distance_cone
from qig.core.matkern import mat_fn, validate_state
from qig.types import DimensionMismatch, InvalidDistribution, InvalidMeasure, ScalarFunctionSpec


class TestGeometricMean:
    """几何平均测试类"""

    def test_symmetric(self, cone_pair):
        """测试 ρ0#ρ1 = ρ1#ρ0"""
        rho0, rho1 = cone_pair
        np.testing.assert_allclose(geometric_mean(rho0, rho1).data, geometric_mean(rho1, rho0).data, atol=1e-10)

    def test_riccati(self, cone_pair):
        """测试 G·ρ0⁻¹·G = ρ1"""
        rho0, rho1 = cone_pair
        g = geometric_mean(rho0, rho1).data
        np.testing.assert_allclose(g @ np.linalg.inv(rho0.data) @ g, rho1.data, atol=1e-9)

    def test_idempotent(self, cone_pair):
        """测试 ρ#ρ = ρ"""
        rho0, _ = cone_pair
        np.testing.assert_allclose(geometric_mean(rho0, rho0).data, rho0.data, atol=1e-10)

    def test_commuting(self):
        """测试对角情形为逐元素几何平均"""
        rho0 = validate_state(np.diag([0.2, 0.8]))
        rho1 = validate_state(np.diag([0.8, 0.2]))
        np.testing.assert_allclose(geometric_mean(rho0, rho1).data, np.diag([0.4, 0.4]), atol=1e-14)

    def test_congruence_covariance(self, cone_pair, rng):
        """测试 (AρA*)#(AσA*) = A(ρ#σ)A*"""
        rho0, rho1 = cone_pair
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) + 3.0 * np.eye(3)
        moved0, moved1 = (validate_state(a @ r.data @ a.conj().T) for r in (rho0, rho1))
        expected = a @ geometric_mean(rho0, rho1).data @ a.conj().T
        np.testing.assert_allclose(geometric_mean(moved0, moved1).data, expected, atol=1e-9 * np.linalg.norm(expected))

    def test_trace_bound_for_densities(self, density_pair):
        """测试密度矩阵 Tr ρ0#ρ1 ≤ 1，相等时取等号"""
        rho0, rho1 = density_pair
        assert geometric_mean(rho0, rho1).trace <= 1.0 + 1e-12
        assert geometric_mean(rho0, rho0).trace == pytest.approx(1.0, abs=1e-12)

    def test_dimension_mismatch(self, cone_pair):
        """测试维数不一致"""
        rho0, _ = cone_pair
        with pytest.raises(DimensionMismatch):
            geometric_mean(rho0, validate_state(np.eye(2)))

    def test_fidelity_root_self(self, cone_pair):
        """测试 Tr(ρ^{1/2}ρρ^{1/2})^{1/2} = Trρ"""
        rho0, _ = cone_pair
        assert fidelity_root(rho0, rho0) == pytest.approx(rho0.trace, rel=1e-12)


class TestEntropies:
    """拟熵与广义相对熵测试类"""

    def test_quasi_entropy_gives_wy(self, cone_pair):
        """测试 √(2·S_g0) = d_WY"""
        rho0, rho1 = cone_pair
        s = quasi_entropy_S(ScalarFunctionSpec.g0(), rho0, rho1)
        assert math.sqrt(2.0 * s) == pytest.approx(wy_distance_cone(rho0, rho1), rel=1e-9)

    def test_quasi_entropy_symmetric(self, cone_pair):
        """测试 S_g0(ρ0,ρ1) = S_g0(ρ1,ρ0)"""
        rho0, rho1 = cone_pair
        g0 = ScalarFunctionSpec.g0()
        assert quasi_entropy_S(g0, rho0, rho1) == pytest.approx(quasi_entropy_S(g0, rho1, rho0), rel=1e-9)

    def test_relative_entropy_gives_upper_bound(self, cone_pair):
        """测试 √(2·H_g0) 等于 RLD 上界"""
        rho0, rho1 = cone_pair
        h = relative_entropy_H(ScalarFunctionSpec.g0(), rho0, rho1)
        assert math.sqrt(2.0 * h) == pytest.approx(rld_upper_bound_cone(rho0, rho1), rel=1e-9)

    def test_relative_entropy_closed_form(self, cone_pair):
        """测试 H_g0 = 2Trρ0 + 2Trρ1 - 4Tr ρ0#ρ1"""
        rho0, rho1 = cone_pair
        expected = 2.0 * rho0.trace + 2.0 * rho1.trace - 4.0 * geometric_mean(rho0, rho1).trace
        assert relative_entropy_H(ScalarFunctionSpec.g0(), rho0, rho1) == pytest.approx(expected, rel=1e-9)

    def test_zero_on_diagonal(self, density_pair):
        """测试相同的态散度为零"""
        rho, _ = density_pair
        assert quasi_entropy_S(ScalarFunctionSpec.g0(), rho, rho) == pytest.approx(0.0, abs=1e-12)
        assert relative_entropy_H(ScalarFunctionSpec.g0(), rho, rho) == pytest.approx(0.0, abs=1e-12)

    def test_umegaki_entropy(self, density_pair):
        """测试 g(x) = -log x 时 S_g 为 Umegaki 相对熵 Tr ρ(log ρ - log σ)"""
        rho, sigma = density_pair
        log_rho = mat_fn(rho, ScalarFunctionSpec.log()).data
        log_sigma = mat_fn(sigma, ScalarFunctionSpec.log()).data
        expected = float(np.real(np.trace(rho.data @ (log_rho - log_sigma))))
        value = -quasi_entropy_S(ScalarFunctionSpec.log(), rho, sigma)
        assert value == pytest.approx(expected, rel=1e-9)


class TestClassical:
    """经典距离测试类"""

    def test_bhattacharya(self):
        """测试 Bhattacharya 角距离"""
        assert classical_bhattacharya([0.5, 0.5], [0.9, 0.1]) == pytest.approx(0.92730, abs=1e-5)
        assert classical_bhattacharya([0.3, 0.7], [0.3, 0.7]) == pytest.approx(0.0, abs=1e-7)

    def test_hellinger(self):
        """测试 Hellinger 距离"""
        assert classical_hellinger_d([4.0], [1.0]) == pytest.approx(2.0)
        assert classical_hellinger_H([4.0], [1.0]) == pytest.approx(2.0)
        assert classical_hellinger_d([0.2, 0.9], [0.6, 0.3]) == pytest.approx(
            math.sqrt(2.0 * classical_hellinger_H([0.2, 0.9], [0.6, 0.3]))
        )

    def test_invalid_distribution(self):
        """测试非法概率向量"""
        with pytest.raises(InvalidDistribution):
            classical_bhattacharya([0.5, 0.6], [0.5, 0.5])
        with pytest.raises(InvalidDistribution):
            classical_bhattacharya([1.0, 0.0], [0.5, 0.5])
        with pytest.raises(InvalidDistribution):
            classical_bhattacharya([0.5, 0.5], [0.2, 0.3, 0.5])

    def test_invalid_measure(self):
        """测试非法测度"""
        with pytest.raises(InvalidMeasure):
            classical_hellinger_d([1.0, -1.0], [1.0, 1.0])
        with pytest.raises(InvalidMeasure):
            classical_hellinger_H([], [])
