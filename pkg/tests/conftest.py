#!/usr/bin/env python3
"""
Pytest 配置文件
"""

import asyncio

import numpy as np
import pytest
from scipy.stats import unitary_group

from qig.core.verify import random_state, random_tangent
from qig.serializers.json_serializer import JsonSerializer
from qig.types.base import NumericConfig


@pytest.fixture
def serializer():
    """提供序列化器实例"""
    return JsonSerializer()


@pytest.fixture
def config():
    """提供数值配置实例"""
    return NumericConfig()


@pytest.fixture
def rng():
    """提供固定种子的随机数生成器"""
    return np.random.default_rng(20240611)


@pytest.fixture
def cone_pair(rng):
    """提供一对随机正定矩阵（非单位迹）"""
    return random_state(3, False, rng), random_state(3, False, rng)


@pytest.fixture
def density_pair(rng):
    """提供一对随机密度矩阵"""
    return random_state(3, True, rng), random_state(3, True, rng)


@pytest.fixture
def unitary(rng):
    """提供随机 3×3 酉矩阵"""
    return unitary_group.rvs(3, random_state=rng)


@pytest.fixture
def qubit_setup(rng):
    """提供随机量子比特密度矩阵与两个切向量"""
    return random_state(2, True, rng), random_tangent(2, False, rng), random_tangent(2, False, rng)


@pytest.fixture
def event_loop():
    """提供事件循环"""
    loop = asyncio.new_event_loop()
    yield loop
    loop.close()


# 测试配置
def pytest_configure(config):
    """配置测试环境"""
    config.addinivalue_line(
        "markers", "asyncio: mark test as async"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow running"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as integration test"
    )


def pytest_collection_modifyitems(config, items):
    """修改测试项"""
    for item in items:
        # 为异步测试添加标记
        if asyncio.iscoroutinefunction(item.function):
            item.add_marker(pytest.mark.asyncio)

        # 为集成测试添加标记
        if "integration" in item.name.lower() or "cli" in item.name.lower():
            item.add_marker(pytest.mark.integration)

        # 为慢速测试添加标记
        if "slow" in item.name.lower() or "suite" in item.name.lower():
            item.add_marker(pytest.mark.slow)
