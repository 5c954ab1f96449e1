"""
EF-RPC-PY 测试包
"""

__version__ = "1.0.0" 