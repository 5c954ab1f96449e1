"""
验证套件装饰器
"""

from typing import Type, TypeVar

T = TypeVar("T")


def VerificationSuite(cls: Type[T]) -> Type[T]:
    """
    验证套件装饰器。
    标记一个套件类，使其可以被 SuiteRunner 注册；套件名取类属性 name，缺省为类名。
    套件类必须提供 run_trial(rng, index) 方法。

    :param cls: 要装饰的类
    :return: 装饰后的类
    :raises TypeError: cls 不是类，或缺少 run_trial 方法
    """
    if not isinstance(cls, type):
        raise TypeError("@VerificationSuite只能用于类定义")
    if not callable(getattr(cls, "run_trial", None)):
        raise TypeError(f"{cls.__name__} 缺少 run_trial 方法")

    setattr(cls, "_is_verification_suite", True)
    if not getattr(cls, "name", None):
        setattr(cls, "name", cls.__name__)

    return cls
