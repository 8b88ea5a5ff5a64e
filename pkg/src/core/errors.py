"""
错误定义模块
统一定义形状、图、阶梯构造与切片校验中使用的异常类型
"""
from typing import Any, Optional


class OpetopeError(ValueError):
    """所有领域错误的基类"""


class ShapeSyntaxError(OpetopeError):
    """形状表达式语法错误"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class VarianceClash(OpetopeError):
    """配对两端方差相同"""


class Incomplete(OpetopeError):
    """变量未配对或被重复配对"""


class WrongShapeFamily(OpetopeError):
    """图的形状不属于树形族"""


class ClosedLoop(OpetopeError):
    """复合时出现闭环"""


class ShapeMismatch(OpetopeError):
    """形状不匹配（复合、柯里化等）"""


class ArityMismatch(OpetopeError):
    """标签数量或节点元数不匹配"""


class TypeMismatch(OpetopeError):
    """边标签的端点与叶子标签不一致"""


class UndefinedLabel(OpetopeError):
    """函子在某个标签上没有定义"""


class ValidationError(OpetopeError):
    """条件 A / 条件 B 校验失败的基类"""


class NotTreeShaped(ValidationError):
    """配置图不是一棵树（条件 A）"""


class CompositeMismatch(ValidationError):
    """按配置复合的结果与输出不一致（条件 B）"""


class FrameMismatch(ValidationError):
    """配置图的类型与框架不一致"""


class MismatchFound(OpetopeError):
    """阶梯与切片预言机的计数或对象不一致"""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class BoundExceeded(OpetopeError):
    """超出枚举上限"""
