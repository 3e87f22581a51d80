"""
异常定义
"""

from typing import Any, Optional


class Tau2Error(Exception):
    """tau2 基础异常"""


class DomainError(Tau2Error, ValueError):
    """输入不满足前置条件"""


class FormatError(DomainError):
    """文本或记录文件解析失败"""


class NotSelfinjective(DomainError):
    """代数不是自内射的"""


class InvariantViolation(Tau2Error, AssertionError):
    """内部不变量被破坏"""


class CapExceeded(Tau2Error):
    """计算在上限内未完成，携带部分结果"""

    def __init__(self, message: str, cap: int, partial: Optional[Any] = None) -> None:
        super().__init__(message)
        self.cap = cap
        self.partial = partial


class BudgetExceeded(Tau2Error):
    """枚举预算耗尽"""

    def __init__(self, message: str, budget: int, partial: Optional[Any] = None) -> None:
        super().__init__(message)
        self.budget = budget
        self.partial = partial
