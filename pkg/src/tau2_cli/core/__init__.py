"""
tau2 CLI 核心模块
"""

from .config import Config
from .exceptions import (BudgetExceeded, CapExceeded, DomainError, FormatError, InvariantViolation,
                         NotSelfinjective, Tau2Error)
from .verdict import Verdict
from .workspace import RunWorkspace

__all__ = [
    "Config",
    "RunWorkspace",
    "Verdict",
    "Tau2Error",
    "DomainError",
    "FormatError",
    "NotSelfinjective",
    "InvariantViolation",
    "CapExceeded",
    "BudgetExceeded",
]
