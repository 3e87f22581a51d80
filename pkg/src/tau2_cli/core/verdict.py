"""
三值判定
"""

from enum import Enum


class Verdict(str, Enum):
    TRUE = "true"
    FALSE = "false"
    INDETERMINATE = "indeterminate"

    @classmethod
    def of(cls, value: bool) -> "Verdict":
        return cls.TRUE if value else cls.FALSE

    @property
    def exit_code(self) -> int:
        """0 = 真, 1 = 假, 2 = 上限内未定"""
        return {Verdict.TRUE: 0, Verdict.FALSE: 1, Verdict.INDETERMINATE: 2}[self]

    def __bool__(self) -> bool:
        return self is Verdict.TRUE
