"""
tau2 CLI - 加权射影直线上的 τ²-稳定倾斜与 2-表示有限代数

计算倾斜丛的自同态代数、3-预投射代数、2-APR 倾斜与带势箭图变换
"""

__version__ = "1.0.0"

from .main import main

__all__ = ["main"]
