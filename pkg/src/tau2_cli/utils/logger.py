"""
日志工具
"""

import logging
import os
import sys
from pathlib import Path
from typing import Optional


def log_dir() -> Path:
    """日志目录，可由 TAU2_HOME 覆盖"""
    home = os.getenv("TAU2_HOME")
    base = Path(home).expanduser() if home else Path.home() / ".tau2"
    return base / "logs"


def setup_logger(name: str = "tau2_cli", level: int = logging.INFO) -> logging.Logger:
    """设置日志器"""
    logger = logging.getLogger(name)

    if logger.handlers:
        return logger

    logger.setLevel(logging.DEBUG)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    # 控制台只输出到 stderr，stdout 留给计算结果
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    try:
        directory = log_dir()
        directory.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(directory / "tau2.log")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    except OSError:
        logger.warning("Log directory not writable, file logging disabled")

    return logger


def set_console_level(level: int, name: str = "tau2_cli") -> None:
    """调整控制台输出级别"""
    for handler in logging.getLogger(name).handlers:
        if isinstance(handler, logging.StreamHandler) and not isinstance(
            handler, logging.FileHandler
        ):
            handler.setLevel(level)


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """获取日志器"""
    if name:
        return logging.getLogger(name)
    return logging.getLogger("tau2_cli")
