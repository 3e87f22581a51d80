"""
配置管理模块
"""

import copy
import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from rich.console import Console

console = Console(stderr=True)


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """递归合并字典，override 优先"""
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class Config:
    """配置管理类"""

    # 环境变量 -> (配置键, 类型)
    ENV_MAPPINGS = {
        "TAU2_CAP": ("algebra.degree_cap", int),
        "TAU2_LAMBDA4": ("wpl.lambda4", str),
        "TAU2_WINDOW": ("wpl.window", str),
        "TAU2_MAX_NODES": ("exchange.max_nodes", int),
        "TAU2_WORKERS": ("exchange.max_workers", int),
        "TAU2_SEED": ("run.seed", int),
        "TAU2_WORKSPACE": ("run.workspace", str),
        "TAU2_DEBUG": ("debug", bool),
    }

    def __init__(self, config_path: Optional[str] = None, debug: bool = False) -> None:
        self.debug = debug
        self.config_path = Path(config_path) if config_path else self._get_default_config_path()
        self.config_dir = self.config_path.parent

        self._config: Dict[str, Any] = {}
        self._load_env_file()
        self._load_config()

    def _load_env_file(self) -> None:
        """加载 .env 文件"""
        env_files = [
            Path.cwd() / ".env",
            self.config_dir / ".env",
        ]

        for env_file in env_files:
            if not env_file.exists():
                continue
            try:
                with open(env_file, 'r', encoding='utf-8') as f:
                    for line in f:
                        line = line.strip()
                        if line and not line.startswith('#') and '=' in line:
                            key, value = line.split('=', 1)
                            key = key.strip()
                            # 只接受本工具的变量，且不覆盖已有环境
                            if key.startswith("TAU2_") and key not in os.environ:
                                os.environ[key] = value.strip().strip('"\'')
                if self.debug:
                    console.print(f"[dim]Loaded .env from: {env_file}[/dim]")
                break
            except OSError as e:
                if self.debug:
                    console.print(f"[yellow]Warning: Failed to load {env_file}: {e}[/yellow]")

    def _get_default_config_path(self) -> Path:
        """获取默认配置文件路径"""
        home = os.getenv("TAU2_HOME")
        base = Path(home).expanduser() if home else Path.home() / ".tau2"
        return base / "config.yaml"

    def _load_config(self) -> None:
        """加载配置文件"""
        file_config: Dict[str, Any] = {}
        if self.config_path.exists():
            try:
                with open(self.config_path, 'r', encoding='utf-8') as f:
                    if self.config_path.suffix.lower() == '.json':
                        file_config = json.load(f)
                    else:
                        file_config = yaml.safe_load(f) or {}
            except (OSError, ValueError, yaml.YAMLError) as e:
                console.print(f"[red]配置文件加载失败: {e}[/red]")
                file_config = {}

        self._config = _deep_merge(self._get_default_config(), file_config)

        # 从环境变量覆盖配置
        self._load_from_env()

    def _load_from_env(self) -> None:
        """从环境变量加载配置"""
        for env_key, (config_key, kind) in self.ENV_MAPPINGS.items():
            env_value = os.getenv(env_key)
            if not env_value:
                continue
            try:
                if kind is bool:
                    value: Any = env_value.lower() in ('true', '1', 'yes', 'on')
                else:
                    value = kind(env_value)
            except ValueError:
                console.print(f"[yellow]忽略无效的环境变量 {env_key}={env_value}[/yellow]")
                continue
            self._set_nested_config(config_key, value)
            if self.debug:
                console.print(f"[dim]Loaded {config_key} from env: {env_key}[/dim]")

    def _set_nested_config(self, key: str, value: Any) -> None:
        """设置嵌套配置值"""
        keys = key.split('.')
        config = self._config
        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]
        config[keys[-1]] = value

    def _get_default_config(self) -> Dict[str, Any]:
        """获取默认配置"""
        return {
            "debug": False,
            "algebra": {
                "degree_cap": 32,
                "truncation_start": 2,
                "gldim_cap": 6,
                "potential_cap": 24,
            },
            "wpl": {
                "lambda4": "2",
                "check_lambda": "3",
                "window": "-c,2c",
                "max_objects": 400,
                "max_cliques": 200000,
            },
            "exchange": {
                "max_nodes": 500,
                "max_workers": 4,
                "timeout": 1800,
                "graded": False,
            },
            "run": {
                "seed": 0,
                "workspace": str(Path.home() / "tau2_runs"),
            },
        }

    def save_config(self) -> None:
        """保存配置文件"""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with open(self.config_path, 'w', encoding='utf-8') as f:
                yaml.dump(self._config, f, default_flow_style=False,
                          allow_unicode=True, indent=2)
        except OSError as e:
            console.print(f"[red]配置文件保存失败: {e}[/red]")

    def get(self, key: str, default: Any = None) -> Any:
        """获取配置值"""
        keys = key.split('.')
        value: Any = self._config
        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def set(self, key: str, value: Any, persist: bool = False) -> None:
        """设置配置值"""
        self._set_nested_config(key, value)
        if persist:
            self.save_config()

    @property
    def degree_cap(self) -> int:
        """完备化长度上限"""
        return int(self.get("algebra.degree_cap", 32))

    @property
    def lambda4(self) -> Fraction:
        """第四个参数点"""
        return Fraction(str(self.get("wpl.lambda4", "2")))

    @property
    def check_lambda(self) -> Fraction:
        """交叉检验用的第二个参数值"""
        return Fraction(str(self.get("wpl.check_lambda", "3")))

    @property
    def workspace_dir(self) -> Path:
        """获取输出目录"""
        path = Path(self.get("run.workspace")).expanduser()
        path.mkdir(parents=True, exist_ok=True)
        return path

    @property
    def algebra_config(self) -> Dict[str, Any]:
        """代数计算配置"""
        return self.get("algebra", {})

    @property
    def wpl_config(self) -> Dict[str, Any]:
        """加权射影直线配置"""
        return self.get("wpl", {})

    @property
    def exchange_config(self) -> Dict[str, Any]:
        """交换图配置"""
        return self.get("exchange", {})
