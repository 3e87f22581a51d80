"""
运行目录管理模块
"""

import json
import uuid
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from .. import __version__
from ..algebra.groebner import MONOMIAL_ORDER
from ..utils.logger import get_logger
from .config import Config

logger = get_logger(__name__)


class RunWorkspace:
    """每次运行一个目录，run.json 记录版本、单项式序、上限与参数"""

    def __init__(self, config: Config, output_dir: Optional[str] = None) -> None:
        self.config = config
        self.workspace_dir = Path(output_dir).expanduser() if output_dir else config.workspace_dir
        self.current_run: Optional[Path] = None
        self.run_info: Dict[str, Any] = {}

    def create_run(self, command: str, parameters: Optional[Dict[str, Any]] = None) -> Path:
        """创建运行目录并写入 run.json"""
        run_id = uuid.uuid4().hex[:8]
        stamp = datetime.now().strftime("%Y%m%d-%H%M%S")
        run_dir = self.workspace_dir / f"{stamp}-{self._sanitize_name(command)}-{run_id}"
        run_dir.mkdir(parents=True, exist_ok=False)

        self.run_info = {
            "id": run_id,
            "command": command,
            "created_at": datetime.now().isoformat(),
            "version": __version__,
            "monomial_order": MONOMIAL_ORDER,
            "caps": {
                "degree_cap": self.config.get("algebra.degree_cap"),
                "gldim_cap": self.config.get("algebra.gldim_cap"),
                "potential_cap": self.config.get("algebra.potential_cap"),
                "max_nodes": self.config.get("exchange.max_nodes"),
            },
            "parameters": {k: _plain(v) for k, v in (parameters or {}).items()},
            "outputs": [],
        }
        self.current_run = run_dir
        self._write_run_info()
        logger.info(f"Created run directory: {run_dir}")
        return run_dir

    def output_path(self, filename: str) -> Path:
        if self.current_run is None:
            raise RuntimeError("没有活动的运行目录")
        return self.current_run / filename

    def record_output(self, path: Path, summary: Optional[Dict[str, Any]] = None) -> None:
        """登记输出文件"""
        entry: Dict[str, Any] = {"file": path.name}
        if summary:
            entry["summary"] = {k: _plain(v) for k, v in summary.items()}
        self.run_info.setdefault("outputs", []).append(entry)
        self.run_info["updated_at"] = datetime.now().isoformat()
        self._write_run_info()

    def write_text(self, filename: str, content: str) -> Path:
        path = self.output_path(filename)
        with open(path, "w", encoding="utf-8") as f:
            f.write(content)
        self.record_output(path)
        return path

    def list_runs(self) -> List[Dict[str, Any]]:
        """列出所有运行"""
        runs = []
        if not self.workspace_dir.exists():
            return runs
        for item in self.workspace_dir.iterdir():
            info_file = item / "run.json"
            if item.is_dir() and info_file.exists():
                try:
                    with open(info_file, "r", encoding="utf-8") as f:
                        info = json.load(f)
                except (OSError, ValueError):
                    continue
                runs.append({
                    "id": info.get("id", ""),
                    "command": info.get("command", ""),
                    "path": str(item),
                    "created_at": info.get("created_at", ""),
                })
        return sorted(runs, key=lambda x: x["created_at"], reverse=True)

    def _write_run_info(self) -> None:
        with open(self.output_path("run.json"), "w", encoding="utf-8") as f:
            json.dump(self.run_info, f, ensure_ascii=False, indent=2)

    def _sanitize_name(self, name: str) -> str:
        """清理名称，移除非法字符"""
        safe_name = name.replace(" ", "_").replace("/", "_").replace("\\", "_")
        safe_name = "".join(c for c in safe_name if c.isalnum() or c in "_-")
        return safe_name[:50]


def _plain(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)
