"""
配置管理模块
负责加载和管理配置信息，支持环境变量覆盖枚举上限与热更新
"""
import os
from pathlib import Path
from typing import Any, Dict

import yaml
from dotenv import load_dotenv

# 环境变量名 -> bounds 中的键
BOUND_ENV_KEYS = {
    "OPETOPE_MAX_DIM": "max_dim",
    "OPETOPE_MAX_LEAVES": "max_leaves",
    "OPETOPE_MAX_INPUTS": "max_inputs",
}

DEFAULT_BOUNDS = {"max_dim": 4, "max_leaves": 8, "max_inputs": 3}


class Config:
    """配置管理器"""

    def __init__(self):
        # 加载环境变量
        load_dotenv()

        # 获取项目根目录
        current_file = Path(__file__).resolve()
        self.project_root = current_file.parents[2]  # src/infrastructure/config.py -> src/infrastructure -> src -> root

        # 加载配置文件
        self.config_path = self.project_root / "configs" / "config.yaml"
        self.config = self._load_config()
        self._apply_env_overrides()

    def _load_config(self) -> Dict[str, Any]:
        """加载YAML配置文件"""
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                return yaml.safe_load(f) or {}
        except Exception as e:
            raise RuntimeError(f"Failed to load config file: {str(e)}")

    def _apply_env_overrides(self):
        """用环境变量覆盖枚举上限"""
        bounds = self.config.setdefault("bounds", {})
        for env_key, key in BOUND_ENV_KEYS.items():
            value = os.getenv(env_key)
            if value is None:
                continue
            try:
                bounds[key] = int(value)
            except ValueError:
                raise RuntimeError(f"Environment variable {env_key} must be an integer, got {value!r}")

    def reload(self):
        """重新加载配置"""
        load_dotenv(override=True)
        self.config = self._load_config()
        self._apply_env_overrides()

    @property
    def bounds(self) -> Dict[str, int]:
        """获取枚举上限"""
        return {**DEFAULT_BOUNDS, **self.config.get("bounds", {})}

    @property
    def crosscheck_bounds(self) -> Dict[str, int]:
        """
        获取交叉验证上限
        Returns:
            Dict[str, int]: max_leaves 与 max_inputs，缺省时取 bounds 中的值
        """
        bounds = self.bounds
        crosscheck = self.config.get("crosscheck", {})
        return {
            "max_leaves": crosscheck.get("max_leaves", bounds["max_leaves"]),
            "max_inputs": crosscheck.get("max_inputs", bounds["max_inputs"]),
        }

    @property
    def output_indent(self) -> int:
        return self.config.get("output", {}).get("indent", 2)

    def get_server_config(self) -> Dict[str, Any]:
        """获取 HTTP 服务配置"""
        return {"host": "0.0.0.0", "port": 1219, **self.config.get("server", {})}

    def get_logging_config(self) -> Dict[str, Any]:
        """获取日志配置"""
        return self.config.get("logging", {})

    @property
    def log_format(self) -> str:
        """获取日志格式"""
        return self.config.get("logging", {}).get("format", "text")

    @property
    def log_level(self) -> str:
        """获取日志级别"""
        return self.config.get("logging", {}).get("level", "info")


# 全局配置实例
config = Config()
