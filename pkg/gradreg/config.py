import os
import json
from typing import Any, Dict, Optional, Union

from .models import Bounds
from .scalar import FieldSpec

THREADS_ENV = "GRADREG_THREADS"


class BoundsConfig:
    """截断参数配置，负责配置的加载、验证和转换"""

    def __init__(self,
                 H: Union[int, str] = 8,
                 N: Union[int, str] = 12,
                 n_max: Optional[Union[int, str]] = None,
                 field: Union[str, int, Dict[str, Any], None] = None,
                 cap: Union[int, str] = 5000,
                 margin: Union[int, str] = 2,
                 threads: Optional[Union[int, str]] = None,
                 cm_window_hi: Optional[Union[int, str]] = None):
        self.H = self._convert_positive_int(H, "H", allow_zero=True)
        self.N = self._convert_positive_int(N, "N")
        self.n_max = None if n_max is None else self._convert_positive_int(n_max, "n_max")
        try:
            self.field = FieldSpec.default() if field is None else FieldSpec.parse(field)
        except ValueError as e:
            raise ValueError(f"无效的 field 值：{field} ({e})") from e
        self.cap = self._convert_positive_int(cap, "cap")
        self.margin = self._convert_positive_int(margin, "margin")
        self.threads = self._convert_positive_int(threads or os.getenv(THREADS_ENV) or 1, "threads")
        self.cm_window_hi = None if cm_window_hi is None else int(cm_window_hi)

    def _convert_positive_int(self, value: Union[int, str], name: str, allow_zero: bool = False) -> int:
        """
        把 int 或 str 形式的参数转换为正整数。

        Args:
            value: 参数值
            name: 参数名（用于错误信息）
            allow_zero: 是否允许 0
        Returns:
            int: 转换后的值
        """
        try:
            converted = int(value.strip()) if isinstance(value, str) else int(value)
            if converted < 0 or (converted == 0 and not allow_zero):
                raise ValueError(f"{name} 必须为正整数")
            return converted
        except (TypeError, ValueError) as e:
            raise ValueError(f"无效的 {name} 值：{value} ({e})") from e

    def validate(self) -> tuple[bool, str]:
        """
        验证参数之间的关系

        Returns:
            tuple[bool, str]: 验证结果和消息
        """
        if self.n_max is not None and self.n_max < 1:
            return False, "n_max 至少为 1"
        if 2 * self.margin >= self.N:
            return False, f"margin={self.margin} 对 N={self.N} 过大"
        if self.cm_window_hi is not None and self.cm_window_hi > self.N:
            return False, f"cm_window_hi={self.cm_window_hi} 超出 N={self.N}"
        return True, ""

    def override(self, **values: Any) -> "BoundsConfig":
        """用命令行参数覆盖配置值，None 表示不覆盖"""
        merged = self.to_dict()
        merged.update({k: v for k, v in values.items() if v is not None})
        return BoundsConfig(**merged)

    def to_dict(self) -> Dict[str, Any]:
        return {"H": self.H, "N": self.N, "n_max": self.n_max, "field": self.field.to_json(),
                "cap": self.cap, "margin": self.margin, "threads": self.threads,
                "cm_window_hi": self.cm_window_hi}

    def to_bounds(self) -> Bounds:
        return Bounds(H=self.H, N=self.N, n_max=self.n_max, field=self.field, cap=self.cap,
                      margin=self.margin, threads=self.threads, cm_window_hi=self.cm_window_hi)

    @classmethod
    def from_config_file(cls, config_file: str = "config.json") -> "BoundsConfig":
        """从配置文件创建配置对象，文件缺失或无法读取时使用默认值"""
        config = {}

        if os.path.exists(config_file):
            try:
                with open(config_file, "r", encoding="utf-8") as f:
                    config = json.load(f)
            except Exception:
                pass  # 使用默认配置

        bounds = config.get("bounds", {}) if isinstance(config, dict) else {}
        known = ("H", "N", "n_max", "field", "cap", "margin", "threads", "cm_window_hi")
        return cls(**{k: bounds[k] for k in known if k in bounds})


def create_bounds_from_config(config_file: str = "config.json", **overrides: Any) -> Bounds:
    """
    从配置文件创建截断参数，并应用命令行覆盖值

    Args:
        config_file: 配置文件路径
        overrides: 覆盖值（None 表示不覆盖）
    Returns:
        Bounds: 校验过的截断参数
    """
    config = BoundsConfig.from_config_file(config_file).override(**overrides)
    ok, message = config.validate()
    if not ok:
        raise ValueError(message)
    return config.to_bounds()
