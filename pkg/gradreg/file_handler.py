"""
File handling operations for JSON documents: presentations, the catalog and reports.
"""

import hashlib
import json
import os
import sys
from typing import Any, Dict, Optional

from .errors import BadInput
from .presentation import QuiverPresentation, parse_presentation
from .scalar import FieldSpec

CATALOG_FILE = os.path.join(os.path.dirname(__file__), "catalog.json")


class FileHandler:
    """文件操作处理器，负责 JSON 文件的读写操作"""

    @staticmethod
    def load_json(filename: str) -> Optional[Any]:
        """
        从 JSON 文件中加载数据。

        Args:
            filename (str): 文件名

        Returns:
            Optional[Any]: 解析后的数据；文件不存在或内容损坏时返回 None。
        """
        if not os.path.exists(filename):
            print(f" 警告：文件 {filename} 不存在。", file=sys.stderr)
            return None

        try:
            with open(filename, "r", encoding="utf-8") as f:
                return json.load(f)
        except (json.JSONDecodeError, UnicodeDecodeError, OSError):
            print(f" 警告：无法解析 {filename}。", file=sys.stderr)
            return None

    @staticmethod
    def save_json(filename: str, data: Any) -> bool:
        """
        将数据保存到 JSON 文件

        Args:
            filename (str): 文件名
            data (Any): 可序列化的数据

        Returns:
            bool: 保存是否成功
        """
        try:
            with open(filename, "w", encoding="utf-8") as f:
                json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
                f.write("\n")
            return True
        except Exception as e:
            print(f" 保存文件时发生错误：{e}", file=sys.stderr)
            return False

    @staticmethod
    def load_presentation(filename: str, field_spec: Optional[FieldSpec] = None) -> QuiverPresentation:
        """读取并解析箭图表示文档；读取失败时抛出 BadInput"""
        if not os.path.exists(filename):
            raise BadInput(f"表示文件 {filename} 不存在")
        try:
            with open(filename, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise BadInput(f"无法读取 {filename}：{e}") from e
        return parse_presentation(text, field_spec)

    @staticmethod
    def load_catalog(filename: str = CATALOG_FILE) -> Dict[str, Dict[str, Any]]:
        """加载内置的代数目录；文件损坏时返回空目录"""
        data = FileHandler.load_json(filename)
        return data if isinstance(data, dict) else {}

    @staticmethod
    def canonical(data: Any) -> str:
        """规范化 JSON 文本（键排序、无多余空白），用于计算摘要"""
        return json.dumps(data, sort_keys=True, ensure_ascii=False, separators=(",", ":"))

    @staticmethod
    def digest(data: Any) -> str:
        return hashlib.sha256(FileHandler.canonical(data).encode("utf-8")).hexdigest()
