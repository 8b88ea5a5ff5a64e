"""
路由模块
把命令行与 HTTP 请求分派到校验、枚举、hom 集、面关系、交叉验证与 DOT 导出
"""
from typing import Any, Dict, List, Optional

from infrastructure.config import Config
from infrastructure.logging import logger
from oracle.correspondence import check_correspondence

from .codec import (
    PayloadError,
    graph_from_json,
    graph_to_dot,
    morphism_to_json,
    opetope_from_json,
    opetope_to_dot,
    opetope_to_json,
    parse_frame_spec,
)
from .errors import BoundExceeded, ValidationError, WrongShapeFamily
from .faces import faces, relations_deep, relations_one_step
from .graphs import is_tree_allowable
from .ladder import ARROW, Frame, Opetope, ladder


def _require_object(data: Any):
    if not isinstance(data, dict):
        raise PayloadError("Expected a JSON object")


class Router:
    """命令路由器"""

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()

    # ---------- 上限 ----------

    def _max_leaves(self, max_leaves: Optional[int]) -> int:
        return self.config.bounds["max_leaves"] if max_leaves is None else max_leaves

    def _check_dim(self, command: str, dim: int):
        max_dim = self.config.bounds["max_dim"]
        if dim > max_dim:
            raise BoundExceeded(f"{command}: dimension {dim} exceeds the configured maximum {max_dim}")

    # ---------- 命令 ----------

    def validate(self, data: Dict[str, Any], path: str = "<payload>") -> Dict[str, Any]:
        """
        校验开胞形（带 dim 字段）或单纯的图

        Returns:
            Dict[str, Any]: 校验结论

        Raises:
            ValidationError: 条件 A / 条件 B 不成立
        """
        _require_object(data)
        if "dim" not in data:
            graph = graph_from_json(data)
            try:
                tree = is_tree_allowable(graph)
            except WrongShapeFamily:
                tree = None
            return {"valid": True, "kind": "graph", "pairs": len(graph.pairs()), "tree_allowable": tree}
        try:
            theta = opetope_from_json(data)
        except ValidationError as e:
            logger.log_validation_failure(path, f"{type(e).__name__}: {e}")
            raise
        return {"valid": True, "kind": "opetope", "dim": theta.dim, "arity": theta.arity}

    def frame_from_json(self, data: Dict[str, Any]) -> Frame:
        if not isinstance(data, dict) or "output" not in data:
            raise PayloadError("A frame needs 'inputs' and 'output'")
        return Frame(
            tuple(opetope_from_json(a) for a in data.get("inputs", [])),
            opetope_from_json(data["output"]),
        )

    def enumerate(
        self,
        dim: int,
        arity: Optional[int] = None,
        frame: Optional[str] = None,
        frame_data: Optional[Dict[str, Any]] = None,
        max_leaves: Optional[int] = None,
    ) -> List[Dict[str, Any]]:
        """
        枚举开胞形

        Args:
            dim: 维数
            arity: 2 维时的元数
            frame: 框架描述，如 "(3,2)->4"（冠状输入）
            frame_data: JSON 形式的一般框架
            max_leaves: 叶子数上限

        Returns:
            List[Dict[str, Any]]: 开胞形的 JSON 列表
        """
        self._check_dim("enumerate", dim)
        return [opetope_to_json(theta) for theta in self._enumerate(dim, arity, frame, frame_data, max_leaves)]

    def _enumerate(self, dim, arity, frame, frame_data, max_leaves) -> List[Opetope]:
        max_leaves = self._max_leaves(max_leaves)
        if dim <= 1:
            return ladder.enumerate_opetopes(dim)
        if frame_data is not None:
            return ladder.enumerate_opetopes(dim, self.frame_from_json(frame_data), max_leaves)
        if dim == 2:
            if frame is not None:
                arities, out_arity = parse_frame_spec(frame)
                if out_arity != 1 or any(m != 1 for m in arities):
                    return []
                arity = len(arities)
            if arity is None or arity < 0:
                raise PayloadError("Enumerating 2-opetopes needs --arity or --frame")
            return ladder.enumerate_opetopes(2, Frame((ARROW,) * arity, ARROW), max_leaves)
        if dim == 3 and frame is not None:
            arities, out_arity = parse_frame_spec(frame)
            inputs = tuple(ladder.corolla(m) for m in arities)
            if out_arity != sum(arities) - len(arities) + 1:
                return []
            if not inputs:
                return ladder.enumerate_opetopes(3, Frame((), ladder.corolla(1)), max_leaves)
            return ladder.enumerate_grafts(inputs, max_leaves)
        raise PayloadError(f"Enumerating {dim}-opetopes needs a frame file")

    def homs(self, a: Dict[str, Any], b: Dict[str, Any]) -> List[Dict[str, Any]]:
        source, target = opetope_from_json(a), opetope_from_json(b)
        self._check_dim("homs", source.dim)
        return [morphism_to_json(f) for f in ladder.hom(source, target)]

    def faces(self, data: Dict[str, Any], depth: int = 1) -> Dict[str, Any]:
        """面映射与面关系"""
        theta = opetope_from_json(data)
        relations = relations_one_step(theta) if depth == 1 else relations_deep(theta, depth)
        return {
            "dim": theta.dim,
            "depth": depth,
            "faces": [str(w) for w in faces(theta)],
            "relations": relations.as_text(),
            "classes": relations.classes_as_text(),
        }

    def crosscheck(
        self,
        dim: int,
        max_leaves: Optional[int] = None,
        max_inputs: Optional[int] = None,
        frame_data: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, Any]:
        """阶梯与切片塔的逐框架比较"""
        frames = [self.frame_from_json(frame_data)] if frame_data is not None else None
        report = check_correspondence(dim, max_leaves=max_leaves, max_inputs=max_inputs, frames=frames)
        return report.model_dump()

    def export_dot(self, data: Dict[str, Any]) -> str:
        _require_object(data)
        if "dim" in data:
            return opetope_to_dot(opetope_from_json(data))
        return graph_to_dot(graph_from_json(data))
