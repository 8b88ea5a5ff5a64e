"""
开胞形范畴适配器
把阶梯中第 k 层的开胞形与开胞形态射包装成基础范畴 Ope_k
"""
from typing import TYPE_CHECKING, List

from .base import CatOracle

if TYPE_CHECKING:
    from core.ladder import Opetope, OpetopeLadder, OpetopeMorphism


class OpetopeCategory(CatOracle):
    """Ope_k：对象为 k 维开胞形，态射为 (σ, g_i, g)"""

    def __init__(self, ladder: "OpetopeLadder", dim: int):
        self.ladder = ladder
        self.dim = dim

    def identity(self, obj: "Opetope") -> "OpetopeMorphism":
        return self.ladder.identity_morphism(obj)

    def compose(self, g: "OpetopeMorphism", f: "OpetopeMorphism") -> "OpetopeMorphism":
        return self.ladder.compose_morphisms(g, f)

    def source(self, f: "OpetopeMorphism") -> "Opetope":
        return f.source

    def target(self, f: "OpetopeMorphism") -> "Opetope":
        return f.target

    def hom(self, a: "Opetope", b: "Opetope") -> List["OpetopeMorphism"]:
        """
        枚举开胞形态射

        Args:
            a: 源开胞形
            b: 目标开胞形

        Returns:
            List[OpetopeMorphism]: 满足交换三角形的全部态射
        """
        return list(self.ladder.hom(a, b))

    @property
    def is_terminal(self) -> bool:
        # Ope_0 与 Ope_1 都只有一个对象和一个恒等态射
        return self.dim <= 1

    def __repr__(self) -> str:
        return f"OpetopeCategory(dim={self.dim})"
