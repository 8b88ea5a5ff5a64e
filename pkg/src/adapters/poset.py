"""
偏序集范畴适配器
有限偏序集作为基础范畴：态射 (a, b) 存在当且仅当 a ≤ b
"""
from typing import Callable, Hashable, List, Optional, Sequence, Tuple

from .base import CatOracle

Arrow = Tuple[Hashable, Hashable]


class PosetCategory(CatOracle):
    """有限偏序集范畴"""

    def __init__(self, elements: Sequence[Hashable], leq: Optional[Callable[[Hashable, Hashable], bool]] = None):
        self.elements = list(elements)
        self.leq = leq or (lambda a, b: a <= b)

    def identity(self, obj: Hashable) -> Arrow:
        return (obj, obj)

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        if f[1] != g[0]:
            raise ValueError(f"Cannot compose {g} after {f}")
        return (f[0], g[1])

    def source(self, f: Arrow) -> Hashable:
        return f[0]

    def target(self, f: Arrow) -> Hashable:
        return f[1]

    def hom(self, a: Hashable, b: Hashable) -> List[Arrow]:
        return [(a, b)] if self.leq(a, b) else []

    @property
    def is_terminal(self) -> bool:
        return len(self.elements) == 1
