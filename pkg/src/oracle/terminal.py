"""
终对称多范畴
只有一个对象和一个（单位）箭头，是切片塔的起点
"""
from typing import Hashable, List, NamedTuple, Sequence, Tuple

from adapters.poset import PosetCategory

from .base import SymMulticat

STAR = "*"
ID_STAR = (STAR, STAR)


class UnitArrow(NamedTuple):
    obj: Hashable


IDENTITY = UnitArrow(STAR)


class TerminalMulticat(SymMulticat):
    """对象范畴是单元素偏序集，唯一的箭头是 * 上的单位箭头"""

    def __init__(self):
        self._objects = PosetCategory([STAR])

    @property
    def objects(self) -> PosetCategory:
        return self._objects

    def sources(self, arrow: UnitArrow) -> Tuple[Hashable, ...]:
        return (arrow.obj,)

    def target(self, arrow: UnitArrow) -> Hashable:
        return arrow.obj

    def identity_arrow(self, obj: Hashable) -> UnitArrow:
        if obj != STAR:
            raise ValueError(f"{obj!r} is not the object of the terminal multicategory")
        return IDENTITY

    def compose(self, f: UnitArrow, gs: Sequence[UnitArrow]) -> UnitArrow:
        self.check_composable(f, gs)
        return gs[0]

    def reindex(self, arrow: UnitArrow, sigma: Sequence[int], components: Sequence[Hashable], output: Hashable) -> UnitArrow:
        if tuple(sigma) != (0,):
            raise ValueError("The unit arrow has exactly one source")
        return arrow

    def arrows(self, sources: Sequence[Hashable], target: Hashable) -> List[UnitArrow]:
        return [IDENTITY] if tuple(sources) == (STAR,) and target == STAR else []

    def __repr__(self) -> str:
        return "TerminalMulticat()"


def terminal_multicat() -> TerminalMulticat:
    return TerminalMulticat()
