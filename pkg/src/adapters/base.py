"""
基础范畴接口定义
提供带标签形状与带标签图所需的统一范畴接口：恒等、复合、端点与有限 hom 枚举
"""
from abc import ABC, abstractmethod
from typing import Any, Hashable, List


class CatOracle(ABC):
    """基础范畴接口"""

    @abstractmethod
    def identity(self, obj: Hashable) -> Hashable:
        """
        获取恒等态射

        Args:
            obj: 范畴中的对象

        Returns:
            Hashable: obj 上的恒等态射
        """
        pass

    @abstractmethod
    def compose(self, g: Hashable, f: Hashable) -> Hashable:
        """
        复合态射 g ∘ f（先 f 后 g）

        Args:
            g: 第二个态射
            f: 第一个态射，要求 target(f) == source(g)

        Returns:
            Hashable: 复合态射
        """
        pass

    @abstractmethod
    def source(self, f: Hashable) -> Hashable:
        pass

    @abstractmethod
    def target(self, f: Hashable) -> Hashable:
        pass

    @abstractmethod
    def hom(self, a: Hashable, b: Hashable) -> List[Hashable]:
        """
        枚举 a 到 b 的全部态射

        Returns:
            List[Hashable]: 顺序确定的态射列表，不存在时为空
        """
        pass

    def equal(self, a: Any, b: Any) -> bool:
        """对象或态射的相等判定，默认为结构相等"""
        return a == b

    @property
    def is_terminal(self) -> bool:
        """是否为只有一个对象和一个态射的终范畴"""
        return False

    def is_isomorphism(self, f: Hashable) -> bool:
        """在 hom(target, source) 中寻找双边逆"""
        a, b = self.source(f), self.target(f)
        return any(
            self.compose(g, f) == self.identity(a) and self.compose(f, g) == self.identity(b)
            for g in self.hom(b, a)
        )
