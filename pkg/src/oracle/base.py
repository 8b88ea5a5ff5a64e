"""
对称多范畴接口
多范畴的箭头、对称作用与元素范畴 elt(Q)；切片校验的基础
"""
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, Hashable, List, Sequence, Tuple

from adapters.base import CatOracle
from core.errors import ArityMismatch


class SymMulticat(ABC):
    """
    对称多范畴 Q

    对象构成一个范畴（objects），箭头 f ∈ Q(x_1..x_m; x) 可以沿对象范畴中的同构重新索引
    """

    @property
    @abstractmethod
    def objects(self) -> CatOracle:
        """对象范畴"""
        pass

    @abstractmethod
    def sources(self, arrow: Hashable) -> Tuple[Hashable, ...]:
        pass

    @abstractmethod
    def target(self, arrow: Hashable) -> Hashable:
        pass

    @abstractmethod
    def identity_arrow(self, obj: Hashable) -> Hashable:
        """Q(x; x) 中的单位箭头"""
        pass

    @abstractmethod
    def compose(self, f: Hashable, gs: Sequence[Hashable]) -> Hashable:
        """
        多范畴复合 f ∘ (g_1, ..., g_m)

        Args:
            f: Q(x_1..x_m; x) 中的箭头
            gs: target(g_i) 必须恰好等于 x_i

        Returns:
            Hashable: 源为各 g_i 的源依次拼接的箭头

        Raises:
            ArityMismatch: gs 的个数或目标与 f 的源不符
        """
        pass

    @abstractmethod
    def reindex(
        self,
        arrow: Hashable,
        sigma: Sequence[int],
        components: Sequence[Hashable],
        output: Hashable,
    ) -> Hashable:
        """
        沿 (σ, c_i, t) 重新索引箭头

        结果的第 i 个源是 components[i] 的源，components[i] 指向原箭头的第 σ(i) 个源；
        output 从原目标指向新目标
        """
        pass

    @abstractmethod
    def arrows(self, sources: Sequence[Hashable], target: Hashable) -> List[Hashable]:
        """Q(x_1..x_m; x) 的全部箭头，顺序确定"""
        pass

    def check_composable(self, f: Hashable, gs: Sequence[Hashable]):
        expected = self.sources(f)
        if len(gs) != len(expected):
            raise ArityMismatch(f"Expected {len(expected)} arrows to compose, got {len(gs)}")
        for i, (g, x) in enumerate(zip(gs, expected)):
            if self.target(g) != x:
                raise ArityMismatch(f"Target of argument {i} does not match source {i}")


@dataclass(frozen=True, eq=False)
class EltMorphism:
    """
    elt(Q) 中的态射 a → b

    components[i] 是 b 的第 i 个源到 a 的第 σ(i) 个源的态射，output 是 a 的目标到 b 的目标
    """

    source: Hashable
    target: Hashable
    sigma: Tuple[int, ...]
    components: Tuple[Hashable, ...]
    output: Hashable
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash((self.source, self.target, self.sigma, self.components, self.output))
        )

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, EltMorphism) or self._hash != other._hash:
            return False
        return (self.source, self.target, self.sigma, self.components, self.output) == (
            other.source, other.target, other.sigma, other.components, other.output
        )

    def __repr__(self) -> str:
        return f"EltMorphism(sigma={self.sigma})"


class EltCategory(CatOracle):
    """元素范畴 elt(Q)：对象为 Q 的箭头，态射为使重新索引结果恰好为目标的 (σ, t_i, t)"""

    def __init__(self, multicat: SymMulticat):
        self.multicat = multicat
        self._lock = threading.RLock()
        self._homs: Dict[Tuple[Hashable, Hashable], Tuple[EltMorphism, ...]] = {}

    def identity(self, obj: Hashable) -> EltMorphism:
        base = self.multicat.objects
        sources = self.multicat.sources(obj)
        return EltMorphism(
            obj,
            obj,
            tuple(range(len(sources))),
            tuple(base.identity(x) for x in sources),
            base.identity(self.multicat.target(obj)),
        )

    def compose(self, g: EltMorphism, f: EltMorphism) -> EltMorphism:
        if f.target != g.source:
            raise ValueError(f"Cannot compose {g!r} after {f!r}: endpoints differ")
        base = self.multicat.objects
        return EltMorphism(
            f.source,
            g.target,
            tuple(f.sigma[t] for t in g.sigma),
            tuple(base.compose(f.components[t], g_i) for t, g_i in zip(g.sigma, g.components)),
            base.compose(g.output, f.output),
        )

    def source(self, f: EltMorphism) -> Hashable:
        return f.source

    def target(self, f: EltMorphism) -> Hashable:
        return f.target

    def hom(self, a: Hashable, b: Hashable) -> List[EltMorphism]:
        """
        逐个尝试 (σ, t_i, t) 并保留重新索引后等于 b 的那些

        Returns:
            List[EltMorphism]: 顺序确定的态射列表
        """
        key = (a, b)
        with self._lock:
            if key in self._homs:
                return list(self._homs[key])
        q, base = self.multicat, self.multicat.objects
        a_sources, b_sources = q.sources(a), q.sources(b)
        results: List[EltMorphism] = []
        if len(a_sources) == len(b_sources):
            outputs = base.hom(q.target(a), q.target(b))
            for sigma in permutations(range(len(a_sources))):
                choices = [base.hom(b_sources[i], a_sources[s]) for i, s in enumerate(sigma)]
                for components in product(*choices):
                    for t in outputs:
                        if q.reindex(a, sigma, components, t) == b:
                            results.append(EltMorphism(a, b, sigma, tuple(components), t))
        with self._lock:
            self._homs[key] = tuple(results)
        return results
