"""
面范畴模块
由配置图的配对生成开胞形的面映射词 (s_i, t) 以及复合面之间的关系
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Sequence, Tuple

import networkx as nx

from .errors import MismatchFound
from .labelled import LabelledGraph, apply_KF
from .ladder import Opetope, ladder
from .shapes import Gen, Hom, ShapeTerm, print_shape, tensor_factors


class Letter(NamedTuple):
    """面映射生成元：kind 为 "s"（带 1 起始的下标）或 "t"（下标为 0）"""

    kind: str
    index: int


TARGET = Letter("t", 0)


def source(index: int) -> Letter:
    return Letter("s", index)


@dataclass(frozen=True, order=True)
class FacePath:
    """
    面映射词，从左到右读：s_i s_j 是第 i 个源的第 j 个源

    dim 是被取面的开胞形的维数，每个字母降一维
    """

    letters: Tuple[Letter, ...]
    dim: int

    @property
    def face_dim(self) -> int:
        return self.dim - len(self.letters)

    def __str__(self) -> str:
        parts = []
        for position, letter in enumerate(self.letters):
            if letter.kind == "t":
                parts.append("t")
            elif self.dim - position == 1:
                # 箭头只有一个源
                parts.append("s")
            else:
                parts.append(f"s{letter.index}")
        return "".join(parts)

    def prefixed(self, letter: Letter) -> "FacePath":
        return FacePath((letter,) + self.letters, self.dim + 1)

    def strip(self) -> "FacePath":
        return FacePath(self.letters[1:], self.dim - 1)


@dataclass(frozen=True)
class RelationSet:
    """
    一组面映射词之间的等式及其生成的等价类

    equations 中每个等式的左边按字母序 s_1 < s_2 < ... < t 较小
    """

    words: Tuple[FacePath, ...]
    equations: Tuple[Tuple[FacePath, FacePath], ...]

    @cached_property
    def classes(self) -> List[FrozenSet[FacePath]]:
        graph = nx.Graph()
        graph.add_nodes_from(self.words)
        graph.add_edges_from(self.equations)
        return sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)

    def class_of(self, word: FacePath) -> FrozenSet[FacePath]:
        for cls in self.classes:
            if word in cls:
                return cls
        raise KeyError(str(word))

    def as_text(self) -> List[str]:
        return [f"{a} = {b}" for a, b in self.equations]

    def classes_as_text(self) -> List[List[str]]:
        return [[str(w) for w in sorted(cls)] for cls in self.classes]


def _walk(term: ShapeTerm, prefix: Tuple[Letter, ...]) -> Iterator[Tuple[Letter, ...]]:
    if isinstance(term, Gen):
        yield prefix
    elif isinstance(term, Hom):
        for j, factor in enumerate(tensor_factors(term.dom)):
            yield from _walk(factor, prefix + (source(j + 1),))
        yield from _walk(term.cod, prefix + (TARGET,))
    else:
        raise ValueError(f"Shape {print_shape(term)} is not a nested frame")


def face_words(shape: ShapeTerm, dim: int) -> List[FacePath]:
    """
    嵌套框架形状中每个叶子对应的面映射词（按叶子顺序）

    hom 定义域中的第 j 个张量因子给出 s_j，值域给出 t
    """
    return [FacePath(letters, dim) for letters in _walk(shape, ())]


def _equations(graph: LabelledGraph, words: Sequence[FacePath]) -> List[Tuple[FacePath, FacePath]]:
    # theta 的定义域是 I，扭和下标即值域叶子下标
    return [tuple(sorted((words[a], words[b]))) for a, b in graph.graph.pairs()]


def faces(theta: Opetope) -> List[FacePath]:
    """s_1..s_m 与 t"""
    if theta.dim < 1:
        raise ValueError("The point has no faces")
    return [FacePath((source(i + 1),), theta.dim) for i in range(theta.arity)] + [FacePath((TARGET,), theta.dim)]


def relations_one_step(theta: Opetope) -> RelationSet:
    """
    配置图的每个配对给出一个等式，两边是指向同一个低维胞腔的两个二字母词

    Args:
        theta: 维数至少为 2 的开胞形

    Returns:
        RelationSet: 等式个数等于配对个数
    """
    if theta.dim < 2:
        raise ValueError("One-step relations need an opetope of dimension at least 2")
    words = face_words(theta.theta.graph.cod, theta.dim)
    equations = sorted(_equations(theta.theta, words))
    return RelationSet(tuple(words), tuple(equations))


def relations_deep(theta: Opetope, depth: int = 2) -> RelationSet:
    """
    三字母词之间的关系：由 Aφ_{k-2}θ̄ 的配对与各输入自身的一步关系（前缀 s_i）生成

    Raises:
        ValueError: 维数小于 3 或 depth 不是 2
    """
    if depth != 2:
        raise ValueError("Only depth 2 is supported")
    if theta.dim < 3:
        raise ValueError("Deep relations need an opetope of dimension at least 3")
    expanded = apply_KF(ladder.functor(theta.dim - 2), theta.theta)
    words = face_words(expanded.graph.cod, theta.dim)
    equations = set(_equations(expanded, words))
    for i, alpha in enumerate(theta.inputs):
        for a, b in relations_one_step(alpha).equations:
            equations.add((a.prefixed(source(i + 1)), b.prefixed(source(i + 1))))
    return RelationSet(tuple(words), tuple(sorted(equations)))


def zero_cell_classes(alpha: Opetope) -> List[FrozenSet[FacePath]]:
    """2 维开胞形的 0 维面类"""
    return relations_one_step(alpha).classes


def tf_map(theta: Opetope) -> Dict[FrozenSet[FacePath], FrozenSet[FacePath]]:
    """
    θ 的每个深层类去掉开头的 t 后落入输出 α 的唯一一个类，且这一对应是双射

    Raises:
        MismatchFound: 某个类没有 t 开头的词、落入多个类或对应不是双射
    """
    deep = relations_deep(theta)
    target_relations = relations_one_step(theta.output)
    mapping: Dict[FrozenSet[FacePath], FrozenSet[FacePath]] = {}
    for cls in deep.classes:
        images = {target_relations.class_of(w.strip()) for w in cls if w.letters[0] == TARGET}
        if len(images) != 1:
            raise MismatchFound(
                f"Face class {sorted(str(w) for w in cls)} meets {len(images)} classes of the output",
                witness=sorted(str(w) for w in cls),
            )
        mapping[cls] = images.pop()
    if len(set(mapping.values())) != len(target_relations.classes) or len(mapping) != len(target_relations.classes):
        raise MismatchFound("Face classes of the opetope and of its output are not in bijection")
    return mapping
