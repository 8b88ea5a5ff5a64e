"""
带标签形状与带标签图模块
在基础范畴上为形状的叶子与图的每个配对附加对象和态射，并提供复合、张量与 KF 展开
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Hashable, List, Mapping, Sequence, Tuple, Union

from adapters.base import CatOracle

from .errors import ArityMismatch, ShapeMismatch, TypeMismatch
from .graphs import (
    Graph,
    Pair,
    compose_traced,
    curry,
    identity_graph,
    tensor_all,
    tensor_embeddings,
    uncurry,
)
from .shapes import ShapeTerm, Variance, leaf_count, print_shape, substitute


@dataclass(frozen=True)
class LabelledShape:
    """形状及其叶子上的对象（按叶子顺序）"""

    shape: ShapeTerm
    labels: Tuple[Hashable, ...]

    def __str__(self) -> str:
        return f"{print_shape(self.shape)}{list(self.labels)}"


@dataclass(frozen=True)
class LabelledGraph:
    """
    带标签图

    leaf_labels 按扭和顺序排列；edge_labels 与 graph.pairs() 对齐，
    每个标签是从配对中负方差端的对象到正方差端的对象的态射
    """

    graph: Graph
    leaf_labels: Tuple[Hashable, ...]
    edge_labels: Tuple[Hashable, ...]

    @cached_property
    def _by_pair(self) -> Dict[Pair, Hashable]:
        return dict(zip(self.graph.pairs(), self.edge_labels))

    @property
    def dom(self) -> LabelledShape:
        return LabelledShape(self.graph.dom, self.leaf_labels[: self.graph.dom_size])

    @property
    def cod(self) -> LabelledShape:
        return LabelledShape(self.graph.cod, self.leaf_labels[self.graph.dom_size:])

    def label(self, pair: Pair) -> Hashable:
        return self._by_pair[(min(pair), max(pair))]

    def oriented(self, pair: Pair) -> Tuple[int, int]:
        """返回 (负端, 正端)"""
        return oriented(self.graph, pair)


def oriented(graph: Graph, pair: Pair) -> Tuple[int, int]:
    a, b = pair
    return (a, b) if graph.twisted[a].variance is Variance.MINUS else (b, a)


def assemble(graph: Graph, leaf_labels: Sequence[Hashable], labels: Mapping[Pair, Hashable]) -> LabelledGraph:
    return LabelledGraph(graph, tuple(leaf_labels), tuple(labels[p] for p in graph.pairs()))


def label_shape(term: ShapeTerm, labels: Sequence[Hashable]) -> LabelledShape:
    """
    给形状的叶子贴上对象

    Raises:
        ArityMismatch: 标签数与叶子数不一致
    """
    if len(labels) != leaf_count(term):
        raise ArityMismatch(f"Shape {print_shape(term)} has {leaf_count(term)} leaves, got {len(labels)} labels")
    return LabelledShape(term, tuple(labels))


def label_graph(
    graph: Graph,
    leaf_labels: Sequence[Hashable],
    edge_labels: Union[Mapping[Pair, Hashable], Sequence[Hashable]],
    category: CatOracle,
) -> LabelledGraph:
    """
    给图贴标签并检查每个态射的端点

    Args:
        graph: 底层图
        leaf_labels: 扭和顺序下每个变量的对象
        edge_labels: 按配对给出的态射，或与 graph.pairs() 对齐的序列
        category: 基础范畴

    Returns:
        LabelledGraph: 校验通过的带标签图

    Raises:
        ArityMismatch: 标签数量不对
        TypeMismatch: 态射端点与叶子标签不一致
    """
    pairs = graph.pairs()
    if len(leaf_labels) != len(graph.mates):
        raise ArityMismatch(f"Graph has {len(graph.mates)} variables, got {len(leaf_labels)} leaf labels")
    if category.is_terminal:
        if edge_labels and len(edge_labels) != len(pairs):
            raise ArityMismatch(f"Graph has {len(pairs)} pairs, got {len(edge_labels)} edge labels")
        return _terminal_labelling(graph, leaf_labels, category)
    if isinstance(edge_labels, Mapping):
        missing = [p for p in pairs if p not in edge_labels]
        if missing or len(edge_labels) != len(pairs):
            raise ArityMismatch(f"Edge labels do not match the pairs of the graph: missing {missing}")
        labels = [edge_labels[p] for p in pairs]
    else:
        labels = list(edge_labels)
        if len(labels) != len(pairs):
            raise ArityMismatch(f"Graph has {len(pairs)} pairs, got {len(labels)} edge labels")
    for pair, morphism in zip(pairs, labels):
        minus, plus = oriented(graph, pair)
        if not (category.equal(category.source(morphism), leaf_labels[minus])
                and category.equal(category.target(morphism), leaf_labels[plus])):
            raise TypeMismatch(f"Label on pair {pair} does not run from variable {minus} to variable {plus}")
    return LabelledGraph(graph, tuple(leaf_labels), tuple(labels))


def _terminal_labelling(graph: Graph, leaf_labels: Sequence[Hashable], category: CatOracle) -> LabelledGraph:
    """终范畴上唯一的态射是恒等：标签由配对决定，相等性退化为配对相等"""
    if len(set(leaf_labels)) > 1:
        raise TypeMismatch("A terminal base category has a single object")
    labels = tuple(category.identity(leaf_labels[0]) for _ in graph.pairs())
    return LabelledGraph(graph, tuple(leaf_labels), labels)


def compose_labelled(f: LabelledGraph, g: LabelledGraph, category: CatOracle) -> LabelledGraph:
    """
    先 f 后 g 的复合；新配对的标签是沿追踪路径从负端开始依次复合的态射

    Raises:
        ShapeMismatch: 底层形状不可复合
        TypeMismatch: 中间叶子标签不一致或路径上的态射无法复合
        ClosedLoop: 底层复合出现闭环
    """
    if f.graph.cod != g.graph.dom:
        raise ShapeMismatch(f"Cannot compose: {print_shape(f.graph.cod)} != {print_shape(g.graph.dom)}")
    if f.cod.labels != g.dom.labels:
        raise TypeMismatch("Middle labelled shapes disagree")
    graph, paths = compose_traced(f.graph, g.graph)
    n_dom = f.graph.dom_size
    n_mid = len(f.graph.mates) - n_dom
    leaf_labels = f.leaf_labels[:n_dom] + g.leaf_labels[n_mid:]
    if category.is_terminal:
        return _terminal_labelling(graph, leaf_labels, category)
    labels: Dict[Pair, Hashable] = {}
    for (start, end), path in paths.items():
        steps = path if graph.twisted[start].variance is Variance.MINUS else list(reversed(path))
        acc = None
        for name, pair in steps:
            step = (f if name == "g" else g).label(pair)
            try:
                acc = step if acc is None else category.compose(step, acc)
            except ValueError as e:
                raise TypeMismatch(f"Labels along pair {(start, end)} do not compose: {e}") from None
        labels[(start, end)] = acc
    return assemble(graph, leaf_labels, labels)


def identity_labelled(shape: LabelledShape, category: CatOracle) -> LabelledGraph:
    graph = identity_graph(shape.shape)
    n = len(shape.labels)
    labels = {(i, n + i): category.identity(obj) for i, obj in enumerate(shape.labels)}
    return assemble(graph, shape.labels + shape.labels, labels)


def tensor_labelled(graphs: Sequence[LabelledGraph]) -> LabelledGraph:
    """带标签图的 n 元张量"""
    graph = tensor_all([g.graph for g in graphs])
    embeddings = tensor_embeddings([g.graph for g in graphs])
    leaf_labels: List[Hashable] = [None] * len(graph.mates)
    labels: Dict[Pair, Hashable] = {}
    for g, embed in zip(graphs, embeddings):
        for i, obj in enumerate(g.leaf_labels):
            leaf_labels[embed[i]] = obj
        for (a, b), morphism in zip(g.graph.pairs(), g.edge_labels):
            labels[(min(embed[a], embed[b]), max(embed[a], embed[b]))] = morphism
    return assemble(graph, leaf_labels, labels)


def uncurry_labelled(f: LabelledGraph) -> LabelledGraph:
    return LabelledGraph(uncurry(f.graph), f.leaf_labels, f.edge_labels)


def curry_labelled(f: LabelledGraph) -> LabelledGraph:
    return LabelledGraph(curry(f.graph), f.leaf_labels, f.edge_labels)


class ShapeFunctor(ABC):
    """从基础范畴到带标签形状/带标签图的函子 F"""

    @property
    @abstractmethod
    def target(self) -> CatOracle:
        """F 的像中标签所在的范畴"""
        pass

    @abstractmethod
    def on_object(self, obj: Hashable) -> LabelledShape:
        """
        Raises:
            UndefinedLabel: F 在该对象上没有定义
        """
        pass

    @abstractmethod
    def on_morphism(self, morphism: Hashable) -> LabelledGraph:
        """
        Returns:
            LabelledGraph: F(source) → F(target) 的带标签图
        """
        pass


def apply_KF_to_shape(functor: ShapeFunctor, shape: LabelledShape) -> LabelledShape:
    """KF 在对象上的作用：逐叶替换为 F 的像"""
    images = [functor.on_object(obj) for obj in shape.labels]
    return LabelledShape(
        substitute(shape.shape, [im.shape for im in images]),
        tuple(obj for im in images for obj in im.labels),
    )


def apply_KF(functor: ShapeFunctor, f: LabelledGraph) -> LabelledGraph:
    """
    KF 在态射上的作用

    每个叶子替换为 F 的像；标签为 g 的配对 (负端 a, 正端 b) 替换为整张图 F(g)。
    替换后叶子的地址是外层路径接内层路径；F(g) 的定义域变量落在 a 的块中，值域变量落在 b 的块中。

    Raises:
        UndefinedLabel: F 在某个标签上没有定义
        TypeMismatch: F(g) 的端点与叶子的像不一致
    """
    images = [functor.on_object(obj) for obj in f.leaf_labels]
    n_dom = f.graph.dom_size
    dom = substitute(f.graph.dom, [im.shape for im in images[:n_dom]])
    cod = substitute(f.graph.cod, [im.shape for im in images[n_dom:]])
    blocks, offset = [], 0
    for im in images:
        blocks.append(offset)
        offset += len(im.labels)
    mates = [0] * offset
    labels: Dict[Pair, Hashable] = {}
    for pair, morphism in zip(f.graph.pairs(), f.edge_labels):
        minus, plus = oriented(f.graph, pair)
        image = functor.on_morphism(morphism)
        if image.graph.dom != images[minus].shape or image.graph.cod != images[plus].shape:
            raise TypeMismatch(f"Image of the label on pair {pair} has the wrong frame")
        n_a = image.graph.dom_size

        def place(j: int) -> int:
            return blocks[minus] + j if j < n_a else blocks[plus] + j - n_a

        for (p, q), inner in zip(image.graph.pairs(), image.edge_labels):
            a, b = place(p), place(q)
            mates[a], mates[b] = b, a
            labels[(min(a, b), max(a, b))] = inner
    leaf_labels = tuple(obj for im in images for obj in im.labels)
    return assemble(Graph(dom, cod, tuple(mates)), leaf_labels, labels)
