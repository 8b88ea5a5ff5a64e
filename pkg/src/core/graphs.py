"""
Kelly–Mac Lane 图模块
图是扭和变量上遵守方差的完美配对；提供树形族的可允许性判定、穷举、复合（含闭环检测）、张量与柯里化
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import BoundExceeded, ClosedLoop, Incomplete, ShapeMismatch, VarianceClash, WrongShapeFamily
from .shapes import (
    UNIT,
    Hom,
    ShapeTerm,
    Side,
    Tensor,
    TwistedVariable,
    Unit,
    VarPath,
    frame_arity,
    frame_shape,
    print_shape,
    tensor_factors,
    tensor_of,
    twisted_variables,
    variables,
)

Pair = Tuple[int, int]
# 复合路径上的一条边：("g" 或 "h", 该图中的配对)
PathEdge = Tuple[str, Pair]


@dataclass(frozen=True)
class Graph:
    """
    图 ξ: dom → cod

    mates[i] 是第 i 个扭和变量的伙伴；扭和顺序为先定义域后值域
    """

    dom: ShapeTerm
    cod: ShapeTerm
    mates: Tuple[int, ...]

    @cached_property
    def twisted(self) -> List[TwistedVariable]:
        return twisted_variables(self.dom, self.cod)

    @property
    def dom_size(self) -> int:
        return len(variables(self.dom))

    def mate(self, index: int) -> int:
        return self.mates[index]

    def pairs(self) -> Tuple[Pair, ...]:
        """按较小下标排序的配对"""
        return tuple((i, m) for i, m in enumerate(self.mates) if i < m)

    def validate(self) -> "Graph":
        twisted = self.twisted
        if len(self.mates) != len(twisted):
            raise Incomplete(f"Pairing covers {len(self.mates)} of {len(twisted)} variables")
        for i, m in enumerate(self.mates):
            if not 0 <= m < len(twisted) or m == i or self.mates[m] != i:
                raise Incomplete(f"Variable {i} is not paired with exactly one other variable")
            if twisted[i].variance is twisted[m].variance:
                raise VarianceClash(f"Variables {i} and {m} both have variance {twisted[i].variance.value}")
        return self


VariableRef = Union[int, Tuple[Side, VarPath]]


def _resolve(twisted: Sequence[TwistedVariable], ref: VariableRef) -> int:
    if isinstance(ref, int):
        if not 0 <= ref < len(twisted):
            raise Incomplete(f"No variable with index {ref}")
        return ref
    side, path = ref
    for index, var in enumerate(twisted):
        if var.side == side and var.path == tuple(path):
            return index
    raise Incomplete(f"No {Side(side).value} variable at path {path}")


def make_graph(dom: ShapeTerm, cod: ShapeTerm, pairs: Iterable[Tuple[VariableRef, VariableRef]]) -> Graph:
    """
    由配对构造并校验图

    Args:
        dom: 定义域形状
        cod: 值域形状
        pairs: 变量对，变量可用扭和下标或 (Side, VarPath) 指定

    Returns:
        Graph: 校验通过的图

    Raises:
        VarianceClash: 某对变量扭和方差相同
        Incomplete: 有变量未配对或被重复配对
    """
    twisted = twisted_variables(dom, cod)
    mates: List[Optional[int]] = [None] * len(twisted)
    for left, right in pairs:
        a, b = _resolve(twisted, left), _resolve(twisted, right)
        if a == b or mates[a] is not None or mates[b] is not None:
            raise Incomplete(f"Variable {a if mates[a] is not None or a == b else b} is paired more than once")
        if twisted[a].variance is twisted[b].variance:
            raise VarianceClash(f"Variables {a} and {b} both have variance {twisted[a].variance.value}")
        mates[a], mates[b] = b, a
    missing = [i for i, m in enumerate(mates) if m is None]
    if missing:
        raise Incomplete(f"Variables {missing} are unpaired")
    return Graph(dom, cod, tuple(mates))  # type: ignore[arg-type]


def identity_graph(term: ShapeTerm) -> Graph:
    n = len(variables(term))
    return Graph(term, term, tuple(list(range(n, 2 * n)) + list(range(n))))


def empty_graph() -> Graph:
    """I → I 上唯一的图，也是图张量的单位"""
    return Graph(UNIT, UNIT, ())


# ---------- 树形族 ----------


class TreeFrameShape(NamedTuple):
    """X_{m_1} ⊗ ... ⊗ X_{m_k} → X_n"""

    node_arities: Tuple[int, ...]
    out_arity: int

    @property
    def dom(self) -> ShapeTerm:
        return tensor_of([frame_shape(m) for m in self.node_arities])

    @property
    def cod(self) -> ShapeTerm:
        return frame_shape(self.out_arity)

    @property
    def expected_out_arity(self) -> int:
        return sum(self.node_arities) - len(self.node_arities) + 1

    def node_offset(self, node: int) -> int:
        return sum(m + 1 for m in self.node_arities[:node])

    def node_input_index(self, node: int, position: int) -> int:
        return self.node_offset(node) + position

    def node_output_index(self, node: int) -> int:
        return self.node_offset(node) + self.node_arities[node]

    def boundary_input_index(self, leaf: int) -> int:
        return self.node_offset(len(self.node_arities)) + leaf

    def boundary_output_index(self) -> int:
        return self.node_offset(len(self.node_arities)) + self.out_arity


class Slot(NamedTuple):
    """节点输入位置；node 为 -1 表示边界输出（根）"""

    node: int
    position: int

    @property
    def is_root(self) -> bool:
        return self.node < 0


ROOT = Slot(-1, -1)


@dataclass(frozen=True)
class TreeWiring:
    """
    树的连线描述

    node_targets[i] 为节点 i 的输出接到的位置，leaf_targets[l] 为第 l 个边界输入接到的位置
    """

    shape: TreeFrameShape
    node_targets: Tuple[Slot, ...]
    leaf_targets: Tuple[Slot, ...]


def tree_frame_shape(g: Graph) -> TreeFrameShape:
    """
    读出（去柯里化后的）图的树形族形状

    Raises:
        WrongShapeFamily: 形状不是 X_{m_1} ⊗ ... ⊗ X_{m_k} → X_n
    """
    try:
        arities = tuple(frame_arity(f) for f in tensor_factors(g.dom))
        out = frame_arity(g.cod)
    except ValueError as e:
        raise WrongShapeFamily(str(e)) from None
    return TreeFrameShape(arities, out)


def _slot_of(shape: TreeFrameShape, index: int) -> Optional[Slot]:
    if index == shape.boundary_output_index():
        return ROOT
    for node, arity in enumerate(shape.node_arities):
        offset = shape.node_offset(node)
        if offset <= index < offset + arity:
            return Slot(node, index - offset)
    return None


def wiring_of(g: Graph) -> TreeWiring:
    """把树形族的图翻译成连线描述"""
    shape = tree_frame_shape(g)
    node_targets = []
    for node in range(len(shape.node_arities)):
        slot = _slot_of(shape, g.mate(shape.node_output_index(node)))
        if slot is None:
            raise WrongShapeFamily(f"Output of node {node} is not wired to an input")
        node_targets.append(slot)
    leaf_targets = []
    for leaf in range(shape.out_arity):
        slot = _slot_of(shape, g.mate(shape.boundary_input_index(leaf)))
        if slot is None:
            raise WrongShapeFamily(f"Boundary input {leaf} is not wired to an input")
        leaf_targets.append(slot)
    return TreeWiring(shape, tuple(node_targets), tuple(leaf_targets))


def graph_of(wiring: TreeWiring) -> Graph:
    """连线描述的逆翻译"""
    shape = wiring.shape

    def index_of(slot: Slot) -> int:
        if slot.is_root:
            return shape.boundary_output_index()
        return shape.node_input_index(slot.node, slot.position)

    pairs = [(shape.node_output_index(i), index_of(s)) for i, s in enumerate(wiring.node_targets)]
    pairs += [(shape.boundary_input_index(l), index_of(s)) for l, s in enumerate(wiring.leaf_targets)]
    return make_graph(shape.dom, shape.cod, pairs)


def _reaches_root(node_targets: Sequence[Slot]) -> bool:
    for start in range(len(node_targets)):
        seen = set()
        node = start
        while True:
            if node in seen:
                return False
            seen.add(node)
            target = node_targets[node]
            if target.is_root:
                break
            node = target.node
    return True


def is_tree_allowable(g: Graph) -> bool:
    """
    判断树形族的图是否恰好构成一棵有根树

    Raises:
        WrongShapeFamily: 形状不属于树形族
    """
    shape = tree_frame_shape(g)
    if shape.out_arity != shape.expected_out_arity:
        return False
    wiring = wiring_of(g)
    roots = [s for s in wiring.node_targets + wiring.leaf_targets if s.is_root]
    if len(roots) != 1:
        return False
    return _reaches_root(wiring.node_targets)


def _creates_cycle(parents: Dict[int, Slot], node: int, slot: Slot) -> bool:
    current: Optional[Slot] = slot
    while current is not None and not current.is_root:
        if current.node == node:
            return True
        current = parents.get(current.node)
    return False


def enumerate_allowable(shape: TreeFrameShape, max_leaves: Optional[int] = None) -> List[Graph]:
    """
    穷举给定树形族形状上的全部可允许图

    Args:
        shape: 节点元数与输出元数
        max_leaves: 节点输入总数上限

    Returns:
        List[Graph]: 按配对字典序排列的全部图

    Raises:
        BoundExceeded: 节点输入总数超出上限
    """
    total = sum(shape.node_arities)
    if max_leaves is not None and total > max_leaves:
        raise BoundExceeded(f"Tree has {total} leaves, bound is {max_leaves}")
    if shape.out_arity != shape.expected_out_arity or any(m < 0 for m in shape.node_arities):
        return []
    slots = [Slot(i, p) for i, m in enumerate(shape.node_arities) for p in range(m)] + [ROOT]
    results: List[Graph] = []
    parents: Dict[int, Slot] = {}

    def assign(node: int, used: frozenset):
        if node == len(shape.node_arities):
            free = [s for s in slots if s not in used]
            for order in permutations(free):
                results.append(graph_of(TreeWiring(
                    shape, tuple(parents[i] for i in range(node)), tuple(order)
                )))
            return
        for slot in slots:
            if slot in used or _creates_cycle(parents, node, slot):
                continue
            parents[node] = slot
            assign(node + 1, used | {slot})
            del parents[node]

    assign(0, frozenset())
    results.sort(key=lambda g: g.pairs())
    return results


# ---------- 复合、张量、柯里化 ----------


def compose_traced(g: Graph, h: Graph) -> Tuple[Graph, Dict[Pair, List[PathEdge]]]:
    """
    复合 g: T → S 与 h: S → U，并返回每个新配对经过的路径

    Returns:
        Tuple[Graph, Dict]: 复合图，以及从较小下标端点出发的路径

    Raises:
        ShapeMismatch: g 的值域与 h 的定义域不一致
        ClosedLoop: 中间形状中存在不与边界相连的闭环
    """
    if g.cod != h.dom:
        raise ShapeMismatch(f"Cannot compose: {print_shape(g.cod)} != {print_shape(h.dom)}")
    n_t = g.dom_size
    n_s = len(g.mates) - n_t
    n_u = len(h.mates) - n_s
    mates: List[Optional[int]] = [None] * (n_t + n_u)
    paths: Dict[Pair, List[PathEdge]] = {}
    visited = set()

    def edge(name: str, a: int, b: int) -> PathEdge:
        return name, (min(a, b), max(a, b))

    for start in range(n_t + n_u):
        if mates[start] is not None:
            continue
        path: List[PathEdge] = []
        in_g, pos = (True, start) if start < n_t else (False, n_s + start - n_t)
        while True:
            if in_g:
                m = g.mates[pos]
                path.append(edge("g", pos, m))
                if m < n_t:
                    end = m
                    break
                visited.add(m - n_t)
                in_g, pos = False, m - n_t
            else:
                m = h.mates[pos]
                path.append(edge("h", pos, m))
                if m >= n_s:
                    end = n_t + m - n_s
                    break
                visited.add(m)
                in_g, pos = True, n_t + m
        mates[start], mates[end] = end, start
        paths[(start, end)] = path
    if len(visited) != n_s:
        loop = sorted(set(range(n_s)) - visited)
        raise ClosedLoop(f"Composition closes a loop through middle variables {loop}")
    return Graph(g.dom, h.cod, tuple(mates)), paths  # type: ignore[arg-type]


def compose(g: Graph, h: Graph) -> Graph:
    """先 g 后 h 的复合"""
    return compose_traced(g, h)[0]


def tensor_embeddings(graphs: Sequence[Graph]) -> List[List[int]]:
    """每个因子的扭和下标在张量扭和中的位置：先全部定义域块，再全部值域块"""
    dom_sizes = [g.dom_size for g in graphs]
    cod_offset = sum(dom_sizes)
    dom_offset = 0
    embeddings = []
    for g, d in zip(graphs, dom_sizes):
        c = len(g.mates) - d
        embeddings.append(list(range(dom_offset, dom_offset + d)) + list(range(cod_offset, cod_offset + c)))
        dom_offset += d
        cod_offset += c
    return embeddings


def _tensor_mates(graphs: Sequence[Graph]) -> Tuple[int, ...]:
    embeddings = tensor_embeddings(graphs)
    mates = [0] * sum(len(g.mates) for g in graphs)
    for g, embed in zip(graphs, embeddings):
        for i, m in enumerate(g.mates):
            mates[embed[i]] = embed[m]
    return tuple(mates)


def tensor(g: Graph, h: Graph) -> Graph:
    """Tensor(dom_g, dom_h) → Tensor(cod_g, cod_h) 上配对的不交并"""
    return Graph(Tensor(g.dom, h.dom), Tensor(g.cod, h.cod), _tensor_mates([g, h]))


def tensor_all(graphs: Sequence[Graph]) -> Graph:
    """n 元张量，形状按 tensor_of 规范化；空列表给出 I → I"""
    return Graph(
        tensor_of([g.dom for g in graphs]),
        tensor_of([g.cod for g in graphs]),
        _tensor_mates(list(graphs)),
    )


def uncurry(g: Graph) -> Graph:
    """
    I → [A, B] 重新寻址为 A → B，配对下标不变

    Raises:
        ShapeMismatch: 定义域不是 I 或值域不是 hom
    """
    if not isinstance(g.dom, Unit) or not isinstance(g.cod, Hom):
        raise ShapeMismatch(f"Cannot uncurry a graph {print_shape(g.dom)} -> {print_shape(g.cod)}")
    return Graph(g.cod.dom, g.cod.cod, g.mates)


def curry(g: Graph) -> Graph:
    """uncurry 的逆"""
    return Graph(UNIT, Hom(g.dom, g.cod), g.mates)
