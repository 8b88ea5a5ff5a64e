"""
开胞形阶梯模块
归纳构造 Ope_k：框架函子、条件 A / 条件 B 校验、开胞形态射与 hom 集、有界枚举与嫁接
"""
import threading
import time
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, Hashable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from adapters.opetope import OpetopeCategory
from infrastructure.logging import logger

from .errors import (
    ArityMismatch,
    ClosedLoop,
    CompositeMismatch,
    FrameMismatch,
    NotTreeShaped,
    TypeMismatch,
    UndefinedLabel,
    ValidationError,
    WrongShapeFamily,
)
from .graphs import (
    ROOT,
    Graph,
    Slot,
    TreeFrameShape,
    TreeWiring,
    curry,
    enumerate_allowable,
    graph_of,
    is_tree_allowable,
    uncurry,
    wiring_of,
)
from .labelled import (
    LabelledGraph,
    LabelledShape,
    ShapeFunctor,
    apply_KF,
    assemble,
    compose_labelled,
    label_graph,
    label_shape,
    oriented,
    tensor_labelled,
    uncurry_labelled,
)
from .shapes import Hom, Unit, frame_shape, tensor_of


@dataclass(frozen=True, eq=False)
class Opetope:
    """
    k 维开胞形

    k = 0 为唯一的点，k = 1 为唯一的箭头；k ≥ 2 时 theta 是 I → [φα_1 ⊗ ... ⊗ φα_m, φα]
    上的带标签图，叶子标签为 k-2 维开胞形，边标签为 Ope_{k-2} 中的态射
    """

    dim: int
    inputs: Tuple["Opetope", ...] = ()
    output: Optional["Opetope"] = None
    theta: Optional[LabelledGraph] = None
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.dim, self.inputs, self.output, self.theta)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Opetope) or self._hash != other._hash:
            return False
        return (self.dim, self.inputs, self.output, self.theta) == (
            other.dim, other.inputs, other.output, other.theta
        )

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def __repr__(self) -> str:
        return f"Opetope(dim={self.dim}, arity={self.arity})"


@dataclass(frozen=True, eq=False)
class OpetopeMorphism:
    """
    开胞形态射 f: θ → θ′

    θ 的输入为 α_1..α_m、输出为 α，θ′ 的输入为 β_1..β_m、输出为 β；
    components[i] 是 β_i → α_σ(i)，output 是 α → β
    """

    source: Opetope
    target: Opetope
    sigma: Tuple[int, ...]
    components: Tuple["OpetopeMorphism", ...]
    output: Optional["OpetopeMorphism"]
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
        if not isinstance(other, OpetopeMorphism) or self._hash != other._hash:
            return False
        return (self.source, self.target, self.sigma, self.components, self.output) == (
            other.source, other.target, other.sigma, other.components, other.output
        )

    @property
    def dim(self) -> int:
        return self.source.dim

    def __repr__(self) -> str:
        return f"OpetopeMorphism(dim={self.dim}, sigma={self.sigma})"


class Frame(NamedTuple):
    """框架 [α_1 ⊗ ... ⊗ α_m, α]"""

    inputs: Tuple[Opetope, ...]
    output: Opetope


POINT = Opetope(0)
ARROW = Opetope(1, (POINT,), POINT)


def point() -> Opetope:
    return POINT


def arrow() -> Opetope:
    return ARROW


class FrameFunctor(ShapeFunctor):
    """φ_k : Ope_k → A Ope_{k-1}"""

    def __init__(self, ladder: "OpetopeLadder", dim: int):
        self.ladder = ladder
        self.dim = dim

    @property
    def target(self) -> OpetopeCategory:
        return self.ladder.category(self.dim - 1)

    def on_object(self, obj: Hashable) -> LabelledShape:
        if not isinstance(obj, Opetope) or obj.dim != self.dim:
            raise UndefinedLabel(f"Frame functor of dimension {self.dim} is not defined on {obj!r}")
        return self.ladder.frame_functor(obj)

    def on_morphism(self, morphism: Hashable) -> LabelledGraph:
        if not isinstance(morphism, OpetopeMorphism) or morphism.dim != self.dim:
            raise UndefinedLabel(f"Frame functor of dimension {self.dim} is not defined on {morphism!r}")
        return self.ladder.frame_functor_on_morphism(morphism)


WiringLike = Union[TreeWiring, Graph]


class OpetopeLadder:
    """开胞形阶梯：持有各层的范畴、框架函子以及 hom 集与枚举结果的缓存"""

    def __init__(self):
        # 递归查询会重入
        self._lock = threading.RLock()
        self._categories: Dict[int, OpetopeCategory] = {}
        self._functors: Dict[int, FrameFunctor] = {}
        self._homs: Dict[Tuple[Opetope, Opetope], Tuple[OpetopeMorphism, ...]] = {}
        self._enumerations: Dict[Frame, Tuple[Opetope, ...]] = {}

    def category(self, dim: int) -> OpetopeCategory:
        with self._lock:
            if dim not in self._categories:
                self._categories[dim] = OpetopeCategory(self, dim)
            return self._categories[dim]

    def functor(self, dim: int) -> FrameFunctor:
        if dim < 1:
            raise UndefinedLabel("The frame functor starts at dimension 1")
        with self._lock:
            if dim not in self._functors:
                self._functors[dim] = FrameFunctor(self, dim)
            return self._functors[dim]

    # ---------- 框架函子 ----------

    def frame_functor(self, theta: Opetope) -> LabelledShape:
        """
        φ_k 在对象上的作用

        Args:
            theta: 维数至少为 1 的开胞形

        Returns:
            LabelledShape: 叶子依次标为 α_1..α_m, α 的 X_m
        """
        if theta.dim < 1:
            raise UndefinedLabel("The point has no frame")
        return label_shape(frame_shape(theta.arity), theta.inputs + (theta.output,))

    def frame_functor_on_morphism(self, f: OpetopeMorphism) -> LabelledGraph:
        """
        φ_k 在态射上的作用：X_m → X_m 上的置换图

        β_i 与 α_σ(i) 相连并标 g_i，α 与 β 相连并标 g
        """
        if f.dim < 1:
            raise UndefinedLabel("The point has no frame")
        m = f.source.arity
        mates = [0] * (2 * m + 2)
        labels = {}
        for i, s in enumerate(f.sigma):
            mates[s], mates[m + 1 + i] = m + 1 + i, s
            labels[(s, m + 1 + i)] = f.components[i]
        mates[m], mates[2 * m + 1] = 2 * m + 1, m
        labels[(m, 2 * m + 1)] = f.output
        x_m = frame_shape(m)
        leaf_labels = f.source.inputs + (f.source.output,) + f.target.inputs + (f.target.output,)
        return assemble(Graph(x_m, x_m, tuple(mates)), leaf_labels, labels)

    # ---------- 态射代数 ----------

    def identity_morphism(self, theta: Opetope) -> OpetopeMorphism:
        if theta.dim == 0:
            return OpetopeMorphism(theta, theta, (), (), None)
        return OpetopeMorphism(
            theta,
            theta,
            tuple(range(theta.arity)),
            tuple(self.identity_morphism(a) for a in theta.inputs),
            self.identity_morphism(theta.output),
        )

    def compose_morphisms(self, h: OpetopeMorphism, f: OpetopeMorphism) -> OpetopeMorphism:
        """
        h ∘ f：置换为 σ_f ∘ τ_h，分量为 f_{τ(i)} ∘ h_i，输出为 h_out ∘ f_out

        Raises:
            ValueError: f 的目标不是 h 的源
        """
        if f.target != h.source:
            raise ValueError(f"Cannot compose {h!r} after {f!r}: endpoints differ")
        if f.dim == 0:
            return self.identity_morphism(f.source)
        sigma = tuple(f.sigma[t] for t in h.sigma)
        components = tuple(
            self.compose_morphisms(f.components[t], h_i) for t, h_i in zip(h.sigma, h.components)
        )
        return OpetopeMorphism(
            f.source, h.target, sigma, components, self.compose_morphisms(h.output, f.output)
        )

    # ---------- 条件 A / 条件 B ----------

    def condition_b_composite(self, inputs: Sequence[Opetope], theta: LabelledGraph) -> LabelledGraph:
        """
        按配置复合输入：Aφ_{k-2}θ̄ ∘ (α_1 ⊗ ... ⊗ α_m)，结果以柯里化形式给出

        Raises:
            ClosedLoop: 复合出现闭环
        """
        k = inputs[0].dim + 1 if inputs else theta.leaf_labels[-1].dim + 2
        expanded = apply_KF(self.functor(k - 2), uncurry_labelled(theta))
        return compose_labelled(
            tensor_labelled([a.theta for a in inputs]), expanded, self.category(k - 3)
        )

    def make_opetope(self, inputs: Sequence[Opetope], output: Opetope, theta: LabelledGraph) -> Opetope:
        """
        校验并构造 k 维开胞形（k ≥ 2）

        Args:
            inputs: k-1 维输入开胞形
            output: k-1 维输出开胞形
            theta: 配置图

        Returns:
            Opetope: 校验通过的开胞形

        Raises:
            FrameMismatch: 维数或配置图的类型与框架不一致
            NotTreeShaped: 配置图不是一棵树
            CompositeMismatch: 按配置复合的结果不等于输出
            TypeMismatch: 边标签端点与叶子标签不一致
        """
        inputs = tuple(inputs)
        k = output.dim + 1
        if k < 2:
            raise FrameMismatch("Points and arrows are built by point() and arrow()")
        if any(a.dim != k - 1 for a in inputs):
            raise FrameMismatch(f"All inputs of a {k}-opetope must have dimension {k - 1}")
        phi = self.functor(k - 1)
        frames = [phi.on_object(a) for a in inputs]
        out_frame = phi.on_object(output)
        graph = theta.graph
        input_labels = tuple(obj for fr in frames for obj in fr.labels)
        if (
            not isinstance(graph.dom, Unit)
            or not isinstance(graph.cod, Hom)
            or graph.cod.dom != tensor_of([fr.shape for fr in frames])
            or theta.leaf_labels[: len(input_labels)] != input_labels
        ):
            raise FrameMismatch("Configuration graph does not start from the frames of the inputs")
        output_part = LabelledShape(graph.cod.cod, theta.leaf_labels[len(input_labels):])
        if k == 2 and output_part != out_frame:
            raise FrameMismatch("Configuration graph does not end at the frame of the output")
        try:
            tree = is_tree_allowable(uncurry(graph))
        except WrongShapeFamily:
            tree = False
        if not tree:
            raise NotTreeShaped("Configuration graph is not a tree")
        label_graph(graph, theta.leaf_labels, theta.edge_labels, self.category(k - 2))
        if k >= 3:
            composite = self.condition_b_composite(inputs, theta)
            if composite != output.theta or output_part != out_frame:
                raise CompositeMismatch("Composing the inputs along the configuration does not give the output")
        return Opetope(k, inputs, output, theta)

    # ---------- hom 集 ----------

    def frame_morphisms(self, a: Opetope, b: Opetope) -> List[OpetopeMorphism]:
        """不加交换条件的全部 (σ, g_i, g)"""
        if a.dim != b.dim or a.arity != b.arity:
            return []
        if a.dim <= 1:
            return [self.identity_morphism(a)] if a == b else []
        results = []
        out_choices = self.hom(a.output, b.output)
        for sigma in permutations(range(a.arity)):
            comp_choices = [self.hom(b.inputs[i], a.inputs[s]) for i, s in enumerate(sigma)]
            for components in product(*comp_choices):
                for g in out_choices:
                    results.append(OpetopeMorphism(a, b, sigma, tuple(components), g))
        return results

    def commutes(self, f: OpetopeMorphism) -> bool:
        """Aφ_{k-1}(f) ∘ θ = θ′"""
        k = f.dim
        image = apply_KF(self.functor(k - 1), self.frame_functor_on_morphism(f))
        try:
            composite = compose_labelled(f.source.theta, image, self.category(k - 2))
        except (ClosedLoop, TypeMismatch):
            return False
        return composite == f.target.theta

    def hom(self, a: Opetope, b: Opetope) -> Tuple[OpetopeMorphism, ...]:
        """
        Ope_k(a, b)

        Returns:
            Tuple[OpetopeMorphism, ...]: 每个态射都通过图复合验证了交换三角形
        """
        if a.dim != b.dim:
            return ()
        key = (a, b)
        with self._lock:
            if key in self._homs:
                return self._homs[key]
        if a.dim <= 1:
            result = tuple(self.frame_morphisms(a, b))
        else:
            result = tuple(f for f in self.frame_morphisms(a, b) if self.commutes(f))
        with self._lock:
            self._homs[key] = result
        return result

    # ---------- 枚举 ----------

    def _labellings(self, k: int, graph: Graph, leaf_labels: Tuple[Opetope, ...]) -> Iterator[LabelledGraph]:
        category = self.category(k - 2)
        pairs = graph.pairs()
        choices = []
        for pair in pairs:
            minus, plus = oriented(graph, pair)
            options = category.hom(leaf_labels[minus], leaf_labels[plus])
            if not options:
                return
            choices.append(options)
        for labels in product(*choices):
            yield LabelledGraph(graph, leaf_labels, tuple(labels))

    def enumerate_opetopes(self, k: int, frame: Optional[Frame] = None, max_leaves: Optional[int] = None) -> List[Opetope]:
        """
        枚举给定框架的全部 k 维开胞形

        Args:
            k: 维数
            frame: k-1 维开胞形构成的框架（k ≤ 1 时忽略）
            max_leaves: 配置树叶子数上限

        Returns:
            List[Opetope]: 顺序确定的全部开胞形

        Raises:
            BoundExceeded: 超出上限
            FrameMismatch: 框架维数不对
        """
        if k == 0:
            return [POINT]
        if k == 1:
            return [ARROW]
        if frame is None:
            raise FrameMismatch(f"A frame is required to enumerate {k}-opetopes")
        inputs, output = tuple(frame.inputs), frame.output
        if output.dim != k - 1 or any(a.dim != k - 1 for a in inputs):
            raise FrameMismatch(f"Frame of a {k}-opetope must consist of {k - 1}-opetopes")
        frame = Frame(inputs, output)
        shape = TreeFrameShape(tuple(a.arity for a in inputs), output.arity)
        graphs = enumerate_allowable(shape, max_leaves)
        with self._lock:
            if frame in self._enumerations:
                return list(self._enumerations[frame])
        started = time.time()
        logger.log_enumeration_start(dim=k, node_arities=list(shape.node_arities), out_arity=shape.out_arity)
        phi = self.functor(k - 1)
        leaf_labels = tuple(obj for a in inputs for obj in phi.on_object(a).labels) + phi.on_object(output).labels
        results = []
        for graph in graphs:
            for theta in self._labellings(k, curry(graph), leaf_labels):
                try:
                    results.append(self.make_opetope(inputs, output, theta))
                except (ValidationError, ClosedLoop):
                    continue
        logger.log_enumeration_complete(dim=k, count=len(results), duration=time.time() - started)
        with self._lock:
            self._enumerations[frame] = tuple(results)
        return results

    def enumerate_grafts(self, inputs: Sequence[Opetope], max_leaves: Optional[int] = None) -> List[Opetope]:
        """按全部树形连线嫁接给定输入（边取规范标签），输出由复合导出"""
        inputs = tuple(inputs)
        if not inputs:
            raise ArityMismatch("Grafting needs at least one input")
        shape = TreeFrameShape(tuple(a.arity for a in inputs), sum(a.arity for a in inputs) - len(inputs) + 1)
        return [self.graft(inputs, g) for g in enumerate_allowable(shape, max_leaves)]

    # ---------- 嫁接 ----------

    def graft(self, inputs: Sequence[Opetope], wiring: WiringLike, unit_label: Optional[Opetope] = None) -> Opetope:
        """
        按树形连线嫁接输入开胞形

        Args:
            inputs: k-1 维输入
            wiring: 连线描述或去柯里化的树形图
            unit_label: 没有输入时唯一一条线上的 k-2 维标签

        Returns:
            Opetope: 配置图为该连线的开胞形，输出由条件 B 的复合导出

        Raises:
            ArityMismatch: 连线的节点元数与输入不符
            TypeMismatch: 某条边的两端之间没有态射
        """
        inputs = tuple(inputs)
        if isinstance(wiring, Graph):
            wiring = wiring_of(wiring)
        if wiring.shape.node_arities != tuple(a.arity for a in inputs):
            raise ArityMismatch("Wiring does not fit the arities of the inputs")
        if not inputs and unit_label is None:
            raise ArityMismatch("Grafting no inputs needs the label of the unit wire")
        k = inputs[0].dim + 1 if inputs else unit_label.dim + 2

        def slot_label(slot: Slot) -> Opetope:
            return unit_label if slot.is_root else inputs[slot.node].inputs[slot.position]

        boundary = tuple(slot_label(s) for s in wiring.leaf_targets)
        root_nodes = [i for i, s in enumerate(wiring.node_targets) if s == ROOT]
        root_label = inputs[root_nodes[0]].output if root_nodes else unit_label
        graph = curry(graph_of(wiring))
        leaf_labels = tuple(obj for a in inputs for obj in a.inputs + (a.output,)) + boundary + (root_label,)
        category = self.category(k - 2)
        labels = []
        for pair in graph.pairs():
            minus, plus = oriented(graph, pair)
            source, target = leaf_labels[minus], leaf_labels[plus]
            if source == target:
                labels.append(category.identity(source))
                continue
            options = category.hom(source, target)
            if not options:
                raise TypeMismatch(f"No morphism for the wire {pair}")
            labels.append(options[0])
        theta = LabelledGraph(graph, leaf_labels, tuple(labels))
        if k == 2:
            output = ARROW
        else:
            output = self.make_opetope(boundary, root_label, self.condition_b_composite(inputs, theta))
        return self.make_opetope(inputs, output, theta)

    def corolla(self, n: int) -> Opetope:
        """第一个 n 元 2 维开胞形"""
        return self.enumerate_opetopes(2, Frame((ARROW,) * n, ARROW))[0]

    def chain_opetope(self, order: Sequence[int]) -> Opetope:
        """
        输入箭头按 order 依次复合的 2 维开胞形

        order[0] 接收唯一的叶子，order[j] 的输出接 order[j+1]，最后一个接到根
        """
        m = len(order)
        if sorted(order) != list(range(m)):
            raise ArityMismatch(f"{list(order)} is not an ordering of {m} arrows")
        node_targets: List[Slot] = [ROOT] * m
        for j in range(m - 1):
            node_targets[order[j]] = Slot(order[j + 1], 0)
        leaf_targets = (Slot(order[0], 0),) if m else (ROOT,)
        wiring = TreeWiring(TreeFrameShape((1,) * m, 1), tuple(node_targets), leaf_targets)
        return self.graft((ARROW,) * m, wiring, unit_label=POINT)


# 全局阶梯实例
ladder = OpetopeLadder()

frame_functor = ladder.frame_functor
frame_functor_on_morphism = ladder.frame_functor_on_morphism
identity_morphism = ladder.identity_morphism
compose_morphisms = ladder.compose_morphisms
make_opetope = ladder.make_opetope
enumerate_opetopes = ladder.enumerate_opetopes
enumerate_grafts = ladder.enumerate_grafts
hom = ladder.hom
frame_morphisms = ladder.frame_morphisms
graft = ladder.graft
corolla = ladder.corolla
chain_opetope = ladder.chain_opetope
