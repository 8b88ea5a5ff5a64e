"""
切片多范畴
Q⁺ 的对象是 Q 的箭头，箭头是按节点替换复合的带标签树；全部通过穷举计算
"""
import threading
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, Hashable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from core.errors import ArityMismatch, TypeMismatch

from .base import EltCategory, EltMorphism, SymMulticat


class Wire(NamedTuple):
    """
    树中的一条线

    kind 为 "node" 时 index 是下方节点，为 "leaf" 时是边界叶子；
    iso 是对象范畴中从下方对象到上方位置对象的同构
    """

    kind: str
    index: int
    iso: Hashable


ParentSlot = Optional[Tuple[int, int]]


@dataclass(frozen=True, eq=False)
class MultiArrowTree:
    """
    带标签树 (T, ρ, τ)

    labels 按节点顺序 ρ 给出节点标签；inputs[i][p] 是接到节点 i 第 p 个输入的线，
    root 是接到根的线；叶子对象按叶子顺序给出
    """

    labels: Tuple[Hashable, ...]
    inputs: Tuple[Tuple[Wire, ...], ...]
    root: Wire
    leaf_objects: Tuple[Hashable, ...]
    root_object: Hashable
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash((self.labels, self.inputs, self.root, self.leaf_objects, self.root_object))
        )

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, MultiArrowTree) or self._hash != other._hash:
            return False
        return (self.labels, self.inputs, self.root, self.leaf_objects, self.root_object) == (
            other.labels, other.inputs, other.root, other.leaf_objects, other.root_object
        )

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def leaf_count(self) -> int:
        return len(self.leaf_objects)

    def wires(self) -> Iterator[Tuple[ParentSlot, Wire]]:
        """全部 (上方位置, 线)，根的位置为 None"""
        for i, slots in enumerate(self.inputs):
            for p, wire in enumerate(slots):
                yield (i, p), wire
        yield None, self.root

    def __repr__(self) -> str:
        return f"MultiArrowTree(nodes={self.node_count}, leaves={self.leaf_count})"


def _tree_shapes(arities: Sequence[int]) -> Iterator[Tuple[ParentSlot, ...]]:
    """
    每个节点的输出接到哪个位置（None 为根）

    恰有一个节点接到根，每个位置至多接一个节点，且沿父节点总能走到根
    """
    k = len(arities)
    slots = [(i, p) for i, m in enumerate(arities) for p in range(m)]
    parents: List[ParentSlot] = [None] * k
    used = set()

    def reaches_root(j: int) -> bool:
        steps = 0
        while parents[j] is not None:
            j = parents[j][0]
            steps += 1
            if steps > k:
                return False
        return True

    def place(j: int, root_taken: bool) -> Iterator[Tuple[ParentSlot, ...]]:
        if j == k:
            if root_taken and all(reaches_root(i) for i in range(k)):
                yield tuple(parents)
            return
        if not root_taken:
            parents[j] = None
            yield from place(j + 1, True)
        for slot in slots:
            if slot[0] != j and slot not in used:
                used.add(slot)
                parents[j] = slot
                yield from place(j + 1, root_taken)
                used.discard(slot)
        parents[j] = None

    if k == 0:
        yield ()
        return
    yield from place(0, False)


class SliceMulticat(SymMulticat):
    """
    切片 Q⁺

    对象范畴是 elt(Q)；箭头 (f_1..f_n; f) 是节点标签依次为 f_i、节点替换复合恰为 f 的树
    """

    def __init__(self, base: SymMulticat):
        self.base = base
        self._objects = EltCategory(base)
        self._lock = threading.RLock()
        self._composites: Dict[MultiArrowTree, Hashable] = {}

    @property
    def objects(self) -> EltCategory:
        return self._objects

    def sources(self, arrow: MultiArrowTree) -> Tuple[Hashable, ...]:
        return arrow.labels

    def target(self, arrow: MultiArrowTree) -> Hashable:
        return self.composite(arrow)

    # ---------- 复合 ----------

    def _transport(self, arrow: Hashable, iso: Hashable) -> Hashable:
        objects = self.base.objects
        if iso == objects.identity(objects.source(iso)):
            return arrow
        sources = self.base.sources(arrow)
        return self.base.reindex(
            arrow, tuple(range(len(sources))), tuple(objects.identity(x) for x in sources), iso
        )

    def _evaluate(self, tree: MultiArrowTree, wire: Wire) -> Tuple[Hashable, List[int]]:
        if wire.kind == "leaf":
            arrow = self.base.identity_arrow(tree.leaf_objects[wire.index])
            order = [wire.index]
        else:
            children = [self._evaluate(tree, w) for w in tree.inputs[wire.index]]
            arrow = self.base.compose(tree.labels[wire.index], [c for c, _ in children])
            order = [leaf for _, o in children for leaf in o]
        return self._transport(arrow, wire.iso), order

    def composite(self, tree: MultiArrowTree) -> Hashable:
        """
        沿树在 Q 中复合节点标签，源按叶子顺序重新排列

        Returns:
            Hashable: Q(叶子对象; 根对象) 中的箭头
        """
        with self._lock:
            if tree in self._composites:
                return self._composites[tree]
        arrow, order = self._evaluate(tree, tree.root)
        sigma = tuple(order.index(q) for q in range(len(order)))
        if sigma != tuple(range(len(order))):
            objects = self.base.objects
            sources = self.base.sources(arrow)
            arrow = self.base.reindex(
                arrow,
                sigma,
                tuple(objects.identity(sources[s]) for s in sigma),
                objects.identity(self.base.target(arrow)),
            )
        with self._lock:
            self._composites[tree] = arrow
        return arrow

    def identity_arrow(self, obj: Hashable) -> MultiArrowTree:
        """只有一个节点的树"""
        objects = self.base.objects
        sources = self.base.sources(obj)
        target = self.base.target(obj)
        return MultiArrowTree(
            (obj,),
            (tuple(Wire("leaf", p, objects.identity(x)) for p, x in enumerate(sources)),),
            Wire("node", 0, objects.identity(target)),
            tuple(sources),
            target,
        )

    def compose(self, f: MultiArrowTree, gs: Sequence[MultiArrowTree]) -> MultiArrowTree:
        self.check_composable(f, gs)
        return node_replace_compose(f, gs, self.base)

    # ---------- 对称作用 ----------

    def reindex(
        self,
        arrow: MultiArrowTree,
        sigma: Sequence[int],
        components: Sequence[EltMorphism],
        output: EltMorphism,
    ) -> MultiArrowTree:
        """
        新节点 i 是原节点 σ(i)，标签换成 components[i] 的源；
        原节点的第 q 个位置变为第 ρ_i(q) 个，线上的同构依次接上各分量
        """
        if len(sigma) != arrow.node_count or len(components) != arrow.node_count:
            raise ArityMismatch(f"Reindexing needs {arrow.node_count} components")
        objects = self.base.objects
        new_node = {old: new for new, old in enumerate(sigma)}
        new_leaf = {old: new for new, old in enumerate(output.sigma)}

        def lifted(wire: Wire) -> Wire:
            if wire.kind == "node":
                j = new_node[wire.index]
                return Wire("node", j, objects.compose(wire.iso, components[j].output))
            q = new_leaf[wire.index]
            return Wire("leaf", q, objects.compose(wire.iso, output.components[q]))

        inputs = []
        for i, c in enumerate(components):
            old = arrow.inputs[sigma[i]]
            slots: List[Optional[Wire]] = [None] * len(old)
            for q, wire in enumerate(old):
                w = lifted(wire)
                slots[c.sigma[q]] = Wire(w.kind, w.index, objects.compose(c.components[q], w.iso))
            inputs.append(tuple(slots))
        root = lifted(arrow.root)
        return MultiArrowTree(
            tuple(c.source for c in components),
            tuple(inputs),
            Wire(root.kind, root.index, objects.compose(output.output, root.iso)),
            tuple(self.base.sources(output.target)),
            self.base.target(output.target),
        )

    # ---------- 枚举 ----------

    def configurations(
        self,
        sources: Sequence[Hashable],
        leaf_objects: Sequence[Hashable],
        root_object: Hashable,
    ) -> Iterator[MultiArrowTree]:
        """
        节点标签依次为 sources 的全部带标签树（不要求复合结果）

        连线形状、叶子的排列和每条线上的同构都逐一枚举
        """
        base, objects = self.base, self.base.objects
        sources, leaf_objects = tuple(sources), tuple(leaf_objects)
        arities = [len(base.sources(f)) for f in sources]
        if sum(arities) - len(arities) + 1 != len(leaf_objects):
            return
        for parents in _tree_shapes(arities):
            taken = {slot: j for j, slot in enumerate(parents) if slot is not None}
            free = [(i, p) for i, m in enumerate(arities) for p in range(m) if (i, p) not in taken]
            root_node = parents.index(None) if sources else None
            for leaves in permutations(range(len(leaf_objects))):
                feeds = {slot: ("leaf", leaf) for slot, leaf in zip(free, leaves)}
                feeds.update({slot: ("node", j) for slot, j in taken.items()})
                positions: List[Tuple[ParentSlot, str, int]] = [
                    ((i, p),) + feeds[(i, p)] for i, m in enumerate(arities) for p in range(m)
                ]
                positions.append((None, "node", root_node) if sources else (None, "leaf", leaves[0]))
                choices = []
                for upper, kind, index in positions:
                    lower_obj = base.target(sources[index]) if kind == "node" else leaf_objects[index]
                    upper_obj = root_object if upper is None else base.sources(sources[upper[0]])[upper[1]]
                    choices.append(objects.hom(lower_obj, upper_obj))
                for isos in product(*choices):
                    wires = [Wire(kind, index, iso) for (_, kind, index), iso in zip(positions, isos)]
                    inputs, cursor = [], 0
                    for m in arities:
                        inputs.append(tuple(wires[cursor:cursor + m]))
                        cursor += m
                    yield MultiArrowTree(sources, tuple(inputs), wires[-1], leaf_objects, root_object)

    def arrows_by_target(
        self,
        sources: Sequence[Hashable],
        leaf_objects: Sequence[Hashable],
        root_object: Hashable,
    ) -> Dict[Hashable, List[MultiArrowTree]]:
        """按复合结果分组的全部带标签树"""
        groups: Dict[Hashable, List[MultiArrowTree]] = {}
        for tree in self.configurations(sources, leaf_objects, root_object):
            groups.setdefault(self.composite(tree), []).append(tree)
        return groups

    def arrows(self, sources: Sequence[Hashable], target: Hashable) -> List[MultiArrowTree]:
        return [
            tree
            for tree in self.configurations(sources, self.base.sources(target), self.base.target(target))
            if self.composite(tree) == target
        ]

    def check_tree(self, tree: MultiArrowTree) -> MultiArrowTree:
        """
        校验树的良构性

        Raises:
            ArityMismatch: 位置个数、叶子个数或线的使用次数不对
            TypeMismatch: 某条线上的同构与两端对象不符
        """
        base, objects = self.base, self.base.objects
        arities = [len(base.sources(f)) for f in tree.labels]
        if len(tree.inputs) != len(arities) or any(len(s) != m for s, m in zip(tree.inputs, arities)):
            raise ArityMismatch("Node inputs do not match the arities of the labels")
        if sum(arities) - len(arities) + 1 != tree.leaf_count:
            raise ArityMismatch(f"A tree with these nodes has {sum(arities) - len(arities) + 1} leaves")
        used = [w.index for _, w in tree.wires() if w.kind == "node"]
        leaves = [w.index for _, w in tree.wires() if w.kind == "leaf"]
        if sorted(used) != list(range(len(arities))) or sorted(leaves) != list(range(tree.leaf_count)):
            raise ArityMismatch("Every node and every leaf must feed exactly one position")
        parents = {w.index: upper for upper, w in tree.wires() if w.kind == "node"}
        for j in range(len(arities)):
            steps, cur = 0, j
            while parents[cur] is not None:
                cur, steps = parents[cur][0], steps + 1
                if steps > len(arities):
                    raise ArityMismatch("Tree contains a cycle")
        for upper, w in tree.wires():
            lower_obj = base.target(tree.labels[w.index]) if w.kind == "node" else tree.leaf_objects[w.index]
            upper_obj = tree.root_object if upper is None else base.sources(tree.labels[upper[0]])[upper[1]]
            if objects.source(w.iso) != lower_obj or objects.target(w.iso) != upper_obj:
                raise TypeMismatch(f"Wire into {upper} carries an isomorphism with the wrong endpoints")
        return tree

    def __repr__(self) -> str:
        return f"SliceMulticat({self.base!r})"


def node_replace_compose(
    outer: MultiArrowTree,
    inners: Sequence[MultiArrowTree],
    base: SymMulticat,
) -> MultiArrowTree:
    """
    把 inners[i] 代入 outer 的第 i 个节点

    新的节点顺序为外层顺序再按各内层顺序细分；穿过被替换节点的线上的同构依次复合

    Raises:
        ArityMismatch: inners 的个数与外层节点数不符
    """
    if len(inners) != outer.node_count:
        raise ArityMismatch(f"Expected {outer.node_count} trees to substitute, got {len(inners)}")
    objects = base.objects
    offsets, total = [], 0
    for inner in inners:
        offsets.append(total)
        total += inner.node_count

    def resolve_slot(i: int, q: int) -> Wire:
        wire = outer.inputs[i][q]
        if wire.kind == "leaf":
            return wire
        below = resolve_output(wire.index)
        return Wire(below.kind, below.index, objects.compose(wire.iso, below.iso))

    def resolve_output(i: int) -> Wire:
        root = inners[i].root
        if root.kind == "node":
            return Wire("node", offsets[i] + root.index, root.iso)
        below = resolve_slot(i, root.index)
        return Wire(below.kind, below.index, objects.compose(root.iso, below.iso))

    def relocate(i: int, wire: Wire) -> Wire:
        if wire.kind == "node":
            return Wire("node", offsets[i] + wire.index, wire.iso)
        below = resolve_slot(i, wire.index)
        return Wire(below.kind, below.index, objects.compose(wire.iso, below.iso))

    labels = tuple(label for inner in inners for label in inner.labels)
    inputs = tuple(
        tuple(relocate(i, w) for w in slots)
        for i, inner in enumerate(inners)
        for slots in inner.inputs
    )
    if outer.root.kind == "leaf":
        root = outer.root
    else:
        below = resolve_output(outer.root.index)
        root = Wire(below.kind, below.index, objects.compose(outer.root.iso, below.iso))
    return MultiArrowTree(labels, inputs, root, outer.leaf_objects, outer.root_object)


def slice_multicat(base: SymMulticat) -> SliceMulticat:
    return SliceMulticat(base)
