"""
阶梯与切片塔的对应
把开胞形翻译成切片多范畴中的对象，并逐个框架比较两边枚举出的集合
"""
import threading
from functools import lru_cache
from itertools import product
from typing import Dict, Hashable, List, Optional, Sequence, Set

from pydantic import BaseModel

from core.errors import BoundExceeded, MismatchFound
from core.graphs import ROOT, Slot, TreeFrameShape, TreeWiring, wiring_of
from core.labelled import uncurry_labelled
from core.ladder import ARROW, POINT, Frame, Opetope, OpetopeMorphism, ladder
from infrastructure.config import config
from infrastructure.logging import logger

from .base import EltMorphism, SymMulticat
from .slice import MultiArrowTree, SliceMulticat, Wire
from .terminal import ID_STAR, IDENTITY, STAR, terminal_multicat

MAX_CHECK_DIM = 4


class FrameResult(BaseModel):
    frame: str
    oracle_count: int
    ladder_count: int
    match: bool


class CorrespondenceReport(BaseModel):
    dim: int
    frames: List[FrameResult]
    status: str


class SliceTower:
    """Q, Q⁺, Q⁺⁺, ...，从终多范畴开始按需构造"""

    def __init__(self):
        self._lock = threading.Lock()
        self._levels: List[SymMulticat] = [terminal_multicat()]

    def level(self, n: int) -> SymMulticat:
        with self._lock:
            while len(self._levels) <= n:
                self._levels.append(SliceMulticat(self._levels[-1]))
            return self._levels[n]


tower = SliceTower()


# ---------- 翻译 ----------


@lru_cache(maxsize=None)
def to_oracle(theta: Opetope) -> Hashable:
    """
    k 维开胞形 → Q^{k+} 的对象

    点是 *，箭头是终多范畴的单位箭头；k ≥ 2 时是以输入为节点标签、
    以配置图的树形连线为形状、以边标签为线上同构的树
    """
    if theta.dim == 0:
        return STAR
    if theta.dim == 1:
        return IDENTITY
    graph = uncurry_labelled(theta.theta)
    wiring = wiring_of(graph.graph)
    shape = wiring.shape
    inputs: List[List[Optional[Wire]]] = [[None] * m for m in shape.node_arities]
    root: Optional[Wire] = None

    def attach(kind: str, index: int, lower: int, slot: Slot):
        nonlocal root
        upper = shape.boundary_output_index() if slot.is_root else shape.node_input_index(*slot)
        wire = Wire(kind, index, to_oracle_morphism(graph.label((lower, upper))))
        if slot.is_root:
            root = wire
        else:
            inputs[slot.node][slot.position] = wire

    for j, slot in enumerate(wiring.node_targets):
        attach("node", j, shape.node_output_index(j), slot)
    for leaf, slot in enumerate(wiring.leaf_targets):
        attach("leaf", leaf, shape.boundary_input_index(leaf), slot)
    return MultiArrowTree(
        tuple(to_oracle(a) for a in theta.inputs),
        tuple(tuple(slots) for slots in inputs),
        root,
        tuple(to_oracle(b) for b in theta.output.inputs),
        to_oracle(theta.output.output),
    )


@lru_cache(maxsize=None)
def to_oracle_morphism(f: OpetopeMorphism) -> Hashable:
    if f.dim == 0:
        return ID_STAR
    return EltMorphism(
        to_oracle(f.source),
        to_oracle(f.target),
        f.sigma,
        tuple(to_oracle_morphism(c) for c in f.components),
        to_oracle_morphism(f.output),
    )


# ---------- 示例 ----------


def chain_order(alpha: Opetope) -> List[int]:
    """2 维开胞形的输入箭头从叶子到根的复合顺序"""
    wiring = wiring_of(uncurry_labelled(alpha.theta).graph)
    order, slot = [], wiring.leaf_targets[0]
    while not slot.is_root:
        order.append(slot.node)
        slot = wiring.node_targets[slot.node]
    return order


def three_dim_example() -> Opetope:
    """3 元与 2 元冠状输入，第二个输入的输出接到第一个输入的第一个位置"""
    wiring = TreeWiring(
        TreeFrameShape((3, 2), 4),
        (ROOT, Slot(0, 0)),
        (Slot(1, 0), Slot(1, 1), Slot(0, 1), Slot(0, 2)),
    )
    return ladder.graft((ladder.corolla(3), ladder.corolla(2)), wiring)


def four_dim_example() -> Opetope:
    """
    θ_1: [U_3 ⊗ U_2, U_4]，θ_2: [U_2 ⊗ U_2, U_3]，θ_2 的输出接到 θ_1 的第一个输入

    输出框架为 [U_2 ⊗ U_2 ⊗ U_2, U_4]；θ_2 的输出与 U_3 之间的线带置换标签
    """
    theta_1 = ladder.enumerate_grafts((ladder.corolla(3), ladder.corolla(2)))[0]
    theta_2 = ladder.enumerate_grafts((ladder.corolla(2), ladder.corolla(2)))[0]
    wiring = TreeWiring(
        TreeFrameShape((2, 2), 3),
        (ROOT, Slot(0, 0)),
        (Slot(1, 0), Slot(1, 1), Slot(0, 1)),
    )
    return ladder.graft((theta_1, theta_2), wiring)


# ---------- 对应检查 ----------


def _spec(arities: Sequence[int], out_arity: int) -> str:
    return f"({','.join(str(m) for m in arities)})->{out_arity}"


def _record(frames: List[FrameResult], text: str, oracle: Set[Hashable], ladder_side: Set[Hashable]):
    result = FrameResult(
        frame=text,
        oracle_count=len(oracle),
        ladder_count=len(ladder_side),
        match=oracle == ladder_side,
    )
    logger.log_crosscheck_frame(result.frame, result.oracle_count, result.ladder_count, result.match)
    frames.append(result)


def _check_frame(frames: List[FrameResult], k: int, frame: Frame, max_leaves: Optional[int]):
    oracle = tower.level(k - 1).arrows(
        tuple(to_oracle(a) for a in frame.inputs), to_oracle(frame.output)
    )
    found = ladder.enumerate_opetopes(k, frame, max_leaves=max_leaves)
    text = _spec([a.arity for a in frame.inputs], frame.output.arity)
    _record(frames, text, set(oracle), {to_oracle(theta) for theta in found})


def _input_lists(max_leaves: int, max_inputs: int) -> List[tuple]:
    lists = []
    for j in range(1, max_inputs + 1):
        for arities in product(range(max_leaves + 1), repeat=j):
            if sum(arities) <= max_leaves and sum(arities) - j + 1 >= 0:
                lists.append(arities)
    return lists


def _check_corolla_inputs(frames: List[FrameResult], arities: Sequence[int], max_leaves: int):
    inputs = tuple(ladder.corolla(m) for m in arities)
    n = sum(arities) - len(arities) + 1
    ladder_groups: Dict[Hashable, Set[Hashable]] = {}
    outputs: Dict[Hashable, Opetope] = {}
    for theta in ladder.enumerate_grafts(inputs, max_leaves):
        key = to_oracle(theta.output)
        outputs[key] = theta.output
        ladder_groups.setdefault(key, set()).add(to_oracle(theta))
    oracle_groups = tower.level(2).arrows_by_target(
        tuple(to_oracle(a) for a in inputs), (IDENTITY,) * n, IDENTITY
    )
    for key in sorted(set(ladder_groups) | set(oracle_groups), key=lambda x: _group_order(x, outputs)):
        label = _spec(arities, n)
        if key in outputs:
            label += " output=" + "-".join(str(i + 1) for i in chain_order(outputs[key]))
        else:
            label += " output=unmatched"
        _record(frames, label, set(oracle_groups.get(key, [])), ladder_groups.get(key, set()))


def _group_order(key: Hashable, outputs: Dict[Hashable, Opetope]):
    if key in outputs:
        return (0, chain_order(outputs[key]))
    return (1, [])


def check_correspondence(
    k: int,
    max_leaves: Optional[int] = None,
    max_inputs: Optional[int] = None,
    frames: Optional[Sequence[Frame]] = None,
    strict: bool = False,
) -> CorrespondenceReport:
    """
    比较 Ope_k 与 Q^{k+} 的对象

    Args:
        k: 维数，至多为 4
        max_leaves: 叶子总数上限，缺省取 crosscheck 配置
        max_inputs: 3 维时输入个数上限
        frames: 显式给出的框架；4 维缺省使用示例框架
        strict: 为真时第一个不一致的框架抛出 MismatchFound

    Returns:
        CorrespondenceReport: 每个框架两边的个数与集合是否一致

    Raises:
        BoundExceeded: k 超出可检查范围
        MismatchFound: strict 模式下出现不一致
    """
    bounds = config.crosscheck_bounds
    max_leaves = bounds["max_leaves"] if max_leaves is None else max_leaves
    max_inputs = bounds["max_inputs"] if max_inputs is None else max_inputs
    if k < 0 or k > MAX_CHECK_DIM:
        raise BoundExceeded(f"Correspondence is checked up to dimension {MAX_CHECK_DIM}, got {k}")
    results: List[FrameResult] = []
    if k == 0:
        _record(results, "point", {STAR}, {to_oracle(POINT)})
    elif k == 1:
        _record(results, "arrow", set(tower.level(0).arrows((STAR,), STAR)), {to_oracle(ARROW)})
    elif frames is not None:
        for frame in frames:
            _check_frame(results, k, frame, max_leaves)
    elif k == 2:
        for m in range(max_leaves + 1):
            _check_frame(results, 2, Frame((ARROW,) * m, ARROW), max_leaves)
    elif k == 3:
        for arities in _input_lists(max_leaves, max_inputs):
            _check_corolla_inputs(results, arities, max_leaves)
    else:
        example = four_dim_example()
        _check_frame(results, 4, Frame(example.inputs, example.output), max_leaves)
    status = "match" if all(r.match for r in results) else "mismatch"
    if strict and status != "match":
        witness = next(r for r in results if not r.match)
        raise MismatchFound(f"Frame {witness.frame} disagrees", witness=witness.model_dump())
    return CorrespondenceReport(dim=k, frames=results, status=status)
