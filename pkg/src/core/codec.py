"""
序列化模块
图、带标签图与开胞形的 JSON 编解码（pydantic 模型）、DOT 导出以及框架描述的解析
"""
import re
from typing import Any, Dict, Hashable, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError as ModelValidationError

from .errors import ArityMismatch, OpetopeError, ShapeSyntaxError, TypeMismatch
from .graphs import Graph, make_graph
from .labelled import LabelledGraph, oriented
from .ladder import ARROW, POINT, Opetope, OpetopeMorphism, ladder
from .shapes import path_text, print_shape, parse_shape


class MorphismModel(BaseModel):
    """开胞形态射；端点由所在位置的叶子标签决定"""

    sigma: List[int] = Field(default_factory=list)
    components: List["MorphismModel"] = Field(default_factory=list)
    output: Optional["MorphismModel"] = None


class EdgeLabelModel(BaseModel):
    pair: int = Field(ge=0)
    morphism: MorphismModel


class GraphModel(BaseModel):
    dom: str
    cod: str
    pairs: List[Tuple[int, int]]


class LabelledGraphModel(GraphModel):
    labels: List[EdgeLabelModel] = Field(default_factory=list)


class OpetopeModel(BaseModel):
    dim: int = Field(ge=0)
    inputs: List["OpetopeModel"] = Field(default_factory=list)
    output: Optional["OpetopeModel"] = None
    theta: Optional[LabelledGraphModel] = None


MorphismModel.model_rebuild()
OpetopeModel.model_rebuild()


class PayloadError(OpetopeError):
    """JSON 结构不合法"""


# ---------- 图 ----------


def graph_to_model(g: Graph) -> GraphModel:
    return GraphModel(dom=print_shape(g.dom), cod=print_shape(g.cod), pairs=list(g.pairs()))


def graph_to_json(g: Graph) -> Dict[str, Any]:
    return graph_to_model(g).model_dump()


def graph_from_json(data: Dict[str, Any]) -> Graph:
    """
    解析图的 JSON

    Raises:
        PayloadError: 结构不合法
        ShapeSyntaxError: 形状表达式错误
        VarianceClash / Incomplete: 配对不合法
    """
    model = _parse(GraphModel, data)
    return make_graph(parse_shape(model.dom), parse_shape(model.cod), model.pairs)


def _parse(model_cls, data: Any):
    try:
        return model_cls.model_validate(data)
    except ModelValidationError as e:
        raise PayloadError(f"Malformed {model_cls.__name__}: {e.errors()[0]['msg']}") from None


# ---------- 开胞形与态射 ----------


def morphism_to_model(f: OpetopeMorphism) -> MorphismModel:
    return MorphismModel(
        sigma=list(f.sigma),
        components=[morphism_to_model(c) for c in f.components],
        output=morphism_to_model(f.output) if f.output is not None else None,
    )


def morphism_from_model(model: MorphismModel, source: Opetope, target: Opetope) -> OpetopeMorphism:
    """
    在已知端点下还原态射

    Raises:
        ArityMismatch: 置换或分量个数与端点不符
    """
    if source.dim != target.dim:
        raise ArityMismatch("Morphism endpoints have different dimensions")
    if source.dim == 0:
        return ladder.identity_morphism(source)
    m = source.arity
    if target.arity != m or sorted(model.sigma) != list(range(m)) or len(model.components) != m:
        raise ArityMismatch(f"Morphism data does not fit {m}-ary endpoints")
    if model.output is None:
        raise ArityMismatch("Morphism is missing its output component")
    components = tuple(
        morphism_from_model(c, target.inputs[i], source.inputs[s])
        for i, (c, s) in enumerate(zip(model.components, model.sigma))
    )
    output = morphism_from_model(model.output, source.output, target.output)
    return OpetopeMorphism(source, target, tuple(model.sigma), components, output)


def morphism_to_json(f: OpetopeMorphism) -> Dict[str, Any]:
    return morphism_to_model(f).model_dump()


def opetope_to_model(theta: Opetope) -> OpetopeModel:
    if theta.dim <= 1:
        return OpetopeModel(dim=theta.dim)
    graph = theta.theta.graph
    return OpetopeModel(
        dim=theta.dim,
        inputs=[opetope_to_model(a) for a in theta.inputs],
        output=opetope_to_model(theta.output),
        theta=LabelledGraphModel(
            dom=print_shape(graph.dom),
            cod=print_shape(graph.cod),
            pairs=list(graph.pairs()),
            labels=[
                EdgeLabelModel(pair=i, morphism=morphism_to_model(label))
                for i, label in enumerate(theta.theta.edge_labels)
            ],
        ),
    )


def opetope_to_json(theta: Opetope) -> Dict[str, Any]:
    """
    递归 JSON：{dim, inputs, output, theta}；省略缺省字段，点和箭头只有 dim

    叶子标签由输入和输出的框架决定，不写入
    """
    return opetope_to_model(theta).model_dump(exclude_defaults=True)


def opetope_from_model(model: OpetopeModel) -> Opetope:
    if model.dim == 0:
        return POINT
    if model.dim == 1:
        return ARROW
    if model.output is None or model.theta is None:
        raise PayloadError(f"A {model.dim}-opetope needs an output and a configuration graph")
    inputs = tuple(opetope_from_model(a) for a in model.inputs)
    output = opetope_from_model(model.output)
    if output.dim != model.dim - 1 or any(a.dim != model.dim - 1 for a in inputs):
        raise PayloadError(f"Inputs and output of a {model.dim}-opetope must have dimension {model.dim - 1}")
    phi = ladder.functor(model.dim - 1)
    leaf_labels: Tuple[Hashable, ...] = tuple(
        obj for a in inputs + (output,) for obj in phi.on_object(a).labels
    )
    graph = make_graph(parse_shape(model.theta.dom), parse_shape(model.theta.cod), model.theta.pairs)
    if len(leaf_labels) != len(graph.mates):
        raise ArityMismatch("Configuration graph does not fit the frames of the inputs and output")
    pairs = graph.pairs()
    by_pair: Dict[int, MorphismModel] = {}
    for entry in model.theta.labels:
        if entry.pair >= len(pairs) or entry.pair in by_pair:
            raise PayloadError(f"Label entry for pair {entry.pair} is out of range or repeated")
        by_pair[entry.pair] = entry.morphism
    labels = []
    for index, pair in enumerate(pairs):
        minus, plus = oriented(graph, pair)
        source, target = leaf_labels[minus], leaf_labels[plus]
        if index in by_pair:
            labels.append(morphism_from_model(by_pair[index], source, target))
        elif source == target:
            labels.append(ladder.identity_morphism(source))
        else:
            raise TypeMismatch(f"Pair {pair} joins different labels and needs an explicit morphism")
    return ladder.make_opetope(inputs, output, LabelledGraph(graph, leaf_labels, tuple(labels)))


def opetope_from_json(data: Dict[str, Any]) -> Opetope:
    """
    解析并校验开胞形

    Raises:
        PayloadError: 结构不合法
        ValidationError 子类: 条件 A / 条件 B 不成立
    """
    return opetope_from_model(_parse(OpetopeModel, data))


# ---------- DOT ----------


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _morphism_text(label: Any) -> str:
    if isinstance(label, OpetopeMorphism):
        return "id" if label.sigma == tuple(range(len(label.sigma))) else "σ=" + "".join(str(s + 1) for s in label.sigma)
    return str(label)


def graph_to_dot(g: Graph, name: str = "G", labelled: Optional[LabelledGraph] = None) -> str:
    """
    DOT 文本：定义域叶子在上，值域叶子在下，配对为连线
    """
    lines = [f"graph {name} {{", "  rankdir=TB;", "  node [shape=circle, fontsize=10];"]
    n_dom = g.dom_size
    for side, rng in (("dom", range(n_dom)), ("cod", range(n_dom, len(g.mates)))):
        lines.append(f"  subgraph cluster_{side} {{")
        lines.append(f'    label="{side}: {_dot_escape(print_shape(g.dom if side == "dom" else g.cod))}";')
        lines.append("    rank=same;")
        for i in rng:
            var = g.twisted[i]
            lines.append(f'    v{i} [label="{var.variance.value}\\n{path_text(var.path)}"];')
        lines.append("  }")
    for index, (a, b) in enumerate(g.pairs()):
        attrs = ""
        if labelled is not None:
            attrs = f' [label="{_dot_escape(_morphism_text(labelled.edge_labels[index]))}"]'
        lines.append(f"  v{a} -- v{b}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def opetope_to_dot(theta: Opetope) -> str:
    """配置图（去柯里化形式之前）的 DOT，边上标注态射"""
    if theta.dim < 2:
        raise ArityMismatch("Points and arrows have no configuration graph")
    return graph_to_dot(theta.theta.graph, name=f"opetope{theta.dim}", labelled=theta.theta)


# ---------- 框架描述 ----------

_FRAME_SPEC = re.compile(r"^\s*\(\s*(\d+(?:\s*,\s*\d+)*)?\s*,?\s*\)\s*->\s*(\d+)\s*$")


def parse_frame_spec(text: str) -> Tuple[Tuple[int, ...], int]:
    """
    解析框架描述 "(3,2)->4"：输入元数列表与输出元数

    Raises:
        ShapeSyntaxError: 描述格式错误
    """
    match = _FRAME_SPEC.match(text)
    if not match:
        raise ShapeSyntaxError(f"Malformed frame spec {text!r}, expected e.g. '(3,2)->4'", 0)
    arities = tuple(int(x) for x in re.findall(r"\d+", match.group(1) or ""))
    return arities, int(match.group(2))
