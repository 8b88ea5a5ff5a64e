"""
形状项模块
提供形状项代数（生成元 1、单位 I、张量、内部 hom）、变量与方差、扭和，以及形状表达式的解析与打印
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, NamedTuple, Sequence, Tuple, Union

from .errors import ShapeSyntaxError


class Step(str, Enum):
    """从根走向叶子的一步"""

    TENSOR_LEFT = "L"
    TENSOR_RIGHT = "R"
    HOM_DOM = "D"
    HOM_COD = "C"


class Variance(str, Enum):
    """变量的方差"""

    PLUS = "+"
    MINUS = "-"

    def flip(self) -> "Variance":
        return Variance.MINUS if self is Variance.PLUS else Variance.PLUS


class Side(str, Enum):
    """扭和中变量所在的一侧"""

    DOM = "dom"
    COD = "cod"


@dataclass(frozen=True)
class Gen:
    """生成元 1"""

    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class Unit:
    """张量单位 I"""

    def __str__(self) -> str:
        return "I"


@dataclass(frozen=True)
class Tensor:
    left: "ShapeTerm"
    right: "ShapeTerm"

    def __str__(self) -> str:
        return f"({self.left}*{self.right})"


@dataclass(frozen=True)
class Hom:
    dom: "ShapeTerm"
    cod: "ShapeTerm"

    def __str__(self) -> str:
        return f"[{self.dom},{self.cod}]"


ShapeTerm = Union[Gen, Unit, Tensor, Hom]
VarPath = Tuple[Step, ...]

GEN = Gen()
UNIT = Unit()


class Variable(NamedTuple):
    path: VarPath
    variance: Variance


class TwistedVariable(NamedTuple):
    side: Side
    path: VarPath
    variance: Variance


def _walk(term: ShapeTerm, path: VarPath, minus: bool) -> Iterator[Variable]:
    if isinstance(term, Gen):
        yield Variable(path, Variance.MINUS if minus else Variance.PLUS)
    elif isinstance(term, Tensor):
        yield from _walk(term.left, path + (Step.TENSOR_LEFT,), minus)
        yield from _walk(term.right, path + (Step.TENSOR_RIGHT,), minus)
    elif isinstance(term, Hom):
        yield from _walk(term.dom, path + (Step.HOM_DOM,), not minus)
        yield from _walk(term.cod, path + (Step.HOM_COD,), minus)


def variables(term: ShapeTerm) -> List[Variable]:
    """
    列出形状的变量

    Args:
        term: 形状项

    Returns:
        List[Variable]: 按叶子从左到右排列的 (路径, 方差)，方差由 HomDom 步数的奇偶决定
    """
    return list(_walk(term, (), False))


def twisted_variables(dom: ShapeTerm, cod: ShapeTerm) -> List[TwistedVariable]:
    """
    计算扭和：先是方差翻转后的定义域变量，再是原样的值域变量
    """
    twisted = [TwistedVariable(Side.DOM, v.path, v.variance.flip()) for v in variables(dom)]
    twisted.extend(TwistedVariable(Side.COD, v.path, v.variance) for v in variables(cod))
    return twisted


def leaf_count(term: ShapeTerm) -> int:
    return len(variables(term))


def variance_balance(term: ShapeTerm) -> int:
    """正方差变量数减去负方差变量数"""
    return sum(1 if v.variance is Variance.PLUS else -1 for v in variables(term))


def follow(term: ShapeTerm, path: VarPath) -> ShapeTerm:
    """沿路径取子项"""
    for step in path:
        if step is Step.TENSOR_LEFT and isinstance(term, Tensor):
            term = term.left
        elif step is Step.TENSOR_RIGHT and isinstance(term, Tensor):
            term = term.right
        elif step is Step.HOM_DOM and isinstance(term, Hom):
            term = term.dom
        elif step is Step.HOM_COD and isinstance(term, Hom):
            term = term.cod
        else:
            raise ValueError(f"Path {path_text(path)} does not fit shape {print_shape(term)}")
    return term


def path_text(path: VarPath) -> str:
    return "".join(step.value for step in path) or "."


def tensor_of(factors: Sequence[ShapeTerm]) -> ShapeTerm:
    """
    n 元张量的规范二元形式：丢弃单位，左结合；空张量为 I
    """
    result: ShapeTerm = UNIT
    for factor in factors:
        if isinstance(factor, Unit):
            continue
        result = factor if isinstance(result, Unit) else Tensor(result, factor)
    return result


def tensor_factors(term: ShapeTerm) -> List[ShapeTerm]:
    """张量的扁平视图（展开结合律并去掉单位）"""
    if isinstance(term, Tensor):
        return tensor_factors(term.left) + tensor_factors(term.right)
    if isinstance(term, Unit):
        return []
    return [term]


def frame_shape(arity: int) -> Hom:
    """X_m = [1^{⊗m}, 1]，X_0 = [I, 1]"""
    return Hom(tensor_of([GEN] * arity), GEN)


def frame_arity(term: ShapeTerm) -> int:
    """
    若形状为 X_m 则返回 m

    Raises:
        ValueError: 形状不是 X_m
    """
    if isinstance(term, Hom) and isinstance(term.cod, Gen):
        inputs = tensor_factors(term.dom)
        if all(isinstance(f, Gen) for f in inputs):
            return len(inputs)
    raise ValueError(f"Shape {print_shape(term)} is not of the form X_m")


def substitute(term: ShapeTerm, replacements: Sequence[ShapeTerm]) -> ShapeTerm:
    """按叶子顺序把每个生成元替换成给定形状"""
    remaining = iter(replacements)

    def go(t: ShapeTerm) -> ShapeTerm:
        if isinstance(t, Gen):
            try:
                return next(remaining)
            except StopIteration:
                raise ValueError("Not enough replacements for shape leaves") from None
        if isinstance(t, Tensor):
            return Tensor(go(t.left), go(t.right))
        if isinstance(t, Hom):
            return Hom(go(t.dom), go(t.cod))
        return t

    result = go(term)
    if next(remaining, None) is not None:
        raise ValueError("Too many replacements for shape leaves")
    return result


def print_shape(term: ShapeTerm) -> str:
    """完全加括号的规范文本"""
    return str(term)


class _Parser:
    """一个符号前瞻的递归下降解析器"""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, char: str):
        if self._peek() != char:
            found = self._peek() or "end of input"
            raise ShapeSyntaxError(f"Expected '{char}', found {found!r}", self.pos)
        self.pos += 1

    def parse(self) -> ShapeTerm:
        term = self._expr()
        if self._peek():
            raise ShapeSyntaxError(f"Unexpected {self._peek()!r}", self.pos)
        return term

    def _expr(self) -> ShapeTerm:
        # 括号外的 "*" 按左结合读入
        term = self._atom()
        while self._peek() == "*":
            self.pos += 1
            term = Tensor(term, self._atom())
        return term

    def _atom(self) -> ShapeTerm:
        char = self._peek()
        if char == "1":
            self.pos += 1
            return GEN
        if char == "I":
            self.pos += 1
            return UNIT
        if char == "(":
            self.pos += 1
            term = self._expr()
            self._expect(")")
            return term
        if char == "[":
            self.pos += 1
            dom = self._expr()
            self._expect(",")
            cod = self._expr()
            self._expect("]")
            return Hom(dom, cod)
        raise ShapeSyntaxError(f"Unexpected {char or 'end of input'!r}", self.pos)


def parse_shape(text: str) -> ShapeTerm:
    """
    解析形状表达式

    Args:
        text: 形如 "[(1*1),1]" 的表达式，空白无关

    Returns:
        ShapeTerm: 唯一对应的形状项

    Raises:
        ShapeSyntaxError: 输入格式错误，附带出错位置
    """
    return _Parser(text).parse()
