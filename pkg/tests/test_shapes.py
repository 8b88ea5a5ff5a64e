import pytest

from core.errors import ShapeSyntaxError
from core.shapes import (
    GEN,
    UNIT,
    Hom,
    Side,
    Step,
    Tensor,
    Variance,
    follow,
    frame_arity,
    frame_shape,
    parse_shape,
    path_text,
    print_shape,
    substitute,
    tensor_factors,
    tensor_of,
    twisted_variables,
    variables,
    variance_balance,
)


def test_parse_frame_shape():
    assert parse_shape("[(1*1),1]") == frame_shape(2)
    assert parse_shape(" [ 1 * 1 , 1 ] ") == frame_shape(2)


def test_print_is_fully_bracketed():
    assert print_shape(frame_shape(0)) == "[I,1]"
    assert print_shape(frame_shape(3)) == "[((1*1)*1),1]"


def test_parse_print_agree():
    for text in ["1", "I", "[1,1]", "[[1,1],(1*I)]", "((1*1)*[I,1])"]:
        assert print_shape(parse_shape(text)) == text


def test_tensor_is_left_associative():
    assert parse_shape("1*1*1") == Tensor(Tensor(GEN, GEN), GEN)


@pytest.mark.parametrize(
    "text,position",
    [("[1,", 3), ("(1*1", 4), ("1 x", 2), ("", 0), ("[1 1]", 3)],
)
def test_syntax_error_position(text, position):
    with pytest.raises(ShapeSyntaxError) as info:
        parse_shape(text)
    assert info.value.position == position


def test_variances_of_frame():
    assert [v.variance for v in variables(frame_shape(2))] == [Variance.MINUS, Variance.MINUS, Variance.PLUS]
    assert variance_balance(frame_shape(3)) == -2
    assert variance_balance(frame_shape(0)) == 1


def test_nested_hom_flips_twice():
    shape = parse_shape("[[1,1],1]")
    assert [v.variance for v in variables(shape)] == [Variance.PLUS, Variance.MINUS, Variance.PLUS]


def test_twisted_sum_flips_domain():
    twisted = twisted_variables(GEN, frame_shape(1))
    assert [t.side for t in twisted] == [Side.DOM, Side.COD, Side.COD]
    assert [t.variance for t in twisted] == [Variance.MINUS, Variance.MINUS, Variance.PLUS]


def test_tensor_of_drops_units():
    assert tensor_of([]) == UNIT
    assert tensor_of([UNIT, GEN, UNIT]) == GEN
    assert tensor_of([GEN, GEN, GEN]) == Tensor(Tensor(GEN, GEN), GEN)
    assert tensor_factors(Tensor(GEN, Tensor(UNIT, GEN))) == [GEN, GEN]


def test_frame_arity():
    assert frame_arity(frame_shape(0)) == 0
    assert frame_arity(parse_shape("[(1*(1*1)),1]")) == 3
    with pytest.raises(ValueError):
        frame_arity(GEN)
    with pytest.raises(ValueError):
        frame_arity(parse_shape("[[1,1],1]"))


def test_follow_and_path_text():
    assert follow(frame_shape(2), (Step.HOM_DOM, Step.TENSOR_RIGHT)) == GEN
    assert path_text(()) == "."
    assert path_text((Step.HOM_DOM, Step.TENSOR_LEFT)) == "DL"
    with pytest.raises(ValueError):
        follow(GEN, (Step.HOM_COD,))


def test_substitute():
    assert substitute(frame_shape(1), [frame_shape(0), GEN]) == Hom(frame_shape(0), GEN)
    with pytest.raises(ValueError):
        substitute(frame_shape(1), [GEN])
    with pytest.raises(ValueError):
        substitute(GEN, [GEN, GEN])


def test_variances_of_mixed_term():
    shape = parse_shape("[([1,1]*1*1),I]*1")
    assert "".join(v.variance.value for v in variables(shape)) == "+---+"


def test_twisted_sum_with_unit_domain():
    twisted = twisted_variables(UNIT, frame_shape(1))
    assert [(t.side.value, t.variance.value) for t in twisted] == [("cod", "-"), ("cod", "+")]


def test_twisted_sum_of_arrow_frame():
    twisted = twisted_variables(frame_shape(1), frame_shape(1))
    assert [t.variance.value for t in twisted] == ["+", "-", "-", "+"]
    assert [t.side for t in twisted] == [Side.DOM, Side.DOM, Side.COD, Side.COD]
