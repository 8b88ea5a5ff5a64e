import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.errors import ClosedLoop
from core.graphs import (
    Graph,
    TreeFrameShape,
    compose,
    curry,
    enumerate_allowable,
    graph_of,
    identity_graph,
    is_tree_allowable,
    make_graph,
    uncurry,
    wiring_of,
)
from core.labelled import apply_KF, compose_labelled, label_graph
from core.ladder import ARROW, Frame, ladder
from core.shapes import (
    GEN,
    UNIT,
    Hom,
    Step,
    Tensor,
    Variance,
    parse_shape,
    print_shape,
    twisted_variables,
    variables,
    variance_balance,
)
from oracle.slice import SliceMulticat
from oracle.terminal import IDENTITY, terminal_multicat

shapes = st.recursive(
    st.sampled_from([GEN, UNIT]),
    lambda children: st.one_of(st.builds(Tensor, children, children), st.builds(Hom, children, children)),
    max_leaves=6,
)


@st.composite
def endo_graphs(draw, shape=None):
    """shape → shape 上随机的、遵守方差的完美配对"""
    shape = draw(shapes) if shape is None else shape
    twisted = twisted_variables(shape, shape)
    plus = [i for i, v in enumerate(twisted) if v.variance is Variance.PLUS]
    minus = [i for i, v in enumerate(twisted) if v.variance is Variance.MINUS]
    matched = draw(st.permutations(minus))
    return make_graph(shape, shape, list(zip(plus, matched)))


@st.composite
def graph_triples(draw):
    shape = draw(shapes)
    return tuple(draw(endo_graphs(shape)) for _ in range(3))


@settings(max_examples=1000, deadline=None)
@given(endo_graphs())
def test_pairing_is_an_involution(g):
    assert all(g.mate(g.mate(i)) == i and g.mate(i) != i for i in range(len(g.mates)))
    assert g.validate() is g


@settings(max_examples=200, deadline=None)
@given(shapes)
def test_shape_text_round_trip(shape):
    assert parse_shape(print_shape(shape)) == shape


@settings(max_examples=300, deadline=None)
@given(graph_triples())
def test_composition_is_associative(triple):
    f, g, h = triple
    try:
        left = compose(compose(f, g), h)
    except ClosedLoop:
        with pytest.raises(ClosedLoop):
            compose(f, compose(g, h))
        return
    assert left == compose(f, compose(g, h))


@settings(max_examples=200, deadline=None)
@given(endo_graphs())
def test_identity_laws(g):
    assert compose(identity_graph(g.dom), g) == g
    assert compose(g, identity_graph(g.cod)) == g


@settings(max_examples=200, deadline=None)
@given(endo_graphs())
def test_curry_round_trip(g):
    assert uncurry(curry(g)) == g
    assert isinstance(curry(g), Graph)


tree_shapes = st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=3).filter(lambda a: sum(a) <= 5)


@settings(max_examples=50, deadline=None)
@given(tree_shapes)
def test_tree_graphs_round_trip(arities):
    shape = TreeFrameShape(tuple(arities), sum(arities) - len(arities) + 1)
    for g in enumerate_allowable(shape):
        assert is_tree_allowable(g)
        assert graph_of(wiring_of(g)) == g


two_opetopes = {m: ladder.enumerate_opetopes(2, Frame((ARROW,) * m, ARROW)) for m in range(4)}


@st.composite
def opetope_chains(draw):
    m = draw(st.integers(min_value=0, max_value=3))
    return tuple(draw(st.sampled_from(two_opetopes[m])) for _ in range(3))


@settings(max_examples=40, deadline=None)
@given(opetope_chains())
def test_kf_is_functorial(chain):
    alpha, beta, gamma = chain
    category = ladder.category(2)
    f = label_graph(identity_graph(GEN), (alpha, beta), [ladder.hom(alpha, beta)[0]], category)
    g = label_graph(identity_graph(GEN), (beta, gamma), [ladder.hom(beta, gamma)[0]], category)
    phi = ladder.functor(2)
    assert apply_KF(phi, compose_labelled(f, g, category)) == compose_labelled(
        apply_KF(phi, f), apply_KF(phi, g), ladder.category(1)
    )


q1 = SliceMulticat(terminal_multicat())


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=3).flatmap(lambda m: st.sampled_from(q1.arrows((IDENTITY,) * m, IDENTITY))))
def test_slice_unit_laws(tree):
    assert q1.compose(tree, [q1.identity_arrow(label) for label in tree.labels]) == tree
    assert q1.compose(q1.identity_arrow(q1.composite(tree)), [tree]) == tree


@settings(max_examples=200, deadline=None)
@given(shapes, shapes)
def test_hom_domain_flips_variances(t, s):
    inner = [v.variance.flip() for v in variables(t)]
    outer = [v.variance for v in variables(Hom(t, s)) if v.path[0] is Step.HOM_DOM]
    assert outer == inner


@settings(max_examples=200, deadline=None)
@given(shapes, shapes, shapes)
def test_balance_ignores_tensor_bracketing(a, b, c):
    assert variance_balance(Tensor(Tensor(a, b), c)) == variance_balance(Tensor(a, Tensor(b, c)))
    assert [v.variance for v in variables(Tensor(Tensor(a, b), c))] == [
        v.variance for v in variables(Tensor(a, Tensor(b, c)))
    ]
