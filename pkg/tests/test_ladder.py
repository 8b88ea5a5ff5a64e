from math import factorial

import pytest

from core.errors import ArityMismatch, CompositeMismatch, FrameMismatch, NotTreeShaped
from core.graphs import ROOT, Slot, TreeFrameShape, TreeWiring, curry, graph_of
from core.labelled import LabelledGraph, compose_labelled, identity_labelled
from core.ladder import ARROW, POINT, Frame, ladder
from oracle.correspondence import chain_order


def test_low_dimensions():
    assert ladder.enumerate_opetopes(0) == [POINT]
    assert ladder.enumerate_opetopes(1) == [ARROW]
    assert ARROW.inputs == (POINT,) and ARROW.output == POINT


@pytest.mark.parametrize("m", range(6))
def test_two_opetope_counts(m):
    found = ladder.enumerate_opetopes(2, Frame((ARROW,) * m, ARROW))
    assert len(found) == factorial(m)
    assert len(set(found)) == len(found)
    assert all(alpha.dim == 2 and alpha.arity == m for alpha in found)


def test_enumeration_is_deterministic():
    frame = Frame((ARROW,) * 3, ARROW)
    assert ladder.enumerate_opetopes(2, frame) == ladder.enumerate_opetopes(2, frame)


def test_enumeration_needs_a_frame():
    with pytest.raises(FrameMismatch):
        ladder.enumerate_opetopes(2)
    with pytest.raises(FrameMismatch):
        ladder.enumerate_opetopes(3, Frame((ARROW,), ARROW))


def test_chain_order():
    assert chain_order(ladder.chain_opetope((2, 0, 1))) == [2, 0, 1]
    assert chain_order(ladder.chain_opetope(())) == []
    with pytest.raises(ArityMismatch):
        ladder.chain_opetope((0, 0))


@pytest.mark.parametrize("m", range(4))
def test_hom_between_two_opetopes(m, two_opetopes):
    alpha = two_opetopes[m][0]
    total = 0
    for beta in two_opetopes[m]:
        assert len(ladder.frame_morphisms(alpha, beta)) == factorial(m)
        morphisms = ladder.hom(alpha, beta)
        assert len(morphisms) == 1
        assert ladder.category(2).is_isomorphism(morphisms[0])
        total += len(morphisms)
    assert total == factorial(m)


def test_hom_respects_chain_order():
    alpha = ladder.chain_opetope((0, 1, 2))
    beta = ladder.chain_opetope((2, 0, 1))
    (f,) = ladder.hom(alpha, beta)
    # β 的第 i 个输入与 α 的第 σ(i) 个输入在链中位置相同
    assert [chain_order(alpha).index(s) for s in f.sigma] == [chain_order(beta).index(i) for i in range(3)]


def test_hom_across_arities_is_empty(two_opetopes):
    assert ladder.hom(two_opetopes[2][0], two_opetopes[3][0]) == ()
    assert ladder.hom(ARROW, two_opetopes[1][0]) == ()


def test_morphism_algebra(two_opetopes):
    alpha, beta = two_opetopes[3][0], two_opetopes[3][4]
    (f,) = ladder.hom(alpha, beta)
    (g,) = ladder.hom(beta, alpha)
    assert ladder.compose_morphisms(ladder.identity_morphism(beta), f) == f
    assert ladder.compose_morphisms(f, ladder.identity_morphism(alpha)) == f
    assert ladder.compose_morphisms(g, f) == ladder.identity_morphism(alpha)
    with pytest.raises(ValueError):
        ladder.compose_morphisms(f, f)


def test_worked_three_dim_example(face_example):
    assert face_example.dim == 3
    assert [a.arity for a in face_example.inputs] == [3, 2]
    assert face_example.output.arity == 4
    assert chain_order(face_example.output) == [3, 0, 1, 2]
    rebuilt = ladder.make_opetope(face_example.inputs, face_example.output, face_example.theta)
    assert rebuilt == face_example


def test_wrong_output_breaks_composite(face_example):
    others = [a for a in ladder.enumerate_opetopes(2, Frame((ARROW,) * 4, ARROW)) if a != face_example.output]
    with pytest.raises(CompositeMismatch):
        ladder.make_opetope(face_example.inputs, others[0], face_example.theta)


def test_frame_mismatch(face_example):
    with pytest.raises(FrameMismatch):
        ladder.make_opetope((ARROW,), POINT, face_example.theta)
    with pytest.raises(FrameMismatch):
        ladder.make_opetope(face_example.inputs[:1], face_example.output, face_example.theta)


def test_cycle_is_rejected():
    wiring = TreeWiring(TreeFrameShape((1, 1), 1), (Slot(1, 0), Slot(0, 0)), (ROOT,))
    graph = curry(graph_of(wiring))
    identity = ladder.identity_morphism(POINT)
    theta = LabelledGraph(graph, (POINT,) * 6, (identity,) * 3)
    with pytest.raises(NotTreeShaped):
        ladder.make_opetope((ARROW, ARROW), ARROW, theta)


def test_grafting_counts():
    grafts = ladder.enumerate_grafts((ladder.corolla(1), ladder.corolla(1)))
    assert len(grafts) == 2
    assert all(theta.output.arity == 1 for theta in grafts)
    with pytest.raises(ArityMismatch):
        ladder.enumerate_grafts(())


def test_nullary_input():
    grafts = ladder.enumerate_grafts((ladder.corolla(0),))
    assert len(grafts) == 1
    assert grafts[0].output == ladder.corolla(0)


def test_corolla_example(corolla_example):
    assert [a.arity for a in corolla_example.inputs] == [3, 2]
    assert corolla_example.output.arity == 4


@pytest.mark.slow
def test_four_dim_example(four_example):
    assert four_example.dim == 4
    assert [theta.arity for theta in four_example.inputs] == [2, 2]
    assert [theta.output.arity for theta in four_example.inputs] == [4, 3]
    assert [alpha.arity for alpha in four_example.output.inputs] == [2, 2, 2]
    assert four_example.output.output.arity == 4
    assert ladder.make_opetope(four_example.inputs, four_example.output, four_example.theta) == four_example


def test_output_of_arity_three_breaks_composite(face_example):
    with pytest.raises(CompositeMismatch):
        ladder.make_opetope(face_example.inputs, ladder.corolla(3), face_example.theta)
    assert ladder.enumerate_opetopes(3, Frame(face_example.inputs, ladder.corolla(3))) == []


def test_frame_functor_preserves_identities(two_opetopes, face_example):
    for theta in [two_opetopes[3][2], face_example]:
        image = ladder.frame_functor_on_morphism(ladder.identity_morphism(theta))
        assert image == identity_labelled(ladder.frame_functor(theta), ladder.category(theta.dim - 1))


def test_frame_functor_preserves_composition(two_opetopes):
    alpha, beta, gamma = two_opetopes[3][0], two_opetopes[3][3], two_opetopes[3][5]
    (f,) = ladder.hom(alpha, beta)
    (g,) = ladder.hom(beta, gamma)
    assert ladder.frame_functor_on_morphism(ladder.compose_morphisms(g, f)) == compose_labelled(
        ladder.frame_functor_on_morphism(f), ladder.frame_functor_on_morphism(g), ladder.category(1)
    )


def test_frame_functor_on_three_dim_morphisms():
    grafts = ladder.enumerate_grafts((ladder.corolla(2), ladder.corolla(2)))
    alpha = grafts[0]
    category = ladder.category(2)
    for beta in grafts:
        for f in ladder.hom(alpha, beta):
            for g in ladder.hom(beta, alpha):
                assert ladder.frame_functor_on_morphism(ladder.compose_morphisms(g, f)) == compose_labelled(
                    ladder.frame_functor_on_morphism(f), ladder.frame_functor_on_morphism(g), category
                )


def test_three_dim_homs_are_isomorphisms():
    grafts = ladder.enumerate_grafts((ladder.corolla(2), ladder.corolla(2)))
    category = ladder.category(3)
    found = 0
    for a in grafts:
        assert ladder.identity_morphism(a) in ladder.hom(a, a)
        for b in grafts:
            for f in ladder.hom(a, b):
                assert category.is_isomorphism(f)
                found += 1
    assert found > len(grafts)


@pytest.mark.slow
def test_four_dim_homs_are_isomorphisms(four_example):
    morphisms = ladder.hom(four_example, four_example)
    assert ladder.identity_morphism(four_example) in morphisms
    assert all(ladder.category(4).is_isomorphism(f) for f in morphisms)
