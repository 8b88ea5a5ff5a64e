from itertools import product

import pytest

from core.faces import faces, relations_deep, relations_one_step, tf_map, zero_cell_classes
from core.ladder import ARROW, POINT, Frame, ladder

ONE_STEP = {
    "s1s1 = s2t",
    "s1s2 = ts2",
    "s1s3 = ts3",
    "s1t = tt",
    "s2s1 = ts1",
    "s2s2 = ts4",
}

DEEP_CLASSES = {
    frozenset({"ts1s", "s2s1s", "s2s2t", "ts4t"}),
    frozenset({"ts1t", "s2s1t", "s2tt", "s1s1t", "s1s2s", "ts2s"}),
    frozenset({"ts2t", "s1s2t", "s1s3s", "ts3s"}),
    frozenset({"ts3t", "s1s3t", "s1tt", "ttt"}),
    frozenset({"ts4s", "s2s2s", "s2ts", "s1s1s", "s1ts", "tts"}),
}


def test_faces_of_low_dimensions():
    assert [str(w) for w in faces(ARROW)] == ["s", "t"]
    assert [str(w) for w in faces(ladder.chain_opetope((0, 1)))] == ["s1", "s2", "t"]
    with pytest.raises(ValueError):
        faces(POINT)


def test_one_step_relations(face_example):
    relations = relations_one_step(face_example)
    assert set(relations.as_text()) == ONE_STEP
    assert len(relations.equations) == len(face_example.theta.graph.pairs())


def test_deep_classes(face_example):
    relations = relations_deep(face_example)
    assert len(relations.words) == 24
    assert {frozenset(c) for c in relations.classes_as_text()} == DEEP_CLASSES


def test_zero_cells_of_a_chain():
    classes = zero_cell_classes(ladder.chain_opetope((1, 0, 2)))
    assert len(classes) == 4
    assert sum(len(c) for c in classes) == 8


def test_tf_map(face_example):
    mapping = tf_map(face_example)
    target_classes = relations_one_step(face_example.output).classes
    assert len(mapping) == 5
    assert set(mapping.values()) == set(target_classes)
    for cls, image in mapping.items():
        assert {w.strip() for w in cls if w.letters[0].kind == "t"} <= image


@pytest.mark.parametrize("arities", [(0,), (1, 0), (2, 2), (3, 1), (1, 1, 1)])
def test_tf_map_on_grafts(arities):
    for theta in ladder.enumerate_grafts(tuple(ladder.corolla(m) for m in arities)):
        assert len(tf_map(theta)) == theta.output.arity + 1


def test_depth_limits(face_example):
    with pytest.raises(ValueError):
        relations_deep(face_example, depth=3)
    with pytest.raises(ValueError):
        relations_deep(ladder.corolla(2))
    with pytest.raises(ValueError):
        relations_one_step(ARROW)


def _arity_lists(max_leaves, max_inputs=3):
    """总输入数不超过 max_leaves 且输出元数非负的输入元数列表"""
    return [
        arities
        for n in range(1, max_inputs + 1)
        for arities in product(range(max_leaves + 1), repeat=n)
        if sum(arities) <= max_leaves and sum(arities) - n + 1 >= 0
    ]


def _check_tf(theta):
    mapping = tf_map(theta)
    assert len(mapping) == theta.output.arity + 1
    for cls, image in mapping.items():
        assert {w.strip() for w in cls if w.letters[0].kind == "t"} <= image


@pytest.mark.slow
def test_tf_map_on_every_small_graft():
    checked = 0
    for arities in _arity_lists(4):
        choices = [ladder.enumerate_opetopes(2, Frame((ARROW,) * m, ARROW)) for m in arities]
        for inputs in product(*choices):
            for theta in ladder.enumerate_grafts(inputs):
                _check_tf(theta)
                checked += 1
    assert checked > 0


@pytest.mark.slow
def test_tf_map_on_corolla_grafts_up_to_six_leaves():
    for arities in _arity_lists(6):
        for theta in ladder.enumerate_grafts(tuple(ladder.corolla(m) for m in arities)):
            _check_tf(theta)
