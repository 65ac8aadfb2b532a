import pytest
from hypothesis import given, settings, strategies as st

from literals import SIGMA
from pluract.errors import UnknownVertex
from pluract.structures import (
    KINDS,
    QVertex,
    WordForm,
    dominance_closure,
    graph,
    precedence_closure,
    sorted_vertices,
    validate_structure,
    validate_word_form,
)


def test_stick_is_a_valid_tree(stick14):
    report = validate_structure(stick14)
    assert report.ok, str(report)
    assert stick14.root == 0
    assert stick14.label_of[9] == "s"
    assert stick14.parent[8] == 2


def test_universe_is_vertices_and_labels(stick14):
    assert stick14.universe == set(range(10)) | stick14.labels


def test_dominance_closure_of_root_is_everything_else(stick14):
    assert dominance_closure(stick14, 0) == set(range(1, 10))


def test_dominance_closure_of_onset(stick14):
    assert dominance_closure(stick14, 2) == {9, 8}


def test_dominance_closure_of_leaf_is_empty(stick14):
    assert dominance_closure(stick14, 6) == frozenset()


def test_dominance_closure_unknown_vertex(stick14):
    with pytest.raises(UnknownVertex):
        dominance_closure(stick14, 42)


def test_precedence_closure_keeps_siblings_ordered(stick14):
    assert precedence_closure(stick14) == {(2, 3), (4, 5), (9, 8)}


def test_precedence_closure_is_transitive():
    g = graph(range(4), ["a"], [(0, 1), (0, 2), (0, 3)], [(1, 2), (2, 3)], [(v, "a") for v in range(4)])
    assert precedence_closure(g) == {(1, 2), (2, 3), (1, 3)}


def test_stick_word_form_is_valid(stick):
    assert validate_word_form(stick).ok


def test_dangling_correspondence_reported(stick):
    bad = WordForm(stick.phon, stick.morph, stick.correspondence | {(99, 100)})
    report = validate_word_form(bad)
    assert report.kinds == {"dangling phon vertex"}
    assert next(iter(report)).where == "correspondence"


def test_unknown_label_reported():
    g = graph([0], ["x"], [], [], [(0, "y")])
    assert validate_structure(g).kinds == {"unknown label"}


def test_reflexive_precedence():
    g = graph([0, 1], ["a"], [(0, 1)], [(1, 1)], [(0, "a"), (1, "a")])
    assert "reflexive precedence" in validate_structure(g).kinds


def test_precedence_cycle_among_siblings():
    g = graph(range(3), ["a"], [(0, 1), (0, 2)], [(1, 2), (2, 1)], [(v, "a") for v in range(3)])
    assert validate_structure(g).kinds == {"precedence cycle"}


def test_multiple_parents():
    g = graph(range(4), ["a"], [(0, 1), (0, 2), (1, 3), (2, 3)], [(1, 2)], [(v, "a") for v in range(4)])
    assert validate_structure(g).kinds == {"multiple parents"}


def test_unnamed_vertex():
    g = graph([0, 1], ["a"], [(0, 1)], [], [(0, "a")])
    assert validate_structure(g).kinds == {"unnamed vertex"}


def test_restrict_keeps_labels(stick14):
    sub = stick14.restrict({2, 9, 8})
    assert sub.vertices == {2, 9, 8}
    assert sub.dominance == {(2, 9), (2, 8)}
    assert sub.precedence == {(9, 8)}
    assert sub.labels == stick14.labels
    assert sub.used_labels() == {"O", "s", "t"}


def test_qualified_vertex_prints_with_tag():
    assert str(QVertex(0, "Red")) == "0_Red"


def test_vertex_order_interleaves_qualified_ids():
    vs = [QVertex(1, "Bs"), 2, QVertex(0, "Red"), 0, QVertex(0, "Bs")]
    assert sorted_vertices(vs) == [0, QVertex(0, "Bs"), QVertex(0, "Red"), QVertex(1, "Bs"), 2]


def test_report_order_is_deterministic():
    g = graph([0, 1, 2], ["a"], [], [(1, 2)], [(0, "a"), (0, "b")])
    r1, r2 = validate_structure(g), validate_structure(g)
    assert [str(v) for v in r1] == [str(v) for v in r2]
    assert [v.kind for v in r1] == sorted((v.kind for v in r1), key=KINDS.index)


# -- property: random trees validate; random damage is caught ------------------


@st.composite
def trees(draw, max_size=12):
    n = draw(st.integers(1, max_size))
    parents = [None] + [draw(st.integers(0, i - 1)) for i in range(1, n)]
    dom = [(p, i) for i, p in enumerate(parents) if p is not None]
    prec = []
    for p in range(n):
        kids = [i for i, q in enumerate(parents) if q == p]
        prec += list(zip(kids, kids[1:]))
    labels = [draw(st.sampled_from(["Pw", SIGMA, "O", "R", "a", "b"])) for _ in range(n)]
    return graph(range(n), set(labels), dom, prec, list(enumerate(labels)))


@settings(max_examples=150, deadline=None)
@given(trees())
def test_generated_trees_validate(g):
    assert validate_structure(g).ok
    assert dominance_closure(g, 0) == set(range(1, len(g.vertices)))


@settings(max_examples=100, deadline=None)
@given(trees(), st.data())
def test_extra_root_is_caught(g, data):
    n = len(g.vertices)
    g2 = graph(set(g.vertices) | {n}, g.labels | {"z"}, g.dominance, g.precedence, set(g.naming) | {(n, "z")})
    assert validate_structure(g2).kinds == {"multiple roots"}
