import pytest
from hypothesis import given, settings

from igdeps.core import (
    Dap,
    DapNode,
    DependencyGraph,
    Feature,
    InterpretationGraph,
    ModelNode,
    Phon,
    Polarity,
    StructuralError,
    SyntaxTree,
    Token,
    class_of,
    coindex_classes,
    is_principal,
)
from igdeps.textio import (
    parse_dap,
    parse_depgraph,
    parse_ig,
    parse_tree,
    write_dap,
    write_depgraph,
    write_ig,
    write_tree,
)

from corpus import golden
from strategies import daps, depgraphs, graphs, trees


def node(pol, name="x"):
    return DapNode(name, (Feature("cat", frozenset({"np"}), pol),))


@pytest.mark.parametrize("pol, expected", [
    (Polarity.POSITIVE, True),
    (Polarity.SATURATED, True),
    (Polarity.VIRTUAL, False),
    (Polarity.NEGATIVE, False),
])
def test_is_principal(pol, expected):
    assert is_principal(node(pol)) is expected


def test_is_principal_requires_cat():
    with pytest.raises(StructuralError):
        is_principal(DapNode("x", (Feature("ref", frozenset({"anim"})),)))


def test_is_principal_on_grammar_anchor():
    g = golden("apprecie")
    assert is_principal(g.dap.node("w2.V"))


def test_feature_value_never_empty():
    with pytest.raises(StructuralError):
        Feature("cat", frozenset())


def test_dap_rejects_cross_edap_edges():
    a = DapNode("a", (Feature("cat", frozenset({"s"}), Polarity.SATURATED),), edap=0)
    b = DapNode("b", (Feature("cat", frozenset({"s"}), Polarity.SATURATED),), edap=1)
    with pytest.raises(StructuralError):
        Dap((a, b), [("a", "b")])


def test_dap_rejects_two_parents_and_cycles():
    ns = tuple(node(Polarity.SATURATED, i) for i in "abc")
    with pytest.raises(StructuralError):
        Dap(ns, [("a", "c"), ("b", "c")])
    with pytest.raises(StructuralError):
        Dap(ns, [("a", "b"), ("b", "a")])


def test_tree_needs_single_root():
    ms = (ModelNode("m0"), ModelNode("m1"))
    with pytest.raises(StructuralError):
        SyntaxTree(ms, ())


def test_model_rejects_unconstrained_phon():
    with pytest.raises(StructuralError):
        ModelNode("m", (), Phon.UNCONSTRAINED)


# ---------------------------------------------------------------------------
# coindexation

def test_en_clitic_and_deobj_share_a_class():
    g = golden("apprecie")
    classes = coindex_classes(g)
    cls = class_of(classes, ("dap", "w1.Clit", "ref"))
    assert ("dap", "w1.DeObj", "ref") in cls
    assert ("model", "Clit", "ref") in cls and ("model", "DeObj", "ref") in cls
    # an untagged feature stays alone
    assert class_of(classes, ("dap", "w0.Np", "ref")) == {("dap", "w0.Np", "ref")}


def test_no_tags_gives_singletons():
    f = Feature("cat", frozenset({"s"}), Polarity.SATURATED)
    dap = Dap((DapNode("a", (f,)), DapNode("b", (f,))))
    tree = SyntaxTree((ModelNode("m", (f,)),))
    classes = coindex_classes(InterpretationGraph(dap, tree, {"a": "m", "b": "m"}))
    assert all(len(c) == 1 for c in classes)
    assert len(classes) == 3


def test_tag_propagates_to_image():
    tagged = Feature("ref", frozenset({"anim"}), None, 4)
    cat = Feature("cat", frozenset({"np"}), Polarity.SATURATED)
    dap = Dap((DapNode("a", (cat, tagged)), DapNode("b", (cat, tagged))))
    tree = SyntaxTree((ModelNode("r", (cat, Feature("ref", frozenset({"anim"})))),
                       ModelNode("s", (cat, Feature("ref", frozenset({"anim"}))))), [("r", "s")])
    g = InterpretationGraph(dap, tree, {"a": "r", "b": "s"})
    cls = class_of(coindex_classes(g), ("model", "r", "ref"))
    assert cls == {("dap", "a", "ref"), ("dap", "b", "ref"), ("model", "r", "ref"), ("model", "s", "ref")}


def test_tags_are_scoped_per_edap():
    cat = Feature("cat", frozenset({"np"}), Polarity.SATURATED)
    ref = Feature("ref", frozenset({"anim"}), None, 1)
    dap = Dap((DapNode("a", (cat, ref), edap=0), DapNode("b", (cat, ref), edap=1)))
    tree = SyntaxTree((ModelNode("r", (cat,)), ModelNode("s", (cat,))), [("r", "s")])
    g = InterpretationGraph(dap, tree, {"a": "r", "b": "s"})
    assert class_of(coindex_classes(g), ("dap", "a", "ref")) == {("dap", "a", "ref")}


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_coindex_classes_form_a_partition(g):
    classes = coindex_classes(g)
    seen = [r for c in classes for r in c]
    assert len(seen) == len(set(seen))
    every = {("dap", n.id, f.name) for n in g.dap.nodes for f in n.features}
    every |= {("model", n.id, f.name) for n in g.tree.nodes for f in n.features}
    assert set(seen) == every
    assert coindex_classes(g) == classes


# ---------------------------------------------------------------------------
# serialization round trips

@settings(max_examples=60, deadline=None)
@given(daps())
def test_dap_round_trip(d):
    assert parse_dap(write_dap(d)) == d


@settings(max_examples=60, deadline=None)
@given(trees())
def test_tree_round_trip(t):
    back = parse_tree(write_tree(t))
    assert write_tree(back) == write_tree(t)
    assert set(back.nodes) == set(t.nodes)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_ig_round_trip(g):
    back = parse_ig(write_ig(g))
    assert back.dap == g.dap and back.interp == g.interp
    assert write_tree(back.tree) == write_tree(g.tree)


@settings(max_examples=60, deadline=None)
@given(depgraphs())
def test_depgraph_round_trip(dg):
    assert parse_depgraph(write_depgraph(dg)) == dg


def test_dependency_graph_allows_cycles_and_isolated_tokens():
    from igdeps.core import Dependency
    a, b, c = Token(0, "a"), Token(1, "b"), Token(2, "c")
    dg = DependencyGraph((a, b, c), (Dependency(a, "x", b), Dependency(b, "y", a)))
    assert dg.has_cycle()
    assert dg.degree(c) == 0
