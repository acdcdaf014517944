import pytest

from igdeps.core import DomainError, IntegrityError, InterpretationGraph, Phon
from igdeps.heads import antecedent, head, head_token

from corpus import CORPUS, golden


@pytest.fixture
def g():
    return golden("apprecie")


def test_antecedent_of_deobj_funct(g):
    assert antecedent(g, "DeObj", "funct").id == "w1.DeObj"


def test_antecedent_of_object_cat(g):
    assert antecedent(g, "Np2-Obj", "cat").id == "w4.Np"


def test_antecedent_singleton(g):
    assert g.inverse["Np2-N"] == ["w4.N"]
    assert antecedent(g, "Np2-N", "cat").id == "w4.N"


def test_antecedent_errors(g):
    with pytest.raises(DomainError):
        antecedent(g, "S", "funct")
    with pytest.raises(DomainError):
        antecedent(g, "Np1-Subj", "ref")
    interp = dict(g.interp)
    interp["w0.Np"] = "Np2-Obj"  # a second positive cat lands on the object
    with pytest.raises(IntegrityError):
        antecedent(InterpretationGraph(g.dap, g.tree, interp), "Np2-Obj", "cat")


def test_heads_of_verb_projections(g):
    assert head(g, "Vmax") == "V"
    assert head(g, "S") == "V"
    assert head(g, "V") == "V"


def test_head_of_empty_node(g):
    with pytest.raises(DomainError):
        head(g, "DeObj")
    with pytest.raises(DomainError):
        head_token(g, "DeObj")


@pytest.mark.parametrize("m, form", [("Vmax", "apprécie"), ("Np1-Subj", "Jean"), ("Clit", "en"),
                                     ("Np2-Obj", "goût"), ("D", "le")])
def test_head_token(g, m, form):
    assert head_token(g, m).form == form


@pytest.mark.parametrize("name", list(CORPUS))
def test_head_total_and_idempotent(name):
    gr = golden(name)
    for m in gr.tree.nodes:
        if m.phon is Phon.EMPTY:
            continue
        h = head(gr, m.id)
        assert head(gr, h) == h
        assert gr.tree.node(h).word is not None
        assert antecedent(gr, m.id, "cat").phon is not Phon.EMPTY
