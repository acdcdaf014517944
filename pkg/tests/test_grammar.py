import pytest
from hypothesis import given, settings, strategies as st

from igdeps.core import DomainError
from igdeps.grammar import (
    EMPTY_LEAVES,
    LEXICALIZED,
    GrammarSyntaxError,
    GrammarValidationError,
    UnknownWordError,
    edap_of,
    instantiate,
    load_grammar,
    principal_child,
    select_and_compose,
    toy_grammar,
    validate_edap,
)
from igdeps.core import Phon, is_principal

TOY_FORMS = {"Jean", "en", "apprécie", "le", "goût", "permet", "promet", "à", "Marie",
             "de", "venir", "la", "fille", "que", "connaît"}


@pytest.fixture(scope="module")
def toy():
    return toy_grammar()


def test_toy_grammar_entries(toy):
    assert toy.forms() == TOY_FORMS
    assert toy.name == "toy-fr"
    assert len(toy.entries["fille"]) == 2
    assert all(len(v) == 1 for k, v in toy.entries.items() if k != "fille")


def test_empty_source_gives_empty_grammar():
    g = load_grammar("")
    assert g.entries == {} and len(g) == 0


def test_two_anchors_cite_principle_1():
    src = """
edap x
  node A cat<->s anchor
  node B cat<->s anchor
  node R cat<->s
  immdom R A
  immdom R B
end
"""
    with pytest.raises(GrammarValidationError) as exc:
        load_grammar(src)
    assert LEXICALIZED in exc.value.report.rules()


def test_empty_internal_node_violates_principle_2():
    src = """
edap x
  node R cat<->s
  node E cat~np phon=empty
  node L cat~n
  node A cat<->v anchor
  immdom R E
  immdom E L
  immdom R A
end
"""
    with pytest.raises(GrammarValidationError) as exc:
        load_grammar(src)
    assert EMPTY_LEAVES in exc.value.report.rules()


def test_syntax_error_has_position():
    with pytest.raises(GrammarSyntaxError) as exc:
        load_grammar("edap x\n  node A cat?s anchor\nend\n")
    assert exc.value.line == 2


def test_unclosed_block():
    with pytest.raises(GrammarSyntaxError):
        load_grammar("edap x\n  node A cat<->s anchor\n")


@pytest.mark.parametrize("form", ["en", "apprécie"])
def test_documented_entries_are_valid(toy, form):
    assert validate_edap(toy.entries[form][0]).ok


def test_en_anchor_is_its_own_projection(toy):
    e = toy.entries["en"][0]
    assert e.projections() == ["Clit"]


def test_apprecie_projections(toy):
    e = toy.entries["apprécie"][0]
    assert e.projections() == ["S", "Vmax", "V"]
    assert principal_child(e, "S").id == "Vmax"
    assert principal_child(e, "Vmax").id == "V"


def test_principal_child_errors(toy):
    en = toy.entries["en"][0]
    with pytest.raises(DomainError):
        principal_child(en, "Clit")
    with pytest.raises(DomainError):
        principal_child(en, "S")


def test_every_toy_entry_spine_matches_principal_nodes(toy):
    for entries in toy.entries.values():
        for e in entries:
            principal = {n.id for n in e.dap.nodes if n.phon is not Phon.EMPTY and is_principal(n)}
            assert principal == set(e.projections())


def test_compose_apprecie(toy):
    daps = select_and_compose("Jean en apprécie le goût".split(), toy)
    assert len(daps) == 1
    assert daps[0].edaps == [0, 1, 2, 3, 4]


def test_compose_product(toy):
    assert len(select_and_compose("la fille".split(), toy)) == 2
    assert len(select_and_compose("fille fille".split(), toy)) == 4


def test_unknown_word(toy):
    with pytest.raises(UnknownWordError) as exc:
        select_and_compose(["Jean", "dort"], toy)
    assert exc.value.position == 1 and exc.value.form == "dort"


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(sorted(TOY_FORMS)), min_size=1, max_size=4))
def test_compose_size_and_freshness(words):
    toy = toy_grammar()
    daps = select_and_compose(words, toy)
    expected = 1
    for w in words:
        expected *= len(toy.entries[w])
    assert len(daps) == expected
    for d in daps:
        assert d.edaps == list(range(len(words)))
        for k in d.edaps:
            e = edap_of(d, k)
            assert e.word_form == words[k]
            assert all(n.id.startswith(f"w{k}.") for n in e.dap.nodes)


def test_instances_share_no_ids(toy):
    t = toy.entries["Jean"][0]
    a, b = instantiate(t, 0), instantiate(t, 3)
    assert not {n.id for n in a.dap.nodes} & {n.id for n in b.dap.nodes}
