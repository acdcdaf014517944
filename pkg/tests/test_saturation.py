import itertools

import pytest
from hypothesis import given, settings, strategies as st

from igdeps.core import DomainError, InterpretationGraph, Polarity
from igdeps.saturation import (
    SATURATION,
    Verdict,
    check_interpretation,
    check_polarity_multiset,
    unify_values,
)

from corpus import CORPUS, coindex_breaks, golden, perturbations, polarity_flips, redirects

P, N, V, S = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.VIRTUAL, Polarity.SATURATED


def oracle(pols) -> Verdict:
    """Restatement by canonical form: strip virtuals, sort, compare."""
    core = sorted(p.value for p in pols if p is not V)
    if core == [S.value]:
        return Verdict.NONLINEAR
    if core == sorted([P.value, N.value]):
        return Verdict.LINEAR
    return Verdict.INVALID


def all_sequences(max_len=4):
    for k in range(1, max_len + 1):
        yield from itertools.product(list(Polarity), repeat=k)


@pytest.mark.parametrize("pols, verdict", [
    ((P, N, V), Verdict.LINEAR),
    ((S, V, V), Verdict.NONLINEAR),
    ((P, P, N), Verdict.INVALID),
    ((S,), Verdict.NONLINEAR),
])
def test_examples(pols, verdict):
    assert check_polarity_multiset(pols).verdict is verdict


def test_empty_multiset():
    with pytest.raises(DomainError):
        check_polarity_multiset([])


def test_agrees_with_oracle_everywhere():
    seqs = list(all_sequences())
    assert len(seqs) == 4 + 16 + 64 + 256
    for s in seqs:
        assert check_polarity_multiset(s).verdict is oracle(s), s


@given(st.lists(st.sampled_from(list(Polarity)), min_size=1, max_size=8))
def test_order_independent(pols):
    assert check_polarity_multiset(pols) == check_polarity_multiset(reversed(pols))


def test_invalid_carries_counts():
    v = check_polarity_multiset([P, P, N])
    assert dict(v.counts) == {"positive": 2, "negative": 1}


@pytest.mark.parametrize("a, b, out", [
    ({"subj"}, {"subj"}, {"subj"}),
    ({"subj", "obj"}, {"obj"}, {"obj"}),
    ({"subj"}, {"obj"}, None),
])
def test_unify_values(a, b, out):
    r = unify_values(frozenset(a), frozenset(b))
    assert r == (None if out is None else frozenset(out))


@given(st.frozensets(st.sampled_from("abcde")), st.frozensets(st.sampled_from("abcde")))
def test_unify_is_intersection(a, b):
    assert unify_values(a, b) == ((a & b) or None)
    assert unify_values(a, b) == unify_values(b, a)


# ---------------------------------------------------------------------------
# check_interpretation

@pytest.mark.parametrize("name", list(CORPUS))
def test_goldens_are_valid(name):
    assert check_interpretation(golden(name)).ok


@pytest.mark.parametrize("name", list(CORPUS))
def test_perturbations_are_caught(name):
    ps = perturbations(golden(name))
    assert len(ps) >= 10
    for desc, g in ps:
        assert not check_interpretation(g).ok, desc


def test_each_edit_kind_is_caught_by_its_rule():
    g = golden("apprecie")
    for _, p in redirects(g):
        assert check_interpretation(p).rules() & {"R1", "R2", "R4", "R6"}
    for _, p in polarity_flips(g):
        assert SATURATION in check_interpretation(p).rules()
    for _, p in coindex_breaks(g):
        assert "R3" in check_interpretation(p).rules()


def test_two_positive_functs_on_one_model_node():
    # the subject slot of the verb is redirected onto the object NP, which
    # already receives the object funct positively
    g = golden("apprecie")
    interp = dict(g.interp)
    interp["w2.Subj"] = "Np2-Obj"
    report = check_interpretation(InterpretationGraph(g.dap, g.tree, interp))
    assert SATURATION in report.rules()
    assert any("funct" in v.message for v in report.violations if v.rule == SATURATION)


def test_report_is_sorted_and_rendered():
    g = golden("apprecie")
    interp = dict(g.interp)
    interp["w2.Subj"] = "Np2-Obj"
    report = check_interpretation(InterpretationGraph(g.dap, g.tree, interp))
    lines = report.render().splitlines()
    assert lines == sorted(lines, key=lambda l: l.split("\t")[0])
    assert check_interpretation(golden("permet")).render() == "ok\n"


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_report_independent_of_input_order(rnd):
    g = golden("relative")
    items = list(g.interp.items())
    rnd.shuffle(items)
    interp = dict(items)
    interp["w4.Subj"] = "Rel"
    a = check_interpretation(InterpretationGraph(g.dap, g.tree, dict(sorted(interp.items()))))
    b = check_interpretation(InterpretationGraph(g.dap, g.tree, interp))
    assert a == b
