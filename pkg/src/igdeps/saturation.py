"""Polarity saturation and validity of interpretation graphs."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .core import (
    DomainError,
    InterpretationGraph,
    ModelNode,
    Phon,
    Polarity,
    SyntaxTree,
    coindex_classes,
    natural_key,
)


class Verdict(enum.Enum):
    LINEAR = "valid-linear"
    NONLINEAR = "valid-nonlinear"
    INVALID = "invalid"


@dataclass(frozen=True)
class SaturationVerdict:
    verdict: Verdict
    counts: tuple[tuple[str, int], ...] = ()

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.INVALID


def check_polarity_multiset(pols: Iterable[Polarity]) -> SaturationVerdict:
    c = Counter(pols)
    if not c:
        raise DomainError("empty polarity multiset")
    pos, neg = c[Polarity.POSITIVE], c[Polarity.NEGATIVE]
    sat = c[Polarity.SATURATED]
    if sat == 1 and pos == neg == 0:
        return SaturationVerdict(Verdict.NONLINEAR)
    if pos == neg == 1 and sat == 0:
        return SaturationVerdict(Verdict.LINEAR)
    counts = tuple((p.name.lower(), c[p]) for p in Polarity if c[p])
    return SaturationVerdict(Verdict.INVALID, counts)


def unify_values(a: frozenset, b: frozenset) -> frozenset | None:
    """Intersection of two atom sets, or None when they do not unify."""
    meet = frozenset(a) & frozenset(b)
    return meet or None


@dataclass(frozen=True, order=True)
class Violation:
    rule: str
    nodes: tuple[str, ...]
    message: str

    def sort_key(self):
        return (self.rule, [natural_key(n) for n in self.nodes], self.message)

    def __str__(self) -> str:
        return f"{self.rule}\t{','.join(self.nodes)}\t{self.message}"


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(
            self, "violations", tuple(sorted(set(self.violations), key=Violation.sort_key)))

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def render(self) -> str:
        if self.ok:
            return "ok\n"
        return "".join(f"{v}\n" for v in self.violations)


# Rule ids of check_interpretation
TOTALITY = "R0"        # interp total, images exist, every model node has a preimage
STRUCTURE = "R1"       # dominance and precedence preserved
SATURATION = "R2"      # polarities saturate, values preserved
COINDEX = "R3"         # coindexation preserved
PHONOLOGY = "R4"       # empty/non-empty marks preserved
SOURCED = "R5"         # no model feature without a DAP source
LEXICAL = "R6"         # anchors land on the words of the model


def check_interpretation(graph: InterpretationGraph) -> ValidityReport:
    """Check everything locally checkable about an interpretation graph.

    Model minimality is not checked.
    """
    out: list[Violation] = []
    dap, tree, interp = graph.dap, graph.tree, graph.interp

    for n in dap.nodes:
        if n.id not in interp:
            out.append(Violation(TOTALITY, (n.id,), "DAP node has no image"))
    for d, m in interp.items():
        if d not in dap.by_id:
            out.append(Violation(TOTALITY, (d,), "interpretation of an unknown DAP node"))
        if m not in tree.by_id:
            out.append(Violation(TOTALITY, (d, m), "image is not a model node"))
    if out:
        return ValidityReport(tuple(out))
    for m, pre in graph.inverse.items():
        if not pre:
            out.append(Violation(TOTALITY, (m,), "model node has no antecedent"))

    out += _check_structure(graph)
    out += _check_features(graph)
    out += _check_coindex(graph)
    out += _check_phonology(graph)
    out += _check_lexical(graph)
    return ValidityReport(tuple(out))


def _check_structure(graph: InterpretationGraph) -> list[Violation]:
    dap, tree, I = graph.dap, graph.tree, graph.interp
    out = []
    for x, y in dap.imm_dom:
        if tree.parent.get(I[y]) != I[x]:
            out.append(Violation(STRUCTURE, (x, y), "immediate dominance not preserved"))
    for x, y in dap.dom:
        if I[x] not in tree.ancestors(I[y]):
            out.append(Violation(STRUCTURE, (x, y), "dominance not preserved"))
    for x, y in dap.imm_prec:
        mx, my = I[x], I[y]
        px = tree.parent.get(mx)
        if px is None or px != tree.parent.get(my):
            out.append(Violation(STRUCTURE, (x, y), "immediate precedence between non-siblings"))
            continue
        sibs = tree.children[px]
        if sibs.index(my) != sibs.index(mx) + 1:
            out.append(Violation(STRUCTURE, (x, y), "immediate precedence not preserved"))
    for x, y in dap.prec:
        if not tree.precedes(I[x], I[y]):
            out.append(Violation(STRUCTURE, (x, y), "precedence not preserved"))
    return out


def _check_features(graph: InterpretationGraph) -> list[Violation]:
    dap, tree = graph.dap, graph.tree
    out = []
    for m in tree.nodes:
        pre = [dap.node(d) for d in graph.inverse[m.id]]
        names = sorted({f.name for n in pre for f in n.features} | {f.name for f in m.features})
        for name in names:
            sources = [(n.id, n.feature(name)) for n in pre if n.has(name)]
            target = m.feature(name)
            if not sources:
                out.append(Violation(SOURCED, (m.id,), f"feature {name} has no DAP source"))
                continue
            ids = tuple(i for i, _ in sources)
            if target is None:
                out.append(Violation(SATURATION, (m.id,) + ids, f"feature {name} lost in the model"))
                continue
            polarized = [f.polarity for _, f in sources if f.polarizable]
            if polarized and len(polarized) != len(sources):
                out.append(Violation(SATURATION, (m.id,) + ids,
                                     f"feature {name} mixes polarized and neutral occurrences"))
            elif polarized:
                verdict = check_polarity_multiset(polarized)
                if not verdict.ok:
                    detail = ", ".join(f"{k}={v}" for k, v in verdict.counts)
                    out.append(Violation(SATURATION, (m.id,) + ids,
                                         f"feature {name} not saturated ({detail})"))
                if target.polarity is not Polarity.SATURATED:
                    out.append(Violation(SATURATION, (m.id,), f"model feature {name} is not saturated"))
            elif target.polarizable:
                out.append(Violation(SATURATION, (m.id,), f"model feature {name} should be neutral"))
            if len(target.value) != 1:
                out.append(Violation(SATURATION, (m.id,), f"model feature {name} is not fully specified"))
            for i, f in sources:
                if not target.value <= f.value:
                    out.append(Violation(SATURATION, (m.id, i),
                                         f"value of {name} not preserved"))
    return out


def _check_coindex(graph: InterpretationGraph) -> list[Violation]:
    dap, tree, I = graph.dap, graph.tree, graph.interp
    out = []
    groups: dict[tuple, list[tuple[str, str]]] = {}
    for n in dap.nodes:
        for f in n.features:
            if f.coindex is not None:
                groups.setdefault((n.edap, f.coindex), []).append((n.id, f.name))
    for (edap, tag), members in sorted(groups.items()):
        values = [dap.node(i).feature(name).value for i, name in members]
        if not frozenset.intersection(*values):
            out.append(Violation(COINDEX, tuple(i for i, _ in members),
                                 f"coindexed features <{tag}> do not unify"))
        model_tags = set()
        for i, name in members:
            mf = tree.node(I[i]).feature(name)
            model_tags.add(mf.coindex if mf is not None else None)
        if len(model_tags) != 1 or None in model_tags:
            out.append(Violation(COINDEX, tuple(I[i] for i, _ in members),
                                 f"coindexation <{tag}> of EDAP {edap} not preserved"))

    # model tags must stem from DAP coindexation alone
    dap_only = InterpretationGraph(dap, _strip_model_tags(tree), I)
    linked = {}
    for k, cls in enumerate(coindex_classes(dap_only)):
        for ref in cls:
            linked[ref] = k
    by_tag: dict[int, list[tuple[str, str]]] = {}
    for m in tree.nodes:
        for f in m.features:
            if f.coindex is not None:
                by_tag.setdefault(f.coindex, []).append((m.id, f.name))
                sourced = any(
                    dap.node(d).feature(f.name) is not None
                    and dap.node(d).feature(f.name).coindex is not None
                    for d in graph.inverse[m.id])
                if not sourced:
                    out.append(Violation(COINDEX, (m.id,),
                                         f"model tag <{f.coindex}> on {f.name} has no DAP source"))
    for tag, members in sorted(by_tag.items()):
        if len({linked[("model", i, name)] for i, name in members}) > 1:
            out.append(Violation(COINDEX, tuple(i for i, _ in members),
                                 f"model tag <{tag}> joins unrelated features"))
        values = {tree.node(i).feature(name).value for i, name in members}
        if len(values) > 1:
            out.append(Violation(COINDEX, tuple(i for i, _ in members),
                                 f"model tag <{tag}> carries differing values"))
    return out


def _strip_model_tags(tree: SyntaxTree) -> SyntaxTree:
    nodes = tuple(
        ModelNode(n.id, tuple(f.with_(coindex=None) for f in n.features), n.phon, n.word)
        for n in tree.nodes)
    return SyntaxTree(nodes, tree.edges)


def _check_phonology(graph: InterpretationGraph) -> list[Violation]:
    out = []
    for n in graph.dap.nodes:
        m = graph.tree.node(graph.interp[n.id])
        if n.phon is not Phon.UNCONSTRAINED and n.phon is not m.phon:
            out.append(Violation(PHONOLOGY, (n.id, m.id),
                                 f"{n.phon.value} node interpreted as {m.phon.value}"))
    return out


def _check_lexical(graph: InterpretationGraph) -> list[Violation]:
    tree = graph.tree
    out = []
    anchored: dict[str, list[str]] = {}
    for n in graph.dap.nodes:
        if n.anchor is None:
            continue
        m = tree.node(graph.interp[n.id])
        anchored.setdefault(m.id, []).append(n.id)
        if m.word != n.anchor:
            out.append(Violation(LEXICAL, (n.id, m.id), f"anchor {n.anchor} lands on {m.word}"))
        if tree.children[m.id]:
            out.append(Violation(LEXICAL, (n.id, m.id), "anchor interpreted as an inner node"))
    for m_id, ds in anchored.items():
        if len(ds) > 1:
            out.append(Violation(LEXICAL, (m_id,) + tuple(ds), "two anchors on one model node"))
    for m in tree.nodes:
        if m.word is not None and m.id not in anchored:
            out.append(Violation(LEXICAL, (m.id,), "word without an anchor"))
        has_yield = bool(tree.yield_of(m.id))
        if has_yield != (m.phon is Phon.NONEMPTY):
            out.append(Violation(LEXICAL, (m.id,), f"{m.phon.value} node with yield {has_yield}"))
    positions = [t.position for t in tree.tokens]
    if positions != sorted(positions):
        out.append(Violation(LEXICAL, (tree.root,), "words out of surface order"))
    return out
