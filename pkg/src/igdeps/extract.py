"""Dependency extraction from valid interpretation graphs.

Each model node N carrying ``funct`` of value X yields one dependency
labelled X. Two independent questions settle where its ends come from:

* linearity: is the funct antecedent of N positive (linear) or saturated
  (non-linear)? It locates the governor.
* canonicity: is N non-empty (canonical) or an empty trace? It locates
  the dependent, through ref coindexation in the second case.

:func:`extract_dependencies` follows this case analysis directly;
:func:`extract_by_patterns` gets the same result from the four declarative
patterns and is kept as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DapNode,
    Dependency,
    DependencyGraph,
    DependencyKind,
    DomainError,
    IntegrityError,
    InterpretationGraph,
    Phon,
    Polarity,
    class_of,
    coindex_classes,
    is_principal,
    natural_key,
)
from .heads import anchor_token, antecedent
from .patterns import builtin_patterns, match_pattern

LINEAR, NONLINEAR = "linear", "non-linear"
CANONICAL, NONCANONICAL = "canonical", "non-canonical"


class ExtractionError(Exception):
    def __init__(self, node: str, message: str):
        self.node = node
        super().__init__(f"{node}: {message}")


@dataclass(frozen=True)
class Extraction:
    graph: DependencyGraph
    errors: tuple[ExtractionError, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


def funct_nodes(graph: InterpretationGraph) -> list[str]:
    return [i for i in graph.tree.preorder if graph.tree.node(i).has("funct")]


def classify(graph: InterpretationGraph, n) -> tuple[str, str]:
    n = n if isinstance(n, str) else n.id
    if not graph.tree.node(n).has("funct"):
        raise DomainError(f"model node {n} carries no funct feature")
    rev = antecedent(graph, n, "funct")
    linear = rev.feature("funct").polarity is Polarity.POSITIVE
    canonical = graph.tree.node(n).phon is Phon.NONEMPTY
    return (LINEAR if linear else NONLINEAR, CANONICAL if canonical else NONCANONICAL)


def governor_dapnode(graph: InterpretationGraph, n, linearity: str) -> DapNode:
    n = n if isinstance(n, str) else n.id
    if linearity == LINEAR:
        g = antecedent(graph, n, "funct")
        p = graph.dap.parent.get(g.id)
        siblings = [s for s in graph.dap.children(p) if s != g.id] if p else []
        principal = [s for s in siblings if is_principal(graph.dap.node(s))]
        if len(principal) != 1:
            raise ExtractionError(n, f"positive funct node {g.id} has {len(principal)} principal siblings")
        return g
    parent = graph.tree.parent.get(n)
    if parent is None:
        raise ExtractionError(n, "non-linear function on the root")
    return antecedent(graph, parent, "cat")


def dependent_dapnode(graph: InterpretationGraph, n, canonicity: str,
                      classes=None) -> DapNode:
    n = n if isinstance(n, str) else n.id
    if canonicity == CANONICAL:
        return antecedent(graph, n, "cat")
    if not graph.tree.node(n).has("ref"):
        raise ExtractionError(n, "empty dependent without a ref feature")
    classes = classes if classes is not None else coindex_classes(graph)
    cls = class_of(classes, ("model", n, "ref"))
    found = sorted({i for sort, i, name in cls
                    if sort == "model" and name == "ref" and i != n
                    and graph.tree.node(i).phon is Phon.NONEMPTY}, key=natural_key)
    if len(found) != 1:
        tags = sorted({graph.tree.node(i).feature("ref").coindex for _, i, _ in
                       [r for r in cls if r[0] == "model"]} - {None})
        raise ExtractionError(
            n, f"coindex class <{','.join(map(str, tags))}> has {len(found)} non-empty nodes")
    return antecedent(graph, found[0], "cat")


def extract_dependencies(graph: InterpretationGraph) -> Extraction:
    """One dependency per funct-bearing model node; failures are collected."""
    edges, errors = [], []
    classes = coindex_classes(graph)
    for n in funct_nodes(graph):
        try:
            linearity, canonicity = classify(graph, n)
            g = governor_dapnode(graph, n, linearity)
            d = dependent_dapnode(graph, n, canonicity, classes)
            label = _label(graph, n)
            kind = DependencyKind.of(linearity == LINEAR, canonicity == CANONICAL)
            edges.append(Dependency(anchor_token(graph, d), label, anchor_token(graph, g), kind))
        except ExtractionError as exc:
            errors.append(exc)
        except (DomainError, IntegrityError) as exc:
            errors.append(ExtractionError(n, str(exc)))
    return Extraction(DependencyGraph(tuple(graph.tree.tokens), tuple(edges)), tuple(errors))


def _label(graph: InterpretationGraph, n: str) -> str:
    value = graph.tree.node(n).feature("funct").value
    if len(value) != 1:
        raise ExtractionError(n, f"funct value {sorted(value)} is not a single label")
    return next(iter(value))


def extract_by_patterns(graph: InterpretationGraph, patterns=None) -> DependencyGraph:
    """Dependencies read off the matches of the four dependency patterns."""
    patterns = patterns or builtin_patterns()
    edges = []
    for kind in DependencyKind:
        for m in match_pattern(patterns[kind.value], graph):
            g, d = graph.dap.node(m["G"]), graph.dap.node(m["D"])
            label = _label(graph, m["N"])
            edges.append(Dependency(anchor_token(graph, d), label, anchor_token(graph, g), kind))
    return DependencyGraph(tuple(graph.tree.tokens), tuple(edges))
