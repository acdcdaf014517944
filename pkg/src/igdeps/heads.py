"""Principal antecedents and heads of model nodes."""

from __future__ import annotations

from .core import (
    DapNode,
    DomainError,
    IntegrityError,
    InterpretationGraph,
    Phon,
    Polarity,
    Token,
)

_PRINCIPAL = (Polarity.POSITIVE, Polarity.SATURATED)


def _model_id(m) -> str:
    return m if isinstance(m, str) else m.id


def antecedent(graph: InterpretationGraph, m, feature: str) -> DapNode:
    """The unique preimage of ``m`` carrying ``feature`` saturated or positive."""
    m = _model_id(m)
    node = graph.tree.node(m)
    f = node.feature(feature)
    if f is None:
        raise DomainError(f"model node {m} has no {feature} feature")
    if not f.polarizable:
        raise DomainError(f"{feature} is neutral on {m}; antecedents need a polarized feature")
    found = []
    for d in graph.inverse[m]:
        df = graph.dap.node(d).feature(feature)
        if df is not None and df.polarity in _PRINCIPAL:
            found.append(graph.dap.node(d))
    if len(found) != 1:
        ids = ", ".join(n.id for n in found) or "none"
        raise IntegrityError(f"{feature} antecedent of {m} is not unique ({ids})")
    return found[0]


def head(graph: InterpretationGraph, m) -> str:
    """Model node id of the head of ``m``: the image of the anchor of the
    EDAP holding the cat antecedent of ``m``."""
    m = _model_id(m)
    if graph.tree.node(m).phon is Phon.EMPTY:
        raise DomainError(f"empty model node {m} has no head")
    a = antecedent(graph, m, "cat")
    return graph.interp[graph.dap.anchor_of(a.edap).id]


def anchor_token(graph: InterpretationGraph, node: DapNode) -> Token:
    """Word of the anchor of the EDAP instance holding ``node``."""
    return graph.dap.anchor_of(node.edap).anchor


def head_token(graph: InterpretationGraph, m) -> Token:
    m = _model_id(m)
    if graph.tree.node(m).phon is Phon.EMPTY:
        raise DomainError(f"empty model node {m} has no head")
    return anchor_token(graph, antecedent(graph, m, "cat"))
