"""Declarative graph patterns over interpretation graphs.

A pattern names nodes of two sorts (DAP nodes and model nodes), puts
feature and phonology constraints on them, and relates them by
interpretation edges (``interp d m``: the image of d is m), immediate
dominance edges (``child p c``) and coreference edges (``coref a b``: the
ref features of two model nodes are coindexed).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .core import (
    POLARITY_ALIASES,
    InterpretationGraph,
    Phon,
    coindex_classes,
    natural_key,
)
from .textio import FormatError, lines

DAP, MODEL = "dap", "model"
NEUTRAL = "="


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class FeatureConstraint:
    name: str
    values: frozenset | None = None
    # polarity symbols ("->", "<-", "~", "<->", or "=" for neutral); None allows any
    polarities: frozenset | None = None

    def __post_init__(self):
        if self.polarities is not None and not self.polarities:
            raise PatternError(f"empty polarity set on {self.name}")
        if self.values is not None and not self.values:
            raise PatternError(f"empty value set on {self.name}")


@dataclass(frozen=True)
class NodePattern:
    id: str
    sort: str
    features: tuple[FeatureConstraint, ...] = ()
    phon: Phon | None = None
    captures: bool = False


@dataclass(frozen=True)
class GraphPattern:
    name: str
    nodes: tuple[NodePattern, ...] = ()
    interp_edges: tuple[tuple[str, str], ...] = ()
    dom_edges: tuple[tuple[str, str], ...] = ()
    coref_edges: tuple[tuple[str, str], ...] = ()

    def node(self, pid: str) -> NodePattern:
        for n in self.nodes:
            if n.id == pid:
                return n
        raise KeyError(pid)

    def validate(self) -> None:
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise PatternError(f"{self.name}: duplicate pattern node ids")
        sorts = {n.id: n.sort for n in self.nodes}
        for n in self.nodes:
            if n.sort not in (DAP, MODEL):
                raise PatternError(f"{self.name}: node {n.id} has unknown sort {n.sort!r}")
        for d, m in self.interp_edges:
            if sorts.get(d) != DAP or sorts.get(m) != MODEL:
                raise PatternError(f"{self.name}: interp {d} {m} must go from a dap to a model node")
        for a, b in self.dom_edges:
            if a not in sorts or b not in sorts or sorts[a] != sorts[b]:
                raise PatternError(f"{self.name}: child {a} {b} must join two nodes of one sort")
        for a, b in self.coref_edges:
            if sorts.get(a) != MODEL or sorts.get(b) != MODEL:
                raise PatternError(f"{self.name}: coref {a} {b} must join two model nodes")


@dataclass(frozen=True)
class Match:
    pattern: str
    assignment: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    def __getitem__(self, pid: str) -> str:
        return dict(self.assignment)[pid]

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)


# ---------------------------------------------------------------------------
# node-level tests, shared with the brute-force reference in the tests

def node_ok(np: NodePattern, graph: InterpretationGraph, node_id: str) -> bool:
    node = graph.dap.node(node_id) if np.sort == DAP else graph.tree.node(node_id)
    if np.phon is not None:
        if np.sort == DAP and node.phon is Phon.UNCONSTRAINED:
            return False
        if node.phon is not np.phon:
            return False
    for c in np.features:
        f = node.feature(c.name)
        if f is None:
            return False
        if c.values is not None and not (f.value & c.values):
            return False
        if c.polarities is not None:
            sym = f.polarity.symbol if f.polarity else NEUTRAL
            if sym not in c.polarities:
                return False
    return True


class _Relations:
    def __init__(self, graph: InterpretationGraph):
        self.graph = graph
        self.dap_parent = graph.dap.parent
        self.model_parent = graph.tree.parent
        self._ref_class: dict[str, int] | None = None

    def interp(self, d: str, m: str) -> bool:
        return self.graph.interp.get(d) == m

    def child(self, sort: str, p: str, c: str) -> bool:
        parents = self.dap_parent if sort == DAP else self.model_parent
        return parents.get(c) == p

    def coref(self, a: str, b: str) -> bool:
        if self._ref_class is None:
            self._ref_class = {}
            for k, cls in enumerate(coindex_classes(self.graph)):
                for sort, nid, name in cls:
                    if sort == "model" and name == "ref":
                        self._ref_class[nid] = k
        ka, kb = self._ref_class.get(a), self._ref_class.get(b)
        return ka is not None and ka == kb


def edges_ok(pattern: GraphPattern, rel: _Relations, assignment: dict[str, str]) -> bool:
    for d, m in pattern.interp_edges:
        if d in assignment and m in assignment and not rel.interp(assignment[d], assignment[m]):
            return False
    for p, c in pattern.dom_edges:
        if p in assignment and c in assignment:
            if not rel.child(pattern.node(p).sort, assignment[p], assignment[c]):
                return False
    for a, b in pattern.coref_edges:
        if a in assignment and b in assignment and not rel.coref(assignment[a], assignment[b]):
            return False
    return True


def candidates(np: NodePattern, graph: InterpretationGraph) -> list[str]:
    pool = graph.dap.nodes if np.sort == DAP else graph.tree.nodes
    return [n.id for n in pool if node_ok(np, graph, n.id)]


def match_pattern(pattern: GraphPattern, graph: InterpretationGraph) -> list[Match]:
    """Every assignment of pattern nodes to graph nodes meeting all
    constraints, sorted by the assigned ids in pattern declaration order."""
    pattern.validate()
    rel = _Relations(graph)
    pools = {n.id: candidates(n, graph) for n in pattern.nodes}
    order = sorted(pattern.nodes, key=lambda n: (len(pools[n.id]), pattern.nodes.index(n)))
    results = []

    def extend(k: int, assignment: dict[str, str]):
        if k == len(order):
            results.append(Match(pattern.name, tuple((n.id, assignment[n.id]) for n in pattern.nodes)))
            return
        pid = order[k].id
        for gid in pools[pid]:
            assignment[pid] = gid
            if edges_ok(pattern, rel, assignment):
                extend(k + 1, assignment)
            del assignment[pid]

    extend(0, {})
    results.sort(key=lambda m: [natural_key(g) for _, g in m.assignment])
    return results


# ---------------------------------------------------------------------------
# text syntax

_POL_WORDS = dict(POLARITY_ALIASES)
_FEAT_RE = re.compile(r"^(?P<name>[A-Za-z_][\w-]*)(?::(?P<vals>[^;]+))?(?:;pol=(?P<pols>.+))?$")


def _parse_constraint(text: str, lineno: int, col: int) -> FeatureConstraint:
    m = _FEAT_RE.match(text)
    if not m:
        raise FormatError(f"malformed feature constraint {text!r}", lineno, col)
    vals = frozenset(m["vals"].split(",")) if m["vals"] else None
    pols = None
    if m["pols"]:
        out = set()
        for p in m["pols"].split("|"):
            if p == NEUTRAL:
                out.add(NEUTRAL)
            elif p in _POL_WORDS:
                out.add(_POL_WORDS[p].symbol)
            else:
                raise FormatError(f"unknown polarity {p!r}", lineno, col)
        pols = frozenset(out)
    return FeatureConstraint(m["name"], vals, pols)


def parse_patterns(source: str) -> list[GraphPattern]:
    """Parse pattern blocks::

        pattern NAME
          node ID sort=dap|model [feat=NAME[:V1,V2][;pol=P1|P2]]... [phon=empty|nonempty] [capture]
          interp DAP_ID MODEL_ID
          child PARENT_ID CHILD_ID
          coref MODEL_ID MODEL_ID
        end
    """
    out = []
    cur = None
    for lineno, words in lines(source):
        col, kw = words[0]
        if kw == "pattern":
            if cur is not None:
                raise FormatError("nested pattern (missing 'end')", lineno, col)
            if len(words) != 2:
                raise FormatError("usage: pattern NAME", lineno, col)
            cur = dict(name=words[1][1], nodes=[], interp=[], child=[], coref=[])
        elif kw == "end":
            if cur is None:
                raise FormatError("'end' outside of a pattern", lineno, col)
            p = GraphPattern(cur["name"], tuple(cur["nodes"]), tuple(cur["interp"]),
                             tuple(cur["child"]), tuple(cur["coref"]))
            try:
                p.validate()
            except PatternError as exc:
                raise FormatError(str(exc), lineno, col) from None
            out.append(p)
            cur = None
        elif cur is None:
            raise FormatError(f"{kw!r} outside of a pattern", lineno, col)
        elif kw == "node":
            cur["nodes"].append(_parse_node(words, lineno))
        elif kw in ("interp", "child", "coref"):
            if len(words) != 3:
                raise FormatError(f"usage: {kw} ID ID", lineno, col)
            cur[kw].append((words[1][1], words[2][1]))
        else:
            raise FormatError(f"unknown keyword {kw!r}", lineno, col)
    if cur is not None:
        raise FormatError(f"pattern {cur['name']!r} is not closed")
    return out


def _parse_node(words, lineno) -> NodePattern:
    if len(words) < 3:
        raise FormatError("usage: node ID sort=dap|model ...", lineno, words[0][0])
    pid = words[1][1]
    sort = phon = None
    feats, captures = [], False
    for col, w in words[2:]:
        if w.startswith("sort="):
            sort = w[5:]
        elif w.startswith("feat="):
            feats.append(_parse_constraint(w[5:], lineno, col))
        elif w.startswith("phon="):
            try:
                phon = Phon(w[5:])
            except ValueError:
                raise FormatError(f"unknown phonology {w[5:]!r}", lineno, col) from None
            if phon is Phon.UNCONSTRAINED:
                phon = None
        elif w == "capture":
            captures = True
        else:
            raise FormatError(f"unknown node option {w!r}", lineno, col)
    if sort not in (DAP, MODEL):
        raise FormatError(f"node {pid} needs sort=dap or sort=model", lineno, words[0][0])
    return NodePattern(pid, sort, tuple(feats), phon, captures)


def load_patterns(path: str | Path) -> list[GraphPattern]:
    return parse_patterns(Path(path).read_text(encoding="utf-8"))


def builtin_patterns() -> dict[str, GraphPattern]:
    """The four dependency patterns, keyed by dependency kind."""
    path = resources.files("igdeps") / "pattern_sets" / "dependencies.pat"
    return {p.name: p for p in parse_patterns(path.read_text(encoding="utf-8"))}
