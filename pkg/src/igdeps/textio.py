"""Canonical line-oriented text formats.

Shared lexical pieces (features, tokens) plus serialization of DAPs,
syntax trees, interpretation graphs and dependency graphs. The grammar
and pattern formats build on the same feature syntax; see docs/formats.md.
"""

from __future__ import annotations

import re
from typing import Iterator

from .core import (
    POLARITY_ALIASES,
    Dap,
    DapNode,
    Dependency,
    DependencyGraph,
    DependencyKind,
    Feature,
    InterpretationGraph,
    ModelNode,
    Phon,
    SyntaxTree,
    Token,
    natural_key,
)


class FormatError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


_OPS = sorted(list(POLARITY_ALIASES) + ["="], key=len, reverse=True)
FEATURE_RE = re.compile(
    r"^(?P<name>[A-Za-z_][\w-]*)(?P<op>" + "|".join(re.escape(o) for o in _OPS)
    + r")(?P<value>[^\s#]+)(?:#(?P<tag>\d+))?$")
TOKEN_RE = re.compile(r"^(?P<form>.+)@(?P<pos>\d+)$")


def parse_feature(text: str, line: int = 0, column: int = 0) -> Feature:
    m = FEATURE_RE.match(text)
    if not m:
        raise FormatError(f"malformed feature {text!r}", line, column)
    atoms = m["value"].split("|")
    if any(not a for a in atoms):
        raise FormatError(f"empty value atom in {text!r}", line, column)
    pol = None if m["op"] == "=" else POLARITY_ALIASES[m["op"]]
    tag = int(m["tag"]) if m["tag"] else None
    return Feature(m["name"], frozenset(atoms), pol, tag)


def parse_token(text: str, line: int = 0, column: int = 0) -> Token:
    m = TOKEN_RE.match(text)
    if not m:
        raise FormatError(f"malformed token {text!r} (expected FORM@POSITION)", line, column)
    return Token(int(m["pos"]), m["form"])


def parse_phon(text: str, line: int = 0, column: int = 0) -> Phon:
    try:
        return Phon(text)
    except ValueError:
        raise FormatError(f"unknown phonology {text!r}", line, column) from None


def lines(source: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """Yield (line number, [(column, word), ...]) for non-blank lines,
    stripping ``#`` comments that start a word."""
    for lineno, raw in enumerate(source.splitlines(), start=1):
        words = []
        for m in re.finditer(r"\S+", raw):
            if m.group().startswith("#"):
                break
            words.append((m.start() + 1, m.group()))
        if words:
            yield lineno, words


# ---------------------------------------------------------------------------
# writers

def _feats(features) -> list[str]:
    return [str(f) for f in features]


def dap_lines(dap: Dap) -> list[str]:
    out = []
    for n in dap.nodes:
        parts = ["node", n.id, f"edap={n.edap}", *_feats(n.features)]
        if n.phon is not Phon.UNCONSTRAINED:
            parts.append(f"phon={n.phon.value}")
        if n.anchor is not None:
            parts.append(f"anchor={n.anchor}")
        out.append(" ".join(parts))
    for rel, kw in (("imm_dom", "immdom"), ("dom", "dom"), ("imm_prec", "immprec"), ("prec", "prec")):
        for a, b in getattr(dap, rel):
            out.append(f"{kw} {a} {b}")
    return out


def tree_lines(tree: SyntaxTree) -> list[str]:
    out = []
    for i in tree.preorder:
        n = tree.node(i)
        parts = ["node", n.id]
        if i in tree.parent:
            parts.append(f"parent={tree.parent[i]}")
        parts.append(f"phon={n.phon.value}")
        if n.word is not None:
            parts.append(f"word={n.word}")
        parts += _feats(n.features)
        out.append(" ".join(parts))
    return out


def write_dap(dap: Dap) -> str:
    return "\n".join(["[dap]", *dap_lines(dap)]) + "\n"


def write_tree(tree: SyntaxTree) -> str:
    return "\n".join(["[tree]", *tree_lines(tree)]) + "\n"


def write_ig(graph: InterpretationGraph) -> str:
    body = ["[dap]", *dap_lines(graph.dap), "", "[tree]", *tree_lines(graph.tree), "", "[interp]"]
    body += [f"{d} {m}" for d, m in graph.interp.items()]
    body += ["", "[end]"]
    return "\n".join(body) + "\n"


def write_depgraph(graph: DependencyGraph) -> str:
    out = ["[tokens]"] + [f"{t.position} {t.form}" for t in graph.tokens]
    out.append("[deps]")
    out += [f"{e.dependent.position} {e.governor.position} {e.label} {e.kind.value}"
            for e in graph.edges]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# readers

def _sections(source: str) -> dict[str, list[tuple[int, list[tuple[int, str]]]]]:
    out: dict[str, list] = {}
    current = None
    for lineno, words in lines(source):
        head = words[0][1]
        if head.startswith("[") and head.endswith("]"):
            current = head[1:-1]
            if current in out:
                raise FormatError(f"duplicate section [{current}]", lineno, 1)
            out[current] = []
            continue
        if current is None:
            raise FormatError("content before the first section header", lineno, words[0][0])
        out[current].append((lineno, words))
    return out


_KEYS = {"edap", "phon", "anchor", "parent", "word"}


def _node_fields(words, lineno) -> tuple[str, dict[str, tuple[int, str]], list[Feature]]:
    if len(words) < 2:
        raise FormatError("node line needs an id", lineno, words[0][0])
    node_id = words[1][1]
    opts: dict[str, tuple[int, str]] = {}
    feats: list[Feature] = []
    for col, w in words[2:]:
        key, _, val = w.partition("=")
        if key in _KEYS and val:
            opts[key] = (col, val)
        else:
            feats.append(parse_feature(w, lineno, col))
    return node_id, opts, feats


def parse_dap_section(rows) -> Dap:
    nodes, rels = [], {"immdom": [], "dom": [], "immprec": [], "prec": []}
    for lineno, words in rows:
        kw = words[0][1]
        if kw == "node":
            node_id, opts, feats = _node_fields(words, lineno)
            if "edap" not in opts:
                raise FormatError(f"DAP node {node_id} lacks edap=", lineno, words[0][0])
            col, e = opts["edap"]
            if not e.isdigit():
                raise FormatError(f"bad edap index {e!r}", lineno, col)
            phon = parse_phon(opts["phon"][1], lineno, opts["phon"][0]) if "phon" in opts else Phon.UNCONSTRAINED
            anchor = parse_token(opts["anchor"][1], lineno, opts["anchor"][0]) if "anchor" in opts else None
            nodes.append(DapNode(node_id, tuple(feats), phon, anchor, int(e)))
        elif kw in rels:
            if len(words) != 3:
                raise FormatError(f"{kw} takes two node ids", lineno, words[0][0])
            rels[kw].append((words[1][1], words[2][1]))
        else:
            raise FormatError(f"unknown keyword {kw!r}", lineno, words[0][0])
    return Dap(tuple(nodes), rels["immdom"], rels["dom"], rels["immprec"], rels["prec"])


def parse_tree_section(rows) -> SyntaxTree:
    nodes, edges = [], []
    for lineno, words in rows:
        if words[0][1] != "node":
            raise FormatError(f"unknown keyword {words[0][1]!r}", lineno, words[0][0])
        node_id, opts, feats = _node_fields(words, lineno)
        if "phon" not in opts:
            raise FormatError(f"model node {node_id} lacks phon=", lineno, words[0][0])
        phon = parse_phon(opts["phon"][1], lineno, opts["phon"][0])
        if phon is Phon.UNCONSTRAINED:
            raise FormatError("model nodes are empty or nonempty", lineno, opts["phon"][0])
        word = parse_token(opts["word"][1], lineno, opts["word"][0]) if "word" in opts else None
        nodes.append(ModelNode(node_id, tuple(feats), phon, word))
        if "parent" in opts:
            edges.append((opts["parent"][1], node_id))
    return SyntaxTree(tuple(nodes), tuple(edges))


def parse_ig(source: str) -> InterpretationGraph:
    secs = _sections(source)
    for name in ("dap", "tree", "interp", "end"):
        if name not in secs:
            raise FormatError(f"missing section [{name}] (truncated file?)")
    if secs["end"]:
        raise FormatError("content after [end]", secs["end"][0][0], 1)
    try:
        dap = parse_dap_section(secs["dap"])
        tree = parse_tree_section(secs["tree"])
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    interp = {}
    for lineno, words in secs["interp"]:
        if len(words) != 2:
            raise FormatError("interp lines are 'DAP_ID MODEL_ID'", lineno, words[0][0])
        d, m = words[0][1], words[1][1]
        if d in interp:
            raise FormatError(f"{d} interpreted twice", lineno, words[0][0])
        interp[d] = m
    return InterpretationGraph(dap, tree, interp)


def parse_dap(source: str) -> Dap:
    secs = _sections(source)
    if "dap" not in secs:
        raise FormatError("missing section [dap]")
    return parse_dap_section(secs["dap"])


def parse_tree(source: str) -> SyntaxTree:
    secs = _sections(source)
    if "tree" not in secs:
        raise FormatError("missing section [tree]")
    return parse_tree_section(secs["tree"])


def parse_depgraph(source: str) -> DependencyGraph:
    secs = _sections(source)
    if "tokens" not in secs or "deps" not in secs:
        raise FormatError("dependency graphs need [tokens] and [deps]")
    tokens = {}
    for lineno, words in secs["tokens"]:
        if len(words) != 2 or not words[0][1].isdigit():
            raise FormatError("token lines are 'POSITION FORM'", lineno, words[0][0])
        tokens[int(words[0][1])] = Token(int(words[0][1]), words[1][1])
    edges = []
    for lineno, words in secs["deps"]:
        if len(words) != 4:
            raise FormatError("dep lines are 'DEP_POS GOV_POS LABEL KIND'", lineno, words[0][0])
        try:
            dep, gov = tokens[int(words[0][1])], tokens[int(words[1][1])]
            kind = DependencyKind(words[3][1])
        except (KeyError, ValueError):
            raise FormatError("unknown token position or kind", lineno, words[0][0]) from None
        edges.append(Dependency(dep, words[2][1], gov, kind))
    return DependencyGraph(tuple(tokens.values()), tuple(edges))


# ---------------------------------------------------------------------------
# renderers for dependency output

TSV_HEADER = "dep_position\tdep_form\tgov_position\tgov_form\tlabel\tkind"


def render_tsv(graph: DependencyGraph) -> str:
    rows = [TSV_HEADER]
    for e in graph.edges:
        rows.append(f"{e.dependent.position}\t{e.dependent.form}\t{e.governor.position}"
                    f"\t{e.governor.form}\t{e.label}\t{e.kind.value}")
    return "\n".join(rows) + "\n"


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(graph: DependencyGraph, name: str = "dependencies") -> str:
    out = [f"digraph {_dot_quote(name)} {{", "  rankdir=LR;", "  node [shape=plaintext];"]
    for t in graph.tokens:
        out.append(f"  t{t.position} [label={_dot_quote(t.form)}];")
    if len(graph.tokens) > 1:
        chain = " -> ".join(f"t{t.position}" for t in graph.tokens)
        out.append(f"  {{ rank=same; edge [style=invis]; {chain}; }}")
    for e in graph.edges:
        out.append(f"  t{e.governor.position} -> t{e.dependent.position} "
                   f"[label={_dot_quote(e.label)}, comment={_dot_quote(e.kind.value)}];")
    out.append("}")
    return "\n".join(out) + "\n"


def canonical_ig(graph: InterpretationGraph) -> str:
    """Serialization with model ids replaced by their pre-order rank, so
    graphs equal up to renaming of model nodes and model tags compare equal
    as strings."""
    rename = {old: f"m{k}" for k, old in enumerate(graph.tree.preorder)}
    tags: dict[int, int] = {}
    for i in graph.tree.preorder:
        for f in graph.tree.node(i).features:
            if f.coindex is not None:
                tags.setdefault(f.coindex, len(tags) + 1)

    def retag(f: Feature) -> Feature:
        return f if f.coindex is None else f.with_(coindex=tags[f.coindex])

    nodes = tuple(ModelNode(rename[n.id], tuple(map(retag, n.features)), n.phon, n.word)
                  for n in graph.tree.nodes)
    edges = tuple((rename[a], rename[b]) for a, b in graph.tree.edges)
    interp = {d: rename.get(m, m) for d, m in graph.interp.items()}
    return write_ig(InterpretationGraph(graph.dap, SyntaxTree(nodes, edges), interp))


def sorted_ids(ids) -> list[str]:
    return sorted(ids, key=natural_key)


__all__ = [
    "FormatError", "parse_feature", "parse_token", "parse_phon", "lines",
    "write_dap", "write_tree", "write_ig", "write_depgraph",
    "parse_dap", "parse_tree", "parse_ig", "parse_depgraph",
    "render_tsv", "render_dot", "canonical_ig"
]
