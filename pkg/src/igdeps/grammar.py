"""Lexicalized grammars of elementary descriptions (EDAPs).

Loading and validation of grammar files, lexical selection and
composition of the initial description for a sentence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .core import (
    Dap,
    DapNode,
    DomainError,
    Edap,
    Phon,
    Polarity,
    Token,
    is_principal,
)
from .saturation import ValidityReport, Violation
from .textio import FormatError, lines, parse_feature, parse_phon

POLARIZABLE = frozenset({"cat", "funct"})

# validation rule ids, one per grammar principle
LEXICALIZED = "P1"
EMPTY_LEAVES = "P2"
SPINE = "P3"
FUNCT_SIBLING = "P4"
SHAPE = "TREE"
FEATURES = "FEAT"


class GrammarSyntaxError(FormatError):
    pass


class GrammarValidationError(ValueError):
    def __init__(self, entry: str, report: ValidityReport):
        self.entry, self.report = entry, report
        rules = ", ".join(sorted(report.rules()))
        first = report.violations[0].message if report.violations else ""
        super().__init__(f"entry {entry!r} violates {rules}: {first}")


class UnknownWordError(LookupError):
    def __init__(self, form: str, position: int):
        self.form, self.position = form, position
        super().__init__(f"no grammar entry for {form!r} at position {position}")


class SelectionLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class Grammar:
    entries: dict[str, tuple[Edap, ...]] = field(default_factory=dict)
    name: str = ""
    version: str = ""

    def __len__(self) -> int:
        return sum(len(v) for v in self.entries.values())

    def forms(self) -> set[str]:
        return set(self.entries)


def validate_edap(edap: Edap) -> ValidityReport:
    dap = edap.dap
    out: list[Violation] = []

    def bad(rule, nodes, msg):
        out.append(Violation(rule, tuple(nodes), msg))

    anchors = [n.id for n in dap.nodes if n.anchor is not None]
    if len(anchors) != 1:
        bad(LEXICALIZED, anchors, f"expected exactly one anchor, found {len(anchors)}")
    if edap.anchor not in dap.by_id:
        bad(LEXICALIZED, [edap.anchor], "anchor is not a node of the description")
        return ValidityReport(tuple(out))

    all_children: dict[str, list[str]] = {}
    parent: dict[str, str] = {}
    for a, b in dap.imm_dom + dap.dom:
        all_children.setdefault(a, []).append(b)
        if b in parent:
            bad(SHAPE, [b], "node has two dominators")
        parent[b] = a
    roots = [n.id for n in dap.nodes if n.id not in parent]
    if len(roots) != 1:
        bad(SHAPE, roots, f"dominance does not form a single tree ({len(roots)} roots)")

    for n in dap.nodes:
        cat = n.feature("cat")
        if cat is None:
            bad(SPINE, [n.id], "node has no cat feature")
        for f in n.features:
            if (f.name in POLARIZABLE) != f.polarizable:
                kind = "polarized" if f.name in POLARIZABLE else "neutral"
                bad(FEATURES, [n.id], f"feature {f.name} should be {kind}")
        if n.phon is Phon.EMPTY and all_children.get(n.id):
            bad(EMPTY_LEAVES, [n.id], "empty node is not a leaf")
    if out and any(v.rule == SPINE for v in out):
        return ValidityReport(tuple(out))

    anchor = dap.node(edap.anchor)
    if all_children.get(anchor.id):
        bad(LEXICALIZED, [anchor.id], "anchor is not a leaf")
    if anchor.phon is Phon.EMPTY:
        bad(LEXICALIZED, [anchor.id], "anchor is empty")
    if anchor.anchor is not None and anchor.anchor.form != edap.word_form:
        bad(LEXICALIZED, [anchor.id], f"anchor word {anchor.anchor.form!r} differs from entry")
    if not is_principal(anchor):
        bad(SPINE, [anchor.id], "anchor is not principal")

    projections = set(edap.projections())
    for n in dap.nodes:
        if n.phon is not Phon.EMPTY and is_principal(n) and n.id not in projections:
            bad(SPINE, [n.id], "non-empty principal node off the projection path")

    for n in dap.nodes:
        funct = n.feature("funct")
        if funct is None or funct.polarity is not Polarity.POSITIVE:
            continue
        p = dap.parent.get(n.id)
        sibs = [s for s in dap.children(p) if s != n.id] if p else []
        principal = [s for s in sibs if is_principal(dap.node(s))]
        if len(principal) != 1:
            bad(FUNCT_SIBLING, [n.id], f"positive funct node has {len(principal)} principal siblings")
    return ValidityReport(tuple(out))


def principal_child(edap: Edap, node: DapNode | str) -> DapNode:
    node_id = node if isinstance(node, str) else node.id
    proj = edap.projections()
    if node_id == edap.anchor:
        raise DomainError(f"{node_id} is the anchor and has no principal child")
    if node_id not in proj:
        raise DomainError(f"{node_id} is not a projection of the anchor")
    return edap.dap.node(proj[proj.index(node_id) + 1])


# ---------------------------------------------------------------------------
# grammar file format

def _parse_entries(source: str):
    """Yield (header line, word form, Edap) for every block in ``source``."""
    name = version = ""
    block = None
    seen_header = False
    for lineno, words in lines(source):
        kw, col = words[0][1], words[0][0]
        if kw == "grammar":
            if seen_header or block is not None:
                raise GrammarSyntaxError("grammar header must come first", lineno, col)
            if len(words) not in (2, 3):
                raise GrammarSyntaxError("usage: grammar NAME [VERSION]", lineno, col)
            name = words[1][1]
            version = words[2][1] if len(words) == 3 else ""
            seen_header = True
            continue
        seen_header = True
        if kw == "edap":
            if block is not None:
                raise GrammarSyntaxError("nested edap block (missing 'end')", lineno, col)
            if len(words) != 2:
                raise GrammarSyntaxError("usage: edap WORD-FORM", lineno, col)
            block = dict(line=lineno, form=words[1][1], nodes=[], rels={k: [] for k in _RELS},
                         anchors=[])
        elif kw == "end":
            if block is None:
                raise GrammarSyntaxError("'end' outside of an edap block", lineno, col)
            yield block["line"], block["form"], _build(block)
            block = None
        elif block is None:
            raise GrammarSyntaxError(f"{kw!r} outside of an edap block", lineno, col)
        elif kw == "node":
            block["nodes"].append(_parse_node(words, lineno, block))
        elif kw in _RELS:
            if len(words) != 3:
                raise GrammarSyntaxError(f"usage: {kw} NODE NODE", lineno, col)
            known = {n.id for n in block["nodes"]}
            for c, w in words[1:]:
                if w not in known:
                    raise GrammarSyntaxError(f"unknown node {w!r}", lineno, c)
            block["rels"][kw].append((words[1][1], words[2][1]))
        else:
            raise GrammarSyntaxError(f"unknown keyword {kw!r}", lineno, col)
    if block is not None:
        raise GrammarSyntaxError(f"edap {block['form']!r} is not closed", block["line"], 1)
    yield None, name, version


_RELS = ("immdom", "dom", "immprec", "prec")


def _parse_node(words, lineno, block) -> DapNode:
    if len(words) < 2:
        raise GrammarSyntaxError("node needs an id", lineno, words[0][0])
    node_id = words[1][1]
    if any(n.id == node_id for n in block["nodes"]):
        raise GrammarSyntaxError(f"duplicate node {node_id!r}", lineno, words[1][0])
    feats, phon, anchor = [], None, None
    for col, w in words[2:]:
        if w == "anchor":
            anchor = Token(0, block["form"])
            block["anchors"].append(node_id)
        elif w.startswith("phon="):
            try:
                phon = parse_phon(w[5:], lineno, col)
            except FormatError as exc:
                raise GrammarSyntaxError(str(exc).split(": ", 1)[-1], lineno, col) from None
        else:
            try:
                feats.append(parse_feature(w, lineno, col))
            except FormatError:
                raise GrammarSyntaxError(f"malformed feature {w!r}", lineno, col) from None
    if phon is None:
        phon = Phon.NONEMPTY if anchor is not None else Phon.UNCONSTRAINED
    try:
        return DapNode(node_id, tuple(feats), phon, anchor, 0)
    except ValueError as exc:
        raise GrammarSyntaxError(str(exc), lineno, words[1][0]) from None


def _build(block) -> Edap:
    r = block["rels"]
    dap = Dap(tuple(block["nodes"]), r["immdom"], r["dom"], r["immprec"], r["prec"])
    anchors = block["anchors"]
    return Edap(dap, anchors[0] if anchors else "", block["form"])


def load_grammar(source: str) -> Grammar:
    """Parse and validate a grammar text; every entry must pass
    :func:`validate_edap`."""
    entries: dict[str, list[Edap]] = {}
    name = version = ""
    for line, form, edap in _parse_entries(source):
        if line is None:
            name, version = form, edap
            continue
        report = validate_edap(edap)
        if not report.ok:
            raise GrammarValidationError(f"{form} (line {line})", report)
        entries.setdefault(form, []).append(edap)
    return Grammar({k: tuple(v) for k, v in entries.items()}, name, version)


def validate_grammar_source(source: str) -> list[tuple[str, ValidityReport]]:
    """Validate every entry without stopping at the first bad one."""
    out = []
    for line, form, edap in _parse_entries(source):
        if line is not None:
            out.append((f"{form} (line {line})", validate_edap(edap)))
    return out


def load_grammar_file(path: str | Path) -> Grammar:
    return load_grammar(Path(path).read_text(encoding="utf-8"))


def toy_grammar_path() -> Path:
    return Path(str(resources.files("igdeps") / "grammars" / "toy_fr.igg"))


def toy_grammar() -> Grammar:
    return load_grammar_file(toy_grammar_path())


# ---------------------------------------------------------------------------
# lexical selection

def instantiate(template: Edap, position: int) -> Edap:
    """Copy ``template`` with node ids ``w<position>.<local>``."""
    prefix = f"w{position}."
    nodes = tuple(
        DapNode(prefix + n.id, n.features, n.phon,
                Token(position, template.word_form) if n.anchor is not None else None,
                position)
        for n in template.dap.nodes)

    def rename(pairs):
        return [(prefix + a, prefix + b) for a, b in pairs]

    d = template.dap
    dap = Dap(nodes, rename(d.imm_dom), rename(d.dom), rename(d.imm_prec), rename(d.prec))
    return Edap(dap, prefix + template.anchor, template.word_form)


def select_and_compose(tokens: list[str], grammar: Grammar, max_selections: int = 256) -> list[Dap]:
    """One composed description per combination of lexical choices, in
    lexicographic order of entry indexes."""
    choices = []
    for pos, form in enumerate(tokens):
        if form not in grammar.entries:
            raise UnknownWordError(form, pos)
        choices.append(grammar.entries[form])
    total = 1
    for c in choices:
        total *= len(c)
    if total > max_selections:
        raise SelectionLimitError(f"{total} lexical selections exceed the cap of {max_selections}")
    out = []
    for combo in itertools.product(*choices):
        out.append(Dap.union(instantiate(t, pos).dap for pos, t in enumerate(combo)))
    return out


def edap_of(dap: Dap, edap: int) -> Edap:
    """Recover the elementary description instance ``edap`` of a composed DAP."""
    anchor = dap.anchor_of(edap)
    return Edap(dap.restrict(edap), anchor.id, anchor.anchor.form)
