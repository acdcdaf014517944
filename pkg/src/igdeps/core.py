"""Domain types: polarized features, tree descriptions, model trees,
interpretation graphs and dependency graphs.

Everything here is immutable once built. Relations are stored as sorted
tuples so that structural equality is insensitive to construction order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping


class StructuralError(ValueError):
    """A value violates a structural invariant of a core type."""


class DomainError(ValueError):
    """An operation was called outside of its domain."""


class IntegrityError(RuntimeError):
    """A graph assumed valid turned out not to be."""


class Polarity(enum.Enum):
    POSITIVE = "->"
    NEGATIVE = "<-"
    VIRTUAL = "~"
    SATURATED = "<->"

    @property
    def symbol(self) -> str:
        return self.value


# unicode forms used in the literature, accepted on input
POLARITY_ALIASES = {
    "->": Polarity.POSITIVE,
    "→": Polarity.POSITIVE,
    "<-": Polarity.NEGATIVE,
    "←": Polarity.NEGATIVE,
    "~": Polarity.VIRTUAL,
    "∼": Polarity.VIRTUAL,
    "<->": Polarity.SATURATED,
    "↔": Polarity.SATURATED,
}


class Phon(enum.Enum):
    EMPTY = "empty"
    NONEMPTY = "nonempty"
    UNCONSTRAINED = "any"


def natural_key(s: str) -> tuple:
    """Sort key treating digit runs as integers (``w10`` after ``w2``)."""
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", s))


@dataclass(frozen=True, order=True)
class Token:
    position: int
    form: str

    def __str__(self) -> str:
        return f"{self.form}@{self.position}"


@dataclass(frozen=True)
class Feature:
    """A feature occurrence. ``polarity`` is None for neutral features."""

    name: str
    value: frozenset
    polarity: Polarity | None = None
    coindex: int | None = None

    def __post_init__(self):
        if not self.value:
            raise StructuralError(f"feature {self.name!r} has an empty value")
        if not isinstance(self.value, frozenset):
            object.__setattr__(self, "value", frozenset(self.value))

    @property
    def polarizable(self) -> bool:
        return self.polarity is not None

    def with_(self, **changes) -> Feature:
        fields = dict(name=self.name, value=self.value, polarity=self.polarity,
                      coindex=self.coindex)
        fields.update(changes)
        return Feature(**fields)

    def __str__(self) -> str:
        op = self.polarity.symbol if self.polarity else "="
        s = f"{self.name}{op}{'|'.join(sorted(self.value))}"
        if self.coindex is not None:
            s += f"#{self.coindex}"
        return s


def _feature_tuple(features: Iterable[Feature]) -> tuple[Feature, ...]:
    feats = tuple(sorted(features, key=lambda f: f.name))
    names = [f.name for f in feats]
    if len(set(names)) != len(names):
        raise StructuralError(f"duplicate feature names in {names}")
    return feats


class _HasFeatures:
    features: tuple[Feature, ...]

    def feature(self, name: str) -> Feature | None:
        for f in self.features:
            if f.name == name:
                return f
        return None

    def has(self, name: str) -> bool:
        return self.feature(name) is not None


@dataclass(frozen=True)
class DapNode(_HasFeatures):
    id: str
    features: tuple[Feature, ...] = ()
    phon: Phon = Phon.UNCONSTRAINED
    anchor: Token | None = None
    edap: int = 0

    def __post_init__(self):
        object.__setattr__(self, "features", _feature_tuple(self.features))


def is_principal(node: DapNode) -> bool:
    cat = node.feature("cat")
    if cat is None:
        raise StructuralError(f"node {node.id} has no cat feature")
    return cat.polarity in (Polarity.POSITIVE, Polarity.SATURATED)


Pair = tuple[str, str]


def _pairs(pairs: Iterable[Pair]) -> tuple[Pair, ...]:
    return tuple(sorted({(a, b) for a, b in pairs},
                        key=lambda p: (natural_key(p[0]), natural_key(p[1]))))


@dataclass(frozen=True)
class Dap:
    """A polarized tree description: nodes plus four binary relations."""

    nodes: tuple[DapNode, ...]
    imm_dom: tuple[Pair, ...] = ()
    dom: tuple[Pair, ...] = ()
    imm_prec: tuple[Pair, ...] = ()
    prec: tuple[Pair, ...] = ()

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes, key=lambda n: natural_key(n.id)))
        object.__setattr__(self, "nodes", nodes)
        ids = [n.id for n in nodes]
        if len(set(ids)) != len(ids):
            raise StructuralError("duplicate DAP node ids")
        known = set(ids)
        for rel in ("imm_dom", "dom", "imm_prec", "prec"):
            pairs = _pairs(getattr(self, rel))
            object.__setattr__(self, rel, pairs)
            for a, b in pairs:
                if a not in known or b not in known:
                    raise StructuralError(f"{rel} edge ({a}, {b}) has an unknown endpoint")
        by_id = {n.id: n for n in nodes}
        for rel in ("imm_dom", "dom", "imm_prec", "prec"):
            for a, b in getattr(self, rel):
                if by_id[a].edap != by_id[b].edap:
                    raise StructuralError(f"{rel} edge ({a}, {b}) crosses EDAP instances")
        parents: dict[str, str] = {}
        for a, b in self.imm_dom:
            if b in parents:
                raise StructuralError(f"node {b} has two immediate dominators")
            parents[b] = a
        for start in parents:
            seen = {start}
            cur = start
            while cur in parents:
                cur = parents[cur]
                if cur in seen:
                    raise StructuralError(f"immediate dominance cycle through {cur}")
                seen.add(cur)

    @cached_property
    def by_id(self) -> dict[str, DapNode]:
        return {n.id: n for n in self.nodes}

    def node(self, node_id: str) -> DapNode:
        return self.by_id[node_id]

    @cached_property
    def parent(self) -> dict[str, str]:
        return {b: a for a, b in self.imm_dom}

    def children(self, node_id: str) -> list[str]:
        return [b for a, b in self.imm_dom if a == node_id]

    @cached_property
    def edaps(self) -> list[int]:
        return sorted({n.edap for n in self.nodes})

    def edap_nodes(self, edap: int) -> list[DapNode]:
        return [n for n in self.nodes if n.edap == edap]

    def anchor_of(self, edap: int) -> DapNode:
        anchors = [n for n in self.edap_nodes(edap) if n.anchor is not None]
        if len(anchors) != 1:
            raise IntegrityError(f"EDAP instance {edap} has {len(anchors)} anchors")
        return anchors[0]

    def restrict(self, edap: int) -> Dap:
        keep = {n.id for n in self.edap_nodes(edap)}

        def sub(pairs):
            return [p for p in pairs if p[0] in keep]

        return Dap(tuple(self.by_id[i] for i in keep), sub(self.imm_dom), sub(self.dom),
                   sub(self.imm_prec), sub(self.prec))

    @staticmethod
    def union(parts: Iterable[Dap]) -> Dap:
        parts = list(parts)
        return Dap(
            tuple(n for p in parts for n in p.nodes),
            tuple(e for p in parts for e in p.imm_dom),
            tuple(e for p in parts for e in p.dom),
            tuple(e for p in parts for e in p.imm_prec),
            tuple(e for p in parts for e in p.prec),
        )


@dataclass(frozen=True)
class Edap:
    """An elementary description anchored on one word form."""

    dap: Dap
    anchor: str
    word_form: str

    @property
    def spine(self) -> list[str]:
        """Node ids from the root of the anchor's tree down to the anchor."""
        path = [self.anchor]
        parent = self.dap.parent
        while path[-1] in parent:
            path.append(parent[path[-1]])
        return path[::-1]

    @property
    def max_projection(self) -> str:
        """Topmost node of the principal non-empty segment ending at the anchor."""
        top = self.anchor
        for node_id in reversed(self.spine[:-1]):
            node = self.dap.node(node_id)
            if node.phon is Phon.EMPTY or not is_principal(node):
                break
            top = node_id
        return top

    def projections(self) -> list[str]:
        spine = self.spine
        return spine[spine.index(self.max_projection):]


@dataclass(frozen=True)
class ModelNode(_HasFeatures):
    id: str
    features: tuple[Feature, ...] = ()
    phon: Phon = Phon.NONEMPTY
    word: Token | None = None

    def __post_init__(self):
        object.__setattr__(self, "features", _feature_tuple(self.features))
        if self.phon is Phon.UNCONSTRAINED:
            raise StructuralError(f"model node {self.id} has unconstrained phonology")


@dataclass(frozen=True)
class SyntaxTree:
    """Ordered tree. ``edges`` lists (parent, child) pairs with children of a
    given parent in left-to-right order."""

    nodes: tuple[ModelNode, ...]
    edges: tuple[Pair, ...] = ()

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if not ids:
            raise StructuralError("a syntax tree needs at least one node")
        if len(set(ids)) != len(ids):
            raise StructuralError("duplicate model node ids")
        known = set(ids)
        parents: dict[str, str] = {}
        for a, b in self.edges:
            if a not in known or b not in known:
                raise StructuralError(f"tree edge ({a}, {b}) has an unknown endpoint")
            if b in parents:
                raise StructuralError(f"model node {b} has two parents")
            parents[b] = a
        roots = [i for i in ids if i not in parents]
        if len(roots) != 1:
            raise StructuralError(f"a syntax tree needs exactly one root, found {roots}")
        # reachability from the root rules out cycles
        if len(self._walk(roots[0], self._children_of())) != len(ids):
            raise StructuralError("syntax tree is not connected")
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes, key=lambda n: natural_key(n.id))))

    def _children_of(self) -> dict[str, list[str]]:
        ch: dict[str, list[str]] = {n.id: [] for n in self.nodes}
        for a, b in self.edges:
            ch[a].append(b)
        return ch

    @staticmethod
    def _walk(root: str, children: Mapping[str, list[str]]) -> list[str]:
        out, stack, seen = [], [root], set()
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            out.append(cur)
            stack.extend(reversed(children[cur]))
        return out

    @cached_property
    def by_id(self) -> dict[str, ModelNode]:
        return {n.id: n for n in self.nodes}

    def node(self, node_id: str) -> ModelNode:
        return self.by_id[node_id]

    @cached_property
    def parent(self) -> dict[str, str]:
        return {b: a for a, b in self.edges}

    @cached_property
    def children(self) -> dict[str, list[str]]:
        return self._children_of()

    @cached_property
    def root(self) -> str:
        return next(n.id for n in self.nodes if n.id not in self.parent)

    @cached_property
    def preorder(self) -> list[str]:
        return self._walk(self.root, self.children)

    def ancestors(self, node_id: str) -> list[str]:
        out = []
        while node_id in self.parent:
            node_id = self.parent[node_id]
            out.append(node_id)
        return out

    @cached_property
    def leaves(self) -> list[str]:
        return [i for i in self.preorder if not self.children[i]]

    @cached_property
    def tokens(self) -> list[Token]:
        """Words of the non-empty leaves, left to right."""
        return [self.by_id[i].word for i in self.leaves
                if self.by_id[i].phon is Phon.NONEMPTY and self.by_id[i].word is not None]

    def yield_of(self, node_id: str) -> list[Token]:
        out = []
        for i in self._walk(node_id, self.children):
            n = self.by_id[i]
            if not self.children[i] and n.word is not None:
                out.append(n.word)
        return out

    def precedes(self, a: str, b: str) -> bool:
        """True iff ``a`` lies entirely to the left of ``b``."""
        anc_a = [a] + self.ancestors(a)
        anc_b = [b] + self.ancestors(b)
        if a in anc_b or b in anc_a:
            return False
        order = {n: i for i, n in enumerate(self.preorder)}
        return order[a] < order[b]


@dataclass(frozen=True)
class InterpretationGraph:
    dap: Dap
    tree: SyntaxTree
    interp: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "interp", dict(sorted(self.interp.items(),
                                                       key=lambda kv: natural_key(kv[0]))))

    @cached_property
    def inverse(self) -> dict[str, list[str]]:
        inv: dict[str, list[str]] = {n.id: [] for n in self.tree.nodes}
        for d, m in self.interp.items():
            inv.setdefault(m, []).append(d)
        return inv

    def image(self, dap_id: str) -> str:
        return self.interp[dap_id]


FeatureRef = tuple[str, str, str]  # (sort, node id, feature name)


def coindex_classes(graph: InterpretationGraph) -> list[frozenset[FeatureRef]]:
    """Partition of all feature occurrences of ``graph`` into coindexation
    classes. Tags are scoped per EDAP instance on the DAP side and global
    on the model side; a tagged DAP feature is joined to its image."""
    parent: dict[FeatureRef, FeatureRef] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra

    first_by_tag: dict[tuple, FeatureRef] = {}
    for n in graph.dap.nodes:
        for f in n.features:
            ref = ("dap", n.id, f.name)
            parent[ref] = ref
    for n in graph.tree.nodes:
        for f in n.features:
            ref = ("model", n.id, f.name)
            parent[ref] = ref
    for n in graph.dap.nodes:
        for f in n.features:
            if f.coindex is None:
                continue
            ref = ("dap", n.id, f.name)
            key = ("dap", n.edap, f.coindex)
            if key in first_by_tag:
                union(first_by_tag[key], ref)
            else:
                first_by_tag[key] = ref
            m = graph.interp.get(n.id)
            if m is not None and m in graph.tree.by_id and graph.tree.by_id[m].has(f.name):
                union(ref, ("model", m, f.name))
    for n in graph.tree.nodes:
        for f in n.features:
            if f.coindex is None:
                continue
            ref = ("model", n.id, f.name)
            key = ("model", f.coindex)
            if key in first_by_tag:
                union(first_by_tag[key], ref)
            else:
                first_by_tag[key] = ref
    groups: dict[FeatureRef, set[FeatureRef]] = {}
    for x in parent:
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(g) for g in groups.values()),
                  key=lambda g: min((s, natural_key(i), f) for s, i, f in g))


def class_of(classes: Iterable[frozenset[FeatureRef]], ref: FeatureRef) -> frozenset[FeatureRef]:
    for c in classes:
        if ref in c:
            return c
    raise KeyError(ref)


class DependencyKind(enum.Enum):
    LINEAR_CANONICAL = "linear-canonical"
    LINEAR_NONCANONICAL = "linear-noncanonical"
    NONLINEAR_CANONICAL = "nonlinear-canonical"
    NONLINEAR_NONCANONICAL = "nonlinear-noncanonical"

    @classmethod
    def of(cls, linear: bool, canonical: bool) -> DependencyKind:
        return {
            (True, True): cls.LINEAR_CANONICAL,
            (True, False): cls.LINEAR_NONCANONICAL,
            (False, True): cls.NONLINEAR_CANONICAL,
            (False, False): cls.NONLINEAR_NONCANONICAL,
        }[(linear, canonical)]


@dataclass(frozen=True)
class Dependency:
    dependent: Token
    label: str
    governor: Token
    kind: DependencyKind = DependencyKind.LINEAR_CANONICAL

    def sort_key(self) -> tuple:
        return (self.dependent, self.label, self.governor, self.kind.value)

    def __str__(self) -> str:
        return f"{self.label}({self.governor.form}->{self.dependent.form})"


@dataclass(frozen=True)
class DependencyGraph:
    tokens: tuple[Token, ...]
    edges: tuple[Dependency, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(sorted(self.tokens)))
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges), key=Dependency.sort_key)))

    def degree(self, token: Token) -> int:
        return sum((e.governor == token) + (e.dependent == token) for e in self.edges)

    def has_cycle(self) -> bool:
        succ: dict[Token, set[Token]] = {}
        for e in self.edges:
            succ.setdefault(e.governor, set()).add(e.dependent)
        state: dict[Token, int] = {}

        def visit(t: Token) -> bool:
            state[t] = 1
            for u in sorted(succ.get(t, ())):
                s = state.get(u, 0)
                if s == 1 or (s == 0 and visit(u)):
                    return True
            state[t] = 2
            return False

        return any(state.get(t, 0) == 0 and visit(t) for t in self.tokens)

    def triples(self) -> set[tuple[str, str, str]]:
        """(label, governor form, dependent form) view used in examples."""
        return {(e.label, e.governor.form, e.dependent.form) for e in self.edges}

    def __iter__(self) -> Iterator[Dependency]:
        return iter(self.edges)
