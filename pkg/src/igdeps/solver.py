"""Desk-scale model finder for composed descriptions.

A model is obtained by merging DAP nodes: every class of merged nodes
becomes one model node. The search branches on how to saturate one
polarized feature at a time and propagates the merges forced by
immediate dominance (two nodes in one class force their parents into one
class). Once every polarity is saturated the partition is final; it is
then laid out as an ordered tree, or rejected.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections import Counter
from dataclasses import dataclass, field

from .core import (
    Dap,
    Feature,
    IntegrityError,
    InterpretationGraph,
    ModelNode,
    Phon,
    Polarity,
    SyntaxTree,
    natural_key,
)
from .saturation import check_interpretation
from .textio import tree_lines

log = logging.getLogger(__name__)

EXHAUSTED = "exhausted"
BOUNDED = "bounded"
TIMEOUT = "timeout"


@dataclass(frozen=True)
class SolverConfig:
    max_models: int = 16
    max_merge_depth: int = 256
    timeout_ms: int = 20_000
    deterministic_seed_order: bool = True
    max_value_choices: int = 64

    def __post_init__(self):
        for name in ("max_models", "max_merge_depth", "timeout_ms", "max_value_choices"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not self.deterministic_seed_order:
            raise ValueError("only deterministic search order is supported")


@dataclass
class SolverResult:
    models: list[InterpretationGraph] = field(default_factory=list)
    status: str = EXHAUSTED
    explored: int = 0

    @property
    def complete(self) -> bool:
        return self.status == EXHAUSTED

    def __iter__(self):
        return iter(self.models)

    def __len__(self) -> int:
        return len(self.models)

    def __getitem__(self, i):
        return self.models[i]


class _Stop(Exception):
    pass


Partition = dict  # node id -> representative id


class _Search:
    def __init__(self, dap: Dap, cfg: SolverConfig):
        self.dap, self.cfg = dap, cfg
        self.ids = [n.id for n in dap.nodes]
        self.key = {i: natural_key(i) for i in self.ids}
        self.parent = dap.parent
        self.polar_names = sorted({f.name for n in dap.nodes for f in n.features if f.polarizable})
        self.deadline = time.monotonic() + cfg.timeout_ms / 1000
        self.seen: set[frozenset] = set()
        self.found: dict[str, tuple[list, InterpretationGraph]] = {}
        self.status = EXHAUSTED
        self.explored = 0

    # -- class summaries -------------------------------------------------

    def members(self, part: Partition) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for i in self.ids:
            out.setdefault(part[i], []).append(i)
        return out

    def compatible(self, nodes: list[str]) -> bool:
        ns = [self.dap.node(i) for i in nodes]
        if sum(n.anchor is not None for n in ns) > 1:
            return False
        phons = {n.phon for n in ns}
        if Phon.EMPTY in phons and Phon.NONEMPTY in phons:
            return False
        by_name: dict[str, list[Feature]] = {}
        for n in ns:
            for f in n.features:
                by_name.setdefault(f.name, []).append(f)
        for name, fs in by_name.items():
            if not frozenset.intersection(*(f.value for f in fs)):
                return False
            pols = [f.polarity for f in fs]
            if None in pols:
                if any(p is not None for p in pols):
                    return False
                continue
            c = Counter(pols)
            pos, neg, sat = c[Polarity.POSITIVE], c[Polarity.NEGATIVE], c[Polarity.SATURATED]
            if pos > 1 or neg > 1 or sat > 1 or (sat and (pos or neg)):
                return False
        return True

    def polarity_state(self, nodes: list[str], name: str) -> Counter | None:
        c: Counter = Counter()
        present = False
        for i in nodes:
            f = self.dap.node(i).feature(name)
            if f is not None and f.polarizable:
                present = True
                c[f.polarity] += 1
        return c if present else None

    @staticmethod
    def saturated(c: Counter) -> bool:
        return c[Polarity.SATURATED] == 1 or (c[Polarity.POSITIVE] == 1 and c[Polarity.NEGATIVE] == 1)

    # -- merging ---------------------------------------------------------

    def merge(self, part: Partition, a: str, b: str) -> Partition | None:
        part = dict(part)
        work = [(a, b)]
        while work:
            x, y = work.pop()
            rx, ry = part[x], part[y]
            if rx == ry:
                continue
            union = [i for i in self.ids if part[i] in (rx, ry)]
            if not self.compatible(union):
                return None
            rep = min(rx, ry, key=self.key.__getitem__)
            for i in union:
                part[i] = rep
            parents = sorted({part[self.parent[i]] for i in union if i in self.parent},
                             key=self.key.__getitem__)
            for p in parents[1:]:
                work.append((parents[0], p))
        return part if self.well_formed(part) else None

    def well_formed(self, part: Partition) -> bool:
        up: dict[str, str] = {}
        has_child = set()
        for child, par in self.parent.items():
            rc, rp = part[child], part[par]
            if rc == rp:
                return False
            up[rc] = rp
            has_child.add(rp)
        for i in self.ids:
            if self.dap.node(i).anchor is not None and part[i] in has_child:
                return False
        for start in up:
            seen, cur = {start}, start
            while cur in up:
                cur = up[cur]
                if cur in seen:
                    return False
                seen.add(cur)
        return True

    # -- search ----------------------------------------------------------

    def pending(self, part: Partition):
        """The unsaturated (class, feature) with the fewest partner
        candidates, with those candidates; None when all are saturated."""
        groups = self.members(part)
        reps = sorted(groups, key=self.key.__getitem__)
        states = {r: {n: self.polarity_state(groups[r], n) for n in self.polar_names} for r in reps}
        best = None
        for r in reps:
            for name in self.polar_names:
                c = states[r][name]
                if c is None or self.saturated(c):
                    continue
                cands = []
                for o in reps:
                    if o == r:
                        continue
                    oc = states[o][name]
                    if oc is None:
                        continue
                    if c[Polarity.POSITIVE]:
                        ok = oc[Polarity.NEGATIVE] and not oc[Polarity.POSITIVE] and not oc[Polarity.SATURATED]
                    elif c[Polarity.NEGATIVE]:
                        ok = oc[Polarity.POSITIVE] and not oc[Polarity.NEGATIVE] and not oc[Polarity.SATURATED]
                    else:
                        ok = oc[Polarity.POSITIVE] or oc[Polarity.NEGATIVE] or oc[Polarity.SATURATED]
                    if ok:
                        cands.append(o)
                if best is None or len(cands) < len(best[2]):
                    best = (r, name, cands)
                if not cands:
                    return best
        return best

    def run(self) -> None:
        if not self.globally_balanced():
            return
        start = {i: i for i in self.ids}
        if not self.well_formed(start):
            return
        self.dfs(start, [], 0)

    def globally_balanced(self) -> bool:
        for name in self.polar_names:
            c = Counter(f.polarity for n in self.dap.nodes for f in n.features
                        if f.name == name and f.polarizable)
            if c[Polarity.POSITIVE] != c[Polarity.NEGATIVE]:
                return False
        return True

    def dfs(self, part: Partition, trace: list, depth: int) -> None:
        if time.monotonic() > self.deadline:
            self.status = TIMEOUT
            raise _Stop
        key = frozenset(frozenset(g) for g in self.members(part).values())
        if key in self.seen:
            return
        self.seen.add(key)
        self.explored += 1
        todo = self.pending(part)
        if todo is None:
            self.finish(part, trace)
            return
        if depth >= self.cfg.max_merge_depth:
            self.status = BOUNDED
            return
        r, name, cands = todo
        for o in cands:
            nxt = self.merge(part, r, o)
            if nxt is not None:
                self.dfs(nxt, trace + [(r, o)], depth + 1)

    # -- model construction ---------------------------------------------

    def finish(self, part: Partition, trace: list) -> None:
        for graph in build_models(self.dap, part, self.cfg.max_value_choices):
            report = check_interpretation(graph)
            if not report.ok:
                raise IntegrityError("solver produced an invalid graph:\n" + report.render())
            sig = "\n".join(tree_lines(graph.tree))
            if sig in self.found:
                continue
            self.found[sig] = (trace, graph)
            if len(self.found) >= self.cfg.max_models:
                self.status = BOUNDED
                raise _Stop


def find_models(dap: Dap, cfg: SolverConfig | None = None) -> SolverResult:
    """Valid interpretation graphs of ``dap``, in canonical order."""
    cfg = cfg or SolverConfig()
    search = _Search(dap, cfg)
    try:
        search.run()
    except _Stop:
        pass
    ordered = sorted(search.found.values(),
                     key=lambda tg: [(natural_key(a), natural_key(b)) for a, b in tg[0]])
    log.debug("explored %d partitions, %d models, %s", search.explored, len(ordered), search.status)
    return SolverResult([g for _, g in ordered], search.status, search.explored)


# ---------------------------------------------------------------------------
# laying out a final partition

def build_models(dap: Dap, part: Partition, max_choices: int = 64) -> list[InterpretationGraph]:
    """Ordered trees realizing the partition ``part`` (node id -> class rep).

    Sibling order is the lexicographically least admissible one, with
    word-bearing subtrees ordered by position and empty subtrees placed as
    late as the constraints allow. Underspecified feature values yield
    one tree per choice of atoms.
    """
    classes: dict[str, list[str]] = {}
    for n in dap.nodes:
        classes.setdefault(part[n.id], []).append(n.id)
    up: dict[str, str] = {}
    for child, par in dap.parent.items():
        up[part[child]] = part[par]
    roots = [c for c in classes if c not in up]
    if len(roots) != 1:
        return []
    root = roots[0]
    down: dict[str, list[str]] = {c: [] for c in classes}
    for c, p in up.items():
        down[p].append(c)

    positions: dict[str, list[int]] = {}

    def collect(c: str) -> list[int]:
        pos = [dap.node(i).anchor.position for i in classes[c] if dap.node(i).anchor is not None]
        for k in down[c]:
            pos += collect(k)
        positions[c] = sorted(pos)
        return positions[c]

    collect(root)
    for c, pos in positions.items():
        if pos and pos != list(range(pos[0], pos[-1] + 1)):
            return []
        phon = Phon.NONEMPTY if pos else Phon.EMPTY
        for i in classes[c]:
            if dap.node(i).phon not in (Phon.UNCONSTRAINED, phon):
                return []

    def ancestors(c):
        out = []
        while c in up:
            c = up[c]
            out.append(c)
        return out

    for x, y in dap.dom:
        if part[x] not in ancestors(part[y]):
            return []

    before: dict[str, set[tuple[str, str]]] = {c: set() for c in classes}
    adjacent: dict[str, set[tuple[str, str]]] = {c: set() for c in classes}
    for x, y in dap.imm_prec:
        cx, cy = part[x], part[y]
        if cx == cy or up.get(cx) is None or up.get(cx) != up.get(cy):
            return []
        adjacent[up[cx]].add((cx, cy))
    for x, y in dap.prec:
        cx, cy = part[x], part[y]
        ax, ay = [cx] + ancestors(cx), [cy] + ancestors(cy)
        if cx in ay or cy in ax:
            return []
        lca = next(a for a in ax if a in ay)
        bx, by = ax[ax.index(lca) - 1], ay[ay.index(lca) - 1]
        before[lca].add((bx, by))

    order: dict[str, list[str]] = {}
    for c, kids in down.items():
        if not kids:
            order[c] = []
            continue
        ranked = sorted(kids, key=lambda k: (0, positions[k][0]) if positions[k]
                        else (1, natural_key(k)))
        chosen = None
        for perm in itertools.permutations(ranked):
            idx = {k: n for n, k in enumerate(perm)}
            words = [positions[k][0] for k in perm if positions[k]]
            if words != sorted(words):
                continue
            if any(idx[a] > idx[b] for a, b in before[c]):
                continue
            if any(idx[b] != idx[a] + 1 for a, b in adjacent[c]):
                continue
            chosen = list(perm)
            break
        if chosen is None:
            return []
        order[c] = chosen

    preorder = []
    stack = [root]
    while stack:
        c = stack.pop()
        preorder.append(c)
        stack.extend(reversed(order[c]))
    model_id = {c: f"m{k}" for k, c in enumerate(preorder)}

    # feature values, intersected over coindexation groups
    values: dict[tuple[str, str], frozenset] = {}
    polar: dict[tuple[str, str], bool] = {}
    for c, ids in classes.items():
        for i in ids:
            for f in dap.node(i).features:
                k = (c, f.name)
                values[k] = values[k] & f.value if k in values else f.value
                polar[k] = f.polarizable
    group: dict[tuple[str, str], tuple[str, str]] = {k: k for k in values}

    def find(k):
        while group[k] != k:
            k = group[k]
        return k

    first: dict[tuple[int, int], tuple[str, str]] = {}
    for n in dap.nodes:
        for f in n.features:
            if f.coindex is None:
                continue
            k = (part[n.id], f.name)
            tag = (n.edap, f.coindex)
            if tag in first:
                ra, rb = find(first[tag]), find(k)
                if ra != rb:
                    group[rb] = ra
            else:
                first[tag] = k
    tagged = {(part[n.id], f.name) for n in dap.nodes for f in n.features if f.coindex is not None}
    members: dict[tuple, list] = {}
    for k in values:
        members.setdefault(find(k), []).append(k)
    free = []
    for g, ks in sorted(members.items(), key=lambda kv: (model_id[kv[0][0]], kv[0][1])):
        v = frozenset.intersection(*(values[k] for k in ks))
        if not v:
            return []
        free.append((ks, sorted(v)))
    combos = itertools.islice(itertools.product(*(atoms for _, atoms in free)), max_choices)

    tag_of: dict[tuple, int] = {}
    for c in preorder:
        for name in sorted(n for (cc, n) in values if cc == c):
            k = (c, name)
            if k in tagged:
                g = find(k)
                tag_of.setdefault(g, len(tag_of) + 1)

    out = []
    for combo in combos:
        chosen_value = {}
        for (ks, _), atom in zip(free, combo):
            for k in ks:
                chosen_value[k] = frozenset([atom])
        nodes = []
        for c in preorder:
            feats = []
            for (cc, name), _ in sorted(values.items()):
                if cc != c:
                    continue
                k = (c, name)
                feats.append(Feature(name, chosen_value[k],
                                     Polarity.SATURATED if polar[k] else None,
                                     tag_of.get(find(k)) if k in tagged else None))
            word = next((dap.node(i).anchor for i in classes[c] if dap.node(i).anchor is not None), None)
            phon = Phon.NONEMPTY if positions[c] else Phon.EMPTY
            nodes.append(ModelNode(model_id[c], tuple(feats), phon, word))
        edges = tuple((model_id[c], model_id[k]) for c in preorder for k in order[c])
        tree = SyntaxTree(tuple(nodes), edges)
        interp = {n.id: model_id[part[n.id]] for n in dap.nodes}
        out.append(InterpretationGraph(dap, tree, interp))
    return out
