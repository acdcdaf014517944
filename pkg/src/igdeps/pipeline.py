"""End-to-end analysis: lexical selection, model search, extraction."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import InterpretationGraph
from .extract import Extraction, extract_dependencies
from .grammar import Grammar, select_and_compose
from .solver import EXHAUSTED, SolverConfig, find_models


@dataclass(frozen=True)
class AnalysisConfig:
    solver: SolverConfig = field(default_factory=SolverConfig)
    max_selections: int = 256


@dataclass
class Analysis:
    tokens: list[str]
    models: list[InterpretationGraph] = field(default_factory=list)
    extractions: list[Extraction] = field(default_factory=list)
    complete: bool = True

    @property
    def best(self) -> int | None:
        """Index of the first model whose extraction raised no error."""
        for k, e in enumerate(self.extractions):
            if e.ok:
                return k
        return None


def analyze(tokens: list[str], grammar: Grammar, cfg: AnalysisConfig | None = None) -> Analysis:
    """Models of every lexical selection, in selection order, each with its
    dependency extraction. Raises UnknownWordError for unknown forms."""
    cfg = cfg or AnalysisConfig()
    out = Analysis(list(tokens))
    remaining = cfg.solver.max_models
    for dap in select_and_compose(tokens, grammar, cfg.max_selections):
        if remaining <= 0:
            out.complete = False
            break
        solver_cfg = SolverConfig(remaining, cfg.solver.max_merge_depth, cfg.solver.timeout_ms,
                                  cfg.solver.deterministic_seed_order, cfg.solver.max_value_choices)
        result = find_models(dap, solver_cfg)
        out.complete &= result.status == EXHAUSTED
        out.models.extend(result.models)
        remaining -= len(result.models)
    out.extractions = [extract_dependencies(g) for g in out.models]
    return out
