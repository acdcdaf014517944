"""Dependency graphs from Interaction Grammar interpretation graphs."""

from .core import (
    Dap,
    DapNode,
    Dependency,
    DependencyGraph,
    DependencyKind,
    Edap,
    Feature,
    InterpretationGraph,
    ModelNode,
    Phon,
    Polarity,
    SyntaxTree,
    Token,
)
from .extract import extract_by_patterns, extract_dependencies
from .grammar import load_grammar, select_and_compose, toy_grammar
from .saturation import check_interpretation
from .solver import SolverConfig, find_models

__all__ = [
    "Dap", "DapNode", "Dependency", "DependencyGraph", "DependencyKind", "Edap", "Feature",
    "InterpretationGraph", "ModelNode", "Phon", "Polarity", "SyntaxTree", "Token",
    "check_interpretation", "extract_by_patterns", "extract_dependencies", "find_models",
    "load_grammar", "select_and_compose", "toy_grammar", "SolverConfig",
]
