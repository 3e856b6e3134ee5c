"""Runtime for graph-reasoning calls embedded in natural-language statements.

The package parses statements containing bracketed GL/GR calls, resolves them
against a graph data hub and a model hub, executes them with a bounded FIFO
working memory, and splices rendered results back into the text.  It also
ships the prompt-dataset pipeline and the evaluation harness built around the
same call convention.
"""

from .dsl import (
    ApiCall,
    Bare,
    EntityRef,
    Number,
    ParsedQuery,
    Quoted,
    SetLiteral,
    Statement,
    canonicalize,
    extract_queries,
    parse_statement,
    serialize,
)
from .errors import GraphCallError, ParseError
from .executor import Executor, WorkingMemory
from .runtime import Runtime
from .store import GraphDataset, GraphHandle, GraphInstanceSet, GraphStore
from .values import ReasoningValue

__all__ = [
    "ApiCall",
    "Bare",
    "EntityRef",
    "Executor",
    "GraphCallError",
    "GraphDataset",
    "GraphHandle",
    "GraphInstanceSet",
    "GraphStore",
    "Number",
    "ParseError",
    "ParsedQuery",
    "Quoted",
    "ReasoningValue",
    "Runtime",
    "SetLiteral",
    "Statement",
    "WorkingMemory",
    "canonicalize",
    "extract_queries",
    "parse_statement",
    "serialize",
]

__version__ = "0.1.0"
