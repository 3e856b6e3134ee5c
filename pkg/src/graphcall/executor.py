"""Query execution: recursive GL/GR evaluation, the FIFO working memory, and
statement post-processing.

Every executed call is cached in the working memory under its canonical text;
a later identical query is answered from the memory without re-execution.
The memory is bounded and evicts in insertion order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import dsl, values
from .errors import ArityError, ExecutionError, GraphCallError, UnknownFunction


class WorkingMemory:
    """Bounded insertion-ordered cache of canonical query -> reasoning value.

    Rewriting an existing key refreshes its value in place (its eviction slot
    is unchanged); when a new key would exceed the capacity, the oldest entry
    is evicted first.
    """

    def __init__(self, capacity=128):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self._entries = {}

    def __len__(self):
        return len(self._entries)

    def __contains__(self, key):
        return key in self._entries

    def get(self, key):
        return self._entries.get(key)

    def put(self, key, value):
        if key in self._entries:
            self._entries[key] = value
            return
        if len(self._entries) >= self.capacity:
            oldest = next(iter(self._entries))
            del self._entries[oldest]
        self._entries[key] = value

    def keys(self):
        return list(self._entries)


@dataclass
class RuntimeContext:
    """What handlers need at dispatch time: data access, model memoization,
    and the seed that keeps trained-on-demand models deterministic."""

    store: object
    seed: int = 0
    model_cache: dict = field(default_factory=dict)

    def materialize(self, handle):
        return self.store.materialize(handle)


@dataclass(frozen=True)
class CallFailure:
    span: tuple
    canonical_query: str
    error_code: str
    message: str


@dataclass(frozen=True)
class PostProcessed:
    text: str
    diagnostics: tuple

    @property
    def ok(self):
        return not self.diagnostics


class Executor:
    """Evaluates parsed queries against the data hub and model registry."""

    def __init__(self, store, registry, memory=None, seed=0):
        self.store = store
        self.registry = registry
        self.memory = memory
        self.ctx = RuntimeContext(store=store, seed=seed)
        self.execution_count = 0

    def execute(self, query):
        """Evaluate one query (or raw call), consulting the working memory."""
        call = query.call if isinstance(query, dsl.ParsedQuery) else query
        return self._eval(call)

    def _eval(self, call):
        key = dsl.canonicalize(call)
        if self.memory is not None:
            hit = self.memory.get(key)
            if hit is not None:
                return hit
        value = self._run(call, key)
        if self.memory is not None:
            self.memory.put(key, value)
        return value

    def _run(self, call, key):
        self.execution_count += 1
        func = call.func.upper()
        try:
            if func == "GL":
                return values.graph_ref(self.store.execute_gl(call))
            if func == "GR":
                return self._run_gr(call)
        except (UnknownFunction, ArityError, ExecutionError):
            raise
        except GraphCallError as exc:
            raise ExecutionError(key, exc) from exc
        raise UnknownFunction(call.func, suggestions=("GL", "GR"))

    def _run_gr(self, call):
        if len(call.args) < 2:
            raise ArityError("GR needs a graph argument and a 'domain:function' name")
        graph_arg = call.args[0]
        if isinstance(graph_arg, dsl.ApiCall):
            graph_value = self._eval(graph_arg)
        else:
            raise ArityError(
                "the graph argument of GR must be a GL call, e.g. GR(GL(\"cora\"), ...)"
            )
        if graph_value.kind != "graph_ref":
            raise ArityError(f"the graph argument of GR produced a {graph_value.kind}, not a graph")
        handle = graph_value.payload

        name_arg = call.args[1]
        if not isinstance(name_arg, (dsl.Quoted, dsl.Bare)):
            raise ArityError("the second GR argument must be a 'domain:function' string")
        descriptor = self.registry.resolve(name_arg.text)

        rest = [
            self._eval(arg) if isinstance(arg, dsl.ApiCall) else arg for arg in call.args[2:]
        ]
        descriptor.validate_args(rest)
        return descriptor.handler(self.ctx, handle, rest)

    def post_process(self, stmt):
        """Replace tagged calls with rendered results; untagged calls execute
        silently.  Failures render as ``<reasoning-error: code>`` when a result
        insertion was requested, and always land in the diagnostics sidecar.
        """
        parts = []
        failures = []
        for seg in stmt.segments:
            if isinstance(seg, dsl.TextSegment):
                parts.append(seg.text)
                continue
            call = seg.call
            key = dsl.canonicalize(call)
            try:
                value = self._eval(call)
            except GraphCallError as exc:
                code = exc.cause_code if isinstance(exc, ExecutionError) else exc.code
                failures.append(
                    CallFailure(
                        span=seg.span,
                        canonical_query=key,
                        error_code=code,
                        message=str(exc),
                    )
                )
                if call.insert_output:
                    parts.append(f"<reasoning-error: {code}>")
                continue
            if call.insert_output:
                parts.append(values.render_value(value))
        return PostProcessed(text="".join(parts), diagnostics=tuple(failures))

    def reason(self, text, strict=False):
        """Parse, execute, and post-process one statement.

        Tolerant-mode parse diagnostics join the sidecar with error code
        ``parse_error`` and an empty canonical query.
        """
        stmt = dsl.parse_statement(text, strict=strict)
        result = self.post_process(stmt)
        if not stmt.diagnostics:
            return result
        parse_failures = tuple(
            CallFailure(
                span=(diag.offset, diag.offset),
                canonical_query="",
                error_code="parse_error",
                message=diag.message,
            )
            for diag in stmt.diagnostics
        )
        return PostProcessed(text=result.text, diagnostics=parse_failures + result.diagnostics)
