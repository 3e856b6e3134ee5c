"""Exception taxonomy shared across the package.

Every error carries a short stable ``code`` string; the executor uses it when
rendering failures into statements and diagnostics sidecars.
"""


class GraphCallError(Exception):
    code = "error"


class ParseError(GraphCallError):
    """Raised in strict parsing when a bracketed span is malformed."""

    code = "parse_error"

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = tuple(expected)


# --- graph store ---------------------------------------------------------

class NotFound(GraphCallError):
    code = "not_found"


class SchemaError(GraphCallError):
    code = "schema_error"

    def __init__(self, field, reason):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


class InvariantViolation(GraphCallError):
    code = "invariant_violation"

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class UnknownNode(GraphCallError):
    code = "unknown_node"


class UnknownLink(GraphCallError):
    code = "unknown_link"


class UnknownInstance(GraphCallError):
    code = "unknown_instance"


class ArityError(GraphCallError):
    code = "arity_error"


# --- graph property reasoning --------------------------------------------

class DegenerateGraph(GraphCallError):
    code = "degenerate_graph"


class DisconnectedGraph(GraphCallError):
    code = "disconnected_graph"


class NoPath(GraphCallError):
    code = "no_path"


# --- community detection --------------------------------------------------

class BadK(GraphCallError):
    code = "bad_k"


class EmptyGraph(GraphCallError):
    code = "empty_graph"


# --- recommenders ----------------------------------------------------------

class NotBipartite(GraphCallError):
    code = "not_bipartite"


class EmptyTraining(GraphCallError):
    code = "empty_training"


class UnknownUser(GraphCallError):
    code = "unknown_user"


class UnknownItem(GraphCallError):
    code = "unknown_item"


# --- knowledge graphs -------------------------------------------------------

class MissingRelationLabels(GraphCallError):
    code = "missing_relation_labels"


class UnknownEntity(GraphCallError):
    code = "unknown_entity"


class UnknownRelation(GraphCallError):
    code = "unknown_relation"


# --- baseline classifiers ---------------------------------------------------

class NoLabeledNodes(GraphCallError):
    code = "no_labeled_nodes"


class EmptyTrainingSet(GraphCallError):
    code = "empty_training_set"


# --- model registry ----------------------------------------------------------

class DuplicateKey(GraphCallError):
    code = "duplicate_key"


class MalformedFunctionName(GraphCallError):
    code = "malformed_function_name"


class UnknownFunction(GraphCallError):
    code = "unknown_function"

    def __init__(self, name, suggestions=()):
        self.name = name
        self.suggestions = tuple(suggestions)
        hint = f" (did you mean: {', '.join(self.suggestions)}?)" if self.suggestions else ""
        super().__init__(f"unknown function {name!r}{hint}")


# --- executor ----------------------------------------------------------------

class ExecutionError(GraphCallError):
    code = "execution_error"

    def __init__(self, query, cause):
        self.query = query
        self.cause = cause
        super().__init__(f"{query}: {cause}")

    @property
    def cause_code(self):
        return getattr(self.cause, "code", "error")


# --- prompt pipeline -----------------------------------------------------------

class SlotUnfillable(GraphCallError):
    code = "slot_unfillable"


class TemplateParseError(GraphCallError):
    code = "template_parse_error"


class TooFewPairs(GraphCallError):
    code = "too_few_pairs"


# --- evaluation ------------------------------------------------------------------

class LengthMismatch(GraphCallError):
    code = "length_mismatch"


# --- completion endpoint client ----------------------------------------------------

class EndpointTimeout(GraphCallError):
    code = "timeout"


class EndpointError(GraphCallError):
    code = "endpoint_error"

    def __init__(self, status, body):
        self.status = status
        self.body = body
        super().__init__(f"endpoint returned {status}: {body[:200]}")


class Unavailable(GraphCallError):
    code = "unavailable"
