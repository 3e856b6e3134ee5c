"""HTTP service wrapping the reasoning pipeline.

Endpoints::

    GET  /health   -> 200 "ok"
    GET  /catalog  -> 200 JSON list of registered functions
    POST /reason   {"statement": ..., "strict": false} -> {"output", "diagnostics"}
    POST /infer    {"input": ..., "endpoint": optional} -> {"output", "diagnostics", "annotated"}

Module errors map to HTTP statuses: strict parse failures are 400, unknown
datasets/functions/nodes are 404, completion-endpoint failures are 502.
Requests run concurrently; the shared working memory is mutation-serialized
behind one lock.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import llm
from .errors import (
    EndpointError,
    EndpointTimeout,
    ExecutionError,
    GraphCallError,
    NotFound,
    ParseError,
    Unavailable,
    UnknownEntity,
    UnknownFunction,
    UnknownInstance,
    UnknownItem,
    UnknownNode,
    UnknownRelation,
    UnknownUser,
)

_NOT_FOUND_ERRORS = (
    NotFound,
    UnknownFunction,
    UnknownNode,
    UnknownInstance,
    UnknownEntity,
    UnknownRelation,
    UnknownUser,
    UnknownItem,
)


def _status_for(exc):
    if isinstance(exc, ParseError):
        return 400
    if isinstance(exc, (EndpointError, EndpointTimeout, Unavailable)):
        return 502
    cause = exc.cause if isinstance(exc, ExecutionError) else exc
    if isinstance(cause, _NOT_FOUND_ERRORS):
        return 404
    return 422


_CODE_STATUS = {
    "parse_error": 400,
    "not_found": 404,
    "unknown_function": 404,
    "unknown_node": 404,
    "unknown_instance": 404,
    "unknown_entity": 404,
    "unknown_relation": 404,
    "unknown_user": 404,
    "unknown_item": 404,
}


def _status_for_code(code):
    return _CODE_STATUS.get(code, 422)


def _diagnostics_payload(result):
    return [
        {
            "span": list(failure.span),
            "canonical_query": failure.canonical_query,
            "error_code": failure.error_code,
            "message": failure.message,
        }
        for failure in result.diagnostics
    ]


class ReasonService:
    def __init__(self, runtime, endpoint_url=None):
        self.runtime = runtime
        self.endpoint_url = endpoint_url
        self._lock = threading.Lock()

    def reason(self, statement, strict=False):
        with self._lock:
            return self.runtime.reason(statement, strict=strict)

    def infer(self, text, endpoint_url=None):
        url = endpoint_url or self.endpoint_url
        if not url:
            raise Unavailable("no completion endpoint configured")
        annotated = llm.annotate(text, llm.GenerationConfig(endpoint_url=url))
        return annotated, self.reason(annotated)

    def make_server(self, port, host="127.0.0.1"):
        service = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def _send(self, status, payload, content_type="application/json"):
                body = (
                    payload.encode("utf-8")
                    if isinstance(payload, str)
                    else json.dumps(payload).encode("utf-8")
                )
                self.send_response(status)
                self.send_header("Content-Type", content_type)
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def _read_json(self):
                length = int(self.headers.get("Content-Length", 0))
                raw = self.rfile.read(length).decode("utf-8")
                return json.loads(raw) if raw else {}

            def do_GET(self):
                if self.path == "/health":
                    self._send(200, "ok", content_type="text/plain")
                elif self.path == "/catalog":
                    self._send(200, service.runtime.registry.catalog())
                else:
                    self._send(404, {"error": f"no route {self.path}"})

            def do_POST(self):
                try:
                    doc = self._read_json()
                except json.JSONDecodeError as exc:
                    self._send(400, {"error": f"invalid JSON body: {exc}"})
                    return
                if self.path == "/reason":
                    statement = doc.get("statement")
                    if not isinstance(statement, str):
                        self._send(400, {"error": "body must carry a 'statement' string"})
                        return
                    strict = bool(doc.get("strict", False))
                    try:
                        result = service.reason(statement, strict=strict)
                    except GraphCallError as exc:
                        self._send(_status_for(exc), {"error": str(exc), "code": exc.code})
                        return
                    if strict and result.diagnostics:
                        # Strict requests surface the first failure as an HTTP
                        # error instead of a tolerant 200-with-diagnostics.
                        failure = result.diagnostics[0]
                        self._send(
                            _status_for_code(failure.error_code),
                            {"error": failure.message, "code": failure.error_code},
                        )
                        return
                    self._send(200, {"output": result.text, "diagnostics": _diagnostics_payload(result)})
                elif self.path == "/infer":
                    text = doc.get("input")
                    if not isinstance(text, str):
                        self._send(400, {"error": "body must carry an 'input' string"})
                        return
                    try:
                        annotated, result = service.infer(text, doc.get("endpoint"))
                    except GraphCallError as exc:
                        self._send(_status_for(exc), {"error": str(exc), "code": exc.code})
                        return
                    self._send(
                        200,
                        {
                            "output": result.text,
                            "annotated": annotated,
                            "diagnostics": _diagnostics_payload(result),
                        },
                    )
                else:
                    self._send(404, {"error": f"no route {self.path}"})

        return ThreadingHTTPServer((host, port), Handler)

    def serve_forever(self, port, host="127.0.0.1"):
        server = self.make_server(port, host=host)
        server.serve_forever()
