"""Thin client for an external completion endpoint.

The endpoint annotates a plain input statement with calls; this client sends
one completion request and returns the endpoint's text verbatim, never
rewriting or re-ranking it.  Wire format: POST a JSON body
``{"prompt": ..., "num_beams": ..., "top_k": ..., "top_p": ...,
"temperature": ..., "max_length": ...}`` and read ``{"text": ...}`` back.
"""

from __future__ import annotations

import json
import socket
import time
import urllib.error
import urllib.request
from dataclasses import dataclass

from .errors import EndpointError, EndpointTimeout, Unavailable


@dataclass
class GenerationConfig:
    endpoint_url: str
    num_beams: int = 5
    top_k: int = 5
    top_p: float = 0.95
    temperature: float = 1.9
    max_length: int = 128
    timeout: float = 10.0
    retries: int = 2
    retry_wait: float = 0.2

    def __post_init__(self):
        if not (0 < self.top_p <= 1):
            raise ValueError(f"top_p must be in (0, 1], got {self.top_p}")
        if self.temperature <= 0:
            raise ValueError(f"temperature must be > 0, got {self.temperature}")
        if self.max_length < 1:
            raise ValueError(f"max_length must be >= 1, got {self.max_length}")

    def request_body(self, prompt):
        return {
            "prompt": prompt,
            "num_beams": self.num_beams,
            "top_k": self.top_k,
            "top_p": self.top_p,
            "temperature": self.temperature,
            "max_length": self.max_length,
        }


def annotate(text, cfg):
    """Send ``text`` for annotation and return the completion verbatim.

    Transport failures and 5xx responses are retried ``cfg.retries`` times;
    when all attempts fail, :class:`Unavailable` is raised with the last
    cause.  A 4xx response raises :class:`EndpointError` immediately.
    """
    body = json.dumps(cfg.request_body(text)).encode("utf-8")
    last = None
    for attempt in range(cfg.retries + 1):
        if attempt and cfg.retry_wait:
            time.sleep(cfg.retry_wait)
        request = urllib.request.Request(
            cfg.endpoint_url,
            data=body,
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        try:
            with urllib.request.urlopen(request, timeout=cfg.timeout) as response:
                payload = response.read().decode("utf-8")
        except urllib.error.HTTPError as exc:
            detail = exc.read().decode("utf-8", errors="replace")
            if 400 <= exc.code < 500:
                raise EndpointError(exc.code, detail) from exc
            last = EndpointError(exc.code, detail)
            continue
        except (urllib.error.URLError, socket.timeout, TimeoutError, ConnectionError) as exc:
            reason = getattr(exc, "reason", exc)
            if isinstance(reason, (socket.timeout, TimeoutError)):
                last = EndpointTimeout(f"no response within {cfg.timeout}s")
            else:
                last = Unavailable(str(exc))
            continue
        try:
            doc = json.loads(payload)
            return doc["text"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise EndpointError(200, f"malformed completion payload: {payload[:200]}") from exc
    raise Unavailable(f"endpoint failed after {cfg.retries + 1} attempts: {last}")
