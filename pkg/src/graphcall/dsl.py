"""Call convention for graph-reasoning statements.

Statements may embed bracketed calls whose results can be spliced back into
the text, e.g.::

    The first paper in Cora has a topic of [GR(GL("cora"), "graph_bert:topic", {Paper#1})-->r].

Grammar (see docs/grammar.md for the full EBNF)::

    statement := (text | '[' call ('-->' ident)? ']')*
    call      := ident '(' (arg (',' arg)*)? ')'
    arg       := call | string | set | entityref | number | bare

Parsing is tolerant by default: a bracketed span that starts like a call but
is malformed stays literal text and is reported as a diagnostic.  Strict mode
raises :class:`~graphcall.errors.ParseError` instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_ENTITY_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*) ?#([A-Za-z0-9_./-]+)")
_NUMBER_RE = re.compile(r"-?\d+(?:\.\d+)?")
# A '[' only counts as a candidate call span when an identifier and an open
# paren follow; any other '[' is ordinary prose.
_CALL_PREFIX_RE = re.compile(r"\[\s*[A-Za-z_][A-Za-z0-9_]*\s*\(")
_DOMAIN_FUNC_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*:[A-Za-z0-9_./-]+\Z")

# Characters that terminate a bare token.
_BARE_STOP = set(',(){}"[]')


@dataclass(frozen=True)
class Quoted:
    """String argument; ``text`` holds the content without the quotes."""

    text: str


@dataclass(frozen=True)
class EntityRef:
    """Argument of the form ``kind#id``, e.g. ``paper#83826`` or ``entity#/m/027rn``."""

    kind: str
    id: str


@dataclass(frozen=True)
class SetLiteral:
    """Braced argument list, e.g. ``{"lollipop_graph"}`` or ``{Paper#1}``."""

    items: tuple


@dataclass(frozen=True)
class Number:
    """Numeric argument; the source lexeme is kept for faithful re-rendering."""

    lexeme: str

    @property
    def value(self):
        return float(self.lexeme) if "." in self.lexeme else int(self.lexeme)


@dataclass(frozen=True)
class Bare:
    """Unquoted token that is none of the other argument kinds."""

    text: str


@dataclass(frozen=True)
class ApiCall:
    func: str
    args: tuple
    insert_output: bool = False
    result_name: str | None = None


# An argument is an ApiCall (nested call) or one of the leaf kinds above.
ApiArg = ApiCall | Quoted | EntityRef | SetLiteral | Number | Bare


@dataclass(frozen=True)
class TextSegment:
    text: str
    span: tuple


@dataclass(frozen=True)
class CallSegment:
    call: ApiCall
    span: tuple


@dataclass(frozen=True)
class Diagnostic:
    offset: int
    message: str


@dataclass(frozen=True)
class Statement:
    raw_text: str
    segments: tuple
    diagnostics: tuple = ()

    @property
    def calls(self):
        return [s.call for s in self.segments if isinstance(s, CallSegment)]


@dataclass(frozen=True)
class ParsedQuery:
    call: ApiCall
    insert_flags: list
    source_span: tuple

    def as_tuple(self):
        """Nested tuple form, e.g. ``(('GR', [('GL', ['cora']), ...]), [True])``."""
        return (call_tuple(self.call), list(self.insert_flags))


class _Cursor:
    __slots__ = ("text", "pos")

    def __init__(self, text, pos=0):
        self.text = text
        self.pos = pos

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, char):
        if self.peek() != char:
            raise ParseError(f"expected {char!r}", self.pos, expected=(char,))
        self.pos += 1

    def match_re(self, pattern):
        m = pattern.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m


def _parse_ident(cur):
    m = cur.match_re(_IDENT_RE)
    if not m:
        raise ParseError("expected identifier", cur.pos, expected=("identifier",))
    return m.group(0)


def _parse_quoted(cur):
    cur.expect('"')
    end = cur.text.find('"', cur.pos)
    if end < 0:
        raise ParseError("unterminated string", cur.pos, expected=('"',))
    content = cur.text[cur.pos:end]
    cur.pos = end + 1
    return Quoted(content)


def _parse_paren_group(cur):
    # Used only inside set literals, where link endpoints may be written as
    # parenthesized pairs, e.g. {(Carbon, Oxygen)}.
    start = cur.pos
    depth = 0
    while cur.pos < len(cur.text):
        c = cur.text[cur.pos]
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth == 0:
                cur.pos += 1
                return Bare(cur.text[start:cur.pos])
        elif c in "[]":
            break
        cur.pos += 1
    raise ParseError("unbalanced parentheses in set element", start, expected=(")",))


def _parse_set(cur):
    cur.expect("{")
    items = []
    cur.skip_ws()
    if cur.peek() == "}":
        cur.pos += 1
        return SetLiteral(())
    while True:
        cur.skip_ws()
        if cur.peek() == "(":
            items.append(_parse_paren_group(cur))
        else:
            items.append(_parse_arg(cur))
        cur.skip_ws()
        c = cur.peek()
        if c == ",":
            cur.pos += 1
            continue
        if c == "}":
            cur.pos += 1
            return SetLiteral(tuple(items))
        raise ParseError("expected ',' or '}' in set literal", cur.pos, expected=(",", "}"))


def _parse_bare(cur):
    start = cur.pos
    while cur.pos < len(cur.text) and cur.text[cur.pos] not in _BARE_STOP:
        cur.pos += 1
    token = cur.text[start:cur.pos].strip()
    if not token:
        raise ParseError("expected argument", start, expected=("argument",))
    return Bare(token)


def _parse_arg(cur):
    cur.skip_ws()
    c = cur.peek()
    if not c:
        raise ParseError("unexpected end of input", cur.pos, expected=("argument",))
    if c == '"':
        return _parse_quoted(cur)
    if c == "{":
        return _parse_set(cur)
    # Nested call: identifier directly followed by '('.
    m = _IDENT_RE.match(cur.text, cur.pos)
    if m:
        look = _Cursor(cur.text, m.end())
        look.skip_ws()
        if look.peek() == "(":
            return _parse_call(cur)
    m = _ENTITY_RE.match(cur.text, cur.pos)
    if m:
        cur.pos = m.end()
        return EntityRef(m.group(1), m.group(2))
    m = _NUMBER_RE.match(cur.text, cur.pos)
    if m:
        trailing = cur.text[m.end():m.end() + 1]
        if not trailing or trailing in ' ,)}]':
            cur.pos = m.end()
            return Number(m.group(0))
    return _parse_bare(cur)


def _parse_call(cur):
    func = _parse_ident(cur)
    cur.skip_ws()
    cur.expect("(")
    args = []
    cur.skip_ws()
    if cur.peek() == ")":
        cur.pos += 1
        return ApiCall(func, ())
    while True:
        args.append(_parse_arg(cur))
        cur.skip_ws()
        c = cur.peek()
        if c == ",":
            cur.pos += 1
            continue
        if c == ")":
            cur.pos += 1
            return ApiCall(func, tuple(args))
        raise ParseError("expected ',' or ')'", cur.pos, expected=(",", ")"))


def _parse_call_span(text, start):
    """Parse one bracketed call starting at ``text[start] == '['``.

    Returns ``(call, end)`` where ``end`` is the index just past the ``]``.
    """
    cur = _Cursor(text, start)
    cur.expect("[")
    cur.skip_ws()
    call = _parse_call(cur)
    cur.skip_ws()
    insert, name = False, None
    if cur.text.startswith("-->", cur.pos):
        cur.pos += 3
        cur.skip_ws()
        name = _parse_ident(cur)
        insert = True
        cur.skip_ws()
    cur.expect("]")
    call = ApiCall(call.func, call.args, insert_output=insert, result_name=name)
    return call, cur.pos


def parse_statement(text, strict=False):
    """Split ``text`` into literal-text and call segments.

    Well-formed bracketed spans become :class:`CallSegment`; a span that looks
    like a call but fails to parse stays text (with a diagnostic) unless
    ``strict`` is set, in which case :class:`ParseError` propagates.
    """
    segments = []
    diagnostics = []
    pos = 0
    text_start = 0
    n = len(text)
    while pos < n:
        if text[pos] == "[" and _CALL_PREFIX_RE.match(text, pos):
            try:
                call, end = _parse_call_span(text, pos)
            except ParseError as exc:
                if strict:
                    raise
                diagnostics.append(Diagnostic(exc.offset, str(exc)))
                pos += 1
                continue
            if pos > text_start:
                segments.append(TextSegment(text[text_start:pos], (text_start, pos)))
            segments.append(CallSegment(call, (pos, end)))
            pos = end
            text_start = end
        else:
            pos += 1
    if text_start < n:
        segments.append(TextSegment(text[text_start:], (text_start, n)))
    return Statement(text, tuple(segments), tuple(diagnostics))


def extract_queries(stmt):
    """Queries in source order, each with its span and insert flag."""
    return [
        ParsedQuery(seg.call, [seg.call.insert_output], seg.span)
        for seg in stmt.segments
        if isinstance(seg, CallSegment)
    ]


# --- rendering -------------------------------------------------------------


def _render_arg(arg):
    if isinstance(arg, ApiCall):
        return _render_call(arg)
    if isinstance(arg, Quoted):
        return f'"{arg.text}"'
    if isinstance(arg, EntityRef):
        return f"{arg.kind}#{arg.id}"
    if isinstance(arg, SetLiteral):
        return "{" + ", ".join(_render_arg(x) for x in arg.items) + "}"
    if isinstance(arg, Number):
        return arg.lexeme
    if isinstance(arg, Bare):
        return arg.text
    raise TypeError(f"not an argument: {arg!r}")


def _render_call(call):
    return f"{call.func}(" + ", ".join(_render_arg(a) for a in call.args) + ")"


def serialize(call):
    """Canonical text of a call: single spaces after commas, quotes preserved,
    ``-->name`` appended iff the call inserts its output."""
    tag = f"-->{call.result_name or 'r'}" if call.insert_output else ""
    return f"[{_render_call(call)}{tag}]"


def _lower_call(call):
    args = tuple(_lower_arg(a) for a in call.args)
    return ApiCall(call.func.lower(), args, call.insert_output, call.result_name)


def _lower_arg(arg):
    if isinstance(arg, ApiCall):
        return _lower_call(arg)
    if isinstance(arg, Quoted) and _DOMAIN_FUNC_RE.match(arg.text):
        return Quoted(arg.text.lower())
    if isinstance(arg, SetLiteral):
        return SetLiteral(tuple(_lower_arg(x) for x in arg.items))
    return arg


def canonicalize(call):
    """Like :func:`serialize` but with function/domain names lowercased and the
    result name stripped, so cosmetic variance does not affect equality."""
    return f"[{_render_call(_lower_call(call))}]"


def statement_text(stmt):
    """Re-render a statement with every call in canonical serialized form."""
    parts = []
    for seg in stmt.segments:
        if isinstance(seg, TextSegment):
            parts.append(seg.text)
        else:
            parts.append(serialize(seg.call))
    return "".join(parts)


# --- tuple form --------------------------------------------------------------


def call_tuple(call):
    """Nested ``(name, [args...])`` form; leaf arguments render as strings."""
    return (call.func, [_arg_tuple(a) for a in call.args])


def _arg_tuple(arg):
    if isinstance(arg, ApiCall):
        return call_tuple(arg)
    if isinstance(arg, Quoted):
        return arg.text
    return _render_arg(arg)
