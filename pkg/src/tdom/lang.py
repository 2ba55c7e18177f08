"""Line-oriented text grammar for annotation datasets, plus a JSON mirror.

Document shape::

    tdom-version 1.0
    task "Fold towel" id T1
    object "towel" dim 2D
    action T1-1 "approach" M: G N | G: N N | NPE: R | NPA: N N | CS: N N N | D: N | S: L1 | US: N

One action per line. "#" starts a comment (outside quoted strings), blank
lines separate sections, LF and CRLF are both accepted, LF is emitted.
``parse_dataset`` raises :class:`DatasetParseError` carrying every Error
diagnostic found; it never hands back a partial dataset.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .codes import (
    Action,
    ActionCode,
    AgentContactTag,
    BendLevel,
    Dataset,
    DeformationSet,
    EnvContactTag,
    GraspTag,
    MotionTag,
    ObjectDim,
    PerArm,
    SlidingSlots,
    SlidingTag,
    Task,
)
from .diagnostics import Diagnostic, Severity, SourceSpan


class DatasetParseError(ValueError):
    """Raised when a document cannot be parsed; carries the diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        summary = f"{len(self.diagnostics)} error(s)"
        if self.diagnostics:
            summary += f"; first: {self.diagnostics[0]}"
        super().__init__(summary)


@dataclass(frozen=True)
class _Token:
    kind: str  # "word" | "quoted" | "pipe"
    text: str  # decoded text for quoted tokens
    col: int  # 1-based column of the first character
    raw_len: int

    def span(self, line: int) -> SourceSpan:
        return SourceSpan(line, self.col, self.raw_len)


class _LineError(Exception):
    def __init__(self, rule: str, message: str, span: SourceSpan):
        super().__init__(message)
        self.diag = Diagnostic(Severity.ERROR, rule, message, span)


def _strip_comment(line: str) -> str:
    in_quote = False
    escaped = False
    for i, ch in enumerate(line):
        if escaped:
            escaped = False
            continue
        if in_quote and ch == "\\":
            escaped = True
        elif ch == '"':
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return line[:i]
    return line


def _tokenize(line: str, lineno: int) -> list:
    tokens = []
    i = 0
    n = len(line)
    while i < n:
        ch = line[i]
        if ch.isspace():
            i += 1
            continue
        start = i
        if ch == "|":
            tokens.append(_Token("pipe", "|", start + 1, 1))
            i += 1
        elif ch == '"':
            i += 1
            parts = []
            closed = False
            while i < n:
                c = line[i]
                if c == "\\":
                    if i + 1 >= n:
                        break
                    esc = line[i + 1]
                    if esc not in ('"', "\\"):
                        raise _LineError(
                            "parse/escape",
                            f"invalid escape sequence \\{esc}",
                            SourceSpan(lineno, i + 1, 2),
                        )
                    parts.append(esc)
                    i += 2
                elif c == '"':
                    closed = True
                    i += 1
                    break
                else:
                    parts.append(c)
                    i += 1
            if not closed:
                raise _LineError(
                    "parse/string",
                    "unterminated quoted string",
                    SourceSpan(lineno, start + 1, max(1, n - start)),
                )
            tokens.append(_Token("quoted", "".join(parts), start + 1, i - start))
        else:
            while i < n and not line[i].isspace() and line[i] not in ('|', '"'):
                i += 1
            tokens.append(_Token("word", line[start:i], start + 1, i - start))
    return tokens


_CODE_FIELDS = (
    ("M:", 2),
    ("G:", 2),
    ("NPE:", 1),
    ("NPA:", 2),
    ("CS:", 3),
    ("D:", 1),
    ("S:", 1),
    ("US:", 1),
)


def _parse_tag(parser, token: _Token, lineno: int):
    try:
        return parser(token.text)
    except ValueError as exc:
        raise _LineError("parse/token", str(exc), token.span(lineno)) from None


def _parse_code_tokens(tokens: list, lineno: int, line_len: int) -> ActionCode:
    groups = [[]]
    for tok in tokens:
        if tok.kind == "pipe":
            groups.append([])
        else:
            groups[-1].append(tok)
    if len(groups) != len(_CODE_FIELDS):
        names = " ".join(name for name, _ in _CODE_FIELDS)
        anchor = tokens[0].span(lineno) if tokens else SourceSpan(lineno, max(1, line_len), 1)
        raise _LineError(
            "parse/field",
            f"expected 8 code fields ({names}), found {len(groups)}",
            anchor,
        )
    values = []
    for group, (name, arity) in zip(groups, _CODE_FIELDS):
        if not group or group[0].kind != "word" or group[0].text != name:
            anchor = group[0].span(lineno) if group else SourceSpan(lineno, max(1, line_len), 1)
            found = group[0].text if group else "nothing"
            raise _LineError(
                "parse/field", f"expected field {name}, found {found!r}", anchor
            )
        args = group[1:]
        if len(args) != arity:
            first = group[0]
            last = group[-1]
            span = SourceSpan(lineno, first.col, last.col + last.raw_len - first.col)
            raise _LineError(
                "parse/arity",
                f"field {name} expects {arity} token(s), found {len(args)}",
                span,
            )
        for a in args:
            if a.kind != "word":
                raise _LineError(
                    "parse/token", f"unexpected quoted string in field {name}", a.span(lineno)
                )
        values.append(args)
    m, g, npe, npa, cs, d, s, us = values
    return ActionCode(
        motion=PerArm(
            _parse_tag(MotionTag.parse, m[0], lineno),
            _parse_tag(MotionTag.parse, m[1], lineno),
        ),
        grasp=PerArm(
            _parse_tag(GraspTag.parse, g[0], lineno),
            _parse_tag(GraspTag.parse, g[1], lineno),
        ),
        env=_parse_tag(EnvContactTag.parse, npe[0], lineno),
        agent=PerArm(
            _parse_tag(AgentContactTag.parse, npa[0], lineno),
            _parse_tag(AgentContactTag.parse, npa[1], lineno),
        ),
        sliding=SlidingSlots(
            _parse_tag(SlidingTag.parse, cs[0], lineno),
            _parse_tag(SlidingTag.parse, cs[1], lineno),
            _parse_tag(SlidingTag.parse, cs[2], lineno),
        ),
        deformation=_parse_tag(DeformationSet.parse, d[0], lineno),
        structured=_parse_tag(BendLevel.parse, s[0], lineno),
        unstructured=_parse_tag(BendLevel.parse, us[0], lineno),
    )


def parse_code(text: str, lineno: int = 1) -> ActionCode:
    """Parse a bare code field list ("M: N N | ... | US: N")."""
    try:
        tokens = _tokenize(_strip_comment(text), lineno)
        return _parse_code_tokens(tokens, lineno, len(text))
    except _LineError as exc:
        raise DatasetParseError([exc.diag]) from None


_VERSION_RE = re.compile(r"(\d+)\.(\d+)")
_IDENT_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9_.-]*")


class _TaskBuilder:
    def __init__(self, task_id: str, name: str, span: SourceSpan, diags_at_start: int):
        self.id = task_id
        self.name = name
        self.span = span
        self.object_label = ""
        self.object_dim = ObjectDim.D2
        self.object_seen = False
        self.actions = []
        # used to suppress the cascading "empty task" diagnostic when the
        # task's body already produced errors
        self.diags_at_start = diags_at_start


def _expect(tokens: list, idx: int, kind: str, what: str, lineno: int, line_len: int) -> _Token:
    if idx >= len(tokens):
        raise _LineError(
            "parse/syntax",
            f"missing {what}",
            SourceSpan(lineno, max(1, line_len), 1),
        )
    tok = tokens[idx]
    if tok.kind != kind:
        raise _LineError(
            "parse/syntax", f"expected {what}, found {tok.text!r}", tok.span(lineno)
        )
    return tok


def _expect_keyword(tokens: list, idx: int, word: str, lineno: int, line_len: int) -> None:
    tok = _expect(tokens, idx, "word", f'keyword "{word}"', lineno, line_len)
    if tok.text != word:
        raise _LineError(
            "parse/syntax",
            f'expected keyword "{word}", found {tok.text!r}',
            tok.span(lineno),
        )


def _ident_token(tokens: list, idx: int, what: str, lineno: int, line_len: int) -> _Token:
    tok = _expect(tokens, idx, "word", what, lineno, line_len)
    if not _IDENT_RE.fullmatch(tok.text):
        raise _LineError(
            "parse/syntax", f"{what} {tok.text!r} is not a valid identifier", tok.span(lineno)
        )
    return tok


def parse_dataset(text: str) -> Dataset:
    """Parse a dataset document.

    Raises :class:`DatasetParseError` with one or more positioned Error
    diagnostics when the document is malformed; on success every task and
    action appears in source order.
    """
    diags = []
    tasks = []
    current: _TaskBuilder | None = None
    version = (1, 0)
    header_allowed = True
    seen_action_ids = {}
    seen_task_ids = {}

    def fail(rule: str, message: str, span: SourceSpan) -> None:
        diags.append(Diagnostic(Severity.ERROR, rule, message, span))

    def finish_task() -> None:
        nonlocal current
        if current is None:
            return
        if not current.actions:
            if len(diags) == current.diags_at_start:
                fail(
                    "parse/empty-task",
                    f"task {current.id} has no actions",
                    current.span,
                )
        else:
            tasks.append(
                Task(
                    id=current.id,
                    name=current.name,
                    actions=tuple(current.actions),
                    object_label=current.object_label,
                    object_dim=current.object_dim,
                )
            )
        current = None

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        stripped = _strip_comment(line)
        if not stripped.strip():
            continue
        try:
            tokens = _tokenize(stripped, lineno)
        except _LineError as exc:
            diags.append(exc.diag)
            continue
        if not tokens:
            continue
        head = tokens[0]
        try:
            if head.kind != "word":
                raise _LineError(
                    "parse/directive",
                    f"unexpected {head.text!r} at start of line",
                    head.span(lineno),
                )
            if head.text == "tdom-version":
                if not header_allowed:
                    raise _LineError(
                        "parse/header",
                        "version header must be the first directive",
                        head.span(lineno),
                    )
                tok = _expect(tokens, 1, "word", "version number", lineno, len(stripped))
                m = _VERSION_RE.fullmatch(tok.text)
                if not m:
                    raise _LineError(
                        "parse/header",
                        f"version must look like MAJOR.MINOR, found {tok.text!r}",
                        tok.span(lineno),
                    )
                if len(tokens) > 2:
                    raise _LineError(
                        "parse/syntax",
                        "trailing tokens after version header",
                        tokens[2].span(lineno),
                    )
                version = (int(m.group(1)), int(m.group(2)))
                header_allowed = False
            elif head.text == "task":
                header_allowed = False
                name_tok = _expect(tokens, 1, "quoted", "quoted task name", lineno, len(stripped))
                _expect_keyword(tokens, 2, "id", lineno, len(stripped))
                id_tok = _ident_token(tokens, 3, "task id", lineno, len(stripped))
                if len(tokens) > 4:
                    raise _LineError(
                        "parse/syntax",
                        "trailing tokens after task id",
                        tokens[4].span(lineno),
                    )
                finish_task()
                if id_tok.text in seen_task_ids:
                    fail(
                        "parse/duplicate-task",
                        f"task id {id_tok.text} already used on line {seen_task_ids[id_tok.text]}",
                        id_tok.span(lineno),
                    )
                else:
                    seen_task_ids[id_tok.text] = lineno
                    current = _TaskBuilder(
                        id_tok.text, name_tok.text, id_tok.span(lineno), len(diags)
                    )
            elif head.text == "object":
                header_allowed = False
                if current is None:
                    raise _LineError(
                        "parse/object", "object line outside any task", head.span(lineno)
                    )
                if current.object_seen:
                    raise _LineError(
                        "parse/object", "task already has an object line", head.span(lineno)
                    )
                if current.actions:
                    raise _LineError(
                        "parse/object",
                        "object line must precede the task's actions",
                        head.span(lineno),
                    )
                label_tok = _expect(tokens, 1, "quoted", "quoted object label", lineno, len(stripped))
                _expect_keyword(tokens, 2, "dim", lineno, len(stripped))
                dim_tok = _expect(tokens, 3, "word", "object dimensionality", lineno, len(stripped))
                dim = _parse_tag(ObjectDim.parse, dim_tok, lineno)
                if len(tokens) > 4:
                    raise _LineError(
                        "parse/syntax",
                        "trailing tokens after object dimensionality",
                        tokens[4].span(lineno),
                    )
                current.object_label = label_tok.text
                current.object_dim = dim
                current.object_seen = True
            elif head.text == "action":
                header_allowed = False
                if current is None:
                    raise _LineError(
                        "parse/action", "action line outside any task", head.span(lineno)
                    )
                id_tok = _ident_token(tokens, 1, "action id", lineno, len(stripped))
                verb_tok = _expect(tokens, 2, "quoted", "quoted action verb", lineno, len(stripped))
                if not verb_tok.text:
                    raise _LineError(
                        "parse/verb", "action verb must be non-empty", verb_tok.span(lineno)
                    )
                code = _parse_code_tokens(tokens[3:], lineno, len(stripped))
                if id_tok.text in seen_action_ids:
                    fail(
                        "parse/duplicate-id",
                        f"action id {id_tok.text} already used on line {seen_action_ids[id_tok.text]}",
                        id_tok.span(lineno),
                    )
                    continue
                seen_action_ids[id_tok.text] = lineno
                if not id_tok.text.startswith(current.id + "-"):
                    fail(
                        "parse/id-prefix",
                        f"action id {id_tok.text} must start with {current.id}-",
                        id_tok.span(lineno),
                    )
                    continue
                current.actions.append(
                    Action(
                        id=id_tok.text,
                        verb=verb_tok.text,
                        code=code,
                        span=id_tok.span(lineno),
                    )
                )
            else:
                raise _LineError(
                    "parse/directive",
                    f"unknown directive {head.text!r}",
                    head.span(lineno),
                )
        except _LineError as exc:
            diags.append(exc.diag)

    finish_task()
    if not tasks and not diags:
        fail("parse/empty", "empty dataset: no tasks found", SourceSpan(1, 1, 1))
    if diags:
        raise DatasetParseError(diags)
    return Dataset(tasks=tuple(tasks), version=version)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_code_fields(code: ActionCode) -> str:
    return (
        f"M: {code.motion.left} {code.motion.right}"
        f" | G: {code.grasp.left} {code.grasp.right}"
        f" | NPE: {code.env}"
        f" | NPA: {code.agent.left} {code.agent.right}"
        f" | CS: {code.sliding.env} {code.sliding.left} {code.sliding.right}"
        f" | D: {code.deformation.token()}"
        f" | S: {code.structured.token()}"
        f" | US: {code.unstructured.token()}"
    )


def emit_dataset(dataset: Dataset) -> str:
    """Serialize to the canonical text form; parse(emit(d)) equals d.

    The version header is written only when it differs from the 1.0 default;
    the object line is always written.
    """
    if not dataset.tasks:
        raise ValueError("cannot emit a dataset with no tasks")
    lines = []
    if tuple(dataset.version) != (1, 0):
        lines.append(f"tdom-version {dataset.version[0]}.{dataset.version[1]}")
    for task in dataset.tasks:
        if lines:
            lines.append("")
        lines.append(f"task {_quote(task.name)} id {task.id}")
        lines.append(f"object {_quote(task.object_label)} dim {task.object_dim}")
        for action in task.actions:
            lines.append(
                f"action {action.id} {_quote(action.verb)} {format_code_fields(action.code)}"
            )
    return "\n".join(lines) + "\n"


# --- JSON mirror -----------------------------------------------------------
#
# Same field names as the text grammar; the text form stays canonical.


def code_to_json(code: ActionCode) -> dict:
    return {
        "M": [code.motion.left.token, code.motion.right.token],
        "G": [code.grasp.left.token, code.grasp.right.token],
        "NPE": code.env.token,
        "NPA": [code.agent.left.token, code.agent.right.token],
        "CS": [
            code.sliding.env.token,
            code.sliding.left.token,
            code.sliding.right.token,
        ],
        "D": code.deformation.token(),
        "S": code.structured.token(),
        "US": code.unstructured.token(),
    }


def dataset_to_json(dataset: Dataset) -> dict:
    return {
        "tdom-version": f"{dataset.version[0]}.{dataset.version[1]}",
        "tasks": [
            {
                "id": t.id,
                "name": t.name,
                "object": t.object_label,
                "dim": t.object_dim.token,
                "actions": [
                    {"id": a.id, "verb": a.verb, "code": code_to_json(a.code)}
                    for a in t.actions
                ],
            }
            for t in dataset.tasks
        ],
    }


def _json_field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ValueError(f"missing {key!r} in {where}")
    return obj[key]


def _json_pair(value, parser, where: str):
    if not isinstance(value, list) or len(value) != 2:
        raise ValueError(f"{where} must be a 2-element list")
    return PerArm(parser(value[0]), parser(value[1]))


def code_from_json(obj: dict) -> ActionCode:
    cs = _json_field(obj, "CS", "code")
    if not isinstance(cs, list) or len(cs) != 3:
        raise ValueError("CS must be a 3-element list")
    return ActionCode(
        motion=_json_pair(_json_field(obj, "M", "code"), MotionTag.parse, "M"),
        grasp=_json_pair(_json_field(obj, "G", "code"), GraspTag.parse, "G"),
        env=EnvContactTag.parse(_json_field(obj, "NPE", "code")),
        agent=_json_pair(_json_field(obj, "NPA", "code"), AgentContactTag.parse, "NPA"),
        sliding=SlidingSlots(
            SlidingTag.parse(cs[0]), SlidingTag.parse(cs[1]), SlidingTag.parse(cs[2])
        ),
        deformation=DeformationSet.parse(_json_field(obj, "D", "code")),
        structured=BendLevel.parse(_json_field(obj, "S", "code")),
        unstructured=BendLevel.parse(_json_field(obj, "US", "code")),
    )


def dataset_from_json(obj: dict) -> Dataset:
    version_text = _json_field(obj, "tdom-version", "dataset")
    m = _VERSION_RE.fullmatch(str(version_text))
    if not m:
        raise ValueError(f"bad tdom-version {version_text!r}")
    tasks = []
    for tobj in _json_field(obj, "tasks", "dataset"):
        actions = []
        for aobj in _json_field(tobj, "actions", "task"):
            actions.append(
                Action(
                    id=_json_field(aobj, "id", "action"),
                    verb=_json_field(aobj, "verb", "action"),
                    code=code_from_json(_json_field(aobj, "code", "action")),
                )
            )
        tasks.append(
            Task(
                id=_json_field(tobj, "id", "task"),
                name=_json_field(tobj, "name", "task"),
                actions=tuple(actions),
                object_label=tobj.get("object", ""),
                object_dim=ObjectDim.parse(tobj.get("dim", "2D")),
            )
        )
    return Dataset(tasks=tuple(tasks), version=(int(m.group(1)), int(m.group(2))))


def dumps_dataset(dataset: Dataset) -> str:
    return json.dumps(dataset_to_json(dataset), indent=2)


def loads_dataset(text: str) -> Dataset:
    return dataset_from_json(json.loads(text))
