"""Set files (JSON arrays of rational strings) and report output."""

from __future__ import annotations

import json
from pathlib import Path

from .exact import DomainError, to_rational
from .setops import RSet


class SetFileError(DomainError):
    pass


def _line_of(text: str, needle: str) -> int:
    idx = text.find(needle)
    return text.count("\n", 0, idx) + 1 if idx >= 0 else 1


def parse_set(text: str, source: str = "<input>") -> RSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SetFileError(f"{source}:{exc.lineno}: malformed JSON: {exc.msg}") from None
    if not isinstance(data, list):
        raise SetFileError(f"{source}:1: expected a JSON array of rational strings")
    values = []
    for item in data:
        if not isinstance(item, str):
            line = _line_of(text, json.dumps(item))
            raise SetFileError(f"{source}:{line}: element {item!r} is not a rational string")
        try:
            values.append(to_rational(item))
        except DomainError:
            line = _line_of(text, json.dumps(item))
            raise SetFileError(f"{source}:{line}: {item!r} is not a rational") from None
    if len(set(values)) != len(values):
        raise SetFileError(f"{source}:1: duplicate elements in set file")
    return RSet(values)


def read_set(path: str | Path) -> RSet:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SetFileError(f"{path}: cannot read: {exc.strerror}") from None
    return parse_set(text, str(path))


def dump_json(obj) -> str:
    return json.dumps(obj, indent=None) + "\n"


def write_output(text: str, path: str | Path | None) -> None:
    if path is None or str(path) == "-":
        import sys

        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
