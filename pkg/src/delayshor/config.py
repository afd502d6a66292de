"""Flat key-value experiment config files.

One `key = value` pair per line, `#` starts a comment, keys match the CLI
flag names (dashes included). Values are stored exactly as they would be
typed on the command line, so loading a config and passing flags go through
the same conversion path and flags always win over file values.
"""

from __future__ import annotations

from pathlib import Path


def loads(text: str) -> dict[str, str]:
    """Parses config text into an ordered key -> raw string value map."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        if '=' not in line:
            raise ValueError(f'config line {lineno}: expected key = value, got {raw!r}')
        key, _, value = line.partition('=')
        key = key.strip()
        value = value.strip()
        if not key:
            raise ValueError(f'config line {lineno}: empty key')
        if key in values:
            raise ValueError(f'config line {lineno}: duplicate key {key!r}')
        values[key] = value
    return values


def dumps(values: dict[str, str]) -> str:
    """Renders a config map; loads(dumps(v)) == v."""
    lines = [f'{key} = {value}' for key, value in sorted(values.items())]
    return '\n'.join(lines) + '\n'


def load_file(path: str | Path) -> dict[str, str]:
    return loads(Path(path).read_text(encoding='utf-8'))


def save_file(path: str | Path, values: dict[str, str]) -> None:
    Path(path).write_text(dumps(values), encoding='utf-8', newline='\n')
