"""PD fixture files: crossing tuples plus `# key: value` directive lines.

Recognized directives are `coloring`, `mark-label` and `mark-crossing`;
any other `# key: value` line (name, source, notes) is kept as metadata.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .diagram import COLORINGS, PlanarDiagram, parse_diagram
from .errors import MalformedCode

_DIRECTIVE = re.compile(r"^\s*#\s*([A-Za-z][\w-]*)\s*:\s*(.*?)\s*$")


@dataclass
class PDFile:
    code: str
    meta: dict = field(default_factory=dict)

    def diagram(self, mark_label=None, mark_crossing=None, coloring=None) -> PlanarDiagram:
        coloring = coloring or self.meta.get("coloring", COLORINGS[0])
        if mark_label is None:
            # the file's crossing mark only applies together with its label mark
            mark_label = _int(self.meta.get("mark-label"))
            if mark_crossing is None:
                mark_crossing = _int(self.meta.get("mark-crossing"))
        return parse_diagram(self.code, mark_label=mark_label, mark_crossing=mark_crossing, coloring=coloring)


def _int(v):
    return None if v is None else int(v)


def parse_pd_text(text: str) -> PDFile:
    meta = {}
    body = []
    for line in text.splitlines():
        m = _DIRECTIVE.match(line)
        if m:
            meta[m.group(1).lower()] = m.group(2)
        elif not line.lstrip().startswith("#"):
            body.append(line)
    code = "\n".join(body).strip()
    if not code:
        raise MalformedCode("file has no crossing tuples")
    return PDFile(code, meta)


def read_pd_file(path) -> PDFile:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise MalformedCode(f"cannot read {path}: {e.strerror}") from e
    return parse_pd_text(text)


def write_pd_file(path, code: str, **meta) -> None:
    lines = [f"# {k.replace('_', '-')}: {v}" for k, v in meta.items()]
    Path(path).write_text("\n".join(lines + [code]) + "\n")
