"""JSON and plain-text rendering of execution reports."""

from __future__ import annotations

import json

FORMAT_VERSION = "1"


def to_json(reports, indent=2) -> str:
    doc = {"version": FORMAT_VERSION, "reports": [r.to_dict() for r in reports]}
    return json.dumps(doc, indent=indent, ensure_ascii=False)


def _short(result) -> str:
    if "error" in result:
        return f"{result['error']}: {result.get('message', '')}"
    parts = []
    for k, v in result.items():
        text = json.dumps(v, ensure_ascii=False)
        if len(text) > 60:
            text = text[:57] + "..."
        parts.append(f"{k}={text}")
    return " ".join(parts)


def to_text(reports) -> str:
    lines = []
    for r in reports:
        if r.checked:
            status = "PASS" if r.ok else "FAIL"
        else:
            status = "ERR " if r.error else "    "
        head = r.label if r.label is not None else f"{r.command} {r.target}".strip()
        lines.append(f"{status} {r.line:4d}  {head}")
        if not r.checked or not r.ok:
            lines.append(f"           {_short(r.result)}")
        for m in r.mismatches:
            lines.append(f"           {m['key']}: expected {json.dumps(m['expected'])}, "
                         f"got {json.dumps(m['actual'])}")
    return "\n".join(lines)


def summary(reports) -> dict:
    checked = [r for r in reports if r.checked]
    return {
        "reports": len(reports),
        "checked": len(checked),
        "passed": sum(r.ok for r in checked),
        "failed": sum(not r.ok for r in reports),
    }
