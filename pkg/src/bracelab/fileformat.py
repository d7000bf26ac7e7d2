"""Versioned JSON serialization for braces.

A brace file carries the moduli plus exactly one of:

  * ``lambda_table``: one entry per element rank (little-endian mixed-radix
    order), each entry a list of k rows, row j = coordinates of the image of
    the j-th standard generator under lambda of that element;
  * ``mul_table``: the n x n circle table over ranks.

Deserialization always re-validates; a file is only "accepted" when the
resulting table passes the full brace axioms.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .abelian import AbelianGroup
from .brace import Brace, BraceError, brace_from_circ_table, validate_brace

FORMAT = "bracelab/brace"
VERSION = 1


class BraceFileError(BraceError):
    """Malformed or rejected brace file."""


def brace_to_doc(brace: Brace, name: str | None = None, construction: str | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "format": FORMAT,
        "version": VERSION,
        "moduli": list(brace.moduli),
        "lambda_table": [
            [list(col) for col in cols] for cols in brace.lambda_columns()
        ],
    }
    meta: dict[str, Any] = {}
    if name or brace.name:
        meta["name"] = name or brace.name
    if construction:
        meta["construction"] = construction
    if meta:
        doc["metadata"] = meta
    return doc


def doc_to_brace(doc: dict[str, Any]) -> Brace:
    if not isinstance(doc, dict):
        raise BraceFileError("document is not a JSON object")
    if doc.get("format") != FORMAT:
        raise BraceFileError(f"format must be {FORMAT!r}, got {doc.get('format')!r}")
    if doc.get("version") != VERSION:
        raise BraceFileError(f"unsupported version {doc.get('version')!r}")
    moduli = doc.get("moduli")
    if not isinstance(moduli, list) or not all(isinstance(d, int) for d in moduli):
        raise BraceFileError("moduli must be a list of integers")
    has_lambda = "lambda_table" in doc
    has_mul = "mul_table" in doc
    if has_lambda == has_mul:
        raise BraceFileError("exactly one of lambda_table / mul_table is required")
    name = ""
    meta = doc.get("metadata")
    if isinstance(meta, dict):
        name = str(meta.get("name", ""))
    try:
        group = AbelianGroup(moduli)
    except ValueError as exc:
        raise BraceFileError(str(exc)) from exc
    try:
        if has_lambda:
            table = doc["lambda_table"]
            if not isinstance(table, list) or len(table) != group.order:
                raise BraceFileError(f"lambda_table must have {group.order} entries")
            columns = [[tuple(row) for row in entry] for entry in table]
            return validate_brace(group, columns, name=name)
        mul = doc["mul_table"]
        if not isinstance(mul, list) or len(mul) != group.order:
            raise BraceFileError(f"mul_table must have {group.order} rows")
        return brace_from_circ_table(group, mul, name=name)
    except BraceFileError:
        raise
    except BraceError as exc:
        raise BraceFileError(f"{type(exc).__name__}: {exc}") from exc


def save_brace(brace: Brace, path: str | Path, name: str | None = None, construction: str | None = None) -> None:
    doc = brace_to_doc(brace, name=name, construction=construction)
    Path(path).write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n", encoding="utf-8")


def load_brace(path: str | Path) -> Brace:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise BraceFileError(f"cannot read {path}: {exc}") from exc
    return doc_to_brace(doc)
