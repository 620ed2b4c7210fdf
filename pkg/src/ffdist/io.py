"""Text formats for sets and point sets.

Set file::

    p=7
    0 1 2 4 5

Point file (CSV)::

    p=5,d=2
    0,0
    1,2

Over F_{p^2} the header gains ``ext=<n>`` (``w^2 = n``) and elements are written
``a+b*w``. Lines starting with ``#`` before the header are ignored, which is
where the CLI puts its provenance line.
"""
from __future__ import annotations

import os
import re
import tempfile

import numpy as np

from .distance import PointSet
from .errors import FieldError
from .fset import FSet
from .prime_field import ExtFieldCtx, get_ext_field, get_field

_ELEM = re.compile(r"^\s*(\d+)\s*(?:\+\s*(\d+)\s*\*\s*w\s*)?$")


def _content_lines(text: str) -> list[str]:
    lines = text.splitlines()
    while lines and (not lines[0].strip() or lines[0].lstrip().startswith("#")):
        lines.pop(0)
    return lines


def _parse_header(line: str) -> dict[str, int]:
    out = {}
    for part in line.strip().split(","):
        key, sep, value = part.partition("=")
        if not sep or not value.strip().lstrip("-").isdigit():
            raise FieldError(f"malformed header field {part!r}")
        out[key.strip()] = int(value)
    if "p" not in out:
        raise FieldError("header must start with p=<modulus>")
    return out


def _context(header: dict[str, int]):
    if "ext" in header:
        ctx = get_ext_field(header["p"])
        if header["ext"] % ctx.p != ctx.n:
            raise FieldError(f"only w^2 = {ctx.n} (the smallest nonresidue mod {ctx.p}) is supported")
        return ctx
    return get_field(header["p"])


def _header(ctx, **extra) -> str:
    parts = [f"p={ctx.p}"] + [f"{k}={v}" for k, v in extra.items()]
    if isinstance(ctx, ExtFieldCtx):
        parts.append(f"ext={ctx.n}")
    return ",".join(parts)


def parse_element(token: str, ctx) -> int:
    m = _ELEM.match(token)
    if not m:
        raise FieldError(f"cannot parse field element {token!r}")
    a, b = int(m.group(1)), int(m.group(2) or 0)
    if isinstance(ctx, ExtFieldCtx):
        if a >= ctx.p or b >= ctx.p:
            raise FieldError(f"{token!r} is not canonical mod {ctx.p}")
        return ctx.encode(a, b)
    if m.group(2) is not None:
        raise FieldError(f"{token!r} is an extension element but the field is F_{ctx.p}")
    if a >= ctx.p:
        raise FieldError(f"{a} is not canonical mod {ctx.p}")
    return a


def parse_set(text: str) -> FSet:
    lines = _content_lines(text)
    if not lines:
        raise FieldError("empty set file")
    ctx = _context(_parse_header(lines[0]))
    tokens = " ".join(lines[1:]).split()
    elems = [parse_element(t, ctx) for t in tokens]
    if len(set(elems)) != len(elems):
        raise FieldError("duplicate elements in set file")
    return FSet.from_elements(ctx, elems)


def format_set(S: FSet) -> str:
    body = " ".join(S.ctx.format(x) for x in S.elements())
    return f"{_header(S.ctx)}\n{body}\n"


def parse_points(text: str) -> PointSet:
    lines = _content_lines(text)
    if not lines:
        raise FieldError("empty point file")
    header = _parse_header(lines[0])
    if "d" not in header:
        raise FieldError("point file header needs d=<dim>")
    ctx = _context(header)
    d = header["d"]
    rows = []
    for line in lines[1:]:
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != d:
            raise FieldError(f"row {line!r} has {len(cells)} coordinates, expected {d}")
        rows.append([parse_element(c, ctx) for c in cells])
    return PointSet(ctx, d, np.array(rows, dtype=np.int64).reshape(-1, d))


def format_points(E: PointSet) -> str:
    lines = [_header(E.ctx, d=E.dim)]
    for row in E.points:
        lines.append(",".join(E.ctx.format(x) for x in row))
    return "\n".join(lines) + "\n"


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ffdist-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
