"""Plain-text code files.

Layout::

    p m n k
    c_0 c_1 ... c_m          (modulus coefficients, only when m > 1)
    g_00 g_01 ... g_0(n-1)   (k rows of canonical element encodings)
"""

from __future__ import annotations

from pathlib import Path

from .codes import CodeError, LinearCode, rank
from .gf import FieldError, field_make


class CodeFileError(CodeError):
    pass


def format_code(C: LinearCode) -> str:
    F = C.field
    lines = [f"{F.p} {F.m} {C.n} {C.k}"]
    if F.m > 1:
        lines.append(" ".join(str(c) for c in F.modulus))
    lines.extend(" ".join(str(x) for x in row) for row in C.rows)
    return "\n".join(lines) + "\n"


def export_code(C: LinearCode, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_code(C), encoding="ascii")
    return path


def parse_code(text: str) -> LinearCode:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 4:
        raise CodeFileError("header must read 'p m n k'")
    try:
        p, m, n, k = (int(x) for x in lines[0])
        body = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise CodeFileError(f"non-integer token: {exc}") from None
    try:
        F = field_make(p, m)
    except FieldError as exc:
        raise CodeFileError(str(exc)) from None
    if m > 1:
        if not body or tuple(body[0]) != F.modulus:
            raise CodeFileError(f"modulus line must read {' '.join(map(str, F.modulus))}")
        body = body[1:]
    if len(body) != k:
        raise CodeFileError(f"expected {k} generator rows, found {len(body)}")
    for row in body:
        if len(row) != n:
            raise CodeFileError(f"row of length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < F.order:
                raise CodeFileError(f"symbol {x} outside [0, {F.order})")
    if rank(F, body) != k:
        raise CodeFileError("generator matrix is rank deficient")
    return LinearCode(F, n, tuple(tuple(r) for r in body))


def import_code(path: str | Path) -> LinearCode:
    return parse_code(Path(path).read_text(encoding="ascii"))
