"""Reading and writing ``.stab`` stabilizer files and classical generator files.

Grammar::

    field p=<int> r=<int> [poly=<c0,...,cr>]
    n <int>
    a_1,...,a_n | b_1,...,b_n      # one row per generator
    extended                       # optional; completion rows follow

Entries are packed F_q integers in base 10. When q <= 9 a row may also be
written compactly, one digit per position (``10|00``). ``#`` starts a
comment. Classical generator files use the same header with rows that have
no ``|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import QDeflateError
from .fpla import DTYPE, Subspace
from .gf import FieldParams, make_field
from .stabilizer import StabilizerCode, new_stabilizer
from .symplectic import SympVector, flatten, format_row, unflatten


class StabParseError(QDeflateError):
    def __init__(self, line: int, col: int, msg: str):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, column {col}: {msg}")


@dataclass
class StabFile:
    field: FieldParams
    n: int
    rows: list[SympVector]
    completion: list[SympVector]
    extended: bool = False


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_field(text: str, lineno: int) -> FieldParams:
    parts = text.split()
    if not parts or parts[0] != "field":
        raise StabParseError(lineno, 1, "expected 'field p=<int> r=<int> [poly=...]'")
    opts: dict[str, str] = {}
    for part in parts[1:]:
        key, sep, val = part.partition("=")
        if not sep or key not in {"p", "r", "poly"}:
            raise StabParseError(lineno, text.index(part) + 1, f"unexpected field option {part!r}")
        opts[key] = val
    try:
        p = int(opts["p"])
        r = int(opts.get("r", "1"))
        poly = [int(c) for c in opts["poly"].split(",")] if "poly" in opts else None
    except (KeyError, ValueError) as exc:
        raise StabParseError(lineno, 1, f"bad field header: {exc}") from None
    try:
        return make_field(p, r, poly)
    except ValueError as exc:
        raise StabParseError(lineno, 1, str(exc)) from None


def _parse_entries(side: str, n: int, F: FieldParams, lineno: int, col: int) -> list[int]:
    side = side.strip()
    if "," in side or n == 1:
        tokens = [tok.strip() for tok in side.split(",")] if side else []
    elif F.q <= 9 and len(side) == n and side.isdigit():
        tokens = list(side)
    else:
        raise StabParseError(lineno, col, f"cannot read {n} entries from {side!r}")
    if len(tokens) != n:
        raise StabParseError(lineno, col, f"expected {n} entries, found {len(tokens)}")
    vals = []
    for tok in tokens:
        if not tok.isdigit():
            raise StabParseError(lineno, col, f"entry {tok!r} is not a non-negative integer")
        v = int(tok)
        if v >= F.q:
            raise StabParseError(lineno, col, f"entry {v} is not an element of {F}")
        vals.append(v)
    return vals


def _read_header(lines: list[str]) -> tuple[FieldParams, int, list[tuple[int, str, str]]]:
    body = [(i + 1, raw, _strip(raw)) for i, raw in enumerate(lines)]
    body = [(i, raw, s) for i, raw, s in body if s]
    if len(body) < 2:
        raise StabParseError(len(lines) or 1, 1, "missing 'field' and 'n' header lines")
    F = _parse_field(body[0][2], body[0][0])
    lineno, _, text = body[1]
    parts = text.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise StabParseError(lineno, 1, "expected 'n <int>'")
    return F, int(parts[1]), body[2:]


def read_stab(text: str) -> StabFile:
    F, n, body = _read_header(text.splitlines())
    rows: list[SympVector] = []
    completion: list[SympVector] = []
    target = rows
    extended = False
    for lineno, raw, s in body:
        if s == "extended":
            if extended:
                raise StabParseError(lineno, 1, "duplicate 'extended' marker")
            extended = True
            target = completion
            continue
        if s.count("|") != 1:
            raise StabParseError(lineno, 1, "a row needs exactly one '|'")
        left, right = s.split("|")
        col_r = raw.index("|") + 2
        a = _parse_entries(left, n, F, lineno, len(raw) - len(raw.lstrip()) + 1)
        b = _parse_entries(right, n, F, lineno, col_r)
        target.append(SympVector(F, tuple(a), tuple(b)))
    return StabFile(F, n, rows, completion, extended)


def parse_row(F: FieldParams, n: int, text: str) -> SympVector:
    """One ``a|b`` row in either the comma or the compact syntax."""
    if text.count("|") != 1:
        raise StabParseError(1, 1, f"row {text!r} needs exactly one '|'")
    left, right = text.split("|")
    a = _parse_entries(left, n, F, 1, 1)
    b = _parse_entries(right, n, F, 1, text.index("|") + 2)
    return SympVector(F, tuple(a), tuple(b))


def parse_classical_row(F: FieldParams, n: int, text: str) -> list[int]:
    return _parse_entries(text, n, F, 1, 1)


def parse_stab(text: str) -> tuple[StabilizerCode, list[SympVector]]:
    """Build and validate the code; completion rows must reach the symplectic dual."""
    sf = read_stab(text)
    S = new_stabilizer(sf.field, sf.n, sf.rows)
    if sf.completion:
        width = 2 * sf.field.r * sf.n
        comp = np.array([flatten(v) for v in sf.completion], dtype=DTYPE).reshape(-1, width)
        span = Subspace(np.vstack([S.space.basis, comp]), sf.field.p, width)
        if span != S.dual.flat:
            raise QDeflateError(
                "completion rows do not extend the stabilizer to its symplectic dual "
                f"(span has dimension {span.dim}, dual has {S.dual.dim})"
            )
    return S, sf.completion


def header(F: FieldParams, n: int) -> list[str]:
    line = f"field p={F.p} r={F.r}"
    if F.r > 1:
        line += " poly=" + ",".join(map(str, F.modulus))
    return [line, f"n {n}"]


def format_flat_row(F: FieldParams, n: int, row: np.ndarray) -> str:
    return str(unflatten(F, n, row))


def serialize_stab(S: StabilizerCode, completion: Sequence[np.ndarray] | np.ndarray | None = None) -> str:
    lines = header(S.field, S.n)
    lines += [format_flat_row(S.field, S.n, row) for row in S.space.basis]
    if completion is not None and len(completion):
        lines.append("extended")
        lines += [format_flat_row(S.field, S.n, row) for row in completion]
    return "\n".join(lines) + "\n"


def read_generator(text: str) -> tuple[FieldParams, int, list[list[int]]]:
    """Classical generator file: same header, rows without '|'."""
    F, n, body = _read_header(text.splitlines())
    rows = []
    for lineno, raw, s in body:
        if "|" in s:
            raise StabParseError(lineno, raw.index("|") + 1, "classical rows have no '|'")
        rows.append(_parse_entries(s, n, F, lineno, 1))
    return F, n, rows


def format_classical_row(row: Sequence[int]) -> str:
    return ",".join(map(str, row))


def bundled_path(name: str) -> Path:
    """Location of a file shipped in the package's data directory."""
    return Path(str(resources.files("qdeflate") / "data" / name))


def load_text(path: str | Path) -> str:
    """Read a file; unknown paths fall back to a bundled file with the same name."""
    p = Path(path)
    if p.exists():
        return p.read_text()
    fallback = bundled_path(p.name)
    if fallback.exists():
        return fallback.read_text()
    raise FileNotFoundError(str(path))


__all__ = [
    "StabFile",
    "StabParseError",
    "bundled_path",
    "format_classical_row",
    "format_flat_row",
    "format_row",
    "load_text",
    "parse_classical_row",
    "parse_row",
    "parse_stab",
    "read_generator",
    "read_stab",
    "serialize_stab",
]
