"""Reading and writing OEIS-style b-files (``n a(n)`` lines, 0-indexed).

Values may be integers, rationals or polynomials in the usual grammar, which
lets one file carry rows of a triangle as row polynomials.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, List, Union

from .poly import Poly, PolyError, as_poly, parse_poly

__all__ = ["BFileError", "parse_bfile", "read_bfile", "format_bfile", "write_bfile", "plain"]


class BFileError(ValueError):
    pass


def plain(value):
    """Turn a constant polynomial into its number; leave others alone."""
    if isinstance(value, Poly) and value.is_constant():
        return value.constant()
    return value


def parse_bfile(text: str) -> List:
    """Values a(0), a(1), ... ; indices must be consecutive from the first one."""
    values = []
    expected = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise BFileError(f"line {lineno}: expected 'n a(n)'")
        try:
            idx = int(parts[0])
        except ValueError:
            raise BFileError(f"line {lineno}: bad index {parts[0]!r}") from None
        if expected is None:
            if idx != 0:
                raise BFileError(f"line {lineno}: b-files here must start at index 0")
            expected = 0
        if idx != expected:
            raise BFileError(f"line {lineno}: index {idx} out of sequence (expected {expected})")
        try:
            values.append(plain(parse_poly(parts[1])))
        except PolyError as exc:
            raise BFileError(f"line {lineno}: {exc}") from None
        expected += 1
    return values


def read_bfile(path: Union[str, Path]) -> List:
    return parse_bfile(Path(path).read_text(encoding="utf-8"))


def format_bfile(values: Iterable) -> str:
    return "".join(f"{i} {plain(as_poly(v)) if not isinstance(v, int) else v}\n"
                   for i, v in enumerate(values))


def write_bfile(path: Union[str, Path], values: Iterable) -> None:
    Path(path).write_text(format_bfile(values), encoding="utf-8")
