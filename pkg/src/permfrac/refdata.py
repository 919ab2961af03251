"""Reference sequences and triangles computed from their classical definitions.

Nothing here touches the continued fraction: these are the independent oracles
behind the bundled b-files in ``permfrac/data``.  ``regenerate`` rebuilds every
file so a test can confirm the bundled copies.
"""
from __future__ import annotations

from math import comb, factorial
from pathlib import Path
from typing import Callable, Dict, List

from .perms import PatternSpec, all_permutations, contains
from .poly import Poly
from .seqio import format_bfile

__all__ = ["REFERENCES", "generate", "regenerate", "DATA_DIR"]

DATA_DIR = Path(__file__).resolve().parent / "data"


def _factorials(n: int) -> List[int]:
    return [factorial(i) for i in range(n + 1)]


def _derangements(n: int) -> List[int]:
    out = [1, 0]
    for m in range(2, n + 1):
        out.append((m - 1) * (out[-1] + out[-2]))
    return out[: n + 1]


def _double_factorials(n: int) -> List[int]:
    """(2j-1)!! for j = 0..n."""
    out = [1]
    for j in range(1, n + 1):
        out.append(out[-1] * (2 * j - 1))
    return out


def _catalan(n: int) -> List[int]:
    return [comb(2 * j, j) // (j + 1) for j in range(n + 1)]


def _euler_even(n: int) -> List[int]:
    """Secant numbers E_{2j}, j = 0..n, via the Seidel-Entringer triangle."""
    size = 2 * n + 1
    zigzag = [1]
    row = [1]
    for m in range(1, size):
        new = [0]
        for val in reversed(row):
            new.append(new[-1] + val)
        row = new
        zigzag.append(row[-1])
    return [zigzag[2 * j] for j in range(n + 1)]


def _bell(n: int) -> List[int]:
    out, row = [1], [1]
    for _ in range(n):
        new = [row[-1]]
        for v in row:
            new.append(new[-1] + v)
        row = new
        out.append(row[0])
    return out[: n + 1]


def _little_schroeder(n: int) -> List[int]:
    out = [1, 1]
    for m in range(2, n + 1):
        out.append((3 * (2 * m - 1) * out[-1] - (m - 2) * out[-2]) // (m + 1))
    return out[: n + 1]


def _no_strong_fixed_points(n: int) -> List[int]:
    """n! = a(n) + sum_i a(i-1) (n-i)!, splitting at the first strong fixed point."""
    out: List[int] = []
    for m in range(n + 1):
        out.append(factorial(m) - sum(out[i - 1] * factorial(m - i) for i in range(1, m + 1)))
    return out


def _row_poly(coeffs, var: str) -> Poly:
    x = Poly.var(var)
    out = Poly.const(0)
    for k, c in enumerate(coeffs):
        out = out + c * x ** k
    return out


def _eulerian_rows(n: int) -> List[Poly]:
    rows = [Poly.const(1)]
    for m in range(1, n + 1):
        coeffs = [sum((-1) ** j * comb(m + 1, j) * (k + 1 - j) ** m for j in range(k + 2))
                  for k in range(m)]
        rows.append(_row_poly(coeffs, "x"))
    return rows


def _type_b_eulerian_rows(n: int) -> List[Poly]:
    rows = []
    for m in range(n + 1):
        coeffs = [sum((-1) ** (k - j) * comb(m + 1, k - j) * (2 * j + 1) ** m
                      for j in range(k + 1)) for k in range(m + 1)]
        rows.append(_row_poly(coeffs, "x"))
    return rows


def _stirling_rows(n: int) -> List[Poly]:
    table = [[1]]
    for m in range(1, n + 1):
        prev = table[-1] + [0]
        table.append([0] + [k * prev[k] + prev[k - 1] for k in range(1, m + 1)])
    return [_row_poly(r, "lambda") for r in table]


def _narayana_rows(n: int) -> List[Poly]:
    rows = [Poly.const(1)]
    for m in range(1, n + 1):
        coeffs = [0] + [comb(m, k) * comb(m, k - 1) // m for k in range(1, m + 1)]
        rows.append(_row_poly(coeffs, "lambda"))
    return rows


def _tree_leaf_rows(n: int) -> List[Poly]:
    """Row m: 2-arrangements of [m]; entry j = (2/(N+1)) C(N+1, j+2) C(N-2, j), N = m+1.

    Row 0 is the single empty arrangement."""
    rows = [Poly.const(1)]
    for m in range(1, n + 1):
        N = m + 1
        coeffs = []
        for j in range(N - 1):
            num = 2 * comb(N + 1, j + 2) * comb(N - 2, j)
            assert num % (N + 1) == 0
            coeffs.append(num // (N + 1))
        rows.append(_row_poly(coeffs, "x"))
    return rows


def _peaks_rows(n: int) -> List[Poly]:
    """Row m: 123-avoiding permutations of [m+1] by number of peaks."""
    pat = PatternSpec.classical("123")
    rows = []
    for m in range(n + 1):
        size = m + 1
        hist: Dict[int, int] = {}
        for pi in all_permutations(size):
            if contains(pi, pat):
                continue
            w = pi.word
            pk = sum(1 for i in range(1, size - 1) if w[i - 1] < w[i] > w[i + 1])
            hist[pk] = hist.get(pk, 0) + 1
        rows.append(_row_poly([hist.get(k, 0) for k in range(max(hist) + 1)], "x"))
    return rows


# file name -> (generator, length)
REFERENCES: Dict[str, tuple] = {
    "A000142.txt": (_factorials, 12),
    "A000166.txt": (_derangements, 12),
    "A001147_even.txt": (_double_factorials, 8),
    "A000108.txt": (_catalan, 12),
    "A000364_even.txt": (_euler_even, 8),
    "A000110.txt": (_bell, 12),
    "A001003.txt": (_little_schroeder, 12),
    "A052186.txt": (_no_strong_fixed_points, 12),
    "A008292_rows.txt": (_eulerian_rows, 10),
    "A060187_rows.txt": (_type_b_eulerian_rows, 10),
    "A008277_rows.txt": (_stirling_rows, 10),
    "A001263_rows.txt": (_narayana_rows, 10),
    "A108838_by_size.txt": (_tree_leaf_rows, 8),
    "A236406_by_size.txt": (_peaks_rows, 7),
}


def generate(name: str) -> str:
    gen, length = REFERENCES[name]
    return format_bfile(gen(length))


def regenerate(directory: Path = DATA_DIR) -> List[Path]:
    written = []
    for name in REFERENCES:
        path = Path(directory) / name
        path.write_text(generate(name), encoding="utf-8")
        written.append(path)
    return written
