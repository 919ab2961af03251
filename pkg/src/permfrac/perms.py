"""Permutations and the excedance-based statistics.

Positions and values are 1-based throughout: ``sigma(i)`` is the letter in
place ``i`` of the one-line word.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, fields
from enum import Enum
from typing import Dict, Iterator, List, Sequence, Tuple

__all__ = [
    "Permutation",
    "StatVector",
    "StepClass",
    "IndexProfile",
    "PatternSpec",
    "parse_permutation",
    "all_permutations",
    "stats",
    "stat_monomial",
    "index_profile",
    "maximal_chains",
    "fondamentale",
    "fondamentale_inverse",
    "occurrences",
    "contains",
    "count_avoiders",
    "word_stats",
    "descents",
    "double_descents",
    "inversions",
]


@dataclass(frozen=True)
class Permutation:
    word: Tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of [n]: {word}")
        object.__setattr__(self, "word", word)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self.word):
            raise IndexError(f"position {i} outside 1..{len(self.word)}")
        return self.word[i - 1]

    def __len__(self):
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.word, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def __str__(self):
        if self.n <= 9:
            return "".join(map(str, self.word))
        return " ".join(map(str, self.word))


def parse_permutation(text: str) -> Permutation:
    """Whitespace/comma separated one-line notation; a bare digit string when n <= 9."""
    text = text.strip()
    if re.fullmatch(r"\d+", text) and len(text) <= 9 and "0" not in text:
        return Permutation(tuple(int(ch) for ch in text))
    parts = [p for p in re.split(r"[\s,]+", text) if p]
    if len(parts) == 1 and len(parts[0]) > 1 and len(text) > 9:
        raise ValueError("digit strings are only accepted for n <= 9; separate the letters")
    try:
        return Permutation(tuple(int(p) for p in parts))
    except ValueError as exc:
        raise ValueError(f"cannot parse permutation {text!r}: {exc}") from None


def all_permutations(n: int) -> Iterator[Permutation]:
    for w in itertools.permutations(range(1, n + 1)):
        yield Permutation(w)


# --------------------------------------------------------------------------
# the fourteen statistics

@dataclass(frozen=True)
class StatVector:
    exc: int = 0
    fp: int = 0
    aexc: int = 0
    le: int = 0
    lae: int = 0
    ie: int = 0
    ile: int = 0
    nie: int = 0
    nile: int = 0
    iae: int = 0
    ilae: int = 0
    niae: int = 0
    nilae: int = 0
    iefp: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _word(sigma) -> Tuple[int, ...]:
    return sigma.word if isinstance(sigma, Permutation) else tuple(sigma)


def stats(sigma) -> StatVector:
    """All fourteen statistics, each counted straight from its set definition."""
    w = _word(sigma)
    n = len(w)
    s = (0,) + w
    inv = [0] * (n + 1)
    for i in range(1, n + 1):
        inv[s[i]] = i
    exc = fp = aexc = le = lae = 0
    for i in range(1, n + 1):
        if i < s[i]:
            exc += 1
            if inv[i] < i:
                le += 1
        elif i == s[i]:
            fp += 1
        else:
            aexc += 1
            if inv[i] > i:
                lae += 1
    ie = ile = nie = nile = iae = ilae = niae = nilae = iefp = 0
    for i in range(1, n + 1):
        si = s[i]
        for j in range(i + 1, n + 1):
            sj = s[j]
            # i < j < s(j) < s(i)
            if j < sj < si:
                ie += 1
                if inv[j] < j:
                    ile += 1
            # i < j < s(i) < s(j)
            if j < si < sj:
                nie += 1
                if inv[j] < j:
                    nile += 1
            # j > i > s(i) > s(j)
            if i > si > sj:
                iae += 1
                if inv[i] > i:
                    ilae += 1
            # j > i > s(j) > s(i)
            if i > sj > si:
                niae += 1
                if inv[i] > i:
                    nilae += 1
            # i < j = s(j) < s(i)
            if j == sj and j < si:
                iefp += 1
    return StatVector(exc, fp, aexc, le, lae, ie, ile, nie, nile, iae, ilae, niae, nilae, iefp)


def stat_monomial(st: StatVector) -> Dict[str, int]:
    """Exponents of the fourteen parameters attached to a permutation."""
    exps = {
        "a": st.ile,
        "b": st.nile,
        "c": st.ie - st.ile,
        "d": st.nie - st.nile,
        "f": st.ilae,
        "g": st.nilae,
        "h": st.iae - st.ilae,
        "l": st.niae - st.nilae,
        "p": st.exc - st.le,
        "r": st.aexc - st.lae,
        "s": st.le,
        "t": st.lae,
        "u": st.fp,
        "w": st.iefp,
    }
    return {k: v for k, v in exps.items() if v}


# --------------------------------------------------------------------------
# per-index refinements

class StepClass(str, Enum):
    NON_LINKED_EXC = "NonLinkedExc"
    LINKED_EXC = "LinkedExc"
    NON_LINKED_AEXC = "NonLinkedAexc"
    LINKED_AEXC = "LinkedAexc"
    FIXED_POINT = "FixedPoint"


@dataclass(frozen=True)
class IndexProfile:
    index: int
    cls: StepClass
    inve: int
    ninve: int
    inva: int
    ninva: int
    iefp_i: int
    prex: int
    fola: int


def classify_index(w: Sequence[int], inv: Sequence[int], i: int) -> StepClass:
    si = w[i - 1]
    if i < si:
        return StepClass.LINKED_EXC if inv[i - 1] < i else StepClass.NON_LINKED_EXC
    if i > si:
        return StepClass.LINKED_AEXC if inv[i - 1] > i else StepClass.NON_LINKED_AEXC
    return StepClass.FIXED_POINT


def index_profile(sigma, i: int) -> IndexProfile:
    w = _word(sigma)
    n = len(w)
    if not 1 <= i <= n:
        raise IndexError(f"index {i} outside 1..{n}")
    inv = [0] * n
    for pos, v in enumerate(w, 1):
        inv[v - 1] = pos
    si = w[i - 1]
    inve = ninve = inva = ninva = iefp_i = prex = fola = 0
    for x in range(1, n + 1):
        sx = w[x - 1]
        if x < i < si < sx:
            inve += 1
        if x < i < sx < si:
            ninve += 1
        if x > i > si > sx:
            inva += 1
        if x > i > sx > si:
            ninva += 1
        if x < i < sx:
            iefp_i += 1
            prex += 1
        if sx < i < x:
            fola += 1
    return IndexProfile(i, classify_index(w, inv, i), inve, ninve, inva, ninva, iefp_i, prex, fola)


def index_profiles(sigma) -> List[IndexProfile]:
    w = _word(sigma)
    return [index_profile(w, i) for i in range(1, len(w) + 1)]


def maximal_chains(sigma) -> List[List[int]]:
    """Maximal excedance chains followed by maximal anti-excedance chains.

    Each chain is listed from its starter, so ``chain[k+1] == sigma(chain[k])``.
    """
    w = _word(sigma)
    n = len(w)
    inv = [0] * (n + 1)
    for pos, v in enumerate(w, 1):
        inv[v] = pos
    out: List[List[int]] = []
    for is_exc in (True, False):
        def member(i):
            return (i < w[i - 1]) if is_exc else (i > w[i - 1])

        for start in range(1, n + 1):
            if not member(start):
                continue
            prev = inv[start]
            if member(prev) and prev != start:
                continue  # linked: not a starter
            chain = [start]
            nxt = w[start - 1]
            while member(nxt):
                chain.append(nxt)
                nxt = w[nxt - 1]
            out.append(chain)
    return out


# --------------------------------------------------------------------------
# the fundamental bijection

def fondamentale(sigma) -> Permutation:
    """Descents of ``sigma`` become excedances of the image (a_0 = 0 convention)."""
    a = (0,) + _word(sigma)
    n = len(a) - 1
    b = [0] * (n + 1)
    suffix_min = [0] * (n + 2)
    suffix_min[n + 1] = n + 1
    for i in range(n, 0, -1):
        suffix_min[i] = min(a[i], suffix_min[i + 1])
    for i in range(1, n + 1):
        if suffix_min[i + 1] < a[i]:
            b[a[i + 1]] = a[i]
        else:
            k = i - 1
            while a[k] > a[i]:
                k -= 1
            b[a[k + 1]] = a[i]
    return Permutation(tuple(b[1:]))


def fondamentale_inverse(tau) -> Permutation:
    """Inverse of :func:`fondamentale`.

    The image of ``sigma`` has one cycle per segment of ``sigma`` that ends at a
    right-to-left minimum.  Listing cycles by increasing minimum m and writing
    each as m, tau(m), tau^2(m), ... reversed recovers the segments.
    """
    t = _word(tau)
    n = len(t)
    seen = [False] * (n + 1)
    word: List[int] = []
    for m in range(1, n + 1):
        if seen[m]:
            continue
        cyc = [m]
        seen[m] = True
        x = t[m - 1]
        while x != m:
            cyc.append(x)
            seen[x] = True
            x = t[x - 1]
        word.extend(reversed(cyc))
    return Permutation(tuple(word))


# --------------------------------------------------------------------------
# patterns of length three

@dataclass(frozen=True)
class PatternSpec:
    kind: str
    letters: Tuple[int, ...]
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.kind not in ("classical", "vincular", "consecutive"):
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if len(self.letters) != 3:
            raise ValueError("only patterns of length 3 are supported")
        if sorted(self.letters) != [1, 2, 3]:
            raise ValueError(f"pattern letters must be a permutation of 123: {self.letters}")
        if sum(len(b) for b in self.blocks) != 3 or not self.blocks:
            raise ValueError("pattern blocks must cover the letters")

    @classmethod
    def parse(cls, text: str, kind: str | None = None) -> "PatternSpec":
        """'321' (consecutive unless kind says otherwise), '2-31' (vincular), '1-2-3' (classical)."""
        text = text.strip()
        blocks = tuple(tuple(int(ch) for ch in part) for part in text.split("-"))
        letters = tuple(v for blk in blocks for v in blk)
        if kind is None:
            if len(blocks) == 1:
                kind = "consecutive"
            elif all(len(b) == 1 for b in blocks):
                kind = "classical"
            else:
                kind = "vincular"
        if kind == "classical":
            blocks = tuple((v,) for v in letters)
        elif kind == "consecutive":
            blocks = (letters,)
        return cls(kind, letters, blocks)

    @classmethod
    def classical(cls, letters: str) -> "PatternSpec":
        return cls.parse(letters.replace("-", ""), "classical")

    @classmethod
    def consecutive(cls, letters: str) -> "PatternSpec":
        return cls.parse(letters.replace("-", ""), "consecutive")

    def adjacent_pairs(self) -> Tuple[int, ...]:
        """Offsets k (0-based within the pattern) whose letter must sit right after letter k-1."""
        out, pos = [], 0
        for blk in self.blocks:
            for j in range(1, len(blk)):
                out.append(pos + j)
            pos += len(blk)
        return tuple(out)

    def __str__(self):
        return "-".join("".join(map(str, b)) for b in self.blocks)


def _matches(vals: Sequence[int], letters: Sequence[int]) -> bool:
    for x in range(3):
        for y in range(x + 1, 3):
            if (vals[x] < vals[y]) != (letters[x] < letters[y]) or vals[x] == vals[y]:
                return False
    return True


def occurrences(sigma, pat: PatternSpec) -> int:
    """Number of position triples i<j<k forming an occurrence of ``pat``."""
    if len(pat.letters) != 3:
        raise ValueError("only patterns of length 3 are supported")
    w = _word(sigma)
    n = len(w)
    adj = pat.adjacent_pairs()
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if 1 in adj and j != i + 1:
                break
            for k in range(j + 1, n):
                if 2 in adj and k != j + 1:
                    break
                if _matches((w[i], w[j], w[k]), pat.letters):
                    count += 1
    return count


def _occurs_ending_at_last(w: Sequence[int], pat: PatternSpec) -> bool:
    n = len(w)
    k = n - 1
    if k < 2:
        return False
    adj = pat.adjacent_pairs()
    js = [k - 1] if 2 in adj else range(1, k)
    for j in js:
        is_ = [j - 1] if 1 in adj else range(0, j)
        for i in is_:
            if _matches((w[i], w[j], w[k]), pat.letters):
                return True
    return False


def contains(sigma, pat: PatternSpec) -> bool:
    return occurrences(sigma, pat) > 0


def count_avoiders(n: int, pat: PatternSpec) -> int:
    """Permutations of [n] avoiding ``pat``, by depth-first growth of avoiding prefixes."""
    if n == 0:
        return 1
    count = 0
    prefix: List[int] = []
    used = [False] * (n + 1)

    def grow():
        nonlocal count
        if len(prefix) == n:
            count += 1
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            prefix.append(v)
            if not _occurs_ending_at_last(prefix, pat):
                used[v] = True
                grow()
                used[v] = False
            prefix.pop()

    grow()
    return count


# --------------------------------------------------------------------------
# word statistics

def descents(w: Sequence[int]) -> List[int]:
    return [i for i in range(1, len(w)) if w[i - 1] > w[i]]


def double_descents(sigma) -> int:
    """Positions 2 <= i <= n-1 with w(i-1) > w(i) > w(i+1); no boundary sentinel."""
    w = _word(sigma)
    return sum(1 for i in range(1, len(w) - 1) if w[i - 1] > w[i] > w[i + 1])


def inversions(w: Sequence[int]) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def word_stats(w) -> Tuple[int, int, int, int]:
    """(exc, des, maj, inv) of an integer word; exc compares against the sorted word."""
    w = _word(w)
    srt = sorted(w)
    exc = sum(1 for a, s in zip(w, srt) if a > s)
    ds = descents(w)
    return exc, len(ds), sum(ds), inversions(w)
