"""Labeled Motzkin paths and the bijection with permutations.

A step records its kind, the exponent of its first label variable and the
height of its left endpoint.  The second exponent is implied by the height:

===== ========= ================ ===============
kind  variables left -> right    label degree
===== ========= ================ ===============
U     c, d, p   k-1 -> k         k-1
D     h, l, r   k -> k-1         k-1
S     a, b, s   k -> k           k-1
T     f, g, t   k -> k           k-1
F     w, u      k -> k           w-exponent is k
===== ========= ================ ===============
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .perms import Permutation, StepClass, _word, all_permutations, index_profiles
from .poly import Poly

__all__ = [
    "PathError",
    "LabeledStep",
    "LabeledMotzkinPath",
    "eta",
    "eta_inverse",
    "weight",
    "weight_exponents",
    "enumerate_paths",
    "count_paths",
    "check_bijection",
    "DEFAULT_PATH_BOUND",
]

DEFAULT_PATH_BOUND = 9

KINDS = ("U", "D", "S", "T", "F")
_VARS = {"U": ("c", "d", "p"), "D": ("h", "l", "r"), "S": ("a", "b", "s"),
         "T": ("f", "g", "t"), "F": ("w", None, "u")}
_CLASS_KIND = {
    StepClass.NON_LINKED_EXC: "U",
    StepClass.NON_LINKED_AEXC: "D",
    StepClass.LINKED_EXC: "S",
    StepClass.LINKED_AEXC: "T",
    StepClass.FIXED_POINT: "F",
}


class PathError(ValueError):
    """A labeled path is malformed or no permutation maps to it."""

    def __init__(self, reason: str, position: Optional[int] = None):
        self.reason = reason
        self.position = position
        where = f" at step {position}" if position is not None else ""
        super().__init__(f"{reason}{where}")

    def as_dict(self) -> dict:
        return {"reason": self.reason, "position": self.position}


@dataclass(frozen=True)
class LabeledStep:
    kind: str
    exponent: int
    start_height: int

    @property
    def end_height(self) -> int:
        return self.start_height + {"U": 1, "D": -1}.get(self.kind, 0)

    @property
    def level(self) -> int:
        """The k of the labeling rule (upper endpoint for U and D)."""
        return self.start_height + 1 if self.kind == "U" else self.start_height

    @property
    def second_exponent(self) -> int:
        if self.kind == "F":
            return 0
        return self.level - 1 - self.exponent

    def validate(self, position: Optional[int] = None) -> None:
        if self.kind not in KINDS:
            raise PathError(f"unknown step kind {self.kind!r}", position)
        if self.start_height < 0 or self.end_height < 0:
            raise PathError("path goes below the axis", position)
        if self.kind == "F":
            if self.exponent != self.start_height:
                raise PathError(f"fixed-point step at height {self.start_height} must carry "
                                f"w^{self.start_height}", position)
            return
        if not 0 <= self.exponent <= self.level - 1:
            raise PathError(f"exponent {self.exponent} outside 0..{self.level - 1}", position)

    def exponents(self) -> Dict[str, int]:
        first, second, marker = _VARS[self.kind]
        out = {marker: 1}
        if self.exponent:
            out[first] = self.exponent
        if second is not None and self.second_exponent:
            out[second] = self.second_exponent
        return out

    def encode(self) -> str:
        first, second, _ = _VARS[self.kind]
        if self.kind == "F":
            return f"F[w^{self.exponent}]"
        return f"{self.kind}[{first}^{self.exponent} {second}^{self.second_exponent}]"

    def label(self) -> str:
        """Human-readable label in the style ``cdp``, ``w^2u``."""
        first, second, marker = _VARS[self.kind]

        def part(v, e):
            return "" if e == 0 else (v if e == 1 else f"{v}^{e}")

        return part(first, self.exponent) + (part(second, self.second_exponent) if second else "") + marker


@dataclass(frozen=True)
class LabeledMotzkinPath:
    steps: Tuple[LabeledStep, ...]

    @property
    def n(self) -> int:
        return len(self.steps)

    def __len__(self):
        return len(self.steps)

    def validate(self) -> None:
        h = 0
        for pos, st in enumerate(self.steps, 1):
            if st.start_height != h:
                raise PathError(f"step starts at height {st.start_height}, expected {h}", pos)
            st.validate(pos)
            h = st.end_height
        if h != 0:
            raise PathError(f"path ends at height {h}, not 0")

    def kinds(self) -> Tuple[str, ...]:
        return tuple(st.kind for st in self.steps)

    def labels(self) -> List[str]:
        return [st.label() for st in self.steps]

    def heights(self) -> List[int]:
        return [0] + [st.end_height for st in self.steps]

    def encode(self) -> str:
        return " ".join(st.encode() for st in self.steps)

    @classmethod
    def from_steps(cls, kinds_and_exps: Sequence[Tuple[str, int]]) -> "LabeledMotzkinPath":
        """Build a path from (kind, exponent) pairs, filling in heights; validates."""
        h, steps = 0, []
        for kind, e in kinds_and_exps:
            st = LabeledStep(kind, e, h)
            steps.append(st)
            h = st.end_height
        path = cls(tuple(steps))
        path.validate()
        return path

    @classmethod
    def decode(cls, text: str) -> "LabeledMotzkinPath":
        text = text.strip()
        tokens = re.findall(r"([A-Za-z])\[([^\]]*)\]", text)
        rebuilt = re.sub(r"[A-Za-z]\[[^\]]*\]", "", text).strip()
        if rebuilt:
            raise PathError(f"unparseable path text near {rebuilt[:20]!r}")
        h, steps = 0, []
        for pos, (kind, body) in enumerate(tokens, 1):
            if kind not in KINDS:
                raise PathError(f"unknown step kind {kind!r}", pos)
            exps = {}
            for item in body.split():
                m = re.fullmatch(r"([a-z])\^(\d+)", item)
                if not m:
                    raise PathError(f"bad label item {item!r}", pos)
                exps[m.group(1)] = int(m.group(2))
            first, second, _ = _VARS[kind]
            expected = {first} | ({second} if second else set())
            if set(exps) != expected:
                raise PathError(f"step {kind} needs exponents for {sorted(expected)}", pos)
            st = LabeledStep(kind, exps[first], h)
            st.validate(pos)
            if second is not None and exps[second] != st.second_exponent:
                raise PathError(f"{second}-exponent {exps[second]} inconsistent with height "
                                f"(expected {st.second_exponent})", pos)
            steps.append(st)
            h = st.end_height
        path = cls(tuple(steps))
        path.validate()
        return path

    def to_json(self) -> dict:
        out = []
        for st in self.steps:
            first, second, _ = _VARS[st.kind]
            exps = {first: st.exponent}
            if second:
                exps[second] = st.second_exponent
            out.append({"kind": st.kind, "start_height": st.start_height, "exponents": exps})
        return {"n": self.n, "steps": out}

    @classmethod
    def from_json(cls, data: dict) -> "LabeledMotzkinPath":
        text = " ".join(
            f"{s['kind']}[" + " ".join(f"{k}^{v}" for k, v in s["exponents"].items()) + "]"
            for s in data["steps"]
        )
        path = cls.decode(text)
        for st, s in zip(path.steps, data["steps"]):
            if "start_height" in s and s["start_height"] != st.start_height:
                raise PathError("start_height inconsistent with steps")
        if "n" in data and data["n"] != path.n:
            raise PathError("declared length does not match steps")
        return path

    def __str__(self):
        return self.encode()


def eta(sigma) -> LabeledMotzkinPath:
    """The labeled Motzkin path of a permutation."""
    steps = []
    h = 0
    for prof in index_profiles(_word(sigma)):
        kind = _CLASS_KIND[prof.cls]
        if kind in ("U", "S"):
            e = prof.inve
        elif kind in ("D", "T"):
            e = prof.inva
        else:
            e = prof.iefp_i
        st = LabeledStep(kind, e, h)
        steps.append(st)
        h = st.end_height
    return LabeledMotzkinPath(tuple(steps))


def eta_inverse(path: LabeledMotzkinPath) -> Permutation:
    """Reconstruct the permutation whose path is ``path``."""
    path.validate()
    n = path.n
    sigma = [0] * (n + 1)
    exc_pos, exc_img, aexc_pos, aexc_img = [], [], [], []
    for i, st in enumerate(path.steps, 1):
        if st.kind == "F":
            sigma[i] = i
        if st.kind in ("U", "S"):
            exc_pos.append(i)
        if st.kind in ("S", "D"):
            exc_img.append(i)
        if st.kind in ("T", "D"):
            aexc_pos.append(i)
        if st.kind in ("T", "U"):
            aexc_img.append(i)
    # excedances, largest position first: sigma(i) is the (kappa - inve_i)-th smallest free image
    free = sorted(exc_img)
    for i in reversed(exc_pos):
        kappa = len(free)
        lam = kappa - path.steps[i - 1].exponent
        if not 1 <= lam <= kappa:
            raise PathError("excedance label admits no image", i)
        j = free.pop(lam - 1)
        if j <= i:
            raise PathError(f"assigned image {j} is not an excedance top", i)
        sigma[i] = j
    # anti-excedances, smallest position first: sigma(i) is the (inva_i + 1)-th smallest free image
    free = sorted(aexc_img)
    for i in aexc_pos:
        e = path.steps[i - 1].exponent
        if not 0 <= e < len(free):
            raise PathError("anti-excedance label admits no image", i)
        j = free.pop(e)
        if j >= i:
            raise PathError(f"assigned image {j} is not an anti-excedance bottom", i)
        sigma[i] = j
    try:
        result = Permutation(tuple(sigma[1:]))
    except ValueError:
        raise PathError("labels do not determine a permutation") from None
    back = eta(result)
    if back != path:
        for pos, (a, b) in enumerate(zip(back.steps, path.steps), 1):
            if a != b:
                raise PathError(f"no permutation realises this labeling (got {a.encode()}, "
                                f"wanted {b.encode()})", pos)
    return result


def weight_exponents(path: LabeledMotzkinPath) -> Dict[str, int]:
    total: Dict[str, int] = {}
    for st in path.steps:
        for v, e in st.exponents().items():
            total[v] = total.get(v, 0) + e
    return {v: e for v, e in total.items() if e}


def weight(path: LabeledMotzkinPath) -> Poly:
    """Product of the step labels, as a monomial."""
    return Poly.from_monomial(weight_exponents(path))


def _generate(n: int) -> Iterator[Tuple[LabeledStep, ...]]:
    steps: List[LabeledStep] = []

    def rec(h: int):
        remaining = n - len(steps)
        if remaining == 0:
            if h == 0:
                yield tuple(steps)
            return
        if h > remaining:
            return
        options = []
        if h >= 1:
            options += [("D", i) for i in range(h)]
        options += [("F", h)]
        options += [("S", i) for i in range(h)]
        options += [("T", i) for i in range(h)]
        if h + 1 <= remaining - 1:
            options += [("U", i) for i in range(h + 1)]
        for kind, e in options:
            st = LabeledStep(kind, e, h)
            steps.append(st)
            yield from rec(st.end_height)
            steps.pop()

    yield from rec(0)


def enumerate_paths(n: int, bound: int = DEFAULT_PATH_BOUND) -> List[LabeledMotzkinPath]:
    """All labeled Motzkin paths of length ``n``, sorted by their text encoding."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > bound:
        raise ValueError(f"n={n} exceeds the enumeration bound {bound}")
    paths = [LabeledMotzkinPath(s) for s in _generate(n)]
    paths.sort(key=lambda p: p.encode())
    return paths


def count_paths(n: int) -> int:
    """Weighted count of labeled paths with every label equal to 1 (transfer matrix)."""
    row = {0: 1}
    for step in range(n):
        nxt: Dict[int, int] = {}
        for h, c in row.items():
            # U: h+1 labels, D: h labels, level: 2h+1 labels
            nxt[h + 1] = nxt.get(h + 1, 0) + c * (h + 1)
            if h:
                nxt[h - 1] = nxt.get(h - 1, 0) + c * h
            nxt[h] = nxt.get(h, 0) + c * (2 * h + 1)
        row = nxt
    return row.get(0, 0)


def check_bijection(n: int) -> bool:
    """eta is a bijection S_n -> M_n and eta_inverse undoes it."""
    images = set()
    for sigma in all_permutations(n):
        p = eta(sigma)
        if eta_inverse(p) != sigma:
            return False
        images.add(p)
    return images == set(enumerate_paths(n, bound=max(n, DEFAULT_PATH_BOUND)))
