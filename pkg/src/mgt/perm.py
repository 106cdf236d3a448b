"""Permutations on ``{0, ..., degree-1}`` with cycle-notation I/O.

Products follow the apply-first convention: ``a * b`` maps ``i`` to
``b[a[i]]``.  Cycle notation is 1-based on the outside, e.g. ``"(1 2 3)(4 5)"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import SpecParseError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Perm:
        """Build from 0-based cycles, e.g. ``[(0, 1, 2)]``."""
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for pt in cyc:
                if not 0 <= pt < degree:
                    raise ValueError(f"point {pt + 1} outside degree {degree}")
                if pt in seen:
                    raise ValueError(f"point {pt + 1} repeated in cycle notation")
                seen.add(pt)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Perm:
        """Parse 1-based cycle notation.  ``degree`` defaults to the largest point."""
        text = text.strip()
        stripped = _CYCLE_RE.sub("", text).strip()
        if stripped or (text and not text.startswith("(")):
            raise SpecParseError(f"bad cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            tokens = body.replace(",", " ").split()
            try:
                pts = [int(t) - 1 for t in tokens]
            except ValueError:
                raise SpecParseError(f"bad cycle notation: {text!r}") from None
            if any(p < 0 for p in pts):
                raise SpecParseError(f"points are 1-based: {text!r}")
            cycles.append(pts)
        needed = max((p + 1 for c in cycles for p in c), default=0)
        if degree is None:
            degree = max(needed, 1)
        elif needed > degree:
            raise SpecParseError(f"{text!r} moves point {needed} but degree is {degree}")
        try:
            return cls.from_cycles(cycles, degree)
        except ValueError as exc:
            raise SpecParseError(str(exc)) from None

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Perm) -> Perm:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Perm(tuple(other.images[i] for i in self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        out = []
        seen = set()
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            out.append(tuple(cyc))
        return out

    def to_cycles(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.to_cycles()

    def extend(self, degree: int, shift: int = 0) -> Perm:
        """Embed into a larger degree, moving points up by ``shift``."""
        images = list(range(degree))
        for i, j in enumerate(self.images):
            images[i + shift] = j + shift
        return Perm(tuple(images))


def parse_gens(text: str, degree: int | None = None, sep: str = ",") -> list[Perm]:
    """Parse a generator list like ``"(1 2)(3 4),(1 3)(2 4)"``.

    Commas inside a cycle are not allowed when ``sep`` is a comma.
    """
    text = text.strip()
    if not text:
        return []
    # split on separators that sit between cycles, never inside parentheses
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [Perm.parse(p, degree) for p in parts if p.strip()]
