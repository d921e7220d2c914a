"""Partitions lambda = {k_1, ..., k_q}, aligned colour classes, and the order
lambda <= lambda' (increase parts, then refine)."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import InvalidInput


@dataclass(frozen=True)
class Lambda:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise InvalidInput(f"parts must be positive integers, got {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Lambda":
        return cls(tuple(parts))

    @classmethod
    def ones(cls, k: int, *extra: int) -> "Lambda":
        """``{1*k, extra...}``."""
        return cls((1,) * k + tuple(extra))

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def size(self) -> int:
        return len(self.parts)

    def multiplicity(self, a: int) -> int:
        return self.parts.count(a)

    def __str__(self):
        return format_lambda(self)


_PART = re.compile(r"\s*(-?\d+)\s*(?:\*\s*(-?\d+)\s*)?$")


def parse_lambda(text: str) -> Lambda:
    """Parse ``"1*46,6"`` style text (value*multiplicity) into a Lambda."""
    parts: list[int] = []
    pos = 0
    for chunk in text.split(","):
        m = _PART.match(chunk)
        if not m:
            raise InvalidInput(f"cannot parse part {chunk!r} at position {pos}")
        value = int(m.group(1))
        mult = int(m.group(2)) if m.group(2) is not None else 1
        if value < 1 or mult < 1:
            raise InvalidInput(f"part {chunk.strip()!r} at position {pos} must be positive")
        parts.extend([value] * mult)
        pos += len(chunk) + 1
    return Lambda(tuple(parts))


def format_lambda(lam: Lambda) -> str:
    counts = Counter(lam.parts)
    out = []
    for value in sorted(counts, reverse=True):
        c = counts[value]
        out.append(f"{value}*{c}" if c > 1 else str(value))
    return ",".join(out)


@dataclass(frozen=True)
class ColourClasses:
    classes: tuple[frozenset, ...]

    def __post_init__(self):
        cls = tuple(frozenset(c) for c in self.classes)
        object.__setattr__(self, "classes", cls)
        seen: set = set()
        for i, c in enumerate(cls):
            if seen & c:
                raise InvalidInput(f"colour class {i} overlaps an earlier class")
            seen |= c

    @classmethod
    def of(cls, classes: Iterable[Iterable[int]]) -> "ColourClasses":
        return cls(tuple(frozenset(c) for c in classes))

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]

    def colours(self) -> frozenset:
        return frozenset().union(*self.classes) if self.classes else frozenset()


def aligned(pairs: Iterable[tuple[int, Iterable[int]]]) -> tuple[Lambda, ColourClasses]:
    """Build (lambda, classes) from (quota, class) pairs.

    Classes are reordered (stably) by non-increasing quota so that index i of
    the classes lines up with ``lam.parts[i]``.
    """
    pairs = sorted(((q, frozenset(c)) for q, c in pairs), key=lambda qc: -qc[0])
    return Lambda(tuple(q for q, _ in pairs)), ColourClasses(tuple(c for _, c in pairs))


# -- the order --------------------------------------------------------------

def leq_order(lhs: Lambda, rhs: Lambda) -> bool:
    """True iff the parts of ``rhs`` split into ``lhs.size`` non-empty groups
    whose sums are at least the matching parts of ``lhs``.

    This is "increase some parts, then refine" and contains "refine, then
    increase"; unlike the latter it is transitive ({1} <= {2} <= {1,1}).
    Grouping the colour classes of a rhs-assignment the same way yields a
    lhs-assignment, so lhs-choosable implies rhs-choosable.
    """
    if lhs.size > rhs.size or lhs.k > rhs.k:
        return False
    return _leq(lhs.parts, rhs.parts)


@lru_cache(maxsize=None)
def _leq(lhs: tuple[int, ...], rhs: tuple[int, ...]) -> bool:
    suffix = [0] * (len(rhs) + 1)
    for i in range(len(rhs) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + rhs[i]

    @lru_cache(maxsize=None)
    def rec(i: int, groups: tuple) -> bool:
        # groups: sorted (deficit, is_empty) per lhs part
        empty = sum(e for _, e in groups)
        need = sum(d for d, _ in groups)
        if len(rhs) - i < empty or suffix[i] < need:
            return False
        if i == len(rhs):
            return True
        seen = set()
        for j, g in enumerate(groups):
            if g in seen:
                continue
            seen.add(g)
            d, _ = g
            nxt = groups[:j] + ((max(d - rhs[i], 0), 0),) + groups[j + 1:]
            if rec(i + 1, tuple(sorted(nxt))):
                return True
        return False

    return rec(0, tuple(sorted((k, 1) for k in lhs)))
