"""Coarse cardinalities for vertex and end counting.

The scale is Finite(n) < Aleph0 < Aleph1 <= UncountableUnspecified.
Exact cardinal exponentiation is deliberately out of scope; uncountable
values beyond aleph_1 collapse to UncountableUnspecified.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

_LEVELS = {"finite": 0, "aleph0": 1, "aleph1": 2, "uncountable": 3}


@total_ordering
@dataclass(frozen=True)
class Cardinality:
    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in _LEVELS:
            raise ValueError(f"unknown cardinality kind {self.kind!r}")
        if self.kind == "finite" and self.n < 0:
            raise ValueError("finite cardinality must be >= 0")
        if self.kind != "finite" and self.n != 0:
            raise ValueError("only finite cardinalities carry a count")

    def __lt__(self, other: "Cardinality") -> bool:
        la, lb = _LEVELS[self.kind], _LEVELS[other.kind]
        if la != lb:
            return la < lb
        return self.kind == "finite" and self.n < other.n

    def is_finite(self) -> bool:
        return self.kind == "finite"

    def is_countable(self) -> bool:
        return _LEVELS[self.kind] <= 1

    def is_infinite(self) -> bool:
        return self.kind != "finite"

    def plus(self, other: "Cardinality") -> "Cardinality":
        """Cardinal sum: max of the two, except finite + finite adds."""
        if self.is_finite() and other.is_finite():
            return finite(self.n + other.n)
        return max(self, other)

    def times(self, other: "Cardinality") -> "Cardinality":
        if self.is_finite() and other.is_finite():
            return finite(self.n * other.n)
        if (self.is_finite() and self.n == 0) or (other.is_finite() and other.n == 0):
            return finite(0)
        return max(self, other)

    def __str__(self) -> str:
        return str(self.n) if self.is_finite() else self.kind

    @staticmethod
    def parse(text: str) -> "Cardinality":
        text = text.strip()
        if text.isdigit():
            return finite(int(text))
        if text in ("aleph0", "aleph1", "uncountable"):
            return Cardinality(text)
        raise ValueError(f"not a cardinality: {text!r}")


def finite(n: int) -> Cardinality:
    return Cardinality("finite", n)


ALEPH0 = Cardinality("aleph0")
ALEPH1 = Cardinality("aleph1")
UNCOUNTABLE = Cardinality("uncountable")


def countable_union(values, infinitely_many: bool = False) -> Cardinality:
    """Bound for a countable union of the given member cardinalities.

    A countable union of countable sets stays countable; pass
    infinitely_many=True when the union ranges over infinitely many
    nonempty members, which pushes finite members up to Aleph0.
    """
    values = list(values)
    best = finite(0)
    for v in values:
        best = max(best, v)
    if best >= ALEPH1:
        return best
    if infinitely_many and any(v > finite(0) for v in values):
        return ALEPH0
    return best
