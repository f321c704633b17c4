"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a sum  w^e1*c1 + ... + w^ek*ck  with strictly decreasing
ordinal exponents e_i and positive integer coefficients c_i.  The empty
sum is 0.  This is enough for every rank value the graph catalog can
produce; anything needing deeper exponent nesting than the configured
limit raises instead of truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Sequence, Tuple

DEFAULT_DEPTH_LIMIT = 8
_depth_limit = DEFAULT_DEPTH_LIMIT


def set_depth_limit(limit: int) -> None:
    """Configure the exponent nesting bound (default 8)."""
    global _depth_limit
    if limit < 1:
        raise ValueError("depth limit must be >= 1")
    _depth_limit = limit


def depth_limit() -> int:
    return _depth_limit


class OrdinalError(ValueError):
    pass


class OrdinalDepthError(OrdinalError):
    """Exponent nesting exceeded the configured limit."""


class FamilyShapeError(OrdinalError):
    """A described family fell outside the supported sup catalog."""


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    # ((exponent, coefficient), ...) with exponents strictly decreasing.
    terms: Tuple[Tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal) or not isinstance(coeff, int):
                raise OrdinalError(f"bad term ({exp!r}, {coeff!r})")
            if coeff < 1:
                raise OrdinalError(f"coefficient {coeff} < 1")
            if prev is not None and not _lt(exp, prev):
                raise OrdinalError("exponents not strictly decreasing")
            prev = exp
        if self.exponent_depth() > _depth_limit:
            raise OrdinalDepthError(
                f"exponent nesting exceeds limit {_depth_limit}"
            )

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def as_int(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_finite():
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1]

    def exponent_depth(self) -> int:
        if not self.terms:
            return 0
        return 1 + max(exp.exponent_depth() for exp, _ in self.terms)

    # -- order -------------------------------------------------------------

    def __lt__(self, other: "Ordinal") -> bool:
        return _lt(self, other)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Ordinal":
        if isinstance(other, int):
            other = from_int(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        lead = other.terms[0][0]
        kept = [t for t in self.terms if _lt(lead, t[0])]
        rest = [t for t in self.terms if t[0] == lead]
        if rest:
            merged = (lead, rest[0][1] + other.terms[0][1])
            return Ordinal(tuple(kept) + (merged,) + other.terms[1:])
        return Ordinal(tuple(kept) + other.terms)

    def succ(self) -> "Ordinal":
        return self + ONE

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Ordinal({render(self)!r})"


def _lt(a: Ordinal, b: Ordinal) -> bool:
    """Lexicographic CNF comparison, term by term."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea != eb:
            return _lt(ea, eb)
        if ca != cb:
            return ca < cb
    return len(a.terms) < len(b.terms)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))


def from_int(n: int) -> Ordinal:
    if n < 0:
        raise OrdinalError("ordinals are non-negative")
    return Ordinal(((ZERO, n),)) if n else ZERO


def omega_pow(exp: Ordinal, coeff: int = 1) -> Ordinal:
    return Ordinal(((exp, coeff),))


OMEGA = omega_pow(ONE)


def compare(a: Ordinal, b: Ordinal) -> str:
    """Total order verdict: 'Less', 'Equal' or 'Greater'."""
    if a == b:
        return "Equal"
    return "Less" if a < b else "Greater"


def sup(values: Iterable[Ordinal]) -> Ordinal:
    """Exact least upper bound of a finite family (max); sup([]) = 0."""
    result = ZERO
    for v in values:
        if result < v:
            result = v
    return result


@dataclass(frozen=True)
class DescribedFamily:
    """An omega-indexed family {f(n) : n < w} from a closed catalog.

    kinds: 'const' (f(n) = base), 'index' (f(n) = n),
    'omega_index' (f(n) = w*n).
    """

    kind: str
    base: Ordinal = ZERO


def sup_family(family: DescribedFamily) -> Ordinal:
    if family.kind == "const":
        return family.base
    if family.kind == "index":
        return OMEGA
    if family.kind == "omega_index":
        return omega_pow(from_int(2))
    raise FamilyShapeError(f"unsupported family shape {family.kind!r}")


# -- text form -------------------------------------------------------------
#
# Grammar:  ordinal := term ('+' term)*
#           term    := 'w' ('^' exponent)? ('*' INT)?  |  INT
#           exponent:= INT | 'w' | '(' ordinal ')'


def render(o: Ordinal) -> str:
    if o.is_zero():
        return "0"
    parts = []
    for exp, coeff in o.terms:
        if exp.is_zero():
            parts.append(str(coeff))
            continue
        if exp == ONE:
            base = "w"
        elif exp.is_finite():
            base = f"w^{exp.as_int()}"
        else:
            base = f"w^({render(exp)})"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return " + ".join(parts)


def parse(text: str) -> Ordinal:
    parser = _Parser(text)
    result = parser.ordinal()
    parser.expect_end()
    return result


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise OrdinalError(f"ordinal syntax error at {self.pos}: {msg}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect_end(self):
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def ordinal(self) -> Ordinal:
        total = self.term()
        while self.eat("+"):
            total = total + self.term()
        return total

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            return from_int(self.integer())
        if not self.eat("w"):
            self.error("expected 'w' or integer")
        exp = ONE
        if self.eat("^"):
            if self.eat("("):
                exp = self.ordinal()
                if not self.eat(")"):
                    self.error("expected ')'")
            elif self.peek() == "w":
                self.eat("w")
                exp = OMEGA
            else:
                exp = from_int(self.integer())
        coeff = self.integer() if self.eat("*") else 1
        return omega_pow(exp, coeff)
