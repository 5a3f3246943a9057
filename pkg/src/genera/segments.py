"""Zelevinsky segments on a fixed cuspidal atom and multisets of them."""

from __future__ import annotations

import re
import weakref
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .errors import InvalidExponent, NotDualPair, ParseError, UnlinkedPair
from .groups import CharacterSymbol, CuspidalAtom, exponent, render_exponent


@dataclass(frozen=True)
class Segment:
    """{nu^low tau, nu^(low+1) tau, ..., nu^(low+len) tau}."""

    atom: CuspidalAtom
    low: Fraction
    len: int

    def __post_init__(self):
        object.__setattr__(self, "low", exponent(self.low))
        if not isinstance(self.len, int) or self.len < 0:
            raise InvalidExponent(f"segment length must be a nonnegative integer, got {self.len!r}")

    @classmethod
    def from_ends(cls, atom: CuspidalAtom, low, high) -> "Segment":
        low, high = exponent(low), exponent(high)
        d = high - low
        if d.denominator != 1 or d < 0:
            raise InvalidExponent(f"[{low},{high}] is not a segment")
        return cls(atom, low, int(d))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Segment) or self._hash != other._hash:
            return False
        return self.len == other.len and self.low == other.low and self.atom == other.atom

    @cached_property
    def _hash(self) -> int:
        return hash((self.atom, self.low, self.len))

    @cached_property
    def high(self) -> Fraction:
        return self.low + self.len

    @cached_property
    def center(self) -> Fraction:
        return self.low + Fraction(self.len, 2)

    @property
    def size(self) -> int:
        return self.len + 1

    @property
    def rank(self) -> int:
        return self.atom.gl_rank * self.size

    def exponents(self) -> list[Fraction]:
        return [self.low + i for i in range(self.len + 1)]

    def shifted(self, s) -> "Segment":
        return Segment(self.atom, self.low + exponent(s), self.len)

    def twisted(self, chi: CharacterSymbol) -> "Segment":
        return Segment(self.atom.twisted(chi), self.low + chi.nu_shift, self.len)

    def central_char(self) -> CharacterSymbol:
        """Central character of delta(segment)."""
        return self._central

    @cached_property
    def _central(self) -> CharacterSymbol:
        w = self.atom.central_char() ** self.size
        return w * CharacterSymbol.nu(self.atom.gl_rank * self.size * self.center)

    def sort_key(self):
        return self._sort_key

    @cached_property
    def _sort_key(self):
        return (self.atom.render(), -self.center, self.len)

    def render(self) -> str:
        return f"d([{render_exponent(self.low)},{render_exponent(self.high)}]@{self.atom.render()})"

    __str__ = render

    def __repr__(self):
        return f"Segment({self.render()})"

    def to_json(self) -> dict:
        return {"atom": self.atom.render(), "low": render_exponent(self.low), "len": self.len}


def seg(atom: CuspidalAtom, low, high) -> Segment:
    """Shorthand for a segment given by its two ends."""
    return Segment.from_ends(atom, low, high)


@lru_cache(maxsize=1 << 18)
def _sum(a: "Multisegment", b: "Multisegment") -> "Multisegment":
    m = Multisegment(a.segments + b.segments)
    return _INTERNED.setdefault(m, m)


_INTERNED: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()


class Multisegment:
    """An immutable multiset of segments kept in canonical order."""

    __slots__ = ("segments", "_hash", "__weakref__")

    def __init__(self, segments: Iterable[Segment] = ()):
        self.segments = tuple(sorted(segments, key=Segment.sort_key))
        self._hash = hash(self.segments)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Multisegment) and self._hash == other._hash and self.segments == other.segments

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    def __len__(self):
        return len(self.segments)

    def __bool__(self):
        return bool(self.segments)

    def __add__(self, other: "Multisegment") -> "Multisegment":
        if not other:
            return self
        if not self.segments:
            return other if isinstance(other, Multisegment) else Multisegment(other)
        return _sum(self, other if isinstance(other, Multisegment) else Multisegment(other))

    def __repr__(self):
        return f"Multisegment({self.render()})"

    @property
    def rank(self) -> int:
        return sum(s.rank for s in self.segments)

    def counts(self) -> Counter:
        return Counter(self.segments)

    def map(self, fn: Callable[[Segment], Segment]) -> "Multisegment":
        return Multisegment(fn(s) for s in self.segments)

    def dual(self) -> "Multisegment":
        return self.map(check_dual)

    def twisted(self, chi: CharacterSymbol) -> "Multisegment":
        return self if chi.is_identity else self.map(lambda s: s.twisted(chi))

    def central_char(self) -> CharacterSymbol:
        out = CharacterSymbol()
        for s in self.segments:
            out = out * s.central_char()
        return out

    def sort_key(self):
        return tuple(s.sort_key() for s in self.segments)

    def render(self) -> str:
        if not self.segments:
            return "1"
        return " x ".join(s.render() for s in self.segments)

    __str__ = render


EMPTY = Multisegment()


def check_dual(s: Segment) -> Segment:
    """[nu^-a xi, nu^b xi] -> [nu^-b xi^, nu^a xi^]."""
    return Segment(s.atom.dual(), -s.high, s.len)


def _same_line(s1: Segment, s2: Segment) -> bool:
    return s1.atom == s2.atom and (s1.low - s2.low).denominator == 1


def linked(s1: Segment, s2: Segment) -> bool:
    """Union is a longer segment and neither contains the other."""
    if not _same_line(s1, s2):
        return False
    if s1.low < s2.low:
        a, b = s1, s2
    else:
        a, b = s2, s1
    if a.low == b.low:
        return False
    return b.low <= a.high + 1 and b.high > a.high


def gl_product_irreducible(s1: Segment, s2: Segment) -> bool:
    return not linked(s1, s2)


def contains(big: Segment, small: Segment) -> bool:
    return _same_line(big, small) and big.low <= small.low and small.high <= big.high


def intersection(s1: Segment, s2: Segment) -> Segment | None:
    if not _same_line(s1, s2):
        return None
    lo, hi = max(s1.low, s2.low), min(s1.high, s2.high)
    return Segment.from_ends(s1.atom, lo, hi) if lo <= hi else None


def union(s1: Segment, s2: Segment) -> Segment | None:
    """Union when it is a segment, else None."""
    if not _same_line(s1, s2):
        return None
    if max(s1.low, s2.low) > min(s1.high, s2.high) + 1:
        return None
    return Segment.from_ends(s1.atom, min(s1.low, s2.low), max(s1.high, s2.high))


def resolve_dual_pair(d: Segment, dv: Segment) -> Multisegment:
    """Generic constituent of delta(D) x delta(D^) for a linked dual pair: {D cap D^, D cup D^}."""
    if dv != check_dual(d):
        raise NotDualPair(f"{dv.render()} is not the dual of {d.render()}")
    if not linked(d, dv):
        raise UnlinkedPair(f"{d.render()} and its dual are not linked")
    cap, cup = intersection(d, dv), union(d, dv)
    return Multisegment([x for x in (cap, cup) if x is not None])


# ---------------------------------------------------------------------------
# text and JSON forms

_SEG = re.compile(r"\s*d\(\s*\[\s*([^,\]]+)\s*,\s*([^\]]+)\s*\]\s*@\s*([^)]+?)\s*\)\s*")


def parse_atom_ref(text: str, resolve: Callable[[str], CuspidalAtom], orders: Mapping[str, int] | None = None) -> CuspidalAtom:
    """``tau``, ``tau^`` or ``chi*tau`` (unitary twist prefix)."""
    text = text.strip()
    if "*" in text:
        head, _, name = text.rpartition("*")
        return resolve(name.strip()).twisted(CharacterSymbol.parse(head, orders))
    return resolve(text)


def parse_segment(text: str, resolve: Callable[[str], CuspidalAtom], orders=None) -> Segment:
    m = _SEG.fullmatch(text)
    if not m:
        raise ParseError(f"cannot parse segment {text!r}")
    atom = parse_atom_ref(m.group(3), resolve, orders)
    return Segment.from_ends(atom, m.group(1), m.group(2))


def parse_multisegment(text: str, resolve, orders=None) -> Multisegment:
    text = text.strip()
    if text in ("", "1"):
        return EMPTY
    return Multisegment(parse_segment(t, resolve, orders) for t in text.split(" x "))


def segment_from_json(obj: Mapping, resolve, orders=None) -> Segment:
    try:
        atom = parse_atom_ref(str(obj["atom"]), resolve, orders)
        return Segment(atom, exponent(str(obj["low"])), int(obj["len"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad segment object {obj!r}") from exc
