"""The Grothendieck ring R of all H_k in the delta basis, with the comultiplication m*."""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Mapping

from .segments import EMPTY, Multisegment, Segment, _sum


def _clean(d: Mapping) -> dict:
    return {k: v for k, v in d.items() if v}


class _Free:
    """Finite Z-linear combinations over hashable keys."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = _clean(terms or {})

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = defaultdict(int, self.terms)
        for k, v in other.terms.items():
            out[k] += v
        return type(self)(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: int):
        return type(self)({k: c * v for k, v in self.terms.items()})

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: self._key_order(kv[0])))

    def items(self):
        return list(iter(self))

    @staticmethod
    def _key_order(key):
        return key

    def mass(self) -> int:
        return sum(self.terms.values())


class RElement(_Free):
    """Element of R: Multisegment -> coefficient."""

    @classmethod
    def of(cls, *segments: Segment) -> "RElement":
        return cls({Multisegment(segments): 1})

    @classmethod
    def basis(cls, ms: Multisegment) -> "RElement":
        return cls({ms: 1})

    @classmethod
    def one(cls) -> "RElement":
        return cls({EMPTY: 1})

    def __mul__(self, other: "RElement") -> "RElement":
        out = defaultdict(int)
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] += x * y
        return RElement(out)

    @staticmethod
    def _key_order(key):
        return key.sort_key()

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(_coef(c) + "{" + ms.render() + "}" for ms, c in self)


class RTensor(_Free):
    """Element of R (x) R: (Multisegment, Multisegment) -> coefficient."""

    def __mul__(self, other: "RTensor") -> "RTensor":
        out = defaultdict(int)
        other_terms = other.terms.items()
        for (a1, a2), x in self.terms.items():
            for (b1, b2), y in other_terms:
                out[(_add(a1, b1), _add(a2, b2))] += x * y
        return RTensor(out)

    @classmethod
    def one(cls) -> "RTensor":
        return cls({(EMPTY, EMPTY): 1})

    @staticmethod
    def _key_order(key):
        return (key[0].sort_key(), key[1].sort_key())

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{_coef(c)}{{{a.render()}}}⊗{{{b.render()}}}" for (a, b), c in self)


class RTriple(_Free):
    """Element of R (x) R (x) R, used for coassociativity."""

    @staticmethod
    def _key_order(key):
        return tuple(k.sort_key() for k in key)


def _add(a: Multisegment, b: Multisegment) -> Multisegment:
    if not b.segments:
        return a
    if not a.segments:
        return b
    return _sum(a, b)


def _coef(c: int) -> str:
    return "" if c == 1 else ("-" if c == -1 else f"{c}·")


@lru_cache(maxsize=1 << 16)
def _piece(atom, low, n: int) -> Multisegment:
    # shared objects make later equality tests identity checks
    return Multisegment([Segment(atom, low, n)])


@lru_cache(maxsize=1 << 16)
def m_star_segment(s: Segment) -> RTensor:
    """sum over low-1 <= i <= high of delta([i+1, high]) (x) delta([low, i])."""
    out = {}
    for j in range(s.len + 2):  # i = low - 1 + j
        left = _piece(s.atom, s.low + j, s.len - j) if j <= s.len else EMPTY
        right = _piece(s.atom, s.low, j - 1) if j >= 1 else EMPTY
        out[(left, right)] = out.get((left, right), 0) + 1
    return RTensor(out)


@lru_cache(maxsize=1 << 16)
def m_star_multisegment(ms: Multisegment) -> RTensor:
    out = RTensor.one()
    for s in ms:
        out = out * m_star_segment(s)
    return out


def m_star(x: RElement | Multisegment | Segment) -> RTensor:
    """Ring-homomorphic extension of ``m_star_segment``."""
    if isinstance(x, Segment):
        return m_star_segment(x)
    if isinstance(x, Multisegment):
        return m_star_multisegment(x)
    out = RTensor()
    for ms, c in x.terms.items():
        out = out + m_star_multisegment(ms).scale(c)
    return out


def m_star_left(t: RTensor) -> RTriple:
    """(m* (x) id)."""
    out = defaultdict(int)
    for (a, b), c in t.terms.items():
        for (a1, a2), d in m_star_multisegment(a).terms.items():
            out[a1, a2, b] += c * d
    return RTriple(out)


def m_star_right(t: RTensor) -> RTriple:
    """(id (x) m*)."""
    out = defaultdict(int)
    for (a, b), c in t.terms.items():
        for (b1, b2), d in m_star_multisegment(b).terms.items():
            out[(a, b1, b2)] += c * d
    return RTriple(out)


def counit(x: RElement) -> int:
    return x.terms.get(EMPTY, 0)


def counit_left(t: RTensor) -> RElement:
    """(epsilon (x) id)."""
    return RElement({b: c for (a, b), c in t.terms.items() if not a})


def counit_right(t: RTensor) -> RElement:
    return RElement({a: c for (a, b), c in t.terms.items() if not b})


def as_relement(x: RElement | Multisegment | Segment | Iterable[Segment]) -> RElement:
    if isinstance(x, RElement):
        return x
    if isinstance(x, Segment):
        return RElement.of(x)
    if isinstance(x, Multisegment):
        return RElement.basis(x)
    return RElement.basis(Multisegment(x))
