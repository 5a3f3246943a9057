"""Jacquet calculus for classical, similitude and general spin families.

A term of a ledger is ``gl (x) (rest x| slot)``: ``gl`` is the GL part of
the Levi, ``rest x| slot`` a formal induced representation of the smaller
group.  ``slot`` is a twisted supercuspidal base or a generalized Steinberg
symbol.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import InvalidDatum, InvalidSteinbergRange, RankMismatch, UnknownFamilyRow
from .glring import RElement, _coef, _Free, as_relement, m_star, m_star_multisegment
from .groups import (
    C_ACTION,
    CLASSICAL,
    GSPIN,
    SIMILITUDE,
    BaseRep,
    CharacterSymbol,
    CuspidalAtom,
    Family,
    GroupFamily,
    Kind,
    TwistedBase,
    as_twisted,
    beta as beta_of,
    central_character,
    is_half_integral,
    twist_induced,
)
from .segments import EMPTY, Multisegment, Segment, check_dual

# ---------------------------------------------------------------------------
# N*


class NStarElement(_Free):
    """(rho1, rho2, rho3, sign) -> coefficient; sign 0 is e, 1 is c."""

    def __mul__(self, other: "NStarElement") -> "NStarElement":
        out = defaultdict(int)
        for (a1, a2, a3, s), x in self.terms.items():
            for (b1, b2, b3, t), y in other.terms.items():
                out[(a1 + b1, a2 + b2, a3 + b3, s ^ t)] += x * y
        return NStarElement(out)

    @classmethod
    def one(cls) -> "NStarElement":
        return cls({(EMPTY, EMPTY, EMPTY, 0): 1})

    @staticmethod
    def _key_order(key):
        return (key[0].sort_key(), key[1].sort_key(), key[2].sort_key(), key[3])

    def render(self) -> str:
        return " + ".join(
            f"{_coef(c)}{{{a.render()}}}⊗{{{b.render()}}}⊗{{{d.render()}}}⊗{'ec'[s]}" for (a, b, d, s), c in self
        ) or "0"


def n_star(x: RElement | Multisegment | Segment) -> NStarElement:
    """(dual (x) m*)_D o swap o m*."""
    out = defaultdict(int)
    for (a, b), c in m_star(as_relement(x)).terms.items():
        sign = b.rank % 2
        for (a1, a2), d in m_star_multisegment(a).terms.items():
            out[(b.dual(), a1, a2, sign)] += c * d
    return NStarElement(out)


def n_star_segment(s: Segment) -> NStarElement:
    """Closed form on one segment [a, b]: sum over a-1 <= i <= j <= b."""
    out = defaultdict(int)
    a, k = s.low, s.atom.gl_rank
    dual = s.atom.dual()
    for p in range(s.len + 2):  # i = a - 1 + p
        i = a - 1 + p
        r1 = Multisegment([Segment(dual, -i, p - 1)]) if p >= 1 else EMPTY
        for q in range(p, s.len + 2):  # j = a - 1 + q
            j = a - 1 + q
            r2 = Multisegment([Segment(s.atom, j + 1, s.len - q)]) if q <= s.len else EMPTY
            r3 = Multisegment([Segment(s.atom, i + 1, q - p - 1)]) if q > p else EMPTY
            out[(r1, r2, r3, (p * k) % 2)] += 1
    return NStarElement(out)


# ---------------------------------------------------------------------------
# slots and ledgers


@dataclass(frozen=True)
class SteinbergSymbol:
    """delta([nu^alpha tau, nu^b tau]; sigma), the generalized Steinberg subrepresentation."""

    segment: Segment
    base: TwistedBase

    @property
    def group(self) -> GroupFamily:
        return self.base.group.with_rank(self.rank)

    @property
    def rank(self) -> int:
        return self.base.rank + self.segment.rank

    @property
    def central_char(self) -> CharacterSymbol:
        return _slot_char(self.base.group.family, Multisegment([self.segment]), self.base)

    def apply_c(self) -> "SteinbergSymbol":
        return SteinbergSymbol(self.segment, self.base.apply_c())

    def apply_c_power(self, m: int) -> "SteinbergSymbol":
        return self.apply_c() if m % 2 else self

    def twisted(self, chi: CharacterSymbol) -> "SteinbergSymbol":
        gl, b = twist_induced(self.group, chi, self.segment.rank, self.base.rank)
        return SteinbergSymbol(self.segment.twisted(gl), self.base.twisted(b))

    def render(self) -> str:
        s = self.segment
        from .groups import render_exponent as r

        return f"d([{r(s.low)},{r(s.high)}]@{s.atom.render()};{self.base.render()})"

    __str__ = render

    def sort_key(self):
        return (self.base.sort_key(), self.segment.sort_key())


Slot = Union[TwistedBase, SteinbergSymbol]


def _slot_sort_key(slot: Slot):
    return (0, slot.sort_key(), ()) if isinstance(slot, TwistedBase) else (1, slot.base.sort_key(), slot.segment.sort_key())


def _slot_char(family: Family, rest: Multisegment, base: Slot) -> CharacterSymbol:
    """Central character of rest x| base."""
    if family in CLASSICAL:
        return CharacterSymbol()
    group = GroupFamily(family, rest.rank + base.rank)
    return central_character(group, [s.central_char() for s in rest], base.central_char, base.rank)


def _twist_slot(family: Family, rest: Multisegment, base: Slot, chi: CharacterSymbol):
    # similitude twists act on the base only
    return rest, base.twisted(chi)


@dataclass(frozen=True)
class GTerm:
    gl: Multisegment
    rest: Multisegment
    slot: Slot

    def sort_key(self):
        return (self.gl.sort_key(), self.rest.sort_key(), _slot_sort_key(self.slot))

    @property
    def second_rank(self) -> int:
        return self.rest.rank + self.slot.rank

    def render(self) -> str:
        second = self.slot.render() if not self.rest else f"{self.rest.render()} x| {self.slot.render()}"
        return f"{{{self.gl.render()}}}⊗{{{second}}}"


class GRepElement(_Free):
    """Element of R (x) R[G]: GTerm -> coefficient."""

    @classmethod
    def unit(cls, slot: Slot | BaseRep) -> "GRepElement":
        if isinstance(slot, BaseRep):
            slot = TwistedBase(slot)
        return cls({GTerm(EMPTY, EMPTY, slot): 1})

    @staticmethod
    def _key_order(key):
        return key.sort_key()

    def render(self) -> str:
        return "\n".join(f"{_coef(c)}{t.render()}" for t, c in self) or "0"

    def lines(self) -> list[str]:
        return [f"{_coef(c)}{t.render()}" for t, c in self]

    def filter(self, pred) -> "GRepElement":
        return GRepElement({t: c for t, c in self.terms.items() if pred(t)})

    def normalized(self, family: Family | GroupFamily) -> "GRepElement":
        return normalize(family, self)


def _family(group) -> Family:
    if isinstance(group, GroupFamily):
        return group.family
    return Family(group)


def tilde_rtimes(group: GroupFamily | Family, nx: NStarElement, gx: GRepElement) -> GRepElement:
    """Pair N*(lambda) with mu*(pi) per the family's rule, giving mu*(lambda x| pi)."""
    f = _family(group)
    if f not in CLASSICAL and f not in SIMILITUDE and f not in GSPIN:
        raise UnknownFamilyRow(str(f))
    plain_twist = f in SIMILITUDE
    spin = f in GSPIN
    signed = f in C_ACTION
    out = defaultdict(int)
    for (r1, r2, r3, d), c in nx.terms.items():
        for term, e in gx.terms.items():
            slot = term.slot
            rho1 = r1
            if spin:
                rho1 = r1.twisted(_slot_char(f, term.rest, slot))
            rest = r3 + term.rest
            if plain_twist:
                chi = r1.dual().central_char()
                rest_t, slot = _twist_slot(f, term.rest, slot, chi)
                rest = r3 + rest_t
            if signed and d:
                slot = slot.apply_c()
            out[GTerm(rho1 + r2 + term.gl, rest, slot)] += c * e
    return GRepElement(out)


def mu_star_steinberg(st: SteinbergSymbol) -> GRepElement:
    """sum over alpha-1 <= i <= b of delta([i+1, b]) (x) delta([alpha, i]; sigma)."""
    s = st.segment
    out = {}
    for j in range(s.len + 2):
        gl = Multisegment([Segment(s.atom, s.low + j, s.len - j)]) if j <= s.len else EMPTY
        slot: Slot = SteinbergSymbol(Segment(s.atom, s.low, j - 1), st.base) if j >= 1 else st.base
        out[GTerm(gl, EMPTY, slot)] = 1
    return GRepElement(out)


def mu_star_slot(slot: Slot | BaseRep) -> GRepElement:
    if isinstance(slot, SteinbergSymbol):
        return mu_star_steinberg(slot)
    return GRepElement.unit(slot)


def mu_star(lam, base: Slot | BaseRep, group: GroupFamily | None = None) -> GRepElement:
    """mu*(lambda x| base) = N*(lambda) (x~) mu*(base)."""
    lam = as_relement(lam)
    slot = as_twisted(base) if isinstance(base, BaseRep) else base
    fam = slot.base.group.family if isinstance(slot, SteinbergSymbol) else slot.group.family
    if group is not None:
        if group.family is not fam:
            raise RankMismatch(f"base belongs to {fam.value}, not {group.family.value}")
        for ms in lam.terms:
            if ms.rank + slot.rank != group.rank:
                raise RankMismatch(f"{ms.rank} + {slot.rank} != {group.rank}")
    return tilde_rtimes(fam, n_star(lam), mu_star_slot(slot))


def mu_star_induced(lam, g: GRepElement, family: Family | GroupFamily) -> GRepElement:
    """mu*(lambda x| pi) from a known mu*(pi)."""
    return tilde_rtimes(family, n_star(as_relement(lam)), g)


def mu_star_small_rank(point: Segment, base0: BaseRep) -> GRepElement:
    """The rank-one even cases chi x| (chi' (x) e), written out term by term."""
    f = base0.group.family
    if base0.rank != 0 or point.len != 0 or point.atom.gl_rank != 1 or f not in C_ACTION:
        raise RankMismatch("small-rank formula needs a GL_1 point over an even rank-0 base")
    sigma = TwistedBase(base0)
    chi = Multisegment([point])
    inv = Multisegment([check_dual(point)])
    if f in (Family.SO_even_split, Family.SO_even_qs):
        third = GTerm(inv, EMPTY, sigma.apply_c())
    elif f in (Family.GSO_even_split, Family.GSO_even_qs):
        third = GTerm(inv, EMPTY, sigma.twisted(point.central_char()).apply_c())
    else:
        third = GTerm(inv.twisted(base0.central_char), EMPTY, sigma.apply_c())
    terms = [GTerm(EMPTY, chi, sigma), GTerm(chi, EMPTY, sigma), third]
    out = defaultdict(int)
    for t in terms:
        out[t] += 1
    return GRepElement(out)


# ---------------------------------------------------------------------------
# Weyl normal form of the second slot


def weyl_flip(family: Family | GroupFamily, s: Segment, slot: Slot) -> tuple[Segment, Slot]:
    """delta(S) x| pi = w'_pi delta(S^) x| w'_S c_S pi in the Grothendieck group."""
    f = _family(family)
    if f in GSPIN:
        new = check_dual(s).twisted(slot.central_char)
    else:
        new = check_dual(s)
    if f in SIMILITUDE:
        slot = slot.twisted(s.central_char())
    if f in C_ACTION and s.rank % 2:
        slot = slot.apply_c()
    return new, slot


def normalize_slot(family, rest: Multisegment, slot: Slot) -> tuple[Multisegment, Slot]:
    """Flip every segment to its higher-centre side; at equal centres take the smallest rendering."""
    f = _family(family)
    kept, ties = [], []
    for s in rest:
        new, new_slot = weyl_flip(f, s, slot)
        if new.center == s.center:
            ties.append(s)
        elif new.center > s.center:
            kept.append(new)
            slot = new_slot
        else:
            kept.append(s)
    best = None
    for mask in range(1 << len(ties)):
        cur, chosen = slot, []
        for i, s in enumerate(ties):
            if mask >> i & 1:
                new, cur = weyl_flip(f, s, cur)
                chosen.append(new)
            else:
                chosen.append(s)
        ms = Multisegment(kept + chosen)
        key = (ms.sort_key(), _slot_sort_key(cur))
        if best is None or key < best[0]:
            best = (key, ms, cur)
    return best[1], best[2]


def normalize(family, g: GRepElement) -> GRepElement:
    out = defaultdict(int)
    for t, c in g.terms.items():
        rest, slot = normalize_slot(family, t.rest, t.slot)
        out[GTerm(t.gl, rest, slot)] += c
    return GRepElement(out)


# ---------------------------------------------------------------------------
# slices and words


def extract(g: GRepElement, slice: str | int, family=None):
    """``"sGL"`` keeps terms whose second slot is a bare base, ``m`` or ``"s(m)"`` the
    terms of GL rank m, and ``"min"`` returns the ordered minimal words."""
    if slice == "min":
        if family is None:
            raise ValueError("minimal words need the family")
        if not g.terms:
            return Counter()
        # every grade describes the whole representation; refine the lowest one
        low = min(t.gl.rank for t in g.terms)
        return jacquet_words(g.filter(lambda t: t.gl.rank == low), family)
    if slice in ("sGL", "s_GL", "GL"):
        return g.filter(lambda t: not t.rest and isinstance(t.slot, TwistedBase))
    m = _parse_m(slice)
    return g.filter(lambda t: t.gl.rank == m)


def _parse_m(slice) -> int:
    if isinstance(slice, int):
        return slice
    text = str(slice).strip()
    for pre in ("s(", "s_(", "s"):
        if text.startswith(pre):
            text = text[len(pre):]
            break
    return int(text.rstrip(")"))


def chain(s: Segment) -> tuple:
    """Minimal Jacquet word of delta(s): exponents in decreasing order."""
    return tuple((s.atom, s.high - i) for i in range(s.len + 1))


def shuffle_words(chains: Iterable[tuple]) -> Counter:
    """All shuffles of the given words, with multiplicity."""
    chains = tuple(chains)

    @lru_cache(maxsize=None)
    def go(pos: tuple) -> tuple:
        if all(p == len(c) for p, c in zip(pos, chains)):
            return (((), 1),)
        acc: Counter = Counter()
        for i, (p, c) in enumerate(zip(pos, chains)):
            if p < len(c):
                nxt = pos[:i] + (p + 1,) + pos[i + 1:]
                for w, m in go(nxt):
                    acc[(c[p],) + w] += m
        return tuple(acc.items())

    return Counter(dict(go(tuple(0 for _ in chains))))


def multisegment_words(ms: Multisegment) -> Counter:
    return shuffle_words(chain(s) for s in ms)


def jacquet_words(g: GRepElement, family) -> Counter:
    """Ordered minimal Jacquet words: (word, base) -> multiplicity."""
    f = _family(family)
    out: Counter = Counter()
    for t, c in g.terms.items():
        inner = tilde_rtimes(f, n_star(RElement.basis(t.rest)), mu_star_slot(t.slot))
        head = multisegment_words(t.gl)
        for u, d in extract(inner, "sGL").terms.items():
            tail = multisegment_words(u.gl)
            for w1, m1 in head.items():
                for w2, m2 in tail.items():
                    out[(w1 + w2, u.slot)] += c * d * m1 * m2
    return out


# ---------------------------------------------------------------------------
# Steinberg and discrete series bounds


def steinberg_jacquet(entry, alpha, b, base: BaseRep | TwistedBase) -> tuple[tuple, TwistedBase]:
    """Iterated minimal Jacquet word of delta([nu^alpha tau, nu^b tau]; sigma).

    ``alpha`` and ``b`` are measured from beta; the returned word carries the
    actual exponents.
    """
    from .groups import exponent

    alpha, b = exponent(alpha), exponent(b)
    kind = Kind(entry.kind)
    expected = Fraction(0) if kind is Kind.CN else kind.alpha
    if expected is None:
        raise InvalidSteinbergRange(f"{kind.value} pairs have no Steinberg representation")
    if alpha != expected or b < alpha or (b - alpha).denominator != 1:
        raise InvalidSteinbergRange(f"need b >= alpha = {expected} with b - alpha integral")
    sigma = as_twisted(base)
    bt = beta_of(sigma)
    word = tuple((entry.atom, bt + b - i) for i in range(int(b - alpha) + 1))
    return word, sigma


def steinberg_symbol(atom: CuspidalAtom, alpha, b, base: BaseRep | TwistedBase) -> SteinbergSymbol:
    from .groups import exponent

    sigma = as_twisted(base)
    bt = beta_of(sigma)
    return SteinbergSymbol(Segment.from_ends(atom, bt + exponent(alpha), bt + exponent(b)), sigma)


def _bound_factor(s: Segment, bt: Fraction) -> NStarElement:
    a = bt - s.low  # unshifted a
    b = s.high - bt
    if not is_half_integral(a):
        raise InvalidDatum(f"{s.render()}: 2a must be integral")
    out = defaultdict(int)
    i = -a
    while i <= abs(a):
        nb = int(i + a)  # |B|, B = [beta - a, beta + i - 1]
        B = Multisegment([Segment(s.atom, bt - a, nb - 1)]) if nb >= 1 else EMPTY
        C = Multisegment([Segment.from_ends(s.atom, bt + i, bt + b)]) if i <= b else EMPTY
        out[(B.dual(), C, EMPTY, B.rank % 2)] = 1
        i += 1
    return NStarElement(out)


def tadic_bound(datum) -> GRepElement:
    """Support bound for s_GL of the generic discrete series attached to ``datum``.

    Coefficients are normalized to one: the bound certifies support.
    """
    base = TwistedBase(datum.base, datum.chi0)
    bt = beta_of(base)
    nx = NStarElement.one()
    for s in datum.segments:
        nx = nx * _bound_factor(s, bt)
    g = tilde_rtimes(datum.base.group.family, nx, GRepElement.unit(base))
    return GRepElement({t: 1 for t in g.terms})
