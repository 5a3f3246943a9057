"""Lifting and descent between classical-group data and general linear data,
the parameter-to-representation map, and formal gamma-factor bags.

H_N data are products of segments.  A discrete H_N datum is a product of
distinct balanced segments [-m, m] on self-dual atoms; a tempered one allows
repetitions; a general one adds standard segments Sigma together with their
duals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .classify import (
    DiscreteSeriesDatum,
    LanglandsDatum,
    ReducibilityEntry,
    ReducibilityTable,
    TemperedDatum,
    irreducible_standard,
    langlands_order_check,
)
from .errors import (
    BaseLiftMismatch,
    BoundaryCase,
    GenericSequenceViolation,
    InvalidProfile,
    NonNormalizable,
    OrderViolation,
    ParityViolation,
    UnsupportedFamily,
)
from .groups import (
    CLASSICAL,
    BaseRep,
    CharacterSymbol,
    CuspidalAtom,
    Family,
    GroupFamily,
    IDENTITY,
    Kind,
    PoleType,
    TwistedBase,
    h_dimension,
    is_integral,
    render_exponent,
)
from .params import WeilParameter, decompose, expected_central, r
from .segments import EMPTY, Multisegment, Segment, check_dual, intersection, linked, union

HALF = Fraction(1, 2)


def _require_classical(family: Family) -> None:
    if family not in CLASSICAL:
        raise UnsupportedFamily(f"lifting is not defined for {family.value}")


def balanced(atom: CuspidalAtom, m) -> Segment:
    m = Fraction(m)
    return Segment(atom, -m, int(2 * m))


def _atom_key(a: CuspidalAtom) -> str:
    return a.render()


# ---------------------------------------------------------------------------
# base lifts


class BaseLiftTable:
    """Declared lifts of supercuspidal bases: base -> set of distinct self-dual type R atoms."""

    def __init__(self, entries: Iterable[tuple] = ()):
        self._lift: dict = {}
        self._bases: dict = {}
        for base, atoms in entries:
            self.add(base, atoms)

    def add(self, base: BaseRep, atoms: Iterable[CuspidalAtom]) -> None:
        _require_classical(base.group.family)
        atoms = tuple(sorted(atoms, key=_atom_key))
        if len({_atom_key(a) for a in atoms}) != len(atoms):
            raise BaseLiftMismatch(f"{base.id}: lift atoms must be distinct")
        for a in atoms:
            if not a.is_self_dual or a.effective_pole_type is not PoleType.R:
                raise BaseLiftMismatch(f"{base.id}: {a.render()} is not self-dual of type R")
        dim = sum(a.gl_rank for a in atoms)
        if dim != h_dimension(base.group):
            raise BaseLiftMismatch(f"{base.id}: lift has dimension {dim}, expected {h_dimension(base.group)}")
        cc = IDENTITY
        for a in atoms:
            cc = cc * a.central_char()
        if cc != expected_central(base.group.family):
            raise BaseLiftMismatch(f"{base.id}: lift has central character {cc.render()}")
        self._lift[base.id] = (base, atoms)
        key = (base.group.family, tuple(_atom_key(a) for a in atoms))
        self._bases.setdefault(key, []).append(base)
        self._bases[key].sort(key=lambda b: b.id)

    def lift(self, base: BaseRep | TwistedBase) -> tuple:
        b = base.base if isinstance(base, TwistedBase) else base
        if b.id not in self._lift:
            raise BaseLiftMismatch(f"no declared lift for base {b.id}")
        return self._lift[b.id][1]

    def base(self, id: str) -> BaseRep:
        return self._lift[id][0]

    def bases_for(self, family: Family, atoms: Iterable[CuspidalAtom]) -> list:
        key = (Family(family), tuple(sorted(_atom_key(a) for a in atoms)))
        return list(self._bases.get(key, []))

    def base_for(self, family: Family, atoms: Iterable[CuspidalAtom]) -> BaseRep:
        """Smallest base id lifting to the given atoms."""
        atoms = list(atoms)
        found = self.bases_for(family, atoms)
        if not found:
            names = ", ".join(sorted(_atom_key(a) for a in atoms)) or "nothing"
            raise BaseLiftMismatch(f"no {Family(family).value} base lifts to {{{names}}}")
        return found[0]

    def __iter__(self):
        return iter(sorted(self._lift.values(), key=lambda t: t[0].id))

    def __len__(self):
        return len(self._lift)


def derived_kind(atom: CuspidalAtom, base: BaseRep, lift_atoms: Iterable[CuspidalAtom]) -> Kind:
    """Reducibility type of (atom, base) read off from the base's lift."""
    if not atom.is_self_dual or atom.effective_pole_type is None:
        return Kind.Irr
    if atom.effective_pole_type is PoleType.Rminus:
        return Kind.C_half
    if any(atom == a for a in lift_atoms):
        return Kind.C1
    f = base.group.family
    if f in (Family.SO_even_split, Family.SO_even_qs) and atom.gl_rank % 2 and not base.c_fixed:
        return Kind.CN
    return Kind.C0


class DerivedTable(ReducibilityTable):
    """Reducibility table computed from a base-lift table."""

    def __init__(self, lifts: BaseLiftTable):
        super().__init__()
        self.lifts = lifts

    def get(self, atom, base):
        b = base.base if isinstance(base, TwistedBase) else base
        key = (atom.render(), b.id)
        if key not in self._entries:
            try:
                lift_atoms = self.lifts.lift(b)
            except BaseLiftMismatch:
                return None
            self._entries[key] = ReducibilityEntry(atom, b, derived_kind(atom, b, lift_atoms))
        return self._entries[key]


def table_from_lift(lifts: BaseLiftTable) -> DerivedTable:
    return DerivedTable(lifts)


# ---------------------------------------------------------------------------
# H_N data


@dataclass(frozen=True)
class HNRepDatum:
    """An H_N datum attached to the classical group ``group``."""

    group: GroupFamily
    balanced: Multisegment = EMPTY
    std: tuple = ()

    def __post_init__(self):
        if not isinstance(self.balanced, Multisegment):
            object.__setattr__(self, "balanced", Multisegment(self.balanced))
        object.__setattr__(self, "std", tuple(self.std))

    @property
    def N(self) -> int:
        return h_dimension(self.group)

    def segments(self) -> Counter:
        out = Counter(self.balanced)
        for s in self.std:
            out[s] += 1
            out[check_dual(s)] += 1
        return out

    def dimension(self) -> int:
        return sum(s.rank * c for s, c in self.segments().items())

    def central_class(self) -> CharacterSymbol:
        out = IDENTITY
        for s, c in self.segments().items():
            out = out * s.central_char() ** c
        return out

    def render(self) -> str:
        parts = [s.render() for s in self.std] + [s.render() for s in self.balanced]
        parts += [check_dual(s).render() for s in reversed(self.std)]
        return f"{self.group.render()} <- " + (" x ".join(parts) or "1")


@dataclass(frozen=True)
class PoleProfile:
    """Per atom, the sorted magnitudes m of the balanced segments [-m, m]."""

    poles: tuple  # ((atom, (m1, m2, ...)), ...)

    def as_dict(self) -> dict:
        return dict(self.poles)

    def render(self) -> str:
        return "; ".join(f"{a.render()}: {{{', '.join(render_exponent(m) for m in ms)}}}" for a, ms in self.poles)


def _check_common(rho: HNRepDatum) -> None:
    _require_classical(rho.group.family)
    if rho.dimension() != rho.N:
        raise InvalidProfile(f"dimension {rho.dimension()} != {rho.N}")
    if rho.central_class() != expected_central(rho.group.family):
        raise InvalidProfile(f"central character {rho.central_class().render()} is not allowed")


def _check_balanced(rho: HNRepDatum, exc=InvalidProfile) -> None:
    for s in rho.balanced:
        if s.center != 0:
            raise exc(f"{s.render()} is not balanced")


def validate_discrete(rho: HNRepDatum) -> None:
    _check_common(rho)
    if rho.std:
        raise InvalidProfile("a discrete datum has no standard part")
    _check_balanced(rho)
    counts = rho.balanced.counts()
    for s, c in counts.items():
        if c > 1:
            raise InvalidProfile(f"{s.render()} occurs {c} times")
        pt = s.atom.effective_pole_type
        if not s.atom.is_self_dual or pt is None:
            raise InvalidProfile(f"{s.render()}: atom must be self-dual")
        m = s.high
        if (pt is PoleType.R) != is_integral(m):
            raise InvalidProfile(f"{s.render()}: m = {render_exponent(m)} has the wrong parity for {pt.value}")


def pole_profile(rho: HNRepDatum) -> PoleProfile:
    acc: dict = {}
    for s in rho.balanced:
        acc.setdefault(s.atom, set()).add(s.high)
    return PoleProfile(tuple(sorted(((a, tuple(sorted(ms))) for a, ms in acc.items()), key=lambda t: _atom_key(t[0]))))


def partition(profile: PoleProfile) -> dict:
    """Sort atoms into A0, A1, A2 (type R, d odd), B (type R, d even), C_odd, C_even (type R^-)."""
    out = {k: [] for k in ("A0", "A1", "A2", "B", "C_odd", "C_even")}
    for a, ms in profile.poles:
        d = len(ms)
        if a.effective_pole_type is PoleType.R:
            if d % 2 == 0:
                out["B"].append(a)
            elif ms[0] >= 1:
                out["A2"].append(a)
            else:
                out["A1" if d >= 3 else "A0"].append(a)
        else:
            out["C_odd" if d % 2 else "C_even"].append(a)
    return out


def descent_segments(atom: CuspidalAtom, ms: tuple) -> list:
    """Discrete series segments on ``atom`` for pole magnitudes ``ms``."""
    d = len(ms)
    out = []
    if d % 2:
        if ms[0] > 0:
            lead = 1 if atom.effective_pole_type is PoleType.R else HALF
            out.append(Segment.from_ends(atom, lead, ms[0]))
        rest = ms[1:]
    else:
        rest = ms
    for i in range(0, len(rest), 2):
        out.append(Segment.from_ends(atom, -rest[i], rest[i + 1]))
    return out


def descend_ds(rho: HNRepDatum, lifts: BaseLiftTable) -> DiscreteSeriesDatum:
    validate_discrete(rho)
    prof = pole_profile(rho)
    parts = partition(prof)
    a_set = parts["A0"] + parts["A1"] + parts["A2"]
    base = lifts.base_for(rho.group.family, a_set)
    segs = []
    for a, ms in prof.poles:
        segs.extend(descent_segments(a, ms))
    out = DiscreteSeriesDatum(base, tuple(segs))
    if out.rank != rho.group.rank:
        raise BaseLiftMismatch(f"descended rank {out.rank} != {rho.group.rank}")
    return out


def _lift_core(datum: DiscreteSeriesDatum, lift_atoms: Iterable[CuspidalAtom]) -> list:
    pool = Counter(lift_atoms)
    out = []
    for s in datum.segments:
        a, b = -s.low, s.high
        if a >= 0:
            out += [balanced(s.atom, a), balanced(s.atom, b)]
        elif a == -1:
            if pool[s.atom] < 1:
                raise BaseLiftMismatch(f"{s.render()} needs {s.atom.render()} in the base lift")
            pool[s.atom] -= 1
            out.append(balanced(s.atom, b))
        elif a == -HALF:
            out.append(balanced(s.atom, b))
        else:
            raise BaseLiftMismatch(f"{s.render()} is not a discrete series segment")
    for atom, c in pool.items():
        out += [balanced(atom, 0)] * c
    return out


def lift_ds(datum: DiscreteSeriesDatum, lifts: BaseLiftTable | Iterable[CuspidalAtom]) -> HNRepDatum:
    _require_classical(datum.base.group.family)
    lift_atoms = lifts.lift(datum.base) if isinstance(lifts, BaseLiftTable) else list(lifts)
    return HNRepDatum(GroupFamily(datum.base.group.family, datum.rank), Multisegment(_lift_core(datum, lift_atoms)))


# ---------------------------------------------------------------------------
# tempered level


def _good_parity(s: Segment) -> bool:
    pt = s.atom.effective_pole_type
    return (pt is PoleType.R) == is_integral(s.high)


def validate_tempered(rho: HNRepDatum) -> None:
    _check_common(rho)
    if rho.std:
        raise InvalidProfile("a tempered datum has no standard part")
    _check_balanced(rho)
    counts = rho.balanced.counts()
    for s, c in counts.items():
        if not s.atom.is_self_dual or s.atom.effective_pole_type is None:
            if counts.get(check_dual(s), 0) != c:
                raise ParityViolation(f"{s.render()} and its dual occur a different number of times")
        elif not _good_parity(s) and c % 2:
            raise ParityViolation(f"{s.render()} must occur an even number of times")


def tempered_sets(rho: HNRepDatum) -> dict:
    """Split the distinct factors of rho into N, W, S1 and S2 with their multiplicities."""
    out = {k: [] for k in ("N", "W", "S1", "S2")}
    for s, c in sorted(rho.balanced.counts().items(), key=lambda t: t[0].sort_key()):
        if not s.atom.is_self_dual or s.atom.effective_pole_type is None:
            out["N"].append((s, c))
        elif not _good_parity(s):
            out["W"].append((s, c))
        else:
            out["S1" if c % 2 else "S2"].append((s, c))
    return out


def _representative(s: Segment) -> bool:
    """True when s is the chosen one of the pair {s, dual s}."""
    return s.sort_key() <= check_dual(s).sort_key()


def descend_tempered(rho: HNRepDatum, lifts: BaseLiftTable) -> TemperedDatum:
    validate_tempered(rho)
    sets = tempered_sets(rho)
    tail, core = [], []
    for s, c in sets["N"]:
        if _representative(s):
            tail += [s] * c
    for key in ("W", "S2"):
        for s, c in sets[key]:
            tail += [s] * (c // 2)
    for s, c in sets["S1"]:
        tail += [s] * (c // 2)
        core.append(s)
    core_rank = rho.group.rank - sum(s.rank for s in tail)
    core_group = GroupFamily(rho.group.family, core_rank)
    ds = descend_ds(HNRepDatum(core_group, Multisegment(core)), lifts)
    return TemperedDatum(ds, tuple(tail))


def lift_tempered(t: TemperedDatum, lifts: BaseLiftTable) -> HNRepDatum:
    core = lift_ds(t.ds, lifts)
    segs = list(core.balanced)
    for s in t.balanced:
        segs += [s, check_dual(s)]
    return HNRepDatum(GroupFamily(core.group.family, t.rank), Multisegment(segs))


# ---------------------------------------------------------------------------
# generic level


def def1_clauses(std, temp: TemperedDatum, table: ReducibilityTable) -> list:
    """Check the generic-sequence clauses; returns the (3) sub-clause met by each segment."""
    ds = temp.ds
    try:
        langlands_order_check(std, 0)
    except (OrderViolation, BoundaryCase) as exc:
        raise GenericSequenceViolation(f"order: {exc.message}") from exc
    for i, si in enumerate(std):
        for j, sj in enumerate(std):
            if i != j and (linked(si, sj) or linked(si, check_dual(sj))):
                raise GenericSequenceViolation(f"(1): {si.render()} is linked to {sj.render()} or its dual")
    others = list(ds.segments) + list(temp.balanced)
    others += [check_dual(p) for p in temp.balanced if not p.atom.is_self_dual]
    out = []
    for s in std:
        sv = check_dual(s)
        for o in others:
            if linked(s, o) or linked(sv, o):
                raise GenericSequenceViolation(f"(2): {s.render()} is linked to {o.render()}")
        xi = s.atom
        if xi.dual() != xi:
            out.append("3a")
            continue
        if s.low == 1 and any(d.atom == xi and d.low == 1 and s.high <= d.high for d in ds.segments):
            out.append("3b")
            continue
        kind = table.kind(xi, ds.base)
        exps = {s.low + i for i in range(s.len + 1)}
        if kind in (Kind.CN, Kind.Irr):
            q = -s.low
            ok = not (is_integral(q) and q >= 0)
        else:
            ok = kind.alpha not in exps and -kind.alpha not in exps
        if not ok:
            raise GenericSequenceViolation(f"(3): {s.render()} meets none of (3a), (3b), (3c)")
        out.append("3c")
    return out


def _check_generic_shape(rho: HNRepDatum) -> None:
    _check_common(rho)
    _check_balanced(rho)
    for s in rho.std:
        if s.center <= 0:
            raise InvalidProfile(f"{s.render()}: standard segments need positive centre")


def descend_generic(rho: HNRepDatum, lifts: BaseLiftTable) -> tuple[LanglandsDatum, list]:
    _check_generic_shape(rho)
    n_temp = rho.group.rank - sum(s.rank for s in rho.std)
    temp = descend_tempered(HNRepDatum(GroupFamily(rho.group.family, n_temp), rho.balanced), lifts)
    clauses = def1_clauses(rho.std, temp, table_from_lift(lifts))
    return LanglandsDatum(tuple(rho.std), temp), clauses


def lift_generic(d: LanglandsDatum, lifts: BaseLiftTable) -> HNRepDatum:
    dec = irreducible_standard(d, table_from_lift(lifts))
    if not dec.irreducible:
        raise GenericSequenceViolation(f"standard module is reducible ({dec.condition})")
    core = lift_tempered(d.temp, lifts)
    return HNRepDatum(GroupFamily(core.group.family, d.rank), core.balanced, d.std)


def hn_generic_violation(rho: HNRepDatum) -> str | None:
    """First failing condition of the general-linear description of generic data, or None."""
    try:
        _check_generic_shape(rho)
    except InvalidProfile as exc:
        return f"shape: {exc.message}"
    std = rho.std
    centers = [s.center for s in std]
    if any(x < y for x, y in zip(centers, centers[1:])):
        return "(1): centres must be non-increasing"
    for i, si in enumerate(std):
        for j, sj in enumerate(std):
            if i != j and (linked(si, sj) or linked(si, check_dual(sj))):
                return f"(2): {si.render()} is linked to {sj.render()} or its dual"
    for s in std:
        for o in rho.balanced:
            if linked(s, o) or linked(check_dual(s), o):
                return f"(3): {s.render()} is linked to {o.render()}"
    # discrete core: one copy of each good-parity factor occurring an odd number of times
    core = [s for s, c in rho.balanced.counts().items()
            if s.atom.is_self_dual and s.atom.effective_pole_type is not None and _good_parity(s) and c % 2]
    prof = pole_profile(HNRepDatum(rho.group, Multisegment(core))).as_dict()
    for s in std:
        xi = s.atom
        q = -s.low
        pt = xi.effective_pole_type
        if not xi.is_self_dual or pt is None or not is_integral(2 * q):
            continue
        if (pt is PoleType.R) != is_integral(q):
            continue
        if linked(s, check_dual(s)):
            return f"(4): {s.render()} is linked to its dual"
        ms = prof.get(xi, ())
        in_a = pt is PoleType.R and len(ms) % 2 == 1
        if not in_a or -q >= 2:
            continue
        if q == -1 and ms and ms[0] >= 1 and 1 + s.len <= ms[0]:
            continue
        return f"(4): {s.render()} needs -q >= 2 or a dominating segment"
    return None


# ---------------------------------------------------------------------------
# parameters


def parameter_to_hn(p: WeilParameter) -> HNRepDatum:
    temp, pairs = decompose(p)
    segs = []
    for s in temp.summands:
        segs += [balanced(r(s.atom), Fraction(s.sl2_dim - 1, 2))] * s.mult
    std = tuple(Segment.from_ends(r(t.atom), -t.q, -t.q + t.w) for t in pairs)
    return HNRepDatum(p.group, Multisegment(segs), std)


@dataclass(frozen=True)
class ParamRep:
    datum: object
    generic: bool
    decision: object = None

    def to_json(self) -> dict:
        out = {"datum": self.datum.render(), "generic": self.generic}
        if self.decision is not None:
            out["decision"] = self.decision.to_json()
        return out


def parameter_to_representation(p: WeilParameter, lifts: BaseLiftTable) -> ParamRep:
    temp_p, pairs = decompose(p)
    rho_t = parameter_to_hn(temp_p)
    temp = descend_tempered(rho_t, lifts)
    if not pairs:
        return ParamRep(temp, True)
    std = tuple(Segment.from_ends(r(t.atom), -t.q, -t.q + t.w) for t in pairs)
    datum = LanglandsDatum(std, temp)
    try:
        dec = irreducible_standard(datum, table_from_lift(lifts))
    except BoundaryCase:
        return ParamRep(datum, False)
    return ParamRep(datum, dec.irreducible, dec)


# ---------------------------------------------------------------------------
# gamma bags


class GammaBag:
    """A multiset of segments standing for a product of gamma factors."""

    __slots__ = ("bag",)

    def __init__(self, segments: Iterable[Segment] | Counter = ()):
        self.bag = Counter(segments)
        self.bag = Counter({k: v for k, v in self.bag.items() if v > 0})

    def __eq__(self, other):
        return isinstance(other, GammaBag) and self.bag == other.bag

    def __hash__(self):
        return hash(frozenset(self.bag.items()))

    def segments(self) -> list:
        return sorted(self.bag.elements(), key=Segment.sort_key)

    def render(self) -> str:
        return "{" + ", ".join(s.render() for s in self.segments()) + "}"


def _rewrite(bag: Counter) -> Counter:
    """Normal form of the discrete core bag under the two rewrite rules."""
    limit = sum(bag.values()) + 1
    for _ in range(limit):
        step = _rewrite_once(bag)
        if step is None:
            return bag
        bag = step
    raise NonNormalizable("gamma bag rewriting did not terminate")


def _rewrite_once(bag: Counter) -> Counter | None:
    for s in bag:
        if s.center == 0:
            continue
        d = check_dual(s)
        if bag[d] < 1 or d == s:
            continue
        if linked(s, d):
            out = bag.copy()
            out[s] -= 1
            out[d] -= 1
            cap = intersection(s, d)
            if cap is not None:
                out[cap] += 1
            out[union(s, d)] += 1
            return +out
        point = balanced(s.atom, 0)
        if s.low == 1 and bag[point] >= 1:
            out = bag.copy()
            out[s] -= 1
            out[d] -= 1
            out[point] -= 1
            out[balanced(s.atom, s.high)] += 1
            return +out
    return None


def _core_bag(ds: DiscreteSeriesDatum, lifts: BaseLiftTable) -> Counter:
    bag = Counter()
    for s in ds.segments:
        bag[s] += 1
        bag[check_dual(s)] += 1
    for a in lifts.lift(ds.base):
        bag[balanced(a, 0)] += 1
    return _rewrite(bag)


def gamma_bag(obj, lifts: BaseLiftTable | None = None) -> GammaBag:
    if isinstance(obj, HNRepDatum):
        return GammaBag(obj.segments())
    if lifts is None:
        raise BaseLiftMismatch("group-side gamma bags need the base lifts")
    if isinstance(obj, DiscreteSeriesDatum):
        return GammaBag(_core_bag(obj, lifts))
    if isinstance(obj, TemperedDatum):
        bag = _core_bag(obj.ds, lifts)
        for p in obj.balanced:
            bag[p] += 1
            bag[check_dual(p)] += 1
        return GammaBag(bag)
    if isinstance(obj, LanglandsDatum):
        bag = gamma_bag(obj.temp, lifts).bag
        for s in obj.std:
            bag[s] += 1
            bag[check_dual(s)] += 1
        return GammaBag(bag)
    raise InvalidProfile(f"no gamma bag for {type(obj).__name__}")


def check_gamma_identity(g_datum, hn_datum: HNRepDatum, lifts: BaseLiftTable) -> bool:
    return gamma_bag(g_datum, lifts) == gamma_bag(hn_datum)
