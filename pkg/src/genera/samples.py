"""Canonical sample data and generators shared by the self-test and the test suite.

The base-lift sandbox declares one base for every admissible set of lift
atoms, so descent always has a unique canonical base.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator

from .classify import (
    DiscreteSeriesDatum,
    LanglandsDatum,
    ReducibilityEntry,
    ReducibilityTable,
    TemperedDatum,
    check_ds,
)
from .errors import BaseLiftMismatch, GeneraError
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
    IDENTITY,
    Kind,
    PoleType,
    beta,
    case4_holds,
    h_dimension,
)
from .lifting import BaseLiftTable, HNRepDatum, balanced, derived_kind
from .params import ETA, GaloisAtom, ParameterSummand, WeilParameter, expected_central, validate_parameter
from .segments import Multisegment, Segment, check_dual

HALF = Fraction(1, 2)

ONE = CuspidalAtom.selfdual("one", 1, "R", IDENTITY)
E1 = CuspidalAtom.selfdual("e1", 1, "R", ETA)
T2 = CuspidalAtom.selfdual("t2", 2, "R", IDENTITY)
U1 = CuspidalAtom.selfdual("u1", 1, "Rminus", IDENTITY)
U2 = CuspidalAtom.selfdual("u2", 2, "Rminus", IDENTITY)
LAM, LAM_D = CuspidalAtom.pair("lam", 1, CharacterSymbol.generator("w[lam]"))

TYPE_R = (ONE, E1, T2)
SELF_DUAL = TYPE_R + (U1, U2)
ATOMS = SELF_DUAL + (LAM, LAM_D)

FAMILY_ORDER = tuple(Family)
CLASSICAL_ORDER = tuple(f for f in FAMILY_ORDER if f in CLASSICAL)


def _central(atoms) -> CharacterSymbol:
    out = IDENTITY
    for a in atoms:
        out = out * a.central_char()
    return out


def standard_lifts() -> BaseLiftTable:
    """One base per (classical family, admissible subset of the type R atoms)."""
    table = BaseLiftTable()
    for fam in CLASSICAL_ORDER:
        for k in range(len(TYPE_R) + 1):
            for sub in itertools.combinations(TYPE_R, k):
                dim = sum(a.gl_rank for a in sub)
                if _central(sub) != expected_central(fam):
                    continue
                rank = next((n for n in range(dim + 1) if h_dimension(GroupFamily(fam, n)) == dim), None)
                if rank is None:
                    continue
                c_fixed = None
                if fam in C_ACTION:
                    c_fixed = any(a.gl_rank % 2 for a in sub)
                name = "+".join(a.id for a in sub) or "1"
                base = BaseRep.make(f"{fam.value}[{name}]", fam, rank, omega=IDENTITY, c_fixed=c_fixed)
                table.add(base, sub)
    return table


# ---------------------------------------------------------------------------
# exhaustive group-side data


def _coordinate_values(kind: Kind, max_end: int) -> list:
    if kind is Kind.C1:
        return [Fraction(-1)] + [Fraction(i) for i in range(1, max_end + 1)]
    if kind is Kind.C_half:
        return [Fraction(2 * i - 1, 2) for i in range(max_end + 1)]
    return [Fraction(i) for i in range(max_end + 1)]


def coordinate_chains(kind: Kind, max_end: int = 3, max_segments: int = 3) -> list:
    """Strictly increasing chains a1 < b1 < a2 < ... with a1 allowed for ``kind``."""
    vals = _coordinate_values(kind, max_end)
    out = [()]
    for n in range(1, max_segments + 1):
        for combo in itertools.combinations(vals, 2 * n):
            if kind is Kind.C1 and -1 in combo[1:]:
                continue
            if kind is Kind.C_half and -HALF in combo[1:]:
                continue
            out.append(tuple((combo[2 * i], combo[2 * i + 1]) for i in range(n)))
    return out


def segments_from_chain(atom: CuspidalAtom, chain, bt=Fraction(0)) -> list:
    return [Segment.from_ends(atom, bt - a, bt + b) for a, b in chain]


PROBE_ATOMS = (ONE, T2, U1)


def exhaustive_ds(lifts: BaseLiftTable, max_end: int = 3, max_segments: int = 3, max_atoms: int = 3,
                  atoms=None, max_rank: int | None = None) -> Iterator[DiscreteSeriesDatum]:
    """Every discrete series datum over the declared bases within the size limits.

    By default the atoms are the probe atoms plus the base's own lift atoms.
    """
    for base, lift_atoms in lifts:
        pool = atoms
        if pool is None:
            pool = PROBE_ATOMS + tuple(a for a in lift_atoms if a not in PROBE_ATOMS)
        per_atom = []
        for a in pool:
            kind = derived_kind(a, base, lift_atoms)
            chains = [c for c in coordinate_chains(kind, max_end, max_segments) if c]
            per_atom.append((a, chains))
        for k in range(max_atoms + 1):
            for choice in itertools.combinations(per_atom, k):
                for chains in itertools.product(*(c for _, c in choice)):
                    segs = []
                    for (a, _), ch in zip(choice, chains):
                        segs += segments_from_chain(a, ch)
                    d = DiscreteSeriesDatum(base, tuple(segs))
                    if max_rank is None or d.rank <= max_rank:
                        yield d


TAIL_CANDIDATES = (
    balanced(ONE, 0), balanced(ONE, 1), balanced(ONE, HALF),
    balanced(U1, HALF), balanced(U1, 0), balanced(T2, 0),
    balanced(LAM, 0), balanced(LAM, 1),
)


def tails(max_tail: int = 2, candidates=TAIL_CANDIDATES) -> list:
    out = []
    for k in range(max_tail + 1):
        out += list(itertools.combinations_with_replacement(candidates, k))
    return out


def exhaustive_tempered(ds_list, max_tail: int = 2) -> Iterator[TemperedDatum]:
    ts = [t for t in tails(max_tail) if t]
    for d in ds_list:
        for t in ts:
            yield TemperedDatum(d, t)


STD_CANDIDATES = (
    Segment.from_ends(ONE, 1, 2), Segment.from_ends(ONE, 1, 1), Segment.from_ends(ONE, 0, 1),
    Segment.from_ends(ONE, 2, 2), Segment.from_ends(ONE, 3, 3), Segment.from_ends(U1, HALF, HALF),
    Segment.from_ends(U1, -HALF, Fraction(3, 2)), Segment.from_ends(ONE, HALF, HALF),
    Segment.from_ends(LAM, 1, 1), Segment.from_ends(LAM, 0, 1), Segment.from_ends(T2, 1, 1),
    Segment.from_ends(E1, 1, 2),
)


def std_sequences(max_std: int = 2, candidates=STD_CANDIDATES) -> list:
    out = []
    for k in range(1, max_std + 1):
        for combo in itertools.combinations_with_replacement(candidates, k):
            out.append(tuple(sorted(combo, key=lambda s: (-s.center, s.sort_key()))))
    return out


# ---------------------------------------------------------------------------
# exhaustive H_N-side data


def _magnitudes(atom: CuspidalAtom, max_m: int) -> list:
    if atom.effective_pole_type is PoleType.R:
        return [Fraction(i) for i in range(max_m + 1)]
    return [Fraction(2 * i + 1, 2) for i in range(max_m)]


def exhaustive_discrete_hn(lifts: BaseLiftTable, family: Family, rank: int, max_m: int = 3,
                           max_per_atom: int = 4, atoms=SELF_DUAL) -> Iterator[HNRepDatum]:
    """Discrete H_N data of the given group whose descent has a declared base."""
    from .lifting import partition, pole_profile

    group = GroupFamily(family, rank)
    N = h_dimension(group)
    options = []
    for a in atoms:
        ms = _magnitudes(a, max_m)
        opts = []
        for k in range(max_per_atom + 1):
            for sub in itertools.combinations(ms, k):
                dim = sum(a.gl_rank * (2 * m + 1) for m in sub)
                if dim <= N:
                    opts.append((dim, sub))
        options.append((a, opts))

    def go(i, left, acc):
        if i == len(options):
            if left == 0:
                yield list(acc)
            return
        a, opts = options[i]
        for dim, sub in opts:
            if dim <= left:
                acc.append((a, sub))
                yield from go(i + 1, left - dim, acc)
                acc.pop()

    for choice in go(0, N, []):
        segs = [balanced(a, m) for a, sub in choice for m in sub]
        rho = HNRepDatum(group, Multisegment(segs))
        if rho.central_class() != expected_central(family):
            continue
        parts = partition(pole_profile(rho))
        if not lifts.bases_for(family, parts["A0"] + parts["A1"] + parts["A2"]):
            continue
        yield rho


# ---------------------------------------------------------------------------
# random data over all fourteen families


def _random_base(rng: random.Random, family: Family, rank: int) -> BaseRep:
    eps = 0
    if family in GSPIN:
        eps = rng.choice([0, HALF, 1]) if rank > 0 else rng.choice([0, 1, 2])
    elif family in SIMILITUDE:
        eps = 0
    c_fixed = rng.random() < 0.5 if family in C_ACTION else None
    omega = IDENTITY if family in GSPIN else CharacterSymbol.generator("w[s]")
    return BaseRep.make("s", family, rank, eps=eps, omega=omega, c_fixed=c_fixed)


_RANDOM_ATOMS = (
    CuspidalAtom.selfdual("p", 1, "R", IDENTITY),
    CuspidalAtom.selfdual("q", 1, "R", CharacterSymbol.generator("chi", 2)),
    CuspidalAtom.selfdual("h", 1, "Rminus", IDENTITY),
    CuspidalAtom.selfdual("g", 2, "R", IDENTITY),
)


def _kinds_for(atom: CuspidalAtom, base: BaseRep) -> list:
    out = []
    if atom.effective_pole_type is PoleType.R:
        out += [Kind.C0, Kind.C1]
        try:
            ReducibilityEntry(atom, base, Kind.CN)
            out.append(Kind.CN)
        except GeneraError:
            pass
    elif atom.effective_pole_type is PoleType.Rminus:
        out.append(Kind.C_half)
    if case4_holds(base.group, atom, base):
        out.append(Kind.Irr)
    return out


def random_ds(rng: random.Random, max_segments: int = 3, max_atoms: int = 3, max_end: int = 3):
    """A random valid discrete series datum and its table, over any family."""
    while True:
        fam = rng.choice(FAMILY_ORDER)
        n0 = rng.choice([0, 2])
        base = _random_base(rng, fam, n0)
        bt = beta(base)
        if bt not in (0, HALF, 1):
            continue
        table = ReducibilityTable()
        segs = []
        atoms = rng.sample(_RANDOM_ATOMS, rng.randint(1, max_atoms))
        for a in atoms:
            kinds = _kinds_for(a, base)
            if not kinds:
                continue
            kind = rng.choice(kinds)
            table.add(ReducibilityEntry(a, base, kind))
            chains = [c for c in coordinate_chains(Kind.C0 if kind is Kind.Irr else kind, max_end, max_segments) if c]
            segs += segments_from_chain(a, rng.choice(chains), bt)
        datum = DiscreteSeriesDatum(base, tuple(segs))
        if check_ds(datum, table).valid:
            return datum, table


def disallowed_a(kind: Kind) -> Fraction:
    """A coordinate value rejected for ``kind`` yet half-integral."""
    return {Kind.C1: Fraction(0), Kind.C0: Fraction(-1), Kind.CN: Fraction(-1),
            Kind.Irr: Fraction(-1), Kind.C_half: Fraction(-3, 2)}[kind]


_RANDOM_STD_ATOMS = _RANDOM_ATOMS + CuspidalAtom.pair("m", 1, CharacterSymbol.generator("w[m]"))


def random_langlands(rng: random.Random, max_std: int = 3) -> tuple[LanglandsDatum, ReducibilityTable]:
    """A random Langlands datum; it may be reducible but is always well ordered."""
    while True:
        ds, table = random_ds(rng, max_segments=2, max_atoms=2, max_end=2)
        bt = ds.beta
        for a in _RANDOM_ATOMS:
            if table.get(a, ds.base) is None:
                kinds = _kinds_for(a, ds.base)
                table.add(ReducibilityEntry(a, ds.base, rng.choice(kinds) if kinds else Kind.Irr))
        bal = []
        for _ in range(rng.randint(0, 1)):
            a = rng.choice(_RANDOM_ATOMS[:3])
            m = rng.choice([0, HALF, 1])
            bal.append(Segment.from_ends(a, bt - m, bt + m))
        temp = TemperedDatum(ds, tuple(bal))
        std = []
        for _ in range(rng.randint(1, max_std)):
            a = rng.choice(_RANDOM_STD_ATOMS)
            length = rng.randint(0, 2)
            low = bt + Fraction(rng.randint(-2, 4), 2)
            s = Segment(a, low, length)
            if s.center > bt:
                std.append(s)
        if not std:
            continue
        std.sort(key=lambda s: (-s.center, s.sort_key()))
        return LanglandsDatum(tuple(std), temp), table


# ---------------------------------------------------------------------------
# random parameters

G_ONE = GaloisAtom("one", 1, pole_type="R")
G_E1 = GaloisAtom("e1", 1, pole_type="R", det_class=ETA)
G_T2 = GaloisAtom("t2", 2, pole_type="R")

G_U1 = GaloisAtom("u1", 1, pole_type="Rminus")
G_U2 = GaloisAtom("u2", 2, pole_type="Rminus")
G_LAM = GaloisAtom("lam", 1, dual_id="lam^", det_class=CharacterSymbol.generator("w[lam]"))
G_LAM_D = G_LAM.dual()
G_X = GaloisAtom("x", 1, bounded=False, pole_type="R")
GALOIS_ATOMS = (G_ONE, G_E1, G_T2, G_U1, G_U2, G_LAM, G_LAM_D, G_X)


def random_parameter(rng: random.Random, lifts: BaseLiftTable | None = None, max_dim: int = 9,
                     unbounded: bool = True) -> WeilParameter:
    """A random valid parameter whose tempered core descends through ``lifts``."""
    from .lifting import descend_tempered, parameter_to_hn
    from .params import decompose

    pool = GALOIS_ATOMS if unbounded else GALOIS_ATOMS[:-1]
    while True:
        fam = rng.choice(CLASSICAL_ORDER)
        summands = []
        for _ in range(rng.randint(1, 4)):
            a = rng.choice(pool)
            m = rng.randint(1, 3)
            if rng.random() < 0.4 and a.bounded:
                shift = Fraction(rng.randint(1, 4), 2)
                summands += [ParameterSummand(a, shift, m), ParameterSummand(a.dual(), -shift, m)]
            elif a.is_self_dual:
                summands.append(ParameterSummand(a, 0, m, rng.choice([1, 1, 2])))
            else:
                summands += [ParameterSummand(a, 0, m), ParameterSummand(a.dual(), 0, m)]
        n_dim = sum(s.dim for s in summands)
        if n_dim > max_dim:
            continue
        rank = next((n for n in range(n_dim + 1) if h_dimension(GroupFamily(fam, n)) == n_dim), None)
        if rank is None:
            continue
        p = WeilParameter(GroupFamily(fam, rank), tuple(summands))
        try:
            validate_parameter(p)
        except GeneraError:
            continue
        if lifts is not None and all(a.bounded for a in p.atoms().values()):
            try:
                temp, _ = decompose(p)
                descend_tempered(parameter_to_hn(temp), lifts)
            except BaseLiftMismatch:
                continue
        return p


# ---------------------------------------------------------------------------
# round-trip corpora


def group_round_trip_corpus(lifts: BaseLiftTable, generic_stride: int = 8) -> dict:
    """Group-side data for the lifting round trips.

    Discrete data use the full size limits. Tempered data add up to two balanced
    tails to single-atom cores. Generic candidates put up to two standard segments
    on one-tail data and keep every ``generic_stride``-th one, reducible or not.
    """
    ds = list(exhaustive_ds(lifts))
    tempered = list(exhaustive_tempered(list(exhaustive_ds(lifts, max_atoms=1)), max_tail=2))
    small = list(exhaustive_ds(lifts, max_atoms=1, max_segments=1))
    temps = [TemperedDatum(d, tl) for d in small for tl in tails(1)]
    generic = [LanglandsDatum(std, t) for t in temps for std in std_sequences(2)][::generic_stride]
    return {"ds": ds, "tempered": tempered, "generic": generic}


def hn_round_trip_corpus(lifts: BaseLiftTable, generic_stride: int = 30) -> dict:
    """H_N-side data: discrete ranks up to 4, tempered over ranks up to 2 with two
    tails, and generic candidates built on those, every ``generic_stride``-th kept."""
    ds = [rho for fam in CLASSICAL_ORDER for r in range(5) for rho in exhaustive_discrete_hn(lifts, fam, r)]
    cores = [rho for rho in ds if rho.group.rank <= 2]
    tempered = []
    for c in cores:
        for tl in tails(2):
            segs = list(c.balanced)
            for s in tl:
                segs += [s, check_dual(s)]
            rank = c.group.rank + sum(s.rank for s in tl)
            tempered.append(HNRepDatum(c.group.with_rank(rank), Multisegment(segs)))
    generic = []
    for rho in tempered:
        for std in std_sequences(2):
            rank = rho.group.rank + sum(s.rank for s in std)
            generic.append(HNRepDatum(rho.group.with_rank(rank), rho.balanced, std))
    return {"ds": ds, "tempered": tempered, "generic": generic[::generic_stride]}
