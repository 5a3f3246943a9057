"""Reducibility tables, validity of discrete series / tempered / Langlands data,
the Casselman criterion and the irreducibility cascade for standard modules.

Conventions.  A discrete series segment on atom tau over a base with offset
beta is stored by its actual exponents [low, high].  Its unshifted
coordinates are ``a = beta - low`` and ``b = high - beta``, so the segment is
[nu^(beta - a) tau, nu^(beta + b) tau].
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BoundaryCase,
    InvalidDatum,
    InvalidTableEntry,
    MissingTableEntry,
    OrderViolation,
)
from .groups import (
    C_ACTION,
    GSPIN,
    SIMILITUDE,
    BaseRep,
    CharacterSymbol,
    CuspidalAtom,
    Family,
    IDENTITY,
    Kind,
    PoleType,
    TwistedBase,
    beta as beta_of,
    case4_holds,
    is_half_integral,
    is_integral,
    omega_prime,
    render_exponent,
)
from .segments import Segment, check_dual, linked

# ---------------------------------------------------------------------------
# reducibility table

_POLE_FOR_KIND = {Kind.C0: PoleType.R, Kind.C1: PoleType.R, Kind.CN: PoleType.R, Kind.C_half: PoleType.Rminus}
_NO_CN = frozenset({Family.SO_odd, Family.Sp, Family.U_odd, Family.U_even, Family.GSpin_odd})

DS_CODE = {Kind.C1: "DS1", Kind.C0: "DS2", Kind.C_half: "DS3", Kind.CN: "DS4", Kind.Irr: "DS4"}


def contributes(atom: CuspidalAtom, base: BaseRep | TwistedBase) -> bool:
    """tau equals the atom part of the long Weyl image of tau (x) sigma."""
    w = omega_prime(base).unitary()
    return atom.dual().twisted(w) == atom


@dataclass(frozen=True)
class ReducibilityEntry:
    atom: CuspidalAtom
    base: BaseRep
    kind: Kind

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        self.validate()

    def validate(self) -> None:
        k, a, f = self.kind, self.atom, self.base.group.family
        if k is Kind.Irr:
            return
        if not contributes(a, self.base):
            raise InvalidTableEntry(f"{a.render()}: {k.value} needs a self-dual atom")
        want = _POLE_FOR_KIND[k]
        if a.effective_pole_type is not want:
            raise InvalidTableEntry(f"{a.render()}: {k.value} needs pole type {want.value}")
        if k is Kind.CN:
            if f in _NO_CN:
                raise InvalidTableEntry(f"{f.value} admits no (CN) pairs")
            if f in C_ACTION and f not in SIMILITUDE and (self.base.c_fixed or a.gl_rank % 2 == 0):
                raise InvalidTableEntry(f"{a.render()}: (CN) needs c^m to move the base")

    def to_json(self) -> dict:
        return {"atom": self.atom.render(), "base": self.base.id, "kind": self.kind.value}


class ReducibilityTable:
    """(atom, base id) -> entry; twists on the base and its c-mark are ignored."""

    def __init__(self, entries: Iterable[ReducibilityEntry] = ()):
        self._entries: dict = {}
        for e in entries:
            self.add(e)

    def add(self, e: ReducibilityEntry) -> None:
        self._entries[(e.atom.render(), e.base.id)] = e

    def get(self, atom: CuspidalAtom, base: BaseRep | TwistedBase) -> ReducibilityEntry | None:
        b = base.base if isinstance(base, TwistedBase) else base
        return self._entries.get((atom.render(), b.id))

    def lookup(self, atom: CuspidalAtom, base: BaseRep | TwistedBase) -> ReducibilityEntry:
        e = self.get(atom, base)
        if e is None:
            b = base.base if isinstance(base, TwistedBase) else base
            raise MissingTableEntry(f"no entry for ({atom.render()}, {b.id})")
        return e

    def kind(self, atom, base) -> Kind:
        return self.lookup(atom, base).kind

    def __iter__(self):
        return iter(sorted(self._entries.values(), key=lambda e: (e.base.id, e.atom.render())))

    def __len__(self):
        return len(self._entries)


# ---------------------------------------------------------------------------
# data types


def _sorted_segments(segs: Iterable[Segment]) -> tuple:
    return tuple(sorted(segs, key=lambda s: (s.atom.render(), s.low, s.len)))


@dataclass(frozen=True)
class DiscreteSeriesDatum:
    """Generic (essentially) discrete series: segments over chi0 * base."""

    base: BaseRep
    segments: tuple = ()
    chi0: CharacterSymbol = IDENTITY

    def __post_init__(self):
        object.__setattr__(self, "segments", _sorted_segments(self.segments))

    @property
    def beta(self) -> Fraction:
        return beta_of(self.base)

    @property
    def twisted_base(self) -> TwistedBase:
        return TwistedBase(self.base, self.chi0)

    @property
    def rank(self) -> int:
        return self.base.rank + sum(s.rank for s in self.segments)

    def coords(self, s: Segment) -> tuple[Fraction, Fraction]:
        return self.beta - s.low, s.high - self.beta

    def by_atom(self) -> dict:
        out: dict = {}
        for s in self.segments:
            out.setdefault(s.atom, []).append(s)
        for v in out.values():
            v.sort(key=lambda s: self.coords(s)[0])
        return out

    def render(self) -> str:
        inner = ", ".join(s.render() for s in self.segments)
        return f"DS[{inner}; {self.twisted_base.render()}]"


@dataclass(frozen=True)
class TemperedDatum:
    ds: DiscreteSeriesDatum
    balanced: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "balanced", _sorted_segments(self.balanced))

    @property
    def beta(self) -> Fraction:
        return self.ds.beta

    @property
    def rank(self) -> int:
        return self.ds.rank + sum(s.rank for s in self.balanced)

    def render(self) -> str:
        inner = " x ".join(s.render() for s in self.balanced)
        return f"T[{inner} ; {self.ds.render()}]" if inner else self.ds.render()


@dataclass(frozen=True)
class LanglandsDatum:
    std: tuple
    temp: TemperedDatum

    def __post_init__(self):
        object.__setattr__(self, "std", tuple(self.std))

    @property
    def beta(self) -> Fraction:
        return self.temp.beta

    @property
    def rank(self) -> int:
        return self.temp.rank + sum(s.rank for s in self.std)

    def render(self) -> str:
        inner = " x ".join(s.render() for s in self.std)
        return f"L[{inner} x| {self.temp.render()}]"


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    subject: str = ""

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "subject": self.subject}


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    normal_form: object = None

    @property
    def valid(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]

    def add(self, code: str, message: str, subject: str = "") -> None:
        self.violations.append(Violation(code, message, subject))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)

    def to_json(self) -> dict:
        out = {"valid": self.valid, "violations": [v.to_json() for v in self.violations], "notes": list(self.notes)}
        if self.normal_form is not None and hasattr(self.normal_form, "render"):
            out["normal_form"] = self.normal_form.render()
        return out


# ---------------------------------------------------------------------------
# discrete series


def allowed_a(kind: Kind, a: Fraction) -> bool:
    """Membership of the unshifted left coordinate in the set allowed for ``kind``."""
    if kind is Kind.C1:
        return is_integral(a) and (a == -1 or a > 0)
    if kind is Kind.C_half:
        return is_integral(a + Fraction(1, 2)) and a >= Fraction(-1, 2)
    return is_integral(a) and a >= 0


def check_ds(datum: DiscreteSeriesDatum, table: ReducibilityTable) -> ValidationReport:
    rep = ValidationReport()
    base = datum.base
    if not base.generic:
        rep.add("BASE", "the base must be generic", base.id)
    if not datum.chi0.is_identity and base.group.family not in SIMILITUDE:
        rep.add("CHI0", "only similitude families carry a base twist", datum.chi0.render())
    for atom, segs in datum.by_atom().items():
        entry = table.lookup(atom, base)
        for s in segs:
            a, b = datum.coords(s)
            if not (is_half_integral(a) and is_half_integral(b)):
                rep.add("HALF", "2a and 2b must be integers", s.render())
                continue
            kind = entry.kind
            if kind is Kind.Irr and not case4_holds(base.group, atom, base):
                rep.add("CASE4", "pair never reduces and fails the duality condition", s.render())
                continue
            if not allowed_a(kind, a):
                rep.add(DS_CODE[kind], f"a = {render_exponent(a)} not allowed for {kind.value}", s.render())
        chain = []
        for s in segs:
            chain.extend(datum.coords(s))
        if any(x >= y for x, y in zip(chain, chain[1:])):
            rep.add("CHAIN", "need a1 < b1 < a2 < b2 < ...", atom.render())
        if entry.kind is Kind.CN and segs and datum.coords(segs[0])[0] == 0:
            rep.notes.append(f"{atom.render()}: (CN) Steinberg does not see the c-conjugate base; smallest base id kept")
    return rep


def casselman_check(word: Sequence, beta=0, strict: bool = True) -> bool:
    """Partial sums of n_i (e_i - beta) are all > 0 (strict) or >= 0."""
    total = Fraction(0)
    bt = Fraction(beta)
    for e, n in word:
        total += n * (Fraction(e) - bt)
        if (total <= 0) if strict else (total < 0):
            return False
    return True


def chain_passes(s: Segment, beta, strict: bool = True) -> bool:
    """Casselman test on the decreasing word of one segment."""
    k = s.atom.gl_rank
    return casselman_check([(s.high - i, k) for i in range(s.len + 1)], beta, strict)


def all_shuffles_pass(segments: Iterable[Segment], beta, strict: bool = True) -> bool:
    """Every shuffle of the segments' words passes iff each word passes on its own."""
    return all(chain_passes(s, beta, strict) for s in segments)


def ds_bound_sound(datum: DiscreteSeriesDatum) -> bool:
    from .mustar import tadic_bound

    return all(all_shuffles_pass(t.gl, datum.beta) for t in tadic_bound(datum).terms)


# ---------------------------------------------------------------------------
# tempered


def flip_balanced(family: Family, s: Segment, ds: DiscreteSeriesDatum) -> tuple[Segment, DiscreteSeriesDatum]:
    """delta(Psi) x| pi = w' delta(Psi^) x| w'_Psi c_Psi pi, applied to the datum."""
    new = check_dual(s)
    if family in GSPIN:
        new = new.twisted(omega_prime(ds.twisted_base))
    if family in SIMILITUDE:
        ds = replace(ds, chi0=ds.chi0 * s.central_char())
    if family in C_ACTION and s.rank % 2:
        ds = replace(ds, base=ds.base.c_act())
    return new, ds


def tempered_normal_form(t: TemperedDatum) -> TemperedDatum:
    fam = t.ds.base.group.family
    ds, out = t.ds, []
    for s in t.balanced:
        new, ds2 = flip_balanced(fam, s, ds)
        if new.sort_key() < s.sort_key():
            out.append(new)
            ds = ds2
        else:
            out.append(s)
    return TemperedDatum(ds, tuple(out))


def check_tempered(datum: TemperedDatum, table: ReducibilityTable) -> ValidationReport:
    rep = check_ds(datum.ds, table)
    for s in datum.balanced:
        if s.center != datum.beta:
            rep.add("BALANCED", f"centre {render_exponent(s.center)} differs from beta", s.render())
    if rep.valid:
        rep.normal_form = tempered_normal_form(datum)
    return rep


# ---------------------------------------------------------------------------
# irreducibility cascade


@dataclass(frozen=True)
class Decision:
    irreducible: bool
    condition: str | None = None
    detail: str = ""
    pair: tuple = ()
    reasons: tuple = ()

    @property
    def name(self) -> str:
        return "Irreducible" if self.irreducible else "Reducible"

    def to_json(self) -> dict:
        out = {"decision": self.name}
        if not self.irreducible:
            out.update(condition=self.condition, detail=self.detail, pair=list(self.pair))
        else:
            out["reasons"] = [list(r) for r in self.reasons]
        return out


def _reducible(cond: str, detail: str, *pair: Segment) -> Decision:
    return Decision(False, cond, detail, tuple(p.render() for p in pair))


def twisted_dual(s: Segment, w: CharacterSymbol) -> Segment:
    return check_dual(s).twisted(w) if not w.is_identity else check_dual(s)


def langlands_order_check(std: Sequence[Segment], beta) -> None:
    centers = [s.center for s in std]
    for s in std:
        if s.center == beta:
            raise BoundaryCase(f"{s.render()} is centred at beta")
        if s.center < beta:
            raise OrderViolation(f"{s.render()} is centred below beta")
    if any(x < y for x, y in zip(centers, centers[1:])):
        raise OrderViolation("centres must be non-increasing")


def _exps(s: Segment, beta) -> tuple[Fraction, Fraction]:
    return s.low - beta, s.high - beta


def _in_set(x: Fraction, s: Segment, beta) -> bool:
    lo, hi = _exps(s, beta)
    return lo <= x <= hi and is_integral(x - lo)


def cuspidal_level(sigma: Segment, ds: DiscreteSeriesDatum, table: ReducibilityTable) -> tuple[bool, str]:
    """delta(Sigma) x| sigma^(e0) irreducible? Returns (answer, deciding condition)."""
    xi = sigma.atom
    base = ds.twisted_base
    if not contributes(xi, base):
        return True, "G7"
    kind = table.kind(xi, ds.base)
    b = ds.beta
    if kind in (Kind.CN, Kind.Irr):
        return (not _in_set(Fraction(0), sigma, b)), "G8"
    al = kind.alpha
    return (not (_in_set(al, sigma, b) or _in_set(-al, sigma, b))), "G8"


def _g6b(sigma: Segment, ds: DiscreteSeriesDatum, table: ReducibilityTable) -> bool:
    b = ds.beta
    if sigma.low != b + 1 or not contributes(sigma.atom, ds.twisted_base):
        return False
    if table.kind(sigma.atom, ds.base) is not Kind.C1:
        return False
    return any(d.atom == sigma.atom and d.low == b + 1 and d.high >= sigma.high for d in ds.segments)


def irreducible_standard(datum: LanglandsDatum, table: ReducibilityTable) -> Decision:
    """delta(Sigma_1) x ... x delta(Sigma_f) x| sigma^(et) irreducible?"""
    temp, ds = datum.temp, datum.temp.ds
    b = ds.beta
    langlands_order_check(datum.std, b)
    w = omega_prime(ds.twisted_base)
    std = datum.std
    for i, si in enumerate(std):
        for j, sj in enumerate(std):
            if i == j:
                continue
            if linked(si, sj):
                return _reducible("G1", "standard segments are linked", si, sj)
            if linked(si, twisted_dual(sj, w)):
                return _reducible("G1", "segment is linked to a twisted dual", si, sj)
    reasons = []
    for s in std:
        sv = twisted_dual(s, w)
        for p in temp.balanced:
            if linked(s, p) or linked(sv, p):
                return _reducible("G3", "standard segment is linked to a balanced segment", s, p)
        for d in ds.segments:
            if linked(s, d) or linked(sv, d):
                return _reducible("G5", "standard segment is linked to a discrete series segment", s, d)
        ok, cond = cuspidal_level(s, ds, table)
        if ok:
            reasons.append((s.render(), cond))
            continue
        if _g6b(s, ds, table):
            reasons.append((s.render(), "G6b"))
            continue
        return _reducible("G8", "reducible at the cuspidal level and no dominating segment", s)
    return Decision(True, reasons=tuple(reasons))


def _dual_substitute(family: Family, s: Segment, temp: TemperedDatum) -> tuple[Segment, TemperedDatum]:
    new, ds = flip_balanced(family, s, temp.ds)
    return new, TemperedDatum(ds, temp.balanced)


def dual_substitute(datum: LanglandsDatum, index: int) -> tuple[list, TemperedDatum]:
    """Replace Sigma_i by its twisted dual, moving the side effects onto the base."""
    fam = datum.temp.ds.base.group.family
    std = list(datum.std)
    std[index], temp = _dual_substitute(fam, std[index], datum.temp)
    return std, temp


def normalize_standard(std: Sequence[Segment], temp: TemperedDatum) -> LanglandsDatum:
    """Flip segments centred below beta and sort by centre descending."""
    fam = temp.ds.base.group.family
    b = temp.beta
    out = []
    for s in std:
        if s.center < b:
            s, temp = _dual_substitute(fam, s, temp)
        out.append(s)
    out.sort(key=lambda s: (-s.center, s.sort_key()))
    return LanglandsDatum(tuple(out), temp)


def irreducible_induced(std: Sequence[Segment], temp: TemperedDatum, table: ReducibilityTable) -> Decision:
    """Irreducibility of delta(S_1) x ... x| sigma^(et) for segments in any order and position."""
    return irreducible_standard(normalize_standard(std, temp), table)


# ---------------------------------------------------------------------------
# dispatch


class RepClass(str, Enum):
    Supercuspidal = "Supercuspidal"
    DiscreteSeries = "DiscreteSeries"
    Tempered = "Tempered"
    StandardGeneric = "StandardGeneric"
    Invalid = "Invalid"


@dataclass
class Classification:
    cls: RepClass
    report: ValidationReport
    decision: Decision | None = None

    def to_json(self) -> dict:
        out = {"class": self.cls.value, "report": self.report.to_json()}
        if self.decision is not None:
            out["decision"] = self.decision.to_json()
        return out


def classify_rep(obj, table: ReducibilityTable) -> Classification:
    if isinstance(obj, BaseRep):
        rep = ValidationReport()
        if not obj.generic:
            rep.add("BASE", "the base must be generic", obj.id)
            return Classification(RepClass.Invalid, rep)
        return Classification(RepClass.Supercuspidal, rep)
    if isinstance(obj, DiscreteSeriesDatum):
        rep = check_ds(obj, table)
        if not rep.valid:
            return Classification(RepClass.Invalid, rep)
        return Classification(RepClass.DiscreteSeries if obj.segments else RepClass.Supercuspidal, rep)
    if isinstance(obj, TemperedDatum):
        rep = check_tempered(obj, table)
        if not rep.valid:
            return Classification(RepClass.Invalid, rep)
        if obj.balanced:
            return Classification(RepClass.Tempered, rep)
        return Classification(RepClass.DiscreteSeries if obj.ds.segments else RepClass.Supercuspidal, rep)
    if isinstance(obj, LanglandsDatum):
        inner = classify_rep(obj.temp, table)
        if inner.cls is RepClass.Invalid or not obj.std:
            return inner
        rep = inner.report
        try:
            dec = irreducible_standard(obj, table)
        except (OrderViolation, BoundaryCase) as exc:
            rep.add(exc.code, exc.message)
            return Classification(RepClass.Invalid, rep)
        if not dec.irreducible:
            rep.add(dec.condition, dec.detail, " / ".join(dec.pair))
            return Classification(RepClass.Invalid, rep, dec)
        return Classification(RepClass.StandardGeneric, rep, dec)
    raise InvalidDatum(f"cannot classify {type(obj).__name__}")
