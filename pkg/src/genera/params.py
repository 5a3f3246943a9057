"""Weil-Deligne parameter symbols for the six classical families."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InvalidAtom, InvalidParameter, ShiftedSummand, UnpairedShiftedSummand
from .groups import (
    CLASSICAL,
    CharacterSymbol,
    CuspidalAtom,
    Family,
    GroupFamily,
    IDENTITY,
    PoleType,
    exponent,
    h_dimension,
    pole_type as parse_pole,
    render_exponent,
)

ETA = CharacterSymbol.generator("eta", 2)


def expected_central(family: Family) -> CharacterSymbol:
    """Determinant (or central character) required of an H_N object."""
    return ETA if family is Family.SO_even_qs else IDENTITY


def rank_from_dimension(family: Family, n_dim: int) -> int:
    for n in range(n_dim + 1):
        if h_dimension(GroupFamily(family, n)) == n_dim:
            return n
    raise InvalidParameter(f"no {family.value} group has dimension {n_dim}")


@dataclass(frozen=True)
class GaloisAtom:
    """An irreducible representation of W_F, as an opaque symbol."""

    id: str
    dim: int = 1
    bounded: bool = True
    dual_id: str | None = None
    pole_type: PoleType | None = None
    det_class: CharacterSymbol | None = None
    c_image: str | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidAtom(f"{self.id}: dimension must be positive")
        if self.dual_id is None:
            object.__setattr__(self, "dual_id", self.id)
        object.__setattr__(self, "pole_type", parse_pole(self.pole_type))
        if self.pole_type is not None and self.dual_id != self.id:
            raise InvalidAtom(f"{self.id}: only self-dual atoms carry a pole type")
        if self.dual_id == self.id and self.pole_type is None:
            raise InvalidAtom(f"{self.id}: a self-dual atom needs a pole type")
        if self.det_class is None:
            det = IDENTITY if self.dual_id == self.id else CharacterSymbol.generator(f"det[{self.id}]")
            object.__setattr__(self, "det_class", det)
        if self.c_image is None:
            object.__setattr__(self, "c_image", self.id)

    @classmethod
    def pair(cls, id: str, dim: int = 1, bounded: bool = True) -> tuple["GaloisAtom", "GaloisAtom"]:
        a = cls(id, dim, bounded, id + "^")
        return a, a.dual()

    @property
    def is_self_dual(self) -> bool:
        return self.dual_id == self.id

    def dual(self) -> "GaloisAtom":
        if self.is_self_dual:
            return self
        return GaloisAtom(self.dual_id, self.dim, self.bounded, self.id, None, self.det_class.inverse())

    def to_cuspidal(self) -> CuspidalAtom:
        """The reciprocity bridge r: same id, gl_rank = dim."""
        return CuspidalAtom(self.id, self.dim, self.dual_id, self.pole_type, self.det_class)


def r(atom: GaloisAtom) -> CuspidalAtom:
    return atom.to_cuspidal()


@dataclass(frozen=True)
class ParameterSummand:
    """mult copies of |.|^shift atom (x) S_sl2_dim."""

    atom: GaloisAtom
    shift: Fraction = Fraction(0)
    sl2_dim: int = 1
    mult: int = 1

    def __post_init__(self):
        object.__setattr__(self, "shift", exponent(self.shift))
        if self.sl2_dim < 1 or self.mult < 1:
            raise InvalidParameter("sl2_dim and mult must be positive")

    @property
    def dim(self) -> int:
        return self.atom.dim * self.sl2_dim * self.mult

    @property
    def is_tempered(self) -> bool:
        return self.shift == 0 and self.atom.bounded

    def key(self):
        return (self.atom.id, self.shift, self.sl2_dim)

    def dual_key(self):
        return (self.atom.dual_id, -self.shift, self.sl2_dim)

    def render(self) -> str:
        pre = f"|.|^{{{render_exponent(self.shift)}}}" if self.shift else ""
        m = f"^{self.mult}" if self.mult > 1 else ""
        return f"{pre}{self.atom.id}⊗S{self.sl2_dim}{m}"

    def to_json(self) -> dict:
        return {"atom": self.atom.id, "shift": render_exponent(self.shift), "sl2_dim": self.sl2_dim, "mult": self.mult}


def summand_pole_type(s: ParameterSummand) -> PoleType | None:
    """Type of the self-dual summand atom (x) S_m; S_m is of type R for odd m."""
    if s.shift != 0:
        raise ShiftedSummand(f"{s.render()} has a nonzero shift")
    if not s.atom.is_self_dual:
        return None
    odd = s.sl2_dim % 2 == 1
    if s.atom.pole_type is PoleType.R:
        return PoleType.R if odd else PoleType.Rminus
    return PoleType.Rminus if odd else PoleType.R


def _merge(summands: Iterable[ParameterSummand]) -> tuple:
    acc: dict = {}
    atoms: dict = {}
    for s in summands:
        k = s.key()
        acc[k] = acc.get(k, 0) + s.mult
        atoms[k] = s.atom
    out = [ParameterSummand(atoms[k], k[1], k[2], m) for k, m in acc.items()]
    out.sort(key=lambda s: (s.atom.id, -s.shift, s.sl2_dim))
    return tuple(out)


@dataclass(frozen=True)
class WeilParameter:
    group: GroupFamily
    summands: tuple = ()
    c_class_rep: bool = False

    def __post_init__(self):
        object.__setattr__(self, "summands", _merge(self.summands))

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.summands)

    def atoms(self) -> dict:
        return {s.atom.id: s.atom for s in self.summands}

    def render(self) -> str:
        body = " + ".join(s.render() for s in self.summands) or "0"
        return f"{self.group.render()}: {body}"

    def det(self) -> CharacterSymbol:
        out = IDENTITY
        for s in self.summands:
            out = out * s.atom.det_class ** (s.sl2_dim * s.mult)
        return out

    def to_json(self) -> dict:
        return {"group": self.group.family.value, "rank": self.group.rank,
                "summands": [s.to_json() for s in self.summands]}


def validate_parameter(p: WeilParameter) -> None:
    f = p.group.family
    if f not in CLASSICAL:
        raise InvalidParameter(f"{f.value} has no parameter model")
    if p.dim != h_dimension(p.group):
        raise InvalidParameter(f"dimension {p.dim} != {h_dimension(p.group)}")
    if p.det() != expected_central(f):
        raise InvalidParameter(f"determinant {p.det().render()} != {expected_central(f).render()}")
    mult = {s.key(): s.mult for s in p.summands}
    for s in p.summands:
        if s.shift != 0 or not s.atom.is_self_dual:
            if mult.get(s.dual_key(), 0) != s.mult:
                raise InvalidParameter(f"{s.render()} and its dual have different multiplicities")
        elif summand_pole_type(s) is not PoleType.R and s.mult % 2:
            raise InvalidParameter(f"{s.render()} has the wrong parity and odd multiplicity")


# ---------------------------------------------------------------------------
# classes


class ParamClass(str, Enum):
    SupercuspidalGeneric = "SupercuspidalGeneric"
    Discrete = "Discrete"
    Tempered = "Tempered"
    Generic = "Generic"
    General = "General"


def is_tempered(p: WeilParameter) -> bool:
    return all(s.is_tempered for s in p.summands)


def is_discrete(p: WeilParameter) -> bool:
    return is_tempered(p) and all(s.mult == 1 and summand_pole_type(s) is PoleType.R for s in p.summands)


def is_supercuspidal_generic(p: WeilParameter) -> bool:
    return is_discrete(p) and all(s.sl2_dim == 1 for s in p.summands)


def is_generic(p: WeilParameter) -> bool:
    """Tempered core plus shifted pairs whose segments form a generic sequence."""
    if is_tempered(p):
        return True
    if any(not s.atom.bounded for s in p.summands):
        return False
    from .lifting import hn_generic_violation, parameter_to_hn

    return hn_generic_violation(parameter_to_hn(p)) is None


def classify_parameter(p: WeilParameter) -> ParamClass:
    validate_parameter(p)
    if is_supercuspidal_generic(p):
        return ParamClass.SupercuspidalGeneric
    if is_discrete(p):
        return ParamClass.Discrete
    if is_tempered(p):
        return ParamClass.Tempered
    if is_generic(p):
        return ParamClass.Generic
    return ParamClass.General


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class ShiftedPair:
    """|.|^(w/2 - q) atom (x) S_(w+1) plus its dual at the opposite shift."""

    atom: GaloisAtom
    q: Fraction
    w: int

    @property
    def shift(self) -> Fraction:
        return Fraction(self.w, 2) - self.q

    def summands(self) -> list:
        return [ParameterSummand(self.atom, self.shift, self.w + 1),
                ParameterSummand(self.atom.dual(), -self.shift, self.w + 1)]

    def to_json(self) -> dict:
        return {"atom": self.atom.id, "q": render_exponent(self.q), "w": self.w}


def decompose(p: WeilParameter) -> tuple[WeilParameter, list]:
    """Split p into its tempered part and shifted dual pairs ordered by shift descending."""
    temp, shifted = [], []
    for s in p.summands:
        (temp if s.shift == 0 else shifted).append(s)
    for s in temp:
        if not s.atom.bounded:
            raise InvalidParameter(f"{s.render()} is neither tempered nor shifted")
    mult = {s.key(): s.mult for s in shifted}
    pairs = []
    for s in shifted:
        if not s.atom.bounded:
            raise InvalidParameter(f"{s.render()}: shifted summands need a bounded atom")
        if mult.get(s.dual_key(), 0) != s.mult:
            raise UnpairedShiftedSummand(f"{s.render()} has no dual partner")
        if s.shift > 0:
            pairs.extend([ShiftedPair(s.atom, Fraction(s.sl2_dim - 1, 2) - s.shift, s.sl2_dim - 1)] * s.mult)
    pairs.sort(key=lambda t: (-t.shift, t.atom.id, t.w))
    n_dim = sum(s.dim for s in temp)
    group = GroupFamily(p.group.family, rank_from_dimension(p.group.family, n_dim))
    return WeilParameter(group, tuple(temp)), pairs


def reassemble(temp: WeilParameter, pairs: Iterable[ShiftedPair], group: GroupFamily | None = None) -> WeilParameter:
    summands = list(temp.summands)
    for t in pairs:
        summands.extend(t.summands())
    n_dim = sum(s.dim for s in summands)
    if group is None:
        group = GroupFamily(temp.group.family, rank_from_dimension(temp.group.family, n_dim))
    return WeilParameter(group, tuple(summands))


# ---------------------------------------------------------------------------
# c-conjugacy


def c_conjugate(p: WeilParameter, registry: Mapping[str, GaloisAtom] | None = None) -> WeilParameter:
    reg = dict(registry or {})
    reg.update({a.id: a for a in p.atoms().values() if a.id not in reg})
    out = []
    for s in p.summands:
        img = s.atom.c_image
        if img not in reg:
            raise InvalidParameter(f"c-image {img} of {s.atom.id} is not declared")
        out.append(replace(s, atom=reg[img]))
    return WeilParameter(p.group, tuple(out))


def c_canonicalize(p: WeilParameter, registry: Mapping[str, GaloisAtom] | None = None) -> WeilParameter:
    """Lexicographically smaller rendering of {p, c p}."""
    if p.group.family not in (Family.SO_even_split, Family.SO_even_qs):
        raise InvalidParameter("c-conjugacy is only defined for even orthogonal families")
    q = c_conjugate(p, registry)
    best = min((p, q), key=lambda x: x.render())
    return replace(best, c_class_rep=True)
