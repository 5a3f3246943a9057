"""Group families and every convention that depends on the family.

Atoms, bases and characters are opaque symbols.  Characters live in a free
abelian group on named generators, optionally with a finite order attached to
a generator (for example the central character of a self-dual atom has order
two).  The ``nu`` part of a character is an exact rational exponent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import cached_property
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import (
    InvalidAtom,
    InvalidBase,
    InvalidParabolic,
    NotSimilitude,
    ParseError,
    UnsupportedRankOne,
)

Exponent = Fraction
ExponentLike = Union[Fraction, int, str]


def exponent(x: ExponentLike) -> Fraction:
    """Coerce ``x`` to an exact rational. Floats are refused."""
    if isinstance(x, bool):
        raise ParseError(f"not an exponent: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not an exponent: {x!r}") from exc
    raise ParseError(f"not an exact exponent: {x!r}")


def render_exponent(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_integral(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


def is_half_integral(x: Fraction) -> bool:
    """True for elements of (1/2)Z, integers included."""
    return (2 * Fraction(x)).denominator == 1


# ---------------------------------------------------------------------------
# characters

Gen = tuple  # (name, order); order 0 means free


@dataclass(frozen=True)
class CharacterSymbol:
    """A monomial in character generators times ``nu^{nu_shift}``."""

    monomial: tuple = ()
    nu_shift: Fraction = Fraction(0)

    def __post_init__(self):
        acc: dict = {}
        for gen, e in self.monomial:
            name, order = gen
            acc[(name, order)] = acc.get((name, order), 0) + int(e)
        items = []
        for gen, e in acc.items():
            if gen[1]:
                e %= gen[1]
            if e:
                items.append((gen, e))
        items.sort(key=lambda t: t[0][0])
        object.__setattr__(self, "monomial", tuple(items))
        object.__setattr__(self, "nu_shift", exponent(self.nu_shift))

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.monomial, self.nu_shift))

    @classmethod
    def identity(cls) -> "CharacterSymbol":
        return cls()

    @classmethod
    def generator(cls, name: str, order: int = 0) -> "CharacterSymbol":
        return cls((((name, int(order)), 1),))

    @classmethod
    def nu(cls, s: ExponentLike) -> "CharacterSymbol":
        return cls((), exponent(s))

    def __mul__(self, other: "CharacterSymbol") -> "CharacterSymbol":
        return CharacterSymbol(self.monomial + other.monomial, self.nu_shift + other.nu_shift)

    def __pow__(self, n: int) -> "CharacterSymbol":
        return CharacterSymbol(tuple((g, e * n) for g, e in self.monomial), self.nu_shift * n)

    def inverse(self) -> "CharacterSymbol":
        return self ** -1

    @property
    def is_identity(self) -> bool:
        return not self.monomial and self.nu_shift == 0

    def unitary(self) -> "CharacterSymbol":
        """Drop the ``nu`` part."""
        return CharacterSymbol(self.monomial)

    def rename(self, fn) -> "CharacterSymbol":
        return CharacterSymbol(tuple(((fn(g[0]), g[1]), e) for g, e in self.monomial), self.nu_shift)

    def generators(self) -> dict:
        return {g[0]: e for g, e in self.monomial}

    def render(self, compact: bool = False) -> str:
        parts = [n if e == 1 else f"{n}^{e}" for (n, _), e in self.monomial]
        if self.nu_shift:
            parts.append(f"nu^{{{render_exponent(self.nu_shift)}}}")
        return ("*" if compact else " * ").join(parts) or "1"

    __str__ = render

    @classmethod
    def parse(cls, text: str, orders: Mapping[str, int] | None = None) -> "CharacterSymbol":
        orders = orders or {}
        text = text.strip()
        out = cls()
        if text in ("", "1"):
            return out
        for tok in (t.strip() for t in text.split("*")):
            if not tok or tok == "1":
                continue
            m = re.fullmatch(r"nu(?:\^\{?(-?[0-9]+(?:/[0-9]+)?)\}?)?", tok)
            if m:
                out = out * cls.nu(m.group(1) or 1)
                continue
            m = re.fullmatch(r"(.+?)\^(-?[0-9]+)", tok)
            name, e = (m.group(1), int(m.group(2))) if m else (tok, 1)
            if not re.fullmatch(r"[A-Za-z_][\w\[\]^()]*", name):
                raise ParseError(f"bad character factor {tok!r}")
            out = out * cls.generator(name, orders.get(name, 0)) ** e
        return out


IDENTITY = CharacterSymbol()


# ---------------------------------------------------------------------------
# atoms


class PoleType(str, Enum):
    R = "R"
    Rminus = "Rminus"


def pole_type(value) -> PoleType | None:
    if value in (None, "None", "none", ""):
        return None
    if value in ("R-", "R^-", "R⁻"):
        return PoleType.Rminus
    try:
        return PoleType(value)
    except ValueError as exc:
        raise ParseError(f"unknown pole type {value!r}") from exc


@dataclass(frozen=True, eq=False)
class CuspidalAtom:
    """A unitary supercuspidal of some H_k, possibly twisted by a unitary character.

    Identity is the pair (id, twist); the remaining attributes travel with
    the atom so that duals can be formed without a registry.
    """

    id: str
    gl_rank: int = 1
    dual_id: str | None = None
    pole_type: PoleType | None = None
    omega: CharacterSymbol | None = None
    twist: CharacterSymbol = IDENTITY

    def __post_init__(self):
        if not self.id:
            raise InvalidAtom("empty atom id")
        if self.gl_rank < 1:
            raise InvalidAtom(f"{self.id}: gl_rank must be positive")
        if self.dual_id is None:
            object.__setattr__(self, "dual_id", self.id)
        if self.pole_type is not None and self.dual_id != self.id:
            raise InvalidAtom(f"{self.id}: only self-dual atoms carry a pole type")
        if self.omega is None:
            order = 2 if self.dual_id == self.id else 0
            object.__setattr__(self, "omega", CharacterSymbol.generator(f"w[{self.id}]", order))
        if self.twist.nu_shift:
            raise InvalidAtom("atom twists are unitary; put nu shifts on the segment")

    @classmethod
    def selfdual(cls, id: str, gl_rank: int = 1, pole: PoleType | str | None = PoleType.R, omega=None):
        return cls(id, gl_rank, id, pole_type(pole), omega)

    @classmethod
    def pair(cls, id: str, gl_rank: int = 1, omega=None) -> tuple["CuspidalAtom", "CuspidalAtom"]:
        a = cls(id, gl_rank, id + "^", None, omega)
        return a, a.dual()

    def _key(self):
        return (self.id, self.twist)

    def __eq__(self, other):
        return isinstance(other, CuspidalAtom) and self._key() == other._key()

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(self._key())

    @cached_property
    def _render(self) -> str:
        if self.twist.is_identity:
            return self.id
        return f"{self.twist.render(compact=True)}*{self.id}"

    def dual(self) -> "CuspidalAtom":
        return self._dual

    @cached_property
    def _dual(self) -> "CuspidalAtom":
        if self.dual_id == self.id:
            if self.twist.is_identity:
                return self
            return replace(self, twist=self.twist.inverse())
        return CuspidalAtom(self.dual_id, self.gl_rank, self.id, None, self.omega.inverse(), self.twist.inverse())

    def twisted(self, chi: CharacterSymbol) -> "CuspidalAtom":
        return replace(self, twist=self.twist * chi.unitary())

    def untwisted(self) -> "CuspidalAtom":
        return replace(self, twist=IDENTITY)

    @cached_property
    def is_self_dual(self) -> bool:
        return self.dual() == self

    @property
    def effective_pole_type(self) -> PoleType | None:
        return self.pole_type if self.twist.is_identity else None

    def central_char(self) -> CharacterSymbol:
        return self._central

    @cached_property
    def _central(self) -> CharacterSymbol:
        return self.omega * self.twist ** self.gl_rank

    def render(self) -> str:
        return self._render

    __str__ = render

    def __repr__(self):
        return f"CuspidalAtom({self.render()!r})"


# ---------------------------------------------------------------------------
# families


class Family(str, Enum):
    SO_odd = "SO_odd"
    Sp = "Sp"
    SO_even_split = "SO_even_split"
    SO_even_qs = "SO_even_qs"
    U_odd = "U_odd"
    U_even = "U_even"
    GSp = "GSp"
    GSO_even_split = "GSO_even_split"
    GSO_even_qs = "GSO_even_qs"
    GU_odd = "GU_odd"
    GU_even = "GU_even"
    GSpin_odd = "GSpin_odd"
    GSpin_even_split = "GSpin_even_split"
    GSpin_even_qs = "GSpin_even_qs"


F = Family
C_ACTION = frozenset({F.SO_even_split, F.SO_even_qs, F.GSO_even_split, F.GSO_even_qs, F.GSpin_even_split, F.GSpin_even_qs})
UNITARY = frozenset({F.U_odd, F.U_even, F.GU_odd, F.GU_even})
SIMILITUDE = frozenset({F.GSp, F.GSO_even_split, F.GSO_even_qs, F.GU_odd, F.GU_even})
GSPIN = frozenset({F.GSpin_odd, F.GSpin_even_split, F.GSpin_even_qs})
CLASSICAL = frozenset({F.SO_odd, F.Sp, F.SO_even_split, F.SO_even_qs, F.U_odd, F.U_even})
NO_RANK_ONE_BASE = frozenset({F.GSO_even_split, F.GSpin_even_split})


class GLKind(str, Enum):
    PLAIN = "PLAIN"
    RESTRICTED = "RESTRICTED"


@dataclass(frozen=True)
class GroupFamily:
    family: Family
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.rank < 0:
            raise InvalidBase(f"negative rank {self.rank}")

    def has_c_action(self) -> bool:
        return self.family in C_ACTION

    def gl_kind(self) -> GLKind:
        return GLKind.RESTRICTED if self.family in UNITARY else GLKind.PLAIN

    @property
    def is_similitude(self) -> bool:
        return self.family in SIMILITUDE

    @property
    def is_gspin(self) -> bool:
        return self.family in GSPIN

    @property
    def is_classical(self) -> bool:
        return self.family in CLASSICAL

    def allows_base_rank(self, n0: int) -> bool:
        return not (n0 == 1 and self.family in NO_RANK_ONE_BASE)

    def with_rank(self, n: int) -> "GroupFamily":
        return GroupFamily(self.family, n)

    def render(self) -> str:
        return f"{self.family.value}({self.rank})"

    __str__ = render


def h_dimension(group: GroupFamily) -> int:
    """N such that the family lifts to GL_N."""
    n, f = group.rank, group.family
    if f in (F.SO_odd, F.U_even, F.SO_even_split):
        return 2 * n
    if f is F.SO_even_qs:
        return 2 * n + 2
    if f in (F.Sp, F.U_odd):
        return 2 * n + 1
    raise NotSimilitude(f"{f.value} has no lifting target")


# ---------------------------------------------------------------------------
# bases


@dataclass(frozen=True)
class BaseRep:
    """A generic supercuspidal of G_{n0}, or a G_0 marker ``1 (x) e`` / ``1 (x) c``."""

    group: GroupFamily
    id: str
    central_char: CharacterSymbol = IDENTITY
    c_fixed: bool = True
    c_mark: str = "e"
    generic: bool = True
    exponent: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "exponent", exponent(self.exponent))
        if self.c_mark not in ("e", "c"):
            raise InvalidBase(f"{self.id}: c_mark must be e or c")
        if not self.group.has_c_action() and (self.c_mark != "e" or not self.c_fixed):
            raise InvalidBase(f"{self.id}: {self.group.family.value} has no c-action")
        if not self.group.allows_base_rank(self.group.rank):
            raise InvalidBase(f"{self.id}: base rank 1 is excluded for {self.group.family.value}")
        if self.group.is_classical and self.exponent:
            raise InvalidBase(f"{self.id}: classical bases have unitary central character")
        if self.c_fixed and self.c_mark == "c":
            raise InvalidBase(f"{self.id}: a c-fixed base carries the mark e")

    @classmethod
    def make(cls, id: str, family: Family | str, rank: int = 0, *, eps: ExponentLike = 0,
             omega: CharacterSymbol | None = None, c_fixed: bool | None = None, generic: bool = True,
             c_mark: str = "e") -> "BaseRep":
        group = GroupFamily(Family(family), rank)
        eps = exponent(eps)
        if c_fixed is None:
            c_fixed = not group.has_c_action()
        if omega is None:
            omega = CharacterSymbol.generator(f"w[{id}]")
        omega = omega.unitary() * CharacterSymbol.nu(_omega_nu(group, eps))
        return cls(group, id, omega, c_fixed, c_mark, generic, eps)

    @property
    def rank(self) -> int:
        return self.group.rank

    def c_act(self) -> "BaseRep":
        if self.c_fixed:
            return self
        return replace(self, c_mark="c" if self.c_mark == "e" else "e")

    def render(self) -> str:
        return ("c·" if self.c_mark == "c" else "") + self.id

    __str__ = render


def _omega_nu(group: GroupFamily, eps: Fraction) -> Fraction:
    # nu part of the central character, so that omega carries nu^{2 beta} on general spin groups
    if group.is_gspin:
        return 2 * _beta_value(group, eps)
    if group.is_similitude:
        return 2 * eps if group.rank > 0 else eps
    return Fraction(0)


def _twist_power(group: GroupFamily) -> int:
    # restriction of a character of the group to its centre
    if group.family is F.GSpin_even_qs:
        return 2
    if group.is_gspin or group.is_similitude:
        return 2 if group.rank > 0 else 1
    return 1


@dataclass(frozen=True)
class TwistedBase:
    """chi * c^{power} * sigma; the c power is carried by ``base.c_mark``."""

    base: BaseRep
    twist: CharacterSymbol = IDENTITY

    @property
    def group(self) -> GroupFamily:
        return self.base.group

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def c_power(self) -> int:
        return 1 if self.base.c_mark == "c" else 0

    @property
    def central_char(self) -> CharacterSymbol:
        return self.base.central_char * self.twist ** _twist_power(self.group)

    def apply_c(self) -> "TwistedBase":
        return TwistedBase(self.base.c_act(), self.twist)

    def apply_c_power(self, m: int) -> "TwistedBase":
        return self.apply_c() if m % 2 else self

    def twisted(self, chi: CharacterSymbol) -> "TwistedBase":
        if chi.is_identity:
            return self
        if self.group.is_classical:
            raise NotSimilitude(f"cannot twist a base of {self.group.family.value}")
        return TwistedBase(self.base, self.twist * chi)

    def render(self) -> str:
        pre = "" if self.twist.is_identity else f"({self.twist.render()})"
        return pre + self.base.render()

    __str__ = render

    def sort_key(self):
        return (self.base.id, self.base.c_mark, self.twist.render())


def as_twisted(base: BaseRep | TwistedBase) -> TwistedBase:
    return base if isinstance(base, TwistedBase) else TwistedBase(base)


def as_base(base: BaseRep | TwistedBase) -> BaseRep:
    return base.base if isinstance(base, TwistedBase) else base


# ---------------------------------------------------------------------------
# conventions


def _beta_value(group: GroupFamily, eps: Fraction) -> Fraction:
    f = group.family
    if f in (F.GSpin_odd, F.GSpin_even_split):
        return eps if group.rank > 0 else eps / 2
    if f is F.GSpin_even_qs:
        return eps
    return Fraction(0)


def beta(base: BaseRep | TwistedBase) -> Fraction:
    """Exponent offset of the base; nonzero only on general spin families."""
    b = as_base(base)
    return _beta_value(b.group, b.exponent)


def twist_induced(group: GroupFamily, chi: CharacterSymbol, k: int, n0: int) -> tuple[CharacterSymbol, CharacterSymbol]:
    """How a character of G_n restricts to the Levi GL_k x G_{n0}: (on GL, on base)."""
    f = group.family
    if f is F.GSpin_odd:
        return (chi, chi) if n0 > 0 else (chi, chi ** 2)
    if f is F.GSpin_even_split:
        if n0 == 1:
            raise UnsupportedRankOne("GSpin_even_split with base rank 1")
        return (chi, chi) if n0 > 1 else (chi, chi ** 2)
    if f is F.GSpin_even_qs:
        return (chi, chi)
    if f is F.GSO_even_split and n0 == 1:
        raise UnsupportedRankOne("GSO_even_split with base rank 1")
    if f in SIMILITUDE:
        return (IDENTITY, chi)
    raise NotSimilitude(f"{f.value} is not a similitude or general spin family")


def _norm(name: str) -> str:
    return f"N({name})"


def central_character(group: GroupFamily, gl_factors: Iterable[CharacterSymbol], base: BaseRep | TwistedBase | CharacterSymbol, n0: int) -> CharacterSymbol:
    """Central character of pi_1 x ... x pi_k x| pi_0 from the factors' central characters."""
    w0 = base if isinstance(base, CharacterSymbol) else as_twisted(base).central_char
    prod = IDENTITY
    for w in gl_factors:
        prod = prod * w
    f = group.family
    if f in GSPIN:
        return w0
    if f in (F.GSp, F.GSO_even_split):
        return prod * (w0 if n0 > 0 else w0 ** 2)
    if f in (F.GSO_even_qs, F.GU_odd):
        return prod * w0
    if f is F.GU_even:
        return prod * (w0 if n0 > 0 else w0.rename(_norm))
    raise NotSimilitude(f"{f.value} is not a similitude or general spin family")


class W0Result(NamedTuple):
    atom: CuspidalAtom
    shift: Fraction
    base: TwistedBase


def w0_action(group: GroupFamily, tau: CuspidalAtom, base: BaseRep | TwistedBase) -> W0Result:
    """Long Weyl element on tau (x) sigma for the maximal parabolic; ``shift`` is the nu exponent gained."""
    sigma = as_twisted(base)
    f = group.family
    m = tau.gl_rank
    if f in (F.SO_odd, F.Sp, F.U_odd, F.U_even):
        return W0Result(tau.dual(), Fraction(0), sigma)
    if f in (F.SO_even_split, F.SO_even_qs):
        return W0Result(tau.dual(), Fraction(0), sigma.apply_c_power(m))
    if f in GSPIN:
        w = sigma.central_char
        out = sigma.apply_c_power(m) if f in C_ACTION else sigma
        return W0Result(tau.dual().twisted(w), w.nu_shift, out)
    if f in (F.GSp, F.GU_odd, F.GU_even):
        return W0Result(tau.dual(), Fraction(0), sigma.twisted(tau.central_char()))
    if f in (F.GSO_even_split, F.GSO_even_qs):
        return W0Result(tau.dual(), Fraction(0), sigma.apply_c_power(m).twisted(tau.central_char()))
    raise NotSimilitude(f"unknown family {f}")


def shahidi_point(group: GroupFamily, k: int, s: ExponentLike) -> tuple[Fraction, Fraction]:
    """(x, t): the Shahidi point s corresponds to nu^x tau x| nu^t sigma."""
    s = exponent(s)
    n, f = group.rank, group.family
    if not 1 <= k <= n:
        raise InvalidParabolic(f"k={k} outside 1..{n} for {f.value}")
    if f in (F.SO_odd, F.SO_even_qs, F.U_odd, F.GSpin_odd, F.GSpin_even_qs):
        return (s if k < n else s / 2, Fraction(0))
    if f in (F.Sp, F.U_even):
        return (s, Fraction(0))
    if f in (F.SO_even_split, F.GSpin_even_split):
        return (s if k < n - 1 else s / 2, Fraction(0))
    if f in (F.GSp, F.GU_even):
        return (s, -k * s / 2)
    if f is F.GSO_even_split:
        return (s, -k * s / 2) if k < n - 1 else (s / 2, -n * s / 4)
    if f in (F.GSO_even_qs, F.GU_odd):
        return (s, -k * s / 2) if k < n else (s / 2, -n * s / 4)
    raise InvalidParabolic(f"unknown family {f}")


def shahidi_point_to_exponent(group: GroupFamily, k: int, s: ExponentLike) -> Fraction:
    return shahidi_point(group, k, s)[0]


def case4_holds(group: GroupFamily, tau: CuspidalAtom, base: BaseRep | TwistedBase) -> bool:
    """The duality condition under which nu^x tau x| sigma never reduces yet tau still contributes."""
    sigma = as_base(base)
    f = group.family
    odd = tau.gl_rank % 2 == 1
    c_moves = odd and not sigma.c_fixed
    if f in (F.SO_odd, F.Sp, F.U_odd, F.U_even, F.GSpin_odd):
        return False
    if f in (F.SO_even_split, F.SO_even_qs):
        return tau.is_self_dual and c_moves
    if f in (F.GSp, F.GU_odd, F.GU_even):
        return tau.is_self_dual and not tau.central_char().unitary().is_identity
    if f in (F.GSO_even_split, F.GSO_even_qs):
        fixed = tau.central_char().unitary().is_identity and not c_moves
        return tau.is_self_dual and not fixed
    # general spin, even
    twisted_dual = tau.dual().twisted(sigma.central_char)
    return twisted_dual == tau and c_moves


def omega_prime(base: BaseRep | TwistedBase) -> CharacterSymbol:
    """Central character on general spin families, trivial otherwise."""
    tb = as_twisted(base)
    return tb.central_char if tb.group.is_gspin else IDENTITY


class Kind(str, Enum):
    """Reducibility type of a pair (tau, sigma)."""

    C0 = "C0"
    C_half = "C_half"
    C1 = "C1"
    CN = "CN"
    Irr = "Irr"

    @property
    def alpha(self) -> Fraction | None:
        return {"C0": Fraction(0), "C_half": Fraction(1, 2), "C1": Fraction(1)}.get(self.value)
