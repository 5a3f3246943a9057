from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genera.errors import InvalidBase, NotSimilitude, ParseError
from genera.groups import (
    IDENTITY,
    NO_RANK_ONE_BASE,
    BaseRep,
    CharacterSymbol,
    CuspidalAtom,
    Family,
    GroupFamily,
    PoleType,
    _beta_value,
    beta,
    central_character,
    exponent,
    pole_type,
    render_exponent,
    shahidi_point_to_exponent,
    twist_induced,
    w0_action,
)

CHI = CharacterSymbol.generator("chi")
TAU = CuspidalAtom.selfdual("t", 1, "R", IDENTITY)
LAM, LAM_D = CuspidalAtom.pair("lam", 1, CharacterSymbol.generator("w[lam]"))


def group(fam, n):
    return GroupFamily(Family(fam), n)


def test_beta_values():
    assert _beta_value(group("Sp", 3), Fraction(5)) == 0
    assert beta(BaseRep.make("s", "GSpin_odd", 2, eps=1)) == 1
    assert beta(BaseRep.make("s", "GSpin_even_split", 0, eps=3)) == Fraction(3, 2)


def test_classical_base_rejects_nonunitary_central_character():
    with pytest.raises(InvalidBase):
        BaseRep.make("s", "Sp", 3, eps=5)


@pytest.mark.parametrize("fam", sorted(NO_RANK_ONE_BASE))
def test_rank_one_base_forbidden(fam):
    with pytest.raises(InvalidBase):
        BaseRep.make("s", fam, 1)


def test_twist_induced():
    assert twist_induced(group("GSp", 3), CHI, 2, 1) == (IDENTITY, CHI)
    assert twist_induced(group("GSpin_odd", 2), CHI, 2, 0) == (CHI, CHI ** 2)
    with pytest.raises(NotSimilitude):
        twist_induced(group("Sp", 3), CHI, 2, 1)


def test_central_character():
    w1, w2 = CharacterSymbol.generator("w1"), CharacterSymbol.generator("w2")
    s = BaseRep.make("s", "GSpin_odd", 2)
    assert central_character(group("GSpin_odd", 4), [w1, w2], s, 2) == s.central_char
    g = BaseRep.make("s", "GSp", 0)
    assert central_character(group("GSp", 1), [w1], g, 0) == w1 * g.central_char ** 2
    q = BaseRep.make("s", "GSO_even_qs", 3)
    assert central_character(group("GSO_even_qs", 3), [], q, 3) == q.central_char


def test_w0_action():
    r = w0_action(group("Sp", 2), LAM, BaseRep.make("s", "Sp", 1))
    assert r.atom == LAM_D and r.base.base.c_mark == "e"
    sp = BaseRep.make("s", "GSpin_odd", 1)
    r = w0_action(group("GSpin_odd", 2), LAM, sp)
    assert r.atom == LAM_D.twisted(sp.central_char)
    r = w0_action(group("SO_even_split", 3), TAU, BaseRep.make("s", "SO_even_split", 2, c_fixed=False))
    assert r.atom == TAU and r.base.base.c_mark == "c"


def test_shahidi_points():
    assert shahidi_point_to_exponent(group("Sp", 3), 1, 1) == 1
    assert shahidi_point_to_exponent(group("SO_odd", 3), 3, 1) == Fraction(1, 2)
    assert shahidi_point_to_exponent(group("GSpin_even_qs", 3), 3, 2) == 1


def test_pole_type_aliases():
    for text in ("Rminus", "R-", "R^-", "R⁻"):
        assert pole_type(text) is PoleType.Rminus
    assert pole_type(None) is None


def test_exponent_rejects_floats():
    with pytest.raises(ParseError):
        exponent(0.5)
    assert exponent("-3/2") == Fraction(-3, 2)


@given(st.fractions(max_denominator=2))
def test_exponent_render_round_trip(x):
    assert exponent(render_exponent(x)) == x


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_character_powers(a, b):
    eta = CharacterSymbol.generator("eta", 2)
    assert (CHI ** a) * (CHI ** b) == CHI ** (a + b)
    assert (CHI ** a).inverse() == CHI ** (-a)
    assert eta ** (2 * a) == IDENTITY


@given(st.sampled_from(["1", "chi", "chi^2 * nu^{1/2}", "w[s]^-1"]))
def test_character_parse_render(text):
    c = CharacterSymbol.parse(text)
    assert CharacterSymbol.parse(c.render()) == c


def test_atom_duality():
    assert LAM.dual() == LAM_D and LAM_D.dual() == LAM
    assert TAU.dual() is TAU
    assert TAU.is_self_dual and not LAM.is_self_dual
