import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genera.checks import canon_stable, decompose_reassemble
from genera.errors import InvalidAtom, InvalidParameter, ShiftedSummand, UnpairedShiftedSummand
from genera.groups import Family, GroupFamily, PoleType
from genera.params import (
    GaloisAtom,
    ParamClass,
    ParameterSummand,
    ShiftedPair,
    WeilParameter,
    c_canonicalize,
    c_conjugate,
    classify_parameter,
    decompose,
    is_discrete,
    is_supercuspidal_generic,
    is_tempered,
    reassemble,
    summand_pole_type,
    validate_parameter,
)
from genera.samples import G_ONE, G_T2, G_U1, G_X, random_parameter

HALF = Fraction(1, 2)
LAM, LAM_D = GaloisAtom.pair("lam")
ONE_C = GaloisAtom("o1", 1, pole_type="R", c_image="o2")
ONE_C2 = GaloisAtom("o2", 1, pole_type="R", c_image="o1")


def param(fam, rank, *summands):
    return WeilParameter(GroupFamily(Family(fam), rank), summands)


def S(atom, shift=0, sl2=1, mult=1):
    return ParameterSummand(atom, shift, sl2, mult)


def test_summand_pole_type():
    assert summand_pole_type(S(G_ONE)) is PoleType.R
    assert summand_pole_type(S(G_U1, sl2=2)) is PoleType.R
    assert summand_pole_type(S(G_U1, sl2=3)) is PoleType.Rminus
    assert summand_pole_type(S(G_ONE, sl2=2)) is PoleType.Rminus
    assert summand_pole_type(S(LAM)) is None
    with pytest.raises(ShiftedSummand):
        summand_pole_type(S(G_ONE, shift=1))


def test_atom_invariants():
    assert LAM.dual().dual() == LAM
    with pytest.raises(InvalidAtom):
        GaloisAtom("bad", 1, dual_id="other", pole_type="R")
    with pytest.raises(InvalidAtom):
        GaloisAtom("bad", 1)


def test_classify_examples():
    assert classify_parameter(param("Sp", 1, S(G_ONE), S(G_T2))) is ParamClass.SupercuspidalGeneric
    p = param("Sp", 1, S(G_ONE, mult=3))
    assert classify_parameter(p) is ParamClass.Tempered
    assert is_tempered(p) and not is_discrete(p)
    assert classify_parameter(param("Sp", 2, S(G_ONE, sl2=3), S(G_T2))) is ParamClass.Discrete


def test_shifted_pair_is_generic_per_cascade():
    p = param("Sp", 2, S(LAM, HALF, 2), S(LAM_D, -HALF, 2), S(G_ONE))
    assert classify_parameter(p) is ParamClass.Generic
    p = param("Sp", 1, S(G_ONE, 1), S(G_ONE, -1), S(G_ONE))
    assert classify_parameter(p) is ParamClass.General


def test_unbounded_atoms_are_general():
    assert classify_parameter(param("Sp", 1, S(G_X), S(G_T2))) is ParamClass.General


def test_validation():
    with pytest.raises(InvalidParameter):
        validate_parameter(param("Sp", 2, S(G_ONE)))
    with pytest.raises(InvalidParameter):
        validate_parameter(param("Sp", 1, S(G_ONE), S(LAM, mult=2)))
    with pytest.raises(InvalidParameter):
        validate_parameter(param("Sp", 1, S(G_ONE, sl2=2), S(G_ONE)))


def test_decompose_examples():
    p = param("Sp", 1, S(G_ONE), S(G_T2))
    assert decompose(p) == (p, [])
    p = param("Sp", 2, S(LAM, HALF, 2), S(LAM_D, -HALF, 2), S(G_ONE))
    temp, pairs = decompose(p)
    assert temp == param("Sp", 0, S(G_ONE))
    assert pairs == [ShiftedPair(LAM, Fraction(0), 1)]
    assert pairs[0].shift == HALF


def test_decompose_orders_by_shift():
    p = param("Sp", 3, S(LAM, HALF), S(LAM_D, -HALF), S(G_T2, 1), S(G_T2, -1), S(G_ONE))
    _, pairs = decompose(p)
    assert [t.shift for t in pairs] == [1, HALF]


def test_decompose_needs_partners():
    p = WeilParameter(GroupFamily(Family.Sp, 1), (S(LAM, HALF), S(LAM_D, -HALF, mult=2)))
    with pytest.raises(UnpairedShiftedSummand):
        decompose(p)


def test_c_canonicalize():
    p = param("SO_even_split", 1, S(G_ONE), S(G_ONE))
    assert c_canonicalize(p) == p.__class__(p.group, p.summands, True)
    reg = {a.id: a for a in (ONE_C, ONE_C2, G_ONE)}
    p = param("SO_even_split", 1, S(ONE_C2), S(G_ONE))
    q = c_canonicalize(p, reg)
    assert q.render() == min(p.render(), c_conjugate(p, reg).render())
    assert c_canonicalize(c_conjugate(p, reg), reg) == q
    with pytest.raises(InvalidParameter):
        c_canonicalize(param("Sp", 0, S(G_ONE)))


@settings(max_examples=80)
@given(st.integers(0, 2 ** 32))
def test_random_parameters_round_trip(seed):
    p = random_parameter(random.Random(seed))
    assert decompose_reassemble(p)
    temp, pairs = decompose(p) if all(a.bounded for a in p.atoms().values()) else (p, [])
    assert reassemble(temp, pairs).dim == p.dim


@settings(max_examples=80)
@given(st.integers(0, 2 ** 32))
def test_class_predicates_are_nested(seed):
    p = random_parameter(random.Random(seed))
    if is_supercuspidal_generic(p):
        assert is_discrete(p)
    if is_discrete(p):
        assert is_tempered(p)


@settings(max_examples=40)
@given(st.integers(0, 2 ** 32), st.sampled_from([Family.SO_even_split, Family.SO_even_qs]))
def test_canonical_representative_is_stable(seed, fam):
    rng = random.Random(seed)
    while True:
        p = random_parameter(rng)
        if p.group.family is fam:
            break
    assert canon_stable(p, {})
