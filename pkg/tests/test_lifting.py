from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genera.checks import (
    ds_round_trip,
    gamma_holds,
    gamma_mutations_detected,
    generic_round_trip,
    hn_ds_round_trip,
    tempered_round_trip,
)
from genera.classify import DiscreteSeriesDatum, LanglandsDatum, TemperedDatum, check_ds
from genera.errors import BaseLiftMismatch, GenericSequenceViolation, ParityViolation, UnsupportedFamily
from genera.groups import BaseRep, Family, GroupFamily
from genera.lifting import (
    BaseLiftTable,
    HNRepDatum,
    balanced,
    descend_ds,
    descend_generic,
    descend_tempered,
    gamma_bag,
    hn_generic_violation,
    lift_ds,
    lift_generic,
    lift_tempered,
    parameter_to_representation,
    partition,
    pole_profile,
    table_from_lift,
)
from genera.params import ParameterSummand, WeilParameter
from genera.samples import (
    G_LAM,
    G_LAM_D,
    G_ONE,
    G_T2,
    LAM,
    LAM_D,
    ONE,
    T2,
    U1,
    exhaustive_discrete_hn,
    exhaustive_ds,
    standard_lifts,
)
from genera.segments import Multisegment, seg

HALF = Fraction(1, 2)
LIFTS = standard_lifts()
SO1 = LIFTS.base("SO_odd[1]")
SP_ONE = LIFTS.base("Sp[one]")


def hn(fam, rank, *ms, std=()):
    return HNRepDatum(GroupFamily(Family(fam), rank), Multisegment(ms), std)


def test_descend_b_case():
    rho = hn("SO_odd", 4, balanced(ONE, 1), balanced(ONE, 2))
    assert partition(pole_profile(rho))["B"] == [ONE]
    assert descend_ds(rho, LIFTS) == DiscreteSeriesDatum(SO1, (seg(ONE, -1, 2),))


def test_descend_a1_case():
    rho = hn("Sp", 4, balanced(ONE, 0), balanced(ONE, 1), balanced(ONE, 2))
    assert partition(pole_profile(rho))["A1"] == [ONE]
    assert descend_ds(rho, LIFTS) == DiscreteSeriesDatum(SP_ONE, (seg(ONE, -1, 2),))


def test_descend_a2_and_c_odd_cases():
    rho = hn("Sp", 2, balanced(ONE, 2))
    assert descend_ds(rho, LIFTS) == DiscreteSeriesDatum(SP_ONE, (seg(ONE, 1, 2),))
    rho = hn("SO_odd", 2, balanced(U1, 3 * HALF))
    assert partition(pole_profile(rho))["C_odd"] == [U1]
    assert descend_ds(rho, LIFTS) == DiscreteSeriesDatum(SO1, (seg(U1, HALF, 3 * HALF),))


def test_lift_ds_examples():
    assert lift_ds(DiscreteSeriesDatum(SP_ONE, (seg(ONE, 1, 2),)), LIFTS) == hn("Sp", 2, balanced(ONE, 2))
    got = lift_ds(DiscreteSeriesDatum(SO1, (seg(ONE, -1, 2),)), LIFTS)
    assert got == hn("SO_odd", 4, balanced(ONE, 1), balanced(ONE, 2))
    assert lift_ds(DiscreteSeriesDatum(SP_ONE), LIFTS) == hn("Sp", 0, balanced(ONE, 0))
    got = lift_ds(DiscreteSeriesDatum(SP_ONE, (seg(ONE, 0, 1),)), LIFTS)
    assert got == hn("Sp", 2, balanced(ONE, 0), balanced(ONE, 0), balanced(ONE, 1))


def test_lift_ds_needs_the_base_atom():
    with pytest.raises(BaseLiftMismatch):
        lift_ds(DiscreteSeriesDatum(SO1, (seg(ONE, 1, 2),)), LIFTS)


def test_lift_table_validation():
    with pytest.raises(BaseLiftMismatch):
        BaseLiftTable([(BaseRep.make("x", "Sp", 0), [])])
    with pytest.raises(BaseLiftMismatch):
        BaseLiftTable([(BaseRep.make("x", "SO_odd", 1), [LAM, LAM_D])])
    with pytest.raises(UnsupportedFamily):
        BaseLiftTable([(BaseRep.make("x", "GSp", 0), [ONE])])


def test_descend_tempered_examples():
    rho = hn("SO_odd", 3, balanced(ONE, 1), balanced(ONE, 1))
    assert descend_tempered(rho, LIFTS) == TemperedDatum(DiscreteSeriesDatum(SO1), (seg(ONE, -1, 1),))
    rho = hn("SO_odd", 1, seg(LAM, 0, 0), seg(LAM_D, 0, 0))
    assert descend_tempered(rho, LIFTS) == TemperedDatum(DiscreteSeriesDatum(SO1), (seg(LAM, 0, 0),))
    rho = hn("Sp", 1, balanced(ONE, 0), balanced(ONE, 0), balanced(ONE, 0))
    assert descend_tempered(rho, LIFTS) == TemperedDatum(DiscreteSeriesDatum(SP_ONE), (seg(ONE, 0, 0),))


def test_tempered_parity_violations():
    with pytest.raises(ParityViolation):
        descend_tempered(hn("SO_odd", 1, balanced(ONE, HALF)), LIFTS)
    with pytest.raises(ParityViolation):
        descend_tempered(hn("Sp", 1, balanced(ONE, HALF), balanced(ONE, 0)), LIFTS)


def test_descend_generic_clauses():
    d, clauses = descend_generic(hn("SO_odd", 2, std=(seg(LAM, 1, 2),)), LIFTS)
    assert clauses == ["3a"] and d.std == (seg(LAM, 1, 2),)
    d, clauses = descend_generic(hn("Sp", 4, balanced(ONE, 2), std=(seg(ONE, 1, 2),)), LIFTS)
    assert clauses == ["3b"]
    assert d.temp.ds == DiscreteSeriesDatum(SP_ONE, (seg(ONE, 1, 2),))
    with pytest.raises(GenericSequenceViolation):
        descend_generic(hn("Sp", 4, balanced(ONE, 2), std=(seg(ONE, 2, 3),)), LIFTS)


def test_lift_generic_rejects_reducible_data():
    d = LanglandsDatum((seg(ONE, 1, 1),), TemperedDatum(DiscreteSeriesDatum(SP_ONE)))
    with pytest.raises(GenericSequenceViolation):
        lift_generic(d, LIFTS)
    d = LanglandsDatum((seg(LAM, 1, 2),), TemperedDatum(DiscreteSeriesDatum(SO1)))
    assert lift_generic(d, LIFTS) == hn("SO_odd", 2, std=(seg(LAM, 1, 2),))


def test_parameter_to_representation():
    p = WeilParameter(GroupFamily(Family.Sp, 1), (ParameterSummand(G_ONE), ParameterSummand(G_T2)))
    rep = parameter_to_representation(p, LIFTS)
    assert isinstance(rep.datum, TemperedDatum) and rep.generic
    assert rep.datum.ds.base == LIFTS.base("Sp[one+t2]")
    p = WeilParameter(GroupFamily(Family.Sp, 1), (
        ParameterSummand(G_LAM, HALF, 2), ParameterSummand(G_LAM_D, -HALF, 2), ParameterSummand(G_ONE)))
    rep = parameter_to_representation(p, LIFTS)
    assert rep.datum.std == (seg(LAM, 0, 1),) and rep.generic


def test_gamma_bag_examples():
    d = DiscreteSeriesDatum(SO1, (seg(ONE, -1, 2),))
    assert gamma_bag(d, LIFTS).segments() == [seg(ONE, -1, 1), seg(ONE, -2, 2)]
    d = DiscreteSeriesDatum(SP_ONE, (seg(ONE, 1, 2),))
    assert gamma_bag(d, LIFTS).segments() == [seg(ONE, -2, 2)]
    rho = hn("Sp", 2, balanced(ONE, 2))
    assert gamma_bag(rho).segments() == [seg(ONE, -2, 2)]
    assert gamma_holds(DiscreteSeriesDatum(SP_ONE), hn("Sp", 0, balanced(ONE, 0)), LIFTS)


def test_gamma_identity_detects_a_moved_pole():
    rho = hn("SO_odd", 4, balanced(ONE, 1), balanced(ONE, 2))
    d = descend_ds(rho, LIFTS)
    assert gamma_holds(d, rho, LIFTS)
    assert not gamma_holds(d, hn("SO_odd", 5, balanced(ONE, 1), balanced(ONE, 3)), LIFTS)
    assert gamma_mutations_detected(d, rho, LIFTS)


def test_derived_table_matches_the_lift():
    table = table_from_lift(LIFTS)
    assert table.kind(ONE, SP_ONE).value == "C1"
    assert table.kind(ONE, SO1).value == "C0"
    assert table.kind(U1, SO1).value == "C_half"


DS_SAMPLE = list(exhaustive_ds(LIFTS, max_end=2, max_segments=2, max_atoms=2))


@settings(max_examples=120)
@given(st.sampled_from(DS_SAMPLE))
def test_ds_round_trip_and_gamma(d):
    assert ds_round_trip(d, LIFTS)
    rho = lift_ds(d, LIFTS)
    assert gamma_holds(d, rho, LIFTS)
    assert gamma_mutations_detected(d, rho, LIFTS)


@settings(max_examples=80)
@given(st.sampled_from([Family.SO_odd, Family.Sp, Family.SO_even_split, Family.U_odd]), st.integers(0, 3),
       st.randoms(use_true_random=False))
def test_hn_discrete_data_descend_to_valid_series(fam, rank, rng):
    data = list(exhaustive_discrete_hn(LIFTS, fam, rank))
    if not data:
        return
    rho = rng.choice(data)
    assert hn_ds_round_trip(rho, LIFTS)
    assert check_ds(descend_ds(rho, LIFTS), table_from_lift(LIFTS)).valid
    assert gamma_holds(descend_ds(rho, LIFTS), rho, LIFTS)


@settings(max_examples=60)
@given(st.sampled_from(DS_SAMPLE), st.sampled_from([(), (seg(ONE, 0, 0),), (seg(T2, -1, 1),), (seg(LAM, 0, 0),)]))
def test_tempered_round_trip(d, tail):
    t = TemperedDatum(d, tail)
    assert tempered_round_trip(t, LIFTS)
    assert gamma_holds(t, lift_tempered(t, LIFTS), LIFTS)


@settings(max_examples=60)
@given(st.sampled_from(DS_SAMPLE), st.sampled_from([seg(LAM, 1, 2), seg(ONE, 3, 3), seg(T2, Fraction(1, 2), Fraction(3, 2))]))
def test_generic_round_trip_when_irreducible(d, s):
    ld = LanglandsDatum((s,), TemperedDatum(d))
    try:
        rho = lift_generic(ld, LIFTS)
    except GenericSequenceViolation:
        return
    assert generic_round_trip(ld, LIFTS)
    assert hn_generic_violation(rho) is None
    assert gamma_holds(ld, rho, LIFTS)

