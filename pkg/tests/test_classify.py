import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from genera.checks import bound_words_pass, bound_words_pass_brute, cascade_invariant, ds_mutations_flagged
from genera.classify import (
    DiscreteSeriesDatum,
    LanglandsDatum,
    ReducibilityEntry,
    ReducibilityTable,
    RepClass,
    TemperedDatum,
    casselman_check,
    check_ds,
    check_tempered,
    classify_rep,
    irreducible_standard,
)
from genera.errors import BoundaryCase, InvalidTableEntry, MissingTableEntry, OrderViolation
from genera.groups import IDENTITY, BaseRep, CharacterSymbol, CuspidalAtom, Kind
from genera.samples import random_ds, random_langlands
from genera.segments import check_dual, linked, seg

HALF = Fraction(1, 2)
XI = CuspidalAtom.selfdual("xi", 1, "R", IDENTITY)
ETA = CuspidalAtom.selfdual("eta", 1, "R-", IDENTITY)
B1 = CuspidalAtom.selfdual("b1", 1, "R", IDENTITY)
LAM, LAM_D = CuspidalAtom.pair("lam", 1, CharacterSymbol.generator("w[lam]"))
SP1 = BaseRep.make("s", "Sp", 1)
TABLE = ReducibilityTable([
    ReducibilityEntry(XI, SP1, Kind.C1),
    ReducibilityEntry(ETA, SP1, Kind.C_half),
    ReducibilityEntry(B1, SP1, Kind.C0),
    ReducibilityEntry(LAM, SP1, Kind.Irr),
    ReducibilityEntry(LAM_D, SP1, Kind.Irr),
])


def ds(*segs, base=SP1):
    return DiscreteSeriesDatum(base, segs)


def langlands(*std, balanced=(), core=()):
    return LanglandsDatum(std, TemperedDatum(ds(*core), balanced))


def test_check_ds_examples():
    assert check_ds(ds(seg(XI, 1, 2)), TABLE).valid
    assert check_ds(ds(seg(XI, 0, 2)), TABLE).codes() == ["DS1"]
    assert check_ds(ds(seg(ETA, HALF, 3 * HALF)), TABLE).valid


def test_check_ds_shifts_by_beta():
    base = BaseRep.make("g", "GSpin_odd", 2, eps=1, omega=IDENTITY)
    table = ReducibilityTable([ReducibilityEntry(XI, base, Kind.C1)])
    assert check_ds(ds(seg(XI, 2, 3), base=base), table).valid
    assert check_ds(ds(seg(XI, 1, 3), base=base), table).codes() == ["DS1"]


def test_check_ds_collects_every_violation():
    rep = check_ds(ds(seg(XI, 0, 1), seg(B1, 1, 1), seg(ETA, 1, 2)), TABLE)
    assert sorted(rep.codes()) == ["DS1", "DS2", "DS3"]


def test_check_ds_chain_condition():
    assert check_ds(ds(seg(XI, 1, 1), seg(XI, -2, 3)), TABLE).valid
    assert "CHAIN" in check_ds(ds(seg(XI, -1, 3), seg(XI, -2, 4)), TABLE).codes()


def test_check_ds_requires_table_entries():
    with pytest.raises(MissingTableEntry):
        check_ds(ds(seg(CuspidalAtom.selfdual("z", 1), 1, 1)), TABLE)


def test_table_entry_consistency():
    with pytest.raises(InvalidTableEntry):
        ReducibilityEntry(ETA, SP1, Kind.C1)
    with pytest.raises(InvalidTableEntry):
        ReducibilityEntry(LAM, SP1, Kind.C0)
    with pytest.raises(InvalidTableEntry):
        ReducibilityEntry(XI, SP1, Kind.CN)


def test_casselman_examples():
    assert casselman_check([(1, 1)], 0)
    assert not casselman_check([(1, 1), (-2, 1)], 0)
    assert casselman_check([(1, 1), (-1, 1)], 0, strict=False)
    assert not casselman_check([(1, 1), (-1, 1)], 0)


def test_check_tempered_examples():
    assert check_tempered(TemperedDatum(ds(seg(XI, 1, 1))), TABLE).valid
    assert check_tempered(TemperedDatum(ds(), (seg(B1, -1, 1),)), TABLE).valid
    assert check_tempered(TemperedDatum(ds(), (seg(B1, 0, 1),)), TABLE).codes() == ["BALANCED"]


def test_tempered_normal_form_flips_to_the_smaller_dual():
    rep = check_tempered(TemperedDatum(ds(), (seg(LAM_D, 0, 0),)), TABLE)
    assert rep.normal_form.balanced == (seg(LAM, 0, 0),)
    assert rep.normal_form.ds.base.c_mark == "e"


def test_cuspidal_level_cases():
    dec = irreducible_standard(langlands(seg(LAM, 1, 2)), TABLE)
    assert dec.irreducible and dec.reasons == (("d([1,2]@lam)", "G7"),)
    dec = irreducible_standard(langlands(seg(XI, -1, 2)), TABLE)
    assert not dec.irreducible and dec.condition == "G8"
    dec = irreducible_standard(langlands(seg(XI, 3, 4)), TABLE)
    assert dec.irreducible and dec.reasons[0][1] == "G8"


def test_dominating_segment_rescues_reducibility():
    dec = irreducible_standard(langlands(seg(XI, 1, 1)), TABLE)
    assert not dec.irreducible
    dec = irreducible_standard(langlands(seg(XI, 1, 1), core=(seg(XI, 1, 2),)), TABLE)
    assert dec.irreducible and dec.reasons[0][1] == "G6b"


def test_linkage_conditions():
    dec = irreducible_standard(langlands(seg(LAM, 2, 3), seg(LAM, 1, 1)), TABLE)
    assert dec.condition == "G1"
    dec = irreducible_standard(langlands(seg(LAM, 1, 2), balanced=(seg(LAM, 0, 0),)), TABLE)
    assert dec.condition == "G3"
    dec = irreducible_standard(langlands(seg(XI, 3, 3), core=(seg(XI, 1, 2),)), TABLE)
    assert dec.condition == "G5"


def test_order_and_boundary_errors():
    with pytest.raises(BoundaryCase):
        irreducible_standard(langlands(seg(LAM, -1, 1)), TABLE)
    with pytest.raises(OrderViolation):
        irreducible_standard(langlands(seg(LAM, -2, 1)), TABLE)
    with pytest.raises(OrderViolation):
        irreducible_standard(langlands(seg(LAM, 1, 1), seg(LAM, 3, 3)), TABLE)


def test_classify_rep_dispatch():
    assert classify_rep(SP1, TABLE).cls is RepClass.Supercuspidal
    assert classify_rep(ds(seg(XI, 1, 2)), TABLE).cls is RepClass.DiscreteSeries
    assert classify_rep(TemperedDatum(ds(), (seg(B1, 0, 0),)), TABLE).cls is RepClass.Tempered
    assert classify_rep(langlands(seg(LAM, 1, 2)), TABLE).cls is RepClass.StandardGeneric
    bad = classify_rep(langlands(seg(LAM, 2, 3), seg(LAM, 1, 1)), TABLE)
    assert bad.cls is RepClass.Invalid and bad.report.codes() == ["G1"]
    assert bad.decision.pair == ("d([2,3]@lam)", "d([1,1]@lam)")


def test_nongeneric_base_is_invalid():
    base = BaseRep.make("n", "Sp", 1, generic=False)
    assert classify_rep(base, TABLE).report.codes() == ["BASE"]


@settings(max_examples=60)
@given(st.integers(0, 2 ** 32))
def test_valid_ds_passes_the_bound(seed):
    datum, table = random_ds(random.Random(seed))
    assert bound_words_pass(datum)


@settings(max_examples=25)
@given(st.integers(0, 2 ** 32))
def test_bound_shortcut_matches_enumeration(seed):
    datum, _ = random_ds(random.Random(seed), max_segments=2, max_atoms=2, max_end=2)
    assert bound_words_pass(datum) == bound_words_pass_brute(datum)


@settings(max_examples=60)
@given(st.integers(0, 2 ** 32))
def test_mutated_ds_is_flagged(seed):
    datum, table = random_ds(random.Random(seed))
    assert ds_mutations_flagged(datum, table)


@settings(max_examples=80)
@given(st.integers(0, 2 ** 32))
def test_cascade_is_invariant(seed):
    datum, table = random_langlands(random.Random(seed))
    assert cascade_invariant(datum, table)


@given(st.lists(st.tuples(st.sampled_from([LAM, LAM_D]), st.integers(1, 4), st.integers(0, 2)), min_size=1, max_size=3))
def test_unlinked_irr_data_are_irreducible(raw):
    std = [seg(a, lo, lo + n) for a, lo, n in raw]
    std.sort(key=lambda s: (-s.center, s.sort_key()))
    pool = std + [check_dual(s) for s in std]
    assume(not any(linked(x, y) for x in std for y in pool))
    assert irreducible_standard(langlands(*std), TABLE).irreducible
