from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from genera.checks import hopf_laws
from genera.glring import RElement, RTensor, counit, m_star, m_star_segment
from genera.groups import IDENTITY, CuspidalAtom
from genera.segments import EMPTY, Multisegment, Segment, seg

TAU = CuspidalAtom.selfdual("t", 1, "R", IDENTITY)
TAU2 = CuspidalAtom.selfdual("u", 2, "R", IDENTITY)


def ms(*segs):
    return Multisegment(segs)


segments = st.builds(
    lambda a, lo, n: Segment(a, Fraction(lo, 2), n),
    st.sampled_from([TAU, TAU2]), st.integers(-5, 5), st.integers(0, 3))


def test_rank_one_segment():
    s = seg(TAU, 0, 0)
    assert m_star_segment(s) == RTensor({(ms(s), EMPTY): 1, (EMPTY, ms(s)): 1})


def test_two_step_segment():
    got = m_star_segment(seg(TAU, 0, 1))
    want = RTensor({(ms(seg(TAU, 0, 1)), EMPTY): 1,
                    (ms(seg(TAU, 1, 1)), ms(seg(TAU, 0, 0))): 1,
                    (EMPTY, ms(seg(TAU, 0, 1))): 1})
    assert got == want
    assert hopf_laws(seg(TAU, 0, 1))


def test_term_count():
    for n in range(6):
        assert len(m_star_segment(Segment(TAU, 0, n))) == n + 2


def test_unit():
    assert m_star(EMPTY) == RTensor.one()
    assert counit(RElement.one()) == 1


def test_square_of_rank_one():
    s = seg(TAU, 0, 0)
    want = RTensor({(ms(s, s), EMPTY): 1, (ms(s), ms(s)): 2, (EMPTY, ms(s, s)): 1})
    assert m_star(ms(s, s)) == want


@settings(max_examples=60)
@given(st.lists(segments, max_size=2), st.lists(segments, max_size=2))
def test_multiplicative(xs, ys):
    x, y = RElement.basis(Multisegment(xs)), RElement.basis(Multisegment(ys))
    assert m_star(x * y) == m_star(x) * m_star(y)


@settings(max_examples=60)
@given(st.lists(segments, min_size=1, max_size=3))
def test_hopf_laws(segs):
    assert hopf_laws(Multisegment(segs))


@given(segments)
def test_mass_is_number_of_cuts(s):
    # each term is one cut of the segment, so the coefficients sum to len + 2
    assert sum(m_star(s).terms.values()) == s.len + 2
    assert all(a.rank + b.rank == s.rank for a, b in m_star(s).terms)
