"""Invariant checks shared by the self-test runner and the test suite.

Each check returns True when the invariant holds for its input.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .classify import (
    DiscreteSeriesDatum,
    LanglandsDatum,
    ReducibilityTable,
    check_ds,
    casselman_check,
    dual_substitute,
    irreducible_induced,
    irreducible_standard,
)
from .errors import InvalidParameter
from .glring import RElement, counit_left, counit_right, m_star, m_star_left, m_star_right
from .groups import BaseRep
from .lifting import (
    BaseLiftTable,
    HNRepDatum,
    check_gamma_identity,
    gamma_bag,
    descend_ds,
    descend_generic,
    descend_tempered,
    lift_ds,
    lift_generic,
    lift_tempered,
    parameter_to_representation,
)
from .mustar import mu_star, mu_star_induced, multisegment_words, tadic_bound
from .params import (
    ParamClass,
    WeilParameter,
    c_canonicalize,
    classify_parameter,
    decompose,
    reassemble,
)
from .segments import Multisegment, Segment


def hopf_laws(x) -> bool:
    """Coassociativity and both counit laws of m* on x."""
    t = m_star(x)
    x = RElement.basis(x) if isinstance(x, Multisegment) else RElement.of(x)
    return m_star_left(t) == m_star_right(t) and counit_left(t) == x and counit_right(t) == x


def induction_in_stages(s1: Segment, s2: Segment, base: BaseRep) -> bool:
    fam = base.group.family
    whole = mu_star(RElement.basis(Multisegment([s1, s2])), base)
    staged = mu_star_induced(RElement.of(s1), mu_star(RElement.of(s2), base), fam)
    return whole == staged


def _all_prefixes_positive(ms: Multisegment, beta) -> bool:
    """Strict test on every shuffle word without listing the words.

    A prefix of a shuffle is fixed by how far it has consumed each chain and
    its partial sum is the sum of the chains' own prefix sums. The smallest
    nonempty prefix therefore takes a nonempty minimum on one chain and a
    possibly empty minimum on every other.
    """
    lows, lows0 = [], []
    for s in ms:
        steps = [Fraction(s.atom.gl_rank) * (s.high - i - Fraction(beta)) for i in range(s.len + 1)]
        sums = list(itertools.accumulate(steps))
        lows.append(min(sums))
        lows0.append(min(0, lows[-1]))
    total0 = sum(lows0)
    return all(lo + total0 - lo0 > 0 for lo, lo0 in zip(lows, lows0))


def bound_words_pass(datum: DiscreteSeriesDatum) -> bool:
    """Every shuffle word of every term of the support bound passes the strict test."""
    return all(_all_prefixes_positive(t.gl, datum.beta) for t in tadic_bound(datum).terms)


def bound_words_pass_brute(datum: DiscreteSeriesDatum) -> bool:
    """Enumerating oracle for bound_words_pass; exponential in the word length."""
    bt = datum.beta
    for t in tadic_bound(datum).terms:
        for word in multisegment_words(t.gl):
            if not casselman_check([(e, a.gl_rank) for a, e in word], bt):
                return False
    return True


def _with_a(datum: DiscreteSeriesDatum, index: int, a: Fraction) -> DiscreteSeriesDatum:
    segs = list(datum.segments)
    s = segs[index]
    segs[index] = Segment.from_ends(s.atom, datum.beta - a, s.high)
    return DiscreteSeriesDatum(datum.base, tuple(segs), datum.chi0)


def ds_mutations_flagged(datum: DiscreteSeriesDatum, table: ReducibilityTable) -> bool:
    """Moving any segment's left coordinate out of its allowed set is reported."""
    from .classify import DS_CODE
    from .samples import disallowed_a

    for i, s in enumerate(datum.segments):
        kind = table.kind(s.atom, datum.base)
        bad = disallowed_a(kind)
        if datum.coords(s)[1] + bad < 0:
            continue
        report = check_ds(_with_a(datum, i, bad), table)
        if DS_CODE[kind] not in report.codes():
            return False
    return True


def cascade_invariant(datum: LanglandsDatum, table: ReducibilityTable) -> bool:
    """The decision survives each dual substitution and each equal-centre permutation."""
    ref = irreducible_standard(datum, table).irreducible
    for i in range(len(datum.std)):
        std, temp = dual_substitute(datum, i)
        if irreducible_induced(std, temp, table).irreducible != ref:
            return False
    groups = [list(g) for _, g in itertools.groupby(datum.std, key=lambda s: s.center)]
    for perm in itertools.product(*(itertools.permutations(g) for g in groups)):
        std = tuple(s for g in perm for s in g)
        if irreducible_standard(LanglandsDatum(std, datum.temp), table).irreducible != ref:
            return False
    return True


def ds_round_trip(datum: DiscreteSeriesDatum, lifts: BaseLiftTable) -> bool:
    rho = lift_ds(datum, lifts)
    return descend_ds(rho, lifts) == datum and lift_ds(descend_ds(rho, lifts), lifts) == rho


def hn_ds_round_trip(rho, lifts: BaseLiftTable) -> bool:
    return lift_ds(descend_ds(rho, lifts), lifts) == rho


def tempered_round_trip(t, lifts: BaseLiftTable) -> bool:
    rho = lift_tempered(t, lifts)
    return descend_tempered(rho, lifts) == t


def generic_round_trip(d, lifts: BaseLiftTable) -> bool:
    rho = lift_generic(d, lifts)
    back, _ = descend_generic(rho, lifts)
    return back == d


def gamma_holds(g_datum, rho, lifts: BaseLiftTable) -> bool:
    return check_gamma_identity(g_datum, rho, lifts)


_GENERIC = (ParamClass.SupercuspidalGeneric, ParamClass.Discrete, ParamClass.Tempered, ParamClass.Generic)


def parameter_paths_agree(p: WeilParameter, lifts: BaseLiftTable) -> bool:
    """classify_parameter and parameter_to_representation agree on genericity."""
    generic = classify_parameter(p) in _GENERIC
    try:
        rep = parameter_to_representation(p, lifts)
    except InvalidParameter:
        return not generic
    return rep.generic == generic


def decompose_reassemble(p: WeilParameter) -> bool:
    try:
        temp, pairs = decompose(p)
    except InvalidParameter:
        return True
    return reassemble(temp, pairs, p.group) == p


def canon_stable(p: WeilParameter, registry) -> bool:
    from .params import c_conjugate

    q = c_canonicalize(p, registry)
    return (c_canonicalize(q, registry) == q
            and c_canonicalize(c_conjugate(p, registry), registry) == q
            and classify_parameter(q) == classify_parameter(p))


def pole_mutations(rho: HNRepDatum) -> list:
    """H_N data differing from ``rho`` by moving one segment up by one step."""
    out = []
    bal = list(rho.balanced)
    for i, s in enumerate(bal):
        moved = Segment(s.atom, s.low + 1, s.len)
        out.append(HNRepDatum(rho.group, Multisegment(bal[:i] + [moved] + bal[i + 1:]), rho.std))
    for i, s in enumerate(rho.std):
        moved = Segment(s.atom, s.low + 1, s.len)
        out.append(HNRepDatum(rho.group, rho.balanced, rho.std[:i] + (moved,) + rho.std[i + 1:]))
    return out


def gamma_mutations_detected(g_datum, rho: HNRepDatum, lifts: BaseLiftTable) -> bool:
    """No single-segment move of ``rho`` keeps the gamma identity with ``g_datum``."""
    left = gamma_bag(g_datum, lifts)
    return all(gamma_bag(m) != left for m in pole_mutations(rho))
