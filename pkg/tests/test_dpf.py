from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from purequintic.conductor import Counters, Species, profile
from purequintic.dpf import (
    TYPE_ORDER,
    DpfSignature,
    DpfType,
    NormKind,
    StateVector,
    admissible_types,
    dimension_bounds,
    index_pairs_for_type,
    polya_predicate,
    signature_from_type,
    type_from_dims,
    type_from_signature,
)
from purequintic.errors import NoSuchSignature

T = DpfType


def test_thirteen_types_with_ascii_names():
    assert [t.value for t in TYPE_ORDER] == "a1 a2 a3 b1 b2 g d1 d2 e z1 z2 h t".split()
    assert DpfType.parse("ϑ") is T.THETA and DpfType.parse("gamma") is T.GAMMA
    with pytest.raises(ValueError):
        DpfType.parse("omega")


@pytest.mark.parametrize(
    "sig, expected",
    [
        ((2, NormKind.NONE, 1, 0, 2), T.ALPHA1),
        ((0, NormKind.BOTH, 1, 0, 0), T.THETA),
        ((1, NormKind.ZETA, 1, 1, 0), T.ZETA2),
    ],
)
def test_type_from_signature_examples(sig, expected):
    assert type_from_signature(DpfSignature(*sig)) is expected


@pytest.mark.parametrize(
    "t, sig",
    [
        (T.BETA2, (2, NormKind.NONE, 2, 1, 0)),
        (T.ETA, (1, NormKind.ZETA, 2, 0, 0)),
        (T.GAMMA, (2, NormKind.NONE, 3, 0, 0)),
    ],
)
def test_signature_from_type_examples(t, sig):
    assert signature_from_type(t) == DpfSignature(*sig)


@pytest.mark.parametrize("t", TYPE_ORDER)
def test_bijection_round_trip(t):
    sig = signature_from_type(t)
    assert type_from_signature(sig) is t
    assert sig.U + 1 == sig.A + sig.I + sig.R
    assert type_from_dims(*sig.dims, sig.norm_kind.zeta) is t


def test_signatures_pairwise_distinct():
    assert len({signature_from_type(t) for t in TYPE_ORDER}) == 13


@given(
    st.integers(0, 2), st.sampled_from(list(NormKind)), st.integers(1, 3), st.integers(0, 2), st.integers(0, 2)
)
def test_signature_space_is_exactly_the_table(U, kind, A, I, R):  # noqa: E741
    try:
        sig = DpfSignature(U, kind, A, I, R)
    except NoSuchSignature:
        return
    # every well-formed signature is one of the thirteen rows
    assert signature_from_type(type_from_signature(sig)) == sig


def test_illegal_signatures_rejected():
    with pytest.raises(NoSuchSignature):
        DpfSignature(1, NormKind.NONE, 1, 1, 0)
    with pytest.raises(NoSuchSignature):
        DpfSignature(2, NormKind.NONE, 1, 1, 0)
    with pytest.raises(NoSuchSignature):
        DpfSignature(0, NormKind.BOTH, 1, 1, 0)


def test_dimension_bounds_examples():
    assert dimension_bounds(profile(7).counters, Species.S2) == (1, 0, 0)
    assert dimension_bounds(profile(5).counters, Species.S1A) == (1, 0, 0)
    # post-condition formula; the prime refinement I <= 1 lives in admissible_types
    assert dimension_bounds(profile(11).counters, Species.S1B) == (2, 2, 2)


@pytest.mark.parametrize(
    "D, expected",
    [
        (449, {T.DELTA2, T.ZETA2, T.THETA}),  # prime, -1 mod 25
        (11, {T.ALPHA1, T.ALPHA2, T.BETA1, T.BETA2, T.DELTA1, T.DELTA2, T.EPSILON}),
        (101, {T.ALPHA1, T.ALPHA2, T.DELTA1, T.DELTA2, T.ZETA1, T.ZETA2, T.THETA}),
        (19, {T.BETA2, T.DELTA2, T.EPSILON}),
        (7, {T.THETA}),
        (5, {T.THETA}),
        (13, {T.EPSILON}),
    ],
)
def test_admissible_prime_cases(D, expected):
    p = profile(D)
    assert admissible_types(p.counters, p.species, prime_radicand=True) == expected


def test_admissible_composite_nonsplit_restrictive():
    p = profile(6)  # 1b, t=2, u=0, s2=s4=0
    assert admissible_types(p.counters, p.species) == {T.GAMMA, T.EPSILON}


@given(st.sampled_from([2, 3, 7, 11, 13, 19, 29, 31, 41, 43, 101, 149, 151, 199, 251, 449]))
def test_primes_never_alpha3_gamma_eta(q):
    p = profile(q)
    assert not admissible_types(p.counters, p.species, True) & {T.ALPHA3, T.GAMMA, T.ETA}


@pytest.mark.parametrize(
    "t, pairs",
    [(T.ALPHA1, {(2, 1)}), (T.DELTA1, {(2, 1), (4, 2)}), (T.GAMMA, {(6, 2)})],
)
def test_index_pairs_examples(t, pairs):
    assert index_pairs_for_type(t) == pairs


def test_no_type_admits_zero_zero():
    assert all((0, 0) not in index_pairs_for_type(t) for t in TYPE_ORDER)


def test_polya_examples():
    assert polya_predicate(1, profile(5).counters, Species.S1A)
    assert polya_predicate(2, profile(2).counters, Species.S1B)
    assert not polya_predicate(2, profile(140).counters, Species.S1A)


@given(st.integers(0, 6), st.integers(0, 10), st.integers(-4, 4))
def test_state_vector_relations(V_L, V_M, E):
    V_N = 4 * V_L + E - 5
    sv = StateVector.from_valuations(V_L, V_M, V_N)
    assert sv.E == E and sv.e_relation_holds()
    assert sv.E_plus == 2 + V_M - 2 * V_L


def test_counters_restrictive_filter():
    c = Counters(t=1, u=0, v=1, n=0, s2=0, s4=1)
    assert not admissible_types(c, Species.S1B) & {T.ZETA1, T.ZETA2, T.ETA, T.THETA}
