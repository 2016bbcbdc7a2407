import itertools

import pytest

import heytord.hf as hf
from heytord.errors import EngineError, UnsupportedAddendError
from heytord.hset import Universe
from heytord.intervals import IntervalAlgebra
from heytord.order import build_upset_algebra, zoo
from heytord.ordinals import (
    OrdinalWitnessPair,
    hsucc,
    hunion,
    is_ord,
    ord_add,
    ord_em,
    pair_encode,
    perp,
    theta,
    trichotomy,
    witness_pair,
)


@pytest.fixture()
def chain2():
    alg = build_upset_algebra(zoo()["chain2"])
    U = Universe(alg)
    bot, h, top = alg.enumerate_elements()
    return U, bot, h, top


def test_hsucc(chain2):
    U, bot, h, top = chain2
    assert hsucc(U, U.numeral(0)) is U.numeral(1)
    assert hsucc(U, U.numeral(2)) is U.numeral(3)
    u_h = U.make_hset([(U.numeral(0), h)])
    s = hsucc(U, u_h)
    assert s.entries == ((U.numeral(0), h), (u_h, top))


def test_ord_add_examples(chain2):
    U, bot, h, top = chain2
    assert ord_add(U, U.numeral(1), U.numeral(1)) is U.numeral(2)
    assert ord_add(U, U.numeral(2), U.numeral(1)) is U.numeral(3)
    u_h = U.make_hset([(U.numeral(0), h)])
    assert ord_add(U, u_h, U.numeral(0)) is u_h


def test_ord_add_matches_classical_up_to_six():
    U = Universe(build_upset_algebra(zoo()["chain1"]))
    for m in range(7):
        for n in range(7):
            assert ord_add(U, U.numeral(m), U.numeral(n)) is U.numeral(m + n)


def test_is_ord_examples(chain2):
    U, bot, h, top = chain2
    assert is_ord(U, U.numeral(2)) == top
    u_h = U.make_hset([(U.numeral(0), h)])
    assert is_ord(U, u_h) == top
    assert is_ord(U, U.make_hset([(U.numeral(1), top)])) == bot


def test_ord_em_guarantees(chain2):
    U, bot, h, top = chain2
    for a, lem in ((h, U.algebra.join(h, U.algebra.neg(h))), (top, top)):
        em = ord_em(U, a)
        assert U.truth_eq(em, U.numeral(2)) == lem
        assert U.truth_mem(em, U.numeral(2)) == bot
        assert U.truth_mem(U.numeral(2), em) == bot
        assert is_ord(U, em) == top


def test_perp_and_trichotomy_finite(chain2):
    U, bot, h, top = chain2
    assert perp(U, U.numeral(2), U.numeral(2)) == bot
    assert perp(U, ord_em(U, h), U.numeral(2)) == bot
    u_h = U.make_hset([(U.numeral(0), h)])
    assert trichotomy(U, U.numeral(1), u_h) == h
    assert trichotomy(U, U.numeral(0), U.numeral(1)) == top


def test_theta_cases(chain2):
    U, bot, h, top = chain2
    x, u = U.numeral(0), U.make_hset([(U.numeral(1), top)])
    assert theta(U, x, u, x, u) == top
    B = Universe(build_upset_algebra(zoo()["chain1"]))
    assert theta(B, B.numeral(0), B.numeral(0), B.numeral(1), B.numeral(1)) == B.algebra.bottom()


def test_witness_pair_certification(witness_universe):
    U, P = witness_universe
    top, bot = U.algebra.top(), U.algebra.bottom()
    two = U.numeral(2)
    assert P.perp_value == top
    assert U.truth_mem(P.A, two) == bot
    assert U.truth_eq(P.A, two) == bot
    assert U.truth_mem(two, P.A) == bot
    assert trichotomy(U, P.A, two) == bot
    assert perp(U, P.A, two) == top
    assert is_ord(U, P.A) == top and is_ord(U, P.B) == top
    assert U.constants["A"] is P.A and U.constants["B"] is P.B


def test_witness_needs_interval_algebra(chain2):
    U, *_ = chain2
    with pytest.raises(EngineError):
        witness_pair(U)


def test_pair_encode_zero_addends(witness_universe):
    U, P = witness_universe
    z = U.numeral(0)
    assert pair_encode(U, P, z, z) is hunion(U, hsucc(U, P.A), hsucc(U, P.B))


def test_pair_encode_injectivity_instance(witness_universe):
    U, P = witness_universe
    bot = U.algebra.bottom()
    v = U.truth_eq(
        pair_encode(U, P, U.numeral(0), U.numeral(1)),
        pair_encode(U, P, U.numeral(1), U.numeral(0)),
    )
    assert v == bot  # forced below [0 = 1] = bottom by perp = top


def test_pair_encode_vacuous_over_boolean():
    U = Universe(build_upset_algebra(zoo()["chain1"]))
    alg = U.algebra
    two = U.numeral(2)
    P = OrdinalWitnessPair(two, two, perp(U, two, two))
    assert P.perp_value == alg.bottom()
    p = alg.meet(
        P.perp_value,
        U.truth_eq(pair_encode(U, P, U.numeral(0), U.numeral(1)), pair_encode(U, P, U.numeral(1), U.numeral(0))),
    )
    assert alg.le(p, U.truth_eq(U.numeral(0), U.numeral(1)))


def test_theta_pairing_over_witness(witness_universe):
    U, P = witness_universe
    top = U.algebra.top()
    zero = U.numeral(0)
    for g, d in itertools.product(range(3), repeat=2):
        v = theta(
            U,
            U.numeral(g),
            pair_encode(U, P, zero, U.numeral(g)),
            U.numeral(d),
            pair_encode(U, P, zero, U.numeral(d)),
        )
        assert v == top, (g, d)


def test_perp_shift_over_witness(witness_universe):
    U, P = witness_universe
    top = U.algebra.top()
    for g in range(3):
        assert perp(U, P.A, ord_add(U, hsucc(U, P.B), U.numeral(g))) == top


def test_add_rejects_families_on_both_sides(witness_universe):
    U, P = witness_universe
    with pytest.raises(UnsupportedAddendError):
        ord_add(U, P.A, P.A)
