import pytest

from heytord.errors import ForeignElementError, LiteralParseError, MalformedPosetError, NotEnumerableError
from heytord.intervals import IntervalAlgebra
from heytord.order import (
    Poset,
    UpsetAlgebra,
    build_upset_algebra,
    enumerate_elements,
    ha_imp,
    parse_poset,
    validate_algebra,
)


def test_two_chain_has_three_upsets():
    alg = build_upset_algebra(Poset(("p", "q"), (("p", "q"),)))
    els = [alg.format_element(e) for e in enumerate_elements(alg)]
    assert els == ["{}", "{q}", "{p,q}"]


def test_empty_poset_degenerates():
    alg = build_upset_algebra(Poset((), ()))
    assert alg.bottom() == alg.top()
    assert len(enumerate_elements(alg)) == 1


def test_two_antichain_is_boolean_four():
    alg = build_upset_algebra(Poset(("p", "q"), ()))
    els = enumerate_elements(alg)
    assert len(els) == 4
    assert all(alg.join(a, alg.neg(a)) == alg.top() for a in els)


def test_cyclic_covers_rejected():
    with pytest.raises(MalformedPosetError):
        build_upset_algebra(Poset(("a", "b"), (("a", "b"), ("b", "a"))))


def test_unknown_cover_name_rejected():
    with pytest.raises(MalformedPosetError):
        Poset(("a",), (("a", "z"),))


def test_imp_on_three_chain():
    alg = build_upset_algebra(Poset(("p", "q"), (("p", "q"),)))
    bot, h, top = enumerate_elements(alg)
    assert ha_imp(alg, h, bot) == bot
    for x in (bot, h, top):
        assert ha_imp(alg, bot, x) == top
    assert ha_imp(alg, top, h) == h


def test_imp_rejects_foreign_elements():
    alg = build_upset_algebra(Poset(("p", "q"), (("p", "q"),)))
    with pytest.raises(ForeignElementError):
        ha_imp(alg, 1, 0)  # {p} alone is not up-closed


def test_interval_algebra_not_enumerable():
    with pytest.raises(NotEnumerableError):
        enumerate_elements(IntervalAlgebra())


def test_validate_passes_on_all_zoo(zoo_algebras):
    for alg in zoo_algebras.values():
        rep = validate_algebra(alg, enumerate_elements(alg))
        assert rep.passed, f"{alg.name}: {rep.summary()}"


def test_validate_catches_corrupted_imp(zoo_posets):
    class Corrupt(UpsetAlgebra):
        def imp(self, a, b):
            return self.full

    alg = Corrupt(zoo_posets["chain2"])
    rep = validate_algebra(alg, enumerate_elements(alg))
    failed = [r for r in rep.laws if not r.passed]
    assert failed and failed[0].law == "residuation"
    assert failed[0].counterexample is not None


def test_residuation_exhaustive_on_zoo(zoo_algebras):
    for alg in zoo_algebras.values():
        els = enumerate_elements(alg)
        for a in els:
            for b in els:
                for c in els:
                    assert alg.le(alg.meet(a, c), b) == alg.le(c, alg.imp(a, b))


def test_triple_negation_law(zoo_algebras):
    for alg in zoo_algebras.values():
        for a in enumerate_elements(alg):
            n = alg.neg(a)
            assert alg.neg(alg.neg(n)) == n


def test_lem_iff_antichain(zoo_posets, zoo_algebras):
    for name, alg in zoo_algebras.items():
        is_antichain = not zoo_posets[name].covers
        lem = all(alg.join(a, alg.neg(a)) == alg.top() for a in enumerate_elements(alg))
        assert lem == is_antichain, name


def test_poset_text_format_roundtrip():
    text = """
    # demo
    elem a
    elem b

    le a b
    """
    p = parse_poset(text, name="demo")
    assert p.elements == ("a", "b")
    assert p.covers == (("a", "b"),)
    with pytest.raises(LiteralParseError):
        parse_poset("elem a\nfoo b")


def test_element_literals_roundtrip(zoo_algebras):
    alg = zoo_algebras["diamond"]
    for e in enumerate_elements(alg):
        assert alg.parse_element(alg.format_element(e)) == e
    with pytest.raises(LiteralParseError):
        alg.parse_element("{zzz}")
    with pytest.raises(ForeignElementError):
        alg.parse_element("{a}")  # bottom point alone is not up-closed
