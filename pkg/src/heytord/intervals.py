"""Open subsets of the rationals as finite unions of open intervals.

This is the infinite, finitely-representable complete Heyting algebra used by
the incomparable-ordinal witness.  Elements are canonical: sorted, disjoint,
non-adjacent open intervals with exact rational (or infinite) endpoints.  Two
intervals meeting at a single rational do NOT merge — the meeting point is a
carrier point that neither interval contains.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ivcore
from .errors import LiteralParseError, NotEnumerableError
from .ivcore import NEG_INF, POS_INF, is_inf


@dataclass(frozen=True)
class IntervalSet:
    """Canonical finite union of open rational intervals."""

    ivs: tuple  # of (lo, hi) pairs, endpoints Fraction or infinity sentinel

    def is_bottom(self):
        return not self.ivs

    def is_top(self):
        return self.ivs == ((NEG_INF, POS_INF),)

    def raw(self):
        return [(lo, hi, False, False) for lo, hi in self.ivs]

    def __repr__(self):
        return f"IntervalSet({format_interval_set(self)!r})"


BOT = IntervalSet(())
TOP = IntervalSet(((NEG_INF, POS_INF),))


def _from_raw(raw):
    pieces = ivcore.normalize(raw)
    assert all(not lcl and not hcl for _, _, lcl, hcl in pieces), "expected an open set"
    return IntervalSet(tuple((lo, hi) for lo, hi, _, _ in pieces))


def iv_canon(pairs):
    """Canonicalize raw (lo, hi) open intervals; pairs with lo >= hi drop silently."""
    return _from_raw([(lo, hi, False, False) for lo, hi in pairs])


def iv_meet(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    if a.is_bottom() or b.is_top():
        return a
    if b.is_bottom() or a.is_top():
        return b
    return _from_raw(ivcore.intersect(a.raw(), b.raw()))


def iv_join(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    if a.is_bottom() or b.is_top():
        return b
    if b.is_bottom() or a.is_top():
        return a
    return _from_raw(ivcore.union(a.raw(), b.raw()))


def iv_lattice(a: IntervalSet, b: IntervalSet):
    """(meet, join) of two canonical interval sets."""
    return iv_meet(a, b), iv_join(a, b)


def iv_imp(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    """Relative pseudo-complement: interior of (complement of a) union b."""
    if a.is_bottom() or b.is_top():
        return TOP
    if a.is_top():
        return b
    out = _from_raw(ivcore.interior(ivcore.union(ivcore.complement(a.raw()), b.raw())))
    return out


def point_complement(q: Fraction) -> IntervalSet:
    return IntervalSet(((NEG_INF, q), (q, POS_INF)))


def contains_rational(a: IntervalSet, q: Fraction) -> bool:
    return any(lo < q < hi for lo, hi in a.ivs)


class IntervalAlgebra:
    """The complete Heyting algebra of open sets of the rationals."""

    name = "interval"
    finite = False

    def bottom(self):
        return BOT

    def top(self):
        return TOP

    def meet(self, a, b):
        return iv_meet(a, b)

    def join(self, a, b):
        return iv_join(a, b)

    def imp(self, a, b):
        return iv_imp(a, b)

    def neg(self, a):
        return iv_imp(a, BOT)

    def le(self, a, b):
        if a.is_bottom() or b.is_top():
            return True
        return ivcore.subset(a.raw(), b.raw())

    def is_element(self, a):
        return isinstance(a, IntervalSet)

    def enumerate_elements(self):
        raise NotEnumerableError("the interval algebra has infinitely many elements")

    def format_element(self, a):
        return format_interval_set(a)

    def parse_element(self, text):
        return parse_interval_set(text)

    def sample_elements(self, rng, n, span=8):
        """Seeded random canonical elements for law checking."""
        out = []
        for _ in range(n):
            pairs = []
            for _ in range(rng.randrange(0, 4)):
                a = Fraction(rng.randrange(-span, span), rng.randrange(1, 5))
                b = Fraction(rng.randrange(-span, span), rng.randrange(1, 5))
                if a == b:
                    continue
                pairs.append((min(a, b), max(a, b)))
            if pairs and rng.randrange(4) == 0:
                lo, hi = pairs[0]
                pairs[0] = (NEG_INF, hi)
            if pairs and rng.randrange(4) == 0:
                lo, hi = pairs[-1]
                pairs[-1] = (lo, POS_INF)
            out.append(iv_canon(pairs))
        return out


def format_rational(v) -> str:
    if v is NEG_INF or v == NEG_INF:
        return "-inf"
    if v is POS_INF or v == POS_INF:
        return "+inf"
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(text: str):
    text = text.strip()
    if text == "-inf":
        return NEG_INF
    if text in ("+inf", "inf"):
        return POS_INF
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise LiteralParseError(f"bad rational {text!r}") from exc


def format_interval_set(a: IntervalSet) -> str:
    if a.is_bottom():
        return "0"
    if a.is_top():
        return "1"
    return "|".join(f"({format_rational(lo)},{format_rational(hi)})" for lo, hi in a.ivs)


def parse_interval_set(text: str) -> IntervalSet:
    """Element literal: `0`, `1`, unions of `(l,r)` by `|`, `!r` point complements."""
    text = text.strip()
    if text == "0":
        return BOT
    if text == "1":
        return TOP
    pairs = []
    for part in text.split("|"):
        part = part.strip()
        if not part:
            raise LiteralParseError("empty union component in interval literal")
        if part.startswith("!"):
            q = parse_rational(part[1:])
            if is_inf(q):
                raise LiteralParseError("point complement needs a rational point")
            pairs.extend([(NEG_INF, q), (q, POS_INF)])
            continue
        if not (part.startswith("(") and part.endswith(")")):
            raise LiteralParseError(f"bad interval {part!r}")
        body = part[1:-1]
        if body.count(",") != 1:
            raise LiteralParseError(f"bad interval {part!r}")
        lo_s, hi_s = body.split(",")
        lo, hi = parse_rational(lo_s), parse_rational(hi_s)
        if not lo < hi:
            raise LiteralParseError(f"interval {part!r} needs lo < hi")
        pairs.append((lo, hi))
    return iv_canon(pairs)
