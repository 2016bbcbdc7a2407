"""Finite posets and their up-set Heyting algebras.

Every finite Heyting algebra arises as the up-closed subsets of a finite
poset; elements are int bitmasks over the poset's element order, so equality
and hashing are exact and the full carrier can be enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ForeignElementError, LiteralParseError, MalformedPosetError


@dataclass(frozen=True)
class Poset:
    """A finite poset given by atom names and a cover relation."""

    elements: tuple
    covers: tuple
    name: str = "poset"

    def __post_init__(self):
        names = set(self.elements)
        if len(names) != len(self.elements):
            raise MalformedPosetError("duplicate element names")
        for lo, hi in self.covers:
            if lo not in names or hi not in names:
                raise MalformedPosetError(f"cover ({lo},{hi}) uses unknown element")

    def leq_masks(self):
        """up[i] = bitmask of all j with element_i <= element_j (reflexive-transitive)."""
        n = len(self.elements)
        idx = {e: i for i, e in enumerate(self.elements)}
        up = [1 << i for i in range(n)]
        for lo, hi in self.covers:
            up[idx[lo]] |= 1 << idx[hi]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                m = acc
                while m:
                    j = (m & -m).bit_length() - 1
                    acc |= up[j]
                    m &= m - 1
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        for i in range(n):
            for j in range(n):
                if i != j and up[i] >> j & 1 and up[j] >> i & 1:
                    raise MalformedPosetError(
                        f"cycle through {self.elements[i]} and {self.elements[j]}"
                    )
        return up


def parse_poset(text: str, name: str = "poset") -> Poset:
    """Poset text format: `elem <name>` and `le <lower> <upper>` lines;
    blank lines and `#` comments ignored."""
    elements, covers = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "elem" and len(parts) == 2:
            elements.append(parts[1])
        elif parts[0] == "le" and len(parts) == 3:
            covers.append((parts[1], parts[2]))
        else:
            raise LiteralParseError(f"poset line {lineno}: cannot parse {line!r}")
    return Poset(tuple(elements), tuple(covers), name=name)


class UpsetAlgebra:
    """Heyting algebra of up-closed subsets of a finite poset, as bitmasks."""

    finite = True

    def __init__(self, poset: Poset):
        self.poset = poset
        self.name = poset.name
        self.up = poset.leq_masks()
        n = len(poset.elements)
        self.full = (1 << n) - 1
        self._carrier = tuple(
            m for m in range(1 << n) if self._is_upset(m)
        )
        self._carrier_set = frozenset(self._carrier)

    def _is_upset(self, mask):
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            if self.up[i] & ~mask:
                return False
            m &= m - 1
        return True

    def bottom(self):
        return 0

    def top(self):
        return self.full

    def meet(self, a, b):
        return a & b

    def join(self, a, b):
        return a | b

    def imp(self, a, b):
        bad = a & ~b & self.full
        out = 0
        for i in range(len(self.poset.elements)):
            if not self.up[i] & bad:
                out |= 1 << i
        return out

    def neg(self, a):
        return self.imp(a, 0)

    def le(self, a, b):
        return a & b == a

    def is_element(self, a):
        return isinstance(a, int) and a in self._carrier_set

    def enumerate_elements(self):
        return list(self._carrier)

    def format_element(self, a):
        return "{" + ",".join(e for i, e in enumerate(self.poset.elements) if a >> i & 1) + "}"

    def parse_element(self, text):
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise LiteralParseError(f"up-set literal must be braced: {text!r}")
        body = text[1:-1].strip()
        mask = 0
        idx = {e: i for i, e in enumerate(self.poset.elements)}
        if body:
            for nm in body.split(","):
                nm = nm.strip()
                if nm not in idx:
                    raise LiteralParseError(f"unknown poset element {nm!r}")
                mask |= 1 << idx[nm]
        if mask not in self._carrier_set:
            raise ForeignElementError(f"{text} is not up-closed in poset {self.name}")
        return mask


def build_upset_algebra(p: Poset) -> UpsetAlgebra:
    return UpsetAlgebra(p)


def ha_imp(algebra, a, b):
    """Relative pseudo-complement with carrier membership checks."""
    for x in (a, b):
        if not algebra.is_element(x):
            raise ForeignElementError(f"{x!r} is not in the carrier of {algebra.name}")
    return algebra.imp(a, b)


def enumerate_elements(algebra):
    return algebra.enumerate_elements()


@dataclass
class LawResult:
    law: str
    passed: bool
    counterexample: tuple | None = None


@dataclass
class ValidationReport:
    algebra: str
    laws: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.laws)

    def summary(self):
        lines = []
        for r in self.laws:
            mark = "pass" if r.passed else f"FAIL at {r.counterexample}"
            lines.append(f"  {r.law}: {mark}")
        return "\n".join(lines)


def validate_algebra(algebra, samples) -> ValidationReport:
    """Check the bounded-lattice laws and residuation over all tuples from samples."""
    rep = ValidationReport(algebra=getattr(algebra, "name", "algebra"))
    meet, join, imp, le = algebra.meet, algebra.join, algebra.imp, algebra.le
    top, bot = algebra.top(), algebra.bottom()

    def law(name, pred, tuples):
        for t in tuples:
            if not pred(*t):
                rep.laws.append(LawResult(name, False, t))
                return
        rep.laws.append(LawResult(name, True))

    pairs = [(a, b) for a in samples for b in samples]
    triples = [(a, b, c) for a in samples for b in samples for c in samples]
    law("meet-commutative", lambda a, b: meet(a, b) == meet(b, a), pairs)
    law("join-commutative", lambda a, b: join(a, b) == join(b, a), pairs)
    law("meet-associative", lambda a, b, c: meet(a, meet(b, c)) == meet(meet(a, b), c), triples)
    law("join-associative", lambda a, b, c: join(a, join(b, c)) == join(join(a, b), c), triples)
    law("absorption-meet", lambda a, b: meet(a, join(a, b)) == a, pairs)
    law("absorption-join", lambda a, b: join(a, meet(a, b)) == a, pairs)
    law("meet-top-identity", lambda a: meet(a, top) == a, [(a,) for a in samples])
    law("join-bottom-identity", lambda a: join(a, bot) == a, [(a,) for a in samples])
    law(
        "residuation",
        lambda a, b, c: le(meet(a, c), b) == le(c, imp(a, b)),
        triples,
    )
    return rep


def zoo() -> dict:
    """The fixed zoo of 8 named posets used throughout the test suites."""
    defs = {
        "chain1": ("a", []),
        "chain2": ("ab", [("a", "b")]),
        "chain3": ("abc", [("a", "b"), ("b", "c")]),
        "chain4": ("abcd", [("a", "b"), ("b", "c"), ("c", "d")]),
        "antichain2": ("ab", []),
        "antichain3": ("abc", []),
        "vee": ("abc", [("a", "b"), ("a", "c")]),
        "diamond": ("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]),
    }
    out = {}
    for name, (els, covers) in defs.items():
        out[name] = Poset(tuple(els), tuple(covers), name=name)
    return out


def poset_file_text(p: Poset) -> str:
    lines = [f"# poset {p.name}"]
    lines += [f"elem {e}" for e in p.elements]
    lines += [f"le {lo} {hi}" for lo, hi in p.covers]
    return "\n".join(lines) + "\n"
