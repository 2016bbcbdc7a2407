"""Hereditarily finite sets at the meta level: frozensets of frozensets.

These serve as concrete keys for the antichain pipeline and as inputs to the
check-set embedding.  A canonical total order (rank, then size, then child
keys) makes every iteration deterministic.
"""

from __future__ import annotations

from .errors import LiteralParseError

EMPTY = frozenset()

_key_cache: dict = {}
_rank_cache: dict = {}


def hf_rank(x: frozenset) -> int:
    r = _rank_cache.get(x)
    if r is None:
        r = 0 if not x else 1 + max(hf_rank(c) for c in x)
        _rank_cache[x] = r
    return r


def hf_key(x: frozenset):
    k = _key_cache.get(x)
    if k is None:
        k = (hf_rank(x), len(x), tuple(sorted(hf_key(c) for c in x)))
        _key_cache[x] = k
    return k


def hf_sorted(xs):
    return sorted(xs, key=hf_key)


def numeral(n: int) -> frozenset:
    x = EMPTY
    for _ in range(n):
        x = frozenset(x | {x})
    return x


def as_numeral(x: frozenset):
    """The n with x = numeral(n), or None."""
    n = len(x)
    return n if x == numeral(n) else None


def kpair(a: frozenset, b: frozenset) -> frozenset:
    """Kuratowski pair {{a},{a,b}}."""
    return frozenset({frozenset({a}), frozenset({a, b})})


def tc(x: frozenset) -> list:
    """Transitive closure {x} together with all hereditary members, sorted."""
    seen = set()
    stack = [x]
    while stack:
        y = stack.pop()
        if y in seen:
            continue
        seen.add(y)
        stack.extend(y)
    return hf_sorted(seen)


def format_hf(x: frozenset) -> str:
    n = as_numeral(x)
    if n is not None:
        return str(n)
    return "{" + ",".join(format_hf(c) for c in hf_sorted(x)) + "}"


def parse_hf(text: str) -> frozenset:
    """HF literal: nested braces of `{}` and decimal von Neumann numerals."""
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse():
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise LiteralParseError("unexpected end of HF literal")
        ch = text[pos]
        if ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            return numeral(int(text[start:pos]))
        if ch != "{":
            raise LiteralParseError(f"unexpected {ch!r} in HF literal")
        pos += 1
        members = []
        skip_ws()
        if pos < len(text) and text[pos] == "}":
            pos += 1
            return EMPTY
        while True:
            members.append(parse())
            skip_ws()
            if pos >= len(text):
                raise LiteralParseError("unterminated HF literal")
            if text[pos] == ",":
                pos += 1
                continue
            if text[pos] == "}":
                pos += 1
                return frozenset(members)
            raise LiteralParseError(f"unexpected {text[pos]!r} in HF literal")

    out = parse()
    skip_ws()
    if pos != len(text):
        raise LiteralParseError(f"trailing input in HF literal: {text[pos:]!r}")
    return out
