"""Sweep-line machinery for finite unions of intervals over a dense order.

Endpoints may be Fractions, ints (slot indices of a symbolic alphabet) or the
two infinity sentinels.  The carrier is assumed dense and endless: between any
two distinct endpoint values there are carrier points, and every non-infinite
endpoint value is itself a carrier point.  Both hold for the rationals and for
slot indices denoting rationals in a fixed order configuration.

An interval is a 4-tuple (lo, hi, lo_closed, hi_closed); a raw set is a list
of intervals, not necessarily disjoint.  Degenerate points are (v, v, True,
True).  Closed flags at an infinite endpoint are meaningless and get cleared.
"""

from __future__ import annotations


class _Inf:
    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __lt__(self, other):
        if isinstance(other, _Inf):
            return self.sign < other.sign
        return self.sign < 0

    def __gt__(self, other):
        if isinstance(other, _Inf):
            return self.sign > other.sign
        return self.sign > 0

    def __le__(self, other):
        return self == other or self < other

    def __ge__(self, other):
        return self == other or self > other

    def __eq__(self, other):
        return isinstance(other, _Inf) and other.sign == self.sign

    def __hash__(self):
        return hash(("_Inf", self.sign))

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"


NEG_INF = _Inf(-1)
POS_INF = _Inf(1)


def is_inf(v):
    return isinstance(v, _Inf)


def _clip(iv):
    lo, hi, lcl, hcl = iv
    if is_inf(lo):
        lcl = False
    if is_inf(hi):
        hcl = False
    return (lo, hi, lcl, hcl)


def nonempty(iv):
    lo, hi, lcl, hcl = iv
    if lo < hi:
        return True
    if lo == hi:
        return lcl and hcl and not is_inf(lo)
    return False


def _ep_key(v):
    if isinstance(v, _Inf):
        return (v.sign, 0)
    return (0, v)


def _sort_key(iv):
    # closed starts sort first so the sweep always extends from the widest.
    return (_ep_key(iv[0]), not iv[2], _ep_key(iv[1]))


def normalize(raw):
    """Sorted maximal pairwise-separated intervals covering the same points."""
    ivs = sorted((_clip(iv) for iv in raw if nonempty(_clip(iv))), key=_sort_key)
    out = []
    for lo, hi, lcl, hcl in ivs:
        if out:
            plo, phi, plcl, phcl = out[-1]
            # merge on overlap, or on touching endpoints one of which is covered
            if lo < phi or (lo == phi and (phcl or lcl)):
                if hi > phi or (hi == phi and hcl):
                    out[-1] = (plo, hi, plcl, hcl if hi > phi else (hcl or phcl))
                continue
        out.append((lo, hi, lcl, hcl))
    return out


def union(a, b):
    return normalize(list(a) + list(b))


def intersect(a, b):
    out = []
    for la, ha, lca, hca in a:
        for lb, hb, lcb, hcb in b:
            if la > lb:
                lo, lcl = la, lca
            elif lb > la:
                lo, lcl = lb, lcb
            else:
                lo, lcl = la, lca and lcb
            if ha < hb:
                hi, hcl = ha, hca
            elif hb < ha:
                hi, hcl = hb, hcb
            else:
                hi, hcl = ha, hca and hcb
            iv = (lo, hi, lcl, hcl)
            if nonempty(iv):
                out.append(iv)
    return normalize(out)


def complement(a):
    a = normalize(a)
    if not a:
        return [(NEG_INF, POS_INF, False, False)]
    out = []
    first_lo, _, first_lcl, _ = a[0]
    lead = (NEG_INF, first_lo, False, not first_lcl)
    if nonempty(lead):
        out.append(lead)
    for (_, hi, _, hcl), (lo2, _, lcl2, _) in zip(a, a[1:]):
        gap = (hi, lo2, not hcl, not lcl2)
        if nonempty(gap):
            out.append(gap)
    _, last_hi, _, last_hcl = a[-1]
    trail = (last_hi, POS_INF, not last_hcl, False)
    if nonempty(trail):
        out.append(trail)
    return out


def interior(a):
    """Open kernel: normalized pieces lose their endpoints, points vanish."""
    out = []
    for lo, hi, _, _ in normalize(a):
        if lo < hi:
            out.append((lo, hi, False, False))
    return out


def is_empty(a):
    return not any(nonempty(iv) for iv in a)


def subset(a, b):
    return is_empty(intersect(a, complement(b)))


def point_in(v, a):
    for lo, hi, lcl, hcl in a:
        if (lo < v < hi) or (v == lo and lcl) or (v == hi and hcl):
            return True
    return False
