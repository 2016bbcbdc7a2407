"""Parametric families of interval sets, closed under the lattice operations.

A Template denotes a function from one or two rational parameters to open
subsets of the rationals.  It is stored piecewise by *order configuration*:
the finitely many ways the parameters can sit relative to a fixed skeleton of
rational cut points (at a cut, or inside a gap, ordered against each other
when they share a gap).  Within one configuration every endpoint comparison
is decided, so lattice operations and the infinite meets/joins reduce to the
ordinary sweep over a finite linear order of endpoint symbols.

Infinite meets take the interior of the symbolic intersection; infinite joins
are unions of opens and need no interior step.  Both are computed exactly by
case analysis on where a generic carrier point sits relative to the skeleton
and the surviving parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ivcore
from .errors import ArityError, UnrepresentableJoinError, UnrepresentableMeetError
from .intervals import IntervalSet, iv_canon
from .ivcore import NEG_INF, POS_INF, is_inf

DOM_ALL = ("all",)

_POINT = "$p"  # reserved symbol for the generic carrier point during elimination

_REL_ORD = {None: 0, "lt": 1, "eq": 2, "gt": 3}


def dom_interval(lo: Fraction, hi: Fraction):
    if not lo < hi:
        raise ValueError("parameter domain interval needs lo < hi")
    return ("iv", lo, hi)


def _dom_endpoints(dom):
    return () if dom == DOM_ALL else (dom[1], dom[2])


def _dom_has_value(dom, v) -> bool:
    if dom == DOM_ALL:
        return True
    return dom[1] < v < dom[2]


def _gap_bounds(cuts, g):
    lo = cuts[g - 1] if g > 0 else NEG_INF
    hi = cuts[g] if g < len(cuts) else POS_INF
    return lo, hi


def _gap_in_domain(cuts, g, dom) -> bool:
    if dom == DOM_ALL:
        return True
    lo, hi = _gap_bounds(cuts, g)
    return (not is_inf(lo)) and (not is_inf(hi)) and dom[1] <= lo and hi <= dom[2]


def _placement_options(cuts, dom, prior):
    """Placements of the next parameter given the ones already placed."""
    opts = []
    for i, c in enumerate(cuts):
        if _dom_has_value(dom, c):
            opts.append(("pt", i))
    gap0 = None
    if prior and prior[0][1][0] == "gap":
        gap0 = prior[0][1][1]
    for g in range(len(cuts) + 1):
        if not _gap_in_domain(cuts, g, dom):
            continue
        if gap0 == g:
            opts.extend([("gap", g, "lt"), ("gap", g, "eq"), ("gap", g, "gt")])
        else:
            opts.append(("gap", g, None))
    return opts


def _enum_configs(cuts, params):
    configs = [()]
    placed_lists = [[]]
    for name, dom in params:
        nxt_cfg, nxt_placed = [], []
        for cfg, placed in zip(configs, placed_lists):
            for pl in _placement_options(cuts, dom, placed):
                nxt_cfg.append(cfg + (pl,))
                nxt_placed.append(placed + [(name, pl)])
        configs, placed_lists = nxt_cfg, nxt_placed
    return configs


def _placement_key(pl):
    if pl[0] == "pt":
        return (0, pl[1], 0)
    return (1, pl[1], _REL_ORD[pl[2]])


def _cfg_key(cfg):
    return tuple(_placement_key(pl) for pl in cfg)


# --- arrangements: explicit linear orders of cuts and live symbols ----------


def _build_arrangement(cuts, placed):
    """Slot list for params placed per a config.  Slots are ('c', i, syms) for
    cut i or ('x', g, syms) for a fresh value inside gap g, in increasing order."""
    gapfree = {g: [] for g in range(len(cuts) + 1)}
    cutsyms = {i: set() for i in range(len(cuts))}
    for name, pl in placed:
        if pl[0] == "pt":
            cutsyms[pl[1]].add(name)
        else:
            g, rel = pl[1], pl[2]
            if rel is None or not gapfree[g]:
                gapfree[g].append({name})
            elif rel == "eq":
                gapfree[g][0].add(name)
            elif rel == "lt":
                gapfree[g].insert(0, {name})
            else:
                gapfree[g].append({name})
    slots = []
    for g in range(len(cuts) + 1):
        for s in gapfree[g]:
            slots.append(("x", g, frozenset(s)))
        if g < len(cuts):
            slots.append(("c", g, frozenset(cutsyms[g])))
    return slots


def _slot_rep(slot, cuts):
    if slot[0] == "c":
        return ("v", cuts[slot[1]])
    return ("s", min(slot[2]))


def _ep_pos(slots, cuts, ep):
    if ep is NEG_INF:
        return -1
    if ep is POS_INF:
        return len(slots)
    if ep[0] == "v":
        for i, slot in enumerate(slots):
            if slot[0] == "c" and cuts[slot[1]] == ep[1]:
                return i
        raise KeyError(f"constant {ep[1]} not in skeleton")
    for i, slot in enumerate(slots):
        if ep[1] in slot[2]:
            return i
    raise KeyError(f"symbol {ep[1]} not placed")


def _pos_ep(slots, cuts, pos):
    if pos < 0:
        return NEG_INF
    if pos >= len(slots):
        return POS_INF
    return _slot_rep(slots[pos], cuts)


def _body_raw(slots, cuts, body):
    return [(_ep_pos(slots, cuts, lo), _ep_pos(slots, cuts, hi), False, False) for lo, hi in body]


def _raw_body(slots, cuts, raw):
    return tuple((_pos_ep(slots, cuts, lo), _pos_ep(slots, cuts, hi)) for lo, hi, _, _ in raw)


def _place_new(slots, cuts, dom, name):
    """All placements of a fresh symbol: (new_slots, region) pairs.

    region is ('pt', endpoint) for ties and ('open', lo_ep, hi_ep) for gap
    insertions, expressed over the ORIGINAL slots."""
    out = []
    for idx, slot in enumerate(slots):
        if slot[0] == "c":
            c = cuts[slot[1]]
            if _dom_has_value(dom, c):
                ns = list(slots)
                ns[idx] = ("c", slot[1], slot[2] | {name})
                out.append((ns, ("pt", ("v", c))))
        else:
            if _gap_in_domain(cuts, slot[1], dom):
                ns = list(slots)
                ns[idx] = ("x", slot[1], slot[2] | {name})
                out.append((ns, ("pt", _slot_rep(slot, cuts))))
    # insertion points inside each admissible gap
    for g in range(len(cuts) + 1):
        if not _gap_in_domain(cuts, g, dom):
            continue
        start = 0
        for i, slot in enumerate(slots):
            if slot[0] == "c" and slot[1] == g - 1:
                start = i + 1
        end = len(slots)
        for i, slot in enumerate(slots):
            if slot[0] == "c" and slot[1] == g:
                end = i
                break
        for pos in range(start, end + 1):
            in_gap = all(
                slots[j][0] == "x" and slots[j][1] == g for j in range(start, end)
            )
            assert in_gap
            ns = slots[:pos] + [("x", g, frozenset({name}))] + slots[pos:]
            lo = _pos_ep(slots, cuts, pos - 1)
            hi = _pos_ep(slots, cuts, pos)
            out.append((ns, ("open", lo, hi)))
    return out


def _arrangement_config(slots, params):
    """Recover the configuration of params from an explicit arrangement."""
    cfg = []
    positions = {}
    for i, slot in enumerate(slots):
        for n in slot[2]:
            positions[n] = (i, slot)
    for j, (name, _dom) in enumerate(params):
        i, slot = positions[name]
        if slot[0] == "c":
            cfg.append(("pt", slot[1]))
            continue
        g = slot[1]
        rel = None
        if j == 1:
            i0, slot0 = positions[params[0][0]]
            if slot0[0] == "x" and slot0[1] == g:
                if i == i0:
                    rel = "eq"
                elif i < i0:
                    rel = "lt"
                else:
                    rel = "gt"
        cfg.append(("gap", g, rel))
    return tuple(cfg)


# --- templates ---------------------------------------------------------------


@dataclass(frozen=True)
class Template:
    """Piecewise-uniform family of open interval sets in 1 or 2 parameters."""

    params: tuple  # ((name, domain), ...) in name order
    cuts: tuple  # sorted distinct Fractions; includes all body constants and domain endpoints
    table: tuple  # ((config, body), ...) sorted by config key

    @property
    def arity(self):
        return len(self.params)

    def body_for(self, cfg):
        for c, b in self.table:
            if c == cfg:
                return b
        raise KeyError(cfg)

    def constant_value(self):
        """The IntervalSet this template always equals, or None if genuinely parametric."""
        val = None
        for _, body in self.table:
            if any(isinstance(ep, tuple) and ep[0] == "s" for pair in body for ep in pair):
                return None
            ivs = iv_canon([(ep_val(lo), ep_val(hi)) for lo, hi in body])
            if val is None:
                val = ivs
            elif val != ivs:
                return None
        return val


def ep_val(ep):
    if ep is NEG_INF or ep is POS_INF:
        return ep
    if ep[0] == "v":
        return ep[1]
    raise ValueError("symbolic endpoint has no value")


def _mk(params, cuts, rows):
    if len(params) > 2:
        raise ArityError("templates support at most two parameters")
    return Template(tuple(params), tuple(cuts), tuple(sorted(rows, key=lambda r: _cfg_key(r[0]))))


def _collect_cuts(params, bodies_constants=()):
    vals = set(bodies_constants)
    for _, dom in params:
        vals.update(_dom_endpoints(dom))
    return tuple(sorted(vals))


def _normalize_rows(params, cuts, body_fn):
    rows = []
    for cfg in _enum_configs(cuts, params):
        slots = _build_arrangement(cuts, [(p[0], pl) for p, pl in zip(params, cfg)])
        raw = ivcore.normalize(_body_raw(slots, cuts, body_fn(cfg)))
        assert all(not lcl and not hcl for _, _, lcl, hcl in raw)
        rows.append((cfg, _raw_body(slots, cuts, raw)))
    return rows


def template_from_body(body, params):
    """Build a template from one uniform symbolic body (endpoints are ('v', c),
    ('s', name) or infinities); emptiness and merging are settled per config."""
    consts = [ep[1] for pair in body for ep in pair if isinstance(ep, tuple) and ep[0] == "v"]
    cuts = _collect_cuts(params, consts)
    return _mk(params, cuts, _normalize_rows(params, cuts, lambda cfg: body))


def constant_template(x: IntervalSet, params):
    body = tuple((("v", lo) if not is_inf(lo) else lo, ("v", hi) if not is_inf(hi) else hi) for lo, hi in x.ivs)
    consts = [v for lo, hi in x.ivs for v in (lo, hi) if not is_inf(v)]
    cuts = _collect_cuts(params, consts)
    return _mk(params, cuts, _normalize_rows(params, cuts, lambda cfg: body))


def rename_param(t: Template, old: str, new: str) -> Template:
    params = tuple((new if n == old else n, d) for n, d in t.params)

    def ren(ep):
        if isinstance(ep, tuple) and ep[0] == "s" and ep[1] == old:
            return ("s", new)
        return ep

    rows = [(cfg, tuple((ren(lo), ren(hi)) for lo, hi in body)) for cfg, body in t.table]
    return _mk(params, t.cuts, rows)


def _project_placement(pl, cuts_new, cuts_old):
    """Old-skeleton placement (without rel) for a new-skeleton placement."""
    import bisect

    if pl[0] == "pt":
        c = cuts_new[pl[1]]
        if c in cuts_old:
            return ("pt", cuts_old.index(c)), ("v", c)
        return ("gap", bisect.bisect_left(cuts_old, c), None), ("v", c)
    lo, hi = _gap_bounds(cuts_new, pl[1])
    if is_inf(lo):
        g_old = 0
    else:
        g_old = bisect.bisect_right(cuts_old, lo)
    return ("gap", g_old, None), ("gap", lo, hi)


def _value_order(reg1, reg0):
    """lt/eq/gt of region 1 against region 0 when both are decided."""
    if reg1[0] == "v" and reg0[0] == "v":
        if reg1[1] == reg0[1]:
            return "eq"
        return "lt" if reg1[1] < reg0[1] else "gt"
    if reg1[0] == "v":
        lo, hi = reg0[1], reg0[2]
        return "lt" if reg1[1] <= lo else "gt"
    if reg0[0] == "v":
        lo, hi = reg1[1], reg1[2]
        return "gt" if reg0[1] <= lo else "lt"
    if reg1[1] >= reg0[2]:
        return "gt"
    if reg0[1] >= reg1[2]:
        return "lt"
    return None  # same gap: caller supplies the relation from the finer config


def _rebuild(t: Template, params, cuts):
    """Re-express t over a superset skeleton / parameter list (old params keep
    their names and domains; new params may be added)."""
    old_names = [n for n, _ in t.params]

    def body_fn(cfg):
        pos = {params[i][0]: cfg[i] for i in range(len(params))}
        old_cfg = []
        regions = {}
        for j, name in enumerate(old_names):
            pl, region = _project_placement(pos[name], cuts, list(t.cuts))
            regions[name] = region
            if j == 1 and pl[0] == "gap":
                pl0 = old_cfg[0]
                if pl0[0] == "gap" and pl0[1] == pl[1]:
                    rel = _value_order(regions[name], regions[old_names[0]])
                    if rel is None:
                        new_pl1, new_pl0 = pos[name], pos[old_names[0]]
                        if new_pl1[0] == "gap" and new_pl0[0] == "gap" and new_pl1[1] == new_pl0[1]:
                            rel = new_pl1[2] if new_pl1[2] is not None else "eq"
                        else:
                            rel = "eq"
                    pl = ("gap", pl[1], rel)
            old_cfg.append(pl)
        return t.body_for(tuple(old_cfg))

    return _mk(params, cuts, _normalize_rows(params, cuts, body_fn))


def merge_param_lists(*plists):
    doms = {}
    for pl in plists:
        for n, d in pl:
            if n in doms and doms[n] != d:
                raise ValueError(f"parameter {n} used with two domains")
            doms[n] = d
    return tuple(sorted(doms.items()))


def as_template(x, params):
    if isinstance(x, Template):
        if tuple(x.params) == tuple(params) or not params:
            return x
        cuts = sorted(set(x.cuts) | set(_collect_cuts(params)))
        return _rebuild(x, tuple(params), tuple(cuts))
    return constant_template(x, params)


_RAW_OPS = {
    "meet": lambda a, b: ivcore.intersect(a, b),
    "join": lambda a, b: ivcore.union(a, b),
    "imp": lambda a, b: ivcore.interior(ivcore.union(ivcore.complement(a), b)),
}


def template_op(x, y, opname):
    """Pointwise lattice operation on templates / interval sets; collapses back
    to a plain IntervalSet when the result is constant."""
    px = x.params if isinstance(x, Template) else ()
    py = y.params if isinstance(y, Template) else ()
    params = merge_param_lists(px, py)
    a = as_template(x, params)
    b = as_template(y, params)
    cuts = tuple(sorted(set(a.cuts) | set(b.cuts)))
    a = _rebuild(a, params, cuts) if a.cuts != cuts else a
    b = _rebuild(b, params, cuts) if b.cuts != cuts else b
    op = _RAW_OPS[opname]
    rows = []
    for cfg in _enum_configs(cuts, params):
        slots = _build_arrangement(cuts, [(p[0], pl) for p, pl in zip(params, cfg)])
        ra = _body_raw(slots, cuts, a.body_for(cfg))
        rb = _body_raw(slots, cuts, b.body_for(cfg))
        res = op(ra, rb)
        assert all(not lcl and not hcl for _, _, lcl, hcl in res)
        rows.append((cfg, _raw_body(slots, cuts, res)))
    t = _mk(params, cuts, rows)
    const = t.constant_value()
    return const if const is not None else t


def with_domain(t: Template, name: str, dom) -> Template:
    params = tuple((n, dom if n == name else d) for n, d in t.params)
    cuts = tuple(sorted(set(t.cuts) | set(_dom_endpoints(dom))))
    return _rebuild(t, params, cuts)


def eliminate_param(t: Template, name: str, mode: str):
    """Quantify one parameter away: mode 'meet' is the infinite meet (interior
    of the intersection over the domain), 'join' the infinite join (union)."""
    names = [n for n, _ in t.params]
    if name not in names:
        return t
    bind_dom = dict(t.params)[name]
    rest = tuple(p for p in t.params if p[0] != name)
    cuts = t.cuts
    rows = []
    for cfg_R in _enum_configs(cuts, rest):
        base = _build_arrangement(cuts, [(p[0], pl) for p, pl in zip(rest, cfg_R)])
        accepted = []
        for slots_p, region in _place_new(base, cuts, DOM_ALL, _POINT):
            results = []
            for slots_k, _ in _place_new(slots_p, cuts, bind_dom, name):
                cfg_T = _arrangement_config(slots_k, t.params)
                raw = _body_raw(slots_k, cuts, t.body_for(cfg_T))
                ppos = _ep_pos(slots_k, cuts, ("s", _POINT))
                results.append(ivcore.point_in(ppos, raw))
            assert results, "parameter domain admits no placement"
            ok = all(results) if mode == "meet" else any(results)
            if ok:
                accepted.append(region)
        raw_regions = []
        for region in accepted:
            if region[0] == "pt":
                pos = _ep_pos(base, cuts, region[1])
                raw_regions.append((pos, pos, True, True))
            else:
                raw_regions.append((_ep_pos(base, cuts, region[1]), _ep_pos(base, cuts, region[2]), False, False))
        res = ivcore.normalize(raw_regions)
        if mode == "meet":
            res = ivcore.interior(res)
        else:
            if not all(not lcl and not hcl for _, _, lcl, hcl in res):
                raise UnrepresentableJoinError("family join produced a non-open set")
        rows.append((cfg_R, _raw_body(base, cuts, res)))
    if rest:
        t2 = _mk(rest, cuts, rows)
        const = t2.constant_value()
        return const if const is not None else t2
    body = rows[0][1]
    try:
        return iv_canon([(ep_val(lo), ep_val(hi)) for lo, hi in body])
    except ValueError as exc:  # pragma: no cover - unreachable for grammar templates
        kind = UnrepresentableMeetError if mode == "meet" else UnrepresentableJoinError
        raise kind("family result is not a finite constant union") from exc


def family_meet(t: Template, dom=None) -> IntervalSet:
    if t.arity != 1:
        raise ArityError("family_meet needs an arity-1 template")
    if dom is not None:
        t = with_domain(t, t.params[0][0], dom)
    return eliminate_param(t, t.params[0][0], "meet")


def family_join(t: Template, dom=None) -> IntervalSet:
    if t.arity != 1:
        raise ArityError("family_join needs an arity-1 template")
    if dom is not None:
        t = with_domain(t, t.params[0][0], dom)
    return eliminate_param(t, t.params[0][0], "join")


def template_reduce(t: Template, bind: str, mode: str):
    """Eliminate one parameter of a two-parameter template symbolically."""
    if t.arity != 2:
        raise ArityError("template_reduce needs an arity-2 template")
    if bind not in [n for n, _ in t.params]:
        raise ArityError(f"no parameter named {bind}")
    if mode not in ("meet", "join"):
        raise ValueError("mode must be 'meet' or 'join'")
    out = eliminate_param(t, bind, mode)
    if isinstance(out, IntervalSet):
        remaining = tuple(p for p in t.params if p[0] != bind)
        return constant_template(out, remaining)
    return out


def template_eval(t: Template, values: dict) -> IntervalSet:
    """Instantiate every parameter at a concrete rational."""
    cfg = []
    placed = []
    for j, (name, dom) in enumerate(t.params):
        v = values[name]
        if not _dom_has_value(dom, v):
            raise ValueError(f"value {v} outside domain of {name}")
        if v in t.cuts:
            pl = ("pt", t.cuts.index(v))
        else:
            import bisect

            g = bisect.bisect_left(list(t.cuts), v)
            rel = None
            if j == 1:
                pl0 = placed[0]
                if pl0[0] == "gap" and pl0[1] == g:
                    v0 = values[t.params[0][0]]
                    rel = "eq" if v == v0 else ("lt" if v < v0 else "gt")
            pl = ("gap", g, rel)
        cfg.append(pl)
        placed.append(pl)
    body = t.body_for(tuple(cfg))

    def val(ep):
        if is_inf(ep):
            return ep
        if ep[0] == "v":
            return ep[1]
        return values[ep[1]]

    return iv_canon([(val(lo), val(hi)) for lo, hi in body])


def point_complement_body(name: str):
    return ((NEG_INF, ("s", name)), (("s", name), POS_INF))
