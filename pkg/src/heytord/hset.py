"""H-valued sets and the mutually recursive membership/equality semantics.

An HSet is a finite list of (element, label) entries plus optional parametric
family entries; labels live in one fixed Heyting algebra per universe.  Truth
values follow the standard clauses

    [u in v] = join over entries (e,l) of v of  l meet [e = u]
    [u = v]  = meet over entries (e,l) of u of  l imp  [e in v],  both sides

with family entries contributing infinite joins/meets computed symbolically
through interval templates.  Nodes are hash-consed per universe; both truth
functions are memoized on interned ids and reproducible with the memo off.
"""

from __future__ import annotations

from typing import NamedTuple

from . import hf as hfmod
from .errors import DepthExceededError, NotEnumerableError
from .templates import (
    Template,
    eliminate_param,
    rename_param,
    template_op,
)

FORMAL = "q"  # formal parameter name inside stored family templates


class Family(NamedTuple):
    domain: tuple
    elem: "ParamHSet"
    label: object  # algebra element or Template over the formal parameter


class HSet:
    """Interned H-valued set node."""

    __slots__ = ("id", "entries", "families", "rank")

    def __init__(self, id, entries, families, rank):
        self.id = id
        self.entries = entries
        self.families = families
        self.rank = rank

    def __repr__(self):
        return f"<HSet #{self.id} rank {self.rank}>"


class ParamHSet:
    """Interned one-parameter H-set shape used as a family's element template."""

    __slots__ = ("id", "entries", "rank")

    def __init__(self, id, entries, rank):
        self.id = id
        self.entries = entries
        self.rank = rank

    def __repr__(self):
        return f"<ParamHSet #{self.id}>"


class PBound(NamedTuple):
    """A family element template with its parameter opened as a live symbol."""

    ph: ParamHSet
    sym: str
    domain: tuple


def _node_key(n):
    if isinstance(n, HSet):
        return ("h", n.id)
    return ("p", n.ph.id, n.sym, n.domain)


def _node_syms(n):
    if isinstance(n, HSet):
        return ()
    return ((n.sym, n.domain),)


class Universe:
    """One algebra, one hash-cons table, one memo table."""

    def __init__(self, algebra, memo=True):
        self.algebra = algebra
        self.memo_enabled = memo
        self._memo = {}
        self._hs = {}
        self._ph = {}
        self._next_id = 0
        self._embed_cache = {}
        self._numeral_ids = {}
        self.constants = {}
        self.empty = self.make_hset(())
        self._add_memo = {}

    # --- construction -------------------------------------------------------

    def _label_key(self, l):
        if isinstance(l, Template):
            return ("t", l.params, l.cuts, l.table)
        return ("e", l)

    def _label_join(self, a, b):
        if isinstance(a, Template) or isinstance(b, Template):
            return template_op(a, b, "join")
        return self.algebra.join(a, b)

    def _label_is_bottom(self, l):
        if isinstance(l, Template):
            return False  # constants collapse, so a Template is never constant-bottom
        return l == self.algebra.bottom()

    def make_hset(self, entries, families=()) -> HSet:
        merged = {}
        order = []
        for child, lab in entries:
            if self._label_is_bottom(lab):
                continue
            k = child.id
            if k in merged:
                merged[k] = (child, self._label_join(merged[k][1], lab))
            else:
                merged[k] = (child, lab)
                order.append(k)
        ent = tuple(merged[k] for k in sorted(order))
        fmerged = {}
        forder = []
        for fam in families:
            if self._label_is_bottom(fam.label):
                continue
            fk = (fam.domain, fam.elem.id)
            if fk in fmerged:
                old = fmerged[fk]
                fmerged[fk] = Family(fam.domain, fam.elem, self._label_join(old.label, fam.label))
            else:
                fmerged[fk] = fam
                forder.append(fk)
        fams = tuple(fmerged[k] for k in sorted(forder, key=lambda t: (t[1], t[0])))
        key = (
            tuple((c.id, self._label_key(l)) for c, l in ent),
            tuple((f.domain, f.elem.id, self._label_key(f.label)) for f in fams),
        )
        node = self._hs.get(key)
        if node is None:
            rank = 0
            for c, _ in ent:
                rank = max(rank, c.rank + 1)
            for f in fams:
                rank = max(rank, f.elem.rank + 1)
            node = HSet(self._next_id, ent, fams, rank)
            self._next_id += 1
            self._hs[key] = node
        return node

    def make_param_hset(self, entries) -> ParamHSet:
        merged = {}
        order = []
        for child, lab in entries:
            if self._label_is_bottom(lab):
                continue
            k = (0, child.id) if isinstance(child, HSet) else (1, child.id)
            if k in merged:
                merged[k] = (child, self._label_join(merged[k][1], lab))
            else:
                merged[k] = (child, lab)
                order.append(k)
        ent = tuple(merged[k] for k in sorted(order))
        key = tuple(
            ((0, c.id) if isinstance(c, HSet) else (1, c.id), self._label_key(l)) for c, l in ent
        )
        node = self._ph.get(key)
        if node is None:
            rank = 1 + max((c.rank for c, _ in ent), default=0)
            node = ParamHSet(self._next_id, ent, rank)
            self._next_id += 1
            self._ph[key] = node
        return node

    def embed(self, x: frozenset) -> HSet:
        """Check-set embedding of a hereditarily finite set: all labels top."""
        node = self._embed_cache.get(x)
        if node is None:
            top = self.algebra.top()
            node = self.make_hset([(self.embed(c), top) for c in hfmod.hf_sorted(x)])
            self._embed_cache[x] = node
        return node

    def numeral(self, n: int) -> HSet:
        node = self.embed(hfmod.numeral(n))
        self._numeral_ids[node.id] = n
        return node

    def numeral_of(self, u: HSet):
        n = self._numeral_ids.get(u.id)
        if n is not None:
            return n
        if u.families or any(l != self.algebra.top() for _, l in u.entries):
            return None
        cand = len(u.entries)
        if self.numeral(cand) is u:
            return cand
        return None

    def bind_constant(self, name: str, u: HSet):
        self.constants[name] = u

    # --- truth values ---------------------------------------------------------

    def _vop(self, x, y, op):
        if isinstance(x, Template) or isinstance(y, Template):
            return template_op(x, y, op)
        return getattr(self.algebra, op)(x, y)

    def vmeet(self, x, y):
        return self._vop(x, y, "meet")

    def vjoin(self, x, y):
        return self._vop(x, y, "join")

    def vimp(self, x, y):
        return self._vop(x, y, "imp")

    def vneg(self, x):
        return self._vop(x, self.algebra.bottom(), "imp")

    def eliminate(self, val, sym, mode):
        if isinstance(val, Template) and sym in [n for n, _ in val.params]:
            return eliminate_param(val, sym, mode)
        return val

    def _node_entries(self, n):
        if isinstance(n, HSet):
            return n.entries
        out = []
        for child, lab in n.ph.entries:
            if isinstance(child, ParamHSet):
                child = PBound(child, n.sym, n.domain)
            if isinstance(lab, Template):
                lab = rename_param(lab, FORMAL, n.sym)
            out.append((child, lab))
        return out

    def _node_families(self, n):
        return n.families if isinstance(n, HSet) else ()

    def _fresh_sym(self, taken):
        i = 0
        while f"q{i}" in taken:
            i += 1
        if len(taken) + 1 > 2:
            raise DepthExceededError("more than two family parameters would be live")
        return f"q{i}"

    def _fam_quant(self, fam: Family, other, mode: str):
        """Family contribution: 'all' gives meet over imp(label, elem in other),
        'ex' gives join over meet(label, elem = other)."""
        taken = {s for s, _ in _node_syms(other)}
        sym = self._fresh_sym(taken)
        node = PBound(fam.elem, sym, fam.domain)
        lab = fam.label
        if isinstance(lab, Template):
            lab = rename_param(lab, FORMAL, sym)
        if mode == "all":
            inner = self.truth_mem(node, other)
            return self.eliminate(self.vimp(lab, inner), sym, "meet")
        inner = self.truth_eq(node, other)
        return self.eliminate(self.vmeet(lab, inner), sym, "join")

    def truth_eq(self, a, b):
        ka, kb = _node_key(a), _node_key(b)
        if ka == kb:
            return self.algebra.top()
        key = ("eq", min(ka, kb), max(ka, kb))
        if self.memo_enabled:
            hit = self._memo.get(key)
            if hit is not None:
                return hit
        top = self.algebra.top()
        bot = self.algebra.bottom()
        val = top
        for x, other in ((a, b), (b, a)):
            for child, lab in self._node_entries(x):
                if val == bot:
                    break
                val = self.vmeet(val, self.vimp(lab, self.truth_mem(child, other)))
            for fam in self._node_families(x):
                if val == bot:
                    break
                val = self.vmeet(val, self._fam_quant(fam, other, "all"))
        if self.memo_enabled:
            self._memo[key] = val
        return val

    def truth_mem(self, u, v):
        key = ("mem", _node_key(u), _node_key(v))
        if self.memo_enabled:
            hit = self._memo.get(key)
            if hit is not None:
                return hit
        top = self.algebra.top()
        val = self.algebra.bottom()
        for child, lab in self._node_entries(v):
            if val == top:
                break
            val = self.vjoin(val, self.vmeet(lab, self.truth_eq(child, u)))
        for fam in self._node_families(v):
            if val == top:
                break
            val = self.vjoin(val, self._fam_quant(fam, u, "ex"))
        if self.memo_enabled:
            self._memo[key] = val
        return val

    # --- enumeration ------------------------------------------------------------

    def enumerate_hsets(self, rank: int, budget: int = 4000, seed: int = 0):
        """All canonical HSets of rank <= rank over non-bottom labels, exhaustive
        while the level fits the budget, then a seeded sample filling it."""
        import itertools
        import random

        if not self.algebra.finite:
            raise NotEnumerableError("cannot enumerate H-sets over an infinite algebra")
        labels = [l for l in self.algebra.enumerate_elements() if l != self.algebra.bottom()]
        options = [None] + labels
        pool = [self.empty]
        seen = {self.empty.id}
        rng = random.Random(seed)
        for _ in range(rank):
            base = list(pool)
            if len(pool) >= budget:
                break
            total = len(options) ** len(base)
            if total <= budget:
                for assignment in itertools.product(options, repeat=len(base)):
                    u = self.make_hset(
                        [(c, l) for c, l in zip(base, assignment) if l is not None]
                    )
                    if u.id not in seen:
                        seen.add(u.id)
                        pool.append(u)
            else:
                guard = 0
                while len(pool) < budget and guard < budget * 20 + 1000:
                    guard += 1
                    u = self.make_hset(
                        [
                            (c, l)
                            for c in base
                            for l in [options[rng.randrange(len(options))]]
                            if l is not None
                        ]
                    )
                    if u.id not in seen:
                        seen.add(u.id)
                        pool.append(u)
        return pool

    # --- optional canonicalization ----------------------------------------------

    def extensional_merge(self, u: HSet) -> HSet:
        """Merge entries whose elements are provably equal (value top), joining labels."""
        entries = list(u.entries)
        out = []
        while entries:
            child, lab = entries.pop(0)
            rest = []
            for c2, l2 in entries:
                if self.truth_eq(child, c2) == self.algebra.top():
                    lab = self._label_join(lab, l2)
                else:
                    rest.append((c2, l2))
            entries = rest
            out.append((child, lab))
        return self.make_hset(out, u.families)

    # --- formatting ---------------------------------------------------------------

    def format_hset(self, u) -> str:
        if isinstance(u, HSet):
            n = self.numeral_of(u)
            if n is not None:
                return f"#{n}"
            parts = [f"{self.format_hset(c)} @ {self._format_label(l)}" for c, l in u.entries]
            for fam in u.families:
                dom = "QQ" if fam.domain == ("all",) else self._format_dom(fam.domain)
                parts.append(
                    f"fam {FORMAL} in {dom} : {self.format_hset(fam.elem)} @ {self._format_label(fam.label)}"
                )
            return "{" + ", ".join(parts) + "}"
        parts = [f"{self.format_hset(c)} @ {self._format_label(l)}" for c, l in u.entries]
        return "{" + ", ".join(parts) + "}"

    def _format_dom(self, dom):
        from .intervals import format_rational

        return f"({format_rational(dom[1])},{format_rational(dom[2])})"

    def _format_label(self, l) -> str:
        if not isinstance(l, Template):
            return self.algebra.format_element(l)
        from .intervals import format_rational
        from .templates import point_complement_body, template_from_body

        name = l.params[0][0]
        pc = template_from_body(point_complement_body(name), ((name, l.params[0][1]),))
        if l == pc:
            return f"!{FORMAL}"
        for _, body in l.table:
            if any(isinstance(ep, tuple) and ep[0] == "s" for pair in body for ep in pair):

                def fmt(ep):
                    if isinstance(ep, tuple) and ep[0] == "v":
                        return format_rational(ep[1])
                    if isinstance(ep, tuple):
                        return FORMAL
                    return format_rational(ep)

                return "|".join(f"({fmt(lo)},{fmt(hi)})" for lo, hi in body)
        return "<template>"


# --- module-level operation wrappers -------------------------------------------


def embed_check(U: Universe, v: frozenset) -> HSet:
    return U.embed(v)


def truth_mem(U: Universe, u, v):
    return U.truth_mem(u, v)


def truth_eq(U: Universe, u, v):
    return U.truth_eq(u, v)


def enumerate_hsets(U: Universe, rank: int, budget: int = 4000, seed: int = 0):
    return U.enumerate_hsets(rank, budget, seed)
