"""Oriented planar diagrams, 4-plats, resolutions and checkerboard data.

Crossing convention
-------------------
A crossing is ``(kind, (e0, e1, e2, e3))`` with the four edge labels listed
counterclockwise.

* ``kind = +1``: the under strand runs e0 -> e2, the over strand e3 -> e1.
* ``kind = -1``: the under strand runs e0 -> e2, the over strand e1 -> e3.
* ``kind = 0`` (singular): strands e0 -> e2 and e3 -> e1, no over/under.

So slot 0 is always an incoming slot and a strand entering at slot ``s``
leaves at slot ``s + 2``.  This is the usual KnotTheory ``X[i,j,k,l]`` layout;
``+1`` is the right-handed crossing.
"""
from __future__ import annotations

import re
from collections import defaultdict
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence

from .errors import (
    CrossingNotFound,
    InvalidCode,
    MalformedDiagram,
    SecondSingularCrossing,
)

__all__ = [
    "TwoBridgeCode",
    "Crossing",
    "PlanarDiagram",
    "LinkClass",
    "GoeritzData",
    "normalize_code",
    "continued_fraction",
    "cf_to_pq",
    "plat_from_cf",
    "plat_diagram",
    "singular_plat_type",
    "trace_components",
    "resolve",
    "top_resolutions",
    "goeritz_data",
    "gl_signature",
    "symmetric_signature",
    "canonical_key",
    "faces",
    "is_alternating_diagram",
    "parse_pd",
    "parse_pd_file",
    "to_pd_text",
    "theta_diagram",
    "unknot_diagram",
    "unlink_diagram",
    "braid_closure",
    "add_twist",
    "remove_kinks",
    "untwist_step",
    "untwist_all",
    "IN_SLOTS",
]

# in-slots by crossing kind
IN_SLOTS = {1: (0, 3), -1: (0, 1), 0: (0, 3)}


class TwoBridgeCode(NamedTuple):
    p: int
    q: int
    cf: tuple


class Crossing(NamedTuple):
    kind: int
    edges: tuple


# ---------------------------------------------------------------------------
# continued fractions

def continued_fraction(p: int, q: int) -> tuple:
    """All-positive expansion of p/q for 0 < q <= p."""
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return tuple(out)


def cf_to_pq(cf: Sequence[int]) -> tuple:
    """(p, q) with p/q = [a1, ..., an]; p >= 0.  The empty expansion is (0, 0)."""
    if not cf:
        return (0, 0)
    num, den = 1, 0
    for a in reversed(cf):
        num, den = a * num + den, num
    if num < 0 or (num == 0 and den < 0):
        num, den = -num, -den
    return (num, den)


def normalize_code(p: int, q: int) -> TwoBridgeCode:
    """Canonical representative of K(p, q) with its positive expansion."""
    p, q = int(p), int(q)
    if p < 0:
        p, q = -p, -q
    if p == 0:
        if q in (0, 1, -1):
            return TwoBridgeCode(0, 0, ())
        raise InvalidCode(f"gcd({p}, {q}) != 1")
    if gcd(p, q) != 1:
        raise InvalidCode(f"gcd({p}, {q}) != 1")
    if p == 1:
        return TwoBridgeCode(1, 0, (1,))
    r = q % p
    qc = min(r, pow(r, -1, p))
    return TwoBridgeCode(p, qc, continued_fraction(p, qc))


# ---------------------------------------------------------------------------
# the diagram type

class PlanarDiagram:
    """Oriented PD diagram with at most one singular crossing.

    ``loops`` counts crossingless unknotted components.
    """

    __slots__ = ("crossings", "loops", "_occ", "_key")

    def __init__(self, crossings, loops: int = 0, validate: bool = True):
        self.crossings = tuple(Crossing(int(k), tuple(int(e) for e in es)) for k, es in crossings)
        self.loops = int(loops)
        self._occ = None
        self._key = None
        if validate:
            self._validate()

    def _validate(self):
        if self.loops < 0:
            raise MalformedDiagram("negative loop count")
        heads, tails = {}, {}
        nsing = 0
        for ci, (kind, es) in enumerate(self.crossings):
            if kind not in IN_SLOTS:
                raise MalformedDiagram(f"crossing {ci}: bad kind {kind}")
            if len(es) != 4:
                raise MalformedDiagram(f"crossing {ci}: needs four edges")
            nsing += kind == 0
            ins = IN_SLOTS[kind]
            for s, e in enumerate(es):
                side = heads if s in ins else tails
                if e in side:
                    raise MalformedDiagram(f"edge {e} is {'incoming' if side is heads else 'outgoing'} twice")
                side[e] = (ci, s)
        if set(heads) != set(tails):
            raise MalformedDiagram("every edge must run from one crossing slot to another")
        if nsing > 1:
            raise SecondSingularCrossing("at most one singular crossing is allowed")

    # basic structure
    @property
    def occurrences(self) -> dict:
        if self._occ is None:
            occ = defaultdict(list)
            for ci, (_, es) in enumerate(self.crossings):
                for s, e in enumerate(es):
                    occ[e].append((ci, s))
            self._occ = dict(occ)
        return self._occ

    def other_end(self, ci: int, s: int) -> tuple:
        e = self.crossings[ci].edges[s]
        a, b = self.occurrences[e]
        return b if a == (ci, s) else a

    def head(self, e: int) -> tuple:
        """(crossing, slot) where edge e enters."""
        for ci, s in self.occurrences[e]:
            if s in IN_SLOTS[self.crossings[ci].kind]:
                return (ci, s)
        raise MalformedDiagram(f"edge {e} has no head")

    @property
    def edges(self) -> list:
        return sorted(self.occurrences)

    def __len__(self):
        return len(self.crossings)

    @property
    def singular_index(self):
        for ci, c in enumerate(self.crossings):
            if c.kind == 0:
                return ci
        return None

    @property
    def is_singular(self) -> bool:
        return self.singular_index is not None

    @property
    def n_plus(self) -> int:
        return sum(1 for c in self.crossings if c.kind == 1)

    @property
    def n_minus(self) -> int:
        return sum(1 for c in self.crossings if c.kind == -1)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def basepoint_arc(self):
        return min(self.occurrences) if self.crossings else None

    def next_edge(self, e: int) -> int:
        ci, s = self.head(e)
        return self.crossings[ci].edges[(s + 2) % 4]

    def trace(self, smooth_singular: bool = False) -> list:
        """Components as lists of edges in traversal order.

        With ``smooth_singular`` the singular crossing is routed along its
        oriented smoothing instead of straight through.
        """
        occ = self.occurrences
        seen = set()
        comps = []
        for start in sorted(occ):
            if start in seen:
                continue
            comp = []
            e = start
            while e not in seen:
                seen.add(e)
                comp.append(e)
                ci, s = self.head(e)
                c = self.crossings[ci]
                if smooth_singular and c.kind == 0:
                    out = 1 if s == 0 else 2
                else:
                    out = (s + 2) % 4
                e = c.edges[out]
            comps.append(comp)
        return comps

    def pieces(self) -> list:
        """Crossing index sets of the connected pieces."""
        parent = list(range(len(self.crossings)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e, ((c1, _), (c2, _)) in self.occurrences.items():
            r1, r2 = find(c1), find(c2)
            if r1 != r2:
                parent[r1] = r2
        groups = defaultdict(list)
        for ci in range(len(self.crossings)):
            groups[find(ci)].append(ci)
        return sorted(groups.values())

    def sub(self, idxs) -> "PlanarDiagram":
        return PlanarDiagram([self.crossings[i] for i in idxs], 0, validate=False)

    def relabel(self, mapping) -> "PlanarDiagram":
        return PlanarDiagram([(k, tuple(mapping[e] for e in es)) for k, es in self.crossings], self.loops)

    def compact(self) -> "PlanarDiagram":
        """Relabel edges 1..E in order of first appearance."""
        mapping = {}
        for _, es in self.crossings:
            for e in es:
                if e not in mapping:
                    mapping[e] = len(mapping) + 1
        return PlanarDiagram([(k, tuple(mapping[e] for e in es)) for k, es in self.crossings],
                             self.loops, validate=False)

    def reversed(self) -> "PlanarDiagram":
        """Reverse the orientation of every component."""
        return PlanarDiagram([(k, (es[2], es[3], es[0], es[1])) for k, es in self.crossings], self.loops)

    def mirror(self) -> "PlanarDiagram":
        """Switch every regular crossing."""
        if self.is_singular:
            raise MalformedDiagram("mirror is only defined for regular diagrams here")
        return PlanarDiagram([_switch(c) for c in self.crossings], self.loops)

    def __eq__(self, other):
        if not isinstance(other, PlanarDiagram):
            return NotImplemented
        return self.crossings == other.crossings and self.loops == other.loops

    def __hash__(self):
        return hash((self.crossings, self.loops))

    def __repr__(self):
        return f"PlanarDiagram({to_pd_text(self)!r})"


def _switch(c: Crossing) -> Crossing:
    k, (i, j, l, m) = c
    if k == 1:
        return Crossing(-1, (m, i, j, l))
    if k == -1:
        return Crossing(1, (j, l, m, i))
    raise MalformedDiagram("cannot switch a singular crossing")


def _make_singular(c: Crossing) -> Crossing:
    k, es = c
    if k == 1:
        return Crossing(0, es)
    if k == -1:
        return Crossing(0, (es[1], es[2], es[3], es[0]))
    raise SecondSingularCrossing("crossing is already singular")


def _desingularize(c: Crossing, sign: int) -> Crossing:
    es = c.edges
    if sign == 1:
        return Crossing(1, es)
    return Crossing(-1, (es[3], es[0], es[1], es[2]))


def _remove_crossing(crossings: list, loops: int, idx: int, pairs) -> tuple:
    """Delete crossing ``idx`` joining its slots in ``pairs``; returns (crossings, loops)."""
    local = list(crossings[idx].edges)
    rest = [list(c.edges) for i, c in enumerate(crossings) if i != idx]
    kinds = [c.kind for i, c in enumerate(crossings) if i != idx]
    for sa, sb in pairs:
        x, y = local[sa], local[sb]
        if x == y:
            loops += 1
            continue
        keep, drop = min(x, y), max(x, y)
        for es in rest:
            for s in range(4):
                if es[s] == drop:
                    es[s] = keep
        for s in range(4):
            if local[s] == drop:
                local[s] = keep
    return [Crossing(k, tuple(es)) for k, es in zip(kinds, rest)], loops


def _smoothing_pairs(kind: int, oriented: bool) -> tuple:
    if kind == -1:
        return ((0, 3), (1, 2)) if oriented else ((0, 1), (3, 2))
    return ((0, 1), (3, 2)) if oriented else ((0, 3), (1, 2))


def resolve(D: PlanarDiagram, crossing_id: int, mode: str) -> PlanarDiagram:
    """Crossing operations.

    ``switch`` flips a regular crossing, ``oriented_smooth`` takes the oriented
    resolution, ``make_singular`` replaces a regular crossing by a singular one,
    ``make_positive``/``make_negative`` turn the singular crossing into L+/L-,
    and ``unoriented_smooth`` takes the other resolution and re-orients.
    """
    if not 0 <= crossing_id < len(D.crossings):
        raise CrossingNotFound(f"no crossing {crossing_id}")
    cs = list(D.crossings)
    c = cs[crossing_id]
    if mode == "switch":
        cs[crossing_id] = _switch(c)
        return PlanarDiagram(cs, D.loops)
    if mode == "make_singular":
        if D.is_singular:
            raise SecondSingularCrossing("diagram already has a singular crossing")
        cs[crossing_id] = _make_singular(c)
        return PlanarDiagram(cs, D.loops)
    if mode in ("make_positive", "make_negative"):
        if c.kind != 0:
            raise MalformedDiagram("crossing is not singular")
        cs[crossing_id] = _desingularize(c, 1 if mode == "make_positive" else -1)
        return PlanarDiagram(cs, D.loops)
    if mode == "oriented_smooth":
        new, loops = _remove_crossing(cs, D.loops, crossing_id, _smoothing_pairs(c.kind, True))
        return PlanarDiagram(new, loops)
    if mode == "unoriented_smooth":
        return _unoriented_smooth(D, crossing_id)
    raise ValueError(f"unknown mode {mode!r}")


def _unoriented_smooth(D: PlanarDiagram, idx: int) -> PlanarDiagram:
    c = D.crossings[idx]
    new, loops = _remove_crossing(list(D.crossings), D.loops, idx, _smoothing_pairs(c.kind, False))
    # re-orient: keep each component's direction at its smallest edge
    unor = []
    hints = {}
    for k, es in new:
        typ = "S" if k == 0 else "X"
        unor.append((typ, list(es)))
    for ci, (k, es) in enumerate(new):
        for s in IN_SLOTS[k]:
            hints.setdefault(es[s], []).append((ci, s))
    return _orient(unor, loops, hints)


def _orient(unor: list, loops: int, hints: dict | None = None, label_rule: bool = False) -> PlanarDiagram:
    """Orient a diagram given unoriented crossings.

    ``unor`` holds ``(typ, labels)`` with ``typ`` in {"X", "S"}; for "X" the
    under strand occupies slots 0 and 2.  ``hints`` maps an edge to the
    (crossing, slot) pairs it may enter; under strands of X crossings whose
    first slot is flagged by ``label_rule=False`` are oriented from the hints.
    """
    occ = defaultdict(list)
    for ci, (_, es) in enumerate(unor):
        for s, e in enumerate(es):
            occ[e].append((ci, s))
    for e, lst in occ.items():
        if len(lst) != 2:
            raise MalformedDiagram(f"edge {e} appears {len(lst)} times")

    def other(ci, s):
        a, b = occ[unor[ci][1][s]]
        return b if a == (ci, s) else a

    entered = [set() for _ in unor]
    done = set()
    comps = []
    slots = [(ci, s) for ci in range(len(unor)) for s in range(4)]
    # group slots into components (unordered)
    comp_of = {}
    for st in slots:
        if st in comp_of:
            continue
        cid = len(comps)
        members = []
        stack = [st]
        while stack:
            x = stack.pop()
            if x in comp_of:
                continue
            comp_of[x] = cid
            members.append(x)
            ci, s = x
            stack.append((ci, (s + 2) % 4))
            stack.append(other(ci, s))
        comps.append(members)
    for cid, members in enumerate(comps):
        start = None
        if hints:
            edges = sorted({unor[ci][1][s] for ci, s in members})
            for e in edges:
                for h in hints.get(e, ()):
                    if h in members:
                        start = h
                        break
                if start:
                    break
        if start is None:
            for ci, s in sorted(members):
                if unor[ci][0] == "X" and s == 0 and not label_rule:
                    start = (ci, s)
                    break
        if start is None and label_rule:
            for ci, s in sorted(members):
                if unor[ci][0] == "X" and s == 0:
                    start = (ci, s)
                    break
            if start is None:
                for ci, s in sorted(members):
                    if unor[ci][0] == "X" and s in (1, 3):
                        es = unor[ci][1]
                        j, l = es[1], es[3]
                        positive = (j - l == 1) or (l - j > 1)
                        start = (ci, 3 if positive else 1)
                        break
        if start is None:
            start = min(members)
        x = start
        while True:
            ci, s = x
            if s in entered[ci]:
                break
            entered[ci].add(s)
            x = other(ci, (s + 2) % 4)
    out = []
    for ci, (typ, es) in enumerate(unor):
        ins = entered[ci]
        if len(ins) != 2:
            raise MalformedDiagram(f"crossing {ci}: inconsistent orientation")
        out.append(_normalize_crossing(typ, list(es), ins))
    return PlanarDiagram(out, loops)


def _normalize_crossing(typ: str, es: list, ins) -> Crossing:
    ins = set(ins)
    if typ == "X":
        if 2 in ins:
            es = es[2:] + es[:2]
            ins = {(s + 2) % 4 for s in ins}
        if 0 not in ins:
            raise MalformedDiagram("under strand enters and leaves at the same end")
        if 3 in ins:
            return Crossing(1, tuple(es))
        if 1 in ins:
            return Crossing(-1, tuple(es))
        raise MalformedDiagram("bad over strand orientation")
    for k in range(4):
        if ins == {k, (k + 1) % 4}:
            r = (k + 1) % 4
            return Crossing(0, tuple(es[(j + r) % 4] for j in range(4)))
    raise MalformedDiagram("singular crossing strands must enter at adjacent slots")


# ---------------------------------------------------------------------------
# 4-plats

def _odd_form(cf: Sequence[int]) -> list:
    cf = list(cf)
    if len(cf) % 2 == 0 and cf:
        last = cf[-1]
        if last in (1, -1):
            cf = cf[:-2] + [cf[-2] + last]
        elif last > 0:
            cf = cf[:-1] + [last - 1, 1]
        else:
            cf = cf[:-1] + [last + 1, -1]
    return cf


def _build_plat(cf: Sequence[int], bit: int = 0, singular_top: bool = False):
    """Returns (diagram, info) for the plat of a (possibly signed) expansion.

    Blocks alternate between the middle pair of strands and the left pair,
    starting in the middle; top and bottom are capped (1,2), (3,4).  The
    component through the top-left strand is oriented downward; ``bit``
    selects the direction of the remaining component.
    """
    gens = []
    for i, a in enumerate(_odd_form(cf)):
        k = 2 if i % 2 == 0 else 1
        h = (1 if a > 0 else -1) * (1 if i % 2 == 0 else -1)
        gens.extend([(k, h)] * abs(a))
    if singular_top:
        if not gens:
            raise MalformedDiagram("no crossing to make singular")
        gens[0] = (gens[0][0], 0)
    m = len(gens)
    if m == 0:
        return unlink_diagram(2), {"type": None}

    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for pos in range(1, 5):
        for lv in range(m + 1):
            find((pos, lv))
    union((1, 0), (2, 0))
    union((3, 0), (4, 0))
    union((1, m), (2, m))
    union((3, m), (4, m))
    for j, (k, _) in enumerate(gens, start=1):
        for pos in range(1, 5):
            if pos not in (k, k + 1):
                union((pos, j - 1), (pos, j))

    entered = [set() for _ in gens]
    visited = set()
    partner = {1: 2, 2: 1, 3: 4, 4: 3}

    def walk(pos, lv, down):
        start = (pos, lv, down)
        hit = False
        state = start
        while True:
            pos, lv, down = state
            visited.add((pos, lv))
            if down:
                if lv == m:
                    state = (partner[pos], m, False)
                else:
                    j = lv + 1
                    k, _ = gens[j - 1]
                    if pos in (k, k + 1):
                        entered[j - 1].add("NW" if pos == k else "NE")
                        hit = True
                        pos = k + 1 if pos == k else k
                    state = (pos, j, True)
            else:
                if lv == 0:
                    state = (partner[pos], 0, True)
                else:
                    j = lv
                    k, _ = gens[j - 1]
                    if pos in (k, k + 1):
                        entered[j - 1].add("SW" if pos == k else "SE")
                        hit = True
                        pos = k + 1 if pos == k else k
                    state = (pos, j - 1, False)
            if state == start:
                return hit

    loops = 0
    if not walk(1, 0, True):
        loops += 1
    for lv in range(m + 1):
        for pos in range(1, 5):
            if (pos, lv) not in visited:
                if not walk(pos, lv, bit == 0):
                    loops += 1

    labels = {}
    unor = []
    ins_all = []
    info = {"type": None}
    for j, (k, h) in enumerate(gens, start=1):
        geo = {"NW": (k, j - 1), "NE": (k + 1, j - 1), "SW": (k, j), "SE": (k + 1, j)}
        order = ["SE", "NE", "NW", "SW"] if h == 1 else ["SW", "SE", "NE", "NW"]
        es = []
        for name in order:
            r = find(geo[name])
            if r not in labels:
                labels[r] = len(labels) + 1
            es.append(labels[r])
        ins = {order.index(name) for name in entered[j - 1]}
        typ = "S" if h == 0 else "X"
        unor.append((typ, es))
        ins_all.append(ins)
        if h == 0:
            info["type"] = "A" if entered[j - 1] in ({"NW", "NE"}, {"SW", "SE"}) else "B"
    crossings = [_normalize_crossing(t, es, ins) for (t, es), ins in zip(unor, ins_all)]
    return PlanarDiagram(crossings, loops), info


def plat_diagram(cf: Sequence[int], bit: int = 0, singular_top: bool = False) -> PlanarDiagram:
    return _build_plat(cf, bit, singular_top)[0]


def plat_from_cf(code, bit: int = 0) -> PlanarDiagram:
    """Alternating plat for a :class:`TwoBridgeCode` (or a bare expansion)."""
    cf = code.cf if isinstance(code, TwoBridgeCode) else tuple(code)
    return plat_diagram(cf, bit)


def singular_plat_type(cf: Sequence[int], bit: int = 0) -> str:
    """'A' when the strands through the singular top crossing run the same
    vertical direction, 'B' when they run opposite ways."""
    return _build_plat(cf, bit, True)[1]["type"]


def top_resolutions(code: TwoBridgeCode, bit: int = 0):
    """The two smoothings of the top crossing of the alternating plat.

    Returns ``(oriented, unoriented, top_sign)`` where the first two are
    normalized codes (the oriented one as a regular code, since for a regular
    crossing the oriented smoothing is again two-bridge).
    """
    if code.p < 2:
        raise InvalidCode("top resolutions need p >= 2")
    cf = _odd_form(code.cf)
    vertical = normalize_code(*cf_to_pq([cf[0] - 1] + cf[1:]))
    horizontal = normalize_code(*cf_to_pq(cf[1:])) if len(cf) > 1 else normalize_code(1, 0)
    D = plat_diagram(cf, bit)
    typ = singular_plat_type(cf, bit)
    top_sign = D.crossings[0].kind
    if typ == "A":
        return vertical, horizontal, top_sign
    return horizontal, vertical, top_sign


# ---------------------------------------------------------------------------
# simple diagrams

def add_twist(D: PlanarDiagram, sign: int) -> PlanarDiagram:
    """Add a crossing of the given sign to the two outgoing strands of the
    singular crossing, next to it (a twist at the singular point)."""
    s = D.singular_index
    if s is None:
        raise MalformedDiagram("diagram has no singular crossing")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    e0, e1, e2, e3 = D.crossings[s].edges
    top = max(D.edges)
    f1, f2 = top + 1, top + 2
    cs = list(D.crossings)
    cs[s] = Crossing(0, (e0, f1, f2, e3))
    if sign == 1:
        cs.append(Crossing(1, (f1, e1, e2, f2)))
    else:
        cs.append(Crossing(-1, (f2, f1, e1, e2)))
    return PlanarDiagram(cs, D.loops)


def _find_kink(D: PlanarDiagram):
    for ci, (k, es) in enumerate(D.crossings):
        if k == 0:
            continue
        for s in range(4):
            if es[s] == es[(s + 1) % 4]:
                return ci, s
    return None


def remove_kinks(D: PlanarDiagram) -> PlanarDiagram:
    """Reidemeister I moves on regular crossings until none are left."""
    while True:
        hit = _find_kink(D)
        if hit is None:
            return D
        ci, s = hit
        cs, loops = _remove_crossing(list(D.crossings), D.loops, ci, (((s + 2) % 4, (s + 3) % 4),))
        D = PlanarDiagram(cs, loops, validate=False)


def _twist_at_singular(D: PlanarDiagram):
    """A regular crossing forming a bigon with the two outgoing (or the two
    incoming) edges of the singular crossing: (index, slot, side)."""
    s = D.singular_index
    e0, e1, e2, e3 = D.crossings[s].edges
    for side, (x, y) in (("out", (e2, e1)), ("in", (e0, e3))):
        if x == y:
            continue
        for ci, (k, es) in enumerate(D.crossings):
            if ci == s:
                continue
            for i in range(4):
                if es[i] == x and es[(i + 1) % 4] == y:
                    return ci, i, side
    return None


def untwist_step(D: PlanarDiagram):
    """Remove kinks away from the singular point, then one twist at it.

    Returns ``(diagram, sign)`` with the sign of the removed crossing, or
    ``(diagram, None)`` when no twist is left.
    """
    D = remove_kinks(D)
    hit = _twist_at_singular(D)
    if hit is None:
        return D, None
    ci, i, side = hit
    s = D.singular_index
    e0, e1, e2, e3 = D.crossings[s].edges
    k, es = D.crossings[ci]
    g1, g2 = es[(i + 2) % 4], es[(i + 3) % 4]
    new_s = (e0, g1, g2, e3) if side == "out" else (g2, e1, e2, g1)
    cs = [Crossing(0, new_s) if j == s else c for j, c in enumerate(D.crossings) if j != ci]
    return remove_kinks(PlanarDiagram(cs, D.loops, validate=False)), k


def untwist_all(D: PlanarDiagram) -> tuple:
    """Apply :func:`untwist_step` until no twist remains; returns the reduced
    diagram and the signs of the removed twists in order."""
    signs = []
    while True:
        D, sign = untwist_step(D)
        if sign is None:
            return D, signs
        signs.append(sign)


def unknot_diagram() -> PlanarDiagram:
    return PlanarDiagram([], 1)


def unlink_diagram(n: int = 2) -> PlanarDiagram:
    return PlanarDiagram([], n)


def theta_diagram() -> PlanarDiagram:
    return PlanarDiagram([(0, (1, 1, 2, 2))])


def braid_closure(word: Sequence[int], strands: int) -> PlanarDiagram:
    """Closure of a braid word; generator ``i`` (1-based) crosses strands i and
    i+1, right-handed for ``+i``.  All strands run downward."""
    cur = list(range(1, strands + 1))
    nxt = strands + 1
    crossings = []
    for g in word:
        i = abs(g) - 1
        nw, ne = cur[i], cur[i + 1]
        sw, se = nxt, nxt + 1
        nxt += 2
        if g > 0:
            crossings.append((1, (nw, sw, se, ne)))
        else:
            crossings.append((-1, (ne, nw, sw, se)))
        cur[i], cur[i + 1] = sw, se
    ren = {cur[k]: k + 1 for k in range(strands)}
    out = [(k, tuple(ren.get(e, e) for e in es)) for k, es in crossings]
    used = {e for _, es in out for e in es}
    loops = sum(1 for k in range(1, strands + 1) if k not in used)
    return PlanarDiagram(out, loops).compact()


# ---------------------------------------------------------------------------
# components, linking, parity

class LinkClass(NamedTuple):
    num_components: int
    i_parity: int
    twice_lk: int | None
    writhe: int
    n_plus: int
    n_minus: int


def _mixed_twice_lk(D: PlanarDiagram, comps: list):
    comp_of = {}
    for cid, comp in enumerate(comps):
        for e in comp:
            comp_of[e] = cid
    total = 0
    for k, es in D.crossings:
        if k == 0:
            continue
        if comp_of[es[0]] != comp_of[es[1]]:
            total += k
    return total


def trace_components(D: PlanarDiagram) -> LinkClass:
    if not D.is_singular:
        comps = D.trace()
        c = len(comps) + D.loops
        tlk = _mixed_twice_lk(D, comps) if c == 2 else None
        return LinkClass(c, (1 + c) % 2, tlk, D.writhe, D.n_plus, D.n_minus)
    straight = D.trace()
    smooth = D.trace(smooth_singular=True)
    c_minus = len(straight) + D.loops
    c_zero = len(smooth) + D.loops
    comps = straight if c_minus >= c_zero else smooth
    c = max(c_minus, c_zero)
    tlk = _mixed_twice_lk(D, comps) if c == 2 else None
    return LinkClass(c, (1 + c_minus) % 2, tlk, D.writhe, D.n_plus, D.n_minus)


def is_alternating_diagram(D: PlanarDiagram) -> bool:
    """Over and under passages alternate along every component."""
    for comp in D.trace():
        seq = []
        for e in comp:
            ci, s = D.head(e)
            kind = D.crossings[ci].kind
            if kind == 0:
                return False
            seq.append(s != 0)  # over passage?
        for x, y in zip(seq, seq[1:] + seq[:1]):
            if x == y:
                return False
    return True


# ---------------------------------------------------------------------------
# faces and checkerboard data

def faces(D: PlanarDiagram) -> list:
    """Faces as lists of corners (c, i); corner i sits between slots i and i+1."""
    seen = set()
    out = []
    for ci in range(len(D.crossings)):
        for i in range(4):
            if (ci, i) in seen:
                continue
            face = []
            x = (ci, i)
            while x not in seen:
                seen.add(x)
                face.append(x)
                c, j = x
                x = D.other_end(c, (j + 1) % 4)
            out.append(face)
    return out


class GoeritzData(NamedTuple):
    matrix: list
    correction: int
    white_faces: list


# sign conventions, fixed by shading independence, i^sigma = phase and the positive trefoil
_ETA_WHITE_13 = 1
_TYPE2_WHEN_MERGED_WHITE = False
_SIGMA_SIGN = 1


def _coloring(D: PlanarDiagram, fs: list) -> dict:
    face_of = {}
    for fi, f in enumerate(fs):
        for corner in f:
            face_of[corner] = fi
    color = {0: 0}
    stack = [0]
    while stack:
        fi = stack.pop()
        for ci, i in fs[fi]:
            for d in range(1, 4):
                g = face_of[(ci, (i + d) % 4)]
                want = color[fi] ^ (d % 2)
                if g in color:
                    if color[g] != want:
                        raise MalformedDiagram("diagram is not checkerboard colorable")
                else:
                    color[g] = want
                    stack.append(g)
    if len(color) != len(fs):
        raise MalformedDiagram("goeritz data needs a connected diagram")
    return {corner: color[fi] for corner, fi in face_of.items()}, face_of


def goeritz_data(D: PlanarDiagram, shade: int = 0) -> GoeritzData:
    """Goeritz matrix on the faces of colour ``shade`` and the correction term."""
    if D.is_singular:
        raise MalformedDiagram("goeritz data needs a regular diagram")
    if not D.crossings:
        return GoeritzData([], 0, [])
    if len(D.pieces()) != 1:
        raise MalformedDiagram("goeritz data needs a connected diagram")
    fs = faces(D)
    if len(fs) != len(D.crossings) + 2:
        raise MalformedDiagram("face count does not match a planar diagram")
    color, face_of = _coloring(D, fs)
    white = sorted({face_of[c] for c, col in color.items() if col == shade})
    index = {f: n for n, f in enumerate(white)}
    size = len(white)
    G = [[0] * size for _ in range(size)]
    correction = 0
    for ci, (kind, _) in enumerate(D.crossings):
        w0 = 0 if color[(ci, 0)] == shade else 1
        eta = _ETA_WHITE_13 if w0 == 1 else -_ETA_WHITE_13
        merged = 1 if kind == 1 else 0
        merged_white = merged == w0
        if merged_white == _TYPE2_WHEN_MERGED_WHITE:
            correction += eta
        a, b = index[face_of[(ci, w0)]], index[face_of[(ci, w0 + 2)]]
        if a != b:
            G[a][b] -= eta
            G[b][a] -= eta
            G[a][a] += eta
            G[b][b] += eta
    reduced = [row[:-1] for row in G[:-1]]
    return GoeritzData(reduced, correction, white)


def symmetric_signature(M) -> int:
    """Signature of a symmetric integer matrix, exactly.

    Eliminates with integer Schur complements: for a pivot ``a`` the matrix
    ``a * (rest - b b^T / a)`` is integral and has the signature of the
    complement times sign(a).  Rows are divided by the gcd of their entries
    pairwise-symmetrically (a positive congruence) to keep numbers small.
    """
    A = [list(map(int, row)) for row in M]
    sig = 0
    flip = 1
    while A:
        n = len(A)
        k = next((i for i in range(n) if A[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace basis vector i by e_i + e_j (or e_i - e_j) to get a nonzero diagonal
            c = 1 if A[i][i] + 2 * A[i][j] + A[j][j] != 0 else -1
            for r in range(n):
                A[i][r] += c * A[j][r]
            for r in range(n):
                A[r][i] += c * A[r][j]
            k = i
        a = A[k][k]
        sig += flip * (1 if a > 0 else -1)
        rows = [r for r in range(n) if r != k]
        B = [[a * A[i][j] - A[i][k] * A[k][j] for j in rows] for i in rows]
        if a < 0:
            flip = -flip
        g = 0
        for row in B:
            for x in row:
                g = gcd(g, x)
        if g > 1:
            B = [[x // g for x in row] for row in B]
        A = B
    return sig


def gl_signature(D: PlanarDiagram, shade: int = 0) -> int:
    """Link signature (positive trefoil = +2) from Goeritz data, summed over pieces."""
    total = 0
    for idxs in D.pieces():
        piece = D.sub(idxs)
        g = goeritz_data(piece, shade)
        total += _SIGMA_SIGN * (symmetric_signature(g.matrix) - g.correction)
    return total


# ---------------------------------------------------------------------------
# canonical keys

def _piece_code(D: PlanarDiagram, idxs: list) -> tuple:
    """Smallest traversal code over all admissible starting edges.

    The first two tokens of a code only depend on the crossing the start edge
    enters, so only starts minimizing them are tried, and a traversal stops as
    soon as it exceeds the best code found so far.
    """
    crossings = D.crossings
    heads = {}
    for ci in idxs:
        k, es = crossings[ci]
        for s in IN_SLOTS[k]:
            heads[es[s]] = (ci, s)
    first = min((-2 - crossings[ci].kind, s) for ci, s in heads.values())
    starts = sorted(e for e, (ci, s) in heads.items() if (-2 - crossings[ci].kind, s) == first)
    best = None
    for start in starts:
        code = _traverse(crossings, heads, start, best)
        if code is not None:
            best = code
    if sum(1 for x in best if -4 < x < 0) != len(idxs):
        raise MalformedDiagram("piece is not connected")
    return tuple(best)


def _traverse(crossings, heads, start, best):
    """Traversal code from ``start``; None once it is larger than ``best``."""
    num = {}
    order = []
    entered = set()
    code = []
    tie = best is not None
    e = start
    while True:
        while True:
            ci, s = heads[e]
            if (ci, s) in entered:
                break
            entered.add((ci, s))
            k = crossings[ci].kind
            if ci not in num:
                num[ci] = len(num)
                order.append(ci)
                code.append(-2 - k)
                if tie:
                    b = best[len(code) - 1]
                    if code[-1] != b:
                        if code[-1] > b:
                            return None
                        tie = False
            code.append(num[ci] * 4 + s)
            if tie:
                b = best[len(code) - 1]
                if code[-1] != b:
                    if code[-1] > b:
                        return None
                    tie = False
            e = crossings[ci].edges[(s + 2) % 4]
        code.append(-9)
        if tie:
            b = best[len(code) - 1]
            if b != -9:
                if -9 > b:
                    return None
                tie = False
        nxt = None
        for cj in order:
            k = crossings[cj].kind
            for s in IN_SLOTS[k]:
                if (cj, s) not in entered:
                    nxt = crossings[cj].edges[s]
                    break
            if nxt is not None:
                break
        if nxt is None:
            break
        e = nxt
    if tie:
        return None
    return code


def canonical_key(D: PlanarDiagram) -> bytes:
    """Relabeling-invariant key: equal for diagrams that differ only by edge names."""
    if D._key is None:
        codes = sorted(_piece_code(D, idxs) for idxs in D.pieces())
        parts = [",".join(map(str, c)) for c in codes]
        D._key = ("L%d|" % D.loops + "|".join(parts)).encode()
    return D._key


# ---------------------------------------------------------------------------
# PD text format

_TOKEN = re.compile(r"([XS])\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]([+-]?)|Loop\[\s*\]")


def parse_pd(text: str) -> PlanarDiagram:
    """Parse one diagram.

    Tokens: ``X[a,b,c,d]`` with ``a`` the incoming under edge and labels
    counterclockwise, optionally followed by ``+`` or ``-`` to give the sign;
    ``S[a,b,c,d]`` for the singular crossing with ``a`` and ``d`` incoming;
    ``Loop[]`` for a crossingless component.  Unsigned crossings are oriented
    from the under strands, falling back to consecutive labels for components
    that never pass under.
    """
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    pos = 0
    signed = []
    unor = []
    loops = 0
    for m in _TOKEN.finditer(text):
        if text[pos:m.start()].strip(" ,;\t\n"):
            raise MalformedDiagram(f"unexpected text {text[pos:m.start()]!r}")
        pos = m.end()
        if m.group(0).startswith("Loop"):
            loops += 1
            continue
        typ = m.group(1)
        es = [int(m.group(i)) for i in range(2, 6)]
        sign = m.group(6)
        unor.append((typ, es))
        signed.append(sign)
    if text[pos:].strip(" ,;\t\n"):
        raise MalformedDiagram(f"unexpected text {text[pos:]!r}")
    if not unor and not loops:
        raise MalformedDiagram("empty diagram")
    if sum(1 for t, _ in unor if t == "S") > 1:
        raise SecondSingularCrossing("at most one singular crossing is allowed")
    if all(s or t == "S" for (t, _), s in zip(unor, signed)):
        cs = []
        for (t, es), s in zip(unor, signed):
            cs.append((0 if t == "S" else (1 if s == "+" else -1), tuple(es)))
        return PlanarDiagram(cs, loops)
    hints = {}
    for ci, ((t, es), s) in enumerate(zip(unor, signed)):
        if t == "S":
            hints.setdefault(es[0], []).append((ci, 0))
            hints.setdefault(es[3], []).append((ci, 3))
        else:
            hints.setdefault(es[0], []).append((ci, 0))
            if s:
                hints.setdefault(es[3 if s == "+" else 1], []).append((ci, 3 if s == "+" else 1))
    D = _orient(unor, loops, hints, label_rule=True)
    for (t, es), s, c in zip(unor, signed, D.crossings):
        if s and c.kind != (1 if s == "+" else -1):
            raise MalformedDiagram("crossing sign disagrees with the orientation")
    return D


def parse_pd_file(path) -> list:
    out = []
    with open(path) as fh:
        for line in fh:
            body = line.split("#", 1)[0].strip()
            if body:
                out.append(parse_pd(body))
    if not out:
        raise MalformedDiagram(f"no diagram in {path}")
    return out


def to_pd_text(D: PlanarDiagram) -> str:
    toks = []
    for k, es in D.crossings:
        body = ",".join(map(str, es))
        toks.append(f"S[{body}]" if k == 0 else f"X[{body}]{'+' if k == 1 else '-'}")
    toks.extend(["Loop[]"] * D.loops)
    return " ".join(toks)
