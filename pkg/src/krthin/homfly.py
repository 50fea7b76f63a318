"""HOMFLY polynomials of planar diagrams.

Normalization: ``a P(L-) - a^-1 P(L+) = (q - q^-1) P(L0)`` and P(unknot) = 1.

The engine works internally with Laurent polynomials in ``a`` and
``z = q - q^-1`` (the ``q`` slot of a :class:`LaurentPoly` holds the power of
``z``), which keeps every skein step division-free.  Results are converted to
:class:`RationalInvariant` at the end.
"""
from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile
from collections import defaultdict
from pathlib import Path

from .diagram import (
    IN_SLOTS,
    Crossing,
    PlanarDiagram,
    canonical_key,
    resolve,
)
from .errors import InternalInconsistency, InvalidParameter, MalformedDiagram, ResourceLimit
from .laurent import A, ONE, Q, LaurentPoly, RationalInvariant, Z

__all__ = [
    "HomflyEngine",
    "homfly",
    "homfly_singular",
    "homfly_twist",
    "homfly_untwist",
    "homfly_torus2n",
    "jones",
    "default_engine",
    "simplify",
    "CACHE_ENV",
]

CACHE_ENV = "KRTHIN_CACHE_DIR"
DEFAULT_NODE_BUDGET = 10 ** 6

_ZPOW_CACHE = {0: ONE}


def _zpow(n: int) -> LaurentPoly:
    if n not in _ZPOW_CACHE:
        _ZPOW_CACHE[n] = _zpow(n - 1) * Z
    return _ZPOW_CACHE[n]


def _az(c: int, a: int, z: int) -> LaurentPoly:
    return LaurentPoly({(a, z, 0): c})


# delta = (a - a^-1) / z
_DELTA = LaurentPoly({(1, -1, 0): 1, (-1, -1, 0): -1})


def az_to_rational(p: LaurentPoly) -> RationalInvariant:
    """Substitute z = q - q^-1 into an (a, z) Laurent polynomial."""
    if p.is_zero():
        return RationalInvariant(LaurentPoly(), 0)
    d = max(0, -min(z for _, z, _ in p.terms))
    num = LaurentPoly()
    by_z = defaultdict(dict)
    for (a, z, _), c in p.items():
        by_z[z][(a, 0, 0)] = c
    for z, terms in by_z.items():
        num = num + LaurentPoly(terms) * _zpow(z + d)
    return RationalInvariant(num, d)


# ---------------------------------------------------------------------------
# Reidemeister simplification

def _rm_crossings(cs: list, loops: int, idx: int, pairs) -> tuple:
    local = list(cs[idx][1])
    rest = [[k, list(es)] for i, (k, es) in enumerate(cs) if i != idx]
    for sa, sb in pairs:
        x, y = local[sa], local[sb]
        if x == y:
            loops += 1
            continue
        keep, drop = min(x, y), max(x, y)
        for c in rest:
            es = c[1]
            for s in range(4):
                if es[s] == drop:
                    es[s] = keep
        for s in range(4):
            if local[s] == drop:
                local[s] = keep
    return rest, loops


def _occ(cs):
    occ = defaultdict(list)
    for ci, (_, es) in enumerate(cs):
        for s, e in enumerate(es):
            occ[e].append((ci, s))
    return occ


def _find_r1(cs):
    for ci, (k, es) in enumerate(cs):
        if k == 0:
            continue
        for s in range(4):
            if es[s] == es[(s + 1) % 4]:
                return ci, s
    return None


def _bigons(cs, occ):
    """Yield (c1, i, c2, j): corners of a two-sided face."""
    for c1, (k1, es1) in enumerate(cs):
        for i in range(4):
            e = es1[(i + 1) % 4]
            a, b = occ[e]
            c2, j = b if a == (c1, (i + 1) % 4) else a
            if c2 == c1:
                continue
            f = cs[c2][1][(j + 1) % 4]
            if f != es1[i]:
                continue
            a, b = occ[f]
            back = b if a == (c2, (j + 1) % 4) else a
            if back == (c1, i):
                yield c1, i, c2, j


def simplify(cs: list, loops: int) -> tuple:
    """Remove Reidemeister I kinks and non-alternating bigons (RII) repeatedly.

    ``cs`` is a list of ``[kind, [e0, e1, e2, e3]]``; the singular crossing is
    never touched.
    """
    cs = [[k, list(es)] for k, es in cs]
    changed = True
    while changed and cs:
        changed = False
        r1 = _find_r1(cs)
        if r1 is not None:
            ci, s = r1
            cs, loops = _rm_crossings(cs, loops, ci, (((s + 2) % 4, (s + 3) % 4),))
            changed = True
            continue
        occ = _occ(cs)
        for c1, i, c2, j in _bigons(cs, occ):
            if cs[c1][0] == 0 or cs[c2][0] == 0:
                continue
            if (i + 1) % 2 == j % 2:
                # the bigon edge is over (or under) at both ends
                first, second = (c1, c2) if c1 > c2 else (c2, c1)
                cs, loops = _rm_crossings(cs, loops, first, ((0, 2), (1, 3)))
                cs, loops = _rm_crossings(cs, loops, second, ((0, 2), (1, 3)))
                changed = True
                break
    return cs, loops


def _pieces(cs):
    parent = list(range(len(cs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, lst in _occ(cs).items():
        (c1, _), (c2, _) = lst
        r1, r2 = find(c1), find(c2)
        if r1 != r2:
            parent[r1] = r2
    groups = defaultdict(list)
    for ci in range(len(cs)):
        groups[find(ci)].append(ci)
    return [[cs[i] for i in g] for g in sorted(groups.values())]


# ---------------------------------------------------------------------------
# the engine

class HomflyEngine:
    """Memoized skein-tree evaluator.

    ``node_budget`` bounds the number of skein expansions per top-level call;
    ``cache_dir`` (or the environment variable named by ``CACHE_ENV``) enables
    a content-addressed on-disk cache of final results.
    """

    def __init__(self, node_budget: int = DEFAULT_NODE_BUDGET, cache_dir=None):
        self.node_budget = node_budget
        if cache_dir is None:
            cache_dir = os.environ.get(CACHE_ENV) or None
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._memo = {}
        self._results = {}
        self._exact = {}
        self._nodes = 0
        self.stats = {"nodes": 0, "memo_hits": 0, "disk_hits": 0}

    # public API
    def homfly(self, D: PlanarDiagram) -> RationalInvariant:
        if D.is_singular:
            raise MalformedDiagram("use homfly_singular for singular diagrams")
        exact = (D.crossings, D.loops)
        hit = self._exact.get(exact)
        if hit is not None:
            return hit
        key = canonical_key(D)
        hit = self._results.get(key)
        if hit is not None:
            self._exact[exact] = hit
            return hit
        hit = self._disk_get(key)
        if hit is not None:
            self._results[key] = hit
            return hit
        self._nodes = 0
        limit = sys.getrecursionlimit()
        need = 4 * len(D.crossings) + 1000
        if limit < need:
            sys.setrecursionlimit(need)
        P = az_to_rational(self._eval([[k, list(es)] for k, es in D.crossings], D.loops))
        self._results[key] = P
        self._exact[exact] = P
        self._disk_put(key, P)
        return P

    def homfly_singular(self, D: PlanarDiagram) -> RationalInvariant:
        s = D.singular_index
        if s is None:
            raise MalformedDiagram("diagram has no singular crossing")
        p0 = self.homfly(resolve(D, s, "oriented_smooth"))
        pm = self.homfly(resolve(D, s, "make_negative"))
        pp = self.homfly(resolve(D, s, "make_positive"))
        qi = RationalInvariant(Q ** -1)
        first = RationalInvariant(Q) * p0 - RationalInvariant(A) * pm
        second = qi * p0 - RationalInvariant(A ** -1) * pp
        if first != second:
            raise InternalInconsistency("the two singular HOMFLY expressions disagree")
        return first

    def invariant(self, D: PlanarDiagram) -> RationalInvariant:
        return self.homfly_singular(D) if D.is_singular else self.homfly(D)

    # on-disk cache
    def _path(self, key: bytes):
        return self.cache_dir / (hashlib.sha256(key).hexdigest() + ".json")

    def _disk_get(self, key: bytes):
        if self.cache_dir is None:
            return None
        path = self._path(key)
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except (OSError, ValueError):
            return None
        if obj.get("key") != key.decode():
            return None
        self.stats["disk_hits"] += 1
        return RationalInvariant.from_json_obj(obj["homfly"])

    def _disk_put(self, key: bytes, P: RationalInvariant):
        if self.cache_dir is None:
            return
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        if path.exists():
            return
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"key": key.decode(), "homfly": P.to_json_obj()}, fh, sort_keys=True)
        os.replace(tmp, path)

    # recursion
    def _eval(self, cs: list, loops: int) -> LaurentPoly:
        cs, loops = simplify(cs, loops)
        pieces = _pieces(cs) if cs else []
        count = len(pieces) + loops
        if count == 0:
            raise MalformedDiagram("empty diagram")
        result = _DELTA ** (count - 1) if count > 1 else ONE
        for piece in pieces:
            result = result * self._eval_piece(piece)
        return result

    def _eval_piece(self, cs: list) -> LaurentPoly:
        D = PlanarDiagram([(k, tuple(es)) for k, es in cs], 0, validate=False)
        key = canonical_key(D)
        hit = self._memo.get(key)
        if hit is not None:
            self.stats["memo_hits"] += 1
            return hit
        self._nodes += 1
        self.stats["nodes"] += 1
        if self._nodes > self.node_budget:
            raise ResourceLimit(f"skein tree exceeded {self.node_budget} nodes")
        choice = _choose_crossing(cs)
        if choice is None:
            ncomp = len(D.trace())
            value = _DELTA ** (ncomp - 1) if ncomp > 1 else ONE
        else:
            k, es = cs[choice]
            switched = [list(c) for c in cs]
            sw = Crossing(k, tuple(es))
            from .diagram import _switch
            new = _switch(sw)
            switched[choice] = [new.kind, list(new.edges)]
            smoothed, loops = _rm_crossings(cs, 0, choice, ((0, 1), (3, 2)) if k == 1 else ((0, 3), (1, 2)))
            ps = self._eval(switched, 0)
            p0 = self._eval(smoothed, loops)
            if k == 1:
                value = _az(1, 2, 0) * ps - _az(1, 1, 1) * p0
            else:
                value = _az(1, -2, 0) * ps + _az(1, -1, 1) * p0
        self._memo[key] = value
        return value


def _choose_crossing(cs: list):
    """Crossing to switch: one side of an alternating bigon if there is one,
    otherwise the first crossing met from below in a descending traversal.
    ``None`` means the diagram is descending (an unlink)."""
    occ = _occ(cs)
    for c1, i, c2, j in _bigons(cs, occ):
        if (i + 1) % 2 != j % 2:
            return c1
    heads = {}
    for ci, (k, es) in enumerate(cs):
        for s in IN_SLOTS[k]:
            heads[es[s]] = (ci, s)
    seen_edges = set()
    visited = set()
    for start in sorted(heads):
        if start in seen_edges:
            continue
        e = start
        while e not in seen_edges:
            seen_edges.add(e)
            ci, s = heads[e]
            if ci not in visited:
                if s == 0:
                    return ci
                visited.add(ci)
            e = cs[ci][1][(s + 2) % 4]
    return None


# ---------------------------------------------------------------------------
# module-level helpers

_DEFAULT = None


def default_engine() -> HomflyEngine:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = HomflyEngine()
    return _DEFAULT


def homfly(D: PlanarDiagram, engine: HomflyEngine | None = None) -> RationalInvariant:
    return (engine or default_engine()).homfly(D)


def homfly_singular(D: PlanarDiagram, engine: HomflyEngine | None = None) -> RationalInvariant:
    return (engine or default_engine()).homfly_singular(D)


def homfly_twist(P: RationalInvariant) -> RationalInvariant:
    """HOMFLY after adding one negative twist at the singular point."""
    return RationalInvariant(-(A ** -1) * Q ** -1) * P


def homfly_untwist(P: RationalInvariant) -> RationalInvariant:
    """Inverse of :func:`homfly_twist` (adds a positive twist)."""
    return RationalInvariant(-A * Q) * P


def homfly_torus2n(n: int) -> LaurentPoly:
    """Closed form for the positive (2, n) torus knot."""
    if not isinstance(n, int) or n < 1 or n % 2 == 0:
        raise InvalidParameter("n must be an odd integer >= 1")
    s1 = LaurentPoly({(0, 4 * i, 0): 1 for i in range((n - 1) // 2 + 1)})
    s2 = LaurentPoly({(0, 4 * i, 0): 1 for i in range((n - 3) // 2 + 1)}) if n >= 3 else LaurentPoly()
    return (A * Q ** -1) ** (n - 1) * (s1 - A ** 2 * Q ** 2 * s2)


def jones(P: RationalInvariant) -> RationalInvariant:
    """Substitute a = q^2."""
    P = RationalInvariant._promote(P)
    return RationalInvariant(P.num.map_exponents(lambda a, q, t: (0, q + 2 * a, t)), P.dpow)
