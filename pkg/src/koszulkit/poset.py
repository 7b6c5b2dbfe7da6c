"""Finite ranked posets: parsing, validation, rank data, subposets, wedges, generators.

Elements are interned to integer ids ordered by ``(rank, name)``; the
distinguished minimum ``*`` is always id 0.  Order relations are stored as
Python-int bitmasks (``below[x]`` has bit ``y`` set iff ``y < x``), which keeps
interval and chain enumeration cheap.
"""

from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (BadInterval, BadParams, DanglingElement, NoUniqueMinimum,
                     NotRanked, ParseError, RankNotOne, RankOutOfRange)

STAR = "*"
_NAME_RE = re.compile(r"^(?:[A-Za-z0-9_]+|\*)$")
_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class RankedPoset:
    """A finite ranked poset with unique minimum ``*``.

    Build one with :meth:`from_covers` or :func:`parse`; the constructor
    validates everything (unique minimum, reachability, rank consistency).
    """

    def __init__(self, covers: Iterable[tuple[str, str]], elements: Iterable[str] = (),
                 name: str | None = None):
        pairs = sorted({(str(u), str(l)) for u, l in covers})
        names = {STAR} | {str(e) for e in elements}
        for u, l in pairs:
            names.add(u)
            names.add(l)
        for n in names:
            if not _NAME_RE.match(n):
                raise ParseError(f"invalid element name {n!r}")
        lower_of: dict[str, set[str]] = {n: set() for n in names}
        for u, l in pairs:
            if u == l:
                raise NotRanked(f"{u} cannot cover itself")
            lower_of[u].add(l)
        if lower_of[STAR]:
            raise NoUniqueMinimum("'*' must be the minimum but covers "
                                  + ", ".join(sorted(lower_of[STAR])))
        minimal = sorted(n for n in names if not lower_of[n])
        if minimal != [STAR]:
            raise NoUniqueMinimum("minimal elements: " + ", ".join(minimal))

        # Ranks by repeated relaxation from the bottom; anything left over sits on a cycle.
        rank: dict[str, int] = {STAR: 0}
        pending = set(names) - {STAR}
        while pending:
            ready = [n for n in pending if all(l in rank for l in lower_of[n])]
            if not ready:
                break
            for n in ready:
                lr = {rank[l] for l in lower_of[n]}
                if len(lr) != 1:
                    detail = ", ".join(f"{l}:{rank[l]}" for l in sorted(lower_of[n]))
                    raise NotRanked(f"lower covers of {n} have different ranks ({detail})")
                rank[n] = lr.pop() + 1
                pending.discard(n)
        if pending:
            # elements on or above a cycle
            reach = {STAR}
            changed = True
            while changed:
                changed = False
                for n in names:
                    if n not in reach and lower_of[n] & reach:
                        reach.add(n)
                        changed = True
            dangling = sorted(pending - reach)
            if dangling:
                raise DanglingElement("no path to '*' from " + ", ".join(dangling))
            raise NotRanked("cover relation has a cycle through " + ", ".join(sorted(pending)))

        order = sorted(names, key=lambda n: (rank[n], n != STAR, n))
        self.name = name
        self.names: tuple[str, ...] = tuple(order)
        self.index: dict[str, int] = {n: i for i, n in enumerate(order)}
        self.ranks: tuple[int, ...] = tuple(rank[n] for n in order)
        self.lower: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(self.index[l] for l in lower_of[n])) for n in order)
        upper: list[list[int]] = [[] for _ in order]
        for x, ls in enumerate(self.lower):
            for l in ls:
                upper[l].append(x)
        self.upper: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(u)) for u in upper)
        below = [0] * len(order)
        for x in range(len(order)):
            m = 0
            for l in self.lower[x]:
                m |= below[l] | (1 << l)
            below[x] = m
        above = [0] * len(order)
        for x in range(len(order) - 1, -1, -1):
            m = 0
            for u in self.upper[x]:
                m |= above[u] | (1 << u)
            above[x] = m
        self.below: tuple[int, ...] = tuple(below)
        self.above: tuple[int, ...] = tuple(above)
        self.max_rank: int = max(self.ranks)
        by_rank: list[list[int]] = [[] for _ in range(self.max_rank + 1)]
        for x, r in enumerate(self.ranks):
            by_rank[r].append(x)
        self.by_rank: tuple[tuple[int, ...], ...] = tuple(tuple(b) for b in by_rank)
        # lower covers other than the star: these index the sums r_x(1)
        self.lower_ns: tuple[tuple[int, ...], ...] = tuple(
            tuple(l for l in ls if l != 0) for ls in self.lower)

    # -- construction helpers ---------------------------------------------------

    @classmethod
    def from_covers(cls, covers, elements=(), name=None) -> "RankedPoset":
        return cls(covers, elements, name)

    # -- basic queries ----------------------------------------------------------------

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<RankedPoset{label}: {len(self)} elements, max rank {self.max_rank}>"

    def id(self, x) -> int:
        """Element id from a name or an id."""
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            if 0 <= x < len(self.names):
                return int(x)
            raise KeyError(f"no element with id {x}")
        try:
            return self.index[str(x)]
        except KeyError:
            raise KeyError(f"no element named {x!r}") from None

    def rank(self, x) -> int:
        return self.ranks[self.id(x)]

    def lt(self, a, b) -> bool:
        return bool(self.below[self.id(b)] >> self.id(a) & 1)

    def leq(self, a, b) -> bool:
        a, b = self.id(a), self.id(b)
        return a == b or bool(self.below[b] >> a & 1)

    def covers(self) -> list[tuple[int, int]]:
        return [(u, l) for u in range(len(self)) for l in self.lower[u]]

    def cover_names(self) -> list[tuple[str, str]]:
        return [(self.names[u], self.names[l]) for u, l in self.covers()]

    @property
    def nonstar(self) -> range:
        return range(1, len(self.names))

    def maximal(self) -> list[int]:
        return [x for x in range(len(self)) if not self.upper[x]]

    def s_set(self, x, k: int) -> tuple[int, ...]:
        """Ids of ``{y <= x : rk(y) = rk(x) - k}``."""
        x = self.id(x)
        rx = self.ranks[x]
        if not 0 <= k <= rx:
            raise RankOutOfRange(f"k={k} outside 0..{rx} for {self.names[x]}")
        if k == 0:
            return (x,)
        target = rx - k
        return tuple(y for y in _bits(self.below[x]) if self.ranks[y] == target)

    def elements_below(self, x, strict: bool = True) -> list[int]:
        x = self.id(x)
        m = self.below[x] | (0 if strict else 1 << x)
        return _bits(m)

    def mask(self, elements: Iterable[int]) -> int:
        m = 0
        for e in elements:
            m |= 1 << e
        return m

    # -- serialization -----------------------------------------------------------

    def to_text(self, with_header: bool = True) -> str:
        lines = []
        if with_header and self.name:
            lines.append(f"poset {self.name}")
        rows = sorted(((self.ranks[u], self.names[u], self.names[l]) for u, l in self.covers()))
        lines.extend(f"{u} > {l}" for _, u, l in rows)
        return "\n".join(lines) + "\n"

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_text(with_header=False).encode()).hexdigest()

    def _key(self):
        return (self.names, self.lower)

    def __eq__(self, other):
        return isinstance(other, RankedPoset) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def relabel(self, name: str | None) -> "RankedPoset":
        return RankedPoset(self.cover_names(), self.names, name)

    # -- structural predicates -------------------------------------------------------

    def rank_profile(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.by_rank)

    def is_cyclic(self) -> bool:
        return len(self.maximal()) == 1

    def is_pure(self) -> bool:
        return len({self.ranks[x] for x in self.maximal()}) == 1

    def top(self) -> int:
        m = self.maximal()
        if len(m) != 1:
            raise BadParams(f"{self.name or 'poset'} has {len(m)} maximal elements")
        return m[0]

    # -- derived posets -----------------------------------------------------------------

    def subposet(self, kind: str, *params) -> "SubPoset":
        return subposet(self, kind, *params)

    def principal(self, x) -> "RankedPoset":
        """The cyclic poset ``[*, x]``."""
        return subposet(self, "principal", x).ranked()

    def truncation(self, k: int) -> "RankedPoset":
        """``{y : rk(y) > k}`` plus a new minimum, ranks shifted down by ``k``."""
        return subposet(self, "truncation", k).ranked()

    def without(self, x) -> "RankedPoset":
        """Delete a maximal element."""
        x = self.id(x)
        if x == 0 or self.upper[x]:
            raise BadParams(f"{self.names[x]} is not a maximal non-star element")
        keep = [e for e in range(len(self)) if e != x]
        return _induced(self, keep, bottom=0, name=self.name and f"{self.name}-{self.names[x]}")


def _induced(p: RankedPoset, elements: Sequence[int], bottom: int, name=None) -> RankedPoset:
    """Induced subposet on ``elements`` whose minimum is ``bottom`` (renamed to ``*``)."""
    keep = set(elements)
    rename = {e: (STAR if e == bottom else p.names[e]) for e in keep}
    covers = [(rename[u], rename[l]) for u in keep for l in p.lower[u] if l in keep]
    return RankedPoset(covers, rename.values(), name)


def _truncated(p: RankedPoset, k: int, name=None) -> RankedPoset:
    covers = []
    elems = [STAR]
    for x in range(1, len(p)):
        r = p.ranks[x]
        if r <= k:
            continue
        elems.append(p.names[x])
        if r == k + 1:
            covers.append((p.names[x], STAR))
        else:
            covers.extend((p.names[x], p.names[l]) for l in p.lower[x])
    return RankedPoset(covers, elems, name)


@dataclass(frozen=True, eq=False)
class SubPoset:
    """An element subset of a parent poset with the inherited order.

    ``kind`` is one of ``principal`` (``[*,x]``), ``closed`` (``[a,b]``, with
    ``a`` as the new minimum), ``open`` (``(a,b)``), ``truncation``
    (``Γ^{>k}``) or ``slice`` (``Γ_{a,i}``).  The first three carrying a minimum
    convert to :class:`RankedPoset` via :meth:`ranked`.
    """

    parent: RankedPoset
    elements: tuple
    kind: str
    params: tuple

    def __len__(self):
        return len(self.elements)

    @property
    def names(self) -> list[str]:
        return [self.parent.names[e] for e in self.elements]

    @property
    def mask(self) -> int:
        return self.parent.mask(self.elements)

    def ranked(self) -> RankedPoset:
        p = self.parent
        if self.kind == "principal":
            (x,) = self.params
            return _induced(p, self.elements, 0, p.name and f"{p.name}_{p.names[x]}")
        if self.kind == "closed":
            a, b = self.params
            return _induced(p, self.elements, a,
                            p.name and f"{p.name}[{p.names[a]},{p.names[b]}]")
        if self.kind == "truncation":
            (k,) = self.params
            return _truncated(p, k, p.name and f"{p.name}>{k}")
        raise BadParams(f"a {self.kind} subposet has no minimum")

    def rank_in_subposet(self, e: int) -> int:
        if self.kind == "truncation":
            return 0 if e == 0 else self.parent.ranks[e] - self.params[0]
        if self.kind == "closed":
            return self.parent.ranks[e] - self.parent.ranks[self.params[0]]
        return self.parent.ranks[e]


def subposet(p: RankedPoset, kind: str, *params) -> SubPoset:
    """Extract a subposet.

    kinds and parameters: ``principal x``; ``closed a b``; ``open a b``;
    ``truncation k``; ``slice a i``.
    """
    if kind == "principal":
        (x,) = params
        x = p.id(x)
        return SubPoset(p, tuple(_bits(p.below[x] | 1 << x)), kind, (x,))
    if kind in ("closed", "open"):
        a, b = (p.id(v) for v in params)
        if kind == "open" and not p.lt(a, b):
            raise BadInterval(f"({p.names[a]},{p.names[b]}) needs {p.names[a]} < {p.names[b]}")
        if kind == "closed" and not p.leq(a, b):
            raise BadInterval(f"[{p.names[a]},{p.names[b]}] needs {p.names[a]} <= {p.names[b]}")
        inner = p.below[b] & p.above[a]
        if kind == "closed":
            inner |= (1 << a) | (1 << b)
        return SubPoset(p, tuple(_bits(inner)), kind, (a, b))
    if kind == "truncation":
        (k,) = params
        if k < 0:
            raise RankOutOfRange(f"truncation level must be >= 0, got {k}")
        elems = [0] + [x for x in range(1, len(p)) if p.ranks[x] > k]
        return SubPoset(p, tuple(elems), kind, (k,))
    if kind == "slice":
        a, i = params
        a = p.id(a)
        ra = p.ranks[a]
        if not 1 <= i <= ra:
            raise BadInterval(f"slice level {i} outside 1..{ra} for {p.names[a]}")
        elems = [w for w in _bits(p.below[a]) if w != 0 and ra - p.ranks[w] <= i - 1]
        return SubPoset(p, tuple(elems), kind, (a, i))
    raise BadParams(f"unknown subposet kind {kind!r}")


# -- uniformity and connectivity ---------------------------------------------------

@dataclass(frozen=True)
class UniformityVerdict:
    uniform: bool
    witness: str | None = None
    classes: tuple = ()

    def __bool__(self):
        return self.uniform


def _classes(p: RankedPoset, x: int) -> list[list[int]]:
    """Classes of S_x(1) under the transitive closure of sharing a lower cover."""
    covers = list(p.lower[x])
    parent = {c: c for c in covers}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    owner: dict[int, int] = {}
    for c in covers:
        for l in p.lower[c]:
            if l in owner:
                ra, rb = find(owner[l]), find(c)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            else:
                owner[l] = c
    groups: dict[int, list[int]] = {}
    for c in covers:
        groups.setdefault(find(c), []).append(c)
    return sorted(groups.values())


def uniformity_classes(p: RankedPoset, x) -> list[list[str]]:
    x = p.id(x)
    return [[p.names[c] for c in g] for g in _classes(p, x)]


def is_uniform(p: RankedPoset) -> UniformityVerdict:
    for x in range(1, len(p)):
        groups = _classes(p, x)
        if len(groups) > 1:
            return UniformityVerdict(False, p.names[x],
                                     tuple(tuple(p.names[c] for c in g) for g in groups))
    return UniformityVerdict(True)


def is_cyclic(p: RankedPoset) -> bool:
    return p.is_cyclic()


def is_pure(p: RankedPoset) -> bool:
    return p.is_pure()


def comparability_components(p, elements: Iterable[int] | None = None) -> int:
    """Connected components of the comparability graph on ``elements``.

    Accepts a :class:`SubPoset` or a poset plus an id list.
    """
    if isinstance(p, SubPoset):
        elements = p.elements
        p = p.parent
    if elements is None:
        elements = range(len(p))
    elements = list(elements)
    universe = p.mask(elements)
    seen = 0
    count = 0
    for e in elements:
        if seen >> e & 1:
            continue
        count += 1
        frontier = 1 << e
        seen |= frontier
        while frontier:
            nxt = 0
            for y in _bits(frontier):
                nxt |= (p.below[y] | p.above[y]) & universe
            frontier = nxt & ~seen
            seen |= frontier
    return count


# -- wedge ------------------------------------------------------------------------------

def wedge(g: RankedPoset, o: RankedPoset, v, v2, name: str | None = None) -> RankedPoset:
    """Glue ``g`` and ``o`` along their minima and along rank-1 elements ``v``, ``v2``.

    Names of ``o`` are kept unless they clash with names of ``g``, in which
    case the clashing names get ``_1`` (in ``g``) and ``_2`` (in ``o``).
    The glued element keeps the name of ``v``.
    """
    vi, wi = g.id(v), o.id(v2)
    if g.ranks[vi] != 1:
        raise RankNotOne(f"{g.names[vi]} has rank {g.ranks[vi]}, expected 1")
    if o.ranks[wi] != 1:
        raise RankNotOne(f"{o.names[wi]} has rank {o.ranks[wi]}, expected 1")
    g_names = set(g.names[1:])
    o_names = {n for i, n in enumerate(o.names) if i not in (0, wi)}
    clash = (g_names & o_names) | ({g.names[vi]} & o_names)
    taken = set(g_names | o_names)

    def fresh(base, suffix):
        cand = base + suffix
        while cand in taken:
            cand += "_"
        taken.add(cand)
        return cand

    gmap = {0: STAR}
    for i in range(1, len(g)):
        n = g.names[i]
        gmap[i] = fresh(n, "_1") if n in clash else n
    omap = {0: STAR, wi: gmap[vi]}
    for i in range(1, len(o)):
        if i == wi:
            continue
        n = o.names[i]
        omap[i] = fresh(n, "_2") if n in clash else n
    covers = [(gmap[u], gmap[l]) for u, l in g.covers()]
    covers += [(omap[u], omap[l]) for u, l in o.covers()]
    elems = list(gmap.values()) + list(omap.values())
    if name is None and g.name and o.name:
        name = f"{g.name}_v_{o.name}"
    return RankedPoset(covers, elems, name)


# -- generators ---------------------------------------------------------------------------

def _simplex_name(vertices: Sequence) -> str:
    if all(isinstance(v, (int, np.integer)) and 0 <= v < 26 for v in vertices):
        return "".join(_LETTERS[v] for v in sorted(vertices))
    return "s" + "_".join(str(v) for v in sorted(vertices, key=str))


def _faces_of(facets) -> list[tuple]:
    """All nonempty faces of the simplicial complex with the given facets."""
    faces = set()
    for f in facets:
        f = tuple(sorted(set(f)))
        for r in range(1, len(f) + 1):
            faces.update(itertools.combinations(f, r))
    return sorted(faces, key=lambda s: (len(s), s))


def simplicial(facets, name: str | None = None) -> RankedPoset:
    """Face poset of a simplicial complex, with ``*`` as the empty face."""
    faces = _faces_of(facets)
    if not faces:
        return RankedPoset([], name=name)
    covers = []
    for s in faces:
        if len(s) == 1:
            covers.append((_simplex_name(s), STAR))
        else:
            for i in range(len(s)):
                covers.append((_simplex_name(s), _simplex_name(s[:i] + s[i + 1:])))
    return RankedPoset(covers, name=name)


def chain(n: int) -> RankedPoset:
    if n < 0:
        raise BadParams("chain length must be >= 0")
    names = [STAR] + [f"c{i}" for i in range(1, n + 1)]
    return RankedPoset(list(zip(names[1:], names[:-1])), names, f"chain{n}")


def boolean(n: int) -> RankedPoset:
    if not 0 <= n <= 26:
        raise BadParams("boolean lattice size must be in 0..26")
    covers = []
    for r in range(1, n + 1):
        for s in itertools.combinations(range(n), r):
            upper = _simplex_name(s)
            for i in range(r):
                t = s[:i] + s[i + 1:]
                covers.append((upper, _simplex_name(t) if t else STAR))
    return RankedPoset(covers, name=f"boolean{n}")


def simplex_boundary(n: int) -> RankedPoset:
    """Face poset of the boundary of the n-simplex (faces of size 1..n)."""
    if not 1 <= n <= 25:
        raise BadParams("simplex_boundary needs 1 <= n <= 25")
    facets = list(itertools.combinations(range(n + 1), n))
    return simplicial(facets, f"simplex_boundary{n}")


def prism(base, name: str | None = None) -> RankedPoset:
    """Cell poset of ``K x [0,1]`` for a simplicial complex ``K``.

    ``base`` is an int n (meaning the boundary of the n-simplex) or a list
    of facets.  Cells are ``s0``, ``s1`` (copies of a simplex ``s`` at the two
    ends) and ``sI`` (``s x [0,1]``, one rank higher).
    """
    if isinstance(base, (int, np.integer)):
        if not 1 <= base <= 25:
            raise BadParams("prism over a simplex boundary needs 1 <= n <= 25")
        facets = list(itertools.combinations(range(base + 1), base))
        name = name or f"prism{base}"
    else:
        facets = [tuple(f) for f in base]
        if not facets:
            raise BadParams("prism needs a nonempty simplicial complex")
        name = name or "prism"
    faces = _faces_of(facets)
    covers = []
    for s in faces:
        sn = _simplex_name(s)
        subs = [s[:i] + s[i + 1:] for i in range(len(s))] if len(s) > 1 else []
        for end in ("0", "1"):
            if subs:
                covers.extend((sn + end, _simplex_name(t) + end) for t in subs)
            else:
                covers.append((sn + end, STAR))
        covers.append((sn + "I", sn + "0"))
        covers.append((sn + "I", sn + "1"))
        covers.extend((sn + "I", _simplex_name(t) + "I") for t in subs)
    return RankedPoset(covers, name=name)


def hat(p: RankedPoset, top: str = "X", name: str | None = None) -> RankedPoset:
    """Adjoin a new maximum covering every maximal element of a pure poset."""
    if not p.is_pure():
        raise BadParams("hat needs a pure poset")
    if top in p.index:
        raise BadParams(f"element name {top!r} already used")
    covers = p.cover_names() + [(top, p.names[m]) for m in p.maximal()]
    return RankedPoset(covers, p.names, name or (p.name and f"hat_{p.name}"))


def sphere_cross_interval_hat() -> RankedPoset:
    """``hat(prism(simplex_boundary 3))``: 44 elements, top ``X`` of rank 5."""
    return hat(prism(3), name="s2xi_hat")


def random_ranked(levels: Sequence[int], density: float = 0.5, seed: int = 0,
                  uniform: bool = False, pure: bool = False,
                  max_attempts: int = 1000, name: str | None = None) -> RankedPoset:
    """Random ranked poset with ``levels[r-1]`` elements of rank ``r``.

    Each element picks its lower covers independently with probability
    ``density`` (at least one is always kept).  ``pure`` attaches every
    element left without an upper cover to a random element one rank up, so a
    final level of size 1 gives a cyclic poset.  ``uniform`` resamples
    elements whose lower covers split into several classes, restarting the
    whole poset when that keeps failing.
    """
    levels = [int(n) for n in levels]
    if not levels or any(n < 1 for n in levels):
        raise BadParams("levels must be a nonempty list of positive sizes")
    if not 0.0 < density <= 1.0:
        raise BadParams("density must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    names = [[f"v{r + 1}_{i}" for i in range(n)] for r, n in enumerate(levels)]

    def split(lower_sets: dict, covers: Sequence[str]) -> bool:
        owner: dict[str, int] = {}
        parent = list(range(len(covers)))

        def find(i):
            while parent[i] != i:
                i = parent[i]
            return i
        for i, c in enumerate(covers):
            for l in lower_sets[c]:
                if l in owner:
                    parent[find(i)] = find(owner[l])
                else:
                    owner[l] = i
        return len({find(i) for i in range(len(covers))}) > 1

    for _ in range(max_attempts):
        lower_sets: dict[str, list[str]] = {n: [STAR] for n in names[0]}
        ok = True
        for r in range(1, len(levels)):
            below = names[r - 1]
            chosen: dict[str, list[str]] = {}
            for n in names[r]:
                for _try in range(20):
                    pick = [b for b in below if rng.random() < density]
                    if not pick:
                        pick = [below[int(rng.integers(len(below)))]]
                    if not uniform or not split(lower_sets, pick):
                        break
                else:
                    pick = [below[int(rng.integers(len(below)))]]
                chosen[n] = pick
            if pure:
                covered = {b for v in chosen.values() for b in v}
                for b in below:
                    if b not in covered:
                        host = names[r][int(rng.integers(len(names[r])))]
                        chosen[host] = sorted(set(chosen[host]) | {b})
                if uniform and any(split(lower_sets, v) for v in chosen.values()):
                    ok = False
                    break
            for n, v in chosen.items():
                lower_sets[n] = sorted(v)
        if not ok:
            continue
        covers = [(u, l) for u, ls in lower_sets.items() for l in ls]
        p = RankedPoset(covers, name=name or f"random_{'_'.join(map(str, levels))}_s{seed}")
        if uniform and not is_uniform(p):
            continue
        return p
    raise BadParams(f"no poset with the requested properties after {max_attempts} attempts")


GENERATOR_KINDS = ("chain", "boolean", "simplex_boundary", "prism", "hat",
                   "sphere_cross_interval_hat", "random_ranked", "simplicial")


def generate(kind: str, *params, seed: int | None = None, **options) -> RankedPoset:
    """Dispatch to a named generator.

    ``hat`` takes a poset (or another generator spec as a tuple such as
    ``("prism", 2)``); ``random_ranked`` takes a level list.
    """
    try:
        if kind == "chain":
            return chain(int(params[0]))
        if kind == "boolean":
            return boolean(int(params[0]))
        if kind == "simplex_boundary":
            return simplex_boundary(int(params[0]))
        if kind == "prism":
            return prism(params[0])
        if kind == "simplicial":
            return simplicial(params[0], options.get("name"))
        if kind == "hat":
            base = params[0]
            if not isinstance(base, RankedPoset):
                base = generate(*base)
            return hat(base)
        if kind == "sphere_cross_interval_hat":
            return sphere_cross_interval_hat()
        if kind == "random_ranked":
            return random_ranked(params[0], seed=0 if seed is None else seed, **options)
    except IndexError:
        raise BadParams(f"missing parameters for generator {kind!r}") from None
    except (TypeError, ValueError) as exc:
        raise BadParams(f"bad parameters for generator {kind!r}: {exc}") from None
    raise BadParams(f"unknown generator kind {kind!r}; choose from {', '.join(GENERATOR_KINDS)}")


# -- text format ------------------------------------------------------------------------------

_LINE_RE = re.compile(r"^\s*(\S+)\s*>\s*(\S+)\s*$")


def parse(text: str) -> RankedPoset:
    """Parse the ``U > L`` cover format (``#`` comments, optional ``poset NAME``)."""
    name = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("poset ") or line == "poset":
            parts = line.split()
            if len(parts) != 2 or name is not None or covers:
                raise ParseError(f"line {lineno}: header must be 'poset NAME' before any cover")
            name = parts[1]
            continue
        m = _LINE_RE.match(line)
        if not m:
            raise ParseError(f"line {lineno}: expected 'U > L', got {raw.strip()!r}")
        u, l = m.groups()
        for n in (u, l):
            if not _NAME_RE.match(n):
                raise ParseError(f"line {lineno}: invalid element name {n!r}")
        covers.append((u, l))
    return RankedPoset(covers, name=name)


def read_poset(path) -> RankedPoset:
    with open(path, encoding="utf-8") as fh:
        p = parse(fh.read())
    if p.name is None:
        from pathlib import Path
        p.name = Path(path).stem
    return p
