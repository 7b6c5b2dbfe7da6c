"""Deterministic corpora of ranked posets for cross-checks and the acceptance suite."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import BadParams
from .poset import (RankedPoset, boolean, chain, hat, is_uniform, prism, random_ranked,
                    simplex_boundary, simplicial, sphere_cross_interval_hat, wedge)


@dataclass(frozen=True)
class Entry:
    poset: RankedPoset
    family: str

    @property
    def name(self) -> str:
        return self.poset.name

    @property
    def nonstar(self) -> int:
        return len(self.poset) - 1


def structured_posets() -> list[Entry]:
    out = [Entry(boolean(n), "boolean") for n in range(0, 5)]
    out += [Entry(chain(n), "chain") for n in range(1, 7)]
    out += [Entry(simplex_boundary(n), "simplex_boundary") for n in range(1, 4)]
    out += [Entry(hat(simplex_boundary(n)), "hat") for n in range(1, 4)]
    # prisms over points, edges, triangle boundaries and two disjoint points
    out.append(Entry(prism([[0]], name="prism_point"), "prism"))
    out.append(Entry(prism([[0, 1]], name="prism_edge"), "prism"))
    out.append(Entry(prism(2), "prism"))
    out.append(Entry(prism([[0], [1]], name="prism_two_points"), "prism"))
    out.append(Entry(hat(prism([[0, 1]], name="prism_edge")), "hat"))
    # the cylinder S^1 x I with a top: uniform but not Cohen-Macaulay
    out.append(Entry(hat(prism(2)), "hat"))
    out.append(Entry(hat(prism([[0], [1]], name="prism_two_points")), "hat"))
    # small simplicial complexes and their hats
    complexes = {
        "path3": [[0, 1], [1, 2]],
        "two_edges": [[0, 1], [2, 3]],
        "square": [[0, 1], [1, 2], [2, 3], [3, 0]],
        "two_triangles": [[0, 1, 2], [1, 2, 3]],
        "bowtie": [[0, 1, 2], [0, 3, 4]],
        "disk4": [[0, 1, 2], [0, 2, 3]],
        "triangle_pair_apart": [[0, 1, 2], [3, 4, 5]],
        "annulus": [[0, 1, 3], [1, 3, 4], [1, 2, 4], [2, 4, 5], [2, 0, 5], [0, 5, 3]],
        "moebius": [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]],
    }
    for name, facets in complexes.items():
        k = simplicial(facets, name=name)
        out.append(Entry(k, "simplicial"))
        if k.is_pure():
            out.append(Entry(hat(k), "hat"))
    out.append(Entry(sphere_cross_interval_hat(), "s2xi"))
    # the non-uniform witness with split lower covers
    out.append(Entry(RankedPoset([("x", "u"), ("x", "v"), ("u", "p"), ("v", "q"),
                                  ("p", "*"), ("q", "*")], name="split_lower_covers"),
                     "nonuniform"))
    # uniform, but the open interval (a, b) is two disjoint chains
    out.append(Entry(RankedPoset([("a", "*"), ("a2", "*"), ("x1", "a"), ("x1", "a2"),
                                  ("x2", "a"), ("x2", "a2"), ("x3", "a2"), ("y1", "x1"),
                                  ("y1", "x3"), ("y2", "x2"), ("y2", "x3"), ("b", "y1"),
                                  ("b", "y2")], name="disconnected_interval"), "non_cm"))
    return out


def _random_levels(rng: np.random.Generator, max_nonstar: int, cyclic: bool) -> list[int]:
    depth = int(rng.integers(2, 6))
    levels = [int(rng.integers(1, 6)) for _ in range(depth)]
    if cyclic:
        levels.append(1)
    while sum(levels) > max_nonstar:
        i = int(np.argmax(levels))
        levels[i] -= 1
        levels = [n for n in levels if n > 0]
    return levels


def random_posets(count: int, seed: int = 0, max_nonstar: int = 25,
                  uniform: bool = True) -> list[Entry]:
    """Random uniform ranked posets; about a third are cyclic."""
    rng = np.random.default_rng(seed)
    out = []
    attempt = 0
    while len(out) < count:
        attempt += 1
        if attempt > 50 * count:
            raise BadParams("random corpus generation keeps failing")
        cyclic = rng.random() < 0.35
        levels = _random_levels(rng, max_nonstar, cyclic)
        density = float(rng.choice([0.3, 0.5, 0.7]))
        s = int(rng.integers(0, 2**31 - 1))
        try:
            p = random_ranked(levels, density=density, seed=s, uniform=uniform,
                              pure=cyclic or rng.random() < 0.5, max_attempts=50)
        except BadParams:
            continue
        out.append(Entry(p, "random_cyclic" if p.is_cyclic() else "random"))
    return out


def random_complex_hats(count: int, seed: int = 0, vertices: int = 5,
                        max_nonstar: int = 25) -> list[Entry]:
    """Hats of random strongly connected 2-dimensional complexes.

    Each new triangle shares an edge with an earlier one, so the hat is
    uniform; holes and pinched vertices make many of them not Cohen-Macaulay.
    """
    rng = np.random.default_rng(seed)
    triangles = list(itertools.combinations(range(vertices), 3))
    out = []
    while len(out) < count:
        k = int(rng.integers(3, 9))
        facets = [triangles[int(rng.integers(len(triangles)))]]
        while len(facets) < k:
            grow = [t for t in triangles if t not in facets
                    and any(len(set(t) & set(f)) == 2 for f in facets)]
            facets.append(grow[int(rng.integers(len(grow)))])
        p = hat(simplicial(sorted(facets)), name=f"hat_complex_{len(out)}")
        if len(p) - 1 <= max_nonstar:
            out.append(Entry(p, "hat_complex"))
    return out


def _rank_one(p: RankedPoset, rng: np.random.Generator) -> str:
    atoms = p.by_rank[1]
    return p.names[atoms[int(rng.integers(len(atoms)))]]


def random_wedges(count: int, seed: int = 0, pool: list[Entry] | None = None) -> list[tuple]:
    """``(left, right, wedge)`` triples built from uniform posets of positive rank."""
    rng = np.random.default_rng(seed)
    if pool is None:
        pool = structured_posets()[:20] + random_posets(30, seed=seed + 1, max_nonstar=12)
    pool = [e.poset for e in pool if e.poset.max_rank >= 1 and is_uniform(e.poset)]
    out = []
    for j in range(count):
        a = pool[int(rng.integers(len(pool)))]
        b = pool[int(rng.integers(len(pool)))]
        w = wedge(a, b, _rank_one(a, rng), _rank_one(b, rng), name=f"wedge_{j}")
        out.append((a, b, w))
    return out


def standard_corpus(seed: int = 0, random_count: int = 160, wedge_count: int = 30,
                    complex_count: int = 20) -> list[Entry]:
    """Structured families, random uniform posets, hats of random complexes and
    wedges (over 200 posets)."""
    out = structured_posets()
    out += random_posets(random_count, seed=seed)
    out += random_complex_hats(complex_count, seed=seed + 3)
    out += [Entry(w, "wedge") for _, _, w in random_wedges(wedge_count, seed=seed + 7)]
    out += [Entry(p, "random_nonuniform")
            for p in (random_ranked([3, 3, 2], density=0.4, seed=s, name=f"nonuniform_s{s}")
                      for s in range(12)) if not is_uniform(p)]
    seen, unique = set(), []
    for e in out:
        key = (e.name, e.poset.content_hash())
        if key not in seen:
            seen.add(key)
            unique.append(e)
    return unique


def small(entries: list[Entry], max_nonstar: int) -> list[Entry]:
    return [e for e in entries if e.nonstar <= max_nonstar]


def search_nkd(target, count: int = 4000, seed: int = 0, field=None, rank: int = 5,
               widths: tuple[int, int] = (2, 4)):
    """First uniform cyclic poset of top rank ``rank`` whose NKD equals ``target``.

    Tries up to ``count`` sparse random posets with a single top element and
    returns ``(poset, tried)``; ``poset`` is None when nothing matched.
    """
    from .dual_koszul import nkd
    from .linalg import GF2

    field = field if field is not None else GF2
    rng = np.random.default_rng(seed)
    tried = 0
    while tried < count:
        levels = [int(x) for x in rng.integers(widths[0], widths[1] + 1, size=rank - 1)] + [1]
        density = float(rng.choice([0.3, 0.4, 0.5]))
        s = int(rng.integers(0, 2**31 - 1))
        try:
            p = random_ranked(levels, density=density, seed=s, uniform=True, pure=True,
                              max_attempts=50)
        except BadParams:
            continue
        tried += 1
        if nkd(p, field).series == target:
            return p, tried
    return None, tried
