"""Order complexes of finite posets and their (reduced, relative) cohomology.

A cell of Δ(P) is a strictly increasing chain ``(b0 < ... < bn)`` stored as a
sorted tuple of parent-poset ids (ids increase with rank, so sorting by id
is sorting along the chain).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import BadInterval, NotSubcomplex, ResourceGuard
from .linalg import QQ, Field, complex_cohomology
from .poset import RankedPoset, SubPoset, _bits, subposet

DEFAULT_MAX_CELLS = 2_000_000
_max_cells = DEFAULT_MAX_CELLS


def set_max_cells(limit: int | None) -> int:
    """Change the process-wide cell guard used when ``build`` gets no explicit limit.

    Returns the previous value; ``None`` restores the default.
    """
    global _max_cells
    old = _max_cells
    _max_cells = DEFAULT_MAX_CELLS if limit is None else int(limit)
    return old


def _chains(p: RankedPoset, elements: list[int], universe: int, max_cells: int):
    """All chains in ``elements``, grouped by dimension, each group lexicographic."""
    by_dim: list[list[tuple]] = []
    count = 0
    stack = [((e,), p.above[e] & universe) for e in reversed(elements)]
    while stack:
        cell, ext = stack.pop()
        n = len(cell) - 1
        while len(by_dim) <= n:
            by_dim.append([])
        by_dim[n].append(cell)
        count += 1
        if count > max_cells:
            raise ResourceGuard(f"order complex exceeds {max_cells} cells")
        for y in reversed(_bits(ext)):
            stack.append((cell + (y,), ext & p.above[y]))
    return by_dim


@dataclass(frozen=True, eq=False)
class OrderComplex:
    """Cells by dimension and coboundary matrices ``d[n]: C^n -> C^{n+1}``."""

    poset: RankedPoset
    elements: tuple
    field: Field
    cells: tuple  # cells[n] = tuple of chains of length n+1
    coboundary: tuple

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def cell_counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def euler_reduced_from_cells(self) -> int:
        return -1 + sum((-1) ** n * len(c) for n, c in enumerate(self.cells))

    def cell_index(self, n: int) -> dict:
        return {c: i for i, c in enumerate(self.cells[n])}

    def augmentation(self) -> np.ndarray:
        """``F -> C^0`` sending 1 to the sum of all vertices."""
        n0 = len(self.cells[0]) if self.cells else 0
        a = self.field.zeros(n0, 1)
        a[:, 0] = 1
        return a


def build(p, elements: Iterable[int] | None = None, field: Field = QQ,
          max_cells: int | None = None) -> OrderComplex:
    """Order complex of the subposet ``elements`` of ``p``.

    ``p`` may be a :class:`SubPoset`, in which case its parent and element
    set are used.  The coboundary is assembled as the sum over ``x`` of the
    insertion maps: inserting ``x`` at position ``j`` of a chain contributes
    sign ``(-1)^j``.
    """
    if isinstance(p, SubPoset):
        elements = p.elements
        p = p.parent
    if elements is None:
        elements = range(len(p))
    elems = sorted(set(int(e) for e in elements))
    universe = p.mask(elems)
    cells = _chains(p, elems, universe, _max_cells if max_cells is None else max_cells)
    comparable = {e: (p.below[e] | p.above[e]) & universe for e in elems}
    neg_one = (-1) % field.characteristic if field.characteristic else -1
    maps = []
    for n in range(len(cells) - 1):
        target = {c: i for i, c in enumerate(cells[n + 1])}
        d = field.zeros(len(cells[n + 1]), len(cells[n]))
        for col, cell in enumerate(cells[n]):
            insertable = universe
            for b in cell:
                insertable &= comparable[b]
            for x in _bits(insertable):
                j = 0
                while j < len(cell) and cell[j] < x:
                    j += 1
                new = cell[:j] + (x,) + cell[j:]
                d[target[new], col] = 1 if j % 2 == 0 else neg_one
        maps.append(d)
    for n in range(len(maps) - 1):
        if not field.is_zero(field.dot(maps[n + 1], maps[n])):
            raise AssertionError("order complex coboundary does not square to zero")
    return OrderComplex(p, tuple(elems), field, tuple(tuple(c) for c in cells), tuple(maps))


@dataclass(frozen=True)
class CohomologyProfile:
    """Cohomology dimensions by degree.

    For reduced profiles ``dims`` may contain degree -1 (only for the empty
    complex).  ``euler`` is the (reduced, when ``reduced``) Euler characteristic.
    """

    dims: dict
    reduced: bool
    euler: int

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def nonzero_degrees(self) -> list[int]:
        return sorted(n for n, d in self.dims.items() if d)

    def as_dict(self) -> dict:
        return {"dims": {str(k): v for k, v in sorted(self.dims.items())},
                "reduced": self.reduced, "euler": self.euler}


def _profile(dims_by_degree: dict, reduced: bool) -> CohomologyProfile:
    euler = sum(d if n % 2 == 0 else -d for n, d in dims_by_degree.items())
    return CohomologyProfile(dict(sorted(dims_by_degree.items())), reduced, euler)


def cohomology(c: OrderComplex, with_representatives: bool = False):
    """Unreduced cohomology ``H^n(Δ)``."""
    if not c.cells:
        prof = _profile({}, False)
        return (prof, None) if with_representatives else prof
    res = complex_cohomology(list(c.coboundary), c.field, dims=c.cell_counts(),
                             with_representatives=with_representatives)
    prof = _profile({n: d for n, d in enumerate(res.dims)}, False)
    return (prof, res) if with_representatives else prof


def reduced_cohomology(c: OrderComplex) -> CohomologyProfile:
    """Reduced cohomology via the augmentation ``F -> C^0``.

    The empty complex has ``H̃^{-1} = F``.
    """
    if not c.cells:
        return _profile({-1: 1}, True)
    maps = [c.augmentation()] + list(c.coboundary)
    res = complex_cohomology(maps, c.field, with_representatives=False)
    dims = {n - 1: d for n, d in enumerate(res.dims)}
    return _profile(dims, True)


def relative_cohomology(y: OrderComplex, z: OrderComplex) -> CohomologyProfile:
    """Cohomology of ``C(Y)/C(Z)``: cochains on cells of ``Y`` that are not cells of ``Z``."""
    if y.poset is not z.poset and y.poset != z.poset:
        raise NotSubcomplex("complexes live over different posets")
    if not set(z.elements) <= set(y.elements):
        raise NotSubcomplex("element set of Z is not contained in that of Y")
    if y.field != z.field:
        raise NotSubcomplex("complexes use different fields")
    keep = []
    for n, cells in enumerate(y.cells):
        zc = set(z.cells[n]) if n < len(z.cells) else set()
        keep.append([i for i, cell in enumerate(cells) if cell not in zc])
    if not y.cells:
        return _profile({}, False)
    maps = [y.coboundary[n][np.ix_(keep[n + 1], keep[n])] for n in range(len(y.cells) - 1)]
    res = complex_cohomology(maps, y.field, dims=[len(k) for k in keep],
                             with_representatives=False)
    return _profile({n: d for n, d in enumerate(res.dims)}, False)


def reduced_euler(p: RankedPoset, elements: Iterable[int]) -> int:
    """Reduced Euler characteristic of Δ from chain counts alone."""
    elems = sorted(set(elements))
    universe = p.mask(elems)
    total = -1
    # count chains by a dynamic program over the (id-sorted) elements
    signed = {}
    for e in reversed(elems):
        s = 1
        for y in _bits(p.above[e] & universe):
            s -= signed[y]
        signed[e] = s
    # signed[e] = sum over chains starting at e of (-1)^(length-1)
    total += sum(signed.values())
    return total


def interval_space_profile(p: RankedPoset, a, b, field: Field = QQ) -> CohomologyProfile:
    """Reduced cohomology of Δ((a, b)); raises BadInterval unless a < b."""
    sub = subposet(p, "open", a, b)
    return reduced_cohomology(build(sub, field=field))


def subposet_profile(sub: SubPoset, field: Field = QQ) -> CohomologyProfile:
    return reduced_cohomology(build(sub, field=field))


__all__ = ["OrderComplex", "CohomologyProfile", "build", "set_max_cells", "cohomology", "reduced_cohomology",
           "relative_cohomology", "interval_space_profile", "reduced_euler", "BadInterval"]
