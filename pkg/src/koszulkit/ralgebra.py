"""The quadratic algebra R_Γ of a ranked poset.

Generators are ``r_x`` for ``x != *``; relations are ``r_x r_y = 0`` when
``x`` does not cover ``y`` and ``r_x * sum_{x -> y, y != *} r_y = 0``.  Products
along saturated cover chains ``b1 -> b2 -> ... -> bj`` span R_Γ.  The relations
are homogeneous for the pair (top rank, bottom rank), so the algebra splits
into finite blocks ``R(n, k)`` spanned by chains from rank ``n+1`` down to
rank ``k+1``; each block is computed as its own quotient.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CompositionNotZero, DegreeTooLarge, RankOutOfRange
from .linalg import QQ, ComplexCohomology, Field, Subspace, complex_cohomology, quotient_coordinates, rank
from .order_complex import build, reduced_cohomology
from .poset import RankedPoset, _bits
from .series import TruncatedSeries


@dataclass(frozen=True, eq=False)
class RnkSpace:
    """``R(n, k)`` as span(chain monomials) / relations.

    ``basis`` lists the indices of the monomials that survive as the quotient
    basis (the non-pivot columns of the relation RREF); ``projection`` maps
    monomial coordinates onto that basis.
    """

    n: int
    k: int
    field: Field
    monomials: tuple
    index: dict
    relations: Subspace
    basis: tuple
    projection: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def spanning_dim(self) -> int:
        return len(self.monomials)

    def basis_monomials(self) -> list[tuple]:
        return [self.monomials[i] for i in self.basis]

    def project(self, vec: np.ndarray) -> np.ndarray:
        return self.field.dot(self.projection, vec)


@dataclass(frozen=True)
class InternalCohomologyTable:
    field: Field
    max_rank: int
    dims: dict
    augmented_dims: dict

    def get(self, n: int, k: int, augmented: bool = False) -> int:
        return (self.augmented_dims if augmented else self.dims).get((n, k), 0)

    def nonzero(self, augmented: bool = False) -> list[tuple[int, int, int]]:
        table = self.augmented_dims if augmented else self.dims
        return [(n, k, d) for (n, k), d in sorted(table.items()) if d]

    def rows(self, augmented: bool = False) -> list[list[int]]:
        """``rows[k][n - k] = dim H(n, k)``."""
        top = self.max_rank - 1
        return [[self.get(n, k, augmented) for n in range(k, top + 1)] for k in range(top + 1)]


class RAlgebra:
    """Lazy, cached block data of R_Γ over a fixed field."""

    def __init__(self, poset: RankedPoset, field: Field = QQ):
        self.poset = poset
        self.field = field
        self._monomials: dict = {}
        self._spaces: dict = {}
        self._dmaps: dict = {}
        self._cohomology: dict = {}

    @property
    def max_rank(self) -> int:
        return self.poset.max_rank

    def _check(self, n: int, k: int):
        if not 0 <= k <= n:
            raise RankOutOfRange(f"need 0 <= k <= n, got (n, k) = ({n}, {k})")

    # -- monomials and relations -------------------------------------------------

    def chains_from(self, x: int, bottom_rank: int) -> list[tuple]:
        """Saturated chains starting at ``x`` and ending at rank ``bottom_rank`` (>= 1)."""
        p = self.poset
        out = []
        stack = [(x,)]
        while stack:
            c = stack.pop()
            last = c[-1]
            if p.ranks[last] == bottom_rank:
                out.append(c)
                continue
            for y in reversed(p.lower_ns[last]):
                stack.append(c + (y,))
        return out

    def monomials(self, n: int, k: int) -> tuple:
        """Lexicographically sorted chain monomials with ranks ``n+1`` down to ``k+1``."""
        self._check(n, k)
        key = (n, k)
        if key not in self._monomials:
            p = self.poset
            if n + 1 > p.max_rank:
                mons: list[tuple] = []
            else:
                mons = []
                for x in p.by_rank[n + 1]:
                    mons.extend(self.chains_from(x, k + 1))
            self._monomials[key] = tuple(mons)
        return self._monomials[key]

    def relation_spanners(self, n: int, k: int) -> list[tuple[int, ...]]:
        """Spanning set of the relations inside ``R(n, k)``.

        Each spanner is a tuple of monomial indices, meaning the sum of those
        basis vectors.  A spanner is ``u * r_x * (sum_{x -> y} r_y) * w`` for a
        prefix chain ``u`` ending at ``x`` and a chain ``w`` starting at
        ``h`` two ranks below ``x``; only ``y`` covering ``h`` survive.
        """
        self._check(n, k)
        mons = self.monomials(n, k)
        if n == k or not mons:
            return []
        p = self.poset
        index = {m: i for i, m in enumerate(mons)}
        out = []
        for rx in range(n + 1, k + 1, -1):
            prefixes = self.monomials(n, rx - 1)
            if rx == k + 2:
                for u in prefixes:
                    out.append(tuple(index[u + (y,)] for y in p.lower_ns[u[-1]]))
                continue
            suffix_cache: dict[int, list[tuple]] = {}
            for u in prefixes:
                x = u[-1]
                for h in p.s_set(x, 2):
                    if h not in suffix_cache:
                        suffix_cache[h] = self.chains_from(h, k + 1)
                    ys = [y for y in p.lower_ns[x] if h in p.lower[y]]
                    for w in suffix_cache[h]:
                        out.append(tuple(index[u + (y,) + w] for y in ys))
        return out

    def relation_matrix(self, n: int, k: int) -> np.ndarray:
        spanners = self.relation_spanners(n, k)
        m = self.field.zeros(len(spanners), len(self.monomials(n, k)))
        for r, idx in enumerate(spanners):
            for i in idx:
                m[r, i] = 1
        return m

    def space(self, n: int, k: int) -> RnkSpace:
        self._check(n, k)
        key = (n, k)
        if key not in self._spaces:
            mons = self.monomials(n, k)
            rel = Subspace.span(self.relation_matrix(n, k), len(mons), self.field)
            proj = quotient_coordinates(rel)
            piv = set(rel.pivots)
            basis = tuple(i for i in range(len(mons)) if i not in piv)
            self._spaces[key] = RnkSpace(n, k, self.field, mons,
                                         {m: i for i, m in enumerate(mons)}, rel, basis, proj)
        return self._spaces[key]

    def dim(self, n: int, k: int) -> int:
        if n + 1 > self.max_rank or k < 0 or k > n:
            return 0
        return self.space(n, k).dim

    # -- the differential --------------------------------------------------------

    def d_gamma(self, n: int, k: int) -> np.ndarray:
        """Left multiplication by ``sum_{rk y = n+2} r_y``: ``R(n,k) -> R(n+1,k)``."""
        self._check(n, k)
        key = (n, k)
        if key not in self._dmaps:
            src = self.space(n, k)
            f = self.field
            if n + 2 > self.max_rank:
                m = f.zeros(0, src.dim)
            else:
                tgt = self.space(n + 1, k)
                m = f.zeros(tgt.dim, src.dim)
                upper = self.poset.upper
                for col, i in enumerate(src.basis):
                    mono = src.monomials[i]
                    for y in upper[mono[0]]:
                        m[:, col] += tgt.projection[:, tgt.index[(y,) + mono]]
                m = f.normalize(m)
            self._dmaps[key] = m
        return self._dmaps[key]

    def augmentation(self, k: int) -> np.ndarray:
        """``F -> R(k,k)``, ``1 -> sum_{rk y = k+1} r_y``."""
        sp = self.space(k, k)
        a = self.field.zeros(sp.dim, 1)
        a[:, 0] = 1
        return a

    def complex_maps(self, k: int, augmented: bool = False) -> list[np.ndarray]:
        """Maps ``R(k,k) -> ... -> R(maxrank-1, k)``, optionally preceded by ``F``."""
        maps = [self.d_gamma(n, k) for n in range(k, self.max_rank - 1)]
        if augmented:
            maps = [self.augmentation(k)] + maps
        return maps

    def term_dims(self, k: int, augmented: bool = False) -> list[int]:
        dims = [self.dim(n, k) for n in range(k, self.max_rank)]
        return ([1] + dims) if augmented else dims

    def cohomology(self, k: int, augmented: bool = False) -> ComplexCohomology:
        """Cohomology of ``R(k,k) -> R(k+1,k) -> ...``; position i is ``H(k+i, k)``.

        With ``augmented`` the complex starts with ``F`` and position i is
        ``H̃(k+i-1, k)``.
        """
        key = (k, augmented)
        if key not in self._cohomology:
            maps = self.complex_maps(k, augmented)
            try:
                self._cohomology[key] = complex_cohomology(maps, self.field,
                                                           dims=self.term_dims(k, augmented))
            except CompositionNotZero as exc:
                raise CompositionNotZero(f"d_Γ squared is nonzero for k={k}: {exc}") from None
        return self._cohomology[key]

    def internal_cohomology(self) -> InternalCohomologyTable:
        dims = {}
        aug = {}
        for k in range(self.max_rank):
            plain = self.cohomology(k)
            withf = self.cohomology(k, augmented=True)
            for i, d in enumerate(plain.dims):
                dims[(k + i, k)] = d
            for i, d in enumerate(withf.dims[1:]):
                aug[(k + i, k)] = d
        return InternalCohomologyTable(self.field, self.max_rank, dims, aug)

    # -- Hilbert series and multiplication ---------------------------------------

    def hilbert_series(self) -> TruncatedSeries:
        coeffs = [1] + [0] * self.max_rank
        for n in range(self.max_rank):
            for k in range(n + 1):
                coeffs[n - k + 1] += self.dim(n, k)
        return TruncatedSeries.poly(coeffs)

    def degree_basis(self, m: int) -> list[tuple[int, int, int]]:
        """Quotient basis of the degree-``m`` component as (n, k, basis position) triples."""
        if m == 0:
            return [(-1, -1, 0)]
        out = []
        for top in range(m, self.max_rank + 1):
            n, k = top - 1, top - m
            out.extend((n, k, j) for j in range(self.dim(n, k)))
        return out


@functools.lru_cache(maxsize=128)
def algebra(p: RankedPoset, field: Field = QQ) -> RAlgebra:
    """Shared cached :class:`RAlgebra` for ``(p, field)``."""
    return RAlgebra(p, field)


def relation_spanners(p: RankedPoset, n: int, k: int) -> list[tuple]:
    """Spanners as lists of chain monomials (each spanner is the sum of its monomials)."""
    a = algebra(p, QQ)
    mons = a.monomials(n, k)
    return [tuple(mons[i] for i in s) for s in a.relation_spanners(n, k)]


def rnk_space(p: RankedPoset, n: int, k: int, field: Field = QQ) -> RnkSpace:
    return algebra(p, field).space(n, k)


def d_gamma_matrix(p: RankedPoset, n: int, k: int, field: Field = QQ) -> np.ndarray:
    return algebra(p, field).d_gamma(n, k)


def internal_cohomology(p: RankedPoset, field: Field = QQ) -> InternalCohomologyTable:
    return algebra(p, field).internal_cohomology()


def hilbert_R(p: RankedPoset, field: Field = QQ) -> TruncatedSeries:
    return algebra(p, field).hilbert_series()


def rank_shift_check(p: RankedPoset, k: int, field: Field = QQ) -> bool:
    """Compare ``H_{Γ^{>k}}(n, j)`` with ``H_Γ(n+k, j+k)`` over every admissible ``(n, j)``."""
    if k < 0:
        raise RankOutOfRange("shift must be >= 0")
    big = internal_cohomology(p, field)
    small = internal_cohomology(p.truncation(k), field)
    top = p.max_rank - k
    for j in range(max(top, 0)):
        for n in range(j, top):
            if small.get(n, j) != big.get(n + k, j + k):
                return False
    return True


def truncation_identity_sides(p: RankedPoset, v, k: int, field: Field = QQ) -> tuple[int, int]:
    """``(dim R_{Γ_v}(d, k), dim H̃^{d-k-1}(Δ({y < v : rk y > k})))`` for ``rk v = d+1``."""
    v = p.id(v)
    d = p.ranks[v] - 1
    if v == 0 or not 0 <= k <= d - 1:
        raise RankOutOfRange(f"need 0 <= k <= d-1 for rk(v) = d+1, got k={k}, d={d}")
    lhs = algebra(p.principal(v), field).dim(d, k)
    elems = [y for y in _bits(p.below[v]) if p.ranks[y] > k]
    prof = reduced_cohomology(build(p, elems, field))
    return lhs, prof.dim(d - k - 1)


def truncation_identity_check(p: RankedPoset, v, k: int, field: Field = QQ) -> bool:
    """Whether ``dim r_v R(d-1, k)`` equals the reduced cohomology of the truncated lower interval."""
    lhs, rhs = truncation_identity_sides(p, v, k, field)
    return lhs == rhs


# -- independent oracle: the full tensor-algebra quotient -------------------------

def tensor_quotient_dims(p: RankedPoset, field: Field = QQ, max_degree: int | None = None,
                         max_words: int = 200_000) -> list[int]:
    """Graded dimensions of T(V)/(I) computed on all words, ignoring chain structure.

    Monomial relations are removed first (they kill single words); the
    remaining sum relations are reduced by exact elimination.
    """
    g = len(p) - 1
    if max_degree is None:
        max_degree = p.max_rank + 1
    covered = [set(p.lower_ns[x]) for x in range(len(p))]
    dims = [1]
    for m in range(1, max_degree + 1):
        if g ** m > max_words:
            raise DegreeTooLarge(f"{g}^{m} words exceed the tensor oracle guard {max_words}")
        if m == 1:
            dims.append(g)
            continue
        killed = set()
        sums = []
        for i in range(m - 1):
            for word in itertools.product(range(1, g + 1), repeat=m):
                x, y = word[i], word[i + 1]
                if y not in covered[x]:
                    killed.add(word)
            for x in range(1, g + 1):
                ys = p.lower_ns[x]
                if len(ys) < 1:
                    continue
                for pre in itertools.product(range(1, g + 1), repeat=i):
                    for post in itertools.product(range(1, g + 1), repeat=m - 2 - i):
                        sums.append([pre + (x, y) + post for y in ys])
        alive = {}
        rows = []
        for s in sums:
            support = [w for w in s if w not in killed]
            if support:
                rows.append(support)
                for w in support:
                    alive.setdefault(w, len(alive))
        if rows:
            mat = field.zeros(len(rows), len(alive))
            for r, support in enumerate(rows):
                for w in support:
                    mat[r, alive[w]] = 1
            r = rank(mat, field)
        else:
            r = 0
        dims.append(g ** m - len(killed) - r)
    return dims
