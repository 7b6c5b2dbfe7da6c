"""Ext_R(F, F) from a minimal graded free resolution of the trivial module.

The resolution is built one internal degree at a time.  In degree ``t`` the
new generators of ``P_s`` are chosen as kernel vectors of ``P_{s-1} -> P_{s-2}``
that are independent of the image of the generators already present, so the
resolution is minimal and ``dim Ext^{s,t}`` is the number of generators of
``P_s`` in degree ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundsExceeded
from .linalg import QQ, Field, extend_independent, kernel_vectors, rank
from .poset import RankedPoset
from .ralgebra import algebra

DEFAULT_MAX_DIM = 4000
DEFAULT_MAX_ENTRIES = 100_000_000
_CHUNK_ENTRIES = 4_000_000


class GradedStructure:
    """Quotient bases of the graded pieces of R and their multiplication tensors."""

    def __init__(self, p: RankedPoset, field: Field = QQ):
        self.poset = p
        self.field = field
        self.alg = algebra(p, field)
        self.top = p.max_rank
        self.bases = [self.alg.degree_basis(j) for j in range(self.top + 1)]
        self.dims = [len(b) for b in self.bases]
        self._mult: dict = {}

    def dim(self, j: int) -> int:
        return self.dims[j] if 0 <= j <= self.top else 0

    def _element(self, j: int, pos: int) -> tuple:
        n, k, b = self.bases[j][pos]
        sp = self.alg.space(n, k)
        return sp.monomials[sp.basis[b]]

    def _offsets(self, j: int) -> dict:
        out, off = {}, 0
        for top in range(j, self.top + 1):
            n, k = top - 1, top - j
            out[(n, k)] = off
            off += self.alg.dim(n, k)
        return out

    def mult(self, i: int, j: int) -> np.ndarray:
        """Tensor ``M`` with ``a * c = sum M[a, c, :]`` for basis ``a`` of R_i, ``c`` of R_j."""
        key = (i, j)
        if key in self._mult:
            return self._mult[key]
        f = self.field
        di, dj, dij = self.dim(i), self.dim(j), self.dim(i + j)
        m = np.empty((di, dj, dij), dtype=f.dtype)
        m.fill(0)
        if di and dj and dij:
            if i == 0:
                for c in range(dj):
                    m[0, c, c] = 1
            elif j == 0:
                for a in range(di):
                    m[a, 0, a] = 1
            else:
                offsets = self._offsets(i + j)
                p = self.poset
                for a in range(di):
                    ma = self._element(i, a)
                    for c in range(dj):
                        mc = self._element(j, c)
                        if ma[-1] not in p.upper[mc[0]]:
                            continue
                        chain = ma + mc
                        n, k = p.ranks[chain[0]] - 1, p.ranks[chain[-1]] - 1
                        sp = self.alg.space(n, k)
                        off = offsets[(n, k)]
                        m[a, c, off:off + sp.dim] = sp.projection[:, sp.index[chain]]
        self._mult[key] = m
        return m


@dataclass(frozen=True)
class ExtTable:
    field: Field
    max_hdeg: int
    max_internal_deg: int
    dims: dict  # (s, t) -> dim Ext^{s,t}

    def get(self, s: int, t: int) -> int:
        return self.dims.get((s, t), 0)

    @property
    def off_diagonal(self) -> list[tuple[int, int, int]]:
        return [(s, t, d) for (s, t), d in sorted(self.dims.items()) if d and s != t]

    @property
    def diagonal(self) -> bool:
        """True when Ext^{s,t} = 0 for all computed s != t."""
        return not self.off_diagonal

    def betti(self, s: int) -> int:
        return sum(d for (ss, _), d in self.dims.items() if ss == s)


def ext_table(p: RankedPoset, field: Field = QQ, max_hdeg: int = 4,
              max_internal_deg: int | None = None, max_dim: int = DEFAULT_MAX_DIM,
              stop_at_off_diagonal: bool = False,
              max_entries: int = DEFAULT_MAX_ENTRIES) -> ExtTable:
    """Dimensions of Ext^{s,t}_R(F, F) for ``s <= max_hdeg`` and ``t <= max_internal_deg``.

    The default internal bound ``max_hdeg - 1 + (top degree of R)`` is enough
    to decide whether Ext is diagonal up to ``max_hdeg``: if ``P_{s-1}`` is
    generated in degree ``s-1``, generators of ``P_s`` sit in degree at most
    ``s-1`` plus the top degree of R.

    ``max_dim`` bounds ``dim P_{s-1}`` in each degree and ``max_entries``
    bounds the size of the matrix ``P_s[t] -> P_{s-1}[t]``; either raises
    :class:`BoundsExceeded`.
    """
    gs = GradedStructure(p, field)
    f = field
    top = gs.top
    T = max_internal_deg if max_internal_deg is not None else max_hdeg - 1 + max(top, 1)
    dims = {(0, 0): 1}
    # gens[s] = list of (degree, image) with image a vector in P_{s-1}[degree]
    gens: list[list[tuple[int, np.ndarray | None]]] = [[(0, None)]]

    def module_dim(s: int, t: int) -> int:
        return sum(gs.dim(t - e) for e, _ in gens[s])

    def by_degree(gs_list):
        """``[(degree, count)]`` runs; generators are appended in increasing degree."""
        runs: list[list[int]] = []
        for e, _ in gs_list:
            if runs and runs[-1][0] == e:
                runs[-1][1] += 1
            else:
                runs.append([e, 1])
        return runs

    def delta_matrix(s: int, t: int, lo: int = 0, hi: int | None = None) -> np.ndarray:
        """Matrix of ``P_s[t] -> P_{s-1}[t]`` on generators ``lo:hi`` of ``P_s``.

        Columns come in one block per run of equal-degree generators.
        """
        src, tgt = gens[s][lo:hi], gens[s - 1]
        tgt_runs = by_degree(tgt)
        rows = module_dim(s - 1, t)
        cols = []
        start = 0
        for e, g in by_degree(src):
            da = gs.dim(t - e)
            if da == 0:
                start += g
                continue
            imgs = np.stack([img for _, img in src[start:start + g]])
            start += g
            block = f.zeros(rows, g * da)
            row_off = img_off = 0
            for eh, nh in tgt_runs:
                dx, dc = gs.dim(t - eh), gs.dim(e - eh)
                if dx and dc:
                    seg = imgs[:, img_off:img_off + nh * dc].reshape(g, nh, dc)
                    prod = np.tensordot(seg, gs.mult(t - e, e - eh), axes=([2], [1]))
                    block[row_off:row_off + nh * dx] = f.normalize(
                        prod.transpose(1, 3, 0, 2).reshape(nh * dx, g * da))
                row_off += nh * dx
                img_off += nh * dc
            cols.append(block)
        if not cols:
            return f.zeros(rows, 0)
        return np.concatenate(cols, axis=1)

    def image_basis(s: int, t: int, rows: int) -> np.ndarray:
        """Independent rows spanning the image of the current ``P_s`` in ``P_{s-1}[t]``.

        Columns are produced in chunks so only a basis of the image is held.
        """
        basis = f.zeros(0, rows)
        widest = max((gs.dim(t - e) for e, _ in gens[s]), default=0)
        if not widest:
            return basis
        step = max(1, _CHUNK_ENTRIES // (rows * widest))
        for lo in range(0, len(gens[s]), step):
            cols = delta_matrix(s, t, lo, lo + step)
            if cols.shape[1] == 0:
                continue
            cand = cols.T
            picks = extend_independent(basis, cand, f)
            if picks:
                basis = np.concatenate([basis, cand[picks]], axis=0)
            if len(basis) == rows:
                break
        return basis

    for s in range(1, max_hdeg + 1):
        gens.append([])
        for t in range(s, T + 1):
            size = module_dim(s - 1, t)
            if size > max_dim:
                raise BoundsExceeded(f"P_{s - 1} has dimension {size} in degree {t} "
                                     f"(guard {max_dim})")
            if size == 0:
                continue
            if size * module_dim(s, t) > max_entries:
                raise BoundsExceeded(f"P_{s} -> P_{s - 1} in degree {t} is a {size} x "
                                     f"{module_dim(s, t)} matrix (guard {max_entries} entries)")
            image = image_basis(s, t, size)
            dim_image = len(image)
            if s == 1:
                lower = None
                dim_kernel = size
            else:
                lower = delta_matrix(s - 1, t)
                dim_kernel = size - rank(lower, f)
            new = dim_kernel - dim_image
            if new < 0:
                raise AssertionError("image of the resolution exceeds the kernel")
            if new:
                kvecs = f.identity(size) if lower is None else kernel_vectors(lower, f)
                picks = extend_independent(image, kvecs, f)
                assert len(picks) == new
                for idx in picks:
                    gens[s].append((t, kvecs[idx].copy()))
                dims[(s, t)] = new
                if stop_at_off_diagonal and t != s:
                    return ExtTable(field, s, T, dims)
    return ExtTable(field, max_hdeg, T, dims)
