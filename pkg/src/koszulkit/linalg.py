"""Exact dense linear algebra over the rationals and prime fields.

Matrices are numpy arrays.  Over Q the dtype is ``object`` and entries are
Python ``int`` or ``fractions.Fraction``; over F_p they are ``int64`` residues
in ``[0, p)`` (``object`` for very large p).  Maps act on column vectors, so a
map ``C -> D`` has shape ``(dim D, dim C)``.

Rational elimination is done fraction-free on integer rows (each row kept
primitive by dividing out its content) and only converted to ``Fraction``
when the reduced echelon form is handed back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .errors import CompositionNotZero

# Above this the int64 outer products in the F_p elimination could overflow.
_INT64_PRIME_LIMIT = 3_037_000_499


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: characteristic 0 means Q, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or p < 0 or (p and not _is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime, got {p!r}")

    @classmethod
    def parse(cls, text) -> "Field":
        """Accept ``q``, ``Q``, ``0``, ``2``, ``F2``, ``p=3`` and friends."""
        if isinstance(text, Field):
            return text
        s = str(text).strip().lower()
        if s in ("q", "0", "qq", "rationals"):
            return cls(0)
        for prefix in ("p=", "f_", "f", "gf"):
            if s.startswith(prefix):
                s = s[len(prefix):]
                break
        try:
            return cls(int(s))
        except ValueError as exc:
            raise ValueError(f"unrecognised field {text!r}") from exc

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def dtype(self):
        p = self.characteristic
        return np.int64 if 0 < p < _INT64_PRIME_LIMIT else object

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    # -- construction ------------------------------------------------------

    def array(self, data, copy: bool = True) -> np.ndarray:
        """Coerce ``data`` to an array of exact field elements.

        Object arrays handed in are trusted to hold ints/Fractions already;
        lists are scanned and floats rejected.
        """
        p = self.characteristic
        if isinstance(data, np.ndarray):
            kind = data.dtype.kind
            if kind == "f" or kind == "c":
                raise TypeError("floating point entries are not exact")
            if p == 0:
                if kind == "O":
                    return data.copy() if copy else data
                return data.astype(object)
            if self.dtype is not object and kind in "iub":
                a = data.astype(np.int64, copy=copy)
                return a % p
            if kind != "O":
                data = data.astype(object)
            return self._reduce_objects(data)
        a = np.array(data, dtype=object)
        if a.size:
            bad = [x for x in a.flat if not isinstance(x, (int, Fraction))]
            if any(isinstance(x, float) for x in bad):
                raise TypeError("floating point entries are not exact")
            if bad:
                a = np.vectorize(_to_exact, otypes=[object])(a)
        if p == 0:
            return a
        return self._reduce_objects(a)

    def _reduce_objects(self, a: np.ndarray) -> np.ndarray:
        p = self.characteristic
        if a.size == 0:
            return np.zeros(a.shape, dtype=self.dtype)
        if any(isinstance(x, Fraction) for x in a.flat):
            a = np.vectorize(lambda x: _mod_exact(x, p), otypes=[object])(a)
        if self.dtype is object:
            return a % p
        return a.astype(np.int64) % p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.dtype is object:
            z = np.empty((rows, cols), dtype=object)
            z.fill(0)
            return z
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        m = self.zeros(n, n)
        for i in range(n):
            m[i, i] = 1
        return m

    def normalize(self, a: np.ndarray) -> np.ndarray:
        p = self.characteristic
        return a % p if p else a

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            shape = a.shape[:-1] + b.shape[1:]
            return self.zeros(*shape) if len(shape) == 2 else self.zeros(1, shape[0])[0]
        return self.normalize(a @ b)

    def scale(self, c, a: np.ndarray) -> np.ndarray:
        return self.normalize(a * c)

    def is_zero(self, a: np.ndarray) -> bool:
        return a.size == 0 or not np.any(a != 0)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        if a.shape != b.shape:
            return False
        return a.size == 0 or bool(np.all(self.normalize(a - b) == 0))


QQ = Field(0)
GF2 = Field(2)


def _to_exact(x):
    if isinstance(x, (int, Fraction)):
        return x
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, float):
        raise TypeError("floating point entries are not exact")
    return Fraction(x)


def _mod_exact(x, p):
    x = Fraction(x)
    return (x.numerator * pow(x.denominator, -1, p)) % p


# -- elimination kernels ----------------------------------------------------

def _integer_rows(a: np.ndarray) -> np.ndarray:
    """Scale each rational row by the lcm of its denominators."""
    m = np.empty(a.shape, dtype=object)
    for i in range(a.shape[0]):
        row = a[i]
        dens = [x.denominator for x in row if isinstance(x, Fraction) and x.denominator != 1]
        if dens:
            s = reduce(lcm, dens)
            m[i] = [int(x * s) for x in row]
        else:
            m[i] = [int(x) for x in row]
    return m


_INT64_SAFE = 1 << 62


def _eliminate_rational(a: np.ndarray, full: bool):
    """Fraction-free Gauss(-Jordan) on a copy of ``a``.  Returns (rows, pivots).

    Rows are kept primitive (content divided out).  Work happens in int64
    while a bound check proves the next update cannot overflow, and in
    Python ints from then on.
    """
    m = _integer_rows(a)
    nrows, ncols = m.shape
    if m.size and max(abs(int(x)) for x in m.flat) < (1 << 31):
        m = m.astype(np.int64)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = m[r:, c]
        nz = np.flatnonzero(col != 0)
        if nz.size == 0:
            continue
        mags = np.abs(col[nz])
        best = r + int(nz[int(np.argmin(mags))])
        if best != r:
            m[[r, best]] = m[[best, r]]
        if full:
            others = np.flatnonzero(m[:, c] != 0)
            others = others[others != r]
        else:
            others = r + 1 + np.flatnonzero(m[r + 1:, c] != 0)
        if others.size:
            if m.dtype != object:
                sub = m[others]
                bound = (abs(int(m[r, c])) * int(np.abs(sub).max())
                         + int(np.abs(sub[:, c]).max()) * int(np.abs(m[r]).max()))
                if bound >= _INT64_SAFE:
                    m = m.astype(object)
            a_piv = m[r, c] if m.dtype != object else int(m[r, c])
            b = m[others, c].copy()
            sub = m[others]
            if a_piv != 1:
                sub = sub * a_piv
            sub[:, c:] -= np.outer(b, m[r, c:])
            if m.dtype == object:
                for j in range(sub.shape[0]):
                    g = gcd(*sub[j].tolist())
                    if g > 1:
                        sub[j] //= g
            else:
                g = np.gcd.reduce(sub, axis=1)
                big = g > 1
                if big.any():
                    sub[big] //= g[big][:, None]
            m[others] = sub
        pivots.append(c)
        r += 1
    return m, pivots


def _eliminate_f2(a: np.ndarray, full: bool):
    """Elimination over F_2 on rows packed into 64-bit words."""
    nrows, ncols = a.shape
    nwords = (ncols + 63) // 64
    packed = np.packbits((a % 2).astype(bool), axis=1, bitorder="little")
    buf = np.zeros((nrows, nwords * 8), dtype=np.uint8)
    buf[:, : packed.shape[1]] = packed
    w = buf.view("<u8")
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        word, bit = divmod(c, 64)
        colbits = (w[:, word] >> np.uint64(bit)) & np.uint64(1)
        nz = np.flatnonzero(colbits[r:])
        if nz.size == 0:
            continue
        best = r + int(nz[0])
        if best != r:
            w[[r, best]] = w[[best, r]]
            colbits[[r, best]] = colbits[[best, r]]
        if full:
            others = np.flatnonzero(colbits)
            others = others[others != r]
        else:
            others = r + 1 + np.flatnonzero(colbits[r + 1:])
        if others.size:
            w[others] ^= w[r]
        pivots.append(c)
        r += 1
    out = np.unpackbits(w.view(np.uint8), axis=1, count=ncols, bitorder="little")
    return out.astype(np.int64), pivots


def _eliminate_modp(a: np.ndarray, p: int, full: bool):
    if p == 2 and a.dtype != object:
        return _eliminate_f2(a, full)
    m = a.copy() % p
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c] != 0)
        if nz.size == 0:
            continue
        best = r + int(nz[0])
        if best != r:
            m[[r, best]] = m[[best, r]]
        inv = pow(int(m[r, c]), -1, p)
        if inv != 1:
            m[r] = (m[r] * inv) % p
        if full:
            others = np.flatnonzero(m[:, c] != 0)
            others = others[others != r]
        else:
            others = r + 1 + np.flatnonzero(m[r + 1:, c] != 0)
        if others.size:
            f = m[others, c].copy()
            sub = m[others]
            sub[:, c:] = (sub[:, c:] - np.outer(f, m[r, c:])) % p
            m[others] = sub
        pivots.append(c)
        r += 1
    return m, pivots


def rref(m, field: Field = QQ):
    """Reduced row-echelon form.  Returns ``(R, pivots, rank)``.

    Pivots are chosen leftmost-first; since the RREF of a matrix is unique
    the result does not depend on which row supplies each pivot.
    """
    a = field.array(m)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    if a.size == 0:
        return a.copy(), [], 0
    if field.is_rational:
        ints, pivots = _eliminate_rational(a, full=True)
        out = field.zeros(*a.shape)
        for i, c in enumerate(pivots):
            d = int(ints[i, c])
            out[i] = [x // d if x % d == 0 else Fraction(x, d) for x in map(int, ints[i].tolist())]
        return out, pivots, len(pivots)
    red, pivots = _eliminate_modp(a, field.characteristic, full=True)
    return red, pivots, len(pivots)


def pivot_columns(m, field: Field = QQ) -> list[int]:
    """Pivot columns of the echelon form (forward elimination only).

    Equivalently the greedy maximal independent set of columns, scanned
    left to right.
    """
    a = field.array(m)
    if a.ndim != 2 or a.size == 0:
        return []
    if field.is_rational:
        return _eliminate_rational(a, full=False)[1]
    return _eliminate_modp(a, field.characteristic, full=False)[1]


def rank(m, field: Field = QQ) -> int:
    return len(pivot_columns(m, field))


# -- subspaces ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis`` inside ``field^ambient_dim``; ``basis`` is in RREF."""

    field: Field
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple

    @classmethod
    def span(cls, vectors, ambient_dim: int, field: Field = QQ) -> "Subspace":
        vecs = field.array(vectors) if len(vectors) else field.zeros(0, ambient_dim)
        if vecs.ndim == 1:
            vecs = vecs.reshape(1, -1)
        if vecs.shape[1] != ambient_dim:
            raise ValueError("vector length does not match the ambient dimension")
        red, pivots, r = rref(vecs, field)
        return cls(field, ambient_dim, red[:r].copy(), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int, field: Field = QQ) -> "Subspace":
        return cls(field, ambient_dim, field.zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int, field: Field = QQ) -> "Subspace":
        return cls(field, ambient_dim, field.identity(ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residual of ``v`` (rows allowed) after clearing every pivot coordinate."""
        v = self.field.array(v)
        if not self.pivots:
            return v
        if v.ndim == 1:
            return self.field.normalize(v - v[list(self.pivots)] @ self.basis)
        return self.field.normalize(v - v[:, list(self.pivots)] @ self.basis)

    def contains(self, v) -> bool:
        return self.field.is_zero(self.reduce(v))

    def __add__(self, other: "Subspace") -> "Subspace":
        stacked = np.concatenate([self.basis, other.basis], axis=0)
        return Subspace.span(stacked, self.ambient_dim, self.field)

    def projection(self) -> np.ndarray:
        return quotient_coordinates(self)


def kernel_vectors(m, field: Field = QQ) -> np.ndarray:
    """Rows spanning ``{v : m @ v == 0}``, one per free column of the RREF.

    Row ``j`` has a 1 at the ``j``-th free column and 0 at the other free
    columns.
    """
    a = field.array(m)
    ncols = a.shape[1]
    red, pivots, r = rref(a, field)
    pset = set(pivots)
    free = [c for c in range(ncols) if c not in pset]
    vecs = field.zeros(len(free), ncols)
    if free:
        vecs[np.arange(len(free)), free] = 1
        if pivots:
            vecs[:, pivots] = field.normalize(-red[:r][:, free].T)
    return vecs


def kernel_basis(m, field: Field = QQ) -> Subspace:
    """Subspace of vectors v with ``m @ v == 0``."""
    a = field.array(m)
    return Subspace.span(kernel_vectors(a, field), a.shape[1], field)


def extend_independent(base: np.ndarray, candidates: np.ndarray, field: Field = QQ) -> list[int]:
    """Indices of candidate rows that greedily extend the span of ``base`` rows."""
    if len(candidates) == 0:
        return []
    nb = len(base)
    stacked = np.concatenate([base, candidates], axis=0) if nb else candidates
    piv = pivot_columns(field.array(stacked, copy=False).T, field)
    return [c - nb for c in piv if c >= nb]


def quotient_coordinates(relations: Subspace) -> np.ndarray:
    """Surjection ``F^N -> F^(N - dim relations)`` whose kernel is ``relations``.

    Coordinates of the quotient are the non-pivot coordinates of the ambient
    space; a vector is first reduced against the relation basis.
    """
    f = relations.field
    n = relations.ambient_dim
    piv = list(relations.pivots)
    keep = [c for c in range(n) if c not in set(piv)]
    proj = f.zeros(len(keep), n)
    for j, c in enumerate(keep):
        proj[j, c] = 1
    for i, c in enumerate(piv):
        proj[:, c] = f.normalize(-relations.basis[i, keep])
    return proj


def intersection(u: Subspace, w: Subspace) -> Subspace:
    f = u.field
    if u.dim == 0 or w.dim == 0:
        return Subspace.zero(u.ambient_dim, f)
    m = np.concatenate([u.basis.T, f.normalize(-w.basis.T)], axis=1)
    ker = kernel_basis(m, f)
    if ker.dim == 0:
        return Subspace.zero(u.ambient_dim, f)
    return Subspace.span(f.dot(ker.basis[:, : u.dim], u.basis), u.ambient_dim, f)


def independent_modulo(vectors: np.ndarray, sub: Subspace) -> list[int]:
    """Indices of a maximal subset of ``vectors`` (rows) independent modulo ``sub``.

    Greedy in row order, so the choice is deterministic.
    """
    return extend_independent(sub.basis, vectors, sub.field)


# -- cochain complexes ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ComplexCohomology:
    """Cohomology of ``C^0 -> C^1 -> ...`` given by a list of maps."""

    field: Field
    term_dims: tuple
    ranks: tuple  # ranks[n] = rank of the map out of C^n
    dims: tuple
    representatives: tuple  # representatives[n]: rows are cocycles spanning H^n

    def __len__(self):
        return len(self.dims)


def complex_cohomology(maps: Sequence[np.ndarray], field: Field = QQ,
                       dims: Sequence[int] | None = None,
                       with_representatives: bool = True) -> ComplexCohomology:
    """Cohomology dimensions (and cocycle representatives) of a cochain complex.

    ``maps[n]`` is the differential ``C^n -> C^{n+1}``.  When ``maps`` is
    empty, ``dims`` gives the single term.
    """
    mats = [field.array(m) for m in maps]
    if mats:
        term_dims = [mats[0].shape[1]] + [m.shape[0] for m in mats]
        for n, m in enumerate(mats[:-1]):
            if mats[n + 1].shape[1] != m.shape[0]:
                raise ValueError(f"shape mismatch between maps {n} and {n + 1}")
        if dims is not None and list(dims) != term_dims:
            raise ValueError("dims disagree with map shapes")
    else:
        term_dims = list(dims or [])
    for n in range(len(mats) - 1):
        if not field.is_zero(field.dot(mats[n + 1], mats[n])):
            raise CompositionNotZero(f"d[{n + 1}] . d[{n}] != 0")

    ranks = [rank(m, field) if m.size else 0 for m in mats] + [0]
    out_dims = []
    reps = []
    for n, cdim in enumerate(term_dims):
        r_out = ranks[n] if n < len(mats) else 0
        r_in = ranks[n - 1] if n > 0 else 0
        out_dims.append(cdim - r_out - r_in)
        if not with_representatives:
            continue
        if n < len(mats):
            ker = kernel_vectors(mats[n], field)
        else:
            ker = field.identity(cdim)
        if n > 0 and mats[n - 1].size:
            image = mats[n - 1].T
        else:
            image = field.zeros(0, cdim)
        idx = extend_independent(image, ker, field)
        reps.append(ker[idx].copy() if idx else field.zeros(0, cdim))
        assert len(idx) == out_dims[-1]
    return ComplexCohomology(field, tuple(term_dims), tuple(ranks[: len(mats)]),
                             tuple(out_dims), tuple(reps))


def induced_rank(phi: np.ndarray, representatives: np.ndarray, target_image: np.ndarray,
                 field: Field = QQ) -> int:
    """Rank of the map induced on cohomology.

    ``representatives`` are source cocycles (rows) and ``target_image`` is a
    matrix whose columns span the coboundaries of the target.  The result is
    ``rank([phi(reps) | image]) - rank(image)``.
    """
    if len(representatives) == 0 or phi.shape[0] == 0:
        return 0
    images = field.dot(phi, representatives.T).T
    return len(extend_independent(target_image.T, images, field))
