"""Quadratic dual dimensions, Hilbert-series formulas, the numerical Koszul
defect, and Cohen-Macaulay / Koszul verdicts.

Two independent Koszulity deciders live here: :func:`cm_check` works purely
with order complexes of open intervals, and :func:`koszul_via_recursion`
works purely with the internal cohomology of R over the principal subposets.
A third, :func:`koszulkit.ext.ext_table`, resolves the trivial module.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

import numpy as np

from .errors import BadParams, DegreeTooLarge, InternalInconsistency, NotUniform
from .linalg import QQ, Field, rank
from .order_complex import CohomologyProfile, build, reduced_cohomology
from .poset import RankedPoset, _bits, is_uniform, subposet
from .ralgebra import algebra, hilbert_R
from .series import TruncatedSeries

DEFAULT_MAX_TENSOR = 5_000_000


def parallel_map(fn: Callable, items: Iterable) -> list:
    """``list(map(fn, items))`` on a thread pool capped by ``KOSZULKIT_THREADS``.

    Results keep input order, so output never depends on scheduling.
    """
    items = list(items)
    try:
        threads = int(os.environ.get("KOSZULKIT_THREADS", "1"))
    except ValueError:
        threads = 1
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _require_uniform(p: RankedPoset, what: str):
    v = is_uniform(p)
    if not v:
        raise NotUniform(f"{what} needs a uniform poset; {v.witness} has lower-cover classes "
                         f"{[list(c) for c in v.classes]}", witness=v.witness)


# -- quadratic dual ----------------------------------------------------------------

def dual_relation_pairs(p: RankedPoset, order: list[int] | None = None) -> list[tuple[int, int, int]]:
    """``(x, y, z)`` with ``e_x (e_y - e_z)`` spanning the dual relations.

    ``y, z`` run over consecutive non-star covers of ``x``, ordered by id
    unless ``order`` gives another ranking of the elements.
    """
    out = []
    rank_of = {e: i for i, e in enumerate(order)} if order is not None else None
    for x in range(1, len(p)):
        ys = list(p.lower_ns[x])
        if rank_of is not None:
            ys.sort(key=lambda e: rank_of[e])
        out.extend((x, a, b) for a, b in zip(ys, ys[1:]))
    return out


def _dual_components(p: RankedPoset, n: int, pairs) -> int:
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    m = len(p) - 1
    words = m ** n
    rows, cols = [], []
    for i in range(n - 1):
        pre = np.arange(m ** i, dtype=np.int64)
        post = np.arange(m ** (n - 2 - i), dtype=np.int64)
        scale_pre = m ** (n - i)
        scale_mid = m ** (n - 2 - i)
        base = (pre[:, None] * scale_pre + post[None, :]).ravel()
        for x, y, z in pairs:
            a = base + ((x - 1) * m + (y - 1)) * scale_mid
            b = base + ((x - 1) * m + (z - 1)) * scale_mid
            rows.append(a)
            cols.append(b)
    if not rows:
        return 0
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    g = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(words, words))
    ncomp, _ = connected_components(g, directed=False)
    return words - ncomp


def _dual_linalg(p: RankedPoset, n: int, pairs, field: Field) -> int:
    m = len(p) - 1
    words = m ** n
    rows = []
    for i in range(n - 1):
        for pre in range(m ** i):
            for post in range(m ** (n - 2 - i)):
                for x, y, z in pairs:
                    a = (pre * m * m + (x - 1) * m + (y - 1)) * m ** (n - 2 - i) + post
                    b = (pre * m * m + (x - 1) * m + (z - 1)) * m ** (n - 2 - i) + post
                    rows.append((a, b))
    if not rows:
        return 0
    mat = field.zeros(len(rows), words)
    neg = (-1) % field.characteristic if field.characteristic else -1
    for r, (a, b) in enumerate(rows):
        mat[r, a] = 1
        mat[r, b] = neg
    return rank(mat, field)


def dual_dims(p: RankedPoset, field: Field = QQ, max_degree: int | None = None,
              max_tensor: int = DEFAULT_MAX_TENSOR, method: str = "components",
              order: list[int] | None = None) -> list[int]:
    """Dimensions of the quadratic dual ``R^!`` in degrees ``0..max_degree``.

    Degree ``n`` is ``m^n`` minus the rank of the degree-``n`` part of the
    ideal generated by ``e_x (e_y - e_z)``.  Every generator is a difference
    of two words, so that rank equals ``m^n`` minus the number of connected
    components of the graph these differences draw on words, over any
    field (``method="components"``).  ``method="linalg"`` runs exact
    elimination instead and is meant for small cross-checks.
    """
    if max_degree is None:
        max_degree = p.max_rank + 2
    m = len(p) - 1
    pairs = dual_relation_pairs(p, order)
    dims = []
    for n in range(max_degree + 1):
        if n == 0:
            dims.append(1)
            continue
        words = m ** n
        if words > max_tensor:
            raise DegreeTooLarge(f"degree {n} of the dual needs {m}^{n} = {words} coordinates "
                                 f"(guard {max_tensor})")
        if n == 1 or not pairs:
            dims.append(words)
            continue
        if method == "components":
            r = _dual_components(p, n, pairs)
        elif method == "linalg":
            r = _dual_linalg(p, n, pairs, field)
        else:
            raise BadParams(f"unknown dual_dims method {method!r}")
        dims.append(words - r)
    return dims


# -- slices Γ_{a,i} and the Hilbert-series formulas ------------------------------------

@dataclass(frozen=True)
class PairReport:
    v: str
    i: int
    chi_reduced: int
    top_cohomology_dim: int
    good: bool

    def defect(self) -> int:
        """Contribution of this pair to the NKD coefficient of ``t^i``."""
        sign = 1 if (self.i - 2) % 2 == 0 else -1
        return sign * self.top_cohomology_dim - self.chi_reduced


def _pair(p: RankedPoset, field: Field, v: int, i: int) -> PairReport:
    prof = reduced_cohomology(build(subposet(p, "slice", v, i), field=field))
    top = prof.dim(i - 2)
    sign = 1 if (i - 2) % 2 == 0 else -1
    return PairReport(p.names[v], i, prof.euler, top, prof.euler == sign * top)


def pair_reports(p: RankedPoset, field: Field = QQ) -> list[PairReport]:
    """Reports for every ``(v, i)`` with ``v != *`` and ``1 <= i <= rk(v)``."""
    jobs = [(v, i) for v in range(1, len(p)) for i in range(1, p.ranks[v] + 1)]
    return parallel_map(lambda vi: _pair(p, field, *vi), jobs)


def hs1_formula(p: RankedPoset, field: Field = QQ, N: int | None = None,
                reports: list[PairReport] | None = None) -> TruncatedSeries:
    """``1 + sum_i sum_{rk a >= i} χ̃(Δ(Γ_{a,i})) t^i`` (the inverse Hilbert series of the splitting algebra)."""
    _require_uniform(p, "hs1_formula")
    reports = reports if reports is not None else pair_reports(p, field)
    coeffs = [1] + [0] * p.max_rank
    for r in reports:
        coeffs[r.i] += r.chi_reduced
    return TruncatedSeries.poly(coeffs)


def hs2_formula(p: RankedPoset, field: Field = QQ,
                reports: list[PairReport] | None = None) -> TruncatedSeries:
    """``1 + sum_i sum_{rk a >= i} (-1)^{i-2} dim H̃^{i-2}(Δ(Γ_{a,i})) t^i``; equals ``H(R, -t)``."""
    _require_uniform(p, "hs2_formula")
    reports = reports if reports is not None else pair_reports(p, field)
    coeffs = [1] + [0] * p.max_rank
    for r in reports:
        sign = 1 if (r.i - 2) % 2 == 0 else -1
        coeffs[r.i] += sign * r.top_cohomology_dim
    return TruncatedSeries.poly(coeffs)


@dataclass(frozen=True)
class NKDResult:
    series: TruncatedSeries
    pairs: tuple
    hs1: TruncatedSeries
    hs2: TruncatedSeries

    @property
    def bad_pairs(self) -> list[PairReport]:
        return [r for r in self.pairs if not r.good]

    def __iter__(self):
        yield self.series
        yield list(self.pairs)


def nkd(p: RankedPoset, field: Field = QQ) -> NKDResult:
    """Numerical Koszul defect ``H(R, -t) - H(A, t)^{-1}`` from the bad pairs.

    The sum over bad pairs is checked against ``hs2 - hs1``.
    """
    _require_uniform(p, "nkd")
    reports = pair_reports(p, field)
    coeffs = [0] * (p.max_rank + 1)
    for r in reports:
        if not r.good:
            coeffs[r.i] += r.defect()
    series = TruncatedSeries.poly(coeffs)
    h1 = hs1_formula(p, field, reports=reports)
    h2 = hs2_formula(p, field, reports=reports)
    if series != h2 - h1:
        raise InternalInconsistency(f"bad-pair sum {series} differs from HS2 - HS1 = {h2 - h1}")
    return NKDResult(series, tuple(reports), h1, h2)


# -- Cohen-Macaulay -------------------------------------------------------------------

@dataclass(frozen=True)
class CMVerdict:
    field: Field
    cm: bool
    witness: tuple | None = None  # (a, b, degree) with names
    witness_dims: dict | None = None
    intervals_checked: int = 0

    def __bool__(self):
        return self.cm


def cm_check(p: RankedPoset, field: Field = QQ) -> CMVerdict:
    """Reduced cohomology of every open interval vanishes below its top degree.

    Intervals with ``rk(b) - rk(a) <= 2`` always pass (empty or discrete),
    so only longer ones are computed.  Pairs are scanned with ``a`` in id
    order, then ``b`` in id order; the witness is the first failing pair and
    its lowest offending degree.
    """
    pairs = [(a, b) for a in range(len(p)) for b in _bits(p.above[a])
             if p.ranks[b] - p.ranks[a] >= 3]

    def check(ab):
        a, b = ab
        prof = reduced_cohomology(build(subposet(p, "open", a, b), field=field))
        top = p.ranks[b] - p.ranks[a] - 2
        bad = [n for n in prof.nonzero_degrees() if n != top]
        return (bad[0], prof) if bad else None

    results = parallel_map(check, pairs)
    for (a, b), res in zip(pairs, results):
        if res is not None:
            n, prof = res
            return CMVerdict(field, False, (p.names[a], p.names[b], n), dict(prof.dims),
                             len(pairs))
    return CMVerdict(field, True, None, None, len(pairs))


# -- Koszul via the internal cohomology recursion ------------------------------------------

@dataclass(frozen=True)
class RecursionVerdict:
    field: Field
    koszul: bool
    witness: tuple | None = None  # (x, n, k)
    checked: int = 0

    def __bool__(self):
        return self.koszul


def principal_koszul_obstruction(p: RankedPoset, x: int, field: Field = QQ):
    """First ``(n, k)`` with ``H_{Γ_x}(n,k) != 0`` and ``0 <= k < n <= d-2`` (``rk x = d+1``)."""
    d = p.ranks[x] - 1
    if d < 3:
        return None
    a = algebra(p.principal(x), field)
    for k in range(0, d - 2):
        coh = a.cohomology(k)
        for n in range(k + 1, d - 1):
            if coh.dims[n - k]:
                return (n, k)
    return None


def koszul_via_recursion(p: RankedPoset, field: Field = QQ) -> RecursionVerdict:
    """Decide Koszulity of a uniform poset from principal subposets in increasing rank.

    Each ``x`` is tested only after every element below it passed, which is
    what makes the vanishing test for ``Γ_x`` a complete criterion.
    """
    _require_uniform(p, "koszul_via_recursion")
    checked = 0
    for x in range(1, len(p)):
        if p.ranks[x] < 4:
            continue
        checked += 1
        hit = principal_koszul_obstruction(p, x, field)
        if hit is not None:
            return RecursionVerdict(field, False, (p.names[x],) + hit, checked)
    return RecursionVerdict(field, True, None, checked)


# -- numerical Koszulity ------------------------------------------------------------------

@dataclass(frozen=True)
class NumericalReport:
    field: Field
    numerically_koszul: bool
    order: int
    nkd: TruncatedSeries
    product: TruncatedSeries
    dual_source: str  # "tensor" or "hs1"
    dual_series: TruncatedSeries

    def __bool__(self):
        return self.numerically_koszul


def numerically_koszul_report(p: RankedPoset, field: Field = QQ, N: int | None = None,
                              max_tensor: int = DEFAULT_MAX_TENSOR,
                              nkd_result: NKDResult | None = None) -> NumericalReport:
    """Check ``H(R, -t) * H(R^!, t) = 1`` mod ``t^{N+1}`` and ``NKD = 0``.

    The dual series comes from :func:`dual_dims` when the tensor guard
    allows; otherwise the inverse of the HS1 polynomial stands in for it
    (``dual_source="hs1"``), which makes the product test restate the NKD
    test.  Only truncations are certified.
    """
    _require_uniform(p, "numerically_koszul")
    if N is None:
        N = p.max_rank + 2
    if N < p.max_rank + 2:
        raise BadParams(f"truncation N={N} must be at least max rank + 2 = {p.max_rank + 2}")
    res = nkd_result if nkd_result is not None else nkd(p, field)
    order = N + 1
    try:
        dual = TruncatedSeries(tuple(dual_dims(p, field, N, max_tensor)), order)
        source = "tensor"
    except DegreeTooLarge:
        dual = res.hs1.inverse(order)
        source = "hs1"
    product = hilbert_R(p, field).alternate() * dual
    product = product.truncate(order)
    prod_ok = product.equals_mod(TruncatedSeries((1,)), order)
    nkd_ok = res.series.is_zero()
    if prod_ok != nkd_ok:
        raise InternalInconsistency(
            f"NKD = {res.series} but H(R,-t)·H(R^!,t) = {product} (dual from {source})")
    return NumericalReport(field, nkd_ok, order, res.series, product, source, dual)


def numerically_koszul(p: RankedPoset, field: Field = QQ, N: int | None = None,
                       max_tensor: int = DEFAULT_MAX_TENSOR) -> bool:
    return numerically_koszul_report(p, field, N, max_tensor).numerically_koszul


# -- combined verdict ----------------------------------------------------------------------

@dataclass(frozen=True)
class KoszulVerdict:
    field: Field
    uniform: bool
    uniform_witness: str | None
    cm: CMVerdict
    koszul_via_cm: bool
    recursion: RecursionVerdict | None
    numerical: NumericalReport | None
    nkd: NKDResult | None
    ext: object | None = None

    @property
    def koszul_via_recursion(self) -> bool | None:
        return None if self.recursion is None else self.recursion.koszul

    @property
    def numerically_koszul(self) -> bool | None:
        return None if self.numerical is None else self.numerical.numerically_koszul

    @property
    def koszul(self) -> bool:
        return self.koszul_via_cm


def koszul_verdict(p: RankedPoset, field: Field = QQ, numerical: bool = True,
                   max_tensor: int = DEFAULT_MAX_TENSOR, ext_degree: int | None = None,
                   ext_guard: int | None = None) -> KoszulVerdict:
    """Run every applicable decider and insist that they agree.

    A uniform poset is Koszul exactly when it is Cohen-Macaulay; the
    recursion verdict is computed independently and any disagreement raises
    :class:`InternalInconsistency`.
    """
    u = is_uniform(p)
    cm = cm_check(p, field)
    via_cm = bool(u) and cm.cm
    rec = num = nk = None
    if u:
        rec = koszul_via_recursion(p, field)
        if rec.koszul != via_cm:
            raise InternalInconsistency(
                f"over {field}: CM says {'Koszul' if via_cm else 'not Koszul'} "
                f"(witness {cm.witness}) but recursion says "
                f"{'Koszul' if rec.koszul else 'not Koszul'} (witness {rec.witness})")
        if numerical:
            nk = nkd(p, field)
            num = numerically_koszul_report(p, field, None, max_tensor, nk)
    ext = None
    if ext_degree is not None:
        from .ext import ext_table
        kwargs = {} if ext_guard is None else {"max_dim": ext_guard}
        ext = ext_table(p, field, ext_degree, **kwargs)
        # off-diagonal Ext refutes Koszulity; a diagonal table up to a finite degree proves nothing
        if u and via_cm and not ext.diagonal:
            raise InternalInconsistency(
                f"over {field}: Ext diagonal={ext.diagonal} up to degree {ext_degree} "
                f"but CM/recursion say {via_cm}")
    return KoszulVerdict(field, bool(u), u.witness, cm, via_cm, rec, num, nk, ext)
