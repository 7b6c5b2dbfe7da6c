"""The cochain map Φ from the order complex of Γ∖{*} onto the complex R(·, 0).

A chain ``(b0 < ... < bn)`` goes to the class of ``r_{bn} ... r_{b0}`` when it is
saturated starting from rank 1 (``rk(bi) = i+1``) and to 0 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HypothesisNotMet
from .linalg import QQ, Field, complex_cohomology, induced_rank, rank
from .order_complex import build
from .poset import RankedPoset, _bits, is_uniform
from .ralgebra import RAlgebra, algebra


@dataclass(frozen=True, eq=False)
class PhiMatrices:
    poset: RankedPoset
    field: Field
    complex: object  # OrderComplex of Γ∖{*}
    matrices: tuple  # matrices[n]: C^n(Y) -> R(n, 0)

    def __getitem__(self, n):
        return self.matrices[n]

    def __len__(self):
        return len(self.matrices)


def _phi_degree(alg: RAlgebra, cells, n: int) -> np.ndarray:
    f = alg.field
    p = alg.poset
    if n + 1 > p.max_rank:
        return f.zeros(0, len(cells))
    sp = alg.space(n, 0)
    m = f.zeros(sp.dim, len(cells))
    for col, cell in enumerate(cells):
        if p.ranks[cell[0]] != 1 or p.ranks[cell[-1]] != n + 1:
            continue
        m[:, col] = sp.projection[:, sp.index[tuple(reversed(cell))]]
    return m


def build_phi(p: RankedPoset, field: Field = QQ, check_surjective: bool = True) -> PhiMatrices:
    alg = algebra(p, field)
    y = build(p, range(1, len(p)), field)
    mats = []
    for n in range(max(len(y.cells), p.max_rank)):
        cells = y.cells[n] if n < len(y.cells) else ()
        m = _phi_degree(alg, cells, n)
        if check_surjective and m.shape[0] and rank(m, field) != m.shape[0]:
            raise AssertionError(f"Φ^{n} is not surjective")
        mats.append(m)
    return PhiMatrices(p, field, y, tuple(mats))


def cochain_sign_check(p: RankedPoset, field: Field = QQ, phi: PhiMatrices | None = None) -> bool:
    """``Φ^{n+1} d_Y^n == (-1)^{n+1} d_Γ^n Φ^n`` for every ``n``."""
    phi = phi or build_phi(p, field)
    alg = algebra(p, field)
    y = phi.complex
    f = field
    for n in range(len(phi) - 1):
        if n >= len(y.coboundary):
            break
        left = f.dot(phi[n + 1], y.coboundary[n])
        dg = alg.d_gamma(n, 0)
        right = f.dot(dg, phi[n])
        if (n + 1) % 2:
            right = f.normalize(-right)
        if not f.equal(left, right):
            return False
    return True


@dataclass(frozen=True)
class DegreeReport:
    n: int
    source_dim: int  # dim H^n(Y)
    target_dim: int  # dim H_Γ(n, 0)
    induced_rank: int

    @property
    def isomorphism(self) -> bool:
        return self.source_dim == self.target_dim == self.induced_rank


@dataclass(frozen=True)
class QuasiIsoReport:
    field: Field
    degrees: tuple

    @property
    def quasi_isomorphism(self) -> bool:
        return all(d.isomorphism for d in self.degrees)

    def __bool__(self):
        return self.quasi_isomorphism


def _induced_reports(p: RankedPoset, field: Field, degrees=None) -> list[DegreeReport]:
    phi = build_phi(p, field)
    alg = algebra(p, field)
    y = phi.complex
    ycoh = complex_cohomology(list(y.coboundary), field, dims=y.cell_counts())
    rcoh = alg.cohomology(0) if p.max_rank else None
    out = []
    top = max(len(y.cells), p.max_rank)
    for n in range(top) if degrees is None else degrees:
        src = ycoh.dims[n] if n < len(ycoh.dims) else 0
        tgt = rcoh.dims[n] if rcoh is not None and n < len(rcoh.dims) else 0
        reps = ycoh.representatives[n] if n < len(ycoh.representatives) else field.zeros(0, 0)
        if n > 0 and n < p.max_rank:
            image = alg.d_gamma(n - 1, 0)
        else:
            image = field.zeros(phi[n].shape[0], 0)
        r = induced_rank(phi[n], reps, image, field) if len(reps) else 0
        out.append(DegreeReport(n, src, tgt, r))
    return out


def quasi_iso_check(p: RankedPoset, field: Field = QQ) -> QuasiIsoReport:
    """Check that Φ induces isomorphisms ``H^n(Y) -> H_Γ(n, 0)`` in every degree.

    Needs a uniform Cohen-Macaulay poset; otherwise raises HypothesisNotMet.
    """
    from .dual_koszul import cm_check

    u = is_uniform(p)
    if not u:
        raise HypothesisNotMet(f"quasi-isomorphism check needs a uniform poset (witness {u.witness})")
    cm = cm_check(p, field)
    if not cm:
        a, b, n = cm.witness
        raise HypothesisNotMet(f"quasi-isomorphism check needs a Cohen-Macaulay poset; "
                               f"interval ({a},{b}) has reduced cohomology in degree {n}")
    return QuasiIsoReport(field, tuple(_induced_reports(p, field)))


@dataclass(frozen=True)
class TopDegreeReport:
    field: Field
    top: str
    d: int
    # first identity: Φ for Γ minus its top, degree d-1
    source_dim: int
    target_dim: int
    induced_rank: int
    # second identity: r_x times chains of Z = Δ((*, x))
    kills_coboundaries: bool
    z_top_dim: int  # dim H̃^{d-1}(Z)
    r_top_dim: int  # dim R_Γ(d, 0)
    map_rank: int

    @property
    def first_holds(self) -> bool:
        return self.source_dim == self.target_dim == self.induced_rank

    @property
    def second_holds(self) -> bool:
        return self.kills_coboundaries and self.z_top_dim == self.r_top_dim == self.map_rank

    def __bool__(self):
        return self.first_holds and self.second_holds


def top_degree_checks(p: RankedPoset, field: Field = QQ) -> TopDegreeReport:
    """Top-degree identities for a uniform cyclic poset with top ``x`` of rank ``d+1``.

    (1) For ``Γ' = Γ∖{x}``, Φ_{Γ'} is an isomorphism on cohomology in
    degree ``d-1``.  (2) ``β -> r_x Φ_{Γ'}(β)`` kills (reduced) coboundaries of
    ``Z = Δ((*, x))`` and ``dim H̃^{d-1}(Z) = dim R_Γ(d, 0)``; the map is
    onto, so it induces the isomorphism.
    """
    u = is_uniform(p)
    if not u:
        raise HypothesisNotMet(f"top-degree checks need a uniform poset (witness {u.witness})")
    if len(p) == 1 or not p.is_cyclic():
        raise HypothesisNotMet("top-degree checks need a cyclic poset with a top element above *")
    f = field
    x = p.top()
    d = p.ranks[x] - 1
    alg = algebra(p, f)
    r_top = alg.dim(d, 0)
    if d == 0:
        # Z is the empty complex: H̃^{-1}(Z) = F and R(0,0) = F r_x
        return TopDegreeReport(f, p.names[x], d, 0, 0, 0, True, 1, r_top, r_top)

    # (1)
    sub = p.without(x)
    rep = _induced_reports(sub, f, degrees=[d - 1])[0]

    # (2): Z uses the ids of p directly
    z = build(p, [e for e in _bits(p.below[x]) if e != 0], f)
    zcells = z.cells[d - 1] if d - 1 < len(z.cells) else ()
    sp = alg.space(d, 0)
    psi = f.zeros(sp.dim, len(zcells))
    for col, cell in enumerate(zcells):
        if p.ranks[cell[0]] == 1:
            psi[:, col] = sp.projection[:, sp.index[(x,) + tuple(reversed(cell))]]
    if d - 1 == 0:
        incoming = z.augmentation()
    else:
        incoming = z.coboundary[d - 2]
    kills = f.is_zero(f.dot(psi, incoming))
    maps = [z.augmentation()] + list(z.coboundary)
    zcoh = complex_cohomology(maps, f, with_representatives=False)
    z_top = zcoh.dims[d] if d < len(zcoh.dims) else 0
    return TopDegreeReport(f, p.names[x], d, rep.source_dim, rep.target_dim, rep.induced_rank,
                           kills, z_top, r_top, rank(psi, f) if psi.size else 0)
