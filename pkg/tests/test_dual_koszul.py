from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from koszulkit.errors import BadParams, DegreeTooLarge, NotUniform
from koszulkit.dual_koszul import (cm_check, dual_dims, hs1_formula, hs2_formula, koszul_verdict,
                                   koszul_via_recursion, nkd, numerically_koszul,
                                   numerically_koszul_report, pair_reports)
from koszulkit.linalg import GF2, QQ
from koszulkit.poset import (boolean, chain, hat, is_uniform, parse, prism, random_ranked,
                             simplex_boundary, sphere_cross_interval_hat, wedge)
from koszulkit.ralgebra import hilbert_R
from koszulkit.series import ONE, TruncatedSeries


def uniform_posets(max_levels=3):
    return st.builds(lambda levels, d, s: random_ranked(levels, d, s, uniform=True),
                     st.lists(st.integers(1, 3), min_size=1, max_size=max_levels),
                     st.sampled_from([0.4, 0.7, 1.0]), st.integers(0, 10**6))


NON_UNIFORM = parse("a > *\nb > *\nc > *\nd > *\nx > a\nx > b\ny > c\ny > d\nz > x\nz > y")


# -- dual dimensions ---------------------------------------------------------------------------

def test_chain_dual_is_free():
    # one lower cover each: no dual relations, so the dual is the free algebra
    assert dual_dims(chain(2)) == [2 ** n for n in range(5)]
    assert dual_dims(chain(3)) == [3 ** n for n in range(6)]


def test_b2_dual_dims():
    assert dual_dims(boolean(2)) == [1, 3, 8, 21, 55]


@pytest.mark.parametrize("p", [boolean(2), boolean(3), simplex_boundary(2), hat(prism(1)),
                               wedge(boolean(2), chain(2), "a", "c1")],
                         ids=lambda p: p.name or "wedge")
def test_components_route_matches_elimination(p, field):
    n = p.max_rank + 1
    assert dual_dims(p, field, n) == dual_dims(p, field, n, method="linalg")


@given(uniform_posets(), st.integers(0, 10**6))
def test_dual_dims_do_not_depend_on_cover_order(p, seed):
    if len(p) > 8:
        return
    order = list(np.random.default_rng(seed).permutation(len(p)))
    assert dual_dims(p, max_degree=4, order=order) == dual_dims(p, max_degree=4)


def test_dual_guard():
    with pytest.raises(DegreeTooLarge):
        dual_dims(boolean(3), max_degree=6, max_tensor=1000)
    with pytest.raises(BadParams):
        dual_dims(boolean(2), method="nope")


# -- Hilbert-series formulas ---------------------------------------------------------------

def test_chain_and_b2_formulas():
    assert hs2_formula(chain(2)) == TruncatedSeries.poly([1, -2])
    assert hs1_formula(boolean(2)) == TruncatedSeries.poly([1, -3, 1])
    assert hs1_formula(boolean(2)).inverse(5) == TruncatedSeries(tuple(dual_dims(boolean(2))), 5)


def test_degree_one_pairs_contribute_minus_one_each(field):
    # Γ_{a,1} is empty, so χ̃ = -1 and H̃^{-1} = F
    p = sphere_cross_interval_hat()
    ones = [r for r in pair_reports(p, field) if r.i == 1]
    assert len(ones) == len(p) - 1
    assert all(r.chi_reduced == -1 and r.top_cohomology_dim == 1 and r.good for r in ones)


@given(uniform_posets(), st.sampled_from([QQ, GF2]))
def test_hs2_is_hilbert_series_at_minus_t(p, f):
    assert hs2_formula(p, f) == hilbert_R(p, f).alternate()


@given(uniform_posets())
def test_hs1_inverse_is_the_dual_series(p):
    if len(p) - 1 > 8:
        return
    n = p.max_rank + 2
    dims = dual_dims(p, QQ, n)
    assert hs1_formula(p).inverse(n + 1) == TruncatedSeries(tuple(dims), n + 1)


# -- numerical Koszul defect -------------------------------------------------------------------

@pytest.mark.parametrize("n", range(5))
def test_boolean_lattices_have_no_defect(n):
    assert nkd(boolean(n)).series.is_zero()


def test_s2xi_defect(field):
    res = nkd(sphere_cross_interval_hat(), field)
    assert res.series == TruncatedSeries.monomial(-1, 5)
    assert [(r.v, r.i) for r in res.bad_pairs] == [("X", 5)]
    assert res.hs2 - res.hs1 == res.series


def test_hat_of_circle_prism_defect():
    # (*, X) is a triangle boundary times an interval, so H̃^1 = F sits below the top degree 2
    res = nkd(hat(prism(2)))
    assert res.series == TruncatedSeries.monomial(1, 4)
    assert [(r.v, r.i) for r in res.bad_pairs] == [("X", 4)]


@given(uniform_posets(), uniform_posets(), st.integers(0, 10**6))
def test_defect_is_additive_under_wedge(a, b, seed):
    rng = np.random.default_rng(seed)
    x = a.by_rank[1][int(rng.integers(len(a.by_rank[1])))]
    y = b.by_rank[1][int(rng.integers(len(b.by_rank[1])))]
    w = wedge(a, b, a.names[x], b.names[y])
    assert nkd(w).series == nkd(a).series + nkd(b).series


def test_formulas_need_uniform():
    for fn in (nkd, hs1_formula, hs2_formula, koszul_via_recursion, numerically_koszul):
        with pytest.raises(NotUniform):
            fn(NON_UNIFORM)


# -- CM and the recursion --------------------------------------------------------------------

@pytest.mark.parametrize("p", [boolean(n) for n in range(5)] + [chain(n) for n in range(1, 6)],
                         ids=lambda p: p.name)
def test_boolean_lattices_and_chains_are_cm_and_koszul(p, field):
    assert cm_check(p, field).cm
    assert koszul_via_recursion(p, field).koszul


def test_s2xi_witnesses(field):
    s = sphere_cross_interval_hat()
    cm = cm_check(s, field)
    assert not cm.cm and cm.witness == ("*", "X", 2)
    rec = koszul_via_recursion(s, field)
    assert not rec.koszul and rec.witness[0] == "X"


def test_short_intervals_are_skipped():
    assert cm_check(boolean(2)).intervals_checked == 0
    assert cm_check(boolean(3)).intervals_checked == 1


@given(uniform_posets(4), st.sampled_from([QQ, GF2]))
def test_cm_agrees_with_recursion(p, f):
    assert cm_check(p, f).cm == koszul_via_recursion(p, f).koszul


# -- numerical Koszulity and the combined verdict -----------------------------------------

def test_numerical_examples():
    assert numerically_koszul(boolean(3))
    r = numerically_koszul_report(sphere_cross_interval_hat())
    assert not r and r.dual_source == "hs1"
    r = numerically_koszul_report(hat(prism(2)), max_tensor=10**4)
    assert not r and r.dual_source == "hs1" and r.nkd == TruncatedSeries.monomial(1, 4)


def test_numerical_product_with_computed_dual():
    r = numerically_koszul_report(boolean(2))
    assert r.dual_source == "tensor" and r.product.equals_mod(ONE, r.order)


def test_truncation_must_reach_past_max_rank():
    with pytest.raises(BadParams):
        numerically_koszul(boolean(3), N=4)


def test_combined_verdicts(field):
    v = koszul_verdict(boolean(3), field)
    assert v.koszul and v.koszul_via_recursion and v.numerically_koszul
    v = koszul_verdict(sphere_cross_interval_hat(), field)
    assert not v.koszul and v.koszul_via_recursion is False and v.numerically_koszul is False
    v = koszul_verdict(NON_UNIFORM, field)
    assert not v.uniform and not v.koszul and v.recursion is None
