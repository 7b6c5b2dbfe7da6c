from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from koszulkit.errors import (BadInterval, BadParams, DanglingElement, NoUniqueMinimum,
                              NotRanked, ParseError, RankNotOne, RankOutOfRange)
from koszulkit.order_complex import build
from koszulkit.poset import (RankedPoset, boolean, chain, comparability_components, generate,
                             hat, is_uniform, parse, prism, random_ranked, read_poset,
                             simplex_boundary, sphere_cross_interval_hat, subposet, wedge)


# -- brute-force oracles working from the cover list only ----------------------------------

def order_pairs(covers):
    """Strict order as a set of (low, high) pairs, by naive transitive closure."""
    lt = {(l, u) for u, l in covers}
    while True:
        extra = {(a, d) for (a, b) in lt for (c, d) in lt if b == c} - lt
        if not extra:
            return lt
        lt |= extra


def brute_uniform(p: RankedPoset):
    """Definition check: lower covers of x are linked by sharing a lower cover (``*`` allowed)."""
    covers = p.cover_names()
    lower = {}
    for u, l in covers:
        lower.setdefault(u, set()).add(l)
    for x, sx in lower.items():
        sx = sorted(sx)
        linked = {(a, b) for a in sx for b in sx if lower.get(a, set()) & lower.get(b, set())}
        classes = []
        for a in sx:
            for cls in classes:
                if any((a, b) in linked for b in cls):
                    cls.add(a)
                    break
            else:
                classes.append({a})
        # merge until stable
        merged = True
        while merged:
            merged = False
            for i, j in itertools.combinations(range(len(classes)), 2):
                if any((a, b) in linked for a in classes[i] for b in classes[j]):
                    classes[i] |= classes.pop(j)
                    merged = True
                    break
        if len(classes) > 1:
            return False, x, sorted(sorted(c) for c in classes)
    return True, None, None


def is_isomorphic(p: RankedPoset, q: RankedPoset) -> bool:
    """Backtracking isomorphism test for small ranked posets."""
    if p.rank_profile() != q.rank_profile() or len(p.covers()) != len(q.covers()):
        return False
    pc, qc = set(p.covers()), set(q.covers())
    order = sorted(range(len(p)), key=lambda e: p.ranks[e])

    def extend(mapping, used):
        if len(mapping) == len(order):
            return True
        e = order[len(mapping)]
        for f in range(len(q)):
            if f in used or q.ranks[f] != p.ranks[e]:
                continue
            if all(((e, l) in pc) == ((f, mapping[l]) in qc) for l in mapping):
                mapping[e] = f
                used.add(f)
                if extend(mapping, used):
                    return True
                del mapping[e]
                used.discard(f)
        return False

    return extend({}, set())


SPLIT = RankedPoset([("x", "u"), ("x", "v"), ("u", "p"), ("v", "q"), ("p", "*"), ("q", "*")])


def random_posets():
    return st.builds(lambda levels, d, s, u: random_ranked(levels, d, s, uniform=u),
                     st.lists(st.integers(1, 4), min_size=1, max_size=4),
                     st.sampled_from([0.3, 0.6, 1.0]), st.integers(0, 10**6), st.booleans())


# -- parsing -------------------------------------------------------------------------------

def test_parse_chain():
    p = parse("a > *\nb > a")
    assert p.max_rank == 2 and p.rank("b") == 2 and len(p) == 3


def test_parse_comments_and_header():
    p = parse("# demo\nposet demo\na > *   # atom\n\nb > a\n")
    assert p.name == "demo" and len(p) == 3


def test_two_minimal_elements_rejected():
    with pytest.raises(NoUniqueMinimum):
        parse("a > *\nb > c")


def test_unequal_diamond_is_not_ranked():
    # t sits on a side of length 2 and a side of length 3
    with pytest.raises(NotRanked):
        parse("a > *\nb > a\nc > *\nd > c\ne > d\nt > b\nt > e")


def test_star_covering_something_rejected():
    with pytest.raises(NoUniqueMinimum):
        parse("a > *\n* > a")


def test_element_without_path_to_star():
    with pytest.raises((DanglingElement, NoUniqueMinimum)):
        parse("a > *\nb > c\nc > b")


@pytest.mark.parametrize("text", ["a >", "a > b > c", "a-b > *", "poset x y\na > *"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_round_trip_through_text(tmp_path):
    p = sphere_cross_interval_hat()
    q = parse(p.to_text())
    assert q == p and q.name == p.name
    path = tmp_path / "s.poset"
    path.write_text(p.to_text())
    assert read_poset(path) == p


def test_serialization_sorted_by_rank_then_names():
    lines = [l for l in boolean(2).to_text().splitlines() if ">" in l]
    assert lines == ["a > *", "b > *", "ab > a", "ab > b"]


def test_ids_ordered_by_rank_then_name():
    p = boolean(3)
    assert p.names[0] == "*"
    keys = [(p.ranks[i], p.names[i]) for i in range(1, len(p))]
    assert keys == sorted(keys)


@given(random_posets())
def test_generated_posets_are_ranked(p):
    for u, l in p.covers():
        assert p.ranks[u] == p.ranks[l] + 1
    # every maximal chain from * to b has rk(b) steps: check via the order relation
    lt = order_pairs(p.cover_names())
    for b in range(1, len(p)):
        below = {a for a, c in lt if c == p.names[b]}
        assert "*" in below


@given(random_posets())
def test_order_relation_matches_transitive_closure(p):
    lt = order_pairs(p.cover_names())
    for a in range(len(p)):
        for b in range(len(p)):
            assert p.lt(a, b) == ((p.names[a], p.names[b]) in lt)


# -- S sets and subposets --------------------------------------------------------------------

def test_s_set_examples():
    b2, b3 = boolean(2), boolean(3)
    assert {b2.names[y] for y in b2.s_set("ab", 1)} == {"a", "b"}
    assert b3.s_set("abc", 0) == (b3.id("abc"),)
    assert {b3.names[y] for y in b3.s_set("abc", 2)} == {"a", "b", "c"}
    assert {b3.names[y] for y in b3.s_set("abc", 3)} == {"*"}
    with pytest.raises(RankOutOfRange):
        b3.s_set("ab", 3)


def test_slice_level_one_is_empty():
    p = boolean(3)
    assert len(subposet(p, "slice", "abc", 1)) == 0


def test_slice_level_two_is_lower_covers_as_antichain():
    p = boolean(3)
    s = subposet(p, "slice", "abc", 2)
    assert sorted(s.names) == ["ab", "ac", "bc"]
    assert comparability_components(s) == 3


def test_truncation_zero_is_the_poset():
    p = boolean(3)
    assert p.truncation(0) == p


def test_truncation_shifts_ranks():
    p = boolean(3)
    t = p.truncation(1)
    assert t.rank("ab") == 1 and t.rank("abc") == 2 and len(t) == 5


def test_intervals():
    p = boolean(3)
    assert sorted(subposet(p, "open", "*", "abc").names) == ["a", "ab", "ac", "b", "bc", "c"]
    closed = subposet(p, "closed", "a", "abc").ranked()
    assert closed.max_rank == 2 and len(closed) == 4
    assert p.principal("ab") == boolean(2)
    with pytest.raises(BadInterval):
        subposet(p, "open", "ab", "c")
    with pytest.raises(BadInterval):
        subposet(p, "slice", "ab", 3)


# -- uniformity ----------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(5))
def test_boolean_lattices_are_uniform(n):
    assert is_uniform(boolean(n))
    assert brute_uniform(boolean(n))[0]


def test_split_lower_covers_witness():
    v = is_uniform(SPLIT)
    assert not v and v.witness == "x"
    assert sorted(sorted(c) for c in v.classes) == [["u"], ["v"]]
    assert brute_uniform(SPLIT) == (False, "x", [["u"], ["v"]])


def test_chains_are_uniform():
    assert all(is_uniform(chain(n)) for n in range(7))


@given(random_posets())
def test_uniformity_matches_definition(p):
    assert bool(is_uniform(p)) == brute_uniform(p)[0]


@given(random_posets(), st.integers(0, 3))
def test_truncation_preserves_uniformity(p, k):
    if is_uniform(p) and k <= p.max_rank:
        assert is_uniform(p.truncation(k))


@given(random_posets())
def test_connected_long_intervals_imply_uniform(p):
    # when every open interval of length >= 3 is connected, the poset is uniform
    connected = all(comparability_components(subposet(p, "open", a, b)) == 1
                    for a in range(len(p)) for b in range(len(p))
                    if p.lt(a, b) and p.ranks[b] - p.ranks[a] >= 3)
    if connected:
        assert is_uniform(p)


# -- flags and components ----------------------------------------------------------------------

def test_cyclic_and_pure():
    assert boolean(3).is_cyclic() and boolean(3).is_pure()
    antichain = parse("a > *\nb > *")
    assert not antichain.is_cyclic() and antichain.is_pure()
    assert not parse("a > *\nb > *\nc > a").is_pure()


def test_two_component_open_interval():
    # (z, Y) contains two incomparable chains u1 < u2 and w1 < w2
    p = parse("z > *\nu1 > z\nw1 > z\nu2 > u1\nw2 > w1\nY > u2\nY > w2")
    sub = subposet(p, "open", "z", "Y")
    assert comparability_components(sub) == 2
    # oracle: number of components = dim H^0 of the order complex
    from koszulkit.order_complex import cohomology
    assert cohomology(build(sub)).dim(0) == 2


# -- wedge ---------------------------------------------------------------------------------

def test_wedge_of_chains_cardinality():
    w = wedge(chain(2), chain(2), "c1", "c1")
    assert len(w) == len(chain(2)) + len(chain(2)) - 2 == 4
    assert w.rank_profile() == (1, 1, 2)


def test_wedge_of_b2_is_uniform_six_elements():
    w = wedge(boolean(2), boolean(2), "a", "a")
    assert len(w) == 6
    assert is_uniform(w) and brute_uniform(w)[0]


def test_wedge_needs_rank_one():
    with pytest.raises(RankNotOne):
        wedge(boolean(2), boolean(2), "ab", "a")


def test_wedge_order_complex_cell_counts():
    # Δ(Γ∨Ω minus *) glues the two complexes at one vertex
    g, o = boolean(3), hat(simplex_boundary(2))
    w = wedge(g, o, "a", "a")
    cg = build(g, range(1, len(g))).cell_counts()
    co = build(o, range(1, len(o))).cell_counts()
    cw = build(w, range(1, len(w))).cell_counts()
    top = max(len(cg), len(co))
    pad = lambda c: list(c) + [0] * (top - len(c))  # noqa: E731
    expected = [x + y for x, y in zip(pad(cg), pad(co))]
    expected[0] -= 1
    assert list(cw) == expected


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_wedge_symmetric_up_to_isomorphism(s1, s2):
    g = random_ranked([2, 2], 0.6, s1, uniform=True)
    o = random_ranked([2, 1], 0.6, s2, uniform=True)
    a = wedge(g, o, g.names[1], o.names[1])
    b = wedge(o, g, o.names[1], g.names[1])
    assert len(a) == len(g) + len(o) - 2
    assert is_isomorphic(a, b)
    assert bool(is_uniform(a)) == (bool(is_uniform(g)) and bool(is_uniform(o)))


# -- generators ----------------------------------------------------------------------------

def test_boolean_three():
    p = boolean(3)
    assert len(p) == 8 and p.rank_profile() == (1, 3, 3, 1)


def test_prism_over_sphere_cell_counts():
    # V, E, F = 4, 6, 4: vertices 2V, edges 2E + V, faces 2F + E, cells F
    V, E, F = 4, 6, 4
    assert prism(3).rank_profile() == (1, 2 * V, 2 * E + V, 2 * F + E, F)


def test_sphere_cross_interval_hat_shape():
    s = sphere_cross_interval_hat()
    assert len(s) == 44 and s.rank_profile() == (1, 8, 16, 14, 4, 1)
    assert s.rank("X") == 5 and s.is_cyclic()


def test_hat_raises_rank():
    p = simplex_boundary(2)
    assert hat(p).max_rank == p.max_rank + 1
    with pytest.raises(BadParams):
        hat(parse("a > *\nb > *\nc > a"))


def test_generate_dispatch():
    assert generate("chain", 3) == chain(3)
    assert generate("hat", ("prism", 2)) == hat(prism(2))
    assert generate("random_ranked", [2, 2], seed=3) == random_ranked([2, 2], seed=3)
    with pytest.raises(BadParams):
        generate("nonsense")
    with pytest.raises(BadParams):
        generate("chain")


def test_random_generator_is_deterministic():
    a = random_ranked([3, 3, 1], 0.5, 11, uniform=True, pure=True)
    b = random_ranked([3, 3, 1], 0.5, 11, uniform=True, pure=True)
    assert a == b and a.to_text() == b.to_text()
    assert a.is_cyclic() and is_uniform(a)
