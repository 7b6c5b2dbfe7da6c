from __future__ import annotations

from collections import Counter

from koszulkit.corpus import random_wedges, search_nkd, small, standard_corpus
from koszulkit.dual_koszul import nkd
from koszulkit.poset import is_uniform
from koszulkit.series import TruncatedSeries


def test_corpus_size_and_families(corpus):
    assert len(corpus) >= 200
    families = Counter(e.family for e in corpus)
    assert {"boolean", "chain", "wedge", "non_cm"} <= set(families)
    assert any(not is_uniform(e.poset) for e in corpus)
    assert len(small(corpus, 10)) >= 50


def test_corpus_names_are_unique(corpus):
    keys = [(e.name, e.poset.content_hash()) for e in corpus]
    assert len(keys) == len(set(keys))


def test_corpus_is_deterministic(corpus):
    again = standard_corpus()
    assert [(e.name, e.poset.content_hash()) for e in again] == \
        [(e.name, e.poset.content_hash()) for e in corpus]


def test_wedges_are_deterministic():
    a = [w.content_hash() for _, _, w in random_wedges(5, seed=3)]
    b = [w.content_hash() for _, _, w in random_wedges(5, seed=3)]
    assert a == b


def test_search_nkd_is_deterministic():
    target = TruncatedSeries.monomial(1, 5)
    first, tried = search_nkd(target, count=200, seed=0)
    second, tried2 = search_nkd(target, count=200, seed=0)
    assert first is not None and tried == tried2
    assert first.content_hash() == second.content_hash()
    assert is_uniform(first) and first.is_cyclic() and nkd(first).series == target


def test_search_nkd_gives_up():
    p, tried = search_nkd(TruncatedSeries.monomial(7, 2), count=5, seed=1)
    assert p is None and tried == 5
