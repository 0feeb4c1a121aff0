"""Normal lattice enumeration against the brute-force subgroup oracle."""

import pytest

from chiefblocks import named
from chiefblocks.errors import (
    DifferentParents,
    NodeCapExceeded,
    NotNested,
    OracleBoundExceeded,
)
from chiefblocks.group import direct_product, is_normal_in
from chiefblocks.lattice import (
    chief_factors,
    chief_series_iter,
    is_chief_factor,
    join,
    jordan_holder_length,
    meet,
    normal_subgroups,
    oracle_all_subgroups,
    oracle_normal_subgroups,
)


def test_oracle_subgroup_counts():
    assert len(oracle_all_subgroups(named.klein_four())) == 5
    assert len(oracle_all_subgroups(named.cyclic(6))) == 4
    assert len(oracle_all_subgroups(named.symmetric(4))) == 30


def test_oracle_bound_enforced():
    with pytest.raises(OracleBoundExceeded):
        oracle_all_subgroups(named.extraspecial32().group)


def test_lattice_matches_oracle_on_small_corpus(small_corpus):
    extra = {"C6": named.cyclic(6), "C12": named.cyclic(12),
             "S3": named.symmetric(3), "A4": named.alternating(4)}
    for g in list(small_corpus.values()) + list(extra.values()):
        computed = {n.members for n in normal_subgroups(g).nodes}
        oracle = {s.members for s in oracle_normal_subgroups(g)}
        assert computed == oracle


def test_lattice_node_orders():
    assert [n.order for n in normal_subgroups(named.symmetric(4)).nodes] \
        == [1, 4, 12, 24]
    assert [n.order for n in normal_subgroups(named.alternating(5)).nodes] \
        == [1, 60]
    a5 = named.alternating(5)
    assert [n.order for n in normal_subgroups(direct_product(a5, a5)).nodes] \
        == [1, 60, 60, 3600]


def test_lattice_closed_under_join_and_meet(small_corpus):
    for g in small_corpus.values():
        lat = normal_subgroups(g)
        members = {n.members for n in lat.nodes}
        for a in lat.nodes:
            for b in lat.nodes:
                assert join(a, b).members in members
                assert meet(a, b).members in members


def test_join_meet_examples():
    a5 = named.alternating(5)
    prod = direct_product(a5, a5)
    assert join(prod.left_factor, prod.right_factor).order == 3600
    assert meet(prod.left_factor, prod.left_factor).members \
        == prod.left_factor.members
    es = named.extraspecial32()
    assert meet(es.left_image, es.right_image).order == 2
    with pytest.raises(DifferentParents):
        join(prod.left_factor, named.alternating(5).whole())


def test_is_chief_factor_examples():
    s4 = named.symmetric(4)
    lat = normal_subgroups(s4)
    v4 = next(n for n in lat.nodes if n.order == 4)
    a4 = next(n for n in lat.nodes if n.order == 12)
    assert is_chief_factor(s4, a4, v4)
    assert not is_chief_factor(s4, s4.whole(), s4.trivial_subgroup())
    a5 = named.alternating(5)
    assert is_chief_factor(a5, a5.whole(), a5.trivial_subgroup())
    with pytest.raises(NotNested):
        is_chief_factor(s4, v4, a4)


def test_chief_factor_counts(corpus):
    assert len(chief_factors(corpus["V4"])) == 6
    assert len(chief_factors(corpus["A5"])) == 1
    factors = chief_factors(corpus["A5xA5"])
    assert len(factors) == 4
    from chiefblocks.factors import is_abelian_factor
    assert not any(is_abelian_factor(f) for f in factors)


def test_chief_series_counts(corpus):
    assert len(list(chief_series_iter(corpus["V4"]))) == 3
    assert len(list(chief_series_iter(corpus["A5"]))) == 1
    s4_series = list(chief_series_iter(corpus["S4"]))
    assert len(s4_series) == 1
    assert [n.order for n in s4_series[0]] == [1, 4, 12, 24]
    assert len(list(chief_series_iter(corpus["V4"], max_series=2))) == 2


def test_series_steps_are_chief(small_corpus):
    for g in small_corpus.values():
        lat = normal_subgroups(g)
        for series in chief_series_iter(g, lat=lat):
            for lo, hi in zip(series, series[1:]):
                assert is_chief_factor(g, hi, lo, lat)


def test_equal_series_lengths(corpus):
    for name in ("V4", "S4", "Q8", "D8", "SL23", "SL25", "ES32",
                 "A5xA5", "A5wrC2"):
        jordan_holder_length(corpus[name])


def test_node_cap_enforced():
    c2 = named.cyclic(2)
    g = direct_product(direct_product(c2, c2),
                       direct_product(c2, c2))
    g = direct_product(g, c2)  # elementary abelian of order 32
    with pytest.raises(NodeCapExceeded):
        normal_subgroups(g, node_cap=20)


def test_sublattice_of_subgroup():
    wr = named.a5_wr_c2()
    lat = normal_subgroups(wr)
    assert [n.order for n in lat.nodes] == [1, 3600, 7200]
    base = next(n for n in lat.nodes if n.order == 3600)
    sub_lat = normal_subgroups(base)
    assert [n.order for n in sub_lat.nodes] == [1, 60, 60, 3600]
    # coordinates are normal in the base but not in the wreath product
    coord = next(n for n in sub_lat.nodes if n.order == 60)
    assert is_normal_in(coord, base)
    assert not is_normal_in(coord, wr.whole())


def test_hasse_covers_of_klein_four():
    v4 = named.klein_four()
    lat = normal_subgroups(v4)
    assert len(lat.covers()) == 6
    bottom = lat.index_of(v4.trivial_subgroup())
    assert sum(1 for i, j in lat.covers() if i == bottom) == 3
