import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tsperfect.hypercube import VectorSet, from_support, is_downward_closed, submasks
from tsperfect.metrics import (
    Covering,
    DimensionError,
    MetricMatrix,
    Poset,
    WeightAxiomError,
    WeightTable,
    ball,
    comb_weight,
    decoding_equivalent,
    extend_weight,
    hamming_table,
    is_ts_ball,
    matrix_from_weight,
    max_weight,
    metrize_by_rank,
    metrized_radius,
    poset_weight,
    s_sum_literal,
    table_from,
    two_level_weight,
    validate_c1c2c3,
    validate_weight,
)


def e(*idx):
    return from_support(idx)


F1 = Covering.of(4, [[1, 2], [1, 3], [1, 4]])
D14 = VectorSet(4, frozenset({0, e(1), e(2), e(3), e(4), e(1, 2), e(1, 3), e(1, 4)}))
D24 = VectorSet(4, frozenset({0, e(1), e(2), e(3), e(4), e(1, 2), e(1, 3), e(2, 3)}))
D16 = VectorSet(6, frozenset({0, *(e(i) for i in range(1, 7)), e(1, 2)}))
REJECTED = VectorSet(4, frozenset({0, e(1), e(2), e(3), e(4), e(1, 3), e(1, 4), e(1, 3, 4)}))


def random_tables(n, count, seed, high=9):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        w = rng.integers(1, high, size=1 << n)
        w[0] = 0
        yield WeightTable(n, w)


class TestPoset:
    def test_chain_weights(self):
        chain = Poset.from_covers(3, [(1, 2), (2, 3)])
        assert poset_weight(chain, e(3)) == 3
        assert len(oracles.brute_ideal(3, [(0, 1), (1, 2)], e(2))) == 2
        assert poset_weight(chain, e(2)) == 2
        assert poset_weight(chain, 0) == 0
        assert ball(table_from(chain), 0, 3) == VectorSet.full(3)

    def test_closure_and_covers(self):
        p = Poset.from_covers(4, [(1, 2), (2, 3), (3, 4), (1, 3)])
        assert p.leq(1, 4)
        assert not p.leq(4, 1)
        assert p.covers() == [(1, 2), (2, 3), (3, 4)]
        assert p == Poset.chain(4)

    def test_cycle_rejected(self):
        with pytest.raises(ValueError, match="cycle"):
            Poset.from_covers(3, [(1, 2), (2, 3), (3, 1)])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            poset_weight(Poset.chain(3), 0b1000)

    @settings(max_examples=60)
    @given(st.integers(1, 6), st.data())
    def test_weight_matches_ideal_oracle(self, n, data):
        pairs = [(a, b) for a in range(n) for b in range(n) if a < b]
        rel = data.draw(st.lists(st.sampled_from(pairs), max_size=8)) if pairs else []
        p = Poset.from_covers(n, [(a + 1, b + 1) for a, b in rel])
        table = table_from(p)
        for v in range(1 << n):
            expected = len(oracles.brute_ideal(n, rel, v))
            assert poset_weight(p, v) == expected == table[v]


class TestCombinatorial:
    def test_pair_needs_two_blocks(self):
        assert oracles.brute_min_cover(e(2, 3), F1.masks) == 2
        assert comb_weight(F1, e(2, 3)) == 2
        assert comb_weight(F1, 0) == 0

    def test_unit_ball_is_table_tile(self):
        assert ball(table_from(F1), 0, 1) == D14

    def test_covering_validation(self):
        with pytest.raises(ValueError, match="missing"):
            Covering.of(4, [[1, 2], [3]])
        with pytest.raises(ValueError, match="duplicate"):
            Covering.of(2, [[1, 2], [2, 1]])

    @settings(max_examples=60)
    @given(st.integers(1, 6), st.data())
    def test_matches_brute_cover(self, n, data):
        blocks = data.draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=6, unique=True))
        union = 0
        for b in blocks:
            union |= b
        rest = ((1 << n) - 1) & ~union
        if rest:
            blocks.append(rest)
        cov = Covering.of(n, [[i + 1 for i in range(n) if (b >> i) & 1] for b in blocks])
        table = table_from(cov)
        for v in range(1 << n):
            expected = oracles.brute_min_cover(v, cov.masks)
            assert comb_weight(cov, v) == expected == table[v]


class TestTableFrom:
    def test_antichain_is_hamming(self):
        assert table_from(Poset.from_covers(7, [])) == hamming_table(7)

    def test_singletons_are_hamming(self):
        assert table_from(Covering.singletons(5)) == hamming_table(5)

    def test_explicit_triangle_failure(self):
        # w[e1 + e2] = 3 > w[e1] + w[e2]
        with pytest.raises(WeightAxiomError) as info:
            table_from([0, 1, 1, 3])
        assert info.value.kind == "triangle"
        assert info.value.witness == (1, 2)


class TestValidate:
    def test_hamming(self):
        v = validate_weight(hamming_table(4))
        assert v.is_weight and v.is_ts

    def test_two_level_tables(self):
        for tile in (D14, D24, D16):
            assert validate_weight(two_level_weight(tile)).ok

    def test_zero_and_positivity(self):
        assert validate_weight(WeightTable(1, [1, 1])).kind == "zero"
        assert validate_weight(WeightTable(2, [0, 1, 0, 1])).kind == "positivity"

    def test_ts_witness(self):
        # a weight (values in {1, 2}) that does not respect support
        v = validate_weight(WeightTable(2, [0, 2, 1, 1]))
        assert v.is_weight and not v.is_ts
        u, w = v.ts_witness
        assert u & w == u and u != w

    def test_literal_ssum_counterexample(self):
        h = hamming_table(3)
        res = s_sum_literal(h, 1, h, 1)
        assert res.verdict.kind == "triangle"
        assert res.verdict.witness == (e(1), e(2))
        t = res.table
        assert t[e(1) ^ e(2)] == 3 > t[e(1)] + t[e(2)] == 2


class TestBall:
    def test_hamming_unit_ball(self):
        assert ball(hamming_table(7), 0, 1) == VectorSet(7, frozenset({0, *(e(i) for i in range(1, 8))}))

    @given(st.integers(0, 31))
    def test_radius_zero(self, c):
        assert ball(hamming_table(5), c, 0) == VectorSet(5, frozenset({c}))

    def test_table_two_last_row(self):
        f4 = Covering.of(6, [[1, 2], [3], [4], [5], [6]])
        assert ball(table_from(f4), 0, 1) == D16


class TestTwoLevel:
    def test_small_ball(self):
        d = VectorSet(3, frozenset({0, e(1)}))
        assert ball(two_level_weight(d), 0, 1) == d

    def test_table_tile(self):
        w = two_level_weight(D24)
        assert validate_weight(w).ok
        assert ball(w, 0, 1) == D24

    def test_whole_space(self):
        w = two_level_weight(VectorSet.full(3))
        assert list(w.weights) == [0] + [1] * 7
        assert ball(w, 0, 1) == VectorSet.full(3)

    def test_precondition(self):
        with pytest.raises(WeightAxiomError):
            two_level_weight(REJECTED)
        with pytest.raises(WeightAxiomError):
            two_level_weight(VectorSet(2, frozenset({1})))


class TestIsTsBall:
    def test_rejected_example(self):
        v = is_ts_ball(REJECTED)
        assert not v
        assert v.witness == (e(1, 3, 4), e(3, 4))

    def test_b2(self):
        v = is_ts_ball(VectorSet(5, frozenset({0, e(1), e(3), e(5)})))
        assert v and v.radius == 1
        assert ball(v.table, 0, 1) == VectorSet(5, frozenset({0, e(1), e(3), e(5)}))

    def test_errors(self):
        with pytest.raises(ValueError):
            is_ts_ball(VectorSet(2, frozenset()))
        with pytest.raises(ValueError):
            is_ts_ball(VectorSet(2, frozenset({1, 3})))


class TestExtend:
    def test_ball_preserved(self):
        w = extend_weight(table_from(F1), 6)
        assert ball(w, 0, 1) == D14.embed(6)
        assert validate_weight(w).ok

    def test_identity(self):
        t = table_from(F1)
        assert extend_weight(t, 4) == t

    def test_outside_gets_max_plus_one(self):
        w = extend_weight(hamming_table(3), 6)
        assert w[e(4)] == 4

    def test_shrinking_rejected(self):
        with pytest.raises(DimensionError):
            extend_weight(hamming_table(3), 2)

    def test_all_radii_up_to_max(self):
        base = table_from(Poset.chain(3))
        w = extend_weight(base, 5)
        for r in range(base.max_weight + 1):
            assert ball(w, 0, r) == ball(base, 0, r).embed(5)

    def test_ts_status_preserved_both_ways(self):
        not_ts = WeightTable(2, [0, 2, 1, 1])
        assert not validate_weight(extend_weight(not_ts, 4)).is_ts
        assert validate_weight(extend_weight(hamming_table(2), 4)).is_ts


class TestMaxWeight:
    def test_same_radius(self):
        h = hamming_table(3)
        d = ball(h, 0, 1)
        w = max_weight(h, h)
        assert ball(w, 0, 1) == d.concat(d)
        assert w[0] == 0
        assert validate_weight(w).ok

    def test_scaled_different_radii(self):
        h = hamming_table(3)
        w = max_weight(h, h, 2, 1)
        assert ball(w, 0, 2) == ball(h, 0, 1).concat(ball(h, 0, 2))

    def test_scaled_sublevels_exhaustive(self):
        tables = [hamming_table(2), table_from(Poset.chain(3)), table_from(Covering.of(3, [[1, 2], [3]]))]
        for t1, t2 in itertools.product(tables, repeat=2):
            for r in range(1, t1.max_weight + 1):
                for s in range(1, t2.max_weight + 1):
                    w = max_weight(t1, t2, s, r)
                    assert ball(w, 0, r * s) == ball(t1, 0, r).concat(ball(t2, 0, s))
                    assert validate_weight(w).ok


class TestSSum:
    def test_formula(self):
        h = hamming_table(3)
        res = s_sum_literal(h, 1, h, 2)
        d = ball(h, 0, 1).concat(ball(h, 0, 2))
        for x in range(1 << 6):
            x1, x2 = x & 7, x >> 3
            if x in d:
                assert res.table[x] == h[x1] + h[x2]
            else:
                assert res.table[x] == 4
        assert res.table[0] == 0
        assert ball(res.table, 0, res.level) == d

    def test_requires_ordered_radii(self):
        with pytest.raises(ValueError):
            s_sum_literal(hamming_table(2), 2, hamming_table(2), 1)


class TestMetrize:
    def test_two_valued(self):
        out = metrize_by_rank(WeightTable(2, [0, 1, 2, 2]))
        assert list(out.weights) == [0, 2, 3, 3]

    def test_hamming(self):
        out = metrize_by_rank(hamming_table(3))
        assert sorted(set(out.weights[1:])) == [3, 4, 5]
        assert decoding_equivalent(out, hamming_table(3)).equivalent

    def test_repairs_literal_ssum(self):
        h = hamming_table(3)
        res = s_sum_literal(h, 1, h, 1)
        out = metrize_by_rank(res.table)
        assert validate_weight(out).ok
        assert ball(out, 0, metrized_radius(res.table, 2)) == ball(res.table, 0, 2)

    def test_rank_formula_oracle(self):
        for t in random_tables(3, 20, seed=1):
            vals = sorted(set(int(x) for x in t.weights[1:]))
            k = len(vals)
            expected = [0] + [k + vals.index(int(x)) for x in t.weights[1:]]
            assert list(metrize_by_rank(t).weights) == expected

    def test_always_a_weight(self):
        for n in (2, 3, 4):
            for t in random_tables(n, 25, seed=n):
                assert validate_weight(metrize_by_rank(t)).is_weight

    def test_preserves_ts(self):
        for t in (two_level_weight(D24), table_from(Poset.chain(4)), WeightTable(2, [0, 2, 1, 1])):
            assert validate_weight(metrize_by_rank(t)).is_ts == validate_weight(t).is_ts

    def test_idempotent_up_to_equivalence(self):
        for t in random_tables(3, 10, seed=7):
            once = metrize_by_rank(t)
            assert metrize_by_rank(once) == once
            assert decoding_equivalent(once, t).equivalent

    def test_precondition(self):
        with pytest.raises(WeightAxiomError):
            metrize_by_rank(WeightTable(1, [0, 0]))


class TestDecodingEquivalence:
    def test_scaling(self):
        h = hamming_table(4)
        assert decoding_equivalent(h, h.scaled(2)).equivalent

    def test_hamming_vs_chain(self):
        h = hamming_table(3)
        chain = table_from(Poset.chain(3))
        res = decoding_equivalent(h, chain)
        assert not res.equivalent
        assert res.witness == (e(3), e(1, 2))
        u, v = res.witness
        assert h[u] < h[v] and chain[u] > chain[v]

    def test_witness_always_real(self):
        for a, b in zip(random_tables(3, 30, seed=3, high=4), random_tables(3, 30, seed=4, high=4)):
            res = decoding_equivalent(a, b)
            brute = oracles.brute_order_agree(a.weights, b.weights)
            assert res.equivalent == (brute is None)
            if not res.equivalent:
                u, v = res.witness
                assert (a[u] < a[v]) != (b[u] < b[v])

    def test_matches_argmin_definition(self):
        # equivalent weights give identical minimum-distance decoders
        rng = np.random.default_rng(11)
        for t in random_tables(3, 10, seed=5):
            m = metrize_by_rank(t)
            for _ in range(20):
                code = sorted(set(rng.integers(0, 8, size=3).tolist()))
                for x in range(8):
                    assert oracles.argmin_decoder(t.weights, code, x) == oracles.argmin_decoder(m.weights, code, x)

    def test_equivalence_relation(self):
        tabs = list(random_tables(2, 12, seed=9, high=3))
        rel = [[decoding_equivalent(a, b).equivalent for b in tabs] for a in tabs]
        for i in range(len(tabs)):
            assert rel[i][i]
            for j in range(len(tabs)):
                assert rel[i][j] == rel[j][i]
                for k in range(len(tabs)):
                    if rel[i][j] and rel[j][k]:
                        assert rel[i][k]

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            decoding_equivalent(hamming_table(2), hamming_table(3))


class TestMatrix:
    def test_two_level_passes(self):
        w = two_level_weight(D24)
        m = matrix_from_weight(w)
        assert validate_c1c2c3(m, D24, 1, w).ok
        assert m.translation_form()
        assert m.first_row() == w

    def test_c2_violation(self):
        w = two_level_weight(D14)
        m = matrix_from_weight(w).m.copy()
        x = e(2, 3)
        m[x, 0] = 1
        verdict = validate_c1c2c3(MetricMatrix(4, m), D14, 1, w)
        assert verdict.condition == "C2" and verdict.witness == (x,)

    def test_c1_violation(self):
        w = two_level_weight(D14)
        m = matrix_from_weight(w).m.copy()
        m[e(1), 0] = 5
        verdict = validate_c1c2c3(MetricMatrix(4, m), D14, 1, w)
        assert verdict.condition == "C1"

    def test_c3_violation(self):
        w = two_level_weight(D14)
        m = matrix_from_weight(w).m.copy()
        m[3, 5] = 9
        verdict = validate_c1c2c3(MetricMatrix(4, m), D14, 1, w)
        assert verdict.condition == "C3" and verdict.witness == (3, 5)

    @given(st.lists(st.integers(1, 6), min_size=7, max_size=7))
    def test_c3_by_construction(self, vals):
        m = matrix_from_weight(WeightTable(3, [0, *vals]))
        assert m.translation_form()


def test_sublevel_sets_downward_closed_iff_ts():
    # small value range makes the search exhaustive over all tables for n <= 2
    for n in (1, 2):
        for vals in itertools.product(range(1, 4), repeat=(1 << n) - 1):
            t = WeightTable(n, [0, *vals])
            closed = all(is_downward_closed(ball(t, 0, r)) for r in range(4))
            assert closed == validate_weight(t).is_ts


def test_ts_tables_have_ts_subsets():
    for members in oracles.all_downsets(3):
        t = two_level_weight(VectorSet(3, members))
        for v in range(8):
            assert all(t[u] <= t[v] for u in submasks(v))
