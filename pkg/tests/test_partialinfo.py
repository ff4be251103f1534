import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import minimax_by_presentations
from starsearch.core import Instance, simulate
from starsearch.errors import CapacityError, DomainError
from starsearch.offline import opt
from starsearch.partialinfo import (
    PartialMultiset,
    SignedInstance,
    check_reduction,
    intrinsic_cost,
    presentations,
    reduce_ws_instance,
    run_ss,
    run_ws,
    signed_baseline,
    ws_from_signed,
)
from starsearch.strategies import ADSCH, CLASSIC

EXAMPLE = PartialMultiset(((1, 1), (5, 0)), 1)

small_pairs = st.lists(
    st.tuples(st.sampled_from([1.0, 2.0, 3.0, 5.0]), st.sampled_from([0.0, 0.5, 1.0])),
    min_size=1,
    max_size=3,
)


def all_small_multisets(max_m=3):
    values = [(d, w) for d in (1.0, 2.0, 4.0) for w in (0.0, 1.0)]
    for m in range(1, max_m + 1):
        for pairs in itertools.combinations_with_replacement(values, m):
            if sum(w for _, w in pairs) >= 1:
                yield PartialMultiset(pairs, 1)


class TestMultiset:
    def test_sorted_and_typed(self):
        lam = PartialMultiset([(5, 0), (1, 1)], 1)
        assert lam.pairs == ((1.0, 1.0), (5.0, 0.0)) and lam.m == 2

    def test_goal_out_of_reach(self):
        with pytest.raises(DomainError):
            PartialMultiset([(1, 0.5)], 1)

    def test_bad_pair(self):
        with pytest.raises(DomainError):
            PartialMultiset([(0.5, 1)], 1)
        with pytest.raises(DomainError):
            PartialMultiset([], 0)

    def test_of_instance(self):
        lam = PartialMultiset.of(Instance.from_pairs([(5, 0), (1, 1)], 1))
        assert lam == EXAMPLE
        with pytest.raises(DomainError):
            PartialMultiset.of(Instance.from_pairs([(5, 1), None], 1))

    def test_dict_roundtrip(self):
        assert PartialMultiset.from_dict(EXAMPLE.to_dict()) == EXAMPLE


class TestPresentations:
    def test_counts(self):
        assert len(list(presentations(EXAMPLE))) == 2
        assert len(list(presentations(PartialMultiset([(1, 1), (1, 1)], 1)))) == 1
        assert len(list(presentations(PartialMultiset([(1, 1), (2, 1), (3, 0)], 1)))) == 6

    def test_multiplicities(self):
        # 4! / (2! 2!) distinct orders
        lam = PartialMultiset([(1, 1), (1, 1), (2, 0), (2, 0)], 1)
        insts = list(presentations(lam))
        assert len(insts) == 6 and len(set(insts)) == 6

    def test_each_is_the_multiset(self):
        lam = PartialMultiset([(1, 1), (2, 1), (3, 0)], 1)
        for inst in presentations(lam):
            assert PartialMultiset.of(inst) == lam

    def test_guard(self):
        lam = PartialMultiset([(k + 1, 1) for k in range(9)], 1)
        with pytest.raises(CapacityError):
            next(presentations(lam))


class TestIntrinsicCost:
    def test_documented_example(self):
        assert intrinsic_cost(EXAMPLE) == 3.0

    def test_identical_pairs(self):
        assert intrinsic_cost(PartialMultiset([(1, 1), (1, 1)], 1)) == 1.0

    @pytest.mark.parametrize("d", [1.0, 2.5, 40.0])
    def test_single_ray(self, d):
        assert intrinsic_cost(PartialMultiset([(d, 1)], 1)) == d

    def test_zero_goal(self):
        assert intrinsic_cost(PartialMultiset([(3, 1), (4, 0)], 0)) == 0.0

    def test_guard(self):
        with pytest.raises(CapacityError):
            intrinsic_cost(PartialMultiset([(k + 1, 1) for k in range(5)], 1))

    def test_two_heavy_targets(self):
        # one excursion to 4 hits something either way; probing 2 first
        # costs 4 + 2 when the near target is on the other ray
        assert intrinsic_cost(PartialMultiset([(2, 1), (4, 1)], 1)) == 4.0

    @pytest.mark.parametrize("lam", list(all_small_multisets()), ids=str)
    def test_matches_presentation_set_search(self, lam):
        assert intrinsic_cost(lam) == minimax_by_presentations(lam.pairs, lam.W)

    @given(small_pairs, st.sampled_from([0.5, 1.0, 1.5]))
    def test_matches_on_fractional_weights(self, pairs, W):
        assume(sum(w for _, w in pairs) >= W)
        lam = PartialMultiset(pairs, W)
        assert intrinsic_cost(lam) == minimax_by_presentations(lam.pairs, lam.W)

    @given(small_pairs, st.sampled_from([0.5, 1.0]))
    def test_at_least_full_information(self, pairs, W):
        assume(sum(w for _, w in pairs) >= W)
        lam = PartialMultiset(pairs, W)
        # every presentation must be served, each at least at its own optimum
        worst_known = max(opt(inst) for inst in presentations(lam))
        assert intrinsic_cost(lam) >= worst_known

    @given(small_pairs, st.randoms())
    def test_listing_order_irrelevant(self, pairs, rnd):
        assume(sum(w for _, w in pairs) >= 0.5)
        shuffled = list(pairs)
        rnd.shuffle(shuffled)
        assert intrinsic_cost(PartialMultiset(pairs, 0.5)) == intrinsic_cost(PartialMultiset(shuffled, 0.5))


class TestSigned:
    def test_needs_a_one(self):
        with pytest.raises(DomainError):
            SignedInstance((1.0, 2.0), (0, 0))
        with pytest.raises(DomainError):
            SignedInstance((1.0,), (2,))
        with pytest.raises(DomainError):
            SignedInstance((1.0, 2.0), (1,))

    def test_baseline_single_ray(self):
        assert run_ss(signed_baseline(), SignedInstance((7.0,), (1,))).total_cost == 7.0

    def test_baseline_zero_then_one(self):
        trace = run_ss(signed_baseline(), SignedInstance((1.0, 1.0), (0, 1)))
        assert trace.total_cost <= 3.0

    def test_baseline_all_ones(self):
        assert run_ss(signed_baseline(), SignedInstance((1.0, 1.0, 1.0), (1, 1, 1))).total_cost == 1.0

    def test_baseline_skips_cleared_rays(self):
        trace = run_ss(signed_baseline(), SignedInstance((1.0, 30.0, 2.0), (0, 1, 0)))
        rays = [e.ray for e in trace.excursions]
        first_zero = rays.index(0)
        assert 0 not in rays[first_zero + 1:]


class TestReduction:
    def test_split(self):
        inst = Instance.from_pairs([(5, 0), (1, 1)], 1)
        I_W, I_s = reduce_ws_instance(inst, {0})
        assert [t.weight for t in I_W.targets] == [0.0, 1.0]
        assert I_s.signs == (0, 1) and I_s.distances == (5.0, 1.0)

    def test_empty_found_set(self):
        inst = Instance.from_pairs([(5, 0.2), (1, 0.3), (2, 0.5)], 1)
        _, I_s = reduce_ws_instance(inst, set())
        assert I_s.signs == (1, 1, 1)

    def test_all_but_one(self):
        inst = Instance.from_pairs([(5, 0.2), (1, 0.3), (2, 0.5)], 1)
        _, I_s = reduce_ws_instance(inst, {0, 2})
        assert sum(I_s.signs) == 1

    def test_heavy_weight_is_goal(self):
        inst = Instance.from_pairs([(5, 0.2), (1, 0.3), (2, 0.5)], 0.8)
        I_W, _ = reduce_ws_instance(inst, {1})
        assert [t.weight for t in I_W.targets] == [0.8, 0.0, 0.8]

    def test_wrapped_trace_equals_signed_trace(self):
        inst = Instance.from_pairs([(5, 0), (1, 1)], 1)
        trace, F = run_ws(signed_baseline(), inst)
        _, I_s = reduce_ws_instance(inst, F)
        ss = run_ss(signed_baseline(), I_s)
        assert trace.excursions == ss.excursions

    def test_zero_goal(self):
        trace = simulate(ws_from_signed(signed_baseline()), Instance.from_pairs([(5, 0), (1, 1)], 0))
        assert trace.total_cost == 0.0

    def test_single_ray(self):
        trace = simulate(ws_from_signed(signed_baseline()), Instance.from_pairs([(4.5, 1)], 1))
        assert trace.total_cost == 4.5

    def test_wrapper_hides_weights(self):
        # a weight-blind inner strategy moves the same way; the run still
        # stops on the true weight
        inst = Instance.from_pairs([(1, 0.5), (20, 0.5), (3, 0.5)], 1.0)
        wrapped = simulate(ws_from_signed(CLASSIC), inst)
        plain = simulate(CLASSIC, inst)
        assert wrapped.excursions == plain.excursions

    @pytest.mark.parametrize("lam", list(all_small_multisets()), ids=str)
    def test_every_presentation(self, lam):
        for check in check_reduction(lam):
            assert check.same_moves
            assert check.ws_cost == check.ss_cost
            assert check.xi_w >= check.xi_s

    def test_other_signed_strategy(self):
        for lam in all_small_multisets(2):
            assert all(c.ok for c in check_reduction(lam, ADSCH))
