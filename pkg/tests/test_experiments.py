import csv
import io
import json

import numpy as np
import pytest

from starsearch.core import Instance, SubsetInstance
from starsearch.errors import DomainError, GenerationError
from starsearch.experiments import (
    COLUMNS,
    RESAMPLE_CAP,
    WRule,
    all_pass,
    random_instances,
    random_subset_instances,
    sweep,
    weighted_row,
    write_rows,
)
from starsearch.offline import s_of
from starsearch.strategies import ADSCH, ADSUB, CLASSIC, NAIVE


class TestWRule:
    def test_parse(self):
        assert WRule.parse("fraction:0.25") == WRule("fraction", 0.25)
        assert WRule.parse("fixed:2").goal(10.0) == 2.0
        assert WRule.parse("fraction:0.5").goal(3.0) == 1.5

    @pytest.mark.parametrize("text", ["fraction", "fraction:1.5", "fixed:-1", "half:0.5", "fixed:"])
    def test_rejects(self, text):
        with pytest.raises((DomainError, ValueError)):
            WRule.parse(text)


class TestGenerators:
    def test_same_seed_same_stream(self):
        a = random_instances(7, (2, 6), 50)
        b = random_instances(7, (2, 6), 50)
        assert a == b
        assert a != random_instances(8, (2, 6), 50)

    def test_m_range_inclusive(self):
        ms = {inst.m for inst in random_instances(1, (2, 4), 300)}
        assert ms == {2, 3, 4}

    def test_ranges_respected(self):
        for inst in random_instances(3, 5, 100, distance_range=(2, 9), weight_range=(0.5, 1.0)):
            for t in inst.targets:
                assert 2 <= t.distance <= 9 and 0.5 <= t.weight <= 1.0

    def test_unit_distances(self):
        insts = random_instances(0, 4, 20, distance_range=(1, 1))
        assert all(t.distance == 1.0 for inst in insts for t in inst.targets)

    def test_fraction_one_forces_every_weighted_target(self):
        for inst in random_instances(2, 5, 50, W_rule="fraction:1.0"):
            positive = sum(t.weight > 0 for t in inst.targets)
            assert s_of(inst)[0] >= positive

    def test_resample_cap(self):
        # a fixed goal of 10 is out of reach for five weights below 1
        with pytest.raises(GenerationError):
            random_instances(0, 5, 1, W_rule="fixed:10")
        assert RESAMPLE_CAP == 1000

    def test_absent_rays(self):
        insts = random_instances(4, 6, 100, absent_prob=0.5)
        assert any(t is None for inst in insts for t in inst.targets)
        assert all(inst.feasible for inst in insts)

    @pytest.mark.parametrize("rng_range", [(0.5, 2), (5, 2)])
    def test_bad_distance_range(self, rng_range):
        with pytest.raises(DomainError):
            random_instances(0, 3, 1, distance_range=rng_range)

    def test_subset_instances(self):
        insts = random_subset_instances(5, (1, 8), 200, absent_prob=0.3)
        assert insts == random_subset_instances(5, (1, 8), 200, absent_prob=0.3)
        for inst in insts:
            assert isinstance(inst, SubsetInstance)
            assert inst.S and all(inst.distances[i] is not None for i in inst.S)


class TestRows:
    def test_columns_fixed(self):
        row = weighted_row("x", Instance.from_pairs([(1, 1), (2, 1), (10, 5)], 2), ADSCH)
        assert tuple(row) == COLUMNS
        assert row["opt"] == 4.0 and row["s_I"] == 2 and row["pass"] is True

    def test_unguaranteed_strategy_not_judged(self):
        rows = sweep("random", CLASSIC, seed=0, m=4, count=20)
        assert all(r["pass"] is None for r in rows)
        assert all_pass(rows)

    def test_adsch_rows_pass(self):
        rows = sweep("random", ADSCH, seed=11, m=5, count=100)
        assert len(rows) == 100 and all(r["pass"] for r in rows)
        assert all(r["ratio"] <= min(r["bound"], r["xi"]) + 1e-9 for r in rows)

    def test_subset_rows_pass(self):
        rows = sweep("subsets-random", ADSUB, seed=3, m=(1, 6), count=200)
        assert all(r["pass"] for r in rows)

    def test_killer_monotone(self):
        rows = sweep("killer", NAIVE, m=4, i_max=20)
        ratios = np.array([r["ratio"] for r in rows])
        assert np.all(np.diff(ratios) > 0)

    def test_sorted_by_id(self):
        rows = sweep("single", ADSUB, m=3, i_max=12)
        assert [r["id"] for r in rows] == sorted(r["id"] for r in rows)

    def test_unknown_family(self):
        with pytest.raises(DomainError):
            sweep("spiral", ADSUB)


class TestSerialization:
    def test_csv_byte_identical(self):
        a = write_rows(sweep("random", ADSCH, seed=5, m=(2, 6), count=30), "csv")
        b = write_rows(sweep("random", ADSCH, seed=5, m=(2, 6), count=30), "csv")
        assert a == b

    def test_json_byte_identical(self):
        a = write_rows(sweep("single", ADSUB, m=2, i_max=8), "json")
        assert a == write_rows(sweep("single", ADSUB, m=2, i_max=8), "json")

    def test_csv_layout(self):
        rows = sweep("random", CLASSIC, seed=1, m=3, count=3)
        parsed = list(csv.reader(io.StringIO(write_rows(rows, "csv"))))
        assert tuple(parsed[0]) == COLUMNS and len(parsed) == 4
        assert parsed[1][COLUMNS.index("pass")] == ""
        # floats round-trip exactly
        assert float(parsed[1][COLUMNS.index("ratio")]) == rows[0]["ratio"]

    def test_json_layout(self):
        rows = sweep("random", ADSCH, seed=1, m=3, count=3)
        data = json.loads(write_rows(rows, "json"))
        assert [list(d) for d in data] == [list(COLUMNS)] * 3
        assert data[0]["pass"] is True

    def test_bad_format(self):
        with pytest.raises(DomainError):
            write_rows([], "xml")
