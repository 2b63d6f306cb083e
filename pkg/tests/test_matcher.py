import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domclone.fingerprint import Fingerprint, FingerprintSet
from domclone.frontend import CodeFragment
from domclone.matcher import (
    ClonePair,
    DegenerateFragmentError,
    MatchConfig,
    classify,
    match_corpus,
    prefilter,
    set_delta,
)
from domclone.metrics import Metric


def frag(name: str, start: int = 1, lines: int = 20, file: str = "a.java") -> CodeFragment:
    return CodeFragment(file, name, start, start + lines - 1, lines)


def fp(x) -> Fingerprint:
    return Fingerprint(str(x).encode())


def fset(fragment, paths, counts=None, premerge=None) -> FingerprintSet:
    encoded = [tuple(fp(x) for x in p) for p in paths]
    counts = counts or [1] * len(paths)
    return FingerprintSet(fragment, encoded, counts, premerge or sum(counts))


class TestSetDelta:
    def test_identical_sets(self):
        a = fset(frag("a"), [[1, 2, 3], [1, 4]])
        b = fset(frag("b", start=100), [[1, 2, 3], [1, 4]])
        assert set_delta(a, b, Metric.LCS) == 0.0

    def test_disjoint_alphabets(self):
        a = fset(frag("a"), [[1, 2], [3, 4]])
        b = fset(frag("b", start=100), [[5, 6], [7, 8]])
        assert set_delta(a, b, Metric.LCS) == 1.0

    def test_hand_computed_mean(self):
        # smaller set {p1, p2}; min distances: p1 -> 0, p2 -> 1/3
        a = fset(frag("a"), [[1, 2], [1, 2, 9]])
        b = fset(frag("b", start=100), [[1, 2], [1, 2, 3]])
        assert set_delta(a, b, Metric.LCS) == pytest.approx((0 + 1 / 3) / 2)

    def test_multiplicity_weighting(self):
        a = fset(frag("a"), [[1, 2], [1, 2, 9]], counts=[3, 1])
        b = fset(frag("b", start=100), [[1, 2]])
        # orientation puts b (1 path) on the smaller side: min distance 0
        assert set_delta(a, b, Metric.LCS) == 0.0
        b2 = fset(
            frag("b", start=100),
            [[1, 2], [4, 5], [6, 7], [8, 9], [10, 11]],
        )
        # a is smaller by pre-merge count (4 < 5): (3*0 + 1*(1/3)) / 4
        assert set_delta(a, b2, Metric.LCS) == pytest.approx((1 / 3) / 4)

    def test_degenerate_set(self):
        a = fset(frag("a"), [[1]])
        empty = FingerprintSet(frag("b", start=99), [], [], 0)
        with pytest.raises(DegenerateFragmentError):
            set_delta(a, empty, Metric.LCS)

    @settings(max_examples=150)
    @given(
        pa=st.lists(st.lists(st.integers(0, 3), min_size=1, max_size=5), min_size=1, max_size=4),
        pb=st.lists(st.lists(st.integers(0, 3), min_size=1, max_size=5), min_size=1, max_size=4),
    )
    def test_symmetry(self, pa, pb):
        a = fset(frag("a"), pa)
        b = fset(frag("b", start=100), pb)
        assert set_delta(a, b, Metric.LCS) == set_delta(b, a, Metric.LCS)
        assert set_delta(a, a, Metric.LCS) == 0.0


class TestPrefilter:
    def test_size_factor_skips(self):
        cfg = MatchConfig()
        a = fset(frag("a"), [[1]] * 4)
        b = fset(frag("b", start=100), [[1]] * 8)
        assert prefilter(a, b, cfg) is False

    def test_length_difference_skips(self):
        cfg = MatchConfig()
        a = fset(frag("a"), [list(range(10))])
        b = fset(frag("b", start=100), [list(range(18))])
        assert prefilter(a, b, cfg) is False
        b2 = fset(frag("b", start=100), [list(range(17))])
        assert prefilter(a, b2, cfg) is True

    def test_identical_sets_compare(self):
        cfg = MatchConfig()
        a = fset(frag("a"), [[1, 2], [3]])
        b = fset(frag("b", start=100), [[1, 2], [3]])
        assert prefilter(a, b, cfg) is True


class TestClassify:
    def test_equal_counts_strict(self):
        a = fset(frag("a"), [[1], [2]])
        b = fset(frag("b"), [[3], [4]])
        assert classify(a, b) == "strict"

    def test_unequal_counts_partial(self):
        a = fset(frag("a"), [[1]] * 4)
        b = fset(frag("b"), [[1]] * 6)
        assert classify(a, b) == "partial"

    def test_uses_premerge_counts(self):
        # merged set: 2 retained paths standing for 4 originals
        a = fset(frag("a"), [[1], [2]], counts=[2, 2], premerge=4)
        b = fset(frag("b"), [[1], [2], [3], [4]])
        assert classify(a, b) == "strict"


def corpus(*sets) -> list[FingerprintSet]:
    return list(sets)


class TestMatchCorpus:
    def test_single_fragment_empty_output(self):
        cfg = MatchConfig()
        assert match_corpus(corpus(fset(frag("a"), [[1]])), cfg) == []

    def test_min_lines_filter(self):
        cfg = MatchConfig()
        a = fset(frag("a", lines=10), [[1]])
        b = fset(frag("b", start=100, lines=10), [[1]])
        assert match_corpus(corpus(a, b), cfg) == []
        cfg = MatchConfig(min_clone_lines=10)
        assert len(match_corpus(corpus(a, b), cfg)) == 1

    def test_three_identical_fragments_three_pairs(self):
        cfg = MatchConfig()
        sets = [fset(frag("m", start=1 + 100 * i), [[1, 2], [3]]) for i in range(3)]
        pairs = match_corpus(sets, cfg)
        assert len(pairs) == 3
        assert all(p.delta == 0.0 and p.kind == "strict" for p in pairs)

    def test_no_self_pairs(self):
        cfg = MatchConfig()
        sets = [fset(frag("m", start=1 + 100 * i), [[1, 2]]) for i in range(4)]
        for p in match_corpus(sets, cfg):
            assert (p.left.file_path, p.left.start_line) != (
                p.right.file_path,
                p.right.start_line,
            )

    def test_copy_strategy_equivalence(self):
        rng = random.Random(5)
        sets = []
        for i in range(30):
            paths = [
                [rng.randrange(6) for _ in range(rng.randint(2, 6))]
                for _ in range(rng.randint(1, 4))
            ]
            if i % 3 == 0 and sets:
                # duplicate an earlier fragment's content at a new location
                prev = sets[i - 1]
                sets.append(FingerprintSet(frag("m", start=1 + 97 * i), list(prev.paths),
                                           list(prev.counts), prev.premerge_count))
            else:
                sets.append(fset(frag("m", start=1 + 97 * i), paths))
        on = match_corpus(sets, MatchConfig(tau=0.5, min_clone_lines=0, copy_strategy=True))
        off = match_corpus(sets, MatchConfig(tau=0.5, min_clone_lines=0, copy_strategy=False))
        assert on == off

    def test_threshold_monotonicity(self):
        rng = random.Random(9)
        sets = [
            fset(
                frag("m", start=1 + 50 * i),
                [[rng.randrange(4) for _ in range(rng.randint(2, 6))]
                 for _ in range(rng.randint(1, 3))],
            )
            for i in range(25)
        ]
        previous: set = set()
        for tau in (0.1, 0.2, 0.3, 0.4):
            cfg = MatchConfig(tau=tau, min_clone_lines=0)
            found = {
                (p.left.start_line, p.right.start_line)
                for p in match_corpus(sets, cfg)
                if not p.forced
            }
            assert previous <= found
            previous = found

    def test_parallel_determinism(self):
        rng = random.Random(3)
        sets = [
            fset(
                frag("m", start=1 + 31 * i),
                [[rng.randrange(5) for _ in range(rng.randint(2, 7))]
                 for _ in range(rng.randint(1, 4))],
            )
            for i in range(40)
        ]
        results = [
            match_corpus(sets, MatchConfig(tau=0.4, min_clone_lines=0, threads=t))
            for t in (1, 2, 8)
        ]
        assert results[0] == results[1] == results[2]

    def test_forced_pair_bypasses_threshold(self):
        # a 12-node path embedded in a 40-node path: subpath rule fires even
        # though tau would reject it
        small = fset(frag("a"), [list(range(12))])
        large = fset(frag("b", start=100), [list(range(40))])
        cfg = MatchConfig(tau=0.05, metric=Metric.LCS_MODIFIED, prefilter=False)
        pairs = match_corpus(corpus(small, large), cfg)
        assert len(pairs) == 1
        assert pairs[0].forced
        assert pairs[0].delta == 0.0
        # same corpus under plain LCS: rejected
        cfg = MatchConfig(tau=0.05, metric=Metric.LCS, prefilter=False)
        assert match_corpus(corpus(small, large), cfg) == []

    def test_prefilter_skips_recorded_as_nonclone(self):
        a = fset(frag("a"), [[1]] * 4)
        b = fset(frag("b", start=100), [[1]] * 8)
        assert match_corpus(corpus(a, b), MatchConfig()) == []
        found = match_corpus(corpus(a, b), MatchConfig(prefilter=False))
        assert len(found) == 1  # every path of the smaller set matches exactly

    def test_canonical_order_and_dedup(self):
        cfg = MatchConfig()
        sets = [
            fset(frag("m", start=500, file="z.java"), [[1, 2]]),
            fset(frag("m", start=1, file="a.java"), [[1, 2]]),
            fset(frag("m", start=40, file="a.java"), [[1, 2]]),
        ]
        pairs = match_corpus(sets, cfg)
        assert len(pairs) == 3
        assert pairs == sorted(
            pairs,
            key=lambda p: (p.left.file_path, p.left.start_line, p.right.file_path,
                           p.right.start_line),
        )
        for p in pairs:
            assert (p.left.file_path, p.left.start_line) <= (
                p.right.file_path,
                p.right.start_line,
            )


class TestMatchConfigValidation:
    def test_rejects_bad_tau(self):
        with pytest.raises(ValueError):
            MatchConfig(tau=1.5)

    def test_rejects_bad_factor(self):
        with pytest.raises(ValueError):
            MatchConfig(max_set_factor=0.5)

    def test_rejects_bad_threads(self):
        with pytest.raises(ValueError):
            MatchConfig(threads=0)
