import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domclone.metrics import (
    Metric,
    delta_hamming,
    delta_lcs,
    delta_lcs_modified,
    delta_levenshtein,
    delta_needleman_wunsch,
    nw_score,
    path_distance,
)
from oracles import lcs_oracle, levenshtein_oracle, nw_score_oracle

# The worked example pair: two for loops whose bodies differ by one
# statement. Node identities are all that matter to the metrics, so
# plain ints stand in for fingerprints.
INIT, COND, BODY_SUB, BODY_ADD, BODY_CALL, INC = range(6)
P = (INIT, COND, BODY_SUB, BODY_CALL, INC)
Q = (INIT, COND, BODY_ADD, INC)

seqs = st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=12).map(tuple)


class TestGoldenPair:
    def test_hamming(self):
        assert delta_hamming(P, Q).raw == 3

    def test_hamming_no_penalty(self):
        assert delta_hamming(P, Q, penalize_length=False).raw == 2

    def test_levenshtein(self):
        assert delta_levenshtein(P, Q).raw == 2

    def test_needleman_wunsch(self):
        assert nw_score(P, Q) == 3
        assert delta_needleman_wunsch(P, Q).raw == 2

    def test_lcs(self):
        assert delta_lcs(P, Q).raw == 2


@pytest.mark.parametrize("metric", list(Metric))
def test_identity(metric):
    d = path_distance(metric, P, P)
    assert d.raw == 0
    assert d.normalized == 0.0


@pytest.mark.parametrize("metric", list(Metric))
@given(p=seqs, q=seqs)
def test_symmetry(metric, p, q):
    assert path_distance(metric, p, q).raw == path_distance(metric, q, p).raw


@pytest.mark.parametrize("metric", list(Metric))
@given(p=seqs, q=seqs)
def test_normalized_range(metric, p, q):
    d = path_distance(metric, p, q)
    assert 0.0 <= d.normalized <= 1.0
    if d.raw == 0:
        assert d.normalized == 0.0


@given(p=seqs, q=seqs, r=seqs)
def test_levenshtein_triangle(p, q, r):
    assert (
        delta_levenshtein(p, r).raw
        <= delta_levenshtein(p, q).raw + delta_levenshtein(q, r).raw
    )


@given(p=seqs, q=seqs)
def test_hamming_triangle_equal_lengths(p, q):
    n = min(len(p), len(q))
    p, q = p[:n], q[:n]
    for r in (p[::-1], q[::-1], p[:1] * n):
        assert (
            delta_hamming(p, r).raw
            <= delta_hamming(p, q).raw + delta_hamming(q, r).raw
        )


@given(p=seqs, q=seqs)
def test_monotone_bound(p, q):
    assert (
        delta_lcs(p, q).raw
        <= delta_levenshtein(p, q).raw
        <= delta_hamming(p, q).raw
    )


@settings(max_examples=300)
@given(p=seqs, q=seqs)
def test_against_oracles(p, q):
    assert delta_levenshtein(p, q).raw == levenshtein_oracle(p, q)
    assert nw_score(p, q) == nw_score_oracle(p, q)
    z = lcs_oracle(p, q)
    assert delta_lcs(p, q).raw == max(len(p) - z, len(q) - z)


def test_oracles_random_longer_pairs():
    rng = random.Random(11)
    for _ in range(500):
        p = tuple(rng.randrange(6) for _ in range(rng.randint(1, 16)))
        q = tuple(rng.randrange(6) for _ in range(rng.randint(1, 16)))
        assert delta_levenshtein(p, q).raw == levenshtein_oracle(p, q)
        assert nw_score(p, q) == nw_score_oracle(p, q)
        z = lcs_oracle(p, q)
        assert delta_lcs(p, q).raw == max(len(p) - z, len(q) - z)


class TestModifiedLcs:
    def test_contained_subpath_forces(self):
        p = tuple(range(12))
        q = tuple(range(40))
        d = delta_lcs_modified(p, q)
        assert d.forced_clone
        assert d.raw == delta_lcs(p, q).raw

    def test_short_paths_never_force(self):
        p = tuple(range(8))
        q = tuple(range(30))
        assert not delta_lcs_modified(p, q, True, True).forced_clone

    def test_threshold_arithmetic(self):
        # smaller path of 20 nodes sharing a 17-node subsequence: the
        # unique count 3 clears the 30% bound (6.0) but not the 10%
        # bound (2.0), so only the single-path rule can fire.
        p = tuple(range(20))
        q = tuple(range(17)) + (90, 91, 92, 93, 94)
        assert not delta_lcs_modified(p, q).forced_clone
        assert delta_lcs_modified(p, q, True, True).forced_clone

    def test_single_path_rule_requires_both(self):
        p = tuple(range(20))
        q = tuple(range(17)) + (90, 91, 92, 93, 94)
        assert not delta_lcs_modified(p, q, True, False).forced_clone
        assert not delta_lcs_modified(p, q, False, True).forced_clone
