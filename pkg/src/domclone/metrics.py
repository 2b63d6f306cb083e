"""String metrics over fingerprint sequences for path comparison.

Paths of a dominator tree are compared like strings: every node
(fingerprint) acts as one character. All metrics return a PathDistance
whose raw value is an integer edit-style distance and whose normalized
value divides raw by the longer sequence length, so thresholds live
in [0, 1] regardless of path lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence


class Metric(Enum):
    HAMMING = "hamming"
    HAMMING_NOPENALTY = "hamming_nopenalty"
    LEVENSHTEIN = "levenshtein"
    NEEDLEMAN_WUNSCH = "needleman_wunsch"
    LCS = "lcs"
    LCS_MODIFIED = "lcs_modified"


#: Metric names that exist in the wider literature but are deliberately
#: not implemented here; config parsing rejects them with a clear error.
UNSUPPORTED_METRIC_NAMES = frozenset(
    {"ngram", "n-gram", "jaccard", "cosine", "jaro_winkler", "jaro-winkler",
     "damerau_levenshtein", "damerau-levenshtein"}
)

# Scoring scheme for the alignment-based metric: weights for matches,
# mismatches, and gaps.
NW_MATCH = 1
NW_MISMATCH = -1
NW_GAP = 0

# Thresholds for the modified LCS rules. Both rules only apply when the
# smaller path has at least MIN_RULE_LENGTH nodes.
SINGLE_PATH_RATIO = 0.30
SUBPATH_RATIO = 0.10
MIN_RULE_LENGTH = 10


@dataclass(frozen=True)
class PathDistance:
    """Result of comparing two paths.

    raw: non-negative integer distance (0 iff the sequences are equal,
        except for the no-penalty Hamming variant, which ignores any
        length excess by design).
    normalized: raw divided by the longer sequence length.
    forced_clone: set only by the modified-LCS special rules; tells the
        matcher to treat this path pair as similar outright.
    """

    raw: int
    normalized: float
    forced_clone: bool = False


def _normalize(raw: int, p: Sequence, q: Sequence) -> float:
    return raw / max(len(p), len(q))


def delta_hamming(p: Sequence, q: Sequence, penalize_length: bool = True) -> PathDistance:
    """Positional mismatches over the shorter length; any length excess
    is added on top unless penalize_length is off."""
    shorter = min(len(p), len(q))
    raw = sum(1 for i in range(shorter) if p[i] != q[i])
    if penalize_length:
        raw += abs(len(p) - len(q))
    return PathDistance(raw, _normalize(raw, p, q))


def _strip_common_ends(p: Sequence, q: Sequence) -> tuple[Sequence, Sequence]:
    """Drop the shared prefix and suffix; exact for edit distance and for
    common-subsequence length (the shared parts always align)."""
    i = 0
    np_, nq = len(p), len(q)
    n = np_ if np_ < nq else nq
    while i < n and p[i] == q[i]:
        i += 1
    ep, eq = np_, nq
    while ep > i and eq > i and p[ep - 1] == q[eq - 1]:
        ep -= 1
        eq -= 1
    return p[i:ep], q[i:eq]


def delta_levenshtein(p: Sequence, q: Sequence) -> PathDistance:
    """Minimum number of insert/delete/substitute operations (unit costs)."""
    a, b = _strip_common_ends(p, q)
    if len(a) < len(b):
        a, b = b, a
    if not b:
        raw = len(a)
        return PathDistance(raw, _normalize(raw, p, q))
    nb = len(b)
    prev = list(range(nb + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        append = cur.append
        left = i
        for j in range(1, nb + 1):
            up = prev[j] + 1
            diag = prev[j - 1] + (x != b[j - 1])
            left = left + 1
            if up < left:
                left = up
            if diag < left:
                left = diag
            append(left)
        prev = cur
    raw = prev[nb]
    return PathDistance(raw, _normalize(raw, p, q))


def nw_score(p: Sequence, q: Sequence) -> int:
    """Optimal global alignment score under the fixed match/mismatch/gap
    weights."""
    prev = [j * NW_GAP for j in range(len(q) + 1)]
    for i in range(1, len(p) + 1):
        cur = [i * NW_GAP] + [0] * len(q)
        pi = p[i - 1]
        for j in range(1, len(q) + 1):
            sub = NW_MATCH if pi == q[j - 1] else NW_MISMATCH
            cur[j] = max(prev[j - 1] + sub, prev[j] + NW_GAP, cur[j - 1] + NW_GAP)
        prev = cur
    return prev[len(q)]


def delta_needleman_wunsch(p: Sequence, q: Sequence) -> PathDistance:
    score = nw_score(p, q)
    raw = max(len(p) - score, len(q) - score)
    return PathDistance(raw, _normalize(raw, p, q))


def lcs_length(p: Sequence, q: Sequence) -> int:
    a, b = _strip_common_ends(p, q)
    common = (len(p) + len(q) - len(a) - len(b)) // 2
    if not a or not b:
        return common
    if len(a) < len(b):
        a, b = b, a
    nb = len(b)
    prev = [0] * (nb + 1)
    for x in a:
        cur = [0]
        append = cur.append
        left = 0
        for j in range(1, nb + 1):
            if x == b[j - 1]:
                left = prev[j - 1] + 1
            else:
                up = prev[j]
                if up > left:
                    left = up
            append(left)
        prev = cur
    return common + prev[nb]


def delta_lcs(p: Sequence, q: Sequence) -> PathDistance:
    z = lcs_length(p, q)
    raw = max(len(p) - z, len(q) - z)
    return PathDistance(raw, _normalize(raw, p, q))


def delta_lcs_modified(
    p: Sequence,
    q: Sequence,
    p_single_path: bool = False,
    q_single_path: bool = False,
) -> PathDistance:
    """LCS-based distance with extra checks for large-gap and subpath
    situations.

    The unique-node count of the smaller path (its length minus the
    common-subsequence length) is compared against fractions of the
    smaller path's length: below 30% with both fragments single-path,
    or below 10% in general (the smaller path is then regarded as
    embedded in the larger one), the pair is forced similar. Neither
    rule applies when the smaller path is shorter than 10 nodes.
    """
    z = lcs_length(p, q)
    raw = max(len(p) - z, len(q) - z)
    n_small = min(len(p), len(q))
    unique = n_small - z
    forced = False
    if n_small >= MIN_RULE_LENGTH:
        if p_single_path and q_single_path and unique < SINGLE_PATH_RATIO * n_small:
            forced = True
        if unique < SUBPATH_RATIO * n_small:
            forced = True
    return PathDistance(raw, _normalize(raw, p, q), forced)


def path_distance(
    metric: Metric,
    p: Sequence,
    q: Sequence,
    p_single_path: bool = False,
    q_single_path: bool = False,
) -> PathDistance:
    """Dispatch on the configured metric. The single-path flags are only
    consulted by the modified LCS metric."""
    if metric is Metric.HAMMING:
        return delta_hamming(p, q, penalize_length=True)
    if metric is Metric.HAMMING_NOPENALTY:
        return delta_hamming(p, q, penalize_length=False)
    if metric is Metric.LEVENSHTEIN:
        return delta_levenshtein(p, q)
    if metric is Metric.NEEDLEMAN_WUNSCH:
        return delta_needleman_wunsch(p, q)
    if metric is Metric.LCS:
        return delta_lcs(p, q)
    if metric is Metric.LCS_MODIFIED:
        return delta_lcs_modified(p, q, p_single_path, q_single_path)
    raise ValueError(f"unknown metric: {metric!r}")
