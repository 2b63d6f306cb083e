"""Pairwise clone matching over fingerprint sets.

The distance between two fragments is the multiplicity-weighted mean,
over the smaller set's paths, of the minimum normalized path distance
to any path of the larger set. Pairs below the threshold (or forced by
the modified-LCS rules) are reported as clones.

Cheap structural checks short-circuit hopeless pairs: a set-size ratio
bound and a per-path length-coverage bound. An optional copy strategy
groups fragments with identical fingerprint sets, matches one
representative per group, and copies results to the other members,
which provably leaves the reported clone set unchanged.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .fingerprint import FingerprintSet, HashScheme
from .frontend import CodeFragment
from .metrics import MIN_RULE_LENGTH as MIN_FORCE_LENGTH
from .metrics import Metric, delta_lcs_modified, path_distance


class DegenerateFragmentError(Exception):
    """A fragment reached the matcher with an empty description set."""


@dataclass
class MatchConfig:
    tau: float = 0.3
    min_clone_lines: int = 15
    metric: Metric = Metric.LCS
    hashing: HashScheme = HashScheme.MD5
    max_set_factor: float = 1.7
    max_path_length_diff: int = 7
    copy_strategy: bool = True
    merge_paths: bool = True
    prefilter: bool = True
    threads: int = 1

    def __post_init__(self):
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError("tau must lie in [0, 1]")
        if self.min_clone_lines < 0:
            raise ValueError("min_clone_lines must be non-negative")
        if self.max_set_factor < 1.0:
            raise ValueError("max_set_factor must be at least 1")
        if self.max_path_length_diff < 0:
            raise ValueError("max_path_length_diff must be non-negative")
        if self.threads < 1:
            raise ValueError("threads must be positive")


@dataclass(frozen=True)
class ClonePair:
    left: CodeFragment
    right: CodeFragment
    delta: float
    kind: str  # strict | partial
    forced: bool = False


def _locator(fragment: CodeFragment) -> tuple:
    return (fragment.file_path, fragment.start_line, fragment.end_line, fragment.method_name)


@dataclass
class _Record:
    fset: FingerprintSet
    path_ids: tuple[int, ...]
    counts: tuple[int, ...]
    premerge_count: int
    single_path: bool
    lengths: tuple[int, ...]  # sorted unique path lengths
    content_key: tuple = ()

    @property
    def fragment(self) -> CodeFragment:
        return self.fset.fragment


class _Session:
    """Interning and distance memoization shared across one matching run.

    Fingerprints intern to small ints so the DP inner loops compare ints,
    and paths intern to ids so distances are cached per unordered id pair.
    The modified-LCS metric additionally keys on whether both fragments
    are single-path, since its 30% rule depends on that context.
    """

    def __init__(self, metric: Metric):
        self.metric = metric
        self._fp_ids: dict[bytes, int] = {}
        self._path_ids: dict[tuple[int, ...], int] = {}
        self.path_seqs: list[tuple[int, ...]] = []
        self.path_lens: list[int] = []
        self._cache: dict[tuple[int, int, bool], tuple[float, bool]] = {}

    def intern_path(self, path) -> int:
        fp_ids = self._fp_ids
        seq = []
        for fp in path:
            fid = fp_ids.get(fp.value)
            if fid is None:
                fid = len(fp_ids)
                fp_ids[fp.value] = fid
            seq.append(fid)
        key = tuple(seq)
        pid = self._path_ids.get(key)
        if pid is None:
            pid = len(self.path_seqs)
            self._path_ids[key] = pid
            self.path_seqs.append(key)
            self.path_lens.append(len(key))
        return pid

    def make_record(self, fset: FingerprintSet) -> _Record:
        path_ids = tuple(self.intern_path(p) for p in fset.paths)
        lengths = tuple(sorted({len(p) for p in fset.paths}))
        # full multiset (content and multiplicities) plus the pre-merge
        # count; fragments sharing this key are interchangeable in every
        # comparison. The scheme-independent source key keeps orientation
        # ties, and hence delta values, identical across hashing schemes;
        # sets built without one fall back to raw fingerprint bytes.
        if fset.source_key:
            key = (fset.premerge_count, fset.source_key)
        else:
            expanded: list[tuple[bytes, ...]] = []
            for p, count in zip(fset.paths, fset.counts):
                expanded.extend([tuple(fp.value for fp in p)] * count)
            key = (fset.premerge_count, tuple(sorted(expanded)))
        return _Record(
            fset=fset,
            path_ids=path_ids,
            counts=tuple(fset.counts),
            premerge_count=fset.premerge_count,
            single_path=fset.premerge_count == 1,
            lengths=lengths,
            content_key=key,
        )



def _record_delta(a: _Record, b: _Record, session: _Session) -> tuple[float, bool]:
    if not a.path_ids or not b.path_ids:
        raise DegenerateFragmentError("fingerprint set without paths")
    # orient so the mean runs over the smaller set; ties broken by content
    # so that the result is symmetric in the arguments
    if (a.premerge_count, a.content_key) <= (b.premerge_count, b.content_key):
        small, large = a, b
    else:
        small, large = b, a
    both_single = a.single_path and b.single_path
    metric = session.metric
    modified = metric is Metric.LCS_MODIFIED
    # every implemented distance except the no-penalty Hamming variant is
    # bounded below by the length gap, which allows skipping hopeless DPs
    length_bound = metric is not Metric.HAMMING_NOPENALTY
    cache = session._cache
    lens = session.path_lens
    seqs = session.path_seqs
    large_ids = large.path_ids
    forced_any = False
    contributions = []
    for pid, count in zip(small.path_ids, small.counts):
        lp = lens[pid]
        best = 1.0
        for qid in large_ids:
            lq = lens[qid]
            lo, hi = (lp, lq) if lp <= lq else (lq, lp)
            # the forced rules need a smaller path of >= 10 nodes
            rules_possible = modified and lo >= MIN_FORCE_LENGTH
            if length_bound and not rules_possible and hi - lo >= best * hi:
                continue
            key = (pid, qid, both_single) if pid <= qid else (qid, pid, both_single)
            hit = cache.get(key)
            if hit is None:
                p, q = seqs[pid], seqs[qid]
                if modified:
                    d = delta_lcs_modified(p, q, both_single, both_single)
                else:
                    d = path_distance(metric, p, q)
                hit = (d.normalized, d.forced_clone)
                cache[key] = hit
            norm, forced = hit
            if forced:
                forced_any = True
                norm = 0.0
            if norm < best:
                best = norm
                if best == 0.0 and not modified:
                    break
        contributions.append(count * best)
    delta = math.fsum(contributions) / sum(small.counts)
    return delta, forced_any


def set_delta(a: FingerprintSet, b: FingerprintSet, metric: Metric) -> float:
    """Distance between two fragments' fingerprint sets."""
    session = _Session(metric)
    return _record_delta(session.make_record(a), session.make_record(b), session)[0]


def prefilter(a: FingerprintSet, b: FingerprintSet, cfg: MatchConfig) -> bool:
    """True when the pair is worth a full comparison."""
    session = _Session(cfg.metric)
    return _prefilter(session.make_record(a), session.make_record(b), cfg)


def _prefilter(a: _Record, b: _Record, cfg: MatchConfig) -> bool:
    small, large = (a, b) if a.premerge_count <= b.premerge_count else (b, a)
    if large.premerge_count > cfg.max_set_factor * small.premerge_count:
        return False
    limit = cfg.max_path_length_diff
    lengths = large.lengths
    for ls in small.lengths:
        pos = bisect_left(lengths, ls)
        if pos < len(lengths) and lengths[pos] - ls <= limit:
            continue
        if pos > 0 and ls - lengths[pos - 1] <= limit:
            continue
        return False
    return True


def classify(a: FingerprintSet, b: FingerprintSet) -> str:
    """strict when the sets have equally many paths (before merging)."""
    return "strict" if a.premerge_count == b.premerge_count else "partial"


def _make_pair(fa: CodeFragment, fb: CodeFragment, delta: float, kind: str, forced: bool) -> ClonePair:
    if _locator(fb) < _locator(fa):
        fa, fb = fb, fa
    return ClonePair(fa, fb, delta, kind, forced)


def match_corpus(sets: list[FingerprintSet], cfg: MatchConfig) -> list[ClonePair]:
    """All-pairs clone matching.

    Considers fragments of at least min_clone_lines source lines, runs the
    short-circuit checks (unless disabled), and emits every unordered pair
    whose distance stays below tau or whose comparison was forced. Output
    is canonically ordered and deterministic for any thread count.
    """
    session = _Session(cfg.metric)
    records = [
        session.make_record(f)
        for f in sets
        if f.fragment.source_line_count >= cfg.min_clone_lines and f.paths
    ]
    records.sort(key=lambda r: _locator(r.fragment))

    # copy strategy: fragments with identical fingerprint sets behave
    # identically against every other set, so match one representative per
    # group and copy the outcome to all members afterwards
    groups: list[list[_Record]]
    if cfg.copy_strategy:
        by_key: dict[tuple, list[_Record]] = {}
        for rec in records:
            by_key.setdefault(rec.content_key, []).append(rec)
        groups = list(by_key.values())
    else:
        groups = [[rec] for rec in records]
    reps = [group[0] for group in groups]

    order = sorted(range(len(reps)), key=lambda i: (reps[i].premerge_count, i))
    candidates: list[tuple[int, int]] = []
    for a_pos, i in enumerate(order):
        ri = reps[i]
        for j in order[a_pos + 1 :]:
            rj = reps[j]
            if cfg.prefilter:
                if rj.premerge_count > cfg.max_set_factor * ri.premerge_count:
                    break
                if not _prefilter(ri, rj, cfg):
                    continue
            candidates.append((i, j))

    def compare_chunk(chunk: list[tuple[int, int]]) -> list[tuple[int, int, float, bool]]:
        out = []
        for i, j in chunk:
            delta, forced = _record_delta(reps[i], reps[j], session)
            if forced or delta < cfg.tau:
                out.append((i, j, delta, forced))
        return out

    if cfg.threads > 1 and len(candidates) > 1:
        chunk_size = max(64, len(candidates) // (cfg.threads * 8) + 1)
        chunks = [candidates[k : k + chunk_size] for k in range(0, len(candidates), chunk_size)]
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            chunk_results = list(pool.map(compare_chunk, chunks))
        hits = [hit for chunk in chunk_results for hit in chunk]
    else:
        hits = compare_chunk(candidates)

    pairs: list[ClonePair] = []
    for i, j, delta, forced in hits:
        kind = classify(reps[i].fset, reps[j].fset)
        for fa in groups[i]:
            for fb in groups[j]:
                pairs.append(_make_pair(fa.fragment, fb.fragment, delta, kind, forced))

    # pairs inside one group: identical sets, one computation covers all
    for group in groups:
        if len(group) < 2:
            continue
        rep = group[0]
        delta, forced = _record_delta(rep, rep, session)
        kind = classify(rep.fset, rep.fset)
        for x in range(len(group)):
            for y in range(x + 1, len(group)):
                if forced or delta < cfg.tau:
                    pairs.append(
                        _make_pair(group[x].fragment, group[y].fragment, delta, kind, forced)
                    )

    pairs.sort(key=lambda p: (_locator(p.left), _locator(p.right)))
    return pairs
