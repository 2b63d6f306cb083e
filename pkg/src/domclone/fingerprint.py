"""Fingerprint encodings of description sets.

A fingerprint is the hashed value of one instruction's canonical
serialization. Supported schemes: MD5 (16-byte, default), a 4-byte
polynomial hash, locality-sensitive hashing into per-length-cluster
buckets, and a pass-through scheme that keeps the serialized strings.

LSH organizes the corpus vocabulary into length clusters 3 to 8 (token
counts clamp into that range) with 200 buckets each; similar
instructions land in the same bucket with high probability, identical
ones always do.
"""

from __future__ import annotations

import hashlib
import random
import struct
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .descset import DescriptionSet, Path, serialize_instruction
from .frontend import CodeFragment
from .frontend.instructions import AbstractInstruction


class HashScheme(Enum):
    NONE = "none"
    PRIME4 = "prime4"
    MD5 = "md5"
    LSH = "lsh"


class StaleIndexError(Exception):
    """An instruction was not part of the corpus the LSH index was built
    over; the corpus changed after the vocabulary pass."""


@dataclass(frozen=True)
class Fingerprint:
    value: bytes


@dataclass
class FingerprintSet:
    fragment: Optional[CodeFragment]
    paths: list[tuple[Fingerprint, ...]]
    counts: list[int]
    premerge_count: int
    # canonical content of the source description set; lets the matcher
    # orient and group fragments independently of the hashing scheme
    source_key: tuple = ()


MIN_CLUSTER = 3
MAX_CLUSTER = 8
BUCKETS_PER_CLUSTER = 200

# banding parameters for the min-hash: a pair of instructions sharing a
# fraction J of their shingles collides in one band with probability J^2
# and overall with 1 - (1 - J^2)^LSH_BANDS
LSH_BANDS = 16
LSH_ROWS = 2

PRIME4_MULTIPLIER = 31
_MASK32 = 0xFFFFFFFF
_MASK64 = 0xFFFFFFFFFFFFFFFF


def md5_fingerprint(instr: AbstractInstruction) -> Fingerprint:
    return Fingerprint(hashlib.md5(serialize_instruction(instr).encode("utf-8")).digest())


def prime4_fingerprint(instr: AbstractInstruction) -> Fingerprint:
    h = 0
    for b in serialize_instruction(instr).encode("utf-8"):
        h = (h * PRIME4_MULTIPLIER + b) & _MASK32
    return Fingerprint(struct.pack(">I", h))


def passthrough_fingerprint(instr: AbstractInstruction) -> Fingerprint:
    return Fingerprint(serialize_instruction(instr).encode("utf-8"))


def length_cluster(instr: AbstractInstruction) -> int:
    return min(max(len(instr.tokens), MIN_CLUSTER), MAX_CLUSTER)


def _shingles(instr: AbstractInstruction) -> list[str]:
    padded = ("^",) + instr.tokens + ("$",)
    return [f"{a}\x1f{b}" for a, b in zip(padded, padded[1:])]


def _base_hash(seed: int, shingle: str) -> int:
    digest = hashlib.blake2b(f"{seed}:{shingle}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


@dataclass
class LshIndex:
    seed: int
    assignment: dict[str, tuple[int, int]] = field(default_factory=dict)
    bucket_count: int = BUCKETS_PER_CLUSTER

    def lookup(self, instr: AbstractInstruction) -> tuple[int, int]:
        key = serialize_instruction(instr)
        try:
            return self.assignment[key]
        except KeyError:
            raise StaleIndexError(
                f"instruction not in LSH vocabulary: {key}"
            ) from None


def build_lsh_index(instructions: Iterable[AbstractInstruction], seed: int) -> LshIndex:
    """Two-pass bucket assignment over the whole corpus vocabulary.

    Distinct instructions of one length cluster are united whenever any
    min-hash band agrees, and every resulting group is mapped onto one of
    the cluster's 200 buckets.
    """
    by_cluster: dict[int, dict[str, AbstractInstruction]] = {}
    for instr in instructions:
        by_cluster.setdefault(length_cluster(instr), {})[serialize_instruction(instr)] = instr

    rng = random.Random(seed)
    mixers = [
        (rng.getrandbits(64) | 1, rng.getrandbits(64))
        for _ in range(LSH_BANDS * LSH_ROWS)
    ]

    index = LshIndex(seed=seed)
    for cluster in sorted(by_cluster):
        vocab = by_cluster[cluster]
        keys = sorted(vocab)
        parent = list(range(len(keys)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        band_map: dict[tuple[int, tuple[int, ...]], int] = {}
        for i, key in enumerate(keys):
            bases = [_base_hash(seed, s) for s in _shingles(vocab[key])]
            for band in range(LSH_BANDS):
                sig = tuple(
                    min((a * base + c) & _MASK64 for base in bases)
                    for a, c in mixers[band * LSH_ROWS : (band + 1) * LSH_ROWS]
                )
                other = band_map.setdefault((band, sig), i)
                if other != i:
                    ri, rj = find(i), find(other)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)

        rep_key: dict[int, str] = {}
        for i, key in enumerate(keys):
            root = find(i)
            if root not in rep_key or key < rep_key[root]:
                rep_key[root] = key
        for i, key in enumerate(keys):
            rep = rep_key[find(i)]
            digest = hashlib.blake2b(
                f"{seed}:{cluster}:{rep}".encode("utf-8"), digest_size=8
            ).digest()
            bucket = int.from_bytes(digest, "big") % BUCKETS_PER_CLUSTER
            index.assignment[key] = (cluster, bucket)
    return index


def lsh_fingerprint(instr: AbstractInstruction, index: LshIndex) -> Fingerprint:
    cluster, bucket = index.lookup(instr)
    return Fingerprint(struct.pack(">BH", cluster, bucket))


def _encode(dset: DescriptionSet, one) -> FingerprintSet:
    cache: dict[AbstractInstruction, Fingerprint] = {}

    def fp(instr: AbstractInstruction) -> Fingerprint:
        f = cache.get(instr)
        if f is None:
            f = one(instr)
            cache[instr] = f
        return f

    from .descset import serialize_path

    counts = dset.counts()
    paths = [tuple(fp(n) for n in p.nodes) for p in dset.paths]
    # multiplicities are expanded so merged and unmerged forms of the same
    # content produce the same key
    expanded: list[str] = []
    for p, count in zip(dset.paths, counts):
        expanded.extend([serialize_path(p)] * count)
    key = tuple(sorted(expanded))
    return FingerprintSet(dset.fragment, paths, counts, dset.premerge_count, key)


def fingerprint_md5(dset: DescriptionSet) -> FingerprintSet:
    return _encode(dset, md5_fingerprint)


def fingerprint_prime4(dset: DescriptionSet) -> FingerprintSet:
    return _encode(dset, prime4_fingerprint)


def fingerprint_none(dset: DescriptionSet) -> FingerprintSet:
    return _encode(dset, passthrough_fingerprint)


def fingerprint_lsh(dset: DescriptionSet, index: LshIndex) -> FingerprintSet:
    return _encode(dset, lambda instr: lsh_fingerprint(instr, index))


def fingerprint_set(
    dset: DescriptionSet, scheme: HashScheme, index: Optional[LshIndex] = None
) -> FingerprintSet:
    if scheme is HashScheme.MD5:
        return fingerprint_md5(dset)
    if scheme is HashScheme.PRIME4:
        return fingerprint_prime4(dset)
    if scheme is HashScheme.NONE:
        return fingerprint_none(dset)
    if scheme is HashScheme.LSH:
        if index is None:
            raise ValueError("LSH fingerprinting requires a built index")
        return fingerprint_lsh(dset, index)
    raise ValueError(f"unknown hashing scheme: {scheme!r}")


def corpus_vocabulary(dsets: Iterable[DescriptionSet]) -> list[AbstractInstruction]:
    """Distinct instructions across all description sets, in first-seen
    order (the LSH vocabulary pass)."""
    seen: dict[AbstractInstruction, None] = {}
    for dset in dsets:
        for path in dset.paths:
            for instr in path.nodes:
                seen.setdefault(instr, None)
    return list(seen)
