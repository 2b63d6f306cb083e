from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from domclone.descset import (
    DescriptionSet,
    Path as DPath,
    dump_description_set,
    extract_description_set,
    merge_paths,
    parse_instruction,
    serialize_instruction,
    serialize_path,
)
from domclone.fingerprint import fingerprint_md5
from domclone.frontend import analyze_source
from domclone.frontend.dominators import DominatorTree
from domclone.frontend.instructions import AbstractInstruction
from domclone.matcher import set_delta
from domclone.metrics import Metric

DATA = Path(__file__).parent / "data"

# Rendered exactly as the canonical serialization of the lower zip-walker
# example; the binding token-level expectation for the whole pipeline.
ZIPDIR_PATHS = [
    "[=, V, CALL, #0]->[=, V, NEWARRAY, byte]->[=, V, L]->[=, V, L]"
    "->[COND, LT, V, FIELDREAD]->[=, V, NEW, #1, V, V]->[COND, CALL, #2]"
    "->[CALL, #3, V, V, L]",
    "[=, V, CALL, #0]->[=, V, NEWARRAY, byte]->[=, V, L]->[=, V, L]"
    "->[COND, LT, V, FIELDREAD]->[=, V, NEW, #1, V, V]->[COND, CALL, #2]"
    "->[=, V, NEW, #4, V]->[=, V, NEW, #5]->[CALL, #6, V]"
    "->[COND, NE, =, V, CALL, #7, V, NEG, V]->[CALL, #8, V, V, V]",
    "[=, V, CALL, #0]->[=, V, NEWARRAY, byte]->[=, V, L]->[=, V, L]"
    "->[COND, LT, V, FIELDREAD]->[=, V, NEW, #1, V, V]->[COND, CALL, #2]"
    "->[=, V, NEW, #4, V]->[=, V, NEW, #5]->[CALL, #6, V]"
    "->[COND, NE, =, V, CALL, #7, V, NEG, V]->[CALL, #9]",
    "[=, V, CALL, #0]->[=, V, NEWARRAY, byte]->[=, V, L]->[=, V, L]"
    "->[COND, LT, V, FIELDREAD]->[=, V, NEW, #1, V, V]->[COND, CALL, #2]"
    "->[POSTINC, V]",
]


def instr(*tokens: str) -> AbstractInstruction:
    return AbstractInstruction(tuple(tokens))


def chain_tree(*node_tokens) -> DominatorTree:
    nodes = [instr(*toks) for toks in node_tokens]
    parent = {i: i - 1 for i in range(1, len(nodes))}
    children = {i: [] for i in range(len(nodes))}
    for i in range(1, len(nodes)):
        children[i - 1].append(i)
    return DominatorTree(nodes, parent, 0, children)


def complete_binary_tree(depth: int) -> DominatorTree:
    count = 2 ** (depth + 1) - 1
    nodes = [instr("V") for _ in range(count)]
    parent = {i: (i - 1) // 2 for i in range(1, count)}
    children = {i: [] for i in range(count)}
    for i in range(1, count):
        children[(i - 1) // 2].append(i)
    return DominatorTree(nodes, parent, 0, children)


class TestExtraction:
    def test_single_node_tree(self):
        dset = extract_description_set(chain_tree(("=", "V", "L")))
        assert len(dset.paths) == 1
        assert dset.paths[0].length == 1

    def test_complete_binary_tree(self):
        for depth in (1, 2, 3):
            dset = extract_description_set(complete_binary_tree(depth))
            assert len(dset.paths) == 2**depth
            assert all(p.length == depth + 1 for p in dset.paths)

    def test_path_count_equals_leaf_count(self):
        src = (DATA / "zipdir" / "DirZipper.java").read_text()
        analyses, _ = analyze_source(src, "DirZipper.java")
        tree = analyses[0].tree
        dset = extract_description_set(tree, analyses[0].fragment)
        assert len(dset.paths) == len(tree.leaves())

    def test_zipdir_golden_paths(self):
        src = (DATA / "zipdir" / "ZipTreeWriter.java").read_text()
        analyses, _ = analyze_source(src, "ZipTreeWriter.java")
        dset = extract_description_set(analyses[0].tree, analyses[0].fragment)
        assert [serialize_path(p) for p in dset.paths] == ZIPDIR_PATHS

    def test_dump_format(self):
        dset = extract_description_set(chain_tree(("=", "V", "L"), ("POSTINC", "V")))
        assert dump_description_set(dset) == "[=, V, L]->[POSTINC, V]\n"


class TestMerging:
    def test_identical_paths_collapse_with_multiplicity(self):
        p = DPath((instr("=", "V", "L"), instr("CALL", "#0")))
        dset = DescriptionSet(None, [p, p])
        merged = merge_paths(dset)
        assert merged.paths == [p]
        assert merged.multiplicity[p] == 2
        assert merged.premerge_count == 2

    def test_one_node_difference_merges_to_smaller(self):
        a = DPath((instr("=", "V", "L"), instr("=", "V", "L")))
        b = DPath((instr("=", "V", "L"), instr("=", "V", "V")))
        merged = merge_paths(DescriptionSet(None, [b, a]))
        assert merged.paths == [a]  # [=, V, L] sorts before [=, V, V]
        assert merged.multiplicity[a] == 2

    def test_different_lengths_never_merge(self):
        a = DPath((instr("=", "V", "L"),))
        b = DPath((instr("=", "V", "L"), instr("=", "V", "L")))
        merged = merge_paths(DescriptionSet(None, [a, b]))
        assert sorted(p.length for p in merged.paths) == [1, 2]

    def test_two_node_difference_not_merged(self):
        a = DPath((instr("=", "V", "L"), instr("=", "V", "L"), instr("CALL", "#0")))
        b = DPath((instr("=", "V", "V"), instr("=", "V", "V"), instr("CALL", "#0")))
        merged = merge_paths(DescriptionSet(None, [a, b]))
        assert len(merged.paths) == 2

    def test_disabled_is_identity(self):
        p = DPath((instr("=", "V", "L"),))
        dset = DescriptionSet(None, [p, p])
        assert merge_paths(dset, enabled=False) is dset

    def test_transitive_merge_keeps_no_one_diff_pairs(self):
        a = DPath((instr("A"), instr("X")))
        b = DPath((instr("A"), instr("Y")))
        c = DPath((instr("B"), instr("Y")))
        merged = merge_paths(DescriptionSet(None, [a, b, c]))
        assert len(merged.paths) == 1
        assert sum(merged.multiplicity.values()) == 3

    def test_merge_never_changes_self_distance(self):
        src = (DATA / "zipdir" / "ZipTreeWriter.java").read_text()
        analyses, _ = analyze_source(src, "ZipTreeWriter.java")
        dset = extract_description_set(analyses[0].tree, analyses[0].fragment)
        for metric in (Metric.LCS, Metric.LEVENSHTEIN, Metric.HAMMING):
            plain = fingerprint_md5(dset)
            merged = fingerprint_md5(merge_paths(dset))
            assert set_delta(plain, plain, metric) == 0.0
            assert set_delta(merged, merged, metric) == 0.0

    def test_identical_only_merge_preserves_cross_distance(self):
        # when merging only collapses byte-identical paths, multiplicity
        # weighting keeps distances against any other set unchanged
        p = DPath((instr("=", "V", "L"), instr("CALL", "#0")))
        q = DPath((instr("=", "V", "L"), instr("CALL", "#1"), instr("POSTINC", "V")))
        other = fingerprint_md5(DescriptionSet(None, [q]))
        plain = fingerprint_md5(DescriptionSet(None, [p, p, q]))
        merged = fingerprint_md5(merge_paths(DescriptionSet(None, [p, p, q])))
        for metric in (Metric.LCS, Metric.LEVENSHTEIN, Metric.HAMMING):
            assert set_delta(plain, other, metric) == set_delta(merged, other, metric)


TOKEN = st.sampled_from(["=", "V", "L", "COND", "CALL", "#0", "#12", "NEW", "byte", "LT"])
TOKENS = st.lists(TOKEN, min_size=1, max_size=6).map(tuple)


class TestSerialization:
    def test_examples(self):
        assert serialize_instruction(instr("=", "V", "L")) == "[=, V, L]"
        assert serialize_instruction(instr("CALL", "#6", "V")) == "[CALL, #6, V]"

    def test_round_trip_single(self):
        x = instr("POSTINC", "V")
        assert parse_instruction(serialize_instruction(x)) == x

    @given(tokens=TOKENS)
    def test_round_trip(self, tokens):
        x = AbstractInstruction(tokens)
        assert parse_instruction(serialize_instruction(x)) == x

    @given(a=TOKENS, b=TOKENS)
    def test_injective(self, a, b):
        if a != b:
            assert serialize_instruction(AbstractInstruction(a)) != serialize_instruction(
                AbstractInstruction(b)
            )

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_instruction("not-a-serialization")
