"""Description sets: linearizing dominator trees into root-to-leaf paths.

A fragment's description set is the set of all paths from the tree root
to a leaf, one entry per leaf. Abstraction makes duplicate paths common,
so near-duplicates can optionally be merged: identical paths collapse
into one entry with a multiplicity, and equal-length paths differing in
exactly one node collapse to the lexicographically smallest member.
Multiplicities keep set distances identical between merged and unmerged
runs when identical paths are merged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .frontend import CodeFragment, DominatorTree
from .frontend.instructions import AbstractInstruction, ConstantPool


@dataclass(frozen=True)
class Path:
    nodes: tuple[AbstractInstruction, ...]

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("path must contain at least one node")

    @property
    def length(self) -> int:
        return len(self.nodes)


@dataclass
class DescriptionSet:
    fragment: Optional[CodeFragment]
    paths: list[Path]
    multiplicity: dict[Path, int] = field(default_factory=dict)
    premerge_count: int = 0

    def __post_init__(self):
        if not self.multiplicity:
            counts: dict[Path, int] = {}
            for p in self.paths:
                counts[p] = counts.get(p, 0) + 1
            self.multiplicity = counts
        if not self.premerge_count:
            self.premerge_count = len(self.paths)

    def counts(self) -> list[int]:
        return [self.multiplicity[p] for p in self.paths]


def serialize_instruction(instr: AbstractInstruction) -> str:
    """Canonical textual form `[tok1, tok2, ...]`; the hashing input."""
    return "[" + ", ".join(instr.tokens) + "]"


def parse_instruction(text: str) -> AbstractInstruction:
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"not a serialized instruction: {text!r}")
    return AbstractInstruction(tuple(text[1:-1].split(", ")))


def serialize_path(path: Path) -> str:
    return "->".join(serialize_instruction(n) for n in path.nodes)


def named_serialize_instruction(instr: AbstractInstruction, pool: ConstantPool) -> str:
    """Serialization with pool references rendered as callee names, so the
    result does not depend on pool numbering."""
    tokens = [
        "#" + pool.name_of(int(tok[1:])) if tok.startswith("#") else tok
        for tok in instr.tokens
    ]
    return "[" + ", ".join(tokens) + "]"


def named_serialize_path(path: Path, pool: ConstantPool) -> str:
    return "->".join(named_serialize_instruction(n, pool) for n in path.nodes)


def extract_description_set(
    tree: DominatorTree, fragment: Optional[CodeFragment] = None
) -> DescriptionSet:
    """One path per dominator-tree leaf, children visited in node order."""
    paths: list[Path] = []
    stack: list[tuple[int, tuple[AbstractInstruction, ...]]] = [
        (tree.root, (tree.nodes[tree.root],))
    ]
    # depth-first with children in ascending node order keeps extraction
    # deterministic and matches statement order
    while stack:
        node, prefix = stack.pop()
        kids = tree.children.get(node, [])
        if not kids:
            paths.append(Path(prefix))
            continue
        for kid in reversed(kids):
            stack.append((kid, prefix + (tree.nodes[kid],)))
    return DescriptionSet(fragment, paths)


def merge_paths(dset: DescriptionSet, enabled: bool = True) -> DescriptionSet:
    """Collapse identical paths and equal-length one-node-difference pairs.

    Disabled, this is the identity. Enabled, every retained path carries
    the summed multiplicity of the paths it represents, and no two
    retained paths are identical or differ in exactly one position.
    """
    if not enabled:
        return dset

    unique: list[Path] = []
    counts: dict[Path, int] = {}
    for p in dset.paths:
        if p not in counts:
            unique.append(p)
        counts[p] = counts.get(p, 0) + 1

    # union-find over the "differs in exactly one position" relation,
    # restricted to equal-length paths
    parent = list(range(len(unique)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_length: dict[int, list[int]] = {}
    for i, p in enumerate(unique):
        by_length.setdefault(p.length, []).append(i)
    for indices in by_length.values():
        for a_pos, i in enumerate(indices):
            pi = unique[i].nodes
            for j in indices[a_pos + 1 :]:
                qj = unique[j].nodes
                diffs = 0
                for x, y in zip(pi, qj):
                    if x != y:
                        diffs += 1
                        if diffs > 1:
                            break
                if diffs == 1:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)

    components: dict[int, list[int]] = {}
    for i in range(len(unique)):
        components.setdefault(find(i), []).append(i)

    merged_paths: list[Path] = []
    merged_counts: dict[Path, int] = {}
    for root in sorted(components):
        members = components[root]
        rep = min((unique[i] for i in members), key=serialize_path)
        merged_paths.append(rep)
        merged_counts[rep] = sum(counts[unique[i]] for i in members)
    return DescriptionSet(
        dset.fragment, merged_paths, merged_counts, premerge_count=dset.premerge_count
    )


def dump_description_set(dset: DescriptionSet) -> str:
    """Debug rendering: one serialized path per line."""
    return "\n".join(serialize_path(p) for p in dset.paths) + "\n"
