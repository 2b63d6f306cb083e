"""Method-level code clone detection via dominator-tree path comparison.

Each method becomes the set of root-to-leaf paths of its abstract
dominator tree; paths are fingerprinted and compared with string
metrics, and fragment pairs whose set distance stays below a threshold
are reported as clones.
"""

from .descset import DescriptionSet, Path, extract_description_set, merge_paths, serialize_instruction
from .fingerprint import FingerprintSet, HashScheme, LshIndex, build_lsh_index, fingerprint_set
from .frontend import CodeFragment, ConstantPool, abstract_instruction, analyze_source, build_cfg, build_dominator_tree, parse_methods
from .matcher import ClonePair, MatchConfig, classify, match_corpus, prefilter, set_delta
from .metrics import Metric, PathDistance, path_distance

__version__ = "0.1.0"
