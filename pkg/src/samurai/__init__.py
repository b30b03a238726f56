"""Suffix-array pattern matching with fast interval merging.

Exact and k-error (Hamming / edit distance) queries over a static text,
answered by merging suffix array intervals with sampled dictionaries laid
over the heavy paths of the suffix tree.  Queries can be spread over a
fixed pool of workers that emulates a CREW PRAM.
"""

from .core_index import EMPTY, Interval, SuffixIndex, build_index
from .suffix_tree import HeavyPathInfo, SuffixTree, build_suffix_tree, heavy_path_decompose
from .static_dict import StaticYFastTrie, build_dict
from .interval_merge import MergeIndex, build_merge_index
from .parallel_engine import Engine, PramConfig, parallel_binary_search
from .approx_match import PrefixSuffixTables, build_prefix_suffix, match_1_error, match_k_error
from .search import ProbeStats

__all__ = [
    "EMPTY",
    "Interval",
    "SuffixIndex",
    "build_index",
    "SuffixTree",
    "HeavyPathInfo",
    "build_suffix_tree",
    "heavy_path_decompose",
    "StaticYFastTrie",
    "build_dict",
    "MergeIndex",
    "build_merge_index",
    "Engine",
    "PramConfig",
    "parallel_binary_search",
    "PrefixSuffixTables",
    "build_prefix_suffix",
    "match_1_error",
    "match_k_error",
    "ProbeStats",
]
