"""In-place parallel partition algorithms with work/span and cache models."""

from ._ppart import (
    algorithms,
    block_length,
    block_start_index,
    brent_bound,
    count_predecessors,
    decode_block,
    encode_block,
    generate_input,
    is_partitioned,
    partition,
    quicksort,
)

__all__ = [
    "algorithms",
    "block_length",
    "block_start_index",
    "brent_bound",
    "count_predecessors",
    "decode_block",
    "encode_block",
    "generate_input",
    "is_partitioned",
    "partition",
    "quicksort",
]
