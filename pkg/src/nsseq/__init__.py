"""Construct, count, verify and decode maximum-length (n,s)-sequences.

An (n,s)-sequence is a binary sequence whose length-n windows are distinct and
never contain more than ``s`` consecutive zeros.
"""

from .bitword import (
    BitWord,
    Necklace,
    companion,
    is_ns_necklace,
    is_ns_word,
    lyndon_rep,
    max_rotation,
    min_rotation,
    necklace_of,
    weight,
    zero_run_max,
)
from .enumeration import (
    count_necklace_words,
    count_weight_necklace_words,
    count_weight_words,
    count_words,
    count_words_closed,
    fib_g,
    lambda_root,
    metrics,
)
from .generators import (
    SequenceBuffer,
    VerifyReport,
    generate_lex,
    generate_lex_acyclic,
    generate_merge,
    generate_merge_v,
    verify,
)
from .locate import NotPresent, SequenceIndex, build_index, locate, locate_lex_stream
from .vset import LayoutInfeasible, VSet, VSetSpec, match_v, vset_instantiate, vset_layout

__version__ = "0.1.0"
