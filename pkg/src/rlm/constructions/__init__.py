from .bijection import BijectionTrace, check_injection, schroder_bernstein, schroder_bernstein_trace
from .counting import CensusReport, FiniteProduct, finite_product, indicator_census
from .enumeration import (
    Absorption,
    Enumeration,
    Removal,
    absorb_countable,
    arithmetic,
    naturals,
    pairing,
    remove_countable,
    unpairing,
)
from .words import (
    Diagonal,
    Split,
    Word,
    cantor_membership,
    dead_words,
    deinterleave,
    diagonal,
    interleave,
    k_set,
    random_word,
    word_value,
    words_of,
)
