#pragma once

#include <vector>

#include "automaton.hpp"
#include "counting.hpp"
#include "uniform.hpp"

namespace utr {

// Brute-force product; states are tuples of factor states interned to dense
// indices on demand (only tuples reachable from the initial one are
// materialized). The alphabet is the full union of the factor alphabets.
struct ProductAutomaton {
    Automaton base;
    std::vector<std::vector<std::uint32_t>> factor_map;  // dense index -> state tuple
};

// Shuffling automaton: a letter of factor i advances component i only.
// Factor alphabets must be pairwise disjoint.
ProductAutomaton build_shuffle_automaton(const std::vector<const Automaton*>& factors);

// Synchronised product over one shared letter alpha: non-alpha letters advance
// a single component; alpha advances every component simultaneously. Every
// factor must contain exactly one alpha-labelled transition, and the non-alpha
// alphabets must be pairwise disjoint.
ProductAutomaton build_sync_product(const std::vector<const Automaton*>& factors,
                                    const Letter& alpha);

// Exact language slice at length n, lexicographically sorted by letter ids.
// Refuses (with the exact count in the message) when the count exceeds
// `limit`; the default guard keeps oracle misuse from exhausting memory.
std::vector<TraceWord> enumerate_traces(const Automaton& a, unsigned n,
                                        std::size_t limit = 1000000);

}  // namespace utr
