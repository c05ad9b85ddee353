#pragma once

#include <string>
#include <vector>

#include "counting.hpp"
#include "rng.hpp"

namespace utr {

// A sampled trace. For words drawn from a single automaton, `states` records
// the visited state sequence (letters.size() + 1 entries); for composite
// traces produced by the on-line samplers it is empty. Letter pointers stay
// valid as long as the automaton / sampler that produced the trace lives.
struct TraceWord {
    std::vector<const Letter*> letters;
    std::vector<std::uint32_t> states;
};

std::string trace_to_string(const TraceWord& w);

// The recursive method: from the initial state, the successor at remaining
// length m is chosen with probability g[m-1][target] / g[m][current], by an
// exact draw against the big-integer weights. Every word of length n comes
// out with probability exactly 1/l(n). When prob_out is non-null the exact
// rational product of the branch probabilities is accumulated into it.
TraceWord draw_uniform_word(const CountTable& t, unsigned n, Rng& rng,
                            BigRat* prob_out = nullptr);

}  // namespace utr
