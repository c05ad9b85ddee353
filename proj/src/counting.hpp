#pragma once

#include <string>
#include <vector>

#include "automaton.hpp"
#include "bigint.hpp"
#include "error.hpp"

namespace utr {

// g[i][s] = number of words of length i leading from state s to any final
// state. Row 0 is the final-state indicator; row i sums row i-1 over the
// outgoing transitions. All arithmetic is exact.
struct CountTable {
    const Automaton* automaton = nullptr;  // not owned; must outlive the table
    unsigned horizon = 0;
    std::vector<std::vector<BigInt>> g;    // (horizon+1) rows, state_count() columns

    // l(n) = g[n][initial]; throws when n exceeds the horizon.
    const BigInt& count(unsigned n) const;
};

CountTable build_count_table(const Automaton& a, unsigned horizon);

// Convenience: the l(0..horizon) column of a table.
std::vector<BigInt> count_sequence(const CountTable& t);

struct AsymptoticParams {
    long double omega = 0.0L;        // dominant growth rate
    long double c_const = 0.0L;      // constant in l(n) ~ C * omega^n
    unsigned fit_horizon = 0;        // horizon used for the fit
    long double relative_residual = 0.0L;  // |C*omega^h / l(h) - 1| at the check horizon
    bool certified = false;          // copied from check_growth_conditions
    std::string warning;
};

// Dominant growth pair estimated from exact count ratios: omega from
// l(n+1)/l(n) at the largest ladder horizon, C by back-substitution, residual
// checked at the second-largest horizon. Throws DomainError when the language
// is empty at the top horizon; uncertified automata get certified=false and a
// warning instead of an error.
AsymptoticParams estimate_asymptotics(const Automaton& a, std::vector<unsigned> ladder);

// Same, reusing a prebuilt table (horizon must reach max(ladder)+1) and
// precomputed diagnostics.
AsymptoticParams estimate_asymptotics(const CountTable& t, const GrowthDiagnostics& diag,
                                      std::vector<unsigned> ladder);

// {n, 2n, 4n} capped at 512, deduplicated, always at least two points.
std::vector<unsigned> default_ladder(unsigned n);

}  // namespace utr
