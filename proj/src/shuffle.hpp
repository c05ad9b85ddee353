#pragma once

#include <string>
#include <vector>

#include "automaton.hpp"
#include "counting.hpp"
#include "rng.hpp"
#include "uniform.hpp"

namespace utr {

enum class SampleMode { exact, asymptotic, automatic };

const char* mode_name(SampleMode m);

// Exact mode is the default while the per-factor state total stays within
// 10^4 and the horizon within 512; beyond that `automatic` switches to the
// asymptotic approximation. Horizons below 16 always use exact tables.
SampleMode resolve_mode(SampleMode requested, std::size_t total_states, unsigned horizon,
                        bool allow_small_n_upgrade = true);

struct LengthVector {
    std::vector<unsigned> parts;  // n_i per factor
    unsigned total = 0;
    std::string warning;  // non-empty when an uncertified factor taints the draw
};

// Uniform interleaving of r words: repeatedly emits the first pending letter
// of word i with probability n_i/n. The inputs are not modified.
TraceWord shuffle_words(const std::vector<TraceWord>& words, Rng& rng,
                        BigRat* prob_out = nullptr);

// On-line sampler for the interleaving language of disjoint-alphabet factors:
// draws a length vector, then one word per factor by the recursive method,
// then shuffles. In exact mode every length-n trace has probability exactly
// 1/l(n); in asymptotic mode length vectors follow the dominant-growth
// approximation (n independent factor picks weighted by omega_i).
class ShuffleSampler {
public:
    ShuffleSampler(std::vector<Automaton> factors, unsigned horizon, SampleMode mode,
                   bool allow_small_n_upgrade = true);

    // count tables point into factors_, so the sampler moves but never copies
    ShuffleSampler(const ShuffleSampler&) = delete;
    ShuffleSampler& operator=(const ShuffleSampler&) = delete;
    ShuffleSampler(ShuffleSampler&&) = default;
    ShuffleSampler& operator=(ShuffleSampler&&) = default;

    SampleMode mode() const { return mode_; }
    unsigned horizon() const { return horizon_; }
    std::size_t factor_count() const { return factors_.size(); }
    const Automaton& factor(std::size_t i) const { return factors_[i]; }
    const CountTable& table(std::size_t i) const { return tables_[i]; }
    const AsymptoticParams& params(std::size_t i) const;
    const std::string& warning() const { return warning_; }

    // exact count of length-n interleavings (any mode; n <= horizon)
    const BigInt& total_count(unsigned n) const;
    // true when some interleaving of length n exists
    bool feasible(unsigned n) const { return sgn(total_count(n)) != 0; }

    // combined dominant-growth pair: omega = sum of factor omegas, C = product
    // of factor constants (asymptotic mode only)
    AsymptoticParams combined_asymptotics() const;

    LengthVector sample_length_vector(unsigned n, Rng& rng, BigRat* prob_out = nullptr) const;
    TraceWord sample_trace(unsigned n, Rng& rng, BigRat* prob_out = nullptr) const;

private:
    std::vector<Automaton> factors_;
    unsigned horizon_;
    SampleMode mode_;
    std::vector<CountTable> tables_;
    std::vector<std::vector<BigInt>> counts_;  // per factor, l_i(0..horizon)
    std::vector<std::vector<BigInt>> suffix_;  // suffix_[i] = counts_[i] (x) ... (x) counts_[r-1]
    std::vector<AsymptoticParams> params_;     // asymptotic mode
    std::string warning_;
};

}  // namespace utr
