#pragma once

#include <map>

#include "shuffle.hpp"

namespace utr {

// Per-module alpha-free sublanguages with S_i = B_i.(alpha.C_i)*.alpha.E_i u T_i:
//   beginning      B_i : initial -> state just before alpha
//   central        C_i : state just after alpha -> state just before alpha
//   ending         E_i : state just after alpha -> anywhere final
//   unsynchronized T_i : initial -> anywhere final
// all four never crossing the alpha transition.
struct SublanguageSet {
    Automaton beginning, central, ending, unsynchronized;
    std::uint32_t before_state = 0;  // q_{i,1} in the source automaton
    std::uint32_t after_state = 0;   // q_{i,2}
};

// The source automaton must contain exactly one alpha-labelled transition.
SublanguageSet extract_sublanguages(const Automaton& a, const Letter& alpha);

enum class Family { beginning, central, ending, unsynchronized };

// w = w_0 alpha w_1 alpha ... alpha w_m; segment_lengths holds |w_0|..|w_m|
// (just {n} when m = 0).
struct SyncSkeleton {
    unsigned sync_count = 0;
    std::vector<unsigned> segment_lengths;
};

// Uniform weak compositions: `parts` nonnegative integers summing to `total`,
// each of the C(total+parts-1, parts-1) outcomes equally likely. Sorted
// distinct picks from {1..total+parts-1}, differenced.
std::vector<unsigned> sample_composition(unsigned total, unsigned parts, Rng& rng);

// On-line generator for systems synchronized on a single letter: counts the
// skeleton families s(n,m) / s(n,m,i0,im) from the shuffled B/C/E/T counts,
// draws a skeleton, then fills each segment with the shuffle machinery and
// joins them with alpha. Exact mode yields every length-n synchronized trace
// with probability exactly 1/s(n).
class SyncSampler {
public:
    // Every factor automaton must carry exactly one transition labelled with
    // `alpha`.
    SyncSampler(std::vector<Automaton> factors, Letter alpha, unsigned n, SampleMode mode);

    SampleMode mode() const { return mode_; }
    unsigned length() const { return n_; }
    const Letter& alpha() const { return alpha_; }
    const std::string& warning() const { return warning_; }
    std::size_t factor_count() const { return subs_.size(); }
    const SublanguageSet& sublanguages(std::size_t i) const { return subs_[i]; }

    // exact mode only
    const BigInt& total_count() const;                 // s(n)
    const BigInt& count_with_syncs(unsigned m) const;  // s(n,m)
    // combined shuffled counts b/c/e/t at lengths 0..n (any mode)
    const std::vector<BigInt>& family_counts(Family f) const;

    SyncSkeleton sample_skeleton(Rng& rng, BigRat* prob_out = nullptr) const;
    TraceWord sample_trace(Rng& rng, BigRat* prob_out = nullptr) const;

private:
    void build_exact_tables();
    void build_asymptotic_tables();
    SyncSkeleton sample_skeleton_exact(Rng& rng, BigRat* prob_out) const;
    SyncSkeleton sample_skeleton_asymptotic(Rng& rng) const;
    const std::vector<std::vector<long double>>& pair_table(unsigned m) const;

    std::vector<Automaton> factors_;
    Letter alpha_;
    unsigned n_ = 0;
    SampleMode mode_ = SampleMode::exact;
    std::string warning_;
    std::vector<SublanguageSet> subs_;
    std::vector<ShuffleSampler> fam_;  // indexed by Family

    std::vector<BigInt> b_, c_, e_, t_;  // combined counts, 0..n

    // exact skeleton tables
    std::vector<std::vector<BigInt>> cpow_;  // cpow_[j] = j-fold concatenation power of c
    std::vector<BigInt> snm_;                // s(n,m), m = 0..n
    BigInt sn_ = 0;

    // asymptotic skeleton tables (log space)
    struct LogFamily {
        long double log_c = 0.0L;
        long double log_w = 0.0L;  // -inf encodes omega = 0
        bool present = false;      // family language nonempty within the horizon
    };
    LogFamily asym_b_, asym_c_, asym_e_, asym_t_;
    std::vector<long double> log_snm_;
    mutable std::map<unsigned, std::vector<std::vector<long double>>> pair_cache_;
};

}  // namespace utr
