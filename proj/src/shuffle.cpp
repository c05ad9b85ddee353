#include "shuffle.hpp"

#include <algorithm>

namespace utr {

const char* mode_name(SampleMode m) {
    switch (m) {
        case SampleMode::exact: return "exact";
        case SampleMode::asymptotic: return "asymptotic";
        case SampleMode::automatic: return "auto";
    }
    return "?";
}

SampleMode resolve_mode(SampleMode requested, std::size_t total_states, unsigned horizon,
                        bool allow_small_n_upgrade) {
    SampleMode m = requested;
    if (m == SampleMode::automatic)
        m = (total_states <= 10000 && horizon <= 512) ? SampleMode::exact
                                                      : SampleMode::asymptotic;
    if (m == SampleMode::asymptotic && horizon < 16 && allow_small_n_upgrade)
        m = SampleMode::exact;
    return m;
}

TraceWord shuffle_words(const std::vector<TraceWord>& words, Rng& rng, BigRat* prob_out) {
    std::vector<std::size_t> next(words.size(), 0);
    std::vector<std::size_t> remaining(words.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        remaining[i] = words[i].letters.size();
        total += remaining[i];
    }
    TraceWord out;
    out.letters.reserve(total);
    while (total > 0) {
        std::uint64_t pick = rng.below(total);
        std::size_t chosen = 0;
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < words.size(); ++i) {
            acc += remaining[i];
            if (pick < acc) {
                chosen = i;
                break;
            }
        }
        if (prob_out)
            *prob_out *= make_ratio(BigInt(static_cast<unsigned long>(remaining[chosen])),
                                    BigInt(static_cast<unsigned long>(total)));
        out.letters.push_back(words[chosen].letters[next[chosen]]);
        ++next[chosen];
        --remaining[chosen];
        --total;
    }
    return out;
}

ShuffleSampler::ShuffleSampler(std::vector<Automaton> factors, unsigned horizon,
                               SampleMode mode, bool allow_small_n_upgrade)
    : factors_(std::move(factors)), horizon_(horizon) {
    if (factors_.empty()) throw DomainError("sampler needs at least one factor");

    std::size_t total_states = 0;
    for (const Automaton& f : factors_) total_states += f.state_count();
    mode_ = resolve_mode(mode, total_states, horizon_, allow_small_n_upgrade);

    std::vector<unsigned> ladder = default_ladder(horizon_);
    unsigned table_horizon = horizon_;
    if (mode_ == SampleMode::asymptotic)
        table_horizon = std::max(table_horizon, ladder.back() + 1);

    tables_.reserve(factors_.size());
    for (const Automaton& f : factors_) tables_.push_back(build_count_table(f, table_horizon));
    counts_.reserve(factors_.size());
    for (const CountTable& t : tables_) {
        std::vector<BigInt> seq = count_sequence(t);
        seq.resize(horizon_ + 1);
        counts_.push_back(std::move(seq));
    }

    if (mode_ == SampleMode::exact) {
        suffix_.resize(factors_.size());
        suffix_.back() = counts_.back();
        for (std::size_t i = factors_.size() - 1; i-- > 0;)
            suffix_[i] = binomial_convolve(counts_[i], suffix_[i + 1]);
    } else {
        params_.reserve(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            AsymptoticParams p;
            try {
                p = estimate_asymptotics(tables_[i], check_growth_conditions(factors_[i]),
                                         ladder);
            } catch (const DomainError&) {
                p.omega = 0.0L;
                p.c_const = to_long_double(counts_[i][0]);
                p.certified = false;
                p.warning = "finite or empty language; no exponential growth";
            }
            if (!p.certified) {
                if (!warning_.empty()) warning_ += "; ";
                warning_ += "factor " + std::to_string(i) + ": " +
                            (p.warning.empty() ? "uncertified growth" : p.warning);
            }
            params_.push_back(std::move(p));
        }
    }
}

const AsymptoticParams& ShuffleSampler::params(std::size_t i) const {
    if (mode_ != SampleMode::asymptotic)
        throw DomainError("asymptotic parameters are only computed in asymptotic mode");
    return params_[i];
}

const BigInt& ShuffleSampler::total_count(unsigned n) const {
    if (n > horizon_) throw DomainError("length exceeds the sampler horizon");
    if (mode_ == SampleMode::exact) return suffix_[0][n];
    // combined exact counts are not materialized in asymptotic mode
    throw DomainError("exact interleaving counts are only available in exact mode");
}

AsymptoticParams ShuffleSampler::combined_asymptotics() const {
    if (mode_ != SampleMode::asymptotic)
        throw DomainError("asymptotic parameters are only computed in asymptotic mode");
    AsymptoticParams out;
    out.omega = 0.0L;
    out.c_const = 1.0L;
    out.certified = true;
    out.fit_horizon = params_[0].fit_horizon;
    for (const AsymptoticParams& p : params_) {
        out.omega += p.omega;
        out.c_const *= p.c_const;
        out.certified = out.certified && p.certified;
        out.relative_residual = std::max(out.relative_residual, p.relative_residual);
    }
    out.warning = warning_;
    return out;
}

LengthVector ShuffleSampler::sample_length_vector(unsigned n, Rng& rng,
                                                  BigRat* prob_out) const {
    if (n > horizon_) throw DomainError("length exceeds the sampler horizon");
    LengthVector lv;
    lv.total = n;
    lv.parts.assign(factors_.size(), 0);

    if (mode_ == SampleMode::exact) {
        if (sgn(suffix_[0][n]) == 0)
            throw DomainError("no interleaving of length " + std::to_string(n) +
                              ": the language is empty at this length");
        unsigned remaining = n;
        for (std::size_t i = 0; i + 1 < factors_.size(); ++i) {
            const BigInt& total = suffix_[i][remaining];
            BigInt pick = rng.below_big(total);
            BigInt acc = 0, binom = 1, w;
            unsigned chosen = 0;
            for (unsigned k = 0; k <= remaining; ++k) {
                if (k > 0) {
                    binom *= remaining - k + 1;
                    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), k);
                }
                if (sgn(counts_[i][k]) == 0 || sgn(suffix_[i + 1][remaining - k]) == 0)
                    continue;
                w = binom * counts_[i][k];
                w *= suffix_[i + 1][remaining - k];
                acc += w;
                if (pick < acc) {
                    chosen = k;
                    if (prob_out) *prob_out *= make_ratio(w, total);
                    break;
                }
            }
            lv.parts[i] = chosen;
            remaining -= chosen;
        }
        lv.parts.back() = remaining;
        return lv;
    }

    // asymptotic: n independent picks with Pr(i) = omega_i / sum(omega)
    long double total_omega = 0.0L;
    for (const AsymptoticParams& p : params_) total_omega += p.omega;
    if (!(total_omega > 0.0L))
        throw DomainError(
            "asymptotic length sampling needs at least one factor with exponential growth; "
            "use exact mode");
    lv.warning = warning_;
    const int max_attempts = 1000;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::fill(lv.parts.begin(), lv.parts.end(), 0u);
        for (unsigned step = 0; step < n; ++step) {
            long double x = static_cast<long double>(rng.real01()) * total_omega;
            long double acc = 0.0L;
            std::size_t chosen = factors_.size() - 1;
            for (std::size_t i = 0; i < factors_.size(); ++i) {
                acc += params_[i].omega;
                if (x < acc) {
                    chosen = i;
                    break;
                }
            }
            ++lv.parts[chosen];
        }
        bool ok = true;
        for (std::size_t i = 0; i < factors_.size() && ok; ++i)
            ok = sgn(counts_[i][lv.parts[i]]) != 0;
        if (ok) return lv;
    }
    throw DomainError(
        "asymptotic length sampling found no feasible split after 1000 attempts; "
        "use exact mode");
}

TraceWord ShuffleSampler::sample_trace(unsigned n, Rng& rng, BigRat* prob_out) const {
    LengthVector lv = sample_length_vector(n, rng, prob_out);
    std::vector<TraceWord> words;
    words.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
        words.push_back(draw_uniform_word(tables_[i], lv.parts[i], rng, prob_out));
    return shuffle_words(words, rng, prob_out);
}

}  // namespace utr
