#include "sync.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace utr {

namespace {

constexpr long double neg_inf = -std::numeric_limits<long double>::infinity();

// copy without the alpha transitions, letters trimmed to the used ones
Automaton strip_alpha(const Automaton& a, const std::string& alpha_id,
                      std::uint32_t initial, const std::vector<bool>& finals) {
    Automaton out;
    out.initial = initial;
    out.finals = finals;
    out.adj.resize(a.state_count());
    std::vector<std::uint32_t> letter_remap(a.alphabet.size(), UINT32_MAX);
    for (std::uint32_t s = 0; s < a.state_count(); ++s) {
        for (const Arc& arc : a.adj[s]) {
            if (a.alphabet[arc.letter].id == alpha_id) continue;
            std::uint32_t& nl = letter_remap[arc.letter];
            if (nl == UINT32_MAX) nl = out.add_letter(a.alphabet[arc.letter]);
            out.add_arc(s, nl, arc.target);
        }
    }
    return prune_unreachable(out);
}

long double log_binom(unsigned n, unsigned k) {
    if (k > n) return neg_inf;
    return std::lgamma(static_cast<long double>(n) + 1.0L) -
           std::lgamma(static_cast<long double>(k) + 1.0L) -
           std::lgamma(static_cast<long double>(n - k) + 1.0L);
}

long double log_sum_exp(const std::vector<long double>& xs) {
    long double m = neg_inf;
    for (long double x : xs) m = std::max(m, x);
    if (m == neg_inf) return neg_inf;
    long double acc = 0.0L;
    for (long double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

}  // namespace

SublanguageSet extract_sublanguages(const Automaton& a, const Letter& alpha) {
    std::size_t count = 0;
    std::uint32_t q1 = 0, q2 = 0;
    for (std::uint32_t s = 0; s < a.state_count(); ++s) {
        for (const Arc& arc : a.adj[s]) {
            if (a.alphabet[arc.letter].id != alpha.id) continue;
            q1 = s;
            q2 = arc.target;
            ++count;
        }
    }
    if (count != 1)
        throw DomainError("automaton has " + std::to_string(count) + " transitions labelled '" +
                          alpha.id + "'; the synchronized pipeline needs exactly one");

    SublanguageSet out;
    out.before_state = q1;
    out.after_state = q2;
    std::vector<bool> only_q1(a.state_count(), false);
    only_q1[q1] = true;
    out.beginning = strip_alpha(a, alpha.id, a.initial, only_q1);
    out.central = strip_alpha(a, alpha.id, q2, only_q1);
    out.ending = strip_alpha(a, alpha.id, q2, a.finals);
    out.unsynchronized = strip_alpha(a, alpha.id, a.initial, a.finals);
    return out;
}

std::vector<unsigned> sample_composition(unsigned total, unsigned parts, Rng& rng) {
    if (parts == 0) {
        if (total > 0)
            throw DomainError("cannot split a positive total into zero parts");
        return {};
    }
    if (parts == 1) return {total};

    unsigned universe = total + parts - 1;
    std::vector<unsigned> pool(universe);
    for (unsigned i = 0; i < universe; ++i) pool[i] = i + 1;
    // partial Fisher-Yates: the first parts-1 entries become the distinct picks
    for (unsigned i = 0; i < parts - 1; ++i) {
        unsigned j = i + static_cast<unsigned>(rng.below(universe - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<unsigned> picks(pool.begin(), pool.begin() + (parts - 1));
    std::sort(picks.begin(), picks.end());

    std::vector<unsigned> out(parts);
    out[0] = picks[0] - 1;
    for (unsigned k = 1; k < parts - 1; ++k) out[k] = picks[k] - picks[k - 1] - 1;
    out[parts - 1] = universe - picks[parts - 2];
    return out;
}

SyncSampler::SyncSampler(std::vector<Automaton> factors, Letter alpha, unsigned n,
                         SampleMode mode)
    : factors_(std::move(factors)), alpha_(std::move(alpha)), n_(n) {
    if (factors_.empty()) throw DomainError("sampler needs at least one factor");

    std::size_t total_states = 0;
    for (const Automaton& f : factors_) total_states += f.state_count();
    mode_ = resolve_mode(mode, total_states, n_);

    subs_.reserve(factors_.size());
    for (const Automaton& f : factors_) subs_.push_back(extract_sublanguages(f, alpha_));

    auto family_factors = [&](Family f) {
        std::vector<Automaton> v;
        v.reserve(subs_.size());
        for (const SublanguageSet& s : subs_) {
            switch (f) {
                case Family::beginning: v.push_back(s.beginning); break;
                case Family::central: v.push_back(s.central); break;
                case Family::ending: v.push_back(s.ending); break;
                case Family::unsynchronized: v.push_back(s.unsynchronized); break;
            }
        }
        return v;
    };
    for (Family f : {Family::beginning, Family::central, Family::ending,
                     Family::unsynchronized}) {
        fam_.emplace_back(family_factors(f), n_, mode_, /*allow_small_n_upgrade=*/false);
        if (!fam_.back().warning().empty()) {
            if (!warning_.empty()) warning_ += "; ";
            static const char* names[] = {"B", "C", "E", "T"};
            warning_ += std::string(names[static_cast<int>(f)]) + " family: " +
                        fam_.back().warning();
        }
    }

    // combined shuffled counts per family, 0..n
    auto combine = [&](const ShuffleSampler& fs) {
        std::vector<BigInt> acc{BigInt(1)};
        acc.resize(n_ + 1, BigInt(0));  // neutral element of the shuffle convolution
        bool first = true;
        for (std::size_t i = 0; i < fs.factor_count(); ++i) {
            std::vector<BigInt> seq = count_sequence(fs.table(i));
            seq.resize(n_ + 1, BigInt(0));
            acc = first ? std::move(seq) : binomial_convolve(acc, seq);
            first = false;
        }
        return acc;
    };
    b_ = combine(fam_[0]);
    c_ = combine(fam_[1]);
    e_ = combine(fam_[2]);
    t_ = combine(fam_[3]);

    if (mode_ == SampleMode::exact)
        build_exact_tables();
    else
        build_asymptotic_tables();
}

void SyncSampler::build_exact_tables() {
    // concatenation powers of the central counts; once a power vanishes every
    // later one does too
    cpow_.clear();
    std::vector<BigInt> unit(n_ + 1, BigInt(0));
    unit[0] = 1;
    cpow_.push_back(std::move(unit));
    for (unsigned j = 1; j + 1 <= n_ && j < n_; ++j) {
        std::vector<BigInt> next = cauchy_convolve(cpow_.back(), c_);
        bool all_zero = std::all_of(next.begin(), next.end(),
                                    [](const BigInt& v) { return sgn(v) == 0; });
        cpow_.push_back(std::move(next));
        if (all_zero) break;
    }

    snm_.assign(n_ + 1, BigInt(0));
    snm_[0] = t_[n_];
    BigInt term;
    for (unsigned m = 1; m <= n_; ++m) {
        if (m - 1 >= cpow_.size()) break;  // no central words left to fill longer skeletons
        const std::vector<BigInt>& mid = cpow_[m - 1];
        BigInt acc = 0;
        for (unsigned i0 = 0; i0 + m <= n_; ++i0) {
            if (sgn(b_[i0]) == 0) continue;
            for (unsigned im = 0; i0 + im + m <= n_; ++im) {
                if (sgn(e_[im]) == 0) continue;
                unsigned mid_len = n_ - m - i0 - im;
                if (sgn(mid[mid_len]) == 0) continue;
                term = b_[i0] * e_[im];
                term *= mid[mid_len];
                acc += term;
            }
        }
        snm_[m] = acc;
    }
    sn_ = 0;
    for (const BigInt& v : snm_) sn_ += v;
}

void SyncSampler::build_asymptotic_tables() {
    auto family_log = [&](const ShuffleSampler& fs, const std::vector<BigInt>& counts) {
        LogFamily lf;
        lf.present = std::any_of(counts.begin(), counts.end(),
                                 [](const BigInt& v) { return sgn(v) != 0; });
        if (!lf.present) return lf;
        AsymptoticParams p = fs.combined_asymptotics();
        lf.log_c = p.c_const > 0.0L ? std::log(p.c_const) : neg_inf;
        lf.log_w = p.omega > 0.0L ? std::log(p.omega) : neg_inf;
        return lf;
    };
    asym_b_ = family_log(fam_[0], b_);
    asym_c_ = family_log(fam_[1], c_);
    asym_e_ = family_log(fam_[2], e_);
    asym_t_ = family_log(fam_[3], t_);

    auto pow_log = [](const LogFamily& f, unsigned k) {
        // log(C * w^k) with w = 0 meaning the family only contributes length 0
        if (!f.present) return neg_inf;
        if (k == 0) return f.log_c;
        return f.log_w == neg_inf ? neg_inf : f.log_c + static_cast<long double>(k) * f.log_w;
    };

    // G(j) = logsumexp over i0+im=j of i0*log(wB) + im*log(wE), constants excluded
    std::vector<long double> G(n_ + 1, neg_inf);
    if (asym_b_.present && asym_e_.present) {
        for (unsigned j = 0; j <= n_; ++j) {
            std::vector<long double> terms;
            terms.reserve(j + 1);
            for (unsigned i0 = 0; i0 <= j; ++i0) {
                long double lb = i0 == 0 ? 0.0L
                                         : (asym_b_.log_w == neg_inf
                                                ? neg_inf
                                                : static_cast<long double>(i0) * asym_b_.log_w);
                long double le = (j - i0) == 0
                                     ? 0.0L
                                     : (asym_e_.log_w == neg_inf
                                            ? neg_inf
                                            : static_cast<long double>(j - i0) * asym_e_.log_w);
                if (lb == neg_inf || le == neg_inf) continue;
                terms.push_back(lb + le);
            }
            G[j] = log_sum_exp(terms);
        }
    }

    log_snm_.assign(n_ + 1, neg_inf);
    log_snm_[0] = pow_log(asym_t_, n_);
    if (asym_b_.present && asym_e_.present) {
        long double const_be = asym_b_.log_c + asym_e_.log_c;
        if (n_ >= 1) log_snm_[1] = const_be + G[n_ - 1];
        if (asym_c_.present) {
            for (unsigned m = 2; m <= n_; ++m) {
                std::vector<long double> terms;
                for (unsigned mid = 0; mid + m <= n_; ++mid) {
                    long double lc_mid =
                        mid == 0 ? 0.0L
                                 : (asym_c_.log_w == neg_inf
                                        ? neg_inf
                                        : static_cast<long double>(mid) * asym_c_.log_w);
                    if (lc_mid == neg_inf) continue;
                    long double g = G[n_ - m - mid];
                    if (g == neg_inf) continue;
                    // number of ways to split `mid` over the m-1 central words
                    terms.push_back(lc_mid + g + log_binom(mid + m - 2, m - 2));
                }
                log_snm_[m] = const_be +
                              static_cast<long double>(m - 1) * asym_c_.log_c +
                              log_sum_exp(terms);
            }
        }
    }
}

const BigInt& SyncSampler::total_count() const {
    if (mode_ != SampleMode::exact)
        throw DomainError("exact synchronized counts are only available in exact mode");
    return sn_;
}

const BigInt& SyncSampler::count_with_syncs(unsigned m) const {
    if (mode_ != SampleMode::exact)
        throw DomainError("exact synchronized counts are only available in exact mode");
    if (m > n_) throw DomainError("more synchronizations than letters");
    return snm_[m];
}

const std::vector<BigInt>& SyncSampler::family_counts(Family f) const {
    switch (f) {
        case Family::beginning: return b_;
        case Family::central: return c_;
        case Family::ending: return e_;
        case Family::unsynchronized: return t_;
    }
    return t_;
}

const std::vector<std::vector<long double>>& SyncSampler::pair_table(unsigned m) const {
    auto it = pair_cache_.find(m);
    if (it != pair_cache_.end()) return it->second;

    std::vector<std::vector<long double>> table(n_ - m + 1);
    for (unsigned i0 = 0; i0 + m <= n_; ++i0) {
        table[i0].assign(n_ - m - i0 + 1, neg_inf);
        for (unsigned im = 0; i0 + im + m <= n_; ++im) {
            unsigned mid = n_ - m - i0 - im;
            if (m == 1 && mid != 0) continue;
            long double lb =
                i0 == 0 ? asym_b_.log_c
                        : (asym_b_.log_w == neg_inf
                               ? neg_inf
                               : asym_b_.log_c + static_cast<long double>(i0) * asym_b_.log_w);
            long double le =
                im == 0 ? asym_e_.log_c
                        : (asym_e_.log_w == neg_inf
                               ? neg_inf
                               : asym_e_.log_c + static_cast<long double>(im) * asym_e_.log_w);
            if (lb == neg_inf || le == neg_inf) continue;
            long double v = lb + le;
            if (m >= 2) {
                if (!asym_c_.present) continue;
                long double lc_mid =
                    mid == 0 ? 0.0L
                             : (asym_c_.log_w == neg_inf
                                    ? neg_inf
                                    : static_cast<long double>(mid) * asym_c_.log_w);
                if (lc_mid == neg_inf) continue;
                v += static_cast<long double>(m - 1) * asym_c_.log_c + lc_mid +
                     log_binom(mid + m - 2, m - 2);
            }
            table[i0][im] = v;
        }
    }
    return pair_cache_.emplace(m, std::move(table)).first->second;
}

SyncSkeleton SyncSampler::sample_skeleton_exact(Rng& rng, BigRat* prob_out) const {
    if (sgn(sn_) == 0)
        throw DomainError("no synchronized trace of length " + std::to_string(n_));
    SyncSkeleton sk;

    // m with probability s(n,m)/s(n)
    {
        BigInt pick = rng.below_big(sn_);
        BigInt acc = 0;
        unsigned m = 0;
        for (; m <= n_; ++m) {
            acc += snm_[m];
            if (pick < acc) break;
        }
        sk.sync_count = m;
        if (prob_out) *prob_out *= make_ratio(snm_[m], sn_);
    }

    if (sk.sync_count == 0) {
        sk.segment_lengths = {n_};
        return sk;
    }
    unsigned m = sk.sync_count;

    // (i0, im) against b(i0) e(im) c^(m-1)(n-m-i0-im)
    const std::vector<BigInt>& mid_counts = cpow_[m - 1];
    unsigned i0 = 0, im = 0;
    {
        BigInt pick = rng.below_big(snm_[m]);
        BigInt acc = 0, w;
        bool done = false;
        for (i0 = 0; i0 + m <= n_ && !done; ++i0) {
            if (sgn(b_[i0]) == 0) continue;
            for (im = 0; i0 + im + m <= n_; ++im) {
                if (sgn(e_[im]) == 0) continue;
                unsigned mid = n_ - m - i0 - im;
                if (sgn(mid_counts[mid]) == 0) continue;
                w = b_[i0] * e_[im];
                w *= mid_counts[mid];
                acc += w;
                if (pick < acc) {
                    done = true;
                    if (prob_out) *prob_out *= make_ratio(w, snm_[m]);
                    break;
                }
            }
        }
        --i0;  // the loops over-advance by one on exit
    }

    sk.segment_lengths.assign(m + 1, 0);
    sk.segment_lengths[0] = i0;
    sk.segment_lengths[m] = im;

    // middle lengths by conditional draws against the concatenation powers
    unsigned remaining = n_ - m - i0 - im;
    for (unsigned k = 1; k + 1 <= m; ++k) {
        unsigned parts_after = m - 1 - k;
        const BigInt& total = cpow_[parts_after + 1][remaining];
        BigInt pick = rng.below_big(total);
        BigInt acc = 0, w;
        unsigned chosen = remaining;
        for (unsigned j = 0; j <= remaining; ++j) {
            if (sgn(c_[j]) == 0 || sgn(cpow_[parts_after][remaining - j]) == 0) continue;
            w = c_[j] * cpow_[parts_after][remaining - j];
            acc += w;
            if (pick < acc) {
                chosen = j;
                if (prob_out) *prob_out *= make_ratio(w, total);
                break;
            }
        }
        sk.segment_lengths[k] = chosen;
        remaining -= chosen;
    }
    return sk;
}

SyncSkeleton SyncSampler::sample_skeleton_asymptotic(Rng& rng) const {
    long double log_sn = log_sum_exp(log_snm_);
    if (log_sn == neg_inf)
        throw DomainError("no synchronized trace of length " + std::to_string(n_) +
                          " (asymptotic tables are empty)");

    const int max_attempts = 1000;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        // m
        unsigned m = 0;
        {
            long double x = static_cast<long double>(rng.real01());
            long double acc = 0.0L;
            for (unsigned cand = 0; cand <= n_; ++cand) {
                if (log_snm_[cand] == neg_inf) continue;
                acc += std::exp(log_snm_[cand] - log_sn);
                if (x < acc) {
                    m = cand;
                    break;
                }
                m = cand;  // numerical slack: fall back to the last viable m
            }
        }

        SyncSkeleton sk;
        sk.sync_count = m;
        if (m == 0) {
            if (sgn(t_[n_]) == 0) continue;
            sk.segment_lengths = {n_};
            return sk;
        }

        // (i0, im)
        const auto& table = pair_table(m);
        std::vector<long double> flat;
        flat.reserve((n_ - m + 1) * (n_ - m + 1));
        for (const auto& row : table)
            for (long double v : row) flat.push_back(v);
        long double log_total = log_sum_exp(flat);
        if (log_total == neg_inf) continue;
        unsigned i0 = 0, im = 0;
        {
            long double x = static_cast<long double>(rng.real01());
            long double acc = 0.0L;
            bool done = false;
            for (unsigned a = 0; a < table.size() && !done; ++a) {
                for (unsigned b = 0; b < table[a].size(); ++b) {
                    if (table[a][b] == neg_inf) continue;
                    acc += std::exp(table[a][b] - log_total);
                    i0 = a;
                    im = b;
                    if (x < acc) {
                        done = true;
                        break;
                    }
                }
            }
        }

        sk.segment_lengths.assign(m + 1, 0);
        sk.segment_lengths[0] = i0;
        sk.segment_lengths[m] = im;
        if (m >= 2) {
            std::vector<unsigned> mids =
                sample_composition(n_ - m - i0 - im, m - 1, rng);
            for (unsigned k = 1; k < m; ++k) sk.segment_lengths[k] = mids[k - 1];
        }

        // feasibility against the exact combined counts
        bool ok = sgn(b_[sk.segment_lengths[0]]) != 0 && sgn(e_[sk.segment_lengths[m]]) != 0;
        for (unsigned k = 1; ok && k + 1 <= m; ++k) ok = sgn(c_[sk.segment_lengths[k]]) != 0;
        if (ok) return sk;
    }
    throw DomainError(
        "asymptotic skeleton sampling found no feasible skeleton after 1000 attempts; "
        "use exact mode");
}

SyncSkeleton SyncSampler::sample_skeleton(Rng& rng, BigRat* prob_out) const {
    if (mode_ == SampleMode::exact) return sample_skeleton_exact(rng, prob_out);
    if (prob_out)
        throw DomainError("exact probability accounting is only available in exact mode");
    return sample_skeleton_asymptotic(rng);
}

TraceWord SyncSampler::sample_trace(Rng& rng, BigRat* prob_out) const {
    SyncSkeleton sk = sample_skeleton(rng, prob_out);
    TraceWord out;
    if (sk.sync_count == 0) {
        return fam_[static_cast<int>(Family::unsynchronized)].sample_trace(n_, rng, prob_out);
    }
    for (unsigned k = 0; k <= sk.sync_count; ++k) {
        const ShuffleSampler& fs =
            k == 0 ? fam_[static_cast<int>(Family::beginning)]
                   : (k == sk.sync_count ? fam_[static_cast<int>(Family::ending)]
                                         : fam_[static_cast<int>(Family::central)]);
        TraceWord segment = fs.sample_trace(sk.segment_lengths[k], rng, prob_out);
        if (k > 0) out.letters.push_back(&alpha_);
        out.letters.insert(out.letters.end(), segment.letters.begin(), segment.letters.end());
    }
    return out;
}

}  // namespace utr
