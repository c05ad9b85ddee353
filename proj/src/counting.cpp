#include "counting.hpp"

#include <algorithm>
#include <cmath>

namespace utr {

const BigInt& CountTable::count(unsigned n) const {
    if (n > horizon)
        throw DomainError("count for length " + std::to_string(n) +
                          " exceeds the table horizon " + std::to_string(horizon));
    return g[n][automaton->initial];
}

CountTable build_count_table(const Automaton& a, unsigned horizon) {
    CountTable t;
    t.automaton = &a;
    t.horizon = horizon;
    std::uint32_t n_states = a.state_count();
    t.g.assign(horizon + 1, std::vector<BigInt>(n_states));
    for (std::uint32_t s = 0; s < n_states; ++s) t.g[0][s] = a.finals[s] ? 1 : 0;
    for (unsigned i = 1; i <= horizon; ++i) {
        const auto& prev = t.g[i - 1];
        auto& row = t.g[i];
        for (std::uint32_t s = 0; s < n_states; ++s) {
            BigInt acc = 0;
            for (const Arc& arc : a.adj[s]) acc += prev[arc.target];
            row[s] = acc;
        }
    }
    return t;
}

std::vector<BigInt> count_sequence(const CountTable& t) {
    std::vector<BigInt> out(t.horizon + 1);
    for (unsigned i = 0; i <= t.horizon; ++i) out[i] = t.g[i][t.automaton->initial];
    return out;
}

std::vector<unsigned> default_ladder(unsigned n) {
    auto cap = [](unsigned v) { return std::min(std::max(v, 1u), 512u); };
    std::vector<unsigned> ladder{cap(n), cap(2 * n), cap(4 * n)};
    std::sort(ladder.begin(), ladder.end());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
    if (ladder.size() == 1) {
        unsigned p = ladder[0];
        if (p > 1)
            ladder.insert(ladder.begin(), std::max(1u, p / 2));
        else
            ladder.push_back(2);
    }
    return ladder;
}

AsymptoticParams estimate_asymptotics(const CountTable& t, const GrowthDiagnostics& diag,
                                      std::vector<unsigned> ladder) {
    if (ladder.empty()) throw DomainError("asymptotics ladder must not be empty");
    std::sort(ladder.begin(), ladder.end());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
    if (ladder.size() == 1) ladder = default_ladder(ladder[0]);

    unsigned top = ladder.back();
    unsigned check = ladder[ladder.size() - 2];
    if (t.horizon < top + 1)
        throw DomainError("count table horizon too small for the asymptotics ladder");

    AsymptoticParams p;
    p.fit_horizon = top;
    p.certified = diag.certified();
    p.warning = diag.warning;

    const BigInt& l_top = t.count(top);
    if (sgn(l_top) == 0)
        throw DomainError("empty language at length " + std::to_string(top));
    const BigInt& l_next = t.count(top + 1);
    if (sgn(l_next) == 0) {
        p.omega = 0.0L;
        p.c_const = to_long_double(l_top);
        p.relative_residual = INFINITY;
        p.certified = false;
        if (p.warning.empty()) p.warning = "zero growth ratio beyond the fit horizon";
        return p;
    }

    long double log2_omega = log2_big(l_next) - log2_big(l_top);
    long double log2_c = log2_big(l_top) - static_cast<long double>(top) * log2_omega;
    p.omega = std::exp2(log2_omega);
    p.c_const = std::exp2(log2_c);

    const BigInt& l_check = t.count(check);
    if (sgn(l_check) == 0) {
        p.relative_residual = INFINITY;
        if (p.warning.empty()) p.warning = "empty language at the check horizon";
    } else {
        long double predicted =
            log2_c + static_cast<long double>(check) * log2_omega - log2_big(l_check);
        p.relative_residual = std::fabs(std::exp2(predicted) - 1.0L);
    }
    return p;
}

AsymptoticParams estimate_asymptotics(const Automaton& a, std::vector<unsigned> ladder) {
    if (ladder.empty()) throw DomainError("asymptotics ladder must not be empty");
    std::sort(ladder.begin(), ladder.end());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
    if (ladder.size() == 1) ladder = default_ladder(ladder[0]);
    CountTable t = build_count_table(a, ladder.back() + 1);
    return estimate_asymptotics(t, check_growth_conditions(a), ladder);
}

}  // namespace utr
