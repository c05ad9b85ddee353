#include "stats.hpp"

#include <cmath>
#include <unordered_set>

#include "error.hpp"

namespace utr {

void Histogram::merge(const Histogram& other) {
    for (const auto& [word, count] : other.counts) counts[word] += count;
    total += other.total;
}

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = 1e-16;

// P(a,x) by the ascending series.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a,x) by the Lentz continued fraction.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw DomainError("gamma_q needs a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_upper_tail(double statistic, unsigned df) {
    if (df == 0) throw DomainError("chi-square tail needs df >= 1");
    return gamma_q(0.5 * df, 0.5 * statistic);
}

ChiSquareResult chi_square_uniform(const Histogram& h,
                                   const std::vector<std::string>& support) {
    if (support.empty()) throw DomainError("empty support");
    std::unordered_set<std::string> in_support(support.begin(), support.end());
    for (const auto& [word, count] : h.counts) {
        if (!in_support.count(word))
            throw DomainError("sampler produced a trace outside the oracle support: '" +
                              word + "'");
    }
    if (h.total < 5 * support.size())
        throw DomainError("chi-square needs at least 5 samples per support word (" +
                          std::to_string(h.total) + " for " +
                          std::to_string(support.size()) + " words)");

    double expected = static_cast<double>(h.total) / static_cast<double>(support.size());
    double stat = 0.0;
    for (const std::string& word : support) {
        auto it = h.counts.find(word);
        double observed = it == h.counts.end() ? 0.0 : static_cast<double>(it->second);
        double diff = observed - expected;
        stat += diff * diff / expected;
    }
    ChiSquareResult r;
    r.statistic = stat;
    r.df = static_cast<unsigned>(support.size() - 1);
    r.p_value = support.size() == 1 ? 1.0 : chi_square_upper_tail(stat, r.df);
    return r;
}

double tv_distance(const Histogram& h, const std::vector<std::string>& support) {
    if (support.empty()) throw DomainError("empty support");
    std::unordered_set<std::string> in_support(support.begin(), support.end());
    for (const auto& [word, count] : h.counts) {
        if (!in_support.count(word))
            throw DomainError("sampler produced a trace outside the oracle support: '" +
                              word + "'");
    }
    double uniform = 1.0 / static_cast<double>(support.size());
    double acc = 0.0;
    for (const std::string& word : support) {
        auto it = h.counts.find(word);
        double empirical =
            it == h.counts.end()
                ? 0.0
                : static_cast<double>(it->second) / static_cast<double>(h.total);
        acc += std::fabs(empirical - uniform);
    }
    return 0.5 * acc;
}

}  // namespace utr
