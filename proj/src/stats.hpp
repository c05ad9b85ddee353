#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace utr {

struct Histogram {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;

    void add(const std::string& word) {
        ++counts[word];
        ++total;
    }
    void merge(const Histogram& other);
};

struct ChiSquareResult {
    double statistic = 0.0;
    unsigned df = 0;
    double p_value = 1.0;
};

// Pearson statistic against the uniform null over `support`, df = |support|-1,
// p-value from the chi-square upper tail. An observed word outside the support
// is a hard failure (the sampler produced an illegal trace); the sample size
// must reach 5 per support word.
ChiSquareResult chi_square_uniform(const Histogram& h, const std::vector<std::string>& support);

// (1/2) sum |empirical(w) - 1/|support||, counting support words never seen.
double tv_distance(const Histogram& h, const std::vector<std::string>& support);

// Regularized upper incomplete gamma Q(a, x); series / continued fraction,
// good to well past 10 significant digits.
double gamma_q(double a, double x);

// Upper tail of the chi-square distribution with df degrees of freedom.
double chi_square_upper_tail(double statistic, unsigned df);

}  // namespace utr
