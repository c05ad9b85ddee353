#include "bigint.hpp"

#include <algorithm>
#include <cmath>

namespace utr {

long double to_long_double(const BigInt& z) {
    int s = sgn(z);
    if (s == 0) return 0.0L;
    BigInt a = abs(z);
    std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    long double r;
    if (bits <= 64) {
        r = static_cast<long double>(a.get_ui());
    } else {
        BigInt top = a >> (bits - 64);
        r = std::ldexp(static_cast<long double>(top.get_ui()),
                       static_cast<int>(bits - 64));
    }
    return s < 0 ? -r : r;
}

long double log2_big(const BigInt& z) {
    std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    if (bits <= 64) return std::log2(static_cast<long double>(z.get_ui()));
    BigInt top = z >> (bits - 64);
    return std::log2(static_cast<long double>(top.get_ui())) +
           static_cast<long double>(bits - 64);
}

std::vector<BigInt> binomial_convolve(const std::vector<BigInt>& a,
                                      const std::vector<BigInt>& b) {
    std::size_t n = std::min(a.size(), b.size());
    std::vector<BigInt> out(n);
    BigInt binom, term;
    for (std::size_t k = 0; k < n; ++k) {
        binom = 1;  // C(k,0)
        BigInt acc = 0;
        for (std::size_t j = 0; j <= k; ++j) {
            if (j > 0) {
                binom *= static_cast<unsigned long>(k - j + 1);
                mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                                static_cast<unsigned long>(j));
            }
            if (sgn(a[j]) != 0 && sgn(b[k - j]) != 0) {
                term = binom * a[j];
                term *= b[k - j];
                acc += term;
            }
        }
        out[k] = acc;
    }
    return out;
}

std::vector<BigInt> cauchy_convolve(const std::vector<BigInt>& a,
                                    const std::vector<BigInt>& b) {
    std::size_t n = std::min(a.size(), b.size());
    std::vector<BigInt> out(n);
    BigInt term;
    for (std::size_t k = 0; k < n; ++k) {
        BigInt acc = 0;
        for (std::size_t j = 0; j <= k; ++j) {
            if (sgn(a[j]) != 0 && sgn(b[k - j]) != 0) {
                term = a[j] * b[k - j];
                acc += term;
            }
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace utr
