#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace utr {

// Counting tables overflow 64 bits around n = 64 even on binary alphabets, so
// every count in the library is an arbitrary-precision integer. Ratios leave
// the integer world only at the asymptotics boundary, as long doubles (64-bit
// mantissa on x86-64).
using BigInt = mpz_class;
using BigRat = mpq_class;

// Canonicalized num/den rational.
inline BigRat make_ratio(const BigInt& num, const BigInt& den) {
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

// Nearest long double; keeps the top 64 bits of the mantissa.
long double to_long_double(const BigInt& z);

// log2 of a positive integer.
long double log2_big(const BigInt& z);

// Shuffle (binomial) convolution: h[k] = sum_j C(k,j) a[j] b[k-j].
// Result length is min(a.size(), b.size()).
std::vector<BigInt> binomial_convolve(const std::vector<BigInt>& a,
                                      const std::vector<BigInt>& b);

// Concatenation (Cauchy) convolution: h[k] = sum_j a[j] b[k-j].
std::vector<BigInt> cauchy_convolve(const std::vector<BigInt>& a,
                                    const std::vector<BigInt>& b);

}  // namespace utr
