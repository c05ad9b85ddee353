#include "rng.hpp"

namespace utr {

BigInt Rng::below_big(const BigInt& bound) {
    if (bound <= 1) return 0;
    BigInt top = bound - 1;
    std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
    std::size_t words = (bits + 63) / 64;
    unsigned shift = static_cast<unsigned>(words * 64 - bits);
    std::vector<std::uint64_t> buf(words);
    BigInt v;
    for (;;) {
        for (auto& w : buf) w = next_u64();
        buf.back() >>= shift;
        mpz_import(v.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
        if (v < bound) return v;
    }
}

}  // namespace utr
