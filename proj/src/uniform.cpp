#include "uniform.hpp"

namespace utr {

std::string trace_to_string(const TraceWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i > 0) out += ' ';
        out += w.letters[i]->display;
    }
    return out;
}

TraceWord draw_uniform_word(const CountTable& t, unsigned n, Rng& rng, BigRat* prob_out) {
    if (n > t.horizon)
        throw DomainError("requested length " + std::to_string(n) +
                          " exceeds the count table horizon");
    const Automaton& a = *t.automaton;
    if (sgn(t.count(n)) == 0)
        throw DomainError("no word of length " + std::to_string(n) + " in this language");

    TraceWord w;
    w.letters.reserve(n);
    w.states.reserve(n + 1);
    std::uint32_t s = a.initial;
    w.states.push_back(s);
    for (unsigned m = n; m > 0; --m) {
        const BigInt& total = t.g[m][s];
        BigInt pick = rng.below_big(total);
        BigInt acc = 0;
        const Arc* chosen = nullptr;
        for (const Arc& arc : a.adj[s]) {
            acc += t.g[m - 1][arc.target];
            if (pick < acc) {
                chosen = &arc;
                break;
            }
        }
        if (!chosen)
            throw Error(ErrorCode::internal, "count table inconsistent with automaton");
        if (prob_out) *prob_out *= make_ratio(t.g[m - 1][chosen->target], total);
        w.letters.push_back(&a.alphabet[chosen->letter]);
        s = chosen->target;
        w.states.push_back(s);
    }
    return w;
}

}  // namespace utr
