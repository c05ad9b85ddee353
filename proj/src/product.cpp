#include "product.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <unordered_set>

#include "error.hpp"

namespace utr {

namespace {

struct ProductBuilder {
    const std::vector<const Automaton*>& factors;
    ProductAutomaton out;
    std::map<std::vector<std::uint32_t>, std::uint32_t> interned;
    std::deque<std::uint32_t> queue;
    std::vector<std::uint32_t> letter_offset;  // per factor, into the merged alphabet

    explicit ProductBuilder(const std::vector<const Automaton*>& fs) : factors(fs) {
        if (fs.empty()) throw DomainError("a product needs at least one factor");
    }

    std::uint32_t intern(std::vector<std::uint32_t> tuple) {
        auto [it, inserted] = interned.emplace(std::move(tuple), 0);
        if (inserted) {
            bool final = true;
            for (std::size_t i = 0; i < factors.size(); ++i)
                final = final && factors[i]->finals[it->first[i]];
            it->second = out.base.add_state(final);
            out.factor_map.push_back(it->first);
            queue.push_back(it->second);
        }
        return it->second;
    }
};

}  // namespace

ProductAutomaton build_shuffle_automaton(const std::vector<const Automaton*>& factors) {
    ProductBuilder b(factors);

    std::unordered_set<std::string> seen;
    for (const Automaton* f : factors) {
        b.letter_offset.push_back(static_cast<std::uint32_t>(b.out.base.alphabet.size()));
        for (const Letter& l : f->alphabet) {
            if (!seen.insert(l.id).second)
                throw DomainError("factor alphabets are not disjoint: letter '" + l.id +
                                  "' appears twice");
            b.out.base.add_letter(l);
        }
    }

    std::vector<std::uint32_t> init;
    for (const Automaton* f : factors) init.push_back(f->initial);
    b.out.base.initial = b.intern(std::move(init));

    while (!b.queue.empty()) {
        std::uint32_t s = b.queue.front();
        b.queue.pop_front();
        std::vector<std::uint32_t> tuple = b.out.factor_map[s];
        for (std::size_t i = 0; i < factors.size(); ++i) {
            for (const Arc& arc : factors[i]->adj[tuple[i]]) {
                std::vector<std::uint32_t> next = tuple;
                next[i] = arc.target;
                std::uint32_t dst = b.intern(std::move(next));
                b.out.base.add_arc(s, b.letter_offset[i] + arc.letter, dst);
            }
        }
    }
    return b.out;
}

ProductAutomaton build_sync_product(const std::vector<const Automaton*>& factors,
                                    const Letter& alpha) {
    ProductBuilder b(factors);

    // locate the unique alpha transition of each factor
    struct AlphaArc {
        std::uint32_t src = 0, dst = 0;
        std::uint32_t letter = 0;
        std::size_t count = 0;
    };
    std::vector<AlphaArc> alphas(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Automaton& f = *factors[i];
        for (std::uint32_t s = 0; s < f.state_count(); ++s) {
            for (const Arc& arc : f.adj[s]) {
                if (f.alphabet[arc.letter].id != alpha.id) continue;
                alphas[i] = AlphaArc{s, arc.target, arc.letter, alphas[i].count + 1};
            }
        }
        if (alphas[i].count != 1)
            throw DomainError("factor " + std::to_string(i) + " has " +
                              std::to_string(alphas[i].count) + " transitions labelled '" +
                              alpha.id + "'; the synchronised construction needs exactly one");
    }

    std::uint32_t alpha_index = b.out.base.add_letter(alpha);
    std::unordered_set<std::string> seen{alpha.id};
    std::vector<std::vector<std::uint32_t>> letter_remap(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Automaton& f = *factors[i];
        letter_remap[i].assign(f.alphabet.size(), 0);
        for (std::uint32_t l = 0; l < f.alphabet.size(); ++l) {
            if (f.alphabet[l].id == alpha.id) {
                letter_remap[i][l] = alpha_index;
                continue;
            }
            if (!seen.insert(f.alphabet[l].id).second)
                throw DomainError("factor alphabets are not disjoint beyond '" + alpha.id +
                                  "': letter '" + f.alphabet[l].id + "' appears twice");
            letter_remap[i][l] = b.out.base.add_letter(f.alphabet[l]);
        }
    }

    std::vector<std::uint32_t> init;
    for (const Automaton* f : factors) init.push_back(f->initial);
    b.out.base.initial = b.intern(std::move(init));

    while (!b.queue.empty()) {
        std::uint32_t s = b.queue.front();
        b.queue.pop_front();
        std::vector<std::uint32_t> tuple = b.out.factor_map[s];
        for (std::size_t i = 0; i < factors.size(); ++i) {
            for (const Arc& arc : factors[i]->adj[tuple[i]]) {
                if (factors[i]->alphabet[arc.letter].id == alpha.id) continue;
                std::vector<std::uint32_t> next = tuple;
                next[i] = arc.target;
                std::uint32_t dst = b.intern(std::move(next));
                b.out.base.add_arc(s, letter_remap[i][arc.letter], dst);
            }
        }
        bool all_at_alpha = true;
        for (std::size_t i = 0; i < factors.size(); ++i)
            all_at_alpha = all_at_alpha && tuple[i] == alphas[i].src;
        if (all_at_alpha) {
            std::vector<std::uint32_t> next(factors.size());
            for (std::size_t i = 0; i < factors.size(); ++i) next[i] = alphas[i].dst;
            std::uint32_t dst = b.intern(std::move(next));
            b.out.base.add_arc(s, alpha_index, dst);
        }
    }
    return b.out;
}

std::vector<TraceWord> enumerate_traces(const Automaton& a, unsigned n, std::size_t limit) {
    CountTable t = build_count_table(a, n);
    const BigInt& total = t.count(n);
    if (total > static_cast<unsigned long>(limit))
        throw DomainError("refusing to enumerate " + total.get_str() +
                          " words (limit " + std::to_string(limit) + ")");

    std::vector<TraceWord> out;
    out.reserve(total.get_ui());
    TraceWord cur;
    cur.states.push_back(a.initial);

    // plain depth-first walk of every path; deliberately ignorant of the
    // counting tables so it can serve as an oracle for them
    std::function<void(std::uint32_t, unsigned)> visit = [&](std::uint32_t s, unsigned left) {
        if (left == 0) {
            if (a.finals[s]) out.push_back(cur);
            return;
        }
        for (const Arc& arc : a.adj[s]) {
            cur.letters.push_back(&a.alphabet[arc.letter]);
            cur.states.push_back(arc.target);
            visit(arc.target, left - 1);
            cur.letters.pop_back();
            cur.states.pop_back();
        }
    };
    visit(a.initial, n);

    auto less = [](const TraceWord& x, const TraceWord& y) {
        return std::lexicographical_compare(
            x.letters.begin(), x.letters.end(), y.letters.begin(), y.letters.end(),
            [](const Letter* p, const Letter* q) { return p->id < q->id; });
    };
    std::sort(out.begin(), out.end(), less);
    out.erase(std::unique(out.begin(), out.end(),
                          [&](const TraceWord& x, const TraceWord& y) {
                              return !less(x, y) && !less(y, x);
                          }),
              out.end());
    return out;
}

}  // namespace utr
