#include "automaton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "error.hpp"

namespace utr {

std::size_t Automaton::transition_count() const {
    std::size_t n = 0;
    for (const auto& arcs : adj) n += arcs.size();
    return n;
}

std::uint32_t Automaton::add_state(bool is_final) {
    adj.emplace_back();
    finals.push_back(is_final);
    return static_cast<std::uint32_t>(adj.size() - 1);
}

std::uint32_t Automaton::add_letter(Letter l) {
    alphabet.push_back(std::move(l));
    return static_cast<std::uint32_t>(alphabet.size() - 1);
}

void Automaton::add_arc(std::uint32_t src, std::uint32_t letter_index, std::uint32_t target) {
    adj[src].push_back(Arc{letter_index, target});
}

bool structurally_equal(const Automaton& a, const Automaton& b) {
    if (a.state_count() != b.state_count() || a.initial != b.initial) return false;
    if (a.finals != b.finals) return false;
    if (a.alphabet.size() != b.alphabet.size()) return false;
    auto ids = [](const Automaton& x) {
        std::vector<std::string> v;
        v.reserve(x.alphabet.size());
        for (const auto& l : x.alphabet) v.push_back(l.id);
        std::sort(v.begin(), v.end());
        return v;
    };
    if (ids(a) != ids(b)) return false;
    using Edge = std::pair<std::string, std::uint32_t>;
    for (std::uint32_t s = 0; s < a.state_count(); ++s) {
        auto edges = [s](const Automaton& x) {
            std::vector<Edge> v;
            for (const Arc& arc : x.adj[s]) v.emplace_back(x.alphabet[arc.letter].id, arc.target);
            std::sort(v.begin(), v.end());
            return v;
        };
        if (edges(a) != edges(b)) return false;
    }
    return true;
}

std::vector<Violation> validate_automaton(const Automaton& a) {
    std::vector<Violation> out;
    std::uint32_t n = a.state_count();
    if (a.finals.size() != a.adj.size()) {
        out.push_back({Violation::Kind::dangling_state,
                       "finals bitmap covers " + std::to_string(a.finals.size()) +
                           " states but the automaton has " + std::to_string(n)});
    }
    if (a.initial >= n) {
        out.push_back({Violation::Kind::dangling_state,
                       "initial state " + std::to_string(a.initial) + " out of range (" +
                           std::to_string(n) + " states)"});
    }

    std::unordered_map<std::string, std::size_t> seen_ids;
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
        auto [it, inserted] = seen_ids.emplace(a.alphabet[i].id, i);
        if (!inserted) {
            out.push_back({Violation::Kind::duplicate_letter,
                           "alphabet entries " + std::to_string(it->second) + " and " +
                               std::to_string(i) + " share letter id '" + a.alphabet[i].id + "'"});
        }
    }

    // usage[l] = (count, first source, same-source duplicate seen)
    struct Usage {
        std::size_t count = 0;
        std::uint32_t first_src = 0;
        bool same_src = false;
    };
    std::vector<Usage> usage(a.alphabet.size());
    for (std::uint32_t s = 0; s < n; ++s) {
        for (const Arc& arc : a.adj[s]) {
            if (arc.target >= n) {
                out.push_back({Violation::Kind::dangling_state,
                               "transition from state " + std::to_string(s) +
                                   " targets missing state " + std::to_string(arc.target)});
            }
            if (arc.letter >= a.alphabet.size()) {
                out.push_back({Violation::Kind::unknown_letter,
                               "transition from state " + std::to_string(s) +
                                   " uses letter index " + std::to_string(arc.letter) +
                                   " outside the alphabet"});
                continue;
            }
            Usage& u = usage[arc.letter];
            if (u.count > 0 && u.first_src == s) u.same_src = true;
            if (u.count == 0) u.first_src = s;
            ++u.count;
        }
    }
    for (std::size_t l = 0; l < usage.size(); ++l) {
        if (usage[l].count < 2) continue;
        if (usage[l].same_src) {
            out.push_back({Violation::Kind::nondeterministic_letter,
                           "letter '" + a.alphabet[l].id + "' labels " +
                               std::to_string(usage[l].count) +
                               " transitions including two from one state"});
        } else {
            out.push_back({Violation::Kind::duplicate_letter,
                           "letter '" + a.alphabet[l].id + "' labels " +
                               std::to_string(usage[l].count) + " transitions"});
        }
    }
    return out;
}

namespace {

// Iterative Tarjan; returns component id per state, components numbered in
// reverse topological order.
std::vector<std::uint32_t> tarjan_scc(const Automaton& a, std::uint32_t& n_components) {
    std::uint32_t n = a.state_count();
    constexpr std::uint32_t none = UINT32_MAX;
    std::vector<std::uint32_t> index(n, none), low(n, 0), comp(n, none);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::uint32_t next_index = 0;
    n_components = 0;

    struct Frame {
        std::uint32_t v;
        std::size_t arc;
    };
    std::vector<Frame> call;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != none) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            Frame& f = call.back();
            std::uint32_t v = f.v;
            if (f.arc == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            while (f.arc < a.adj[v].size()) {
                std::uint32_t w = a.adj[v][f.arc].target;
                ++f.arc;
                if (w >= n) continue;
                if (index[w] == none) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                for (;;) {
                    std::uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = n_components;
                    if (w == v) break;
                }
                ++n_components;
            }
            call.pop_back();
            if (!call.empty()) {
                std::uint32_t parent = call.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return comp;
}

// Cycle-length gcd of one strongly connected component (0 if it has no cycle,
// i.e. it is a trivial single-state component without a self-loop).
unsigned scc_period(const Automaton& a, const std::vector<std::uint32_t>& comp,
                    std::uint32_t c, const std::vector<std::uint32_t>& members) {
    if (members.empty()) return 0;
    bool has_internal_arc = false;
    for (std::uint32_t s : members) {
        for (const Arc& arc : a.adj[s]) {
            if (arc.target < a.state_count() && comp[arc.target] == c) has_internal_arc = true;
        }
    }
    if (!has_internal_arc) return 0;

    std::vector<long long> level(a.state_count(), -1);
    std::deque<std::uint32_t> queue;
    level[members[0]] = 0;
    queue.push_back(members[0]);
    long long g = 0;
    while (!queue.empty()) {
        std::uint32_t u = queue.front();
        queue.pop_front();
        for (const Arc& arc : a.adj[u]) {
            std::uint32_t v = arc.target;
            if (v >= a.state_count() || comp[v] != c) continue;
            if (level[v] < 0) {
                level[v] = level[u] + 1;
                queue.push_back(v);
            } else {
                g = std::gcd(g, std::llabs(level[u] + 1 - level[v]));
            }
        }
    }
    return static_cast<unsigned>(g);
}

// Spectral growth of one SCC via normalized power iteration on path counts.
// With period p the per-step ratio oscillates, so the growth is measured over
// p steps at once.
double scc_growth(const Automaton& a, const std::vector<std::uint32_t>& comp,
                  std::uint32_t c, const std::vector<std::uint32_t>& members,
                  unsigned period) {
    if (period == 0) return 0.0;
    std::vector<double> v(a.state_count(), 0.0), w(a.state_count(), 0.0);
    for (std::uint32_t s : members) v[s] = 1.0;
    auto step = [&]() {
        for (std::uint32_t s : members) w[s] = 0.0;
        for (std::uint32_t s : members) {
            for (const Arc& arc : a.adj[s]) {
                if (arc.target < a.state_count() && comp[arc.target] == c) w[s] += v[arc.target];
            }
        }
        double total = 0.0;
        for (std::uint32_t s : members) total += w[s];
        for (std::uint32_t s : members) v[s] = w[s];
        return total;
    };
    auto normalize = [&](double total) {
        if (total <= 0.0) return;
        for (std::uint32_t s : members) v[s] /= total;
    };

    const unsigned burn_in = 256;
    for (unsigned i = 0; i < burn_in; ++i) normalize(step());
    double growth = 1.0;
    unsigned measure = 2 * period;
    for (unsigned i = 0; i < measure; ++i) {
        double total = step();
        growth *= total;
        normalize(total);
    }
    return std::pow(growth, 1.0 / measure);
}

}  // namespace

GrowthDiagnostics check_growth_conditions(const Automaton& a) {
    GrowthDiagnostics d;
    std::uint32_t n = a.state_count();
    if (n == 0) {
        d.warning = "degenerate: automaton has no states";
        return d;
    }
    std::uint32_t n_components = 0;
    std::vector<std::uint32_t> comp = tarjan_scc(a, n_components);
    d.strongly_connected = (n_components == 1);

    if (a.transition_count() == 0) {
        d.warning = "degenerate: l(n)=0 for n>=1";
        return d;
    }

    std::vector<std::vector<std::uint32_t>> members(n_components);
    for (std::uint32_t s = 0; s < n; ++s) members[comp[s]].push_back(s);

    std::vector<unsigned> period(n_components, 0);
    std::vector<double> growth(n_components, 0.0);
    for (std::uint32_t c = 0; c < n_components; ++c) {
        period[c] = scc_period(a, comp, c, members[c]);
        growth[c] = scc_growth(a, comp, c, members[c], period[c]);
    }

    double best = 0.0;
    std::uint32_t best_c = 0;
    for (std::uint32_t c = 0; c < n_components; ++c) {
        if (growth[c] > best) {
            best = growth[c];
            best_c = c;
        }
    }
    if (best <= 0.0) {
        d.warning = "no cycles: word counts grow at most polynomially";
        return d;
    }
    const double tie_tolerance = 1e-6;
    unsigned n_dominant = 0;
    for (std::uint32_t c = 0; c < n_components; ++c) {
        if (growth[c] >= best * (1.0 - tie_tolerance)) ++n_dominant;
    }
    d.unique_dominant_scc = (n_dominant == 1);
    d.aperiodic = (period[best_c] == 1);
    if (!d.unique_dominant_scc) {
        d.warning = "multiple strongly-connected components share the dominant growth rate";
    } else if (!d.aperiodic) {
        d.warning = "dominant component is periodic (period " +
                    std::to_string(period[best_c]) + ")";
    }
    return d;
}

Automaton prune_unreachable(const Automaton& a) {
    std::uint32_t n = a.state_count();
    constexpr std::uint32_t none = UINT32_MAX;
    std::vector<std::uint32_t> remap(n, none);
    if (n == 0) return a;

    std::vector<std::uint32_t> order;
    std::deque<std::uint32_t> queue;
    std::vector<bool> seen(n, false);
    seen[a.initial] = true;
    queue.push_back(a.initial);
    while (!queue.empty()) {
        std::uint32_t s = queue.front();
        queue.pop_front();
        order.push_back(s);
        for (const Arc& arc : a.adj[s]) {
            if (arc.target < n && !seen[arc.target]) {
                seen[arc.target] = true;
                queue.push_back(arc.target);
            }
        }
    }
    // preserve relative state order
    std::sort(order.begin(), order.end());
    for (std::uint32_t i = 0; i < order.size(); ++i) remap[order[i]] = i;

    Automaton out;
    out.adj.resize(order.size());
    out.finals.resize(order.size());
    out.initial = remap[a.initial];
    std::vector<std::uint32_t> letter_remap(a.alphabet.size(), none);
    for (std::uint32_t s : order) {
        std::uint32_t ns = remap[s];
        out.finals[ns] = a.finals[s];
        for (const Arc& arc : a.adj[s]) {
            if (arc.target >= n) continue;  // callers validate first
            std::uint32_t& nl = letter_remap[arc.letter];
            if (nl == none) nl = out.add_letter(a.alphabet[arc.letter]);
            out.add_arc(ns, nl, remap[arc.target]);
        }
    }
    return out;
}

std::string print_automaton(const Automaton& a) {
    std::ostringstream os;
    os << "states " << a.state_count() << "\n";
    os << "initial " << a.initial << "\n";
    os << "finals";
    for (std::uint32_t s = 0; s < a.state_count(); ++s) {
        if (a.finals[s]) os << ' ' << s;
    }
    os << "\n";
    for (std::uint32_t s = 0; s < a.state_count(); ++s) {
        for (const Arc& arc : a.adj[s]) {
            os << s << ' ' << a.alphabet[arc.letter].id << ' ' << arc.target << "\n";
        }
    }
    return os.str();
}

Automaton parse_automaton(const std::string& text) {
    Automaton out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool have_states = false, have_initial = false, have_finals = false;
    std::unordered_map<std::string, std::uint32_t> letters;

    auto parse_u32 = [&](const std::string& tok) {
        try {
            unsigned long v = std::stoul(tok);
            if (v > UINT32_MAX) throw std::out_of_range("u32");
            return static_cast<std::uint32_t>(v);
        } catch (const std::exception&) {
            throw ParseError(lineno, 1, "expected a state number, got '" + tok + "'");
        }
    };

    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty() || tok[0][0] == '#') continue;

        if (tok[0] == "states") {
            if (tok.size() != 2) throw ParseError(lineno, 1, "states line needs one number");
            std::uint32_t n = parse_u32(tok[1]);
            out.adj.assign(n, {});
            out.finals.assign(n, false);
            have_states = true;
        } else if (tok[0] == "initial") {
            if (tok.size() != 2) throw ParseError(lineno, 1, "initial line needs one number");
            out.initial = parse_u32(tok[1]);
            have_initial = true;
        } else if (tok[0] == "finals") {
            if (!have_states) throw ParseError(lineno, 1, "finals before states");
            for (std::size_t i = 1; i < tok.size(); ++i) {
                std::uint32_t s = parse_u32(tok[i]);
                if (s >= out.state_count())
                    throw ParseError(lineno, 1, "final state " + tok[i] + " out of range");
                out.finals[s] = true;
            }
            have_finals = true;
        } else {
            if (!have_states) throw ParseError(lineno, 1, "transition before states");
            if (tok.size() != 3)
                throw ParseError(lineno, 1, "transition line must be 'src LETTER dst'");
            std::uint32_t src = parse_u32(tok[0]);
            std::uint32_t dst = parse_u32(tok[2]);
            if (src >= out.state_count())
                throw ParseError(lineno, 1, "source state " + tok[0] + " out of range");
            auto [it, inserted] = letters.emplace(tok[1], 0);
            if (inserted) it->second = out.add_letter(Letter{tok[1], -1, tok[1]});
            out.add_arc(src, it->second, dst);
        }
    }
    if (!have_states || !have_initial || !have_finals)
        throw ParseError(lineno, 1, "missing states/initial/finals header");
    return out;
}

}  // namespace utr
