#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace utr {

// A transition label. `id` is the globally unique symbol that identifies the
// letter; it is the letter's identity across serialization and products.
// `module_index` records the owning module (-1 for the shared sync letter and
// for letters read back from interchange files) and is an annotation, not
// part of the identity. `display` is the human-readable name printed in
// traces; the flattening pipeline keeps it equal to `id`.
struct Letter {
    std::string id;
    std::int32_t module_index = -1;
    std::string display;

    friend bool operator==(const Letter& a, const Letter& b) { return a.id == b.id; }
};

struct Arc {
    std::uint32_t letter;  // index into Automaton::alphabet
    std::uint32_t target;
};

// Letter-labelled finite automaton over dense integer states. Immutable by
// convention once validated; every downstream algorithm only reads it.
struct Automaton {
    std::vector<Letter> alphabet;
    std::uint32_t initial = 0;
    std::vector<bool> finals;           // size == state count
    std::vector<std::vector<Arc>> adj;  // size == state count

    std::uint32_t state_count() const { return static_cast<std::uint32_t>(adj.size()); }
    std::size_t transition_count() const;
    bool is_final(std::uint32_t s) const { return finals[s]; }

    std::uint32_t add_state(bool is_final);
    std::uint32_t add_letter(Letter l);
    void add_arc(std::uint32_t src, std::uint32_t letter_index, std::uint32_t target);
};

// Structural equality: states, initial, finals and the transition relation,
// with letters compared by id (module_index/display are annotations).
bool structurally_equal(const Automaton& a, const Automaton& b);

struct Violation {
    enum class Kind {
        dangling_state,
        unknown_letter,
        duplicate_letter,
        nondeterministic_letter,
    };
    Kind kind;
    std::string message;
};

// Reports every violated structural invariant; an empty report means valid.
// Violations are data, not failures.
std::vector<Violation> validate_automaton(const Automaton& a);

struct GrowthDiagnostics {
    bool strongly_connected = false;
    bool aperiodic = false;          // cycle-length gcd of the dominant SCC is 1
    bool unique_dominant_scc = false;
    std::string warning;             // empty when no caveat applies

    // Single-dominant-term growth regime certified.
    bool certified() const { return unique_dominant_scc && aperiodic; }
};

// Purely structural: strongly-connected components, cycle-length gcd of the
// dominant component (the one maximizing spectral growth among maximal SCCs),
// and whether the single-dominant-term regime holds. Independent of letter
// identities.
GrowthDiagnostics check_growth_conditions(const Automaton& a);

// Copy with states unreachable from the initial state removed (surviving
// states keep their relative order). Letters whose arcs were dropped are
// removed from the alphabet.
Automaton prune_unreachable(const Automaton& a);

// Line-oriented interchange format:
//   states N
//   initial I
//   finals i1 i2 ...
//   src LETTER dst     (one line per transition)
// print/parse round-trip exactly (structurally_equal). Blank lines and lines
// starting with '#' are ignored on input.
std::string print_automaton(const Automaton& a);
Automaton parse_automaton(const std::string& text);

}  // namespace utr
