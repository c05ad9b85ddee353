#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"

namespace utr {

using Value = std::int64_t;

struct Variable {
    std::string name;
    Value lo = 0;
    Value hi = 0;
    Value init = 0;
    std::size_t module_index = 0;
};

// Arithmetic over system variables and integer constants (+, -, *).
struct AExpr {
    enum class Kind { constant, variable, add, sub, mul, negate };
    Kind kind = Kind::constant;
    Value constant = 0;
    std::size_t variable = 0;  // index into ModuleSystem::variables
    std::unique_ptr<AExpr> lhs, rhs;  // negate uses lhs only
};

// Guards: comparisons of arithmetic terms combined with &, |, !.
struct BExpr {
    enum class Kind { literal, compare, conj, disj, negate };
    enum class Cmp { eq, lt, le, gt, ge };
    Kind kind = Kind::literal;
    bool literal = false;
    Cmp cmp = Cmp::eq;
    AExpr cmp_lhs, cmp_rhs;           // compare
    std::unique_ptr<BExpr> lhs, rhs;  // conj/disj, negate uses lhs only
};

template <typename Getter>
Value eval_aexpr(const AExpr& e, Getter&& get) {
    switch (e.kind) {
        case AExpr::Kind::constant: return e.constant;
        case AExpr::Kind::variable: return get(e.variable);
        case AExpr::Kind::add: return eval_aexpr(*e.lhs, get) + eval_aexpr(*e.rhs, get);
        case AExpr::Kind::sub: return eval_aexpr(*e.lhs, get) - eval_aexpr(*e.rhs, get);
        case AExpr::Kind::mul: return eval_aexpr(*e.lhs, get) * eval_aexpr(*e.rhs, get);
        case AExpr::Kind::negate: return -eval_aexpr(*e.lhs, get);
    }
    return 0;
}

template <typename Getter>
bool eval_bexpr(const BExpr& e, Getter&& get) {
    switch (e.kind) {
        case BExpr::Kind::literal: return e.literal;
        case BExpr::Kind::compare: {
            Value l = eval_aexpr(e.cmp_lhs, get);
            Value r = eval_aexpr(e.cmp_rhs, get);
            switch (e.cmp) {
                case BExpr::Cmp::eq: return l == r;
                case BExpr::Cmp::lt: return l < r;
                case BExpr::Cmp::le: return l <= r;
                case BExpr::Cmp::gt: return l > r;
                case BExpr::Cmp::ge: return l >= r;
            }
            return false;
        }
        case BExpr::Kind::conj: return eval_bexpr(*e.lhs, get) && eval_bexpr(*e.rhs, get);
        case BExpr::Kind::disj: return eval_bexpr(*e.lhs, get) || eval_bexpr(*e.rhs, get);
        case BExpr::Kind::negate: return !eval_bexpr(*e.lhs, get);
    }
    return false;
}

struct Assignment {
    std::size_t variable;  // must be local to the owning module
    AExpr expr;
};

// [sync] guard -> act1 + ... + actk ;
struct GuardedCommand {
    std::optional<std::string> sync;
    BExpr guard;
    std::vector<std::vector<Assignment>> alternatives;  // nonempty; each a list of assignments
};

struct Module {
    std::string name;
    std::size_t first_variable = 0;
    std::size_t variable_count = 0;
    std::vector<GuardedCommand> commands;

    bool owns_variable(std::size_t v) const {
        return v >= first_variable && v < first_variable + variable_count;
    }
};

struct ModuleSystem {
    std::vector<Module> modules;
    std::vector<Variable> variables;  // declaration order across all modules
    std::set<std::string> sync_labels;

    std::optional<std::size_t> variable_index(const std::string& name) const;
};

// Parses the guarded-command surface syntax:
//   module NAME
//     v : [lo..hi] init k;
//     [label] guard -> v'=expr & w'=expr + v'=expr;
//   endmodule
// Errors carry line/column. Variable names are globally unique; inits must be
// in range; every referenced variable must be declared; assignment targets
// must be local to their module.
ModuleSystem parse_system(const std::string& source);

// Canonical source form; parse_system(print_system(s)) is structurally equal
// to s.
std::string print_system(const ModuleSystem& sys);
bool systems_equal(const ModuleSystem& a, const ModuleSystem& b);

using GlobalState = std::vector<Value>;

GlobalState initial_state(const ModuleSystem& sys);
bool state_in_range(const ModuleSystem& sys, const GlobalState& s);

struct Successor {
    std::string action;
    GlobalState state;
};

// Full one-step successor set: every unsynchronized (command, alternative)
// with a true guard, plus, for every valid sync label, every cross-module
// combination of labelled true-guard alternatives applied simultaneously. A
// label is valid when every module declaring it has at least one true guard
// carrying it. Duplicate target states are kept as distinct pairs. An empty
// result is a deadlock.
std::vector<Successor> successors(const ModuleSystem& sys, const GlobalState& s);

// Guard-syntax predicate over global states ("detect when <expr>").
BExpr parse_state_predicate(const ModuleSystem& sys, const std::string& text);
bool eval_predicate(const BExpr& e, const GlobalState& s);

// Fixed valuation for foreign variables read during flattening.
struct ReadView {
    std::map<std::string, Value> values;
};

// Enumerates the module's reachable local valuations as automaton states; each
// (state, true-guard command, alternative) yields one transition carrying a
// fresh globally unique letter named <module>.cmd<k>.act<j>. When sync_label
// is set, commands carrying that label emit the single shared sync letter
// instead, and any other label is rejected. All states are final; unreachable
// valuations are pruned.
Automaton flatten_module(const ModuleSystem& sys, std::size_t module_index,
                         const ReadView* read_view = nullptr,
                         const std::optional<std::string>& sync_label = std::nullopt);

// The shared synchronisation letter injected by flatten_module.
Letter sync_letter(const std::string& label);

}  // namespace utr
