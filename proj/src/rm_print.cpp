#include <sstream>

#include "rm.hpp"

namespace utr {

namespace {

// precedence: 0 additive, 1 multiplicative, 2 atom
void print_aexpr(std::ostringstream& os, const ModuleSystem& sys, const AExpr& e, int parent) {
    switch (e.kind) {
        case AExpr::Kind::constant: os << e.constant; return;
        case AExpr::Kind::variable: os << sys.variables[e.variable].name; return;
        case AExpr::Kind::negate:
            os << '-';
            print_aexpr(os, sys, *e.lhs, 2);
            return;
        case AExpr::Kind::add:
        case AExpr::Kind::sub: {
            bool paren = parent > 0;
            if (paren) os << '(';
            print_aexpr(os, sys, *e.lhs, 0);
            os << (e.kind == AExpr::Kind::add ? "+" : "-");
            // right operand of '-' must not re-associate
            print_aexpr(os, sys, *e.rhs, e.kind == AExpr::Kind::sub ? 1 : 0);
            if (paren) os << ')';
            return;
        }
        case AExpr::Kind::mul: {
            bool paren = parent > 1;
            if (paren) os << '(';
            print_aexpr(os, sys, *e.lhs, 1);
            os << '*';
            print_aexpr(os, sys, *e.rhs, 1);
            if (paren) os << ')';
            return;
        }
    }
}

const char* cmp_text(BExpr::Cmp c) {
    switch (c) {
        case BExpr::Cmp::eq: return "=";
        case BExpr::Cmp::lt: return "<";
        case BExpr::Cmp::le: return "<=";
        case BExpr::Cmp::gt: return ">";
        case BExpr::Cmp::ge: return ">=";
    }
    return "?";
}

// precedence: 0 disjunction, 1 conjunction, 2 atom
void print_bexpr(std::ostringstream& os, const ModuleSystem& sys, const BExpr& e, int parent) {
    switch (e.kind) {
        case BExpr::Kind::literal: os << (e.literal ? "true" : "false"); return;
        case BExpr::Kind::compare:
            print_aexpr(os, sys, e.cmp_lhs, 0);
            os << cmp_text(e.cmp);
            print_aexpr(os, sys, e.cmp_rhs, 0);
            return;
        case BExpr::Kind::negate:
            os << '!';
            if (e.lhs->kind == BExpr::Kind::compare || e.lhs->kind == BExpr::Kind::conj ||
                e.lhs->kind == BExpr::Kind::disj) {
                os << '(';
                print_bexpr(os, sys, *e.lhs, 0);
                os << ')';
            } else {
                print_bexpr(os, sys, *e.lhs, 2);
            }
            return;
        case BExpr::Kind::conj: {
            bool paren = parent > 1;
            if (paren) os << '(';
            print_bexpr(os, sys, *e.lhs, 1);
            os << " & ";
            print_bexpr(os, sys, *e.rhs, 1);
            if (paren) os << ')';
            return;
        }
        case BExpr::Kind::disj: {
            bool paren = parent > 0;
            if (paren) os << '(';
            print_bexpr(os, sys, *e.lhs, 0);
            os << " | ";
            print_bexpr(os, sys, *e.rhs, 0);
            if (paren) os << ')';
            return;
        }
    }
}

}  // namespace

std::string print_system(const ModuleSystem& sys) {
    std::ostringstream os;
    bool first = true;
    for (const Module& mod : sys.modules) {
        if (!first) os << "\n";
        first = false;
        os << "module " << mod.name << "\n";
        for (std::size_t v = mod.first_variable; v < mod.first_variable + mod.variable_count;
             ++v) {
            const Variable& var = sys.variables[v];
            os << "  " << var.name << " : [" << var.lo << ".." << var.hi << "] init "
               << var.init << ";\n";
        }
        for (const GuardedCommand& cmd : mod.commands) {
            os << "  ";
            if (cmd.sync) os << '[' << *cmd.sync << "] ";
            print_bexpr(os, sys, cmd.guard, 0);
            os << " -> ";
            bool first_alt = true;
            for (const auto& alt : cmd.alternatives) {
                if (!first_alt) os << " + ";
                first_alt = false;
                bool first_assign = true;
                for (const Assignment& a : alt) {
                    if (!first_assign) os << " & ";
                    first_assign = false;
                    os << sys.variables[a.variable].name << "'=";
                    print_aexpr(os, sys, a.expr, 2);
                }
            }
            os << ";\n";
        }
        os << "endmodule\n";
    }
    return os.str();
}

bool systems_equal(const ModuleSystem& a, const ModuleSystem& b) {
    return print_system(a) == print_system(b);
}

GlobalState initial_state(const ModuleSystem& sys) {
    GlobalState s(sys.variables.size());
    for (std::size_t i = 0; i < sys.variables.size(); ++i) s[i] = sys.variables[i].init;
    return s;
}

bool state_in_range(const ModuleSystem& sys, const GlobalState& s) {
    if (s.size() != sys.variables.size()) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < sys.variables[i].lo || s[i] > sys.variables[i].hi) return false;
    }
    return true;
}

}  // namespace utr
