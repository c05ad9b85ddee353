#include <cctype>
#include <unordered_map>

#include "rm.hpp"

namespace utr {

std::optional<std::size_t> ModuleSystem::variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].name == name) return i;
    }
    return std::nullopt;
}

namespace {

enum class Tok {
    ident, number,
    kw_module, kw_endmodule, kw_init, kw_true, kw_false,
    lbracket, rbracket, lparen, rparen,
    colon, semicolon, dotdot, prime,
    eq, lt, le, gt, ge, neq,
    arrow, plus, minus, star, amp, pipe, bang,
    eof,
};

struct Token {
    Tok kind;
    std::string text;
    Value value = 0;
    int line = 1;
    int col = 1;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string text, int l, int c) {
        out.push_back(Token{k, std::move(text), 0, l, c});
    };
    while (i < src.size()) {
        char ch = src[i];
        int l = line, c = col;
        auto advance = [&](std::size_t k) {
            for (std::size_t j = 0; j < k; ++j) {
                if (src[i + j] == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
            }
            i += k;
        };
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
            advance(1);
            continue;
        }
        if (ch == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            std::string word = src.substr(i, j - i);
            advance(j - i);
            Tok k = Tok::ident;
            if (word == "module") k = Tok::kw_module;
            else if (word == "endmodule") k = Tok::kw_endmodule;
            else if (word == "init") k = Tok::kw_init;
            else if (word == "true") k = Tok::kw_true;
            else if (word == "false") k = Tok::kw_false;
            push(k, word, l, c);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            std::string digits = src.substr(i, j - i);
            advance(j - i);
            Token t{Tok::number, digits, 0, l, c};
            try {
                t.value = std::stoll(digits);
            } catch (const std::exception&) {
                throw ParseError(l, c, "integer literal out of range: " + digits);
            }
            out.push_back(std::move(t));
            continue;
        }
        auto two = [&](char a, char b) {
            return ch == a && i + 1 < src.size() && src[i + 1] == b;
        };
        if (two('-', '>')) { push(Tok::arrow, "->", l, c); advance(2); continue; }
        if (two('.', '.')) { push(Tok::dotdot, "..", l, c); advance(2); continue; }
        if (two('<', '=')) { push(Tok::le, "<=", l, c); advance(2); continue; }
        if (two('>', '=')) { push(Tok::ge, ">=", l, c); advance(2); continue; }
        if (two('!', '=')) { push(Tok::neq, "!=", l, c); advance(2); continue; }
        switch (ch) {
            case '[': push(Tok::lbracket, "[", l, c); break;
            case ']': push(Tok::rbracket, "]", l, c); break;
            case '(': push(Tok::lparen, "(", l, c); break;
            case ')': push(Tok::rparen, ")", l, c); break;
            case ':': push(Tok::colon, ":", l, c); break;
            case ';': push(Tok::semicolon, ";", l, c); break;
            case '\'': push(Tok::prime, "'", l, c); break;
            case '=': push(Tok::eq, "=", l, c); break;
            case '<': push(Tok::lt, "<", l, c); break;
            case '>': push(Tok::gt, ">", l, c); break;
            case '+': push(Tok::plus, "+", l, c); break;
            case '-': push(Tok::minus, "-", l, c); break;
            case '*': push(Tok::star, "*", l, c); break;
            case '&': push(Tok::amp, "&", l, c); break;
            case '|': push(Tok::pipe, "|", l, c); break;
            case '!': push(Tok::bang, "!", l, c); break;
            default:
                throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
        }
        advance(1);
    }
    out.push_back(Token{Tok::eof, "", 0, line, col});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    ModuleSystem parse_full_system() {
        ModuleSystem sys;
        while (!at(Tok::eof)) parse_module(sys);
        if (sys.modules.empty()) fail("expected at least one module");
        return sys;
    }

    // Entry point for state predicates: a bare boolean expression.
    BExpr parse_predicate(const ModuleSystem& sys) {
        sys_ = &sys;
        BExpr e = parse_bexpr();
        expect(Tok::eof, "end of expression");
        return e;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const ModuleSystem* sys_ = nullptr;  // variable scope for expressions
    bool in_action_ = false;  // '+' before an assignment separates alternatives

    const Token& peek(std::size_t k = 0) const {
        std::size_t i = pos_ + k;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(Tok k) const { return peek().kind == k; }
    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got = t.kind == Tok::eof ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.col, msg + ", got " + got);
    }
    Token expect(Tok k, const std::string& what) {
        if (!at(k)) fail("expected " + what);
        return take();
    }

    void parse_module(ModuleSystem& sys) {
        sys_ = &sys;
        expect(Tok::kw_module, "'module'");
        Token name = expect(Tok::ident, "module name");
        for (const auto& m : sys.modules) {
            if (m.name == name.text)
                throw ParseError(name.line, name.col, "duplicate module '" + name.text + "'");
        }
        Module mod;
        mod.name = name.text;
        mod.first_variable = sys.variables.size();

        // declarations come before commands; a command starts with '[', '!',
        // '(', a literal, a number, or an identifier not followed by ':'
        while (at(Tok::ident) && peek(1).kind == Tok::colon) parse_declaration(sys, mod);
        mod.variable_count = sys.variables.size() - mod.first_variable;
        sys.modules.push_back(std::move(mod));

        while (!at(Tok::kw_endmodule)) {
            if (at(Tok::eof)) fail("expected 'endmodule'");
            parse_command(sys, sys.modules.back());
        }
        take();  // endmodule
    }

    Value parse_int() {
        bool neg = false;
        if (at(Tok::minus)) {
            take();
            neg = true;
        }
        Token t = expect(Tok::number, "an integer");
        return neg ? -t.value : t.value;
    }

    void parse_declaration(ModuleSystem& sys, Module& mod) {
        Token name = take();
        if (sys.variable_index(name.text))
            throw ParseError(name.line, name.col, "duplicate variable '" + name.text + "'");
        expect(Tok::colon, "':'");
        expect(Tok::lbracket, "'['");
        Value lo = parse_int();
        expect(Tok::dotdot, "'..'");
        Value hi = parse_int();
        expect(Tok::rbracket, "']'");
        if (lo > hi)
            throw ParseError(name.line, name.col,
                             "empty range [" + std::to_string(lo) + ".." + std::to_string(hi) +
                                 "] for variable '" + name.text + "'");
        expect(Tok::kw_init, "'init'");
        Value init = parse_int();
        if (init < lo || init > hi)
            throw ParseError(name.line, name.col,
                             "init value " + std::to_string(init) + " outside [" +
                                 std::to_string(lo) + ".." + std::to_string(hi) +
                                 "] for variable '" + name.text + "'");
        expect(Tok::semicolon, "';'");
        sys.variables.push_back(Variable{name.text, lo, hi, init, sys.modules.size()});
        (void)mod;
    }

    void parse_command(ModuleSystem& sys, Module& mod) {
        GuardedCommand cmd;
        if (at(Tok::lbracket)) {
            take();
            if (at(Tok::ident)) {
                cmd.sync = take().text;
                sys.sync_labels.insert(*cmd.sync);
            }
            expect(Tok::rbracket, "']'");
        }
        cmd.guard = parse_bexpr();
        expect(Tok::arrow, "'->'");
        cmd.alternatives.push_back(parse_alternative(mod));
        while (at(Tok::plus)) {
            take();
            cmd.alternatives.push_back(parse_alternative(mod));
        }
        expect(Tok::semicolon, "';'");
        mod.commands.push_back(std::move(cmd));
    }

    std::vector<Assignment> parse_alternative(const Module& mod) {
        std::vector<Assignment> assigns;
        assigns.push_back(parse_assignment(mod));
        while (at(Tok::amp)) {
            take();
            assigns.push_back(parse_assignment(mod));
        }
        return assigns;
    }

    Assignment parse_assignment(const Module& mod) {
        bool parenthesized = false;
        if (at(Tok::lparen) && peek(1).kind == Tok::ident && peek(2).kind == Tok::prime) {
            take();
            parenthesized = true;
        }
        Token name = expect(Tok::ident, "an assignment target");
        auto idx = sys_->variable_index(name.text);
        if (!idx)
            throw ParseError(name.line, name.col, "undeclared variable '" + name.text + "'");
        if (!mod.owns_variable(*idx))
            throw ParseError(name.line, name.col,
                             "variable '" + name.text + "' is not local to module '" +
                                 mod.name + "'");
        expect(Tok::prime, "'''");
        expect(Tok::eq, "'='");
        in_action_ = true;
        AExpr e = parse_aexpr();
        in_action_ = false;
        if (parenthesized) expect(Tok::rparen, "')'");
        return Assignment{*idx, std::move(e)};
    }

    // In action context a '+' that is followed by the start of an assignment
    // separates alternatives rather than continuing the sum.
    bool plus_starts_alternative() const {
        if (!in_action_) return false;
        if (peek(1).kind == Tok::ident && peek(2).kind == Tok::prime) return true;
        if (peek(1).kind == Tok::lparen && peek(2).kind == Tok::ident &&
            peek(3).kind == Tok::prime)
            return true;
        return false;
    }

    AExpr parse_aexpr() {
        AExpr e = parse_term();
        for (;;) {
            if (at(Tok::plus)) {
                if (plus_starts_alternative()) break;
                take();
                AExpr rhs = parse_term();
                e = make_binary(AExpr::Kind::add, std::move(e), std::move(rhs));
            } else if (at(Tok::minus)) {
                take();
                AExpr rhs = parse_term();
                e = make_binary(AExpr::Kind::sub, std::move(e), std::move(rhs));
            } else {
                break;
            }
        }
        return e;
    }

    AExpr parse_term() {
        AExpr e = parse_factor();
        while (at(Tok::star)) {
            take();
            AExpr rhs = parse_factor();
            e = make_binary(AExpr::Kind::mul, std::move(e), std::move(rhs));
        }
        return e;
    }

    AExpr parse_factor() {
        if (at(Tok::minus)) {
            take();
            AExpr inner = parse_factor();
            if (inner.kind == AExpr::Kind::constant) {
                inner.constant = -inner.constant;
                return inner;
            }
            AExpr e;
            e.kind = AExpr::Kind::negate;
            e.lhs = std::make_unique<AExpr>(std::move(inner));
            return e;
        }
        if (at(Tok::number)) {
            AExpr e;
            e.kind = AExpr::Kind::constant;
            e.constant = take().value;
            return e;
        }
        if (at(Tok::ident)) {
            Token name = take();
            auto idx = sys_->variable_index(name.text);
            if (!idx)
                throw ParseError(name.line, name.col,
                                 "undeclared variable '" + name.text + "'");
            AExpr e;
            e.kind = AExpr::Kind::variable;
            e.variable = *idx;
            return e;
        }
        if (at(Tok::lparen)) {
            take();
            AExpr e = parse_aexpr();
            expect(Tok::rparen, "')'");
            return e;
        }
        fail("expected an arithmetic term");
    }

    static AExpr make_binary(AExpr::Kind k, AExpr l, AExpr r) {
        AExpr e;
        e.kind = k;
        e.lhs = std::make_unique<AExpr>(std::move(l));
        e.rhs = std::make_unique<AExpr>(std::move(r));
        return e;
    }

    BExpr parse_bexpr() {
        BExpr e = parse_bterm();
        while (at(Tok::pipe)) {
            take();
            BExpr rhs = parse_bterm();
            e = make_bool(BExpr::Kind::disj, std::move(e), std::move(rhs));
        }
        return e;
    }

    BExpr parse_bterm() {
        BExpr e = parse_bfactor();
        while (at(Tok::amp)) {
            take();
            BExpr rhs = parse_bfactor();
            e = make_bool(BExpr::Kind::conj, std::move(e), std::move(rhs));
        }
        return e;
    }

    BExpr parse_bfactor() {
        if (at(Tok::bang)) {
            take();
            BExpr inner = parse_bfactor();
            BExpr e;
            e.kind = BExpr::Kind::negate;
            e.lhs = std::make_unique<BExpr>(std::move(inner));
            return e;
        }
        if (at(Tok::kw_true) || at(Tok::kw_false)) {
            BExpr e;
            e.kind = BExpr::Kind::literal;
            e.literal = take().kind == Tok::kw_true;
            return e;
        }
        if (at(Tok::lparen)) {
            // '(' may open a parenthesized boolean expression or the left
            // operand of a comparison; try the comparison first and backtrack.
            std::size_t saved = pos_;
            try {
                return parse_comparison();
            } catch (const ParseError&) {
                pos_ = saved;
            }
            take();  // '('
            BExpr e = parse_bexpr();
            expect(Tok::rparen, "')'");
            return e;
        }
        return parse_comparison();
    }

    BExpr parse_comparison() {
        BExpr e;
        e.kind = BExpr::Kind::compare;
        e.cmp_lhs = parse_aexpr();
        if (at(Tok::eq)) e.cmp = BExpr::Cmp::eq;
        else if (at(Tok::lt)) e.cmp = BExpr::Cmp::lt;
        else if (at(Tok::le)) e.cmp = BExpr::Cmp::le;
        else if (at(Tok::gt)) e.cmp = BExpr::Cmp::gt;
        else if (at(Tok::ge)) e.cmp = BExpr::Cmp::ge;
        else if (at(Tok::neq)) {
            // sugar: a != b is !(a = b)
            take();
            BExpr inner;
            inner.kind = BExpr::Kind::compare;
            inner.cmp = BExpr::Cmp::eq;
            inner.cmp_lhs = std::move(e.cmp_lhs);
            inner.cmp_rhs = parse_aexpr();
            BExpr neg;
            neg.kind = BExpr::Kind::negate;
            neg.lhs = std::make_unique<BExpr>(std::move(inner));
            return neg;
        } else {
            fail("expected a comparison operator");
        }
        take();
        e.cmp_rhs = parse_aexpr();
        return e;
    }

    static BExpr make_bool(BExpr::Kind k, BExpr l, BExpr r) {
        BExpr e;
        e.kind = k;
        e.lhs = std::make_unique<BExpr>(std::move(l));
        e.rhs = std::make_unique<BExpr>(std::move(r));
        return e;
    }
};

}  // namespace

ModuleSystem parse_system(const std::string& source) {
    return Parser(source).parse_full_system();
}

BExpr parse_state_predicate(const ModuleSystem& sys, const std::string& text) {
    return Parser(text).parse_predicate(sys);
}

bool eval_predicate(const BExpr& e, const GlobalState& s) {
    return eval_bexpr(e, [&](std::size_t v) { return s[v]; });
}

}  // namespace utr
