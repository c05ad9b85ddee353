#include "rm.hpp"

namespace utr {

namespace {

Value get_var(const GlobalState& s, std::size_t v) { return s[v]; }

std::string action_name(const ModuleSystem& sys, std::size_t module, std::size_t cmd,
                        std::size_t alt) {
    return sys.modules[module].name + ".cmd" + std::to_string(cmd + 1) + ".act" +
           std::to_string(alt + 1);
}

// Applies one alternative; right-hand sides are evaluated against `from`
// (simultaneous-assignment semantics). Out-of-range results are an error, not
// wraparound.
void apply_alternative(const ModuleSystem& sys, std::size_t module, std::size_t cmd,
                       std::size_t alt_index, const GlobalState& from, GlobalState& to) {
    const auto& alt = sys.modules[module].commands[cmd].alternatives[alt_index];
    for (const Assignment& a : alt) {
        Value v = eval_aexpr(a.expr, [&](std::size_t idx) { return get_var(from, idx); });
        const Variable& var = sys.variables[a.variable];
        if (v < var.lo || v > var.hi) {
            throw DomainError("action " + action_name(sys, module, cmd, alt_index) +
                              " drives variable '" + var.name + "' to " + std::to_string(v) +
                              ", outside [" + std::to_string(var.lo) + ".." +
                              std::to_string(var.hi) + "]");
        }
        to[a.variable] = v;
    }
}

}  // namespace

std::vector<Successor> successors(const ModuleSystem& sys, const GlobalState& s) {
    if (!state_in_range(sys, s)) throw DomainError("state is not range-valid");
    std::vector<Successor> out;

    auto guard_holds = [&](const GuardedCommand& cmd) {
        return eval_bexpr(cmd.guard, [&](std::size_t idx) { return get_var(s, idx); });
    };

    for (std::size_t m = 0; m < sys.modules.size(); ++m) {
        const Module& mod = sys.modules[m];
        for (std::size_t c = 0; c < mod.commands.size(); ++c) {
            const GuardedCommand& cmd = mod.commands[c];
            if (cmd.sync || !guard_holds(cmd)) continue;
            for (std::size_t a = 0; a < cmd.alternatives.size(); ++a) {
                GlobalState t = s;
                apply_alternative(sys, m, c, a, s, t);
                out.push_back(Successor{action_name(sys, m, c, a), std::move(t)});
            }
        }
    }

    for (const std::string& label : sys.sync_labels) {
        // participating modules: the ones declaring at least one command with
        // this label; the label is valid when each of them has a true guard
        // carrying it
        struct Choice {
            std::size_t module, cmd, alt;
        };
        std::vector<std::vector<Choice>> options;
        bool valid = true;
        bool declared_anywhere = false;
        for (std::size_t m = 0; m < sys.modules.size(); ++m) {
            const Module& mod = sys.modules[m];
            std::vector<Choice> local;
            bool declares = false;
            for (std::size_t c = 0; c < mod.commands.size(); ++c) {
                const GuardedCommand& cmd = mod.commands[c];
                if (!cmd.sync || *cmd.sync != label) continue;
                declares = true;
                if (!guard_holds(cmd)) continue;
                for (std::size_t a = 0; a < cmd.alternatives.size(); ++a)
                    local.push_back(Choice{m, c, a});
            }
            if (!declares) continue;
            declared_anywhere = true;
            if (local.empty()) {
                valid = false;
                break;
            }
            options.push_back(std::move(local));
        }
        if (!valid || !declared_anywhere) continue;

        // cartesian product over participating modules
        std::vector<std::size_t> pick(options.size(), 0);
        bool more = true;
        while (more) {
            GlobalState t = s;
            std::string name = "[" + label + "]";
            for (std::size_t i = 0; i < options.size(); ++i) {
                const Choice& ch = options[i][pick[i]];
                apply_alternative(sys, ch.module, ch.cmd, ch.alt, s, t);
                name += (i == 0 ? " " : "+") + action_name(sys, ch.module, ch.cmd, ch.alt);
            }
            out.push_back(Successor{std::move(name), std::move(t)});
            more = false;
            for (std::size_t i = options.size(); i-- > 0;) {
                if (++pick[i] < options[i].size()) {
                    more = true;
                    break;
                }
                pick[i] = 0;
            }
        }
    }
    return out;
}

}  // namespace utr
