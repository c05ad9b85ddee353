#include <deque>
#include <unordered_map>

#include "rm.hpp"

namespace utr {

Letter sync_letter(const std::string& label) { return Letter{label, -1, label}; }

namespace {

// Local valuations are encoded as mixed-radix indices over the module's
// variable ranges.
struct LocalSpace {
    std::vector<Value> lo, span;  // span = hi - lo + 1

    std::size_t encode(const std::vector<Value>& vals) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < vals.size(); ++i)
            idx = idx * static_cast<std::size_t>(span[i]) +
                  static_cast<std::size_t>(vals[i] - lo[i]);
        return idx;
    }
};

}  // namespace

Automaton flatten_module(const ModuleSystem& sys, std::size_t module_index,
                         const ReadView* read_view,
                         const std::optional<std::string>& sync_label) {
    if (module_index >= sys.modules.size())
        throw DomainError("module index " + std::to_string(module_index) + " out of range");
    const Module& mod = sys.modules[module_index];

    if (sync_label) {
        for (const GuardedCommand& cmd : mod.commands) {
            if (cmd.sync && *cmd.sync != *sync_label) {
                throw DomainError("module '" + mod.name + "' declares sync label '" +
                                  *cmd.sync + "' but the pipeline designates '" + *sync_label +
                                  "'; systems with several distinct labels are not supported");
            }
        }
    }

    LocalSpace space;
    std::vector<Value> init;
    for (std::size_t v = mod.first_variable; v < mod.first_variable + mod.variable_count;
         ++v) {
        const Variable& var = sys.variables[v];
        space.lo.push_back(var.lo);
        space.span.push_back(var.hi - var.lo + 1);
        init.push_back(var.init);
    }

    // value accessor: local variables from the current valuation, foreign ones
    // from the read view
    std::vector<Value> const* current = nullptr;
    auto get = [&](std::size_t v) -> Value {
        if (mod.owns_variable(v)) return (*current)[v - mod.first_variable];
        const Variable& var = sys.variables[v];
        if (read_view) {
            auto it = read_view->values.find(var.name);
            if (it != read_view->values.end()) return it->second;
        }
        throw DomainError("module '" + mod.name + "' reads foreign variable '" + var.name +
                          "' and no read view supplies it");
    };

    // BFS over reachable valuations
    std::unordered_map<std::size_t, std::uint32_t> state_of;
    std::vector<std::vector<Value>> valuations;
    std::deque<std::uint32_t> queue;
    auto intern = [&](const std::vector<Value>& vals) {
        auto [it, inserted] = state_of.emplace(space.encode(vals), 0);
        if (inserted) {
            it->second = static_cast<std::uint32_t>(valuations.size());
            valuations.push_back(vals);
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern(init);

    struct PendingArc {
        std::uint32_t src, dst;
        std::size_t cmd, alt;
        bool is_sync;
    };
    std::vector<PendingArc> arcs;

    while (!queue.empty()) {
        std::uint32_t s = queue.front();
        queue.pop_front();
        std::vector<Value> vals = valuations[s];  // copy: valuations may reallocate
        current = &vals;
        for (std::size_t c = 0; c < mod.commands.size(); ++c) {
            const GuardedCommand& cmd = mod.commands[c];
            if (!eval_bexpr(cmd.guard, get)) continue;
            bool is_sync = sync_label && cmd.sync && *cmd.sync == *sync_label;
            for (std::size_t a = 0; a < cmd.alternatives.size(); ++a) {
                std::vector<Value> next = vals;
                for (const Assignment& assign : cmd.alternatives[a]) {
                    Value v = eval_aexpr(assign.expr, get);
                    const Variable& var = sys.variables[assign.variable];
                    if (v < var.lo || v > var.hi) {
                        throw DomainError(
                            "flattening module '" + mod.name + "': command " +
                            std::to_string(c + 1) + " alternative " + std::to_string(a + 1) +
                            " drives variable '" + var.name + "' to " + std::to_string(v) +
                            ", outside [" + std::to_string(var.lo) + ".." +
                            std::to_string(var.hi) + "]");
                    }
                    next[assign.variable - mod.first_variable] = v;
                }
                std::uint32_t dst = intern(next);
                arcs.push_back(PendingArc{s, dst, c, a, is_sync});
            }
        }
        current = nullptr;
    }

    Automaton out;
    for (std::size_t i = 0; i < valuations.size(); ++i) out.add_state(true);
    out.initial = 0;

    // Letters are unique per transition (the alphabet size equals the number
    // of transitions); when one (command, alternative) fires from several
    // states its letters get a '#k' ordinal.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> fire_count;
    for (const PendingArc& arc : arcs) {
        if (!arc.is_sync) ++fire_count[{arc.cmd, arc.alt}];
    }
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    std::uint32_t alpha_index = UINT32_MAX;
    for (const PendingArc& arc : arcs) {
        std::uint32_t letter;
        if (arc.is_sync) {
            if (alpha_index == UINT32_MAX) alpha_index = out.add_letter(sync_letter(*sync_label));
            letter = alpha_index;
        } else {
            std::string name = mod.name + ".cmd" + std::to_string(arc.cmd + 1) + ".act" +
                               std::to_string(arc.alt + 1);
            if (fire_count[{arc.cmd, arc.alt}] > 1)
                name += "#" + std::to_string(seen[{arc.cmd, arc.alt}]++);
            letter = out.add_letter(
                Letter{name, static_cast<std::int32_t>(module_index), name});
        }
        out.add_arc(arc.src, letter, arc.dst);
    }
    // reachable-only by construction; nothing to prune
    return out;
}

}  // namespace utr
