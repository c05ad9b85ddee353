#include "walk.hpp"

#include <cmath>
#include <memory>

namespace utr {

Verdict state_predicate_verdict(const ModuleSystem& sys, const std::string& expr) {
    auto predicate = std::make_shared<BExpr>(parse_state_predicate(sys, expr));
    Verdict v;
    v.monotone = true;
    v.detect = [predicate](const WalkPath& path) {
        for (const GlobalState& s : path.states) {
            if (eval_predicate(*predicate, s)) return true;
        }
        return false;
    };
    return v;
}

unsigned long EstimationParams::n_samples() const {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0))
        throw DomainError("epsilon and delta must lie in (0,1)");
    return static_cast<unsigned long>(
        std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

WalkResult random_walk(const ModuleSystem& sys, unsigned depth, const Verdict& verdict,
                       Rng& rng) {
    WalkResult r;
    GlobalState s = initial_state(sys);
    r.path.states.push_back(s);
    for (unsigned step = 0; step < depth; ++step) {
        std::vector<Successor> succ = successors(sys, s);
        if (succ.empty()) {
            r.path.deadlocked = true;
            break;
        }
        std::size_t pick = static_cast<std::size_t>(rng.below(succ.size()));
        s = std::move(succ[pick].state);
        r.path.actions.push_back(std::move(succ[pick].action));
        r.path.states.push_back(s);
    }
    r.detected = verdict.detect(r.path);
    return r;
}

GaaResult gaa_estimate(const ModuleSystem& sys, const Verdict& verdict,
                       const EstimationParams& params, Rng& rng) {
    GaaResult out;
    out.depth = params.depth;
    out.n_samples = params.n_samples();
    for (unsigned long i = 0; i < out.n_samples; ++i) {
        if (random_walk(sys, params.depth, verdict, rng).detected) ++out.detections;
    }
    out.estimate = static_cast<double>(out.detections) / static_cast<double>(out.n_samples);
    return out;
}

std::vector<GaaResult> gaa_iterate(const ModuleSystem& sys, const Verdict& verdict,
                                   double epsilon, double delta,
                                   const std::vector<unsigned>& depths, Rng& rng) {
    std::vector<GaaResult> out;
    out.reserve(depths.size());
    for (unsigned k : depths) {
        EstimationParams p{epsilon, delta, k};
        out.push_back(gaa_estimate(sys, verdict, p, rng));
    }
    return out;
}

}  // namespace utr
