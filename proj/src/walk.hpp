#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rm.hpp"
#include "rng.hpp"

namespace utr {

struct WalkPath {
    std::vector<GlobalState> states;   // states[0] is the initial state
    std::vector<std::string> actions;  // one entry per step taken
    bool deadlocked = false;           // stopped early on an empty successor set
};

// Decision over a finite path. Monotone verdicts stay true under extension;
// the flag is declarative and exercised by the test suite.
struct Verdict {
    std::function<bool(const WalkPath&)> detect;
    bool monotone = false;
};

// "detect when <expr>": fires when any visited state satisfies the guard-syntax
// predicate; monotone by construction.
Verdict state_predicate_verdict(const ModuleSystem& sys, const std::string& expr);

struct EstimationParams {
    double epsilon = 0.1;
    double delta = 0.05;
    unsigned depth = 1;

    // N = ceil(ln(2/delta) / (2 epsilon^2))
    unsigned long n_samples() const;
};

struct WalkResult {
    bool detected = false;
    WalkPath path;
};

// Isotropic random walk of length <= depth: each step picks uniformly among
// the successors (duplicate (action, state) pairs counted separately);
// deadlocks truncate the path, which is still submitted to the verdict.
WalkResult random_walk(const ModuleSystem& sys, unsigned depth, const Verdict& verdict,
                       Rng& rng);

struct GaaResult {
    unsigned depth = 0;
    unsigned long n_samples = 0;
    unsigned long detections = 0;
    double estimate = 0.0;
};

// Mean of N independent walks; satisfies Pr(|estimate - p| < eps) >= 1 - delta
// for the true depth-k detection probability p, by Chernoff-Hoeffding.
GaaResult gaa_estimate(const ModuleSystem& sys, const Verdict& verdict,
                       const EstimationParams& params, Rng& rng);

// Fixed-point iteration: re-runs the estimator over a ladder of depths.
std::vector<GaaResult> gaa_iterate(const ModuleSystem& sys, const Verdict& verdict,
                                   double epsilon, double delta,
                                   const std::vector<unsigned>& depths, Rng& rng);

}  // namespace utr
