#pragma once

#include <array>
#include <string>
#include <vector>

#include "seplab/verify.hpp"

// Equicontinuity decay tables, Lipschitz-increment estimates for the
// smoothed process, the end-to-end hypothesis checklist, and a CUSUM-style
// change-point statistic.

namespace seplab {

struct AecEntry {
    double delta = 0.0;
    int n = 0;
    double p_hat = 0.0;       // P(modulus > eps)
    double se = 0.0;
    double p_split_time = 0.0;  // P(time-direction sup > eps/2)
    double p_split_fn = 0.0;    // P(function-direction sup > eps/2)
};

struct AecTable {
    double eps = 0.0;
    std::vector<AecEntry> entries;
};

// For each (delta, n): exceedance probability of the modulus of the process
// over the grid {j/time_grid} x net under tau = |s-t| + rho, with the two
// one-direction suprema reported via the union-bound split at eps/2. The
// pathwise bound modulus <= time-split + fn-split is asserted per replicate.
// smoothed = true evaluates the interval-smoothed process at (0, t].
AecTable aec_table(const ModelDescriptor& model, const FunctionClass& cls,
                   const std::vector<MemberRef>& net, bool smoothed,
                   const std::vector<double>& delta_grid, const std::vector<int>& n_grid,
                   double eps, int time_grid, long long replicates, std::uint64_t seed);

struct IntervalPair {
    double u1 = 0.0, v1 = 0.0;  // interval A = (u1, v1]
    double u2 = 0.0, v2 = 0.0;  // interval B = (u2, v2]
};

struct LipschitzReport {
    double C1 = 0.0;        // max ||increment||_p / sqrt(leb(A sym-diff B))
    double C2 = 0.0;        // max ||increment||_p / rho(f, g)
    double set_slope = 0.0; // log-log slope of set-direction increments
    bool degenerate_flagged = false;  // zero distance but nonzero increment
    std::vector<double> set_norms, set_dists;  // per interval pair
    std::vector<double> fn_norms, fn_dists;    // per member pair
};

// L_p norms of smoothed-process increments in the set direction (interval
// pairs at a fixed member) and the function direction (member pairs at a
// fixed interval).
LipschitzReport lipschitz_increments(const ModelDescriptor& model, const FunctionClass& cls,
                                     const MemberRef& fixed_member,
                                     const std::vector<IntervalPair>& interval_pairs,
                                     const std::vector<std::pair<MemberRef, MemberRef>>& member_pairs,
                                     double fixed_u, double fixed_v, int n, double p,
                                     long long replicates, std::uint64_t seed);

struct PipelineCheck {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string detail;
};

struct PipelineReport {
    bool all_pass = false;
    std::vector<PipelineCheck> checks;  // in hypothesis order; stops at first failure
    // gamma-certificate artifacts per delta: (delta, R(delta), J(delta))
    std::vector<std::array<double, 3>> rj_artifacts;
    std::string to_json() const;
};

// Ordered hypothesis checklist for weak convergence of the sequential
// process: mixing-series convergence, bracketing-integral convergence with
// the indicator moment collapse, the envelope moment cap, the kappa window,
// and a fitted square-root moment envelope for a fixed member. Emits the
// R/J construction behind the induced gamma certificate.
PipelineReport pipeline_check(const ModelDescriptor& model, const FunctionClass& cls,
                              int nu, double lambda, double kappa, double K, double eta,
                              std::uint64_t seed);

// max over {i/n} x net of |Z_n(t, f) - t Z_n(1, f)|.
double changepoint_cusum(const TriangularArrayRow& row, const FunctionClass& cls,
                         const std::vector<MemberRef>& net, const MarginalContext& ctx);

}  // namespace seplab
