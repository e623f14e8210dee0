#pragma once

#include <cstdint>
#include <vector>

#include "seplab/bracketing.hpp"
#include "seplab/growth.hpp"
#include "seplab/process.hpp"

// Monte Carlo and exact-enumeration checks of the maximal inequality, the
// mixing moment bound, the covariance inequality, and the scaling of the
// chaining bound.

namespace seplab {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long replicates = 0;
    std::uint64_t seed = 0;
};

// Weighted-innovation skeleton: S_{i,j}(psi) = sum_{k=i}^{j} w_psi[k] eps_k
// with iid innovations. TwoValued takes the two equiprobable values
// (two_lo, two_hi); Rademacher is the (-1, +1) special case.
struct WProcessSpec {
    enum class Innovation { Rademacher, Gauss, TwoValued };
    Innovation innovation = Innovation::Rademacher;
    double two_lo = -1.0, two_hi = 1.0;
    int n = 0;
    std::vector<std::vector<double>> weights;  // [psi][k-1], each of length n
};

// Estimate E max_psi |S(i,j)|^nu, or the running-maximum analogue
// E max_psi M(i,j)^nu when maxima = true.
MCEstimate mc_sup_moment(const WProcessSpec& spec, int i, int j, double nu,
                         long long replicates, std::uint64_t seed, bool maxima);

struct PairCheck {
    int i = 0, j = 0;
    MCEstimate s_moment;  // max over the family of |S(i,j)|^nu
    MCEstimate m_moment;  // max over the family of M(i,j)^nu
    double bound = 0.0;   // A * (C_hat * (j-i+1))^alpha
    double margin = 0.0;  // bound + tolerance - m_moment.mean
};

struct MaximalReport {
    double C_hat = 0.0;  // fitted linear envelope slope
    double A = 0.0;
    double alpha = 0.0;
    double nu = 0.0;
    bool pass = false;
    bool inconclusive = false;  // relative MC noise above 20%
    std::vector<PairCheck> pairs;
};

// Fit-then-verify protocol on a dyadic (i,j) grid: fit the minimal linear
// envelope C_hat * m covering the S-moments (upper confidence bound), then
// check the running-maximum moments against A * (C_hat m)^alpha within
// 3 standard errors.
MaximalReport verify_maximal_inequality(const WProcessSpec& spec, double nu,
                                        double alpha, long long replicates,
                                        std::uint64_t seed);

// Exact version for two-valued innovations by enumerating all 2^n paths
// (n <= 12). Estimates carry zero standard error.
MaximalReport exact_small_oracle(const WProcessSpec& spec, double nu, double alpha);

// --- model-driven moment experiments -------------------------------------

// E max over net of |S(i,j)(f)|^nu for centered class members over model rows.
MCEstimate mc_sup_moment_model(const ModelDescriptor& model, const FunctionClass& cls,
                               const std::vector<MemberRef>& net, int n, int i, int j,
                               double nu, long long replicates, std::uint64_t seed,
                               bool maxima);

struct FitMomentReport {
    std::vector<int> m_values;
    std::vector<double> C_hat;   // per m
    bool stable = false;         // max/min <= 4 over the grid
    double zeta_value = 0.0;     // convergent mixing series (precondition)
};

// C_hat(m) = max over net members of ||S(1,m)(f)||_{L_nu} estimate divided by
// sqrt(m) * max(m^{-1/2}, rho_2(f)); stability of C_hat across a dyadic m
// grid is the verdict. Refuses when the mixing series diverges.
FitMomentReport fit_moment_constant(const ModelDescriptor& model, const FunctionClass& cls,
                                    const std::vector<MemberRef>& net, double lambda,
                                    int nu, const std::vector<int>& m_grid,
                                    long long replicates, std::uint64_t seed);

struct CovarianceReport {
    MCEstimate lhs;   // |cov| estimate with influence-function SE
    double rhs = 0.0; // 4 M^{1/(1+delta)} alpha(gap)^{delta/(1+delta)}
    int gap = 0;
    bool pass = false;
};

// Covariance of two bounded product functionals prod f(X_k) over past index
// set I and future index set J, gap = min(J) - max(I), delta = lambda / 2,
// sup-bound M supplied by the caller (analytic for indicators).
CovarianceReport check_covariance_inequality(
    const ModelDescriptor& model, const FunctionClass& cls, const MemberRef& f,
    int n, const std::vector<int>& past_idx, const std::vector<int>& future_idx,
    double lambda, double M, long long replicates, std::uint64_t seed);

// Right side of the chaining bound:
// C * [ m * ( N(eta)^{2/nu} (m^{-kappa} + delta + delta^{nu/2})
//             + integral_0^eta N(eps)^{1/nu} eps^{-lambda/(2+lambda)} d eps )^2 ]^{nu/2}.
double rhs_chaining_bound(int m, double delta, double eta,
                          const std::function<double(double)>& N_fn, double kappa,
                          double C, int nu, double lambda);

struct ChainScalingEntry {
    int m = 0;
    double delta = 0.0;
    double lhs = 0.0;    // E sup_{rho(f-g) <= delta} |S(f) - S(g)|^nu estimate
    double rhs1 = 0.0;   // bound with C = 1
    double C_hat = 0.0;  // lhs / rhs1
};

struct ChainScalingReport {
    std::vector<ChainScalingEntry> entries;
    bool stable = false;  // max C_hat / min C_hat <= 4
};

ChainScalingReport chaining_scaling_check(
    const ModelDescriptor& model, const FunctionClass& cls,
    const std::vector<MemberRef>& net, int nu, double lambda, double kappa,
    double eta, const std::function<double(double)>& N_fn,
    const std::vector<int>& m_grid, const std::vector<double>& delta_grid,
    long long replicates, std::uint64_t seed);

}  // namespace seplab
