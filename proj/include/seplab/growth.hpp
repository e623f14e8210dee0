#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "seplab/arrays.hpp"

// Growth functions g on {1..N} with subadditivity certificates, the
// maximal-inequality constant A, the gamma(m, delta) family, and the
// mixing-coefficient series zeta.

namespace seplab {

// A tabulated growth function: values[m-1] = g(m) for m = 1..N. Closed-form
// origins (linear, gamma family) additionally carry their analytic index Q.
struct GrowthFunction {
    int N = 0;
    std::vector<double> values;
    double alpha = 2.0;
    std::optional<double> analytic_Q;

    double at(int m) const;
};

GrowthFunction linear_growth(double C, int N, double alpha);

struct ConditionSCertificate {
    double q_min = 1.0;
    double alpha = 2.0;
    double threshold = 0.0;  // 2^{(alpha-1)/alpha}
    bool admissible = false;
    int N = 0;
    std::vector<std::string> violations;

    std::string to_json() const;
};

// Exhaustive scan of (g(i)+g(j-i))/g(j) over 1 <= i < j <= N, clamped below
// at 1; checks nonnegativity and monotonicity. Zero-denominator ratios with
// positive numerator are recorded as violations rather than folded into q_min.
ConditionSCertificate check_condition_S(const GrowthFunction& g);

// A(alpha, nu, Q) = (1 - Q^{alpha/nu} / 2^{(alpha-1)/nu})^{-nu},
// valid for Q in [1, 2^{(alpha-1)/alpha}).
double constant_A(double alpha, double nu, double Q);

// gamma(m, delta) = C * m * (R(delta) + J(delta) * m^{-kappa})^2,
// kappa in (0, 1/2 - 1/nu).
double gamma_value(int m, double delta, double C, double kappa, double nu,
                   const std::function<double(double)>& R,
                   const std::function<double(double)>& J);

// Tabulate gamma(., delta) on {1..N}; the result carries analytic index
// Q = 2^{2 kappa}.
GrowthFunction make_gamma_growth(int N, double delta, double C, double kappa,
                                 double nu, double alpha,
                                 const std::function<double(double)>& R,
                                 const std::function<double(double)>& J);

struct ZetaResult {
    double value = 0.0;
    double truncation_bound = 0.0;  // rigorous bound on the omitted tail
};

// zeta = sum_{s >= 1} s^{nu-2} alpha(s)^{lambda/(2+lambda)}. Exact finite sum
// for zero-beyond-m profiles; geometric profiles are summed until a rigorous
// ratio-majorant tail bound drops below tol. Tabulated profiles without a
// tail law are refused, as are certified-divergent cases (r >= 1).
ZetaResult zeta(const MixingProfile& profile, double lambda, int nu, double tol);

// h(m) = 2 * (g(m) + l(m)) with certificate Q = max of the two inputs,
// re-verified by exhaustive scan. Both inputs must share alpha and be
// admissible.
GrowthFunction combine_h(const GrowthFunction& g_at_diameter, const GrowthFunction& l);

}  // namespace seplab
