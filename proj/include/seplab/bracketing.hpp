#pragma once

#include <functional>
#include <vector>

#include "seplab/fclasses.hpp"

// Constructive bracketing covers for the shipped function classes,
// bracketing numbers, singular bracketing/entropy integrals, and greedy
// covering numbers for the product semimetric over intervals x functions.

namespace seplab {

// Indicator brackets over a quantile grid 0 = x_0 < ... < x_N = 1:
// approximation a_k = 1_{[0, x_k]}, bound b_k = 1_{(x_k, x_{k+1}]}.
// A member 1_{[0,x]} with x in (x_k, x_{k+1}] pairs with bracket k.
struct BracketingCover {
    double epsilon = 0.0;
    std::vector<double> grid;  // x_0..x_N

    int size() const { return static_cast<int>(grid.size()) - 1; }
    int pair_index(double x) const;           // bracket index for member param x
    double eval_approx(int k, double x) const;
    double eval_bound(int k, double x) const;
    double rho2_bound(int k) const;           // sqrt of the cell width
};

// Equispaced cover with spacing <= eps^2, N = ceil(1/eps^2). Pointwise
// domination |f - a| <= b and rho2(b) <= eps are machine-checked on a dense
// grid before the cover is returned.
BracketingCover build_brackets_halfline(double eps);

// Constructive upper bound on the smallest bracket count at radius eps
// under rho_2 (not an exact minimum). Throws overflow_error when the count
// exceeds 1e9; quadrature should use bracketing_growth instead.
int bracketing_number(const FunctionClass& cls, double eps);

// Real-valued envelope of the bracket count (halfline: max(1, eps^-2)),
// valid at arbitrarily small eps; this is what the singular integrals
// consume.
std::function<double(double)> bracketing_growth(const FunctionClass& cls);

struct IntegralResult {
    bool divergent = false;
    double value = 0.0;
    double error_estimate = 0.0;
};

// integral_0^eta eps^{-lambda/(2+lambda)} N(eps)^{1/nu} d eps, by adaptive
// quadrature on a geometric subdivision toward 0 with an analytic power-law
// tail. A combined power exponent <= -1 near 0 yields a divergence verdict.
IntegralResult bracketing_integral(const std::function<double(double)>& N_fn,
                                   double lambda, double nu, double eta);

// integral_0^{Delta_s} N(eps)^{1/p} d eps with the same singularity handling.
IntegralResult entropy_integral(const std::function<double(double)>& cover_fn,
                                double p, double Delta_s);

// Convergence region of the halfline-indicator bracketing integral
// (bracket count growing like eps^{-2}).
bool halfline_integral_feasible(double lambda, double nu);

// Greedy cover count of the grid {((i/k, j/k], f)} under
// tau_s = sqrt(lebesgue(A sym-diff B)) + fdist(f, g). Upper bound for the
// grid, evidence (lower bound) for the continuum.
int covering_number_tau_s(int k, const std::vector<std::vector<double>>& fdist,
                          double eps);

}  // namespace seplab
