#pragma once

#include <vector>

#include "seplab/fclasses.hpp"

// Exact evaluation of partial sums, running maxima, the sequential empirical
// process Z_n, and the smoothed set-indexed Z_n^s in both its closed
// interpolation form and its Lebesgue-weight form.

namespace seplab {

// Centered values z_i = f(X_{i,n}) - E f(X_{i,n}), i = 1..n.
struct CenteredEval {
    int n = 0;
    std::vector<double> z;
};

CenteredEval center(const TriangularArrayRow& row, const FunctionClass& cls,
                    const MemberRef& f, const MarginalContext& ctx);

// S(i,j) = sum_{k=i}^{j} z_k; zero when j < i. Indices are 1-based.
double partial_sum(const CenteredEval& ce, int i, int j);

// M(i,j) = max_{k=i..j} |S(i,k)|; zero when j < i.
double running_max(const CenteredEval& ce, int i, int j);

// Z_n(t) = n^{-1/2} S(1, floor(nt)); piecewise constant in t.
double eval_Z(const CenteredEval& ce, double t);

// Z_n^s((u,v]) via the three-term closed interpolation formula.
double eval_Zs_interval(const CenteredEval& ce, double u, double v);

// Z_n^s((u,v]) via direct Lebesgue weights lambda((i-1,i] cap (nu,nv]);
// the independent oracle for eval_Zs_interval.
double eval_Zs_weights(const CenteredEval& ce, double u, double v);

// Modulus of continuity over a finite grid, tau((s,f),(t,g)) = |s-t| + d(f,g).
// times must be an equispaced ascending grid; values[f][ti] are the process
// evaluations. Returns the max of |v(s,f) - v(t,g)| over grid pairs with
// tau <= delta (a lower bound for the sup over the continuum).
struct ModulusInput {
    std::vector<double> times;
    std::vector<std::vector<double>> values;  // [member][time index]
    std::vector<std::vector<double>> fdist;   // member distance matrix
};

double modulus(const ModulusInput& in, double delta, bool* empty_flag = nullptr);

// mins[s] / maxs[s] = extrema of v over the centered window [s-w, s+w],
// amortized O(1) per position.
void sliding_window_extrema(const std::vector<double>& v, int w,
                            std::vector<double>& mins, std::vector<double>& maxs);

// Reference implementation: exhaustive double loop over all grid pairs.
double modulus_naive(const ModulusInput& in, double delta, bool* empty_flag = nullptr);

// Modulus over an arbitrary finite index grid with a full pairwise distance
// matrix (used for tau_s over set-function products).
double modulus_general(const std::vector<double>& values,
                       const std::vector<std::vector<double>>& dist, double delta,
                       bool* empty_flag = nullptr);

}  // namespace seplab
