#pragma once

#include <cstdint>
#include <functional>
#include <vector>

// Nonstationary triangular-array row generators with analytically known
// strong-mixing profiles, plus a restricted-event empirical lower-bound
// estimator for the mixing coefficient.

namespace seplab {

// t -> alpha(t) with alpha(0) = 1. Shipped profiles are either exact
// (m-dependent: alpha(t) = 0 for t > m) or a conservative geometric
// bound alpha(t) <= c * r^t.
struct MixingProfile {
    enum class Kind { ExactZeroBeyond, Geometric, Tabulated };
    Kind kind = Kind::ExactZeroBeyond;
    int m = 0;                   // ExactZeroBeyond
    double c = 1.0;              // Geometric scale
    double r = 0.0;              // Geometric rate
    std::vector<double> table;   // Tabulated: alpha(1), alpha(2), ...

    double alpha(int t) const;
    bool has_tail_law() const { return kind != Kind::Tabulated; }
};

struct Marginal {
    enum class Kind { Uniform01, Gauss };
    Kind kind = Kind::Uniform01;
    // Gauss: mean/sd evaluated at i/n; allows nonstationary marginals.
    std::function<double(double)> mean_fn;
    std::function<double(double)> sd_fn;
};

struct ModelDescriptor {
    enum class Kind { Iid, MDependent, TvAr1 };
    Kind kind = Kind::Iid;
    Marginal marginal;                       // Iid
    int m = 0;                               // MDependent window
    std::function<double(double)> coef_fn;   // TvAr1 coefficient at i/n
    double innovation_sd = 1.0;              // TvAr1
};

struct TriangularArrayRow {
    int n = 0;
    std::vector<double> values;
    ModelDescriptor model;
    std::uint64_t seed = 0;
};

TriangularArrayRow gen_iid(int n, const Marginal& marginal, std::uint64_t seed);

// Moving window of width m+1 over iid standard normal innovations,
// normalized so the marginal is exactly N(0,1). alpha(t) = 0 for t > m.
TriangularArrayRow gen_m_dependent(int n, int m, std::uint64_t seed);

// X_{i,n} = coef_fn(i/n) X_{i-1,n} + eps_i, X_{0,n} = 0, eps ~ N(0, sd^2).
// Rejects any grid coefficient with |a| >= 1, naming the offending index.
TriangularArrayRow gen_tvar1(int n, std::function<double(double)> coef_fn,
                             double innovation_sd, std::uint64_t seed);

// Dispatch on the model kind; row length n may differ from the length the
// descriptor was built for.
TriangularArrayRow generate_row(const ModelDescriptor& model, int n, std::uint64_t seed);

// Analytic profile attached to a model: exact for m-dependent, geometric
// with c = 1 and rate sup_i |coef(i/n)| for tv_ar1 (conservative), zero
// for iid.
MixingProfile profile_of(const ModelDescriptor& model, int n);

// Marginal standard deviations of a tv_ar1 row, sigma_1..sigma_n, from the
// variance recursion sigma_i^2 = a_i^2 sigma_{i-1}^2 + sd^2.
std::vector<double> tvar1_marginal_sds(const ModelDescriptor& model, int n);

// Restricted-event lower bound on alpha_n(t): sup over rectangle events in
// quantile-discretized past/future windows of |P(A and B) - P(A)P(B)|.
// family_ranges = false restricts the event family to single-bin atoms
// (a strictly smaller family, hence a smaller value).
double estimate_alpha_lower(const std::vector<TriangularArrayRow>& rows, int t,
                            int bins, int window, bool family_ranges = true);

}  // namespace seplab
