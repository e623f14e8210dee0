#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "seplab/arrays.hpp"

// Function classes F with envelopes, rho_p seminorms, finite delta-nets and
// the difference family F_delta. Members are referenced by parameter
// (halfline: x, lipschitz: theta) or by index (finite_explicit).
//
// Suprema over the full class are replaced by maxima over nets everywhere in
// this repo; net-max <= true sup, so the bias direction is downward.

namespace seplab {

struct FunctionClass {
    enum class Kind { HalflineIndicators, LipschitzBall, FiniteExplicit };
    Kind kind = Kind::HalflineIndicators;

    // FiniteExplicit members, with optional tabulated means per model.
    std::vector<std::function<double(double)>> members;
    std::vector<double> explicit_means;  // empty -> Monte Carlo fallback
    double explicit_envelope = 1.0;

    bool include_zero = false;  // append the zero function (for 0 in F)

    double envelope(double x) const;
};

// A class member: param in [0,1] for the 1-parameter families, index for
// finite_explicit. The zero function is index -1.
struct MemberRef {
    double param = 0.0;
    int index = -2;

    static MemberRef of_param(double p) { return {p, -2}; }
    static MemberRef of_index(int i) { return {0.0, i}; }
    static MemberRef zero() { return {0.0, -1}; }
    bool is_zero() const { return index == -1; }
};

double eval_member(const FunctionClass& cls, const MemberRef& f, double x);

// Marginal descriptors enabling analytic means/moments where possible.
struct MarginalContext {
    ModelDescriptor model;
    int n = 0;  // row length; needed for per-index marginals of tv_ar1
};

MarginalContext iid_uniform_context();
MarginalContext model_context(const ModelDescriptor& model, int n);

// E f(X_{i,n}); analytic for halfline/lipschitz under the shipped marginals,
// cached Monte Carlo (10^6 draws) otherwise. i is 1-based.
double member_mean(const FunctionClass& cls, const MemberRef& f,
                   const MarginalContext& ctx, int i);

struct RhoResult {
    double value = 0.0;
    bool low_confidence = false;  // Monte Carlo fallback with few samples
};

// rho_p(f) = sup_{t,n} ||f(X_{t,n})||_{L_p}.
RhoResult rho_p(const FunctionClass& cls, const MemberRef& f,
                const MarginalContext& ctx, double p);

struct SemimetricSpec {
    enum class Kind { RhoP, Custom };
    Kind kind = Kind::RhoP;
    double p = 2.0;
    std::function<double(const MemberRef&, const MemberRef&)> custom;
};

// Distance rho(f - g) between members under the spec.
double member_dist(const FunctionClass& cls, const SemimetricSpec& sm,
                   const MemberRef& f, const MemberRef& g, const MarginalContext& ctx);

// Finite delta-cover of the parameter range under the semimetric; verified
// by midpoint sampling before return.
std::vector<MemberRef> delta_net(const FunctionClass& cls, const SemimetricSpec& sm,
                                 const MarginalContext& ctx, double delta);

// Equispaced halfline net of the given size (x = k/(size-1)), a convenience
// for experiments that fix the net rather than the radius.
std::vector<MemberRef> equispaced_halfline_net(int size);

// All ordered net pairs (f,g) with rho(f-g) <= delta, diagonal included.
std::vector<std::pair<int, int>>
diff_pairs(const FunctionClass& cls, const std::vector<MemberRef>& net,
           const SemimetricSpec& sm, const MarginalContext& ctx, double delta);

// Pairwise distance matrix over a net.
std::vector<std::vector<double>>
net_distance_matrix(const FunctionClass& cls, const std::vector<MemberRef>& net,
                    const SemimetricSpec& sm, const MarginalContext& ctx);

// Centered absolute moment E|f(X) - Ef(X)|^r, analytic for indicator
// members (two-point distribution), Monte Carlo otherwise.
double centered_abs_moment(const FunctionClass& cls, const MemberRef& f,
                           const MarginalContext& ctx, int i, double r);

}  // namespace seplab
