#include "seplab/fclasses.hpp"
#include "seplab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace seplab {

namespace {

constexpr std::uint64_t kMeanCacheSeed = 0x6D65616E5F6D63ULL;
constexpr long kMcDraws = 1'000'000;

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Marginal law of X_{i,n} for the shipped models: uniform01 or N(mu, sd^2).
struct MarginalLaw {
    bool uniform = false;
    double mu = 0.0;
    double sd = 1.0;
};

MarginalLaw marginal_law(const MarginalContext& ctx, int i) {
    const auto& m = ctx.model;
    switch (m.kind) {
        case ModelDescriptor::Kind::Iid:
            if (m.marginal.kind == Marginal::Kind::Uniform01) return {true, 0.0, 0.0};
            else {
                const double u = ctx.n > 0 ? static_cast<double>(i) / ctx.n : 1.0;
                return {false, m.marginal.mean_fn ? m.marginal.mean_fn(u) : 0.0,
                        m.marginal.sd_fn ? m.marginal.sd_fn(u) : 1.0};
            }
        case ModelDescriptor::Kind::MDependent:
            return {false, 0.0, 1.0};
        case ModelDescriptor::Kind::TvAr1: {
            // coef_fn identity is not hashable; recompute the recursion (O(n)).
            auto sds = tvar1_marginal_sds(m, ctx.n);
            return {false, 0.0, sds[i - 1]};
        }
    }
    return {true, 0.0, 0.0};
}

double sample_marginal(const MarginalLaw& law, std::uint64_t seed, std::uint64_t k) {
    if (law.uniform) return rng::uniform01(seed, k);
    return law.mu + law.sd * rng::gauss(seed, k);
}

bool stationary_marginals(const MarginalContext& ctx) {
    return ctx.model.kind != ModelDescriptor::Kind::TvAr1;
}

}  // namespace

double FunctionClass::envelope(double x) const {
    switch (kind) {
        case Kind::HalflineIndicators: return 1.0;
        case Kind::LipschitzBall: return clamp01(std::abs(x));
        case Kind::FiniteExplicit: return explicit_envelope;
    }
    return 1.0;
}

double eval_member(const FunctionClass& cls, const MemberRef& f, double x) {
    if (f.is_zero()) return 0.0;
    switch (cls.kind) {
        case FunctionClass::Kind::HalflineIndicators:
            return x <= f.param ? 1.0 : 0.0;
        case FunctionClass::Kind::LipschitzBall:
            return clamp01(f.param * x);
        case FunctionClass::Kind::FiniteExplicit:
            return cls.members.at(f.index)(x);
    }
    return 0.0;
}

MarginalContext iid_uniform_context() {
    MarginalContext ctx;
    ctx.model.kind = ModelDescriptor::Kind::Iid;
    ctx.model.marginal.kind = Marginal::Kind::Uniform01;
    return ctx;
}

MarginalContext model_context(const ModelDescriptor& model, int n) {
    return MarginalContext{model, n};
}

namespace {

double mc_mean(const FunctionClass& cls, const MemberRef& f, const MarginalLaw& law) {
    // 10^6 draws, cached so centering error stays negligible and repeatable.
    static std::mutex mtx;
    static std::map<std::string, double> cache;
    std::ostringstream key;
    key << static_cast<int>(cls.kind) << ':' << f.param << ':' << f.index << ':'
        << law.uniform << ':' << law.mu << ':' << law.sd;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key.str());
        if (it != cache.end()) return it->second;
    }
    double s = 0.0;
    for (long k = 0; k < kMcDraws; ++k)
        s += eval_member(cls, f, sample_marginal(law, kMeanCacheSeed, static_cast<std::uint64_t>(k)));
    const double mean = s / kMcDraws;
    std::lock_guard<std::mutex> lock(mtx);
    cache[key.str()] = mean;
    return mean;
}

}  // namespace

double member_mean(const FunctionClass& cls, const MemberRef& f,
                   const MarginalContext& ctx, int i) {
    if (f.is_zero()) return 0.0;
    const MarginalLaw law = marginal_law(ctx, i);
    switch (cls.kind) {
        case FunctionClass::Kind::HalflineIndicators:
            if (law.uniform) return clamp01(f.param);
            return norm_cdf((f.param - law.mu) / law.sd);
        case FunctionClass::Kind::LipschitzBall:
            if (law.uniform) return f.param / 2.0;
            return mc_mean(cls, f, law);
        case FunctionClass::Kind::FiniteExplicit:
            if (!cls.explicit_means.empty()) return cls.explicit_means.at(f.index);
            return mc_mean(cls, f, law);
    }
    return 0.0;
}

namespace {

// E|f|^p at a single marginal; analytic where possible.
double abs_moment_p(const FunctionClass& cls, const MemberRef& f, const MarginalLaw& law,
                    double p, bool* mc_used) {
    if (f.is_zero()) return 0.0;
    switch (cls.kind) {
        case FunctionClass::Kind::HalflineIndicators:
            // |f|^p = f for an indicator
            if (law.uniform) return clamp01(f.param);
            return norm_cdf((f.param - law.mu) / law.sd);
        case FunctionClass::Kind::LipschitzBall:
            if (law.uniform) return std::pow(f.param, p) / (p + 1.0);
            break;
        case FunctionClass::Kind::FiniteExplicit:
            break;
    }
    if (mc_used) *mc_used = true;
    constexpr long draws = 100'000;
    double s = 0.0;
    for (long k = 0; k < draws; ++k) {
        const double v = eval_member(cls, f, sample_marginal(law, kMeanCacheSeed ^ 0x9E37ULL,
                                                             static_cast<std::uint64_t>(k)));
        s += std::pow(std::abs(v), p);
    }
    return s / draws;
}

}  // namespace

RhoResult rho_p(const FunctionClass& cls, const MemberRef& f,
                const MarginalContext& ctx, double p) {
    if (p < 1.0) throw std::invalid_argument("rho_p: p must be >= 1");
    RhoResult res;
    bool mc = false;
    if (stationary_marginals(ctx)) {
        res.value = std::pow(abs_moment_p(cls, f, marginal_law(ctx, std::max(1, ctx.n)), p, &mc), 1.0 / p);
    } else {
        // sup over the sampled grid of per-index marginals
        double best = 0.0;
        for (int i = 1; i <= ctx.n; ++i)
            best = std::max(best, abs_moment_p(cls, f, marginal_law(ctx, i), p, &mc));
        res.value = std::pow(best, 1.0 / p);
    }
    res.low_confidence = mc;  // MC fallback flagged, not silent
    return res;
}

double member_dist(const FunctionClass& cls, const SemimetricSpec& sm,
                   const MemberRef& f, const MemberRef& g, const MarginalContext& ctx) {
    if (sm.kind == SemimetricSpec::Kind::Custom) return sm.custom(f, g);
    const double p = sm.p;
    if (f.is_zero()) return rho_p(cls, g, ctx, p).value;
    if (g.is_zero()) return rho_p(cls, f, ctx, p).value;
    switch (cls.kind) {
        case FunctionClass::Kind::HalflineIndicators: {
            // |f_x - f_x'| is the indicator of the interval between x and x'
            auto mass = [&](const MarginalLaw& law) {
                if (law.uniform) return std::abs(clamp01(f.param) - clamp01(g.param));
                return std::abs(norm_cdf((f.param - law.mu) / law.sd) -
                                norm_cdf((g.param - law.mu) / law.sd));
            };
            if (stationary_marginals(ctx))
                return std::pow(mass(marginal_law(ctx, std::max(1, ctx.n))), 1.0 / p);
            double best = 0.0;
            for (int i = 1; i <= ctx.n; ++i) best = std::max(best, mass(marginal_law(ctx, i)));
            return std::pow(best, 1.0 / p);
        }
        case FunctionClass::Kind::LipschitzBall: {
            const MarginalLaw law = marginal_law(ctx, std::max(1, ctx.n));
            if (law.uniform)
                return std::abs(f.param - g.param) / std::pow(p + 1.0, 1.0 / p);
            break;
        }
        case FunctionClass::Kind::FiniteExplicit:
            break;
    }
    // Monte Carlo on the difference
    const MarginalLaw law = marginal_law(ctx, std::max(1, ctx.n));
    constexpr long draws = 100'000;
    double s = 0.0;
    for (long k = 0; k < draws; ++k) {
        const double x = sample_marginal(law, kMeanCacheSeed ^ 0xD1FFULL, static_cast<std::uint64_t>(k));
        s += std::pow(std::abs(eval_member(cls, f, x) - eval_member(cls, g, x)), p);
    }
    return std::pow(s / draws, 1.0 / p);
}

std::vector<MemberRef> delta_net(const FunctionClass& cls, const SemimetricSpec& sm,
                                 const MarginalContext& ctx, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta_net: delta must be positive");
    std::vector<MemberRef> net;
    if (cls.kind == FunctionClass::Kind::FiniteExplicit) {
        for (int i = 0; i < static_cast<int>(cls.members.size()); ++i)
            net.push_back(MemberRef::of_index(i));
        if (cls.include_zero) net.push_back(MemberRef::zero());
        return net;
    }
    // Greedy forward cover over a fine parameter grid.
    const int grid = 4096;
    MemberRef center = MemberRef::of_param(0.0);
    net.push_back(center);
    for (int j = 1; j <= grid; ++j) {
        const MemberRef pt = MemberRef::of_param(static_cast<double>(j) / grid);
        if (member_dist(cls, sm, center, pt, ctx) > delta) {
            center = pt;
            net.push_back(center);
        }
    }
    // Midpoint verification: every sampled parameter must lie within delta of
    // some net member.
    for (int j = 0; j < grid; ++j) {
        const MemberRef mid = MemberRef::of_param((j + 0.5) / grid);
        bool covered = false;
        for (const auto& c : net)
            if (member_dist(cls, sm, c, mid, ctx) <= delta) { covered = true; break; }
        if (!covered) throw std::logic_error("delta_net: cover verification failed");
    }
    if (cls.include_zero) net.push_back(MemberRef::zero());
    return net;
}

std::vector<MemberRef> equispaced_halfline_net(int size) {
    if (size < 2) throw std::invalid_argument("equispaced_halfline_net: size must be >= 2");
    std::vector<MemberRef> net;
    net.reserve(size);
    for (int k = 0; k < size; ++k)
        net.push_back(MemberRef::of_param(static_cast<double>(k) / (size - 1)));
    return net;
}

std::vector<std::pair<int, int>>
diff_pairs(const FunctionClass& cls, const std::vector<MemberRef>& net,
           const SemimetricSpec& sm, const MarginalContext& ctx, double delta) {
    if (net.empty()) throw std::invalid_argument("diff_pairs: empty net");
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < static_cast<int>(net.size()); ++a)
        for (int b = 0; b < static_cast<int>(net.size()); ++b)
            if (member_dist(cls, sm, net[a], net[b], ctx) <= delta)
                pairs.emplace_back(a, b);
    return pairs;
}

std::vector<std::vector<double>>
net_distance_matrix(const FunctionClass& cls, const std::vector<MemberRef>& net,
                    const SemimetricSpec& sm, const MarginalContext& ctx) {
    const int k = static_cast<int>(net.size());
    std::vector<std::vector<double>> d(k, std::vector<double>(k, 0.0));
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            d[a][b] = d[b][a] = member_dist(cls, sm, net[a], net[b], ctx);
    return d;
}

double centered_abs_moment(const FunctionClass& cls, const MemberRef& f,
                           const MarginalContext& ctx, int i, double r) {
    const double q = member_mean(cls, f, ctx, i);
    if (cls.kind == FunctionClass::Kind::HalflineIndicators && !f.is_zero()) {
        // f takes values {0,1} with P(f=1) = q
        return q * std::pow(1.0 - q, r) + (1.0 - q) * std::pow(q, r);
    }
    if (f.is_zero()) return 0.0;
    const MarginalLaw law = marginal_law(ctx, i);
    constexpr long draws = 100'000;
    double s = 0.0;
    for (long k = 0; k < draws; ++k) {
        const double v = eval_member(cls, f, sample_marginal(law, kMeanCacheSeed ^ 0xCAFEULL,
                                                             static_cast<std::uint64_t>(k)));
        s += std::pow(std::abs(v - q), r);
    }
    return s / draws;
}

}  // namespace seplab
