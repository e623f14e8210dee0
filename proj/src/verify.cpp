#include "seplab/verify.hpp"
#include "seplab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seplab {

namespace {

struct Accum {
    double sum = 0.0, sumsq = 0.0;
    long long count = 0;
    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++count;
    }
    MCEstimate estimate(std::uint64_t seed) const {
        MCEstimate e;
        e.replicates = count;
        e.seed = seed;
        e.mean = sum / count;
        const double var = std::max(0.0, sumsq / count - e.mean * e.mean);
        e.std_error = std::sqrt(var / (count - 1));
        return e;
    }
};

void validate_w_spec(const WProcessSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("w-process: n must be >= 1");
    if (spec.weights.empty()) throw std::invalid_argument("w-process: degenerate (empty) family");
    for (const auto& w : spec.weights)
        if (static_cast<int>(w.size()) != spec.n)
            throw std::invalid_argument("w-process: weight vector length != n");
}

double draw_innovation(const WProcessSpec& spec, std::uint64_t rs, int k) {
    switch (spec.innovation) {
        case WProcessSpec::Innovation::Rademacher:
            return rng::rademacher(rs, static_cast<std::uint64_t>(k));
        case WProcessSpec::Innovation::Gauss:
            return rng::gauss(rs, static_cast<std::uint64_t>(k));
        case WProcessSpec::Innovation::TwoValued:
            return rng::uniform01(rs, static_cast<std::uint64_t>(k)) < 0.5 ? spec.two_lo
                                                                           : spec.two_hi;
    }
    return 0.0;
}

// Family maxima of |S(i,j)|^nu and M(i,j)^nu for one innovation path.
void path_pair_stats(const WProcessSpec& spec, const std::vector<double>& eps, int i,
                     int j, double nu, double& sup_s, double& sup_m) {
    sup_s = 0.0;
    sup_m = 0.0;
    for (const auto& w : spec.weights) {
        double s = 0.0, m = 0.0;
        for (int k = i; k <= j; ++k) {
            s += w[k - 1] * eps[k - 1];
            m = std::max(m, std::abs(s));
        }
        sup_s = std::max(sup_s, std::pow(std::abs(s), nu));
        sup_m = std::max(sup_m, std::pow(m, nu));
    }
}

std::vector<std::pair<int, int>> dyadic_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int len = 1; len <= n; len *= 2)
        for (int i = 1; i + len - 1 <= n; i += len) pairs.push_back({i, i + len - 1});
    return pairs;
}

// Shared fit-then-verify step. tol(s_or_m, k) supplies the statistical slack
// for pair k: 3 SE for Monte Carlo runs, 1e-12 for exact enumeration.
void finish_report(MaximalReport& rep, double alpha, double nu, double exact_tol) {
    rep.alpha = alpha;
    rep.nu = nu;
    double C = 0.0;
    for (const auto& pc : rep.pairs) {
        const int len = pc.j - pc.i + 1;
        const double ucb = pc.s_moment.mean + 3.0 * pc.s_moment.std_error;
        C = std::max(C, std::pow(ucb, 1.0 / alpha) / len);
    }
    rep.C_hat = C;
    rep.A = constant_A(alpha, nu, 1.0);  // linear envelope: index exactly 1
    rep.pass = true;
    rep.inconclusive = false;
    for (auto& pc : rep.pairs) {
        const int len = pc.j - pc.i + 1;
        pc.bound = rep.A * std::pow(C * len, alpha);
        const double slack = 3.0 * pc.m_moment.std_error + exact_tol;
        pc.margin = pc.bound + slack - pc.m_moment.mean;
        if (pc.margin < 0.0) rep.pass = false;
        if (pc.m_moment.mean > 0.0 &&
            pc.m_moment.std_error > 0.2 * pc.m_moment.mean)
            rep.inconclusive = true;
    }
}

}  // namespace

MCEstimate mc_sup_moment(const WProcessSpec& spec, int i, int j, double nu,
                         long long replicates, std::uint64_t seed, bool maxima) {
    validate_w_spec(spec);
    if (i < 1 || j > spec.n || i > j)
        throw std::invalid_argument("mc_sup_moment: need 1 <= i <= j <= n");
    if (nu < 1.0) throw std::invalid_argument("mc_sup_moment: nu must be >= 1");
    if (replicates < 1000)
        throw std::invalid_argument("mc_sup_moment: need at least 1000 replicates");
    Accum acc;
    std::vector<double> eps(spec.n);
    for (long long r = 0; r < replicates; ++r) {
        const std::uint64_t rs = rng::replicate_seed(seed, static_cast<std::uint64_t>(r));
        for (int k = 1; k <= spec.n; ++k) eps[k - 1] = draw_innovation(spec, rs, k);
        double sup_s, sup_m;
        path_pair_stats(spec, eps, i, j, nu, sup_s, sup_m);
        acc.add(maxima ? sup_m : sup_s);
    }
    return acc.estimate(seed);
}

MaximalReport verify_maximal_inequality(const WProcessSpec& spec, double nu,
                                        double alpha, long long replicates,
                                        std::uint64_t seed) {
    validate_w_spec(spec);
    if (!(alpha > 1.0)) throw std::invalid_argument("verify_maximal_inequality: alpha must be > 1");
    if (nu < 1.0) throw std::invalid_argument("verify_maximal_inequality: nu must be >= 1");
    if (replicates < 1000)
        throw std::invalid_argument("verify_maximal_inequality: need at least 1000 replicates");

    const auto pairs = dyadic_pairs(spec.n);
    std::vector<Accum> acc_s(pairs.size()), acc_m(pairs.size());
    std::vector<double> eps(spec.n);
    for (long long r = 0; r < replicates; ++r) {
        const std::uint64_t rs = rng::replicate_seed(seed, static_cast<std::uint64_t>(r));
        for (int k = 1; k <= spec.n; ++k) eps[k - 1] = draw_innovation(spec, rs, k);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            double sup_s, sup_m;
            path_pair_stats(spec, eps, pairs[p].first, pairs[p].second, nu, sup_s, sup_m);
            acc_s[p].add(sup_s);
            acc_m[p].add(sup_m);
        }
    }
    MaximalReport rep;
    rep.pairs.resize(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        rep.pairs[p].i = pairs[p].first;
        rep.pairs[p].j = pairs[p].second;
        rep.pairs[p].s_moment = acc_s[p].estimate(seed);
        rep.pairs[p].m_moment = acc_m[p].estimate(seed);
    }
    finish_report(rep, alpha, nu, 0.0);
    return rep;
}

MaximalReport exact_small_oracle(const WProcessSpec& spec, double nu, double alpha) {
    validate_w_spec(spec);
    if (spec.n > 12) throw std::invalid_argument("exact_small_oracle: n must be <= 12");
    if (spec.innovation == WProcessSpec::Innovation::Gauss)
        throw std::invalid_argument("exact_small_oracle: innovations must be two-valued");
    if (!(alpha > 1.0)) throw std::invalid_argument("exact_small_oracle: alpha must be > 1");
    const double lo = spec.innovation == WProcessSpec::Innovation::Rademacher ? -1.0
                                                                              : spec.two_lo;
    const double hi = spec.innovation == WProcessSpec::Innovation::Rademacher ? 1.0
                                                                              : spec.two_hi;
    // fit over every (i,j) pair so the fitted envelope satisfies the full
    // partial-sum hypothesis, not just its dyadic slice
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= spec.n; ++i)
        for (int j = i; j <= spec.n; ++j) pairs.push_back({i, j});
    std::vector<double> es(pairs.size(), 0.0), em(pairs.size(), 0.0);
    const long long paths = 1LL << spec.n;
    std::vector<double> eps(spec.n);
    for (long long mask = 0; mask < paths; ++mask) {
        for (int k = 0; k < spec.n; ++k) eps[k] = (mask >> k) & 1 ? hi : lo;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            double sup_s, sup_m;
            path_pair_stats(spec, eps, pairs[p].first, pairs[p].second, nu, sup_s, sup_m);
            es[p] += sup_s;
            em[p] += sup_m;
        }
    }
    MaximalReport rep;
    rep.pairs.resize(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto& pc = rep.pairs[p];
        pc.i = pairs[p].first;
        pc.j = pairs[p].second;
        pc.s_moment = {es[p] / paths, 0.0, paths, 0};
        pc.m_moment = {em[p] / paths, 0.0, paths, 0};
    }
    finish_report(rep, alpha, nu, 1e-12);
    return rep;
}

namespace {

// Per-member centered sums S(i,j)(f) across replicates; means precomputed
// once per (net, n).
struct ModelSums {
    std::vector<std::vector<double>> means;  // [member][index i-1]
};

ModelSums precompute_means(const ModelDescriptor& model, const FunctionClass& cls,
                           const std::vector<MemberRef>& net, int n) {
    ModelSums ms;
    const auto ctx = model_context(model, n);
    ms.means.resize(net.size());
    for (std::size_t f = 0; f < net.size(); ++f) {
        ms.means[f].resize(n);
        for (int i = 1; i <= n; ++i) ms.means[f][i - 1] = member_mean(cls, net[f], ctx, i);
    }
    return ms;
}

}  // namespace

MCEstimate mc_sup_moment_model(const ModelDescriptor& model, const FunctionClass& cls,
                               const std::vector<MemberRef>& net, int n, int i, int j,
                               double nu, long long replicates, std::uint64_t seed,
                               bool maxima) {
    if (net.empty()) throw std::invalid_argument("mc_sup_moment_model: degenerate net");
    if (i < 1 || j > n || i > j)
        throw std::invalid_argument("mc_sup_moment_model: need 1 <= i <= j <= n");
    if (replicates < 1000)
        throw std::invalid_argument("mc_sup_moment_model: need at least 1000 replicates");
    const auto ms = precompute_means(model, cls, net, n);
    Accum acc;
    for (long long r = 0; r < replicates; ++r) {
        const auto row = generate_row(model, n, rng::replicate_seed(seed, r));
        double sup = 0.0;
        for (std::size_t f = 0; f < net.size(); ++f) {
            double s = 0.0, m = 0.0;
            for (int k = i; k <= j; ++k) {
                s += eval_member(cls, net[f], row.values[k - 1]) - ms.means[f][k - 1];
                m = std::max(m, std::abs(s));
            }
            sup = std::max(sup, std::pow(maxima ? m : std::abs(s), nu));
        }
        acc.add(sup);
    }
    return acc.estimate(seed);
}

FitMomentReport fit_moment_constant(const ModelDescriptor& model, const FunctionClass& cls,
                                    const std::vector<MemberRef>& net, double lambda,
                                    int nu, const std::vector<int>& m_grid,
                                    long long replicates, std::uint64_t seed) {
    if (net.empty() || m_grid.empty())
        throw std::invalid_argument("fit_moment_constant: empty net or m grid");
    if (nu < 2 || nu % 2 != 0)
        throw std::invalid_argument("fit_moment_constant: nu must be an even integer >= 2");
    const int m_max = *std::max_element(m_grid.begin(), m_grid.end());
    // convergent mixing series is a hypothesis of the moment bound; zeta
    // throws when it cannot be certified
    const auto zr = zeta(profile_of(model, m_max), lambda, nu, 1e-8);

    FitMomentReport rep;
    rep.zeta_value = zr.value;
    for (int m : m_grid) {
        const auto ms = precompute_means(model, cls, net, m);
        const auto ctx = model_context(model, m);
        std::vector<double> tau(net.size());
        for (std::size_t f = 0; f < net.size(); ++f) tau[f] = rho_p(cls, net[f], ctx, 2.0).value;

        std::vector<Accum> acc(net.size());
        for (long long r = 0; r < replicates; ++r) {
            const auto row = generate_row(model, m, rng::replicate_seed(rng::mix(seed, m), r));
            for (std::size_t f = 0; f < net.size(); ++f) {
                double s = 0.0;
                for (int k = 1; k <= m; ++k)
                    s += eval_member(cls, net[f], row.values[k - 1]) - ms.means[f][k - 1];
                acc[f].add(std::pow(std::abs(s), static_cast<double>(nu)));
            }
        }
        double C = 0.0;
        for (std::size_t f = 0; f < net.size(); ++f) {
            const double norm = std::pow(acc[f].estimate(seed).mean, 1.0 / nu);
            const double denom = std::sqrt(static_cast<double>(m)) *
                                 std::max(1.0 / std::sqrt(static_cast<double>(m)), tau[f]);
            C = std::max(C, norm / denom);
        }
        rep.m_values.push_back(m);
        rep.C_hat.push_back(C);
    }
    const double lo = *std::min_element(rep.C_hat.begin(), rep.C_hat.end());
    const double hi = *std::max_element(rep.C_hat.begin(), rep.C_hat.end());
    rep.stable = lo > 0.0 && hi / lo <= 4.0;
    return rep;
}

CovarianceReport check_covariance_inequality(
    const ModelDescriptor& model, const FunctionClass& cls, const MemberRef& f,
    int n, const std::vector<int>& past_idx, const std::vector<int>& future_idx,
    double lambda, double M, long long replicates, std::uint64_t seed) {
    if (past_idx.empty() || future_idx.empty())
        throw std::invalid_argument("check_covariance_inequality: empty index set");
    const int gap = *std::min_element(future_idx.begin(), future_idx.end()) -
                    *std::max_element(past_idx.begin(), past_idx.end());
    if (gap < 1) throw std::invalid_argument("check_covariance_inequality: gap must be >= 1");
    for (int k : past_idx)
        if (k < 1 || k > n) throw std::out_of_range("check_covariance_inequality: index outside row");
    for (int k : future_idx)
        if (k < 1 || k > n) throw std::out_of_range("check_covariance_inequality: index outside row");

    std::vector<double> g1(replicates), g2(replicates);
    for (long long r = 0; r < replicates; ++r) {
        const auto row = generate_row(model, n, rng::replicate_seed(seed, r));
        double a = 1.0, b = 1.0;
        for (int k : past_idx) a *= eval_member(cls, f, row.values[k - 1]);
        for (int k : future_idx) b *= eval_member(cls, f, row.values[k - 1]);
        g1[r] = a;
        g2[r] = b;
    }
    double m1 = 0.0, m2 = 0.0;
    for (long long r = 0; r < replicates; ++r) {
        m1 += g1[r];
        m2 += g2[r];
    }
    m1 /= replicates;
    m2 /= replicates;
    Accum h;  // influence values of the covariance estimator
    for (long long r = 0; r < replicates; ++r) h.add((g1[r] - m1) * (g2[r] - m2));
    const auto he = h.estimate(seed);

    CovarianceReport rep;
    rep.gap = gap;
    rep.lhs = he;
    rep.lhs.mean = std::abs(he.mean);
    const double delta = lambda / 2.0;
    rep.rhs = 4.0 * std::pow(M, 1.0 / (1.0 + delta)) *
              std::pow(profile_of(model, n).alpha(gap), delta / (1.0 + delta));
    rep.pass = rep.lhs.mean <= rep.rhs + 3.0 * rep.lhs.std_error;
    return rep;
}

double rhs_chaining_bound(int m, double delta, double eta,
                          const std::function<double(double)>& N_fn, double kappa,
                          double C, int nu, double lambda) {
    if (nu < 2 || nu % 2 != 0)
        throw std::invalid_argument("rhs_chaining_bound: nu must be an even integer >= 2");
    const double kmax = std::min(0.5 - 1.0 / nu, lambda / 4.0);
    if (!(kappa > 0.0 && kappa < kmax))
        throw std::invalid_argument("rhs_chaining_bound: kappa must lie in (0, " +
                                    std::to_string(kmax) + ")");
    const auto integ = bracketing_integral(N_fn, lambda, nu, eta);
    if (integ.divergent)
        throw std::invalid_argument("rhs_chaining_bound: bracketing integral diverges");
    const double inner = std::pow(N_fn(eta), 2.0 / nu) *
                             (std::pow(static_cast<double>(m), -kappa) + delta +
                              std::pow(delta, nu / 2.0)) +
                         integ.value;
    return C * std::pow(m * inner * inner, nu / 2.0);
}

ChainScalingReport chaining_scaling_check(
    const ModelDescriptor& model, const FunctionClass& cls,
    const std::vector<MemberRef>& net, int nu, double lambda, double kappa,
    double eta, const std::function<double(double)>& N_fn,
    const std::vector<int>& m_grid, const std::vector<double>& delta_grid,
    long long replicates, std::uint64_t seed) {
    if (net.size() < 2) throw std::invalid_argument("chaining_scaling_check: net too small");
    ChainScalingReport rep;
    SemimetricSpec sm;  // rho_2
    for (int m : m_grid) {
        const auto ctx = model_context(model, m);
        const auto dist = net_distance_matrix(cls, net, sm, ctx);
        const auto ms = precompute_means(model, cls, net, m);
        std::vector<Accum> acc(delta_grid.size());
        std::vector<double> S(net.size());
        for (long long r = 0; r < replicates; ++r) {
            const auto row = generate_row(model, m, rng::replicate_seed(rng::mix(seed, m), r));
            for (std::size_t f = 0; f < net.size(); ++f) {
                double s = 0.0;
                for (int k = 1; k <= m; ++k)
                    s += eval_member(cls, net[f], row.values[k - 1]) - ms.means[f][k - 1];
                S[f] = s;
            }
            for (std::size_t d = 0; d < delta_grid.size(); ++d) {
                double sup = 0.0;
                for (std::size_t a = 0; a < net.size(); ++a)
                    for (std::size_t b = a + 1; b < net.size(); ++b)
                        if (dist[a][b] <= delta_grid[d])
                            sup = std::max(sup, std::abs(S[a] - S[b]));
                acc[d].add(std::pow(sup, static_cast<double>(nu)));
            }
        }
        for (std::size_t d = 0; d < delta_grid.size(); ++d) {
            ChainScalingEntry e;
            e.m = m;
            e.delta = delta_grid[d];
            e.lhs = acc[d].estimate(seed).mean;
            e.rhs1 = rhs_chaining_bound(m, e.delta, eta, N_fn, kappa, 1.0, nu, lambda);
            e.C_hat = e.lhs / e.rhs1;
            rep.entries.push_back(e);
        }
    }
    double lo = rep.entries.front().C_hat, hi = lo;
    for (const auto& e : rep.entries) {
        lo = std::min(lo, e.C_hat);
        hi = std::max(hi, e.C_hat);
    }
    rep.stable = lo > 0.0 && hi / lo <= 4.0;
    return rep;
}

}  // namespace seplab
