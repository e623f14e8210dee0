#include "seplab/diagnostics.hpp"
#include "seplab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace seplab {

namespace {

std::vector<std::vector<double>> member_means(const ModelDescriptor& model,
                                              const FunctionClass& cls,
                                              const std::vector<MemberRef>& net, int n) {
    const auto ctx = model_context(model, n);
    std::vector<std::vector<double>> means(net.size(), std::vector<double>(n));
    for (std::size_t f = 0; f < net.size(); ++f)
        for (int i = 1; i <= n; ++i) means[f][i - 1] = member_mean(cls, net[f], ctx, i);
    return means;
}

}  // namespace

AecTable aec_table(const ModelDescriptor& model, const FunctionClass& cls,
                   const std::vector<MemberRef>& net, bool smoothed,
                   const std::vector<double>& delta_grid, const std::vector<int>& n_grid,
                   double eps, int time_grid, long long replicates, std::uint64_t seed) {
    if (delta_grid.empty() || n_grid.empty() || net.empty())
        throw std::invalid_argument("aec_table: empty grid");
    if (!(eps > 0.0)) throw std::invalid_argument("aec_table: eps must be positive");
    if (time_grid < 2) throw std::invalid_argument("aec_table: time grid too small");
    if (replicates < 2) throw std::invalid_argument("aec_table: need at least 2 replicates");

    AecTable table;
    table.eps = eps;
    const int nf = static_cast<int>(net.size());
    SemimetricSpec sm;  // rho_2

    for (int n : n_grid) {
        const auto means = member_means(model, cls, net, n);
        const auto ctx = model_context(model, n);
        const auto fdist = net_distance_matrix(cls, net, sm, ctx);
        ModulusInput in;
        in.fdist = fdist;
        in.times.resize(time_grid + 1);
        for (int t = 0; t <= time_grid; ++t)
            in.times[t] = static_cast<double>(t) / time_grid;
        in.values.assign(nf, std::vector<double>(time_grid + 1, 0.0));

        std::vector<long long> exceed(delta_grid.size(), 0),
            exceed_t(delta_grid.size(), 0), exceed_f(delta_grid.size(), 0);

        const double sqn = std::sqrt(static_cast<double>(n));
        std::vector<double> z(n), prefix(n + 1), mins, maxs;
        for (long long r = 0; r < replicates; ++r) {
            const auto row = generate_row(model, n, rng::replicate_seed(rng::mix(seed, n), r));
            for (int f = 0; f < nf; ++f) {
                prefix[0] = 0.0;
                for (int i = 1; i <= n; ++i) {
                    z[i - 1] = eval_member(cls, net[f], row.values[i - 1]) - means[f][i - 1];
                    prefix[i] = prefix[i - 1] + z[i - 1];
                }
                for (int t = 0; t <= time_grid; ++t) {
                    const double nt = n * in.times[t];
                    const int fl = std::min(n, static_cast<int>(std::floor(nt)));
                    double s = prefix[fl];
                    if (smoothed && fl < n) s += (nt - fl) * z[fl];
                    in.values[f][t] = s / sqn;
                }
            }
            for (std::size_t d = 0; d < delta_grid.size(); ++d) {
                const double delta = delta_grid[d];
                const double full = delta > 0.0 ? modulus(in, delta) : 0.0;
                // one-direction suprema at the same delta
                double st = 0.0, sf = 0.0;
                const int w = static_cast<int>(std::floor(delta * time_grid + 1e-12));
                for (int f = 0; f < nf; ++f) {
                    sliding_window_extrema(in.values[f], w, mins, maxs);
                    for (int t = 0; t <= time_grid; ++t) {
                        st = std::max(st, in.values[f][t] - mins[t]);
                        st = std::max(st, maxs[t] - in.values[f][t]);
                    }
                }
                for (int a = 0; a < nf; ++a)
                    for (int b = a + 1; b < nf; ++b)
                        if (fdist[a][b] <= delta)
                            for (int t = 0; t <= time_grid; ++t)
                                sf = std::max(sf, std::abs(in.values[a][t] -
                                                           in.values[b][t]));
                if (full > st + sf + 1e-9)
                    throw std::logic_error("aec_table: split decomposition violated");
                if (full > eps) ++exceed[d];
                if (st > eps / 2.0) ++exceed_t[d];
                if (sf > eps / 2.0) ++exceed_f[d];
            }
        }
        for (std::size_t d = 0; d < delta_grid.size(); ++d) {
            AecEntry e;
            e.delta = delta_grid[d];
            e.n = n;
            e.p_hat = static_cast<double>(exceed[d]) / replicates;
            e.se = std::sqrt(e.p_hat * (1.0 - e.p_hat) / replicates);
            e.p_split_time = static_cast<double>(exceed_t[d]) / replicates;
            e.p_split_fn = static_cast<double>(exceed_f[d]) / replicates;
            table.entries.push_back(e);
        }
    }
    return table;
}

LipschitzReport lipschitz_increments(const ModelDescriptor& model, const FunctionClass& cls,
                                     const MemberRef& fixed_member,
                                     const std::vector<IntervalPair>& interval_pairs,
                                     const std::vector<std::pair<MemberRef, MemberRef>>& member_pairs,
                                     double fixed_u, double fixed_v, int n, double p,
                                     long long replicates, std::uint64_t seed) {
    if (!(p >= 1.0)) throw std::invalid_argument("lipschitz_increments: p must be >= 1");
    if (replicates < 2)
        throw std::invalid_argument("lipschitz_increments: need at least 2 replicates");
    const auto ctx = model_context(model, n);
    SemimetricSpec sm;

    LipschitzReport rep;
    std::vector<double> set_acc(interval_pairs.size(), 0.0);
    std::vector<double> fn_acc(member_pairs.size(), 0.0);

    // distinct members needed across both pair lists
    std::vector<MemberRef> members{fixed_member};
    for (const auto& mp : member_pairs) {
        members.push_back(mp.first);
        members.push_back(mp.second);
    }
    const auto means = member_means(model, cls, members, n);

    for (long long r = 0; r < replicates; ++r) {
        const auto row = generate_row(model, n, rng::replicate_seed(seed, r));
        std::vector<CenteredEval> ces(members.size());
        for (std::size_t f = 0; f < members.size(); ++f) {
            ces[f].n = n;
            ces[f].z.resize(n);
            for (int i = 1; i <= n; ++i)
                ces[f].z[i - 1] =
                    eval_member(cls, members[f], row.values[i - 1]) - means[f][i - 1];
        }
        for (std::size_t k = 0; k < interval_pairs.size(); ++k) {
            const auto& ip = interval_pairs[k];
            const double d = eval_Zs_interval(ces[0], ip.u1, ip.v1) -
                             eval_Zs_interval(ces[0], ip.u2, ip.v2);
            set_acc[k] += std::pow(std::abs(d), p);
        }
        for (std::size_t k = 0; k < member_pairs.size(); ++k) {
            const double d = eval_Zs_interval(ces[1 + 2 * k], fixed_u, fixed_v) -
                             eval_Zs_interval(ces[2 + 2 * k], fixed_u, fixed_v);
            fn_acc[k] += std::pow(std::abs(d), p);
        }
    }

    for (std::size_t k = 0; k < interval_pairs.size(); ++k) {
        const auto& ip = interval_pairs[k];
        const double inter =
            std::max(0.0, std::min(ip.v1, ip.v2) - std::max(ip.u1, ip.u2));
        const double sym = (ip.v1 - ip.u1) + (ip.v2 - ip.u2) - 2.0 * inter;
        const double norm = std::pow(set_acc[k] / replicates, 1.0 / p);
        rep.set_norms.push_back(norm);
        rep.set_dists.push_back(sym);
        if (sym <= 0.0) {
            if (norm > 1e-9) rep.degenerate_flagged = true;
        } else {
            rep.C1 = std::max(rep.C1, norm / std::sqrt(sym));
        }
    }
    for (std::size_t k = 0; k < member_pairs.size(); ++k) {
        const double rho = member_dist(cls, sm, member_pairs[k].first,
                                       member_pairs[k].second, ctx);
        const double norm = std::pow(fn_acc[k] / replicates, 1.0 / p);
        rep.fn_norms.push_back(norm);
        rep.fn_dists.push_back(rho);
        if (rho <= 0.0) {
            if (norm > 1e-9) rep.degenerate_flagged = true;
        } else {
            rep.C2 = std::max(rep.C2, norm / rho);
        }
    }

    // log-log slope of set-direction increment norms against leb(A sym-diff B)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int cnt = 0;
    for (std::size_t k = 0; k < rep.set_norms.size(); ++k)
        if (rep.set_dists[k] > 0.0 && rep.set_norms[k] > 0.0) {
            const double x = std::log(rep.set_dists[k]);
            const double y = std::log(rep.set_norms[k]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++cnt;
        }
    if (cnt >= 2) rep.set_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return rep;
}

std::string PipelineReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"all_pass\":" << (all_pass ? "true" : "false") << ",\"checks\":[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        if (i) os << ",";
        os << "{\"name\":\"" << checks[i].name << "\",\"pass\":"
           << (checks[i].pass ? "true" : "false") << ",\"value\":" << checks[i].value
           << ",\"detail\":\"" << checks[i].detail << "\"}";
    }
    os << "],\"rj\":[";
    for (std::size_t i = 0; i < rj_artifacts.size(); ++i) {
        if (i) os << ",";
        os << "[" << rj_artifacts[i][0] << "," << rj_artifacts[i][1] << ","
           << rj_artifacts[i][2] << "]";
    }
    os << "]}";
    return os.str();
}

PipelineReport pipeline_check(const ModelDescriptor& model, const FunctionClass& cls,
                              int nu, double lambda, double kappa, double K, double eta,
                              std::uint64_t seed) {
    if (nu < 2 || nu % 2 != 0)
        throw std::invalid_argument("pipeline_check: nu must be an even integer >= 2");
    PipelineReport rep;
    auto fail = [&](PipelineCheck c) {
        c.pass = false;
        rep.checks.push_back(std::move(c));
        rep.all_pass = false;
        return rep;
    };

    // 1. mixing series converges
    PipelineCheck c1{"mixing_series", false, 0.0, ""};
    try {
        const auto zr = zeta(profile_of(model, 4096), lambda, nu, 1e-8);
        c1.pass = true;
        c1.value = zr.value;
    } catch (const std::exception& e) {
        c1.detail = e.what();
        return fail(std::move(c1));
    }
    rep.checks.push_back(c1);

    // 2. bracketing integral converges; indicator bounds collapse all
    // higher-moment conditions to the rho_2 condition exactly
    const auto N_fn = bracketing_growth(cls);
    PipelineCheck c2{"bracketing_integral", false, 0.0, ""};
    const auto integ = bracketing_integral(N_fn, lambda, nu, eta);
    if (integ.divergent) {
        c2.detail = "integral diverges at 0";
        return fail(std::move(c2));
    }
    c2.pass = true;
    c2.value = integ.value;
    if (cls.kind == FunctionClass::Kind::HalflineIndicators)
        c2.detail = "indicator bounds: higher moments equal the second moment";
    rep.checks.push_back(c2);

    // 3. envelope moment cap: sup_f E|f|^{nu(2+lambda)/2} <= K
    PipelineCheck c3{"moment_cap", false, 0.0, ""};
    double env = 0.0;
    for (int i = 0; i <= 256; ++i) env = std::max(env, cls.envelope(i / 256.0));
    c3.value = std::pow(env, nu * (2.0 + lambda) / 2.0);
    if (c3.value > K) {
        c3.detail = "envelope moment exceeds the cap";
        return fail(std::move(c3));
    }
    c3.pass = true;
    rep.checks.push_back(c3);

    // 4. kappa window
    PipelineCheck c4{"kappa_range", false, kappa, ""};
    const double kmax = std::min(0.5 - 1.0 / nu, lambda / 4.0);
    if (!(kappa > 0.0 && kappa < kmax)) {
        c4.detail = "kappa outside (0, " + std::to_string(kmax) + ")";
        return fail(std::move(c4));
    }
    c4.pass = true;
    rep.checks.push_back(c4);

    // 5. square-root moment envelope for a fixed member f0:
    // ||S(1,m)(f0)||_{L_nu} <= D sqrt(m), D fitted over a dyadic m grid
    PipelineCheck c5{"sqrt_envelope", false, 0.0, ""};
    {
        const MemberRef f0 = MemberRef::of_param(0.5);
        double D = 0.0;
        for (int m = 4; m <= 256; m *= 4) {
            double moment;
            if (model.kind == ModelDescriptor::Kind::Iid && nu == 4 &&
                cls.kind == FunctionClass::Kind::HalflineIndicators &&
                model.marginal.kind == Marginal::Kind::Uniform01) {
                const auto ctx = model_context(model, m);
                const double mu4 = centered_abs_moment(cls, f0, ctx, 1, 4.0);
                const double s2 = centered_abs_moment(cls, f0, ctx, 1, 2.0);
                moment = m * mu4 + 3.0 * m * (m - 1.0) * s2 * s2;
            } else {
                const auto est = mc_sup_moment_model(model, cls, {f0}, m, 1, m,
                                                     nu, 2000, rng::mix(seed, m), false);
                moment = est.mean + 3.0 * est.std_error;
            }
            D = std::max(D, std::pow(moment, 1.0 / nu) / std::sqrt(static_cast<double>(m)));
        }
        c5.pass = std::isfinite(D);
        c5.value = D;
    }
    rep.checks.push_back(c5);

    // R/J construction behind the induced gamma growth certificate
    for (double delta : {0.01, 0.04, 0.09, 0.16, 0.25}) {
        const double sq = std::sqrt(delta);
        const double Nsq = N_fn(sq);
        const auto tail = bracketing_integral(N_fn, lambda, nu, sq);
        if (tail.divergent) break;
        const double R = std::pow(Nsq, 2.0 / nu) * (delta + std::pow(delta, nu / 2.0)) +
                         tail.value;
        const double J = std::pow(Nsq, 2.0 / nu);
        rep.rj_artifacts.push_back({delta, R, J});
    }
    rep.all_pass = true;
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

double changepoint_cusum(const TriangularArrayRow& row, const FunctionClass& cls,
                         const std::vector<MemberRef>& net, const MarginalContext& ctx) {
    if (net.empty()) throw std::invalid_argument("changepoint_cusum: empty net");
    const int n = row.n;
    double best = 0.0;
    for (const auto& f : net) {
        const auto ce = center(row, cls, f, ctx);
        const double total = partial_sum(ce, 1, n) / std::sqrt(static_cast<double>(n));
        double s = 0.0;
        for (int i = 1; i <= n; ++i) {
            s += ce.z[i - 1];
            const double t = static_cast<double>(i) / n;
            best = std::max(best,
                            std::abs(s / std::sqrt(static_cast<double>(n)) - t * total));
        }
    }
    return best;
}

}  // namespace seplab
