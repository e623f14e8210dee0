#include "seplab/arrays.hpp"
#include "seplab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace seplab {

double MixingProfile::alpha(int t) const {
    if (t < 0) throw std::invalid_argument("MixingProfile::alpha: t < 0");
    if (t == 0) return 1.0;
    switch (kind) {
        case Kind::ExactZeroBeyond:
            return t > m ? 0.0 : 1.0;
        case Kind::Geometric:
            return std::min(1.0, c * std::pow(r, t));
        case Kind::Tabulated:
            if (t <= static_cast<int>(table.size())) return table[t - 1];
            return 0.0;
    }
    return 0.0;
}

TriangularArrayRow gen_iid(int n, const Marginal& marginal, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_iid: n must be >= 1");
    TriangularArrayRow row;
    row.n = n;
    row.seed = seed;
    row.model.kind = ModelDescriptor::Kind::Iid;
    row.model.marginal = marginal;
    row.values.resize(n);
    for (int i = 1; i <= n; ++i) {
        if (marginal.kind == Marginal::Kind::Uniform01) {
            row.values[i - 1] = rng::uniform01(seed, static_cast<std::uint64_t>(i));
        } else {
            const double u = static_cast<double>(i) / n;
            const double mu = marginal.mean_fn ? marginal.mean_fn(u) : 0.0;
            const double sd = marginal.sd_fn ? marginal.sd_fn(u) : 1.0;
            if (!(sd > 0.0))
                throw std::invalid_argument("gen_iid: sd_fn must be positive, got " +
                                            std::to_string(sd) + " at i=" + std::to_string(i));
            row.values[i - 1] = mu + sd * rng::gauss(seed, static_cast<std::uint64_t>(i));
        }
    }
    return row;
}

TriangularArrayRow gen_m_dependent(int n, int m, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_m_dependent: n must be >= 1");
    if (m < 0) throw std::invalid_argument("gen_m_dependent: m must be >= 0");
    TriangularArrayRow row;
    row.n = n;
    row.seed = seed;
    row.model.kind = ModelDescriptor::Kind::MDependent;
    row.model.m = m;
    row.values.resize(n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(m) + 1.0);
    // X_i = (eps_i + ... + eps_{i+m}) / sqrt(m+1), eps iid N(0,1)
    for (int i = 1; i <= n; ++i) {
        double s = 0.0;
        for (int k = 0; k <= m; ++k)
            s += rng::gauss(seed, static_cast<std::uint64_t>(i + k));
        row.values[i - 1] = s * norm;
    }
    return row;
}

TriangularArrayRow gen_tvar1(int n, std::function<double(double)> coef_fn,
                             double innovation_sd, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_tvar1: n must be >= 1");
    if (!(innovation_sd > 0.0))
        throw std::invalid_argument("gen_tvar1: innovation_sd must be positive");
    TriangularArrayRow row;
    row.n = n;
    row.seed = seed;
    row.model.kind = ModelDescriptor::Kind::TvAr1;
    row.model.coef_fn = coef_fn;
    row.model.innovation_sd = innovation_sd;
    row.values.resize(n);
    double x = 0.0;  // X_{0,n} = 0
    for (int i = 1; i <= n; ++i) {
        const double a = coef_fn(static_cast<double>(i) / n);
        if (!(std::abs(a) < 1.0))
            throw std::invalid_argument("gen_tvar1: |coef| >= 1 at index " + std::to_string(i));
        x = a * x + innovation_sd * rng::gauss(seed, static_cast<std::uint64_t>(i));
        row.values[i - 1] = x;
    }
    return row;
}

TriangularArrayRow generate_row(const ModelDescriptor& model, int n, std::uint64_t seed) {
    switch (model.kind) {
        case ModelDescriptor::Kind::Iid:
            return gen_iid(n, model.marginal, seed);
        case ModelDescriptor::Kind::MDependent:
            return gen_m_dependent(n, model.m, seed);
        case ModelDescriptor::Kind::TvAr1:
            return gen_tvar1(n, model.coef_fn, model.innovation_sd, seed);
    }
    throw std::invalid_argument("generate_row: unknown model kind");
}

MixingProfile profile_of(const ModelDescriptor& model, int n) {
    MixingProfile p;
    switch (model.kind) {
        case ModelDescriptor::Kind::Iid:
            p.kind = MixingProfile::Kind::ExactZeroBeyond;
            p.m = 0;
            break;
        case ModelDescriptor::Kind::MDependent:
            p.kind = MixingProfile::Kind::ExactZeroBeyond;
            p.m = model.m;
            break;
        case ModelDescriptor::Kind::TvAr1: {
            double abar = 0.0;
            for (int i = 1; i <= n; ++i)
                abar = std::max(abar, std::abs(model.coef_fn(static_cast<double>(i) / n)));
            p.kind = MixingProfile::Kind::Geometric;
            p.c = 1.0;
            p.r = abar;
            break;
        }
    }
    return p;
}

std::vector<double> tvar1_marginal_sds(const ModelDescriptor& model, int n) {
    if (model.kind != ModelDescriptor::Kind::TvAr1)
        throw std::invalid_argument("tvar1_marginal_sds: model is not tv_ar1");
    std::vector<double> sds(n);
    const double s2 = model.innovation_sd * model.innovation_sd;
    double var = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double a = model.coef_fn(static_cast<double>(i) / n);
        var = a * a * var + s2;
        sds[i - 1] = std::sqrt(var);
    }
    return sds;
}

namespace {

// Quantile discretization of one coordinate across replicates: rank-based
// equal-probability bins.
std::vector<int> discretize(const std::vector<double>& x, int bins) {
    const int r = static_cast<int>(x.size());
    std::vector<int> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });
    std::vector<int> bin(r);
    for (int k = 0; k < r; ++k)
        bin[order[k]] = std::min(bins - 1, static_cast<int>(static_cast<long long>(k) * bins / r));
    return bin;
}

}  // namespace

double estimate_alpha_lower(const std::vector<TriangularArrayRow>& rows, int t,
                            int bins, int window, bool family_ranges) {
    if (t < 1) throw std::invalid_argument("estimate_alpha_lower: t must be >= 1");
    if (bins < 2) throw std::invalid_argument("estimate_alpha_lower: bins must be >= 2");
    if (window < 1 || window > 3)
        throw std::invalid_argument("estimate_alpha_lower: window must be in [1,3]");
    if (rows.size() < 100)
        throw std::invalid_argument("estimate_alpha_lower: need at least 100 replicate rows, got " +
                                    std::to_string(rows.size()));
    const int reps = static_cast<int>(rows.size());
    const int n = rows.front().n;
    for (const auto& r : rows)
        if (r.n != n) throw std::invalid_argument("estimate_alpha_lower: replicate lengths differ");

    long long atoms = 1;
    for (int j = 0; j < 2 * window; ++j) {
        atoms *= bins;
        if (atoms > 1'000'000)
            throw std::invalid_argument("estimate_alpha_lower: bins^(2*window) too large");
    }

    // Admissible past-end positions k: past = (k-window+1..k), future = (k+t..k+t+window-1).
    std::vector<int> positions;
    for (int k = window; k + t + window - 1 <= n; ++k) positions.push_back(k);
    if (positions.empty())
        throw std::invalid_argument("estimate_alpha_lower: row too short for (t, window)");
    const int max_positions = 16;
    const int stride = std::max(1, static_cast<int>(positions.size()) / max_positions);

    long long side = 1;
    for (int j = 0; j < window; ++j) side *= bins;

    double best = 0.0;
    for (std::size_t pi = 0; pi < positions.size(); pi += stride) {
        const int k = positions[pi];
        // Per-coordinate bins.
        std::vector<std::vector<int>> past_bins(window), fut_bins(window);
        for (int j = 0; j < window; ++j) {
            std::vector<double> xp(reps), xf(reps);
            for (int r = 0; r < reps; ++r) {
                xp[r] = rows[r].values[k - window + j];      // coords k-window+1..k (1-based)
                xf[r] = rows[r].values[k + t - 1 + j];       // coords k+t..k+t+window-1
            }
            past_bins[j] = discretize(xp, bins);
            fut_bins[j] = discretize(xf, bins);
        }
        // Joint atom counts.
        std::vector<double> joint(static_cast<std::size_t>(side * side), 0.0);
        for (int r = 0; r < reps; ++r) {
            long long pa = 0, fa = 0;
            for (int j = 0; j < window; ++j) {
                pa = pa * bins + past_bins[j][r];
                fa = fa * bins + fut_bins[j][r];
            }
            joint[static_cast<std::size_t>(pa * side + fa)] += 1.0;
        }
        for (auto& v : joint) v /= reps;

        std::vector<double> pmarg(side, 0.0), fmarg(side, 0.0);
        for (long long pa = 0; pa < side; ++pa)
            for (long long fa = 0; fa < side; ++fa) {
                pmarg[pa] += joint[pa * side + fa];
                fmarg[fa] += joint[pa * side + fa];
            }

        // Enumerate rectangle events: per coordinate a contiguous bin range
        // (or a single bin for the atom family).
        if (window == 1) {
            // Prefix sums over bins x bins.
            std::vector<double> ps((bins + 1) * (bins + 1), 0.0);
            for (int a = 0; a < bins; ++a)
                for (int b = 0; b < bins; ++b)
                    ps[(a + 1) * (bins + 1) + (b + 1)] = joint[a * bins + b] +
                        ps[a * (bins + 1) + (b + 1)] + ps[(a + 1) * (bins + 1) + b] -
                        ps[a * (bins + 1) + b];
            auto rect = [&](int alo, int ahi, int blo, int bhi) {
                return ps[(ahi + 1) * (bins + 1) + (bhi + 1)] - ps[alo * (bins + 1) + (bhi + 1)] -
                       ps[(ahi + 1) * (bins + 1) + blo] + ps[alo * (bins + 1) + blo];
            };
            for (int alo = 0; alo < bins; ++alo)
                for (int ahi = family_ranges ? alo : alo; ahi < (family_ranges ? bins : alo + 1); ++ahi)
                    for (int blo = 0; blo < bins; ++blo)
                        for (int bhi = family_ranges ? blo : blo; bhi < (family_ranges ? bins : blo + 1); ++bhi) {
                            double pab = rect(alo, ahi, blo, bhi);
                            double pa = rect(alo, ahi, 0, bins - 1);
                            double pb = rect(0, bins - 1, blo, bhi);
                            best = std::max(best, std::abs(pab - pa * pb));
                        }
        } else {
            // Atom family only for multi-coordinate windows (range products
            // are enumerable but the atom family already corroborates decay).
            for (long long pa = 0; pa < side; ++pa)
                for (long long fa = 0; fa < side; ++fa) {
                    const double pab = joint[pa * side + fa];
                    best = std::max(best, std::abs(pab - pmarg[pa] * fmarg[fa]));
                }
        }
    }
    return best;
}

}  // namespace seplab
