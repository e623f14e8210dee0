#include "seplab/bracketing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seplab {

int BracketingCover::pair_index(double x) const {
    if (x < 0.0 || x > 1.0) throw std::out_of_range("BracketingCover: member param outside [0,1]");
    // x in (x_k, x_{k+1}] -> k; x = 0 pairs with the first bracket.
    const auto it = std::lower_bound(grid.begin(), grid.end(), x);
    int k = static_cast<int>(it - grid.begin()) - 1;
    return std::clamp(k, 0, size() - 1);
}

double BracketingCover::eval_approx(int k, double x) const {
    return x <= grid[k] ? 1.0 : 0.0;
}

double BracketingCover::eval_bound(int k, double x) const {
    return (x > grid[k] && x <= grid[k + 1]) ? 1.0 : 0.0;
}

double BracketingCover::rho2_bound(int k) const {
    return std::sqrt(grid[k + 1] - grid[k]);
}

BracketingCover build_brackets_halfline(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("build_brackets_halfline: eps must be positive");
    const double e = std::min(eps, 1.0);
    const int N = static_cast<int>(std::ceil(1.0 / (e * e) - 1e-12));
    BracketingCover cov;
    cov.epsilon = eps;
    cov.grid.resize(N + 1);
    for (int k = 0; k <= N; ++k) cov.grid[k] = static_cast<double>(k) / N;

    for (int k = 0; k < N; ++k)
        if (cov.rho2_bound(k) > eps + 1e-12)
            throw std::logic_error("build_brackets_halfline: bound norm exceeds eps");
    // Domination check on a dense grid: member 1_{[0,x]} vs its bracket.
    const int G = 512;
    for (int xi = 0; xi <= G; ++xi) {
        const double x = static_cast<double>(xi) / G;
        const int k = cov.pair_index(x);
        for (int gi = 0; gi <= G; ++gi) {
            const double t = static_cast<double>(gi) / G;
            const double f = t <= x ? 1.0 : 0.0;
            if (std::abs(f - cov.eval_approx(k, t)) > cov.eval_bound(k, t) + 1e-12)
                throw std::logic_error("build_brackets_halfline: domination check failed");
        }
    }
    return cov;
}

int bracketing_number(const FunctionClass& cls, double eps) {
    const double v = bracketing_growth(cls)(eps);
    if (v > 1e9) throw std::overflow_error("bracketing_number: count exceeds 1e9");
    return static_cast<int>(std::ceil(v - 1e-12));
}

std::function<double(double)> bracketing_growth(const FunctionClass& cls) {
    switch (cls.kind) {
        case FunctionClass::Kind::HalflineIndicators:
            return [](double eps) {
                if (!(eps > 0.0))
                    throw std::invalid_argument("bracket count: eps must be positive");
                return std::max(1.0, 1.0 / (eps * eps));
            };
        case FunctionClass::Kind::LipschitzBall:
            // consecutive parameters theta spaced d apart bracket with
            // rho_2 distance d/sqrt(3) on the uniform marginal
            return [](double eps) {
                if (!(eps > 0.0))
                    throw std::invalid_argument("bracket count: eps must be positive");
                return std::max(1.0, 1.0 / (std::sqrt(3.0) * eps));
            };
        case FunctionClass::Kind::FiniteExplicit: {
            // each member brackets itself with zero bound
            const double k =
                static_cast<double>(cls.members.size()) + (cls.include_zero ? 1 : 0);
            return [k](double) { return k; };
        }
    }
    throw std::invalid_argument("bracket count: unsupported class kind");
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth, double& err) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, err) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, err);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, double& err) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40, err);
}

// Local power-law exponent of f near eps: f ~ c eps^q.
double local_exponent(const std::function<double(double)>& f, double eps) {
    const double f1 = f(eps), f2 = f(eps / 2.0);
    if (f1 <= 0.0 || f2 <= 0.0) return 0.0;
    return std::log(f1 / f2) / std::log(2.0);
}

// integral_0^eta of f, for f behaving like a power near 0: geometric pieces
// eta 2^{-k} down to 2^{-40}, then an analytic power tail. Divergence verdict
// when the fitted exponent at the bottom is <= -1.
IntegralResult singular_integral(const std::function<double(double)>& f, double eta) {
    IntegralResult out;
    const double eps_min = std::min(eta, std::pow(2.0, -40));
    const double q = local_exponent(f, std::min(eta / 2.0, std::pow(2.0, -36)));
    if (q <= -1.0 + 1e-6) {
        out.divergent = true;
        return out;
    }
    double hi = eta;
    while (hi > eps_min * (1.0 + 1e-12)) {
        const double lo = std::max(eps_min, hi / 2.0);
        out.value += integrate(f, lo, hi, 1e-12, out.error_estimate);
        hi = lo;
    }
    const double lead = f(eps_min);
    const double tail = lead * eps_min / (q + 1.0);
    out.value += tail;
    out.error_estimate += std::abs(tail) * 1e-3;
    return out;
}

}  // namespace

IntegralResult bracketing_integral(const std::function<double(double)>& N_fn,
                                   double lambda, double nu, double eta) {
    if (!(lambda > 0.0) || !(nu > 0.0))
        throw std::invalid_argument("bracketing_integral: lambda, nu must be positive");
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::invalid_argument("bracketing_integral: eta must lie in (0,1]");
    const double e = lambda / (2.0 + lambda);
    auto f = [&](double x) { return std::pow(x, -e) * std::pow(N_fn(x), 1.0 / nu); };
    return singular_integral(f, eta);
}

IntegralResult entropy_integral(const std::function<double(double)>& cover_fn,
                                double p, double Delta_s) {
    if (!(p > 1.0)) throw std::invalid_argument("entropy_integral: p must exceed 1");
    if (!(Delta_s > 0.0))
        throw std::invalid_argument("entropy_integral: upper limit must be positive");
    auto f = [&](double x) { return std::pow(cover_fn(x), 1.0 / p); };
    return singular_integral(f, Delta_s);
}

bool halfline_integral_feasible(double lambda, double nu) {
    return lambda / (2.0 + lambda) + 2.0 / nu < 1.0;
}

int covering_number_tau_s(int k, const std::vector<std::vector<double>>& fdist,
                          double eps) {
    if (k < 1 || fdist.empty())
        throw std::invalid_argument("covering_number_tau_s: empty grid");
    if (!(eps > 0.0)) throw std::invalid_argument("covering_number_tau_s: eps must be positive");
    const int nf = static_cast<int>(fdist.size());
    struct Pt {
        double u, v;
        int f;
    };
    std::vector<Pt> pts;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j <= k; ++j)
            for (int f = 0; f < nf; ++f)
                pts.push_back({static_cast<double>(i) / k, static_cast<double>(j) / k, f});

    auto tau_s = [&](const Pt& a, const Pt& b) {
        const double inter = std::max(0.0, std::min(a.v, b.v) - std::max(a.u, b.u));
        const double sym = (a.v - a.u) + (b.v - b.u) - 2.0 * inter;
        return std::sqrt(sym) + fdist[a.f][b.f];
    };
    std::vector<int> centers;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        bool covered = false;
        for (int c : centers)
            if (tau_s(pts[i], pts[c]) <= eps) {
                covered = true;
                break;
            }
        if (!covered) centers.push_back(i);
    }
    return static_cast<int>(centers.size());
}

}  // namespace seplab
