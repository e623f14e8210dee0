#include "seplab/growth.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace seplab {

double GrowthFunction::at(int m) const {
    if (m < 1 || m > N) throw std::out_of_range("GrowthFunction::at: m outside [1,N]");
    return values[m - 1];
}

GrowthFunction linear_growth(double C, int N, double alpha) {
    GrowthFunction g;
    g.N = N;
    g.alpha = alpha;
    g.analytic_Q = 1.0;
    g.values.resize(N);
    for (int m = 1; m <= N; ++m) g.values[m - 1] = C * m;
    return g;
}

std::string ConditionSCertificate::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"q_min\":" << q_min << ",\"alpha\":" << alpha << ",\"threshold\":" << threshold
       << ",\"admissible\":" << (admissible ? "true" : "false") << ",\"N\":" << N
       << ",\"violations\":[";
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << ",";
        os << "\"" << violations[i] << "\"";
    }
    os << "]}";
    return os.str();
}

ConditionSCertificate check_condition_S(const GrowthFunction& g) {
    if (g.N < 2) throw std::invalid_argument("check_condition_S: domain must have N >= 2");
    if (static_cast<int>(g.values.size()) != g.N)
        throw std::invalid_argument("check_condition_S: values/N mismatch");
    for (double v : g.values)
        if (std::isnan(v)) throw std::invalid_argument("check_condition_S: NaN entry");

    ConditionSCertificate cert;
    cert.alpha = g.alpha;
    cert.N = g.N;
    cert.threshold = std::pow(2.0, (g.alpha - 1.0) / g.alpha);

    bool structural_ok = true;
    for (int m = 1; m <= g.N; ++m) {
        if (g.at(m) < 0.0) {
            cert.violations.push_back("negative value at m=" + std::to_string(m));
            structural_ok = false;
        }
        if (m > 1 && g.at(m) < g.at(m - 1)) {
            cert.violations.push_back("not nondecreasing at m=" + std::to_string(m));
            structural_ok = false;
        }
    }

    double ratio_max = 1.0;
    for (int j = 2; j <= g.N; ++j)
        for (int i = 1; i < j; ++i) {
            const double num = g.at(i) + g.at(j - i);
            const double den = g.at(j);
            if (den == 0.0) {
                if (num > 0.0) {
                    cert.violations.push_back("g(" + std::to_string(j) +
                                              ")=0 with positive g(" + std::to_string(i) +
                                              ")+g(" + std::to_string(j - i) + ")");
                    structural_ok = false;
                }
                continue;
            }
            ratio_max = std::max(ratio_max, num / den);
        }
    cert.q_min = ratio_max;
    cert.admissible = structural_ok && cert.q_min < cert.threshold;
    return cert;
}

double constant_A(double alpha, double nu, double Q) {
    if (!(alpha > 1.0)) throw std::domain_error("constant_A: alpha must be > 1");
    if (!(nu >= 1.0)) throw std::domain_error("constant_A: nu must be >= 1");
    const double threshold = std::pow(2.0, (alpha - 1.0) / alpha);
    if (!(Q >= 1.0 && Q < threshold)) {
        std::ostringstream os;
        os.precision(17);
        os << "constant_A: Q must lie in [1, " << threshold << "), got " << Q;
        throw std::domain_error(os.str());
    }
    const double denom = 1.0 - std::pow(Q, alpha / nu) / std::pow(2.0, (alpha - 1.0) / nu);
    return std::pow(denom, -nu);
}

namespace {

void check_kappa(double kappa, double nu) {
    if (!(nu > 2.0)) throw std::invalid_argument("gamma: nu must exceed 2 for a nonempty kappa range");
    const double hi = 0.5 - 1.0 / nu;
    if (!(kappa > 0.0 && kappa < hi)) {
        std::ostringstream os;
        os << "gamma: kappa must lie in (0, " << hi << "), got " << kappa;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

double gamma_value(int m, double delta, double C, double kappa, double nu,
                   const std::function<double(double)>& R,
                   const std::function<double(double)>& J) {
    if (m < 1) throw std::invalid_argument("gamma: m must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("gamma: delta must be positive");
    if (C < 0.0) throw std::invalid_argument("gamma: C must be >= 0");
    check_kappa(kappa, nu);
    const double r = R ? R(delta) : 0.0;
    const double j = J ? J(delta) : 0.0;
    if (r < 0.0 || j < 0.0) throw std::invalid_argument("gamma: R and J must be nonnegative");
    const double b = r + j * std::pow(static_cast<double>(m), -kappa);
    return C * m * b * b;
}

GrowthFunction make_gamma_growth(int N, double delta, double C, double kappa,
                                 double nu, double alpha,
                                 const std::function<double(double)>& R,
                                 const std::function<double(double)>& J) {
    GrowthFunction g;
    g.N = N;
    g.alpha = alpha;
    g.analytic_Q = std::pow(2.0, 2.0 * kappa);
    g.values.resize(N);
    for (int m = 1; m <= N; ++m) g.values[m - 1] = gamma_value(m, delta, C, kappa, nu, R, J);
    return g;
}

ZetaResult zeta(const MixingProfile& profile, double lambda, int nu, double tol) {
    if (!(lambda > 0.0)) throw std::invalid_argument("zeta: lambda must be positive");
    if (nu < 2 || nu % 2 != 0) throw std::invalid_argument("zeta: nu must be an even integer >= 2");
    if (!(tol > 0.0)) throw std::invalid_argument("zeta: tol must be positive");
    const double e = lambda / (2.0 + lambda);

    ZetaResult out;
    if (profile.kind == MixingProfile::Kind::ExactZeroBeyond) {
        for (int s = 1; s <= profile.m; ++s)
            out.value += std::pow(static_cast<double>(s), nu - 2.0) *
                         std::pow(profile.alpha(s), e);
        out.truncation_bound = 0.0;
        return out;
    }
    if (profile.kind == MixingProfile::Kind::Tabulated)
        throw std::invalid_argument(
            "zeta: tabulated profile has no tail law; convergence cannot be certified");

    // geometric: alpha(s) = min(1, c r^s)
    if (profile.r == 0.0) return out;
    if (!(profile.r < 1.0) || !(profile.c >= 0.0))
        throw std::invalid_argument("zeta: geometric profile with r >= 1 diverges");
    const double rho = std::pow(profile.r, e);
    for (int s = 1;; ++s) {
        const double term = std::pow(static_cast<double>(s), nu - 2.0) *
                            std::pow(profile.alpha(s), e);
        out.value += term;
        // terms beyond s are majorized by a geometric series with ratio
        // ((s+1)/s)^{nu-2} * rho once that ratio is below one
        const double ratio = std::pow((s + 1.0) / s, nu - 2.0) * rho;
        if (ratio < 1.0) {
            const double next = std::pow(s + 1.0, nu - 2.0) *
                                std::pow(std::min(1.0, profile.c) *
                                             std::pow(profile.r, s + 1.0),
                                         e);
            const double next_cap = std::pow(s + 1.0, nu - 2.0) *
                                    std::pow(profile.alpha(s + 1), e);
            const double lead = std::min(next, next_cap);
            const double tail = lead / (1.0 - ratio);
            if (tail < tol) {
                out.truncation_bound = tail;
                return out;
            }
        }
        if (s > 100'000'000)
            throw std::runtime_error("zeta: tail bound did not reach tol");
    }
}

GrowthFunction combine_h(const GrowthFunction& g_at_diameter, const GrowthFunction& l) {
    if (g_at_diameter.alpha != l.alpha)
        throw std::invalid_argument("combine_h: alpha mismatch");
    if (g_at_diameter.N != l.N)
        throw std::invalid_argument("combine_h: domain mismatch");
    const auto cg = check_condition_S(g_at_diameter);
    const auto cl = check_condition_S(l);
    if (!cg.admissible || !cl.admissible)
        throw std::invalid_argument("combine_h: both inputs must be admissible");

    GrowthFunction h;
    h.N = g_at_diameter.N;
    h.alpha = g_at_diameter.alpha;
    if (g_at_diameter.analytic_Q && l.analytic_Q)
        h.analytic_Q = std::max(*g_at_diameter.analytic_Q, *l.analytic_Q);
    h.values.resize(h.N);
    for (int m = 1; m <= h.N; ++m)
        h.values[m - 1] = 2.0 * (g_at_diameter.at(m) + l.at(m));

    const auto ch = check_condition_S(h);
    if (ch.q_min > std::max(cg.q_min, cl.q_min) + 1e-9)
        throw std::logic_error("combine_h: combined index exceeded max of inputs");
    return h;
}

}  // namespace seplab
