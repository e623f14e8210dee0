#include "seplab/process.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace seplab {

CenteredEval center(const TriangularArrayRow& row, const FunctionClass& cls,
                    const MemberRef& f, const MarginalContext& ctx) {
    CenteredEval ce;
    ce.n = row.n;
    ce.z.resize(row.n);
    for (int i = 1; i <= row.n; ++i)
        ce.z[i - 1] = eval_member(cls, f, row.values[i - 1]) - member_mean(cls, f, ctx, i);
    return ce;
}

double partial_sum(const CenteredEval& ce, int i, int j) {
    if (i < 1 || i > ce.n || j < 0 || j > ce.n)
        throw std::out_of_range("partial_sum: indices outside [1,n]");
    if (j < i) return 0.0;
    double s = 0.0;
    for (int k = i; k <= j; ++k) s += ce.z[k - 1];
    return s;
}

double running_max(const CenteredEval& ce, int i, int j) {
    if (i < 1 || i > ce.n || j < 0 || j > ce.n)
        throw std::out_of_range("running_max: indices outside [1,n]");
    if (j < i) return 0.0;
    double s = 0.0, m = 0.0;
    for (int k = i; k <= j; ++k) {
        s += ce.z[k - 1];
        m = std::max(m, std::abs(s));
    }
    return m;
}

double eval_Z(const CenteredEval& ce, double t) {
    if (t < 0.0 || t > 1.0) throw std::out_of_range("eval_Z: t outside [0,1]");
    const int k = static_cast<int>(std::floor(ce.n * t));
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += ce.z[i - 1];
    return s / std::sqrt(static_cast<double>(ce.n));
}

double eval_Zs_interval(const CenteredEval& ce, double u, double v) {
    if (u > v) throw std::invalid_argument("eval_Zs_interval: u > v");
    if (u < 0.0 || v > 1.0) throw std::out_of_range("eval_Zs_interval: interval outside [0,1]");
    const int n = ce.n;
    const double nu = n * u, nv = n * v;
    const int fu = static_cast<int>(std::floor(nu));
    const int fv = static_cast<int>(std::floor(nv));
    double s = 0.0;
    if (fu == fv) {
        // both endpoints in the same cell (fu, fu+1]
        const int i = fu + 1;
        if (i <= n) s += (nv - nu) * ce.z[i - 1];
    } else {
        for (int i = fu + 2; i <= fv; ++i) s += ce.z[i - 1];
        if (fu + 1 <= n) s += (std::min(static_cast<double>(fu + 1), nv) - nu) * ce.z[fu];
        if (fv + 1 <= n) s += (nv - std::max(nu, static_cast<double>(fv))) * ce.z[fv];
    }
    return s / std::sqrt(static_cast<double>(n));
}

double eval_Zs_weights(const CenteredEval& ce, double u, double v) {
    if (u > v) throw std::invalid_argument("eval_Zs_weights: u > v");
    if (u < 0.0 || v > 1.0) throw std::out_of_range("eval_Zs_weights: interval outside [0,1]");
    const int n = ce.n;
    const double nu = n * u, nv = n * v;
    double s = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double w = std::min(static_cast<double>(i), nv) -
                         std::max(static_cast<double>(i - 1), nu);
        if (w > 0.0) s += w * ce.z[i - 1];
    }
    return s / std::sqrt(static_cast<double>(n));
}

// Sliding min/max over centered windows [s-w, s+w] via monotone deques.
void sliding_window_extrema(const std::vector<double>& v, int w,
                            std::vector<double>& mins, std::vector<double>& maxs) {
    const int n = static_cast<int>(v.size());
    mins.resize(n);
    maxs.resize(n);
    std::deque<int> qmin, qmax;
    int right = -1;
    for (int s = 0; s < n; ++s) {
        const int lo = std::max(0, s - w), hi = std::min(n - 1, s + w);
        while (right < hi) {
            ++right;
            while (!qmin.empty() && v[qmin.back()] >= v[right]) qmin.pop_back();
            qmin.push_back(right);
            while (!qmax.empty() && v[qmax.back()] <= v[right]) qmax.pop_back();
            qmax.push_back(right);
        }
        while (!qmin.empty() && qmin.front() < lo) qmin.pop_front();
        while (!qmax.empty() && qmax.front() < lo) qmax.pop_front();
        mins[s] = v[qmin.front()];
        maxs[s] = v[qmax.front()];
    }
}

namespace {

void validate_modulus_input(const ModulusInput& in) {
    if (in.times.empty() || in.values.empty())
        throw std::invalid_argument("modulus: empty grid");
    if (in.values.size() != in.fdist.size())
        throw std::invalid_argument("modulus: values/fdist size mismatch");
    for (const auto& row : in.values)
        if (row.size() != in.times.size())
            throw std::invalid_argument("modulus: ragged value rows");
}

}  // namespace

double modulus(const ModulusInput& in, double delta, bool* empty_flag) {
    validate_modulus_input(in);
    const int nf = static_cast<int>(in.values.size());
    const int nt = static_cast<int>(in.times.size());
    const double dt = nt > 1 ? in.times[1] - in.times[0] : 1.0;
    double best = 0.0;
    bool any_offdiag = false;
    std::vector<double> mins, maxs;
    for (int a = 0; a < nf; ++a) {
        for (int b = a; b < nf; ++b) {
            const double fd = in.fdist[a][b];
            if (fd > delta) continue;
            const double slack = delta - fd;
            const int w = static_cast<int>(std::floor(slack / dt + 1e-12));
            if (a != b || w > 0) any_offdiag = true;
            sliding_window_extrema(in.values[b], w, mins, maxs);
            const auto& va = in.values[a];
            for (int s = 0; s < nt; ++s) {
                best = std::max(best, va[s] - mins[s]);
                best = std::max(best, maxs[s] - va[s]);
            }
        }
    }
    if (empty_flag) *empty_flag = !any_offdiag;
    return best;
}

double modulus_naive(const ModulusInput& in, double delta, bool* empty_flag) {
    validate_modulus_input(in);
    const int nf = static_cast<int>(in.values.size());
    const int nt = static_cast<int>(in.times.size());
    double best = 0.0;
    bool any_offdiag = false;
    for (int a = 0; a < nf; ++a)
        for (int b = 0; b < nf; ++b)
            for (int s = 0; s < nt; ++s)
                for (int t = 0; t < nt; ++t) {
                    const double tau = std::abs(in.times[s] - in.times[t]) + in.fdist[a][b];
                    if (tau <= delta + 1e-12 * delta) {
                        if (a != b || s != t) any_offdiag = true;
                        best = std::max(best, std::abs(in.values[a][s] - in.values[b][t]));
                    }
                }
    if (empty_flag) *empty_flag = !any_offdiag;
    return best;
}

double modulus_general(const std::vector<double>& values,
                       const std::vector<std::vector<double>>& dist, double delta,
                       bool* empty_flag) {
    const int k = static_cast<int>(values.size());
    if (k == 0) throw std::invalid_argument("modulus_general: empty grid");
    double best = 0.0;
    bool any = false;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (dist[a][b] <= delta) {
                any = true;
                best = std::max(best, std::abs(values[a] - values[b]));
            }
    if (empty_flag) *empty_flag = !any;
    return best;
}

}  // namespace seplab
