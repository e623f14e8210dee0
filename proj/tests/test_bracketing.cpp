#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "seplab/bracketing.hpp"
#include "seplab/rng.hpp"

using namespace seplab;

namespace {
const FunctionClass kHalfline;
}

TEST_CASE("halfline indicator covers") {
    auto one = build_brackets_halfline(1.0);
    CHECK(one.size() == 1);

    auto cov = build_brackets_halfline(0.1);
    CHECK(cov.size() == 100);
    for (int k = 0; k < cov.size(); ++k)
        CHECK(cov.rho2_bound(k) == doctest::Approx(0.1).epsilon(1e-12));

    // member 1_{[0,x]} sits inside its assigned bracket
    for (int t = 0; t < 1000; ++t) {
        const double x = rng::uniform01(17, t);
        const int k = cov.pair_index(x);
        for (int g = 0; g <= 1000; ++g) {
            const double u = g / 1000.0;
            const double f = u <= x ? 1.0 : 0.0;
            CHECK(std::abs(f - cov.eval_approx(k, u)) <= cov.eval_bound(k, u) + 1e-12);
        }
    }
    CHECK_THROWS_AS(build_brackets_halfline(0.0), std::invalid_argument);
}

TEST_CASE("bracket counts") {
    CHECK(bracketing_number(kHalfline, 1.0) == 1);
    CHECK(bracketing_number(kHalfline, 2.0) == 1);
    CHECK(bracketing_number(kHalfline, 0.1) == 100);

    // halving the radius at most quadruples the count
    for (double e : {0.5, 0.25, 0.1, 0.05}) {
        const int big = bracketing_number(kHalfline, e / 2.0);
        const int small = bracketing_number(kHalfline, e);
        CHECK(big <= 4 * small);
        CHECK(big >= small);  // nonincreasing in the radius
    }

    FunctionClass fin;
    fin.kind = FunctionClass::Kind::FiniteExplicit;
    fin.members = {[](double x) { return x; }, [](double) { return 0.5; },
                   [](double x) { return 1.0 - x; }};
    for (double e : {0.001, 0.1, 1.0}) CHECK(bracketing_number(fin, e) <= 3);

    CHECK_THROWS_AS(bracketing_number(kHalfline, 1e-9), std::overflow_error);
}

TEST_CASE("singular integrals match closed forms") {
    auto Nsq = [](double e) { return 1.0 / (e * e); };

    auto r1 = bracketing_integral(Nsq, 2.0 / 3.0, 4.0, 1.0);
    CHECK_FALSE(r1.divergent);
    CHECK(r1.value == doctest::Approx(4.0).epsilon(1e-6));

    auto r2 = bracketing_integral(Nsq, 2.0, 4.0, 1.0);
    CHECK(r2.divergent);

    const double lam = 0.8, eta = 0.6;
    auto r3 = bracketing_integral([](double) { return 1.0; }, lam, 4.0, eta);
    const double want = std::pow(eta, 2.0 / (2.0 + lam)) * (2.0 + lam) / 2.0;
    CHECK(r3.value == doctest::Approx(want).epsilon(1e-6));
    CHECK(r3.error_estimate < 1e-4);

    CHECK_THROWS_AS(bracketing_integral(Nsq, 0.5, 4.0, 1.5), std::invalid_argument);
}

TEST_CASE("entropy integrals: power laws and the divergence boundary") {
    auto cover = [](double e) { return std::pow(e, -1.5); };
    auto r = entropy_integral(cover, 2.0, 0.5);
    CHECK(r.value == doctest::Approx(std::pow(0.5, 0.25) / 0.25).epsilon(1e-6));

    auto div = entropy_integral(cover, 1.5, 0.5);  // p equals the power
    CHECK(div.divergent);

    auto flat = entropy_integral([](double) { return 1.0; }, 3.0, 0.37);
    CHECK(flat.value == doctest::Approx(0.37).epsilon(1e-9));

    CHECK_THROWS_AS(entropy_integral(cover, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("feasibility region matches quadrature verdicts") {
    auto growth = bracketing_growth(kHalfline);
    for (double lam : {0.25, 2.0 / 3.0, 1.0, 2.0, 4.0})
        for (double nu : {2.0, 4.0, 6.0, 8.0}) {
            const bool feasible = halfline_integral_feasible(lam, nu);
            const auto r = bracketing_integral(growth, lam, nu, 1.0);
            CHECK(feasible == !r.divergent);
        }
    // the boundary itself diverges
    CHECK(bracketing_integral(growth, 2.0, 4.0, 1.0).divergent);
    CHECK_FALSE(halfline_integral_feasible(2.0, 4.0));
}

TEST_CASE("greedy product covers under the smoothed semimetric") {
    std::vector<std::vector<double>> single = {{0.0}};
    CHECK(covering_number_tau_s(4, single, 100.0) == 1);

    // singleton net: count scales like eps^{-4} (sqrt of the set distance
    // doubles the exponent); fit the log-log slope over radii the interval
    // grid still resolves
    std::vector<double> xs, ys;
    for (double eps : {0.5, std::pow(2.0, -1.5), 0.25}) {
        const int cnt = covering_number_tau_s(256, single, eps);
        xs.push_back(std::log(eps));
        ys.push_back(std::log(static_cast<double>(cnt)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (xs.size() * sxy - sx * sy) / (xs.size() * sxx - sx * sx);
    CHECK(slope < -3.0);
    CHECK(slope > -5.0);

    // product bound: joint cover within cover(sets) * cover(functions)
    std::vector<std::vector<double>> three = {
        {0.0, 0.4, 0.8}, {0.4, 0.0, 0.4}, {0.8, 0.4, 0.0}};
    const int joint = covering_number_tau_s(16, three, 0.5);
    const int sets = covering_number_tau_s(16, single, 0.25);
    // functions alone at radius 0.25: greedy over the 3-point line needs 3
    CHECK(joint <= sets * 3);

    CHECK_THROWS_AS(covering_number_tau_s(0, three, 0.5), std::invalid_argument);
}
