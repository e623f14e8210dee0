#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "seplab/rng.hpp"
#include "seplab/verify.hpp"

using namespace seplab;

namespace {

WProcessSpec rademacher_spec(int n, std::vector<std::vector<double>> w) {
    WProcessSpec s;
    s.n = n;
    s.weights = std::move(w);
    return s;
}

}  // namespace

TEST_CASE("family sup-moment estimation") {
    auto zero = rademacher_spec(8, {std::vector<double>(8, 0.0)});
    auto e0 = mc_sup_moment(zero, 1, 8, 2.0, 1000, 1, false);
    CHECK(e0.mean == 0.0);
    CHECK(e0.std_error == 0.0);

    // E|S(1,m)|^2 = m for unit weights on signs
    auto unit = rademacher_spec(16, {std::vector<double>(16, 1.0)});
    auto es = mc_sup_moment(unit, 1, 16, 2.0, 50000, 2, false);
    CHECK(std::abs(es.mean - 16.0) < 3.0 * es.std_error);

    auto em = mc_sup_moment(unit, 1, 16, 2.0, 50000, 2, true);
    CHECK(em.mean >= es.mean);  // running max dominates pathwise

    CHECK_THROWS_AS(mc_sup_moment(unit, 1, 16, 2.0, 10, 2, false), std::invalid_argument);
    CHECK_THROWS_AS(mc_sup_moment(unit, 0, 16, 2.0, 1000, 2, false), std::invalid_argument);
    WProcessSpec empty;
    empty.n = 4;
    CHECK_THROWS_AS(mc_sup_moment(empty, 1, 4, 2.0, 1000, 2, false), std::invalid_argument);
}

TEST_CASE("exact enumeration for two-valued innovations") {
    // n = 1: running max equals |S|
    auto one = rademacher_spec(1, {{2.0}});
    auto r1 = exact_small_oracle(one, 4.0, 2.0);
    CHECK(r1.pairs.size() == 1);
    CHECK(r1.pairs[0].m_moment.mean == r1.pairs[0].s_moment.mean);
    CHECK(r1.pass);

    // n = 2 singleton: S in {-2, 0, 0, 2}, E|S|^4 = 8
    auto two = rademacher_spec(2, {{1.0, 1.0}});
    auto r2 = exact_small_oracle(two, 4.0, 2.0);
    bool found = false;
    for (const auto& pc : r2.pairs)
        if (pc.i == 1 && pc.j == 2) {
            CHECK(pc.s_moment.mean == doctest::Approx(8.0).epsilon(1e-12));
            found = true;
        }
    CHECK(found);
    CHECK(r2.pass);

    // enlarging the family can only grow both sides
    auto small = exact_small_oracle(rademacher_spec(6, {{1, -1, 2, 0, 1, 1}}), 4.0, 2.0);
    auto big = exact_small_oracle(
        rademacher_spec(6, {{1, -1, 2, 0, 1, 1}, {0.5, 0.5, -1, 1, 0, 2}}), 4.0, 2.0);
    for (std::size_t p = 0; p < small.pairs.size(); ++p) {
        CHECK(big.pairs[p].s_moment.mean >= small.pairs[p].s_moment.mean - 1e-12);
        CHECK(big.pairs[p].m_moment.mean >= small.pairs[p].m_moment.mean - 1e-12);
    }

    // asymmetric two-valued innovations
    WProcessSpec tv = rademacher_spec(4, {{1, 1, 1, 1}});
    tv.innovation = WProcessSpec::Innovation::TwoValued;
    tv.two_lo = -0.5;
    tv.two_hi = 1.5;
    CHECK(exact_small_oracle(tv, 4.0, 2.0).pass);

    CHECK_THROWS_AS(exact_small_oracle(rademacher_spec(13, {std::vector<double>(13, 1.0)}),
                                       4.0, 2.0),
                    std::invalid_argument);
}

TEST_CASE("fitted envelope protocol passes on sign processes") {
    std::vector<std::vector<double>> fam;
    for (int p = 0; p < 4; ++p) {
        std::vector<double> w(16);
        for (int k = 0; k < 16; ++k) w[k] = ((k >> p) & 1) ? -1.0 : 1.0;
        fam.push_back(w);
    }
    auto spec = rademacher_spec(16, fam);
    auto rep = verify_maximal_inequality(spec, 4.0, 2.0, 20000, 7);
    CHECK(rep.pass);
    CHECK_FALSE(rep.inconclusive);
    CHECK(rep.A == doctest::Approx(constant_A(2.0, 4.0, 1.0)));
    CHECK(rep.C_hat > 0.0);

    // all-zero weights: both sides identically zero
    auto z = verify_maximal_inequality(rademacher_spec(8, {std::vector<double>(8, 0.0)}),
                                       4.0, 2.0, 1000, 3);
    CHECK(z.pass);
    CHECK(z.C_hat == 0.0);
}

TEST_CASE("Monte Carlo agrees with exact enumeration") {
    auto spec = rademacher_spec(10, {{1, -1, 1, 1, -1, 1, 1, -1, 1, 1},
                                     std::vector<double>(10, 0.5)});
    auto ex = exact_small_oracle(spec, 4.0, 2.0);
    auto mc = verify_maximal_inequality(spec, 4.0, 2.0, 30000, 11);
    for (const auto& pc : mc.pairs)
        for (const auto& pe : ex.pairs)
            if (pc.i == pe.i && pc.j == pe.j) {
                CHECK(std::abs(pc.s_moment.mean - pe.s_moment.mean) <=
                      3.0 * pc.s_moment.std_error + 1e-9);
                CHECK(std::abs(pc.m_moment.mean - pe.m_moment.mean) <=
                      3.0 * pc.m_moment.std_error + 1e-9);
            }
}

TEST_CASE("moment-constant fit is flat for independent indicator sums") {
    // iid: ||S(1,m)(f)||_2 / sqrt(m) equals the indicator sd exactly, so the
    // fitted constant is the same at every m
    ModelDescriptor iid;
    FunctionClass cls;
    std::vector<MemberRef> net{MemberRef::of_param(0.25)};
    auto rep = fit_moment_constant(iid, cls, net, 2.0 / 3.0, 2, {16, 64, 256}, 3000, 13);
    CHECK(rep.stable);
    // C_hat = ||S||_2 / (sqrt(m) rho_2) = indicator sd / rho_2 exactly
    const double want = std::sqrt(0.25 * 0.75) / 0.5;
    for (double c : rep.C_hat) CHECK(std::abs(c - want) < 0.1);

    CHECK_THROWS_AS(fit_moment_constant(iid, cls, net, 2.0 / 3.0, 3, {16}, 3000, 13),
                    std::invalid_argument);

    // geometric rate 1 makes the mixing series uncertifiable: refused
    ModelDescriptor ar;
    ar.kind = ModelDescriptor::Kind::TvAr1;
    ar.coef_fn = [](double) { return 1.0; };
    CHECK_THROWS(fit_moment_constant(ar, cls, net, 2.0 / 3.0, 2, {16}, 3000, 13));
}

TEST_CASE("zero member never drives the moment fit") {
    ModelDescriptor iid;
    FunctionClass cls;
    std::vector<MemberRef> with_zero{MemberRef::of_param(0.5), MemberRef::zero()};
    std::vector<MemberRef> without{MemberRef::of_param(0.5)};
    auto a = fit_moment_constant(iid, cls, with_zero, 2.0 / 3.0, 2, {32}, 2000, 17);
    auto b = fit_moment_constant(iid, cls, without, 2.0 / 3.0, 2, {32}, 2000, 17);
    CHECK(a.C_hat[0] == doctest::Approx(b.C_hat[0]));
}

TEST_CASE("covariance bound for product functionals") {
    FunctionClass cls;
    const auto f = MemberRef::of_param(0.5);

    // iid: alpha = 0 makes the right side zero and the left side noise
    ModelDescriptor iid;
    auto ri = check_covariance_inequality(iid, cls, f, 20, {1, 2}, {10, 11}, 2.0, 1.0,
                                          20000, 19);
    CHECK(ri.rhs == 0.0);
    CHECK(ri.lhs.mean <= 3.0 * ri.lhs.std_error);

    // m-dependent beyond the window: same degenerate pass
    ModelDescriptor md;
    md.kind = ModelDescriptor::Kind::MDependent;
    md.m = 2;
    auto rm = check_covariance_inequality(md, cls, f, 20, {1, 2, 3}, {8, 9}, 2.0, 1.0,
                                          20000, 23);
    CHECK(rm.gap == 5);
    CHECK(rm.rhs == 0.0);
    CHECK(rm.pass);

    // tv_ar1: measured dependence decays with the gap and respects the bound
    ModelDescriptor ar;
    ar.kind = ModelDescriptor::Kind::TvAr1;
    ar.coef_fn = [](double) { return 0.5; };
    auto g1 = check_covariance_inequality(ar, cls, f, 30, {10}, {11}, 2.0, 1.0, 40000, 29);
    auto g5 = check_covariance_inequality(ar, cls, f, 30, {10}, {15}, 2.0, 1.0, 40000, 29);
    CHECK(g1.pass);
    CHECK(g5.pass);
    CHECK(g1.lhs.mean > g5.lhs.mean);

    CHECK_THROWS_AS(check_covariance_inequality(iid, cls, f, 20, {5}, {5}, 2.0, 1.0,
                                                20000, 1),
                    std::invalid_argument);
}

TEST_CASE("chaining bound right side") {
    FunctionClass cls;
    auto N = bracketing_growth(cls);
    const int nu = 4;
    const double lam = 2.0 / 3.0;

    CHECK_THROWS_AS(rhs_chaining_bound(64, 0.1, 1.0, N, 0.3, 1.0, nu, lam),
                    std::invalid_argument);
    CHECK_THROWS_AS(rhs_chaining_bound(64, 0.1, 1.0, N, 0.1, 1.0, nu, 2.0),
                    std::invalid_argument);  // divergent integral

    // monotone nonincreasing as delta shrinks
    double prev = 1e300;
    for (double d : {0.4, 0.2, 0.1, 0.05, 0.01}) {
        const double v = rhs_chaining_bound(64, d, 1.0, N, 0.1, 1.0, nu, lam);
        CHECK(v <= prev);
        prev = v;
    }

    // flat cover: hand evaluation of the formula
    auto one = [](double) { return 1.0; };
    const double integral = (2.0 + lam) / 2.0;  // eta = 1 power-rule value
    const double m = 16.0, d = 0.1, kap = 0.1;
    const double inner = std::pow(m, -kap) + d + d * d + integral;
    CHECK(rhs_chaining_bound(16, d, 1.0, one, kap, 1.0, nu, lam) ==
          doctest::Approx(std::pow(m * inner * inner, 2.0)).epsilon(1e-5));
}

TEST_CASE("chaining scaling stays within a constant band") {
    ModelDescriptor iid;
    FunctionClass cls;
    auto net = equispaced_halfline_net(9);
    auto N = bracketing_growth(cls);
    // deltas straddle the nearest-neighbor distance sqrt(1/8) on the net
    auto rep = chaining_scaling_check(iid, cls, net, 4, 2.0 / 3.0, 0.1, 1.0, N,
                                      {64, 256}, {0.4, 0.45}, 2000, 31);
    CHECK(rep.entries.size() == 4);
    CHECK(rep.stable);
    for (const auto& e : rep.entries) CHECK(e.C_hat <= 1.0);  // bound dominated by far
}
