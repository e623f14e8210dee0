#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "seplab/fclasses.hpp"
#include "seplab/rng.hpp"

using namespace seplab;

namespace {
const FunctionClass kHalfline;
const MarginalContext kUniform = iid_uniform_context();
}  // namespace

TEST_CASE("rho_p seminorm values") {
    CHECK(rho_p(kHalfline, MemberRef::of_param(0.25), kUniform, 2.0).value ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rho_p(kHalfline, MemberRef::zero(), kUniform, 2.0).value == 0.0);
    CHECK(rho_p(kHalfline, MemberRef::zero(), kUniform, 7.0).value == 0.0);
    for (double p : {1.0, 2.0, 4.0})
        CHECK(rho_p(kHalfline, MemberRef::of_param(1.0), kUniform, p).value ==
              doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(rho_p(kHalfline, MemberRef::of_param(0.25), kUniform, 2.0).low_confidence);
}

TEST_CASE("analytic means under the shipped marginals") {
    CHECK(member_mean(kHalfline, MemberRef::of_param(0.3), kUniform, 1) ==
          doctest::Approx(0.3).epsilon(1e-12));

    FunctionClass lip;
    lip.kind = FunctionClass::Kind::LipschitzBall;
    CHECK(member_mean(lip, MemberRef::of_param(0.8), kUniform, 1) ==
          doctest::Approx(0.4).epsilon(1e-12));

    // standard normal marginal: indicator mean is the normal CDF
    ModelDescriptor md;
    md.kind = ModelDescriptor::Kind::MDependent;
    md.m = 3;
    const auto ctx = model_context(md, 16);
    CHECK(member_mean(kHalfline, MemberRef::of_param(0.5), ctx, 4) ==
          doctest::Approx(0.5 * std::erfc(-0.5 / std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("member distances and delta nets") {
    SemimetricSpec sm;
    CHECK(member_dist(kHalfline, sm, MemberRef::of_param(0.2), MemberRef::of_param(0.5),
                      kUniform) == doctest::Approx(std::sqrt(0.3)).epsilon(1e-12));

    auto net = delta_net(kHalfline, sm, kUniform, 0.1);
    CHECK(net.size() >= 50);
    CHECK(net.size() <= 201);
    // consecutive parameters within sqrt spacing 0.1 -> |dx| <= 0.01 up to
    // the 1/4096 granularity of the greedy construction grid
    for (std::size_t k = 1; k < net.size(); ++k)
        CHECK(std::abs(net[k].param - net[k - 1].param) <= 0.01 + 1.0 / 4096 + 1e-9);

    auto coarse = delta_net(kHalfline, sm, kUniform, 2.0);
    CHECK(coarse.size() == 1);

    FunctionClass fin;
    fin.kind = FunctionClass::Kind::FiniteExplicit;
    fin.members = {[](double x) { return x; }, [](double x) { return 1.0 - x; }};
    fin.explicit_means = {0.5, 0.5};
    CHECK(delta_net(fin, sm, kUniform, 0.01).size() == 2);
}

TEST_CASE("difference-pair enumeration") {
    SemimetricSpec sm;
    auto net = equispaced_halfline_net(11);
    auto diag = diff_pairs(kHalfline, net, sm, kUniform, 0.0);
    CHECK(diag.size() == 11);  // exactly the diagonal
    for (auto [a, b] : diag) CHECK(a == b);

    auto all = diff_pairs(kHalfline, net, sm, kUniform, 10.0);
    CHECK(all.size() == 121);

    // sqrt|x - x'| <= 0.32  <=>  |x - x'| <= 0.1024: grid neighbors only
    auto some = diff_pairs(kHalfline, net, sm, kUniform, 0.32);
    for (auto [a, b] : some)
        CHECK(std::abs(net[a].param - net[b].param) <= 0.1024 + 1e-12);
    CHECK(some.size() == 11 + 2 * 10);
}

TEST_CASE("seminorm axioms hold on the net") {
    SemimetricSpec sm;
    auto net = equispaced_halfline_net(9);
    auto D = net_distance_matrix(kHalfline, net, sm, kUniform);
    const int k = static_cast<int>(net.size());
    for (int a = 0; a < k; ++a) {
        CHECK(D[a][a] <= 1e-12);
        for (int b = 0; b < k; ++b) {
            CHECK(D[a][b] == D[b][a]);
            for (int c = 0; c < k; ++c) CHECK(D[a][c] <= D[a][b] + D[b][c] + 1e-12);
        }
    }
}

TEST_CASE("envelope dominates every member") {
    auto net = equispaced_halfline_net(33);
    for (int t = 0; t < 10000; ++t) {
        const double x = rng::uniform01(77, t);
        for (const auto& f : net)
            CHECK(std::abs(eval_member(kHalfline, f, x)) <= kHalfline.envelope(x) + 1e-12);
    }
}

TEST_CASE("centered absolute moments of indicators") {
    const double q = 0.3;
    for (double r : {2.0, 3.0, 4.0}) {
        const double want = q * std::pow(1.0 - q, r) + (1.0 - q) * std::pow(q, r);
        CHECK(centered_abs_moment(kHalfline, MemberRef::of_param(q), kUniform, 1, r) ==
              doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("net refinement never shrinks a downstream maximum") {
    SemimetricSpec sm;
    auto coarse = equispaced_halfline_net(5);
    auto fine = equispaced_halfline_net(9);  // superset of the coarse parameters
    auto stat = [&](const std::vector<MemberRef>& net) {
        double s = 0.0;
        for (const auto& f : net) s = std::max(s, rho_p(kHalfline, f, kUniform, 2.0).value);
        return s;
    };
    CHECK(stat(fine) >= stat(coarse));
}
