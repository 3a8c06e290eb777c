#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsl2r/afield.hpp"

using namespace qsl2r;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("AnalyticLambda validation") {
    CHECK_NOTHROW(validate(AnalyticLambda::power(2.0 * I)));
    CHECK_NOTHROW(validate(AnalyticLambda::power_tau(3.0)));
    AnalyticLambda bad;
    bad.f = [](double q, double t) { return cplx(q + t, 0.0); };
    bad.name = "q+t";
    CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("finite-difference derivative agrees with the exact one") {
    for (cplx c : {cplx(0.0, 1.0), cplx(2.0, 0.0), cplx(0.5, -1.5)}) {
        auto lam = AnalyticLambda::power_tau(c);
        for (double t : {-1.0, 0.0, 0.1, 0.7}) CHECK(std::abs(d_lambda(lam, t, false) - d_lambda(lam, t, true)) < 1e-9);
    }
}

TEST_CASE("kappa table rows") {
    auto lam = AnalyticLambda::power_tau(I);
    SUBCASE("q = 1, t = 0.1, n = 2") {
        const Kappa k = kappa(1.0, 0.1, 2, lam, false);
        CHECK(std::abs(k.plus - cplx(0.3, 0.1)) < 1e-9);
        CHECK(k.n == cplx(0.0));
    }
    SUBCASE("q = 1, t = 0") {
        auto l2 = AnalyticLambda::power(0.7 * I);
        const Kappa k = kappa(1.0, 0.0, 4, l2);
        CHECK(k.n == cplx(0.0));
        CHECK(std::abs(k.plus - 0.7 * I) < 1e-15);
        CHECK(std::abs(k.minus - 0.7 * I) < 1e-15);
    }
    SUBCASE("q != 1, t = 0") {
        auto l2 = AnalyticLambda::power(0.7 * I);
        const cplx l = l2(2.0, 0.0);
        const Kappa k = kappa(2.0, 0.0, 1, l2);
        CHECK(std::abs(k.n - (l + 1.0 / l - 2.0) / (2.0 * std::log(2.0))) < 1e-15);
    }
}

TEST_CASE("s-images on the groupoid act on zeta_n by kappa") {
    auto lam = AnalyticLambda::power(0.7 * I);
    const double q = 2.0;
    auto m = target_module(q, 0.0, 1, lam, 20);
    CHECK(m.family == Family::Groupoid);
    for (int n : {-4, 0, 6}) {
        const Kappa k = kappa(q, 0.0, n, lam);
        const Kappa r = kappa_from_images(s_operator_images(q, 0.0, n, m), m, n);
        CHECK(std::abs(r.n - k.n) < 1e-14);
        CHECK(std::abs(r.plus - k.plus) < 1e-14);
        CHECK(std::abs(r.minus - k.minus) < 1e-14);
    }
}

TEST_CASE("s-images at q = 1, t = 0 vanish on s_n") {
    auto lam = AnalyticLambda::power_tau(I);
    auto m = target_module(1.0, 0.0, -1, lam, 12);
    CHECK(m.family == Family::Motion);
    CHECK(s_operator_images(1.0, 0.0, 3, m).s.norm() == 0.0);
    CHECK_THROWS_AS(s_operator_images(2.0, 0.0, 3, m), FamilyError);
}

TEST_CASE("generic kappa equals the s-images to 1e-12") {
    for (double mu : {0.0, 1.0, 2.5}) {
        auto lam = AnalyticLambda::power_tau(mu * I);
        for (double q : {0.5, 2.0})
            for (double t : {-0.7, 0.3, 1.0}) {
                auto m = target_module(q, t, 1, lam, 16);
                for (int j : m.interior(4)) {
                    const int n = m.window[j];
                    const Kappa k = kappa(q, t, n, lam);
                    const Kappa r = kappa_from_images(s_operator_images(q, t, n, m), m, n);
                    CHECK(std::abs(r.n - k.n) < 1e-12 * std::max(1.0, std::abs(k.n)));
                    CHECK(std::abs(r.plus - k.plus) < 1e-12 * std::max(1.0, std::abs(k.plus)));
                    CHECK(std::abs(r.minus - k.minus) < 1e-12 * std::max(1.0, std::abs(k.minus)));
                }
            }
    }
}

TEST_CASE("target modules of the table") {
    auto lam = AnalyticLambda::power_tau(I);
    auto g = target_module(2.0, 0.0, 1, lam, 10);
    CHECK(g.family == Family::Groupoid);
    CHECK(std::abs(g.lambda - 1.0) < 1e-15);
    CHECK(kappa(2.0, 0.0, 0, lam).plus == cplx(0.0));
    auto d = AnalyticLambda::power_tau(3.0);
    auto p = target_module(2.0, 0.5, -1, d, 10);
    CHECK(p.family == Family::PrincipalQ);
    CHECK(std::abs(p.lambda - std::pow(2.0, 1.5)) < 1e-13);
    auto c = target_module(1.0, 0.5, 1, lam, 10);
    CHECK(c.family == Family::ClassicalPrincipal);
    CHECK(std::abs(c.lambda - I) < 1e-15);
}

TEST_CASE("verify_specialization passes on the boundary grid") {
    std::vector<std::pair<double, double>> grid;
    for (double q : {0.5, 1.0, 2.0})
        for (double t : {-0.5, 0.0, 1e-3, 1.0}) grid.push_back({q, t});
    for (int eps : {1, -1}) {
        auto rows = verify_specialization(AnalyticLambda::power_tau(2.5 * I), eps, grid, 16);
        CHECK(rows.size() == grid.size());
        for (const auto& r : rows) {
            INFO(to_csv_row(r));
            CHECK(r.pass);
        }
    }
}

TEST_CASE("A-relations detect a corrupted module") {
    auto lam = AnalyticLambda::power_tau(I);
    auto m = target_module(2.0, 0.5, 1, lam, 16);
    CHECK(a_relation_residual(2.0, 0.5, m) < a_relation_tolerance(2.0, 0.5));
    m.Z *= 1.01;
    CHECK(a_relation_residual(2.0, 0.5, m) > 1e-3);
}

TEST_CASE("convergence slopes") {
    const std::vector<double> steps{1e-1, 1e-2, 1e-3, 1e-4};
    auto lam = AnalyticLambda::power_tau(I);
    auto ct = convergence_in_t(2.0, 1, lam, steps);
    CHECK(ct.pass);
    CHECK(ct.slope == doctest::Approx(1.0).epsilon(0.1));
    auto cq = convergence_in_q(0.5, -1, lam, steps);
    CHECK(cq.pass);
    auto c0 = convergence_in_q(0.0, 1, lam, steps);
    CHECK(c0.exact);
    CHECK(loglog_slope({1.0, 10.0, 100.0}, {2.0, 20.0, 200.0}) == doctest::Approx(1.0));
}

TEST_CASE("discrete A-family windows") {
    for (int n = 0; n <= 3; ++n) {
        auto w = discrete_family_windows(2.0, 0.5, n, 15);
        REQUIRE(w.size() == 2);
        CHECK(w[0] == discrete_window(n, -1, 15));
        CHECK(w[1] == discrete_window(n, 1, 15));
        auto wc = discrete_family_windows(1.0, 0.5, n, 15);
        REQUIRE(wc.size() == 2);
        CHECK(wc[1] == discrete_window(n, 1, 15));
        for (double q : {2.0, 1.0})
            for (const auto& line : discrete_family_windows(q, 0.0, n, 15)) CHECK(line.size() == 1);
    }
}
