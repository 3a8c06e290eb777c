#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qsl2r/afield.hpp"
#include "qsl2r/mackey.hpp"
#include "qsl2r/modgen.hpp"

using namespace qsl2r;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("v isometry") {
    const auto s1 = SpectralPoint::pri(2.0, 1.0, 1, I);
    CHECK((v_isometry(s1, 2.0, 10) - RMat::Identity(11, 11)).norm() == 0.0);
    const auto s = SpectralPoint::pri(2.0, 0.3, -1, I);
    const RMat v = v_isometry(s, 2.0, 9);
    const auto win = parity_window(-1, 9);
    const double qt = std::pow(2.0, 0.3);
    for (size_t i = 0; i < win.size(); ++i) {
        const int n = win[i];
        const double expect =
            std::sqrt((2.0 / (std::pow(qt, n) + std::pow(qt, -n))) / (2.0 / (std::pow(2.0, n) + std::pow(2.0, -n))));
        CHECK(std::abs(v(i, i) - expect) < 1e-14 * expect);
    }
    for (const auto& p : {s, SpectralPoint::dis(2.0, -0.4, 1, 3, -1), SpectralPoint::dis(0.5, 0.0, -1, 2, 1)}) {
        const RMat w = v_isometry(p, p.location.q, 12);
        const auto f = fiber(p, 12);
        RMat Ds = RMat::Zero(f.weights.size(), f.weights.size());
        RMat Dt = Ds;
        for (size_t i = 0; i < f.weights.size(); ++i) {
            Ds(i, i) = f.weights[i];
            Dt(i, i) = f.weights[i] / (w(i, i) * w(i, i));
        }
        CHECK(((w.transpose() * Dt * w - Ds).cwiseAbs().maxCoeff()) < 1e-14);
    }
}

TEST_CASE("alpha_t images") {
    const double q = 2.0;
    const auto s1 = SpectralPoint::pri(q, 1.0, 1, std::exp(0.4 * I));
    for (auto f : {GroupoidGen::One, GroupoidGen::T, GroupoidGen::TPlus, GroupoidGen::TMinus}) {
        const GroupoidGen g{f, 2};
        const Mat direct = f == GroupoidGen::One     ? rank_one(s1, 2, 2, 10)
                           : f == GroupoidGen::T     ? section_T(s1, 2, SectionId::TDiag, 10)
                           : f == GroupoidGen::TPlus ? section_T(s1, 2, SectionId::TUp, 10)
                                                     : section_T(s1, 2, SectionId::TDown, 10);
        CHECK((alpha_t_image(g, s1, 1.0, 10) - direct).norm() == 0.0);
    }
    // t = 0: (L - 1/L) times E_n^{n+2} rescaled by the weight ratios
    const cplx L = std::exp(0.4 * I);
    const Mat A = alpha_t_image({GroupoidGen::TPlus, 2}, q, 0.0, L, 1, 10);
    const auto f = fiber(s1, 10);
    const double r2 = 1.0 / std::sqrt(f.weights[f.index(2)]), r4 = 1.0 / std::sqrt(f.weights[f.index(4)]);
    CHECK(std::abs(A(f.index(4), f.index(2)) - (L - 1.0 / L) * r4 / r2) < 1e-14);
    CHECK(std::abs(A.cwiseAbs().sum() - std::abs(A(f.index(4), f.index(2)))) < 1e-15);
    CHECK_THROWS_AS(alpha_t_image({GroupoidGen::T, 0}, 1.0, 0.0, I, 1, 10), DomainError);
}

TEST_CASE("alpha_t tends to alpha_0 linearly") {
    const auto s1 = SpectralPoint::dis(2.0, 1.0, -1, 3, 1);
    std::vector<double> ts{1e-1, 1e-2, 1e-3, 1e-4}, errs;
    for (const GroupoidGen g : {GroupoidGen{GroupoidGen::TPlus, 4}, GroupoidGen{GroupoidGen::TMinus, 6}}) {
        errs.clear();
        const Mat a0 = alpha_t_image(g, s1, 0.0, 12);
        for (double t : ts) errs.push_back((alpha_t_image(g, s1, t, 12) - a0).cwiseAbs().maxCoeff());
        CHECK(loglog_slope(ts, errs) == doctest::Approx(1.0).epsilon(0.1));
    }
}

TEST_CASE("alpha_t is multiplicative on the generators") {
    std::vector<SpectralPoint> pts{SpectralPoint::pri(2.0, 1.0, 1, std::exp(0.3 * I)),
                                   SpectralPoint::pri(2.0, 1.0, -1, -1.0), SpectralPoint::dis(2.0, 1.0, 1, 2, -1),
                                   SpectralPoint::dis(0.5, 1.0, -1, 1, 1)};
    for (double t : {1.0, 0.5, 0.0, -0.3}) CHECK(morphism_residual(pts, t, 14) < 1e-10);
}

TEST_CASE("mu on the displayed labels") {
    CHECK(mu(SpectrumPoint::principal_q(1, I)) == SpectrumPoint::groupoid_cont(I, 1));
    CHECK(mu(SpectrumPoint::principal_q(-1, I)) == SpectrumPoint::groupoid_cont(I, -1));
    CHECK(mu(SpectrumPoint::discrete_q(-1, 2, 1)) == SpectrumPoint::groupoid_char(-1, 3));
    CHECK(mu(SpectrumPoint::principal_q(1, -1.0)) == SpectrumPoint::groupoid_char(-1, 0));
    CHECK(mu(SpectrumPoint::discrete_q(1, 0, -1)) == SpectrumPoint::groupoid_char(1, -1));
    SpectrumPoint bad = SpectrumPoint::principal_q(1, 1.0);
    bad.epsilon = -1;
    CHECK_THROWS_AS(mu(bad), DomainError);
    CHECK(SpectrumPoint::discrete_q(1, 2, 1).min_ktypes() == mu(SpectrumPoint::discrete_q(1, 2, 1)).min_ktypes());
}

TEST_CASE("pullback decompositions") {
    auto p = pullback_decomposition(SpectrumPoint::principal_q(1, I), 5);
    REQUIRE(p.size() == 1);
    CHECK(p[0] == SpectrumPoint::groupoid_cont(I, 1));
    auto d = pullback_decomposition(SpectrumPoint::discrete_q(1, 0, 1), 5);
    std::vector<SpectrumPoint> expect;
    for (int m : {1, 3, 5}) expect.push_back(SpectrumPoint::groupoid_char(1, m));
    CHECK(d == expect);
    auto e = pullback_decomposition(SpectrumPoint::principal_q(1, 1.0), 3);
    CHECK(e.size() == 5);
    for (const auto& x : enumerate_spectrum(Algebra::QReduced, 2.0, 1.0, 9, 4)) {
        const auto pb = pullback_decomposition(x, 4);
        CHECK(std::find(pb.begin(), pb.end(), mu(x)) != pb.end());
    }
}

TEST_CASE("induction reproduces mu") {
    const auto a = mu_table(2.0, 11, 6);
    const auto b = mu_by_induction(2.0, 11, 6);
    REQUIRE(a.rows.size() == b.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].second == b.rows[i].second);
    const std::string js = a.to_json();
    CHECK(js.find("[\"DiscreteQ(1,2,+)\",\"GroupoidChar(1,3)\"]") != std::string::npos);
}

TEST_CASE("verify_mu") {
    for (double q : {2.0, 0.5}) {
        const auto r = verify_mu(q, 6, 37);
        for (const auto& c : r.checks) {
            INFO(c.id << ": " << c.detail);
            CHECK(c.pass);
        }
        CHECK(r.pass());
        CHECK(r.checks.size() == 7);
    }
    CHECK(verify_mu(2.0, 6, 37).to_csv().rfind("check,pass,detail\n", 0) == 0);
}
