#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsl2r/fieldsec.hpp"
#include "qsl2r/modgen.hpp"

using namespace qsl2r;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("rank one operators") {
    const auto s = SpectralPoint::pri(2.0, 1.0, 1, I);
    CHECK(rank_one(s, 1, 1, 8).norm() == 0.0);
    const auto f = fiber(s, 8);
    const Mat P = rank_one(s, 2, 2, 8);
    CHECK((P * P - P).norm() == 0.0);
    CHECK(operator_norm(P, f.weights) == doctest::Approx(1.0).epsilon(1e-14));
    const Mat E = rank_one(s, 2, 4, 8);
    const double ratio = std::sqrt(f.weights[f.index(4)] / f.weights[f.index(2)]);
    CHECK(std::abs(operator_norm(E, f.weights) - ratio) < 1e-14);
    const auto d = SpectralPoint::dis(2.0, 0.5, 1, 2, -1);
    const auto fd = fiber(d, 11);
    const Mat Ed = rank_one(d, -5, -3, 11);
    CHECK(std::abs(operator_norm(Ed, fd.weights) - std::sqrt(fd.weights[fd.index(-3)] / fd.weights[fd.index(-5)])) <
          1e-14);
    CHECK(rank_one(d, -1, -3, 11).norm() == 0.0);
}

TEST_CASE("T sections") {
    CHECK(section_T(SpectralPoint::pri(2.0, 1.0, 1, I), 0, SectionId::TDiag, 6).norm() < 1e-15);
    const auto s1 = SpectralPoint::pri(2.0, 1.0, 1, 1.0);
    CHECK(operator_norm(section_T(s1, 2, SectionId::TDiag, 6), fiber(s1, 6).weights) ==
          doctest::Approx(2.0).epsilon(1e-14));
    const auto d = SpectralPoint::dis(2.0, 1.0, 1, 1, 1);
    CHECK(section_T(d, 6, SectionId::TUp, 6).norm() == 0.0);
    CHECK(section_T(d, 2, SectionId::TDown, 8).norm() == 0.0);
    // up coefficient at qt = 2, lambda = i, n = 0
    const auto p = SpectralPoint::pri(2.0, 1.0, 1, I);
    const Mat U = section_T(p, 0, SectionId::TUp, 6);
    const auto f = fiber(p, 6);
    CHECK(std::abs(U(f.index(2), f.index(0)) - 2.5 * I) < 1e-15);
    // t = 0 uses the groupoid scalars
    const auto g = SpectralPoint::pri(2.0, 0.0, 1, I);
    const Mat G = section_T(g, 0, SectionId::TUp, 6);
    CHECK(std::abs(G(f.index(2), f.index(0)) - 2.0 * I) < 1e-15);
    CHECK_THROWS_AS(section_matrix(SectionId::groupoid(0), p, 6), DomainError);
}

TEST_CASE("continuity certification") {
    const auto s = SpectralPoint::pri(2.0, 1.0, 1, I);
    auto r = certify_continuity(SectionId::up(0), {s, s, s}, {0.0, 0.5, 1.0}, 1e-15, 10);
    CHECK(r.max_jump == 0.0);
    CHECK(r.pass);
    CHECK_THROWS_AS(certify_continuity(SectionId::up(0), {s, SpectralPoint::pri(2.0, 1.0, -1, I)}, {0.0, 1.0},
                                       1.0, 10),
                    DomainError);
    const std::string csv = continuity_csv(r);
    CHECK(csv.rfind("path_param,norm,jump,pass\n", 0) == 0);
}

TEST_CASE("reference paths refine with slope near one") {
    for (const auto& r : reference_paths(12)) {
        INFO(r.name << " slope " << r.slope);
        CHECK(r.pass);
        CHECK(r.slope >= 0.9);
        CHECK(r.slope <= 1.1);
        CHECK(r.finest.pass);
    }
}

TEST_CASE("vanishing at infinity") {
    const auto d15 = SpectralPoint::dis(2.0, 1.0, 1, 5, 1);
    CHECK(section_T(d15, 0, SectionId::TDiag, 12).norm() == 0.0);
    CHECK(section_T(SpectralPoint::dis(2.0, 1.0, 1, 1, 1), 2, SectionId::TUp, 12).norm() > 0.0);
    CHECK(section_T(SpectralPoint::dis(2.0, 1.0, 1, 4, 1), 3, SectionId::TUp, 12).norm() == 0.0);
    for (double t : {1.0, 0.0, -0.4}) {
        for (const auto& r : vanishing_suite(2.0, t, 10)) {
            INFO(r.section);
            CHECK(r.pass);
        }
    }
    auto r = check_vanishing(SectionId::diag(3), 0.5, 1.0, 6);
    CHECK(r.checked + r.supported == 24);
    CHECK(r.supported == 2);
}

TEST_CASE("J-equivariance") {
    for (double q : {2.0, 0.5, 1.0}) {
        for (const auto& r : J_suite(q, 8, 1e-12)) {
            INFO(r.section << " q=" << q);
            CHECK(r.pass);
        }
    }
    const auto bad = check_J_equivariance(SectionId::diag(3), 2.0, 8, 1e-12, 1e-6);
    CHECK_FALSE(bad.pass);
    // groupoid generator outside every discrete window at n = 0 on the even side
    const auto z = check_J_equivariance(SectionId::groupoid(0), 2.0, 8, 1e-12);
    CHECK(z.pass);
}

TEST_CASE("block diagonality at the reducible odd points") {
    auto r = check_block_diagonal({{2.0, 1.0}, {0.5, 1.0}, {2.0, -0.7}, {3.0, 0.3}}, 12, 1e-12);
    CHECK(r.pass);
    CHECK(r.points == 8);
}

TEST_CASE("fiber sup norms vary continuously in t") {
    const auto id = SectionId::up(1);
    double prev = fiber_sup_norm(id, 2.0, 0.0, 41, 4, 10);
    for (double t : {1e-3, 2e-3, 4e-3}) {
        const double v = fiber_sup_norm(id, 2.0, t, 41, 4, 10);
        CHECK(std::abs(v - prev) < 0.05);
        prev = v;
    }
}
