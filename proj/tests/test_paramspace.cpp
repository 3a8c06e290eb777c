#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "qsl2r/modgen.hpp"
#include "qsl2r/paramspace.hpp"

using namespace qsl2r;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("classify examples") {
    auto a = classify(SpectralPoint::dis(2.0, 1.0, 1, 1, 1));
    CHECK(std::abs(a.Lambda - 2.0) < 1e-15);
    auto b = classify(SpectralPoint::pri(2.0, 1.0, -1, I));
    CHECK(b.Lambda == I);
    CHECK(b.parity == -1);
    CHECK(b.ktypes.truncate(5) == std::vector<int>{-5, -3, -1, 1, 3, 5});
    auto c = classify(SpectralPoint::dis(1.0, 0.0, 1, 2, -1));
    CHECK(c.Lambda == cplx(0.0));
    CHECK(c.ktypes.truncate(7) == std::vector<int>{-7, -5, -3});
    auto d = classify(SpectralPoint::pri(1.0, 0.5, 1, 2.0 * I));
    CHECK(std::abs(d.Lambda - 4.0 * I) < 1e-15);
    auto e = classify(SpectralPoint::pri(1.0, 0.0, 1, 2.0 * I));
    CHECK(e.Lambda == 2.0 * I);
    CHECK(classify(SpectralPoint::dis(1.0, 0.5, 1, 3, 1)).Lambda == cplx(3.0));
}

TEST_CASE("invalid spectral points") {
    CHECK_THROWS_AS(SpectralPoint::dis(1.0, 0.5, -1, 2, 1), DomainError);
    CHECK_THROWS_AS(SpectralPoint::dis(2.0, 0.5, 1, 0, 1), DomainError);
    CHECK_THROWS_AS(SpectralPoint::pri(2.0, 0.5, 1, 2.0), DomainError);
    CHECK_THROWS_AS(SpectralPoint::pri(1.0, 0.5, 1, 1.0), DomainError);
}

TEST_CASE("constraint blocks") {
    auto odd = constraint_blocks(SpectralPoint::pri(2.0, 1.0, -1, 1.0), 7);
    REQUIRE(odd.size() == 2);
    CHECK(odd[0] == std::vector<int>{-7, -5, -3, -1});
    CHECK(odd[1] == std::vector<int>{1, 3, 5, 7});
    CHECK(constraint_blocks(SpectralPoint::pri(2.0, 1.0, 1, I), 6).size() == 1);
    auto dis0 = constraint_blocks(SpectralPoint::dis(2.0, 0.0, 1, 2, 1), 9);
    CHECK(dis0.size() == 4);
    for (const auto& b : dis0) CHECK(b.size() == 1);
    // partition of Z(s)
    for (auto s : {SpectralPoint::pri(0.5, 1.0, -1, -1.0), SpectralPoint::pri(0.5, 0.0, 1, 1.0),
                   SpectralPoint::dis(0.5, 0.0, -1, 3, -1), SpectralPoint::pri(1.0, 0.3, -1, 0.0)}) {
        std::multiset<int> seen;
        for (const auto& b : constraint_blocks(s, 20)) seen.insert(b.begin(), b.end());
        const auto all = classify(s).ktypes.truncate(20);
        CHECK(std::vector<int>(seen.begin(), seen.end()) == all);
    }
}

TEST_CASE("jmap") {
    RMat J = jmap_matrix(0, 1, -1, 5);
    auto cols = KTypeSet::full(-1).truncate(5);
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] == 1) CHECK(J.col(j).sum() == 1.0);
        if (cols[j] == -1) CHECK(J.col(j).sum() == 0.0);
    }
    auto t = SpectralPoint::dis(2.0, 0.0, 1, 2, -1);
    auto s = SpectralPoint::pri(2.0, 0.0, -1, 1.0);
    RMat J2 = jmap(t, s, 9);
    auto rows = KTypeSet::half(-1, 2, -1).truncate(9);
    auto cols2 = KTypeSet::full(-1).truncate(9);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols2.size(); ++j)
            if (rows[i] == -5 && cols2[j] == -5) CHECK(J2(i, j) == 1.0);
    RMat P = J2.transpose() * J2;
    CHECK((P * P - P).norm() == 0.0);
    CHECK((J2 * J2.transpose() - RMat::Identity(rows.size(), rows.size())).norm() == 0.0);
    CHECK_THROWS_AS(jmap(t, SpectralPoint::pri(2.0, 0.0, -1, I), 9), DomainError);
    CHECK_THROWS_AS(jmap(SpectralPoint::dis(2.0, 1.0, 1, 2, 1), SpectralPoint::pri(2.0, 1.0, -1, 1.0), 9),
                    DomainError);
}

TEST_CASE("jmap intertwines groupoid modules") {
    const int N = 21;
    for (int sigma : {1, -1})
        for (int n = 1; n <= 6; ++n)
            for (int sign : {1, -1}) {
                const int e = (n % 2 == 0) ? -1 : 1;
                auto src = build_groupoid(double(sigma), e, N, 2.0);
                RMat Jr = jmap_matrix(n, sign, e, N);
                Mat J = Jr.cast<cplx>();
                // the discrete fiber is the sum of characters C zeta_m
                std::vector<int> pos;
                for (int k : discrete_window(n, sign, N)) pos.push_back(src.index(k));
                auto tgt = restrict_module(src, pos);
                const Mat Ts = src.X + src.Xstar, Tt = tgt.X + tgt.Xstar;
                const Mat Ps = src.X - src.Xstar - 2.0 * src.Z, Pt = tgt.X - tgt.Xstar - 2.0 * tgt.Z;
                CHECK((J * src.theta - tgt.theta * J).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((J * Ts - Tt * J).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((J * Ps - Pt * J).cwiseAbs().maxCoeff() < 1e-12);
            }
}

TEST_CASE("enumeration counts and minimal K-types") {
    auto qr = enumerate_spectrum(Algebra::QReduced, 2.0, 1.0, 9, 2);
    CHECK(qr.size() == size_t(2 * 9 + 4 * 2 + 2));
    int disc = 0;
    for (const auto& x : qr)
        if (x.kind == LabelKind::DiscreteQ) ++disc;
    CHECK(disc == 12);
    auto gr = enumerate_spectrum(Algebra::Groupoid, 2.0, 0.0, 9, 2);
    CHECK(gr.size() == qr.size());
    CHECK(SpectrumPoint::discrete_q(1, 2, 1).min_ktypes() == std::vector<int>{3});
    CHECK(SpectrumPoint::discrete_q(1, 1, -1).min_ktypes() == std::vector<int>{-2});
    CHECK(SpectrumPoint::principal_q(-1, I).min_ktypes() == std::vector<int>{-1, 1});
    CHECK(SpectrumPoint::groupoid_char(-1, 4).min_ktypes() == std::vector<int>{4});
    CHECK_THROWS_AS(SpectrumPoint::principal_q(-1, 1.0), DomainError);
    auto cl = enumerate_spectrum(Algebra::ClassicalReduced, 1.0, 1.0, 5, 2);
    CHECK(cl.size() == size_t(5 + 4 + 6));
    auto mo = enumerate_spectrum(Algebra::Motion, 1.0, 0.0, 5, 2);
    CHECK(mo.size() == size_t(8 + 7));
}

TEST_CASE("locate and block labels round trip") {
    for (const auto& x : enumerate_spectrum(Algebra::QReduced, 2.0, 1.0, 7, 3)) {
        auto [s, b] = locate(x, 2.0, 8);
        CHECK(block_label(s, b) == x);
    }
    for (const auto& x : enumerate_spectrum(Algebra::Groupoid, 2.0, 0.0, 7, 3)) {
        auto [s, b] = locate(x, 2.0, 8);
        CHECK(block_label(s, b) == x);
    }
}

TEST_CASE("closure graph of the q-deformed algebra") {
    const int n_max = 4;
    auto g = closure_graph(Algebra::QReduced, 2.0, 1.0, n_max, 37);
    auto grid = unit_grid(37);
    auto near1 = SpectrumPoint::principal_q(-1, grid[1]);
    CHECK(g.has_edge(near1, SpectrumPoint::discrete_q(1, 0, 1)));
    CHECK(g.has_edge(near1, SpectrumPoint::discrete_q(1, 0, -1)));
    CHECK(g.has_edge(SpectrumPoint::principal_q(-1, grid[35]), SpectrumPoint::discrete_q(-1, 0, 1)));
    const int d12 = g.find(SpectrumPoint::discrete_q(1, 2, 1));
    CHECK(g.predecessors(d12).empty());
    CHECK(g.isolated().size() == size_t(4 * n_max));
    CHECK(g.nontrivial_components() == 2);
}

TEST_CASE("closure graph of the groupoid") {
    auto g = closure_graph(Algebra::Groupoid, 2.0, 0.0, 4, 37);
    auto grid = unit_grid(37);
    CHECK(g.has_edge(SpectrumPoint::groupoid_cont(grid[1], -1), SpectrumPoint::groupoid_char(1, 3)));
    CHECK_FALSE(g.has_edge(SpectrumPoint::groupoid_cont(grid[1], 1), SpectrumPoint::groupoid_char(1, 3)));
    CHECK(g.has_edge(SpectrumPoint::groupoid_cont(grid[35], 1), SpectrumPoint::groupoid_char(-1, 4)));
    CHECK(g.isolated().empty());
    CHECK(g.nontrivial_components() == 2);
    const std::string js = g.to_json();
    CHECK(js.find("\"edges\"") != std::string::npos);
    CHECK_THROWS_AS(closure_graph(Algebra::Motion, 1.0, 0.0, 4, 37), DomainError);
}
