#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsl2r/ktheory.hpp"

using namespace qsl2r;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("W_m sets") {
    CHECK(wm(1) == std::vector<int>{0});
    CHECK(wm(2) == std::vector<int>{-1, 1});
    CHECK(wm(5) == std::vector<int>{2});
    CHECK(wm(6) == std::vector<int>{-2});
    CHECK(wm(3) == std::vector<int>{1});
    CHECK_THROWS_AS(wm(0), DomainError);
    for (int m = 1; m < 40; ++m) CHECK(stratum_of(wm(m)) == m);
    CHECK(stratum_of({-2, 2}) == 0);
}

TEST_CASE("strata of the examples") {
    CHECK(stratum_of(SpectrumPoint::principal_q(1, I).min_ktypes()) == 1);
    CHECK(stratum_of(SpectrumPoint::principal_q(-1, I).min_ktypes()) == 2);
    CHECK(stratum_of(SpectrumPoint::discrete_q(1, 1, -1).min_ktypes()) == 6);
    CHECK(stratum_of(SpectrumPoint::discrete_q(-1, 1, -1).min_ktypes()) == 6);
}

TEST_CASE("stratify partitions and is mu-invariant") {
    const auto L = stratify(2.0, 6, 19);
    CHECK(L.pass());
    CHECK(L.unclassified == 0);
    CHECK(L.mu_violations == 0);
    CHECK(L.rows.size() == 2 * size_t(2 * 19 + 4 * 6 + 2));
    const std::string csv = L.to_csv();
    CHECK(csv.rfind("label,ktypes_truncated,min_ktypes,stratum_m\n", 0) == 0);
    CHECK(csv.find("\"DiscreteQ(1,2,+)\",3;5;7,3,7") != std::string::npos);
}

TEST_CASE("rank profile") {
    CHECK(rank_profile(SpectrumPoint::principal_q(1, I), 0, 2.0, 8) == 1);
    CHECK(rank_profile(SpectrumPoint::discrete_q(1, 2, 1), 0, 2.0, 8) == 0);
    CHECK(rank_profile(SpectrumPoint::principal_q(-1, I), 1, 2.0, 8) == 1);
    CHECK(rank_profile(SpectrumPoint::groupoid_char(-1, 4), 4, 2.0, 8) == 1);
    CHECK(rank_profile(SpectrumPoint::groupoid_char(-1, 4), 2, 2.0, 8) == 0);
    const auto r = check_rank_claim(stratify(0.5, 5, 13));
    CHECK(r.pass());
    CHECK(r.pairs > 0);
}

TEST_CASE("ideal membership is closed under predecessors") {
    const auto r = check_monotonicity(2.0, 5, 19);
    CHECK(r.pass());
}

TEST_CASE("K-theory summary") {
    const auto k0 = k_summary(2.0, 0);
    CHECK(k0.k0 == "ℤ ⊕ ℤ³ ⊕ ℤ⁴");
    CHECK(k0.k0_formula == "ℤ ⊕ ℤ³ ⊕ ⊕ℤ");
    CHECK(k0.k1 == "0");
    CHECK(k0.consistent);
    int prev = k0.discrete_rank;
    for (int n = 1; n <= 4; ++n) {
        const auto k = k_summary(2.0, n);
        CHECK(k.discrete_rank - prev == 4);
        CHECK(k.consistent);
        CHECK(k.k1 == "0");
        prev = k.discrete_rank;
    }
    CHECK(k_summary(2.0, 3).k0 == "ℤ ⊕ ℤ³ ⊕ ℤ¹⁶");
    CHECK(k_summary(2.0, 2).to_json().find("\"K1\": \"0\"") != std::string::npos);
}
