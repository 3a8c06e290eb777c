#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsl2r/scalars.hpp"

using namespace qsl2r;

TEST_CASE("qint examples") {
    CHECK(qint(2, 2.0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(qint(0, 3.7) == 0.0);
    CHECK(qint(3, 2.0) == doctest::Approx(5.25).epsilon(1e-15));
    CHECK(qint(5, 1.0) == 5.0);
}

TEST_CASE("qint symmetries") {
    for (double q : {0.3, 0.9, 1.0 + 1e-10, 1.7, 4.0})
        for (int n = -12; n <= 12; ++n) {
            CHECK(qint(-n, q) == doctest::Approx(-qint(n, q)).epsilon(1e-14));
            CHECK(qint(n, 1.0 / q) == doctest::Approx(qint(n, q)).epsilon(1e-13));
        }
}

TEST_CASE("qint is continuous across the q = 1 band") {
    for (int n : {1, 2, 7, 20}) {
        const double below = qint(n, 1.0 + 0.999e-8);
        const double above = qint(n, 1.0 + 1.001e-8);
        CHECK(std::abs(below - above) < 1e-12 * n * n * n);
        CHECK(std::abs(qint(n, 1.0 + 5e-13) - n) < 1e-10);
    }
}

TEST_CASE("eta examples and limits") {
    CHECK(eta(2.0, 0.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(eta(1.0, 0.7) == 0.0);
    CHECK(eta(2.0, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    for (double t : {0.3, 1e-3, 1e-9, 2.0}) CHECK(eta(3.0, t) == doctest::Approx(eta(3.0, -t)).epsilon(1e-15));
    for (int k = 1; k <= 14; ++k) {
        const double t = std::pow(10.0, -k);
        CHECK(std::abs(eta(2.0, t) - 2.0 * std::log(2.0)) < 2.0 * t + 1e-14);
    }
}

TEST_CASE("eta over q - 1 stays bounded near q = 1") {
    for (double d : {1e-2, 1e-4, 1e-6, -1e-3}) {
        const double r = eta(1.0 + d, 0.5) / d;
        CHECK(r > 0.5);
        CHECK(r < 2.5);
    }
}

TEST_CASE("pri_chart examples") {
    const cplx i(0.0, 1.0);
    const cplx a = pri_chart(std::exp(1.0), i * std::numbers::pi / 2.0);
    CHECK(std::abs(a - i) < 1e-15);
    CHECK(std::abs(pri_chart(5.0, 0.0) - 1.0) < 1e-15);
    const cplx b = pri_chart(2.0, i);
    CHECK(b.real() == doctest::Approx(0.7692).epsilon(1e-4));
    CHECK(b.imag() == doctest::Approx(0.6390).epsilon(1e-4));
    CHECK_THROWS_AS(pri_chart(std::exp(1.0), i * 3.2), DomainError);
    CHECK_THROWS_AS(pri_chart(1.0, i), DomainError);
    CHECK(std::abs(pri_chart_inverse(2.0, b) - i) < 1e-14);
    // below q = 1 the chart is folded back into the upper half circle
    CHECK(pri_chart(0.5, i).imag() > 0.0);
}

TEST_CASE("make_point") {
    auto p = make_point(2.0, 0.5);
    CHECK(p.qt == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(make_point(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_point(-1.0, 1.0), DomainError);
}
