#include "qsl2r/scalars.hpp"

#include <cmath>
#include <numbers>

namespace qsl2r {

namespace {
constexpr double kBand = 1e-8;
}

DeformationPoint make_point(double q, double t) {
    if (!(q > 0.0) || !std::isfinite(q) || !std::isfinite(t))
        throw DomainError("deformation point needs q > 0 and finite t");
    return {q, t, std::exp(t * std::log(q))};
}

double qint(int n, double q) {
    if (!(q > 0.0)) throw DomainError("qint: q must be positive");
    if (is_q_one(q)) return n;
    const double h = std::log(q);
    if (std::abs(q - 1.0) <= kBand) {
        const double n2 = double(n) * n;
        const double h2 = h * h;
        return n * (1.0 + (n2 - 1.0) * h2 / 6.0 +
                    (n2 - 1.0) * (3.0 * n2 - 7.0) * h2 * h2 / 360.0);
    }
    return std::sinh(n * h) / std::sinh(h);
}

double eta(double q, double t) {
    if (!(q > 0.0)) throw DomainError("eta: q must be positive");
    const double lq = std::log(q);
    if (is_t_zero(t)) return 2.0 * lq;
    if (std::abs(t) <= kBand) {
        const double x = t * lq;
        const double x2 = x * x;
        return 2.0 * lq * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
    }
    return 2.0 * std::sinh(t * lq) / t;
}

cplx pri_chart(double q, cplx lambda) {
    if (!(q > 0.0) || is_q_one(q))
        throw DomainError("pri_chart: q must be positive and different from 1");
    if (std::abs(lambda.real()) > 1e-14 * std::max(1.0, std::abs(lambda)) ||
        lambda.imag() < 0.0)
        throw DomainError("pri_chart: lambda must lie in iR_+");
    const double lq = std::log(q);
    if (std::abs(lambda * lq) >= std::numbers::pi)
        throw DomainError("pri_chart: |lambda ln q| must be below pi");
    // below q = 1 the raw exponential lands in the lower half circle; the
    // point of U_+ carrying the same representation is its inverse
    return std::exp(cplx(0.0, lambda.imag() * std::abs(lq)));
}

cplx pri_chart_inverse(double q, cplx u) {
    if (!(q > 0.0) || is_q_one(q))
        throw DomainError("pri_chart_inverse: q must be positive and different from 1");
    if (std::abs(std::abs(u) - 1.0) > 1e-12 || u.imag() < -1e-15)
        throw DomainError("pri_chart_inverse: u must lie in U_+");
    const double ang = std::arg(u);
    if (ang >= std::numbers::pi) throw DomainError("pri_chart_inverse: u = -1 is outside the chart");
    return {0.0, std::max(ang, 0.0) / std::abs(std::log(q))};
}

}  // namespace qsl2r
