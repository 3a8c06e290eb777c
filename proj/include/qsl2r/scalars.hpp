#pragma once

#include "qsl2r/types.hpp"

namespace qsl2r {

struct DeformationPoint {
    double q = 1.0;
    double t = 0.0;
    double qt = 1.0;  // q^t
};

// validated constructor, throws DomainError when q <= 0
DeformationPoint make_point(double q, double t);

// q-integer [n]_q = (q^n - q^-n)/(q - q^-1), equal to n at q = 1
double qint(int n, double q);

// eta(q,t) = (q^t - q^-t)/t, equal to 2 ln q at t = 0
double eta(double q, double t);

// chart q^lambda of the principal component; lambda purely imaginary with
// nonnegative imaginary part and |lambda ln q| < pi
cplx pri_chart(double q, cplx lambda);

// inverse of pri_chart on the image of the chart
cplx pri_chart_inverse(double q, cplx u);

}  // namespace qsl2r
