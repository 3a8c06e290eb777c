#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsl2r/modgen.hpp"

namespace qsl2r {

// An analytic function lambda(q,t) with lambda(1,t) = 1. The optional
// derivative returns d/dq lambda at q = 1 as a function of t.
struct AnalyticLambda {
    std::function<cplx(double, double)> f;
    std::function<cplx(double)> dq;
    std::string name;

    cplx operator()(double q, double t) const { return f(q, t); }

    // lambda = q^c
    static AnalyticLambda power(cplx c);
    // lambda = q^{c t}
    static AnalyticLambda power_tau(cplx c);
};

// asserts |lambda(1,t) - 1| < 1e-14 on 17 values of t in [-2,2]
void validate(const AnalyticLambda& lam);

// d/dq lambda(q,t) at q = 1: central difference with one Richardson step,
// or the exact callable when present and use_exact is set
cplx d_lambda(const AnalyticLambda& lam, double t, bool use_exact = true, double h_fd = 1e-5);

struct Kappa {
    cplx n, plus, minus;
};

Kappa kappa(double q, double t, int n, const AnalyticLambda& lam, bool use_exact = true);

// module the specialization table assigns to (q,t)
TruncatedModule target_module(double q, double t, int epsilon, const AnalyticLambda& lam, int N);

struct SImages {
    Mat s, plus, minus;
};

// images of s_n, s+_n, s-_n on a module sitting at (q,t)
SImages s_operator_images(double q, double t, int n, const TruncatedModule& m);

// kappa read off the column of zeta_n in the s-images
Kappa kappa_from_images(const SImages& im, const TruncatedModule& m, int n);

// generators x, x*, z, theta of the A-form on a module at (q,t)
struct AGenerators {
    Mat x, xstar, z, theta;
};
AGenerators a_generators(double q, double t, const TruncatedModule& m);

// max residual of the five defining relations of the A-form
double a_relation_residual(double q, double t, const TruncatedModule& m, int margin = 4);
double a_relation_tolerance(double q, double t);

struct SpecializationRow {
    double q = 1.0, t = 0.0;
    std::string family;
    double max_kappa_err = 0.0;
    double max_relation_residual = 0.0;
    bool pass = false;
};

std::vector<SpecializationRow> verify_specialization(const AnalyticLambda& lam, int epsilon,
                                                     const std::vector<std::pair<double, double>>& grid,
                                                     int N, double tol = 1e-10, int margin = 4);

// Distance between s-images at a sampled point and at the limit point,
// maximized over s, s+, s-, every interior n and the interior block.
double s_image_distance(double q, double t, double q0, double t0, int epsilon, const AnalyticLambda& lam,
                        int N, int margin = 4);

struct ConvergenceRow {
    std::string study;  // "t->0" or "q->1"
    std::string lambda_name;
    int epsilon = 1;
    double fixed = 0.0;  // q for t->0, t for q->1
    std::vector<double> steps, errors;
    double slope = 0.0;
    bool exact = false;  // errors vanish identically
    bool pass = false;
};

// least-squares slope of log(err) against log(step)
double loglog_slope(const std::vector<double>& steps, const std::vector<double>& errors);

ConvergenceRow convergence_in_t(double q, int epsilon, const AnalyticLambda& lam, const std::vector<double>& ts,
                                int N = 16, int margin = 4);
ConvergenceRow convergence_in_q(double t, int epsilon, const AnalyticLambda& lam, const std::vector<double>& dqs,
                                int N = 16, int margin = 4);

// invariant coordinate subspaces of the specialized discrete A-family
// lambda = q^{n t} at (q,t)
std::vector<std::vector<int>> discrete_family_windows(double q, double t, int n, int N);

std::string specialization_csv_header();
std::string to_csv_row(const SpecializationRow& r);

}  // namespace qsl2r
