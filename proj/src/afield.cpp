#include "qsl2r/afield.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qsl2r {

namespace {

std::string cplx_str(cplx c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g%+gi", c.real(), c.imag());
    return buf;
}

double max_abs_block(const Mat& A, const std::vector<int>& in) {
    double v = 0.0;
    for (int i : in)
        for (int j : in) v = std::max(v, std::abs(A(i, j)));
    return v;
}

}  // namespace

AnalyticLambda AnalyticLambda::power(cplx c) {
    AnalyticLambda l;
    l.f = [c](double q, double) { return std::exp(c * std::log(q)); };
    l.dq = [c](double) { return c; };
    l.name = "q^(" + cplx_str(c) + ")";
    return l;
}

AnalyticLambda AnalyticLambda::power_tau(cplx c) {
    AnalyticLambda l;
    l.f = [c](double q, double t) { return std::exp(c * t * std::log(q)); };
    l.dq = [c](double t) { return c * t; };
    l.name = "q^(" + cplx_str(c) + "t)";
    return l;
}

void validate(const AnalyticLambda& lam) {
    if (!lam.f) throw DomainError("AnalyticLambda: missing callable");
    for (int i = 0; i <= 16; ++i) {
        const double t = -2.0 + 0.25 * i;
        const cplx v = lam(1.0, t);
        if (!(std::abs(v - 1.0) < 1e-14)) {
            std::ostringstream os;
            os << "AnalyticLambda " << lam.name << ": lambda(1," << t << ") = " << v << " != 1";
            throw DomainError(os.str());
        }
    }
}

cplx d_lambda(const AnalyticLambda& lam, double t, bool use_exact, double h_fd) {
    if (use_exact && lam.dq) return lam.dq(t);
    auto D = [&](double h) { return (lam(1.0 + h, t) - lam(1.0 - h, t)) / (2.0 * h); };
    return (4.0 * D(h_fd / 2.0) - D(h_fd)) / 3.0;
}

Kappa kappa(double q, double t, int n, const AnalyticLambda& lam, bool use_exact) {
    Kappa k;
    if (is_q_one(q)) {
        const cplx d = d_lambda(lam, t, use_exact);
        k.n = 0.0;
        if (is_t_zero(t)) {
            k.plus = k.minus = d;
        } else {
            k.plus = d + t * (1.0 + n);
            k.minus = d + t * (1.0 - n);
        }
        return k;
    }
    const double e = eta(q, t);
    if (is_t_zero(t)) {
        const cplx l = lam(q, 0.0);
        k.n = (l + 1.0 / l - 2.0) / e;
        k.plus = k.minus = (l - 1.0 / l) / e;
        return k;
    }
    const cplx l = lam(q, t);
    const double qt = std::exp(t * std::log(q));
    k.n = (l + 1.0 / l - qint(2, qt)) / e;
    k.plus = (l * std::pow(qt, 1 + n) - std::pow(qt, -1 - n) / l) / e;
    k.minus = (l * std::pow(qt, 1 - n) - std::pow(qt, -1 + n) / l) / e;
    return k;
}

TruncatedModule target_module(double q, double t, int epsilon, const AnalyticLambda& lam, int N) {
    if (is_q_one(q)) {
        const cplx d = d_lambda(lam, t);
        if (is_t_zero(t)) return build_motion(d, epsilon, N);
        return build_classical_principal(d / t, epsilon, N, t);
    }
    if (is_t_zero(t)) return build_groupoid(lam(q, 0.0), epsilon, N, q);
    return build_principal_q(make_point(q, t), epsilon, lam(q, t), N);
}

SImages s_operator_images(double q, double t, int n, const TruncatedModule& m) {
    const int d = m.size();
    const Mat I = Mat::Identity(d, d);
    const cplx iu(0.0, 1.0);
    const bool qone = is_q_one(q), tzero = is_t_zero(t);
    SImages im;
    auto mismatch = [&](const char* want) {
        std::ostringstream os;
        os << "s_operator_images: point (" << q << "," << t << ") needs a " << want << " module, got "
           << family_name(m.family);
        throw FamilyError(os.str());
    };
    if (!qone && !tzero) {
        if (!(m.family == Family::PrincipalQ || m.family == Family::DiscreteQ) || m.classical())
            mismatch("q-deformed");
        if (std::abs(m.base.qt - std::exp(t * std::log(q))) > 1e-12 * m.base.qt) mismatch("matching q^t");
        const double qt = m.base.qt, e = eta(q, t), two = qint(2, qt);
        const double a = std::pow(qt, n), b = std::pow(qt, -n);
        im.s = (m.X / qt + qt * m.Xstar + (a - b) * m.Z - two * I) / e;
        im.plus = (a * m.X - b * m.Xstar - two * m.Z) / e;
        im.minus = (b * m.X - a * m.Xstar + two * m.Z) / e;
    } else if (!qone) {
        if (m.family != Family::Groupoid) mismatch("Groupoid");
        const double h = eta(q, 0.0);
        im.s = (m.X + m.Xstar - 2.0 * I) / h;
        im.plus = (m.X - m.Xstar - 2.0 * m.Z) / h;
        im.minus = (m.X - m.Xstar + 2.0 * m.Z) / h;
    } else if (!tzero) {
        if (!(m.family == Family::ClassicalPrincipal || (m.family == Family::DiscreteQ && m.classical())))
            mismatch("classical");
        const Mat H = 2.0 * m.X;
        const Mat E = -iu * m.Z;
        im.s = Mat::Zero(d, d);
        im.plus = t * (H - 2.0 * iu * E + double(n) * I);
        im.minus = t * (H + 2.0 * iu * E - double(n) * I);
    } else {
        if (m.family != Family::Motion) mismatch("Motion");
        im.s = Mat::Zero(d, d);
        im.plus = 2.0 * (m.X - m.Z);
        im.minus = 2.0 * (m.X + m.Z);
    }
    return im;
}

Kappa kappa_from_images(const SImages& im, const TruncatedModule& m, int n) {
    const int j = m.index(n);
    if (j < 0) throw DomainError("kappa_from_images: K-type outside the window");
    const double nan = std::nan("");
    Kappa k;
    k.n = im.s(j, j);
    const int up = m.index(n + 2), dn = m.index(n - 2);
    k.plus = up >= 0 ? im.plus(up, j) : cplx(nan, nan);
    k.minus = dn >= 0 ? im.minus(dn, j) : cplx(nan, nan);
    return k;
}

AGenerators a_generators(double q, double t, const TruncatedModule& m) {
    const int d = m.size();
    const Mat I = Mat::Identity(d, d);
    AGenerators g;
    g.theta = m.theta;
    if (!is_q_one(q)) {
        const double e = eta(q, t);
        g.x = (m.X - I) / e;
        g.xstar = (m.Xstar - I) / e;
        g.z = m.Z / e;
    } else {
        const double s = is_t_zero(t) ? 1.0 : t;
        g.x = s * m.X;
        g.xstar = -g.x;
        g.z = s * m.Z;
    }
    return g;
}

double a_relation_tolerance(double q, double t) {
    const double e = eta(q, t);
    if (e == 0.0) return 1e-9;
    return std::max(1e-9, 1e-12 / (e * e));
}

double a_relation_residual(double q, double t, const TruncatedModule& m, int margin) {
    const AGenerators g = a_generators(q, t, m);
    const double qt = is_q_one(q) ? 1.0 : std::exp(t * std::log(q));
    const double tt = is_t_zero(t) ? 0.0 : t;
    const double e = eta(q, t), two = qint(2, qt), q2 = qt * qt;
    const auto in = m.interior(margin);
    const Mat &x = g.x, &xs = g.xstar, &z = g.z, &th = g.theta;
    const Mat zz = z * z;
    const Mat xxs = x * xs;
    double r = 0.0;
    r = std::max(r, max_abs_block(qt * x * th - th * x / qt - two * z + tt * th, in));
    r = std::max(r, max_abs_block(z * th - th * z - (x - xs), in));
    r = std::max(r, max_abs_block(qt * z * x - x * z / qt + tt * z, in));
    r = std::max(r, max_abs_block(xxs + q2 * zz - xs * x - zz / q2, in));
    r = std::max(r, max_abs_block(x + xs + e * (xxs + q2 * zz), in));
    return r;
}

std::vector<SpecializationRow> verify_specialization(const AnalyticLambda& lam, int epsilon,
                                                     const std::vector<std::pair<double, double>>& grid,
                                                     int N, double tol, int margin) {
    validate(lam);
    std::vector<SpecializationRow> rows;
    for (auto [q, t] : grid) {
        SpecializationRow row;
        row.q = q;
        row.t = t;
        const TruncatedModule m = target_module(q, t, epsilon, lam, N);
        row.family = family_name(m.family);
        double kerr = 0.0;
        for (int j : m.interior(margin)) {
            const int n = m.window[j];
            const SImages im = s_operator_images(q, t, n, m);
            const Kappa k = kappa(q, t, n, lam);
            const double scale = std::max({1.0, std::abs(k.n), std::abs(k.plus), std::abs(k.minus)});
            // whole column of zeta_n, not only the expected entries
            for (int i = 0; i < m.size(); ++i) {
                const int ki = m.window[i];
                const cplx es = ki == n ? k.n : cplx(0.0);
                const cplx ep = ki == n + 2 ? k.plus : cplx(0.0);
                const cplx em = ki == n - 2 ? k.minus : cplx(0.0);
                kerr = std::max({kerr, std::abs(im.s(i, j) - es) / scale, std::abs(im.plus(i, j) - ep) / scale,
                                 std::abs(im.minus(i, j) - em) / scale});
            }
        }
        row.max_kappa_err = kerr;
        row.max_relation_residual = a_relation_residual(q, t, m, margin);
        row.pass = kerr < tol && row.max_relation_residual < a_relation_tolerance(q, t);
        rows.push_back(row);
    }
    return rows;
}

double s_image_distance(double q, double t, double q0, double t0, int epsilon, const AnalyticLambda& lam,
                        int N, int margin) {
    const TruncatedModule a = target_module(q, t, epsilon, lam, N);
    const TruncatedModule b = target_module(q0, t0, epsilon, lam, N);
    if (a.window != b.window) throw DomainError("s_image_distance: windows differ");
    const auto in = a.interior(margin);
    double err = 0.0;
    for (int j : in) {
        const int n = a.window[j];
        const SImages A = s_operator_images(q, t, n, a);
        const SImages B = s_operator_images(q0, t0, n, b);
        err = std::max({err, max_abs_block(A.s - B.s, in), max_abs_block(A.plus - B.plus, in),
                        max_abs_block(A.minus - B.minus, in)});
    }
    return err;
}

double loglog_slope(const std::vector<double>& steps, const std::vector<double>& errors) {
    const size_t k = steps.size();
    if (k < 2 || errors.size() != k) throw DomainError("loglog_slope: need at least two samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < k; ++i) {
        if (!(steps[i] > 0.0) || !(errors[i] > 0.0)) return std::nan("");
        const double x = std::log(steps[i]), y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

namespace {

void finish(ConvergenceRow& row) {
    bool all_zero = true;
    for (double e : row.errors) all_zero = all_zero && e == 0.0;
    row.exact = all_zero;
    row.slope = all_zero ? std::nan("") : loglog_slope(row.steps, row.errors);
    row.pass = row.exact || (row.slope >= 0.9 && row.slope <= 1.1);
}

}  // namespace

ConvergenceRow convergence_in_t(double q, int epsilon, const AnalyticLambda& lam, const std::vector<double>& ts,
                                int N, int margin) {
    ConvergenceRow row;
    row.study = "t->0";
    row.lambda_name = lam.name;
    row.epsilon = epsilon;
    row.fixed = q;
    for (double t : ts) {
        row.steps.push_back(std::abs(t));
        row.errors.push_back(s_image_distance(q, t, q, 0.0, epsilon, lam, N, margin));
    }
    finish(row);
    return row;
}

ConvergenceRow convergence_in_q(double t, int epsilon, const AnalyticLambda& lam, const std::vector<double>& dqs,
                                int N, int margin) {
    ConvergenceRow row;
    row.study = "q->1";
    row.lambda_name = lam.name;
    row.epsilon = epsilon;
    row.fixed = t;
    for (double dq : dqs) {
        row.steps.push_back(std::abs(dq));
        row.errors.push_back(s_image_distance(1.0 + dq, t, 1.0, t, epsilon, lam, N, margin));
    }
    finish(row);
    return row;
}

std::vector<std::vector<int>> discrete_family_windows(double q, double t, int n, int N) {
    const int eps = (n % 2 == 0) ? -1 : 1;
    const TruncatedModule m = target_module(q, t, eps, AnalyticLambda::power_tau(double(n)), N);
    return detect_submodules(m);
}

std::string specialization_csv_header() { return "q,t,family,max_kappa_err,max_relation_residual,pass"; }

std::string to_csv_row(const SpecializationRow& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%.6e,%.6e,%d", r.q, r.t, r.family.c_str(), r.max_kappa_err,
                  r.max_relation_residual, r.pass ? 1 : 0);
    return buf;
}

}  // namespace qsl2r
