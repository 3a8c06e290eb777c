#include "qsl2r/algcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsl2r {

std::string to_csv_row(const ResidualReport& r) {
    std::ostringstream os;
    os.precision(6);
    os << r.relation << ',' << std::scientific << r.max_abs_residual << ',' << r.row_ktype << ','
       << r.col_ktype << ',' << r.interior_size;
    return os.str();
}

bool all_pass(const std::vector<ResidualReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

const ResidualReport& worst(const std::vector<ResidualReport>& reports) {
    if (reports.empty()) throw DomainError("worst: empty report list");
    return *std::max_element(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
        return a.max_abs_residual < b.max_abs_residual;
    });
}

ResidualReport residual_report(const std::string& id, const Mat& R, const TruncatedModule& m,
                               const std::vector<int>& interior, double tol) {
    ResidualReport rep;
    rep.relation = id;
    rep.interior_size = int(interior.size());
    double best = -1.0;
    for (int i : interior)
        for (int j : interior) {
            const double v = std::abs(R(i, j));
            if (!(v <= best)) {  // also catches NaN
                best = std::isnan(v) ? INFINITY : v;
                rep.row_ktype = m.window[i];
                rep.col_ktype = m.window[j];
            }
        }
    rep.max_abs_residual = std::max(best, 0.0);
    rep.pass = rep.max_abs_residual < tol;
    return rep;
}

namespace {

// weighted adjoint D^-1 A^H D
Mat wadj(const Mat& A, const std::vector<double>& w) {
    const int d = int(A.rows());
    Mat B(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) B(i, j) = std::conj(A(j, i)) * w[j] / w[i];
    return B;
}

bool theta_is_qint(const TruncatedModule& m) {
    const int d = m.size();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) {
                const double ref = qint(m.window[i], m.base.qt);
                if (std::abs(m.theta(i, i) - ref) > 1e-14 * std::max(1.0, std::abs(ref))) return false;
            } else if (m.theta(i, j) != cplx(0.0)) {
                return false;
            }
        }
    return true;
}

// q[kj] - q^-1[ki] without cancellation of the large q-powers
double shifted_qdiff(double q, int ki, int kj) {
    const double h = std::log(q);
    const double mid = 0.5 * (ki + kj);
    const double num = 2.0 * std::exp(mid * h) * std::sinh(0.5 * (kj - ki + 2) * h) +
                       2.0 * std::exp(-mid * h) * std::sinh(0.5 * (kj - ki - 2) * h);
    return num / (2.0 * std::sinh(h));
}

// [kj] - [ki]
double qdiff(double q, int ki, int kj) {
    const double h = std::log(q);
    return 4.0 * std::cosh(0.5 * (ki + kj) * h) * std::sinh(0.5 * (kj - ki) * h) / (2.0 * std::sinh(h));
}

}  // namespace

std::vector<ResidualReport> check_relations_uq(const TruncatedModule& m, double tol, int margin) {
    if (!(m.family == Family::PrincipalQ || m.family == Family::DiscreteQ) || m.classical())
        throw FamilyError("check_relations_uq: needs a PrincipalQ or DiscreteQ module with q^t != 1");
    const double q = m.base.qt;
    const double q2 = q * q;
    const auto in = m.interior(margin);
    const int d = m.size();
    const Mat& X = m.X;
    const Mat& Xs = m.Xstar;
    const Mat& Z = m.Z;
    const Mat& th = m.theta;
    const Mat I = Mat::Identity(d, d);
    const double two = qint(2, q);

    std::vector<ResidualReport> out;
    out.push_back(residual_report("Z*=Z", wadj(Z, m.weights) - Z, m, in, tol));
    out.push_back(residual_report("XZ=q^2ZX", X * Z - q2 * Z * X, m, in, tol));
    out.push_back(residual_report("XX*+q^2Z^2=1", X * Xs + q2 * Z * Z - I, m, in, tol));
    out.push_back(residual_report("X*X+q^-2Z^2=1", Xs * X + Z * Z / q2 - I, m, in, tol));

    Mat R1, R2;
    if (theta_is_qint(m)) {
        // theta is diagonal, so both brackets reduce to entrywise scalings
        R1 = Mat::Zero(d, d);
        R2 = Mat::Zero(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const int ki = m.window[i], kj = m.window[j];
                R1(i, j) = X(i, j) * shifted_qdiff(q, ki, kj) - two * Z(i, j);
                R2(i, j) = Z(i, j) * qdiff(q, ki, kj) - (X(i, j) - Xs(i, j));
            }
    } else {
        R1 = q * X * th - th * X / q - two * Z;
        R2 = Z * th - th * Z - (X - Xs);
    }
    out.push_back(residual_report("qXtheta-q^-1thetaX=[2]Z", R1, m, in, tol));
    out.push_back(residual_report("Ztheta-thetaZ=X-X*", R2, m, in, tol));
    return out;
}

std::vector<ResidualReport> check_relations_limit(const TruncatedModule& m, double tol, int margin) {
    const auto in = m.interior(margin);
    const int d = m.size();
    const Mat& th = m.theta;
    const Mat I = Mat::Identity(d, d);
    std::vector<ResidualReport> out;
    if (m.family == Family::Motion) {
        const Mat& dX = m.X;
        const Mat& dZ = m.Z;
        out.push_back(residual_report("dXdZ=dZdX", dX * dZ - dZ * dX, m, in, tol));
        out.push_back(residual_report("theta.dX-dX.theta=-2dZ", th * dX - dX * th + 2.0 * dZ, m, in, tol));
        out.push_back(residual_report("theta.dZ-dZ.theta=-2dX", th * dZ - dZ * th + 2.0 * dX, m, in, tol));
    } else if (m.family == Family::Groupoid) {
        const Mat& X = m.X;
        const Mat& Xs = m.Xstar;
        const Mat& Z = m.Z;
        out.push_back(residual_report("XZ=ZX", X * Z - Z * X, m, in, tol));
        out.push_back(residual_report("XX*=X*X", X * Xs - Xs * X, m, in, tol));
        out.push_back(residual_report("XX*+Z^2=1", X * Xs + Z * Z - I, m, in, tol));
        out.push_back(residual_report("Xtheta-thetaX=2Z", X * th - th * X - 2.0 * Z, m, in, tol));
        out.push_back(residual_report("Ztheta-thetaZ=X-X*", Z * th - th * Z - (X - Xs), m, in, tol));
    } else if (m.family == Family::ClassicalPrincipal || (m.family == Family::DiscreteQ && m.classical())) {
        const cplx iu(0.0, 1.0);
        const Mat H = 2.0 * m.X;
        const Mat E = -iu * m.Z;
        const Mat F = E + iu * th;
        out.push_back(residual_report("[H,E]=2E", H * E - E * H - 2.0 * E, m, in, tol));
        out.push_back(residual_report("[H,F]=-2F", H * F - F * H + 2.0 * F, m, in, tol));
        out.push_back(residual_report("[E,F]=H", E * F - F * E - H, m, in, tol));
    } else {
        throw FamilyError("check_relations_limit: needs a Motion, Groupoid or classical module");
    }
    return out;
}

ResidualReport check_unitarity(const TruncatedModule& m, double tol, int margin) {
    const auto in = m.interior(margin);
    std::vector<ResidualReport> parts;
    parts.push_back(residual_report("theta*=theta", m.theta - m.theta.adjoint(), m, in, tol));
    parts.push_back(residual_report("Z*=Z", wadj(m.Z, m.weights) - m.Z, m, in, tol));
    parts.push_back(residual_report("X^dagger=X*", wadj(m.X, m.weights) - m.Xstar, m, in, tol));
    ResidualReport r = worst(parts);
    r.relation = "unitarity:" + r.relation;
    return r;
}

std::vector<double> discrete_weight_oracle(double qt, int n, int sign, int N) {
    const auto win = discrete_window(n, sign, N);
    std::vector<double> w(win.size());
    if (win.empty()) return w;
    const int m0 = n + 1;
    const bool classical = is_q_one(qt);
    const double q = qt;
    const double lam = std::pow(q, n);
    auto kp = [&](int m) { return lam * std::pow(q, 1 + m) - std::pow(q, -1 - m) / lam; };
    auto km = [&](int m) { return lam * std::pow(q, 1 - m) - std::pow(q, -1 + m) / lam; };
    auto rows = [&](int k) {
        Eigen::Matrix3d M;
        M << 1.0 / q, q, std::pow(q, k) - std::pow(q, -k), std::pow(q, k), -std::pow(q, -k), -qint(2, q),
            std::pow(q, -k), -std::pow(q, k), qint(2, q);
        return M;
    };
    // walk outward from the lowest K-type |m| = n+1
    std::vector<double> seq;
    seq.push_back(1.0 / std::cosh(m0 * std::log(q)));
    for (int a = m0; a + 2 <= N; a += 2) {
        const int m = sign * a;
        double ratio;
        if (classical) {
            // (H - i(E+F))^* = -(H + i(E+F)) with lambda = n
            ratio = sign > 0 ? (m + 1.0 - n) / (m + 1.0 + n) : -(n + m - 1.0) / (n + 1.0 - m);
        } else if (sign > 0) {
            // <T+_m z_m, z_{m+2}> = -<z_m, T-_m z_{m+2}>
            Eigen::Vector3d v(std::pow(q, -m), -std::pow(q, m), qint(2, q));
            Eigen::Vector3d abc = rows(m + 2).transpose().fullPivLu().solve(v);
            ratio = -abc(2) * km(m + 2) / kp(m);
        } else {
            // <T-_m z_m, z_{m-2}> = -<z_m, T+_m z_{m-2}>
            Eigen::Vector3d v(std::pow(q, m), -std::pow(q, -m), -qint(2, q));
            Eigen::Vector3d abc = rows(m - 2).transpose().fullPivLu().solve(v);
            ratio = -abc(1) * kp(m - 2) / km(m);
        }
        seq.push_back(seq.back() * ratio);
    }
    // seq is ordered by |m|; the window is ascending
    for (size_t i = 0; i < win.size(); ++i) {
        const int a = std::abs(win[i]);
        w[i] = seq[(a - m0) / 2];
    }
    return w;
}

}  // namespace qsl2r

namespace qsl2r {

double discrete_weight_discrepancy(double qt, int n, int sign, int N) {
    const auto w = weights_discrete(qt, n, sign, N);
    const auto o = discrete_weight_oracle(qt, n, sign, N);
    if (w.size() != o.size()) throw NumericalError("discrete_weight_discrepancy: window mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < w.size(); ++i) worst = std::max(worst, std::abs(w[i] - o[i]) / o[i]);
    return worst;
}

SubmoduleReport check_submodules(const DeformationPoint& base, int sigma, int n, int N, double tol) {
    SubmoduleReport r;
    r.sigma = sigma;
    r.n = n;
    const int parity = (n + 1) % 2 == 0 ? 1 : -1;
    const auto m = build_principal_q(base, parity, double(sigma) * std::pow(base.qt, n), N);
    const auto plus = discrete_window(n, 1, N), minus = discrete_window(n, -1, N);
    auto positions = [&](const std::vector<int>& ks) {
        std::vector<int> p;
        for (int k : ks) p.push_back(m.index(k));
        return p;
    };
    r.leak_plus = leakage(m, positions(plus));
    r.leak_minus = leakage(m, positions(minus));
    r.detected = detect_submodules(m, tol);
    r.windows_match = r.detected.size() == 2 &&
                      ((r.detected[0] == minus && r.detected[1] == plus) ||
                       (r.detected[0] == plus && r.detected[1] == minus));
    r.pass = r.windows_match && r.leak_plus < tol && r.leak_minus < tol;
    return r;
}

}  // namespace qsl2r
