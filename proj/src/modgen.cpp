#include "qsl2r/modgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qsl2r {

std::string family_name(Family f) {
    switch (f) {
        case Family::PrincipalQ: return "PrincipalQ";
        case Family::DiscreteQ: return "DiscreteQ";
        case Family::ClassicalPrincipal: return "ClassicalPrincipal";
        case Family::Motion: return "Motion";
        case Family::Groupoid: return "Groupoid";
    }
    return "?";
}

int TruncatedModule::index(int k) const {
    auto it = std::lower_bound(window.begin(), window.end(), k);
    if (it == window.end() || *it != k) return -1;
    return int(it - window.begin());
}

std::vector<int> TruncatedModule::interior(int margin) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (std::abs(window[i]) <= N - margin) out.push_back(i);
    return out;
}

bool TruncatedModule::classical() const { return is_q_one(base.qt); }

std::vector<int> parity_window(int eps, int N) {
    if (eps != 1 && eps != -1) throw DomainError("parity must be +1 or -1");
    std::vector<int> out;
    for (int k = -N; k <= N; ++k)
        if ((std::abs(k) % 2 == 0) == (eps == 1)) out.push_back(k);
    return out;
}

std::vector<int> discrete_window(int n, int sign, int N) {
    if (n < 0) throw DomainError("discrete order must be nonnegative");
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    std::vector<int> out;
    for (int m = n + 1; m <= N; m += 2) out.push_back(sign * m);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> weights_principal(double qt, int parity, int N) {
    if (!(qt > 0.0)) throw DomainError("weights_principal: qt must be positive");
    const double lq = std::log(qt);
    std::vector<double> w;
    for (int k : parity_window(parity, N)) w.push_back(1.0 / std::cosh(k * lq));
    return w;
}

std::vector<double> weights_discrete(double qt, int n, int sign, int N) {
    if (!(qt > 0.0)) throw DomainError("weights_discrete: qt must be positive");
    const double lq = std::log(qt);
    std::vector<double> w;
    for (int k : discrete_window(n, sign, N)) {
        const int m = std::abs(k);
        double p = 1.0;
        // odd l from 3 to |m| - n; empty when |m| - n = 1
        for (int l = 3; l <= m - n; l += 2) p *= qint(l - 1, qt) / qint(l - 1 + 2 * n, qt);
        w.push_back(p / std::cosh(m * lq));
    }
    return w;
}

namespace {

double equilibrated_condition(double q, int k) {
    const double a = std::pow(q, k), b = std::pow(q, -k);
    Eigen::Matrix3d M;
    M << 1.0 / q, q, a - b, a, -b, -(q + 1.0 / q), b, -a, q + 1.0 / q;
    for (int pass = 0; pass < 3; ++pass) {
        for (int r = 0; r < 3; ++r) M.row(r) /= M.row(r).cwiseAbs().maxCoeff();
        for (int c = 0; c < 3; ++c) {
            const double s = M.col(c).cwiseAbs().maxCoeff();
            if (s > 0) M.col(c) /= s;
        }
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(M);
    const auto& s = svd.singularValues();
    return s(2) > 0 ? s(0) / s(2) : INFINITY;
}

}  // namespace

Realized realize_xztheta_from_t(const std::vector<cplx>& t_diag, const std::vector<cplx>& t_up,
                                const std::vector<cplx>& t_down, double qt,
                                const std::vector<int>& window) {
    const int d = int(window.size());
    if (int(t_diag.size()) != d || int(t_up.size()) != d || int(t_down.size()) != d)
        throw DomainError("realize_xztheta_from_t: coefficient vectors must match the window");
    Realized r;
    r.X = Mat::Zero(d, d);
    r.Xstar = Mat::Zero(d, d);
    r.Z = Mat::Zero(d, d);
    r.theta = Mat::Zero(d, d);
    const double q = qt, c = q + 1.0 / q;
    auto pos = [&](int k) {
        auto it = std::lower_bound(window.begin(), window.end(), k);
        return (it != window.end() && *it == k) ? int(it - window.begin()) : -1;
    };
    for (int j = 0; j < d; ++j) {
        const int k = window[j];
        r.theta(j, j) = qint(k, q);
        const double cond = equilibrated_condition(q, k);
        if (!std::isfinite(cond) || cond > 1e8) {
            std::ostringstream os;
            os << "realize_xztheta_from_t: ill-conditioned system at n=" << k << " (cond " << cond << ")";
            throw NumericalError(os.str());
        }
        if (cond > r.max_condition) {
            r.max_condition = cond;
            r.worst_ktype = k;
        }
        // closed-form solution of the 3x3 band systems; determinant
        // -(a+b)(c^2+(a-b)^2) never vanishes
        const double a = std::pow(q, k), b = std::pow(q, -k);
        const double S = q * q + 1.0 / (q * q) + a * a + b * b;
        const double P = (a + b) * S;
        if (int i = pos(k); i >= 0) {
            const cplx T = t_diag[j];
            r.X(i, j) = T * c / S;
            r.Xstar(i, j) = T * c / S;
            r.Z(i, j) = T * (a - b) / S;
        }
        if (int i = pos(k + 2); i >= 0) {
            const cplx T = t_up[j];
            r.X(i, j) = T * (q * q + a * a) / P;
            r.Xstar(i, j) = -T * (1.0 / (q * q) + b * b) / P;
            r.Z(i, j) = -T * (a / q + q * b) / P;
        }
        if (int i = pos(k - 2); i >= 0) {
            const cplx T = t_down[j];
            r.X(i, j) = T * (q * q + b * b) / P;
            r.Xstar(i, j) = -T * (1.0 / (q * q) + a * a) / P;
            r.Z(i, j) = T * (b / q + q * a) / P;
        }
    }
    if (!r.X.allFinite() || !r.Xstar.allFinite() || !r.Z.allFinite())
        throw NumericalError("realize_xztheta_from_t: overflow in band solution");
    return r;
}

TruncatedModule build_principal_q(const DeformationPoint& base, int epsilon, cplx lambda, int N) {
    if (is_t_zero(base.t) || is_q_one(base.q) || is_q_one(base.qt))
        throw DomainError("build_principal_q: needs q != 1 and t != 0");
    if (lambda == cplx(0.0)) throw DomainError("build_principal_q: lambda must be nonzero");
    if (N < 2) throw DomainError("build_principal_q: N must be at least 2");
    TruncatedModule m;
    m.family = Family::PrincipalQ;
    m.base = base;
    m.epsilon = epsilon;
    m.lambda = lambda;
    m.N = N;
    m.window = parity_window(epsilon, N);
    m.weights = weights_principal(base.qt, epsilon, N);
    const double qt = base.qt;
    const cplx li = 1.0 / lambda;
    std::vector<cplx> td, tu, tdn;
    for (int k : m.window) {
        td.push_back(lambda + li);
        tu.push_back(lambda * std::pow(qt, 1 + k) - li * std::pow(qt, -1 - k));
        tdn.push_back(lambda * std::pow(qt, 1 - k) - li * std::pow(qt, -1 + k));
    }
    Realized r = realize_xztheta_from_t(td, tu, tdn, qt, m.window);
    m.theta = std::move(r.theta);
    m.X = std::move(r.X);
    m.Xstar = std::move(r.Xstar);
    m.Z = std::move(r.Z);
    return m;
}

TruncatedModule restrict_module(const TruncatedModule& m, const std::vector<int>& positions) {
    TruncatedModule out = m;
    const int d = int(positions.size());
    out.window.clear();
    out.weights.clear();
    for (int p : positions) {
        out.window.push_back(m.window[p]);
        out.weights.push_back(m.weights[p]);
    }
    auto sub = [&](const Mat& A) {
        Mat B(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) B(i, j) = A(positions[i], positions[j]);
        return B;
    };
    out.theta = sub(m.theta);
    out.X = sub(m.X);
    out.Xstar = sub(m.Xstar);
    out.Z = sub(m.Z);
    return out;
}

double leakage(const TruncatedModule& m, const std::vector<int>& cols) {
    std::vector<char> in(m.size(), 0);
    for (int c : cols) in[c] = 1;
    double worst = 0.0;
    for (int c : cols)
        for (int r = 0; r < m.size(); ++r) {
            if (in[r]) continue;
            worst = std::max({worst, std::abs(m.X(r, c)), std::abs(m.Xstar(r, c)), std::abs(m.Z(r, c))});
        }
    return worst;
}

TruncatedModule build_discrete_q(const DeformationPoint& base, int sigma, int n, int sign, int N,
                                 double leak_tol) {
    if (sigma != 1 && sigma != -1) throw DomainError("build_discrete_q: sigma must be +1 or -1");
    if (n < 0) throw DomainError("build_discrete_q: n must be nonnegative");
    if (N < n + 3) throw DomainError("build_discrete_q: window too small for the order");
    const int eps = (n % 2 == 0) ? -1 : 1;
    TruncatedModule full;
    if (is_q_one(base.qt)) {
        if (sigma == -1) throw DomainError("build_discrete_q: sigma = -1 has no classical limit");
        full = build_classical_principal(cplx(n, 0.0), eps, N, base.t);
        full.base = base;
    } else {
        full = build_principal_q(base, eps, sigma * std::pow(base.qt, n), N);
    }
    std::vector<int> pos;
    for (int k : discrete_window(n, sign, N)) pos.push_back(full.index(k));
    const double leak = leakage(full, pos);
    if (!(leak < leak_tol)) {
        std::ostringstream os;
        os << "build_discrete_q: invariance violated, leakage " << leak << " at sigma=" << sigma
           << " n=" << n << " sign=" << sign;
        throw NumericalError(os.str());
    }
    TruncatedModule m = restrict_module(full, pos);
    m.family = Family::DiscreteQ;
    m.order = DiscreteOrder{sigma, n, sign};
    m.weights = weights_discrete(base.qt, n, sign, N);
    return m;
}

TruncatedModule build_classical_principal(cplx lambda, int epsilon, int N, double t) {
    if (N < 2) throw DomainError("build_classical_principal: N must be at least 2");
    TruncatedModule m;
    m.family = Family::ClassicalPrincipal;
    m.base = make_point(1.0, t);
    m.epsilon = epsilon;
    m.lambda = lambda;
    m.N = N;
    m.window = parity_window(epsilon, N);
    m.weights.assign(m.window.size(), 1.0);
    const int d = m.size();
    Mat Ap = Mat::Zero(d, d), Am = Mat::Zero(d, d);
    m.theta = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double k = m.window[i];
        m.theta(i, i) = k;
        // H -+ i(E+F) raise/lower by 2 with coefficient lambda + 1 +- k
        if (i + 1 < d) Ap(i + 1, i) = lambda + 1.0 + k;
        if (i > 0) Am(i - 1, i) = lambda + 1.0 - k;
    }
    const cplx I(0.0, 1.0);
    const Mat H = (Ap + Am) / 2.0;
    const Mat EpF = (Am - Ap) / (2.0 * I);
    const Mat EmF = -I * m.theta;
    const Mat E = (EpF + EmF) / 2.0;
    m.X = H / 2.0;
    m.Z = I * E;
    m.Xstar = -m.X;
    return m;
}

TruncatedModule build_motion(cplx lambda, int epsilon, int N) {
    if (N < 2) throw DomainError("build_motion: N must be at least 2");
    TruncatedModule m;
    m.family = Family::Motion;
    m.base = make_point(1.0, 0.0);
    m.epsilon = epsilon;
    m.lambda = lambda;
    m.N = N;
    m.window = parity_window(epsilon, N);
    m.weights.assign(m.window.size(), 1.0);
    const int d = m.size();
    Mat Tp = Mat::Zero(d, d), Tm = Mat::Zero(d, d);
    m.theta = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        m.theta(i, i) = m.window[i];
        if (i + 1 < d) Tp(i + 1, i) = lambda;
        if (i > 0) Tm(i - 1, i) = lambda;
    }
    m.X = (Tp + Tm) / 4.0;
    m.Z = (Tm - Tp) / 4.0;
    m.Xstar = -m.X;
    return m;
}

TruncatedModule build_groupoid(cplx lambda, int epsilon, int N, double q) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw DomainError("build_groupoid: lambda must lie on the unit circle");
    if (N < 2) throw DomainError("build_groupoid: N must be at least 2");
    TruncatedModule m;
    m.family = Family::Groupoid;
    m.base = make_point(q, 0.0);
    m.epsilon = epsilon;
    m.lambda = lambda;
    m.N = N;
    m.window = parity_window(epsilon, N);
    m.weights.assign(m.window.size(), 1.0);
    const int d = m.size();
    const cplx tv = lambda + 1.0 / lambda, tpm = lambda - 1.0 / lambda;
    Mat T = tv * Mat::Identity(d, d), Tp = Mat::Zero(d, d), Tm = Mat::Zero(d, d);
    m.theta = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        m.theta(i, i) = m.window[i];
        if (i + 1 < d) Tp(i + 1, i) = tpm;
        if (i > 0) Tm(i - 1, i) = tpm;
    }
    m.X = (2.0 * T + Tp + Tm) / 4.0;
    m.Xstar = (2.0 * T - Tp - Tm) / 4.0;
    m.Z = (Tm - Tp) / 4.0;
    return m;
}

std::vector<std::vector<int>> detect_submodules(const TruncatedModule& m, double tol) {
    const int d = m.size();
    std::vector<std::vector<int>> adj(d);
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) {
            if (r == c) continue;
            const double v = std::max({std::abs(m.X(r, c)), std::abs(m.Xstar(r, c)), std::abs(m.Z(r, c))});
            if (v > tol) adj[c].push_back(r);
        }
    std::vector<std::set<int>> closures;
    for (int s = 0; s < d; ++s) {
        std::set<int> seen{s};
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int r : adj[c])
                if (seen.insert(r).second) stack.push_back(r);
        }
        closures.push_back(std::move(seen));
    }
    std::set<std::vector<int>> minimal;
    for (const auto& a : closures) {
        bool is_min = true;
        for (const auto& b : closures)
            if (b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end())) {
                is_min = false;
                break;
            }
        if (is_min) {
            std::vector<int> ks;
            for (int p : a) ks.push_back(m.window[p]);
            minimal.insert(ks);
        }
    }
    return {minimal.begin(), minimal.end()};
}

}  // namespace qsl2r
