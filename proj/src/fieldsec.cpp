#include "qsl2r/fieldsec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "qsl2r/afield.hpp"
#include "qsl2r/modgen.hpp"

namespace qsl2r {

namespace {

const cplx I(0.0, 1.0);

// Lambda on the q-chart: the spectral parameter for q != 1, and its limit
// q^(t Lambda) -> 1 on the q = 1 chart
cplx chart_lambda(const SpectralPoint& s) {
    if (!is_q_one(s.location.q)) return classify(s).Lambda;
    return 1.0;
}

// Lambda as the groupoid and motion representations see it at t = 0
cplx groupoid_lambda(const SpectralPoint& s) {
    if (s.component == Component::Pri) return s.pri_coord;
    if (is_q_one(s.location.q)) return 0.0;
    return double(s.sigma);
}

void add_entry(Mat& A, const Fiber& f, int from, int to, cplx c) {
    const int i = f.index(to), j = f.index(from);
    if (i >= 0 && j >= 0) A(i, j) += c;
}

// the section on an explicit window; the Lambda and qt arguments carry the
// point data so that the discrete side of J can be evaluated independently
Mat section_on(const SectionId& id, const Fiber& f, cplx L, double qt, bool tzero) {
    const int d = int(f.window.size());
    Mat A = Mat::Zero(d, d);
    const int n = id.n;
    if (f.index(n) < 0) return A;
    switch (id.kind) {
        case SectionId::TDiag: add_entry(A, f, n, n, L + 1.0 / L); break;
        case SectionId::TUp:
            if (tzero) add_entry(A, f, n, n + 2, L - 1.0 / L);
            else add_entry(A, f, n, n + 2, std::pow(qt, 1 + n) * L - std::pow(qt, -1 - n) / L);
            break;
        case SectionId::TDown:
            if (tzero) add_entry(A, f, n, n - 2, L - 1.0 / L);
            else add_entry(A, f, n, n - 2, std::pow(qt, 1 - n) * L - std::pow(qt, -1 + n) / L);
            break;
        case SectionId::GroupoidF:
            for (int m : f.window) {
                if ((m - n) % 2 != 0) continue;
                const cplx c = id.profile(L, (m - n) / 2);
                if (c != cplx(0.0)) add_entry(A, f, n, m, c);
            }
            break;
    }
    return A;
}

bool same_chart(const SpectralPoint& a, const SpectralPoint& b) {
    if (a.component != b.component) return false;
    if (a.component == Component::Pri) return a.epsilon == b.epsilon;
    return a.sigma == b.sigma && a.n == b.n && a.sign == b.sign;
}

double spectral_norm(const Mat& A) {
    if (A.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Mat>(A).singularValues()(0);
}

// orthonormal matrix of a sample padded to the union window
Mat padded(const Mat& A, const Fiber& f, const std::vector<int>& all) {
    Mat B = Mat::Zero(all.size(), all.size());
    const Mat O = orthonormal(A, f.weights);
    for (size_t i = 0; i < f.window.size(); ++i)
        for (size_t j = 0; j < f.window.size(); ++j) {
            const auto ri = std::lower_bound(all.begin(), all.end(), f.window[i]) - all.begin();
            const auto cj = std::lower_bound(all.begin(), all.end(), f.window[j]) - all.begin();
            B(ri, cj) = O(i, j);
        }
    return B;
}

}  // namespace

GroupoidProfile default_profile() {
    return [](cplx L, int j) -> cplx {
        const double r = 1.0 + std::norm(L);
        if (j == 0) return (1.0 + L.real()) / r;
        if (j == 1 || j == -1) return L.imag() / r;
        return 0.0;
    };
}

SectionId SectionId::diag(int n) { return {TDiag, n, {}}; }
SectionId SectionId::up(int n) { return {TUp, n, {}}; }
SectionId SectionId::down(int n) { return {TDown, n, {}}; }
SectionId SectionId::groupoid(int n, GroupoidProfile f) { return {GroupoidF, n, std::move(f)}; }

std::string SectionId::name() const {
    const char* k = kind == TDiag ? "T_diag" : kind == TUp ? "T_up" : kind == TDown ? "T_down" : "f.e";
    return std::string(k) + "(" + std::to_string(n) + ")";
}

int Fiber::index(int k) const {
    auto it = std::lower_bound(window.begin(), window.end(), k);
    if (it == window.end() || *it != k) return -1;
    return int(it - window.begin());
}

Fiber fiber(const SpectralPoint& s, int N) {
    validate(s);
    Fiber f;
    const double qt = s.location.qt;
    if (s.component == Component::Pri) {
        f.window = parity_window(s.epsilon, N);
        f.weights = weights_principal(qt, s.epsilon, N);
    } else {
        f.window = discrete_window(s.n, s.sign, N);
        f.weights = weights_discrete(qt, s.n, s.sign, N);
    }
    return f;
}

Mat rank_one(const SpectralPoint& s, int n, int m, int N) {
    const Fiber f = fiber(s, N);
    Mat A = Mat::Zero(f.window.size(), f.window.size());
    add_entry(A, f, n, m, 1.0);
    return A;
}

Mat orthonormal(const Mat& A, const std::vector<double>& weights) {
    Mat B = A;
    for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) B(i, j) *= std::sqrt(weights[i] / weights[j]);
    return B;
}

double operator_norm(const Mat& A, const std::vector<double>& weights) {
    return spectral_norm(orthonormal(A, weights));
}

Mat section_matrix(const SectionId& id, const SpectralPoint& s, int N) {
    const Fiber f = fiber(s, N);
    const bool tzero = is_t_zero(s.location.t);
    if (id.kind == SectionId::GroupoidF) {
        if (!tzero) throw DomainError("section_matrix: groupoid sections live at t = 0");
        if (!id.profile) throw DomainError("section_matrix: missing profile");
        return section_on(id, f, groupoid_lambda(s), 1.0, true);
    }
    return section_on(id, f, chart_lambda(s), s.location.qt, tzero);
}

Mat section_T(const SpectralPoint& s, int n, SectionId::Kind kind, int N) {
    if (kind == SectionId::GroupoidF) throw DomainError("section_T: not a T generator");
    return section_matrix(SectionId{kind, n, {}}, s, N);
}

SectionSample sample_section(const SectionId& id, const std::vector<SpectralPoint>& path,
                             const std::vector<double>& params, int N) {
    if (path.size() != params.size()) throw DomainError("sample_section: path and params differ in length");
    SectionSample out;
    out.id = id;
    out.params = params;
    out.points = path;
    for (const auto& s : path) {
        out.fibers.push_back(fiber(s, N));
        out.blocks.push_back(section_matrix(id, s, N));
    }
    return out;
}

ContinuityReport certify_continuity(const SectionId& id, const std::vector<SpectralPoint>& path,
                                    const std::vector<double>& params, double tol, int N) {
    for (size_t k = 1; k < path.size(); ++k)
        if (!same_chart(path[k - 1], path[k])) throw DomainError("certify_continuity: chart violation");
    const SectionSample smp = sample_section(id, path, params, N);
    std::vector<int> all;
    for (const auto& f : smp.fibers) all.insert(all.end(), f.window.begin(), f.window.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    ContinuityReport r;
    r.section = id.name();
    r.params = params;
    r.tol = tol;
    Mat prev;
    for (size_t k = 0; k < path.size(); ++k) {
        const Mat cur = padded(smp.blocks[k], smp.fibers[k], all);
        r.norms.push_back(spectral_norm(cur));
        double jump = 0.0;
        if (k > 0) {
            jump = spectral_norm(cur - prev);
            const double step = std::abs(params[k] - params[k - 1]);
            if (step > 0.0) r.lipschitz = std::max(r.lipschitz, jump / step);
        }
        r.jumps.push_back(jump);
        r.max_jump = std::max(r.max_jump, jump);
        prev = cur;
    }
    r.pass = r.max_jump <= tol;
    return r;
}

std::string continuity_csv(const ContinuityReport& r) {
    std::ostringstream os;
    os << "path_param,norm,jump,pass\n";
    char buf[128];
    for (size_t k = 0; k < r.params.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.10g,%.12e,%.6e,%d\n", r.params[k], r.norms[k], r.jumps[k],
                      r.jumps[k] <= r.tol ? 1 : 0);
        os << buf;
    }
    return os.str();
}

RefinementReport refine_continuity(const std::string& name, const SectionId& id, const PathFn& path, double a,
                                   double b, int N, const std::vector<int>& samples, double min_slope) {
    RefinementReport r;
    r.name = name;
    for (int m : samples) {
        if (m < 2) throw DomainError("refine_continuity: need at least two samples");
        std::vector<SpectralPoint> pts;
        std::vector<double> ps;
        for (int k = 0; k < m; ++k) {
            const double u = a + (b - a) * k / (m - 1);
            ps.push_back(u);
            pts.push_back(path(u));
        }
        const double h = (b - a) / (m - 1);
        r.finest = certify_continuity(id, pts, ps, std::numeric_limits<double>::infinity(), N);
        r.steps.push_back(h);
        r.max_jumps.push_back(r.finest.max_jump);
    }
    r.slope = loglog_slope(r.steps, r.max_jumps);
    r.finest.tol = r.finest.lipschitz * r.steps.back() * (1.0 + 1e-12);
    r.finest.pass = r.finest.max_jump <= r.finest.tol;
    r.pass = std::isfinite(r.slope) && r.slope >= min_slope;
    return r;
}

std::vector<RefinementReport> reference_paths(int N) {
    std::vector<RefinementReport> out;
    const double pi = std::numbers::pi;
    out.push_back(refine_continuity(
        "even-circle", SectionId::diag(0),
        [](double th) { return SpectralPoint::pri(2.0, 1.0, 1, std::exp(I * th)); }, 0.0, pi, N));
    out.push_back(refine_continuity(
        "pri-t-crossing", SectionId::up(1),
        [](double t) { return SpectralPoint::pri(2.0, t, -1, std::exp(I * 0.7)); }, -1.0, 1.0, N));
    out.push_back(refine_continuity(
        "dis-t-crossing", SectionId::up(2), [](double t) { return SpectralPoint::dis(2.0, t, 1, 1, 1); }, -1.0,
        1.0, N));
    out.push_back(refine_continuity(
        "q-one-chart", SectionId::up(0),
        [](double u) {
            const double q = 1.0 + std::abs(u);
            const cplx lc = 0.7 * I;
            if (is_q_one(q)) return SpectralPoint::pri(1.0, 1.0, 1, lc);
            return SpectralPoint::pri(q, 1.0, 1, pri_chart(q, lc));
        },
        -1.0, 1.0, N));
    out.push_back(refine_continuity(
        "groupoid-circle", SectionId::groupoid(1),
        [](double th) { return SpectralPoint::pri(2.0, 0.0, -1, std::exp(I * th)); }, 0.0, pi, N));
    return out;
}

VanishingReport check_vanishing(const SectionId& id, double q, double t, int n_max) {
    VanishingReport r;
    r.section = id.name();
    const int N = std::max(n_max, std::abs(id.n)) + 4;
    const bool qone = is_q_one(q);
    for (int sigma : {1, -1}) {
        if (sigma == -1 && qone) continue;
        for (int n = 1; n <= n_max; ++n)
            for (int sign : {1, -1}) {
                const SpectralPoint s = SpectralPoint::dis(q, t, sigma, n, sign);
                const Mat A = section_matrix(id, s, N);
                if (classify(s).ktypes.contains(id.n)) {
                    ++r.supported;
                } else {
                    ++r.checked;
                    if (A.size() > 0) r.max_abs = std::max(r.max_abs, A.cwiseAbs().maxCoeff());
                }
            }
    }
    r.pass = r.max_abs == 0.0;
    return r;
}

std::vector<VanishingReport> vanishing_suite(double q, double t, int n_max) {
    std::vector<VanishingReport> out;
    for (int n = -n_max - 2; n <= n_max + 2; ++n) {
        out.push_back(check_vanishing(SectionId::diag(n), q, t, n_max));
        out.push_back(check_vanishing(SectionId::up(n), q, t, n_max));
        out.push_back(check_vanishing(SectionId::down(n), q, t, n_max));
        if (is_t_zero(t)) out.push_back(check_vanishing(SectionId::groupoid(n), q, t, n_max));
    }
    return out;
}

JReport check_J_equivariance(const SectionId& id, double q, int n_max, double tol, double corrupt) {
    JReport r;
    r.section = id.name();
    r.tol = tol;
    const int N = std::max(n_max, std::abs(id.n)) + 4;
    const bool qone = is_q_one(q);
    auto residual = [&](const RMat& Jr, const Mat& src, const Mat& tgt) {
        const Mat J = Jr.cast<cplx>();
        const Mat R = J * src - tgt * J;
        return R.size() ? R.cwiseAbs().maxCoeff() : 0.0;
    };
    for (int sigma : {1, -1}) {
        if (sigma == -1 && qone) continue;
        for (int n = 1; n <= n_max; ++n)
            for (int sign : {1, -1}) {
                const SpectralPoint d = SpectralPoint::dis(q, 0.0, sigma, n, sign);
                const Classification c = classify(d);
                SpectralPoint s;
                if (qone) {
                    s = SpectralPoint::pri(1.0, 0.0, c.parity, 0.0);
                } else {
                    s = SpectralPoint::pri(q, 0.0, c.parity, c.Lambda);
                }
                const RMat J = jmap(d, s, N);
                const Mat tgt = section_matrix(id, d, N) * (1.0 + corrupt);
                r.max_residual = std::max(r.max_residual, residual(J, section_matrix(id, s, N), tgt));
                ++r.pairs;
            }
    }
    // order (0, +-): the two half lines of the odd point at Lambda = +-1,
    // evaluated on their own windows and weights
    if (!qone)
        for (int sigma : {1, -1}) {
            const SpectralPoint s = SpectralPoint::pri(q, 0.0, -1, double(sigma));
            const Mat src = section_matrix(id, s, N);
            for (int sign : {1, -1}) {
                Fiber f;
                f.window = discrete_window(0, sign, N);
                f.weights = weights_discrete(1.0, 0, sign, N);
                const cplx L = double(sigma);
                const Mat tgt = section_on(id, f, L, 1.0, true) * (1.0 + corrupt);
                r.max_residual = std::max(r.max_residual, residual(jmap_matrix(0, sign, -1, N), src, tgt));
                ++r.pairs;
            }
        }
    r.pass = r.max_residual < tol;
    return r;
}

std::vector<JReport> J_suite(double q, int n_max, double tol) {
    std::vector<JReport> out;
    for (int n = -n_max - 2; n <= n_max + 2; ++n) {
        out.push_back(check_J_equivariance(SectionId::diag(n), q, n_max, tol));
        out.push_back(check_J_equivariance(SectionId::up(n), q, n_max, tol));
        out.push_back(check_J_equivariance(SectionId::down(n), q, n_max, tol));
        out.push_back(check_J_equivariance(SectionId::groupoid(n), q, n_max, tol));
    }
    return out;
}

BlockReport check_block_diagonal(const std::vector<std::pair<double, double>>& locations, int n_max, double tol) {
    BlockReport r;
    r.tol = tol;
    const int N = n_max + 4;
    for (const auto& [q, t] : locations) {
        if (is_q_one(q) || is_t_zero(t)) throw DomainError("check_block_diagonal: needs q != 1 and t != 0");
        for (int sigma : {1, -1}) {
            const SpectralPoint s = SpectralPoint::pri(q, t, -1, double(sigma));
            const Fiber f = fiber(s, N);
            const auto blocks = constraint_blocks(s, N);
            std::vector<int> block_of(f.window.size(), -1);
            for (size_t b = 0; b < blocks.size(); ++b)
                for (int k : blocks[b]) block_of[f.index(k)] = int(b);
            ++r.points;
            for (int n = -n_max; n <= n_max; ++n)
                for (auto kind : {SectionId::TDiag, SectionId::TUp, SectionId::TDown}) {
                    const Mat A = section_T(s, n, kind, N);
                    for (int i = 0; i < A.rows(); ++i)
                        for (int j = 0; j < A.cols(); ++j)
                            if (block_of[i] != block_of[j]) r.max_residual = std::max(r.max_residual, std::abs(A(i, j)));
                }
        }
    }
    r.pass = r.max_residual < tol;
    return r;
}

double fiber_sup_norm(const SectionId& id, double q, double t, int res, int n_max, int N) {
    double sup = 0.0;
    auto take = [&](const SpectralPoint& s) {
        sup = std::max(sup, operator_norm(section_matrix(id, s, N), fiber(s, N).weights));
    };
    const bool qone = is_q_one(q);
    for (int eps : {1, -1}) {
        for (cplx l : qone ? imaginary_grid(res) : unit_grid(res)) take(SpectralPoint::pri(q, t, eps, l));
    }
    for (int sigma : {1, -1}) {
        if (sigma == -1 && qone) continue;
        for (int n = 1; n <= n_max; ++n)
            for (int sign : {1, -1}) take(SpectralPoint::dis(q, t, sigma, n, sign));
    }
    return sup;
}

}  // namespace qsl2r
