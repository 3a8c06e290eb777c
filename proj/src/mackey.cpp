#include "qsl2r/mackey.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qsl2r/modgen.hpp"

namespace qsl2r {

namespace {

std::vector<double> reference_weights(const SpectralPoint& s, double q_ref, int N) {
    if (s.component == Component::Pri) return weights_principal(q_ref, s.epsilon, N);
    return weights_discrete(q_ref, s.n, s.sign, N);
}

Mat section_of(const GroupoidGen& g, const SpectralPoint& s, int N) {
    switch (g.f) {
        case GroupoidGen::One: return rank_one(s, g.n, g.n, N);
        case GroupoidGen::T: return section_T(s, g.n, SectionId::TDiag, N);
        case GroupoidGen::TPlus: return section_T(s, g.n, SectionId::TUp, N);
        case GroupoidGen::TMinus: return section_T(s, g.n, SectionId::TDown, N);
    }
    return {};
}

bool is_pm_one(cplx l) { return std::abs(l.imag()) < 1e-15; }

int sigma_of(cplx l) { return l.real() > 0.0 ? 1 : -1; }

}  // namespace

RMat v_isometry(const SpectralPoint& s, double q_ref, int N) {
    if (!(q_ref > 0.0)) throw DomainError("v_isometry: reference q must be positive");
    const Fiber f = fiber(s, N);
    const std::vector<double> w = reference_weights(s, q_ref, N);
    RMat v = RMat::Zero(f.window.size(), f.window.size());
    for (size_t i = 0; i < f.window.size(); ++i) v(i, i) = std::sqrt(f.weights[i] / w[i]);
    return v;
}

std::string GroupoidGen::name() const {
    const char* k = f == One ? "e" : f == T ? "T.e" : f == TPlus ? "T+.e" : "T-.e";
    return std::string(k) + "(" + std::to_string(n) + ")";
}

SpectralPoint gamma_t(const SpectralPoint& s1, double t) {
    if (is_q_one(s1.location.q)) throw DomainError("gamma_t: needs q != 1");
    if (std::abs(s1.location.t - 1.0) > 1e-14) throw DomainError("gamma_t: source must lie in S_{q,1}");
    if (s1.component == Component::Pri) return SpectralPoint::pri(s1.location.q, t, s1.epsilon, s1.pri_coord);
    return SpectralPoint::dis(s1.location.q, t, s1.sigma, s1.n, s1.sign);
}

Mat alpha_t_image(const GroupoidGen& g, const SpectralPoint& s1, double t, int N) {
    const SpectralPoint st = gamma_t(s1, t);
    const Mat A = section_of(g, st, N);
    const RMat v = v_isometry(st, s1.location.q, N);
    Mat B = A;
    for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) B(i, j) *= v(i, i) / v(j, j);
    return B;
}

Mat alpha_t_image(const GroupoidGen& g, double q, double t, cplx Lambda, int parity, int N) {
    if (is_q_one(q)) throw DomainError("alpha_t_image: needs q != 1");
    return alpha_t_image(g, SpectralPoint::pri(q, 1.0, parity, Lambda), t, N);
}

double morphism_residual(const std::vector<SpectralPoint>& points, double t, int N, int margin) {
    double worst = 0.0;
    for (const auto& s : points) {
        const double qt = std::exp(t * std::log(s.location.q));
        for (int n = -(N - margin); n <= N - margin; ++n) {
            const Mat up = alpha_t_image({GroupoidGen::TPlus, n}, s, t, N);
            const Mat down = alpha_t_image({GroupoidGen::TMinus, n + 2}, s, t, N);
            const Mat T = alpha_t_image({GroupoidGen::T, n}, s, t, N);
            const Mat e = alpha_t_image({GroupoidGen::One, n}, s, t, N);
            const double a = std::pow(qt, n + 1);
            const double c = (a + 1.0 / a) * (a + 1.0 / a);
            const Mat R = down * up - (T * T - c * e);
            if (R.size() == 0) continue;
            worst = std::max(worst, R.cwiseAbs().maxCoeff() / std::max(1.0, c));
        }
    }
    return worst;
}

SpectrumPoint mu(const SpectrumPoint& x) {
    switch (x.kind) {
        case LabelKind::PrincipalQ:
            if (!is_pm_one(x.lambda)) return SpectrumPoint::groupoid_cont(x.lambda, x.epsilon);
            if (x.epsilon == -1) throw DomainError("mu: PrincipalQ(-1, +-1) is not in the spectrum");
            return SpectrumPoint::groupoid_char(sigma_of(x.lambda), 0);
        case LabelKind::DiscreteQ: return SpectrumPoint::groupoid_char(x.sigma, x.sign * (x.n + 1));
        default: throw DomainError("mu: expects a QReduced label");
    }
}

std::vector<SpectrumPoint> pullback_decomposition(const SpectrumPoint& x, int n_max) {
    std::vector<SpectrumPoint> out;
    const int M = n_max + 1;
    switch (x.kind) {
        case LabelKind::PrincipalQ:
            if (!is_pm_one(x.lambda)) return {SpectrumPoint::groupoid_cont(x.lambda, x.epsilon)};
            if (x.epsilon == -1) throw DomainError("pullback_decomposition: PrincipalQ(-1, +-1) is reducible");
            for (int m = -M; m <= M; ++m)
                if (m % 2 == 0) out.push_back(SpectrumPoint::groupoid_char(sigma_of(x.lambda), m));
            return out;
        case LabelKind::DiscreteQ:
            for (int m = -M; m <= M; ++m)
                if ((m - x.n) % 2 != 0 && x.sign * m > x.n) out.push_back(SpectrumPoint::groupoid_char(x.sigma, m));
            return out;
        default: throw DomainError("pullback_decomposition: expects a QReduced label");
    }
}

std::string MuTable::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& [a, b] : rows) j.push_back({a.label(), b.label()});
    return j.dump();
}

MuTable mu_table(double q, int res, int n_max) {
    MuTable t;
    t.q = q;
    t.n_max = n_max;
    for (const auto& x : enumerate_spectrum(Algebra::QReduced, q, 1.0, res, n_max)) t.rows.push_back({x, mu(x)});
    return t;
}

MuTable mu_by_induction(double q, int res, int n_max) {
    const auto src = enumerate_spectrum(Algebra::QReduced, q, 1.0, res, n_max);
    std::vector<std::vector<SpectrumPoint>> pulls;
    for (const auto& x : src) {
        auto p = pullback_decomposition(x, n_max);
        std::sort(p.begin(), p.end());
        pulls.push_back(std::move(p));
    }
    std::vector<int> assigned(src.size(), -1);
    std::vector<SpectrumPoint> image(src.size());
    // labels whose pullback is irreducible
    for (size_t i = 0; i < src.size(); ++i)
        if (pulls[i].size() == 1 && pulls[i][0].kind == LabelKind::GroupoidCont) {
            image[i] = pulls[i][0];
            assigned[i] = 1;
        }
    auto chars = enumerate_spectrum(Algebra::Groupoid, q, 0.0, res, n_max);
    chars.erase(std::remove_if(chars.begin(), chars.end(),
                               [](const SpectrumPoint& c) { return c.kind != LabelKind::GroupoidChar; }),
                chars.end());
    std::stable_sort(chars.begin(), chars.end(), [](const SpectrumPoint& a, const SpectrumPoint& b) {
        return std::make_tuple(std::abs(a.m), a.sigma, a.m) < std::make_tuple(std::abs(b.m), b.sigma, b.m);
    });
    for (const auto& c : chars) {
        int found = -1, count = 0;
        for (size_t i = 0; i < src.size(); ++i) {
            if (assigned[i] >= 0) continue;
            if (std::binary_search(pulls[i].begin(), pulls[i].end(), c)) {
                found = int(i);
                ++count;
            }
        }
        if (count != 1)
            throw NumericalError("mu_by_induction: " + std::to_string(count) + " candidates for " + c.label());
        image[found] = c;
        assigned[found] = 1;
    }
    MuTable t;
    t.q = q;
    t.n_max = n_max;
    for (size_t i = 0; i < src.size(); ++i) {
        if (assigned[i] < 0) throw NumericalError("mu_by_induction: " + src[i].label() + " left unassigned");
        t.rows.push_back({src[i], image[i]});
    }
    return t;
}

bool MuReport::pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const MuCheck& c) { return c.pass; });
}

std::string MuReport::to_csv() const {
    std::ostringstream os;
    os << "check,pass,detail\n";
    for (const auto& c : checks) os << c.id << "," << (c.pass ? 1 : 0) << "," << c.detail << "\n";
    return os.str();
}

MuReport verify_mu(double q, int n_max, int res) {
    if (is_q_one(q)) throw DomainError("verify_mu: needs q != 1");
    if (n_max < 2) throw DomainError("verify_mu: n_max must be >= 2 for the witness");
    const auto start = std::chrono::steady_clock::now();
    MuReport rep;
    rep.q = q;
    rep.n_max = n_max;
    rep.res = res;
    const MuTable table = mu_table(q, res, n_max);

    {  // (a) bijectivity
        std::vector<SpectrumPoint> img;
        for (const auto& r : table.rows) img.push_back(r.second);
        std::sort(img.begin(), img.end());
        const bool distinct = std::adjacent_find(img.begin(), img.end()) == img.end();
        auto target = enumerate_spectrum(Algebra::Groupoid, q, 0.0, res, n_max);
        std::sort(target.begin(), target.end());
        const bool onto = img == target;
        rep.checks.push_back({"bijection", distinct && onto,
                              std::to_string(img.size()) + " labels onto " + std::to_string(target.size())});
    }
    {  // (b) inductive re-derivation
        MuCheck c{"induction", false, ""};
        try {
            const MuTable ind = mu_by_induction(q, res, n_max);
            std::map<SpectrumPoint, SpectrumPoint> a(table.rows.begin(), table.rows.end());
            int diff = 0;
            for (const auto& [x, y] : ind.rows)
                if (!(a.at(x) == y)) ++diff;
            c.pass = diff == 0 && ind.rows.size() == table.rows.size();
            c.detail = std::to_string(diff) + " mismatches";
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        rep.checks.push_back(c);
    }
    {  // (c) minimal K-types
        int bad = 0;
        for (const auto& [x, y] : table.rows)
            if (x.min_ktypes() != y.min_ktypes()) ++bad;
        rep.checks.push_back({"min_ktypes", bad == 0, std::to_string(bad) + " violations"});
    }
    {  // containment and multiplicities of the characters across pullbacks
        int bad = 0;
        std::map<SpectrumPoint, int> mult;
        for (const auto& [x, y] : table.rows) {
            const auto p = pullback_decomposition(x, n_max);
            if (std::find(p.begin(), p.end(), y) == p.end()) ++bad;
            for (const auto& c : p)
                if (c.kind == LabelKind::GroupoidChar) ++mult[c];
        }
        rep.checks.push_back({"containment", bad == 0, std::to_string(bad) + " violations"});
        int mbad = 0;
        for (const auto& [c, k] : mult)
            if (k != std::abs(c.m) / 2 + 1) ++mbad;
        rep.checks.push_back({"multiplicity", mbad == 0 && int(mult.size()) == 2 * (2 * n_max + 3),
                              std::to_string(mult.size()) + " characters, " + std::to_string(mbad) + " off"});
    }
    const ClosureGraph gq = closure_graph(Algebra::QReduced, q, 1.0, n_max, res);
    const ClosureGraph gg = closure_graph(Algebra::Groupoid, q, 0.0, n_max, res);
    {  // (d) continuity along closure edges: mu(b) lies in the closure of
       // mu applied to the family of a
        auto family = [](const SpectrumPoint& x) {
            return x.kind == LabelKind::PrincipalQ ? x.epsilon : 0;
        };
        std::map<int, std::set<int>> fam_closure;
        for (const auto& x : gq.nodes) {
            const int f = family(x);
            if (f == 0) continue;
            const int i = gg.find(mu(x));
            fam_closure[f].insert(i);
            for (int j : gg.successors(i)) fam_closure[f].insert(j);
        }
        int bad = 0;
        for (const auto& [a, b] : gq.edges) {
            const SpectrumPoint ma = mu(gq.nodes[a]), mb = mu(gq.nodes[b]);
            const int ib = gg.find(mb), ia = gg.find(ma);
            const int f = family(gq.nodes[a]);
            bool ok = false;
            if (f != 0) ok = fam_closure[f].count(ib) > 0;
            else ok = ia == ib || gg.has_edge(ma, mb);
            if (!ok) ++bad;
        }
        rep.checks.push_back(
            {"continuity", bad == 0 && !gq.edges.empty(),
             std::to_string(gq.edges.size()) + " edges, " + std::to_string(bad) + " violations"});
    }
    {  // (e) the inverse is not continuous
        rep.witness_char = SpectrumPoint::groupoid_char(1, 3);
        rep.witness_source = SpectrumPoint::discrete_q(1, 2, 1);
        const int ic = gg.find(rep.witness_char);
        bool in_closure = false;
        for (int p : gg.predecessors(ic))
            if (gg.nodes[p].kind == LabelKind::GroupoidCont) in_closure = true;
        const int is = gq.find(rep.witness_source);
        const bool isolated = is >= 0 && gq.predecessors(is).empty() && gq.successors(is).empty();
        const bool maps = mu(rep.witness_source) == rep.witness_char;
        rep.checks.push_back({"inverse_discontinuity", in_closure && isolated && maps,
                              rep.witness_char.label() + " in closure of GroupoidCont; " +
                                  rep.witness_source.label() + (isolated ? " isolated" : " not isolated")});
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace qsl2r
