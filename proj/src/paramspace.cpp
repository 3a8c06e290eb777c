#include "qsl2r/paramspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qsl2r {

namespace {

int parity_of(int k) { return (std::abs(k) % 2 == 0) ? 1 : -1; }

void check_pm(int v, const char* what) {
    if (v != 1 && v != -1) throw DomainError(std::string(what) + " must be +1 or -1");
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", std::abs(x) < 1e-15 ? 0.0 : x);
    return buf;
}

std::string cnum(cplx c) { return num(c.real()) + "," + num(c.imag()); }

const char* pm(int s) { return s > 0 ? "+" : "-"; }

}  // namespace

KTypeSet KTypeSet::full(int parity) {
    check_pm(parity, "parity");
    KTypeSet k;
    k.kind = Full;
    k.parity = parity;
    return k;
}

KTypeSet KTypeSet::half(int parity, int n, int sign) {
    check_pm(parity, "parity");
    check_pm(sign, "sign");
    KTypeSet k;
    k.kind = Half;
    k.parity = parity;
    k.n = n;
    k.sign = sign;
    return k;
}

KTypeSet KTypeSet::single(int m) {
    KTypeSet k;
    k.kind = Single;
    k.parity = parity_of(m);
    k.m = m;
    return k;
}

bool KTypeSet::contains(int k) const {
    switch (kind) {
        case Full: return parity_of(k) == parity;
        case Half: return parity_of(k) == parity && sign * k > n;
        case Single: return k == m;
    }
    return false;
}

std::vector<int> KTypeSet::truncate(int N) const {
    std::vector<int> out;
    for (int k = -N; k <= N; ++k)
        if (contains(k)) out.push_back(k);
    return out;
}

std::vector<int> KTypeSet::minimal() const {
    switch (kind) {
        case Full: return parity == 1 ? std::vector<int>{0} : std::vector<int>{-1, 1};
        case Half: {
            int a = n + 1;
            if (parity_of(a) != parity) ++a;
            return {sign * a};
        }
        case Single: return {m};
    }
    return {};
}

SpectralPoint SpectralPoint::pri(double q, double t, int epsilon, cplx lambda) {
    SpectralPoint s;
    s.component = Component::Pri;
    s.location = make_point(q, t);
    s.epsilon = epsilon;
    s.pri_coord = lambda;
    validate(s);
    return s;
}

SpectralPoint SpectralPoint::dis(double q, double t, int sigma, int n, int sign) {
    SpectralPoint s;
    s.component = Component::Dis;
    s.location = make_point(q, t);
    s.sigma = sigma;
    s.n = n;
    s.sign = sign;
    validate(s);
    return s;
}

void validate(const SpectralPoint& s) {
    if (!(s.location.q > 0.0)) throw DomainError("spectral point: q must be positive");
    const bool qone = is_q_one(s.location.q);
    if (s.component == Component::Pri) {
        check_pm(s.epsilon, "epsilon");
        const cplx l = s.pri_coord;
        if (qone) {
            if (std::abs(l.real()) > 1e-14 || l.imag() < 0.0)
                throw DomainError("spectral point: at q = 1 the principal coordinate lies in iR_+");
        } else {
            if (std::abs(std::abs(l) - 1.0) > 1e-12 || l.imag() < -1e-15)
                throw DomainError("spectral point: the principal coordinate lies in U_+");
        }
    } else {
        check_pm(s.sigma, "sigma");
        check_pm(s.sign, "sign");
        if (s.n < 1) throw DomainError("spectral point: discrete order n must be >= 1");
        if (qone && s.sigma == -1) throw DomainError("spectral point: Dis with sigma = -1 needs q != 1");
    }
}

Classification classify(const SpectralPoint& s) {
    validate(s);
    Classification c;
    const double q = s.location.q, t = s.location.t;
    const bool qone = is_q_one(q), tzero = is_t_zero(t);
    if (s.component == Component::Pri) {
        if (!qone) c.Lambda = s.pri_coord;
        else if (!tzero) c.Lambda = s.pri_coord / t;
        else c.Lambda = s.pri_coord;  // lambda/t is undefined at t = 0
        c.parity = s.epsilon;
        c.ktypes = KTypeSet::full(s.epsilon);
    } else {
        if (!qone) c.Lambda = double(s.sigma) * std::exp(s.n * t * std::log(q));
        else if (!tzero) c.Lambda = double(s.n);
        else c.Lambda = 0.0;
        c.parity = (s.n % 2 == 0) ? -1 : 1;
        c.ktypes = KTypeSet::half(c.parity, s.n, s.sign);
    }
    return c;
}

bool is_real_lambda(cplx L) { return std::abs(L.imag()) <= 1e-14 * std::max(1.0, std::abs(L)); }

std::vector<std::vector<int>> constraint_blocks(const SpectralPoint& s, int N) {
    const Classification c = classify(s);
    const bool tzero = is_t_zero(s.location.t);
    const bool real = is_real_lambda(c.Lambda);
    std::vector<std::vector<int>> out;
    if (s.component == Component::Pri && c.parity == -1 && !tzero && real) {
        out.push_back(KTypeSet::half(-1, 0, -1).truncate(N));
        out.push_back(KTypeSet::half(-1, 0, 1).truncate(N));
    } else if (tzero && real) {
        for (int k : c.ktypes.truncate(N)) out.push_back({k});
    } else {
        out.push_back(c.ktypes.truncate(N));
    }
    return out;
}

RMat jmap_matrix(int n, int sign, int parity, int N) {
    check_pm(parity, "parity");
    const KTypeSet target = KTypeSet::half(parity, n, sign);
    const std::vector<int> rows = target.truncate(N), cols = KTypeSet::full(parity).truncate(N);
    RMat J = RMat::Zero(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            if (rows[i] == cols[j]) J(i, j) = 1.0;
    return J;
}

RMat jmap(const SpectralPoint& target, const SpectralPoint& source, int N) {
    if (target.component != Component::Dis || source.component != Component::Pri)
        throw DomainError("jmap: needs a discrete target and a continuous source");
    if (!is_t_zero(target.location.t) || !is_t_zero(source.location.t))
        throw DomainError("jmap: both points must sit at t = 0");
    if (std::abs(target.location.q - source.location.q) > 1e-14 * target.location.q)
        throw DomainError("jmap: points at different locations");
    const Classification a = classify(target), b = classify(source);
    if (std::abs(a.Lambda - b.Lambda) > 1e-12 || a.parity != b.parity)
        throw DomainError("jmap: Lambda and parity must agree");
    return jmap_matrix(target.n, target.sign, a.parity, N);
}

std::string algebra_name(Algebra a) {
    switch (a) {
        case Algebra::QReduced: return "QReduced";
        case Algebra::Groupoid: return "Groupoid";
        case Algebra::ClassicalReduced: return "ClassicalReduced";
        case Algebra::Motion: return "Motion";
    }
    return "?";
}

std::string SpectrumPoint::label() const {
    switch (kind) {
        case LabelKind::PrincipalQ: return "PrincipalQ(" + std::to_string(epsilon) + "," + cnum(lambda) + ")";
        case LabelKind::DiscreteQ:
            return "DiscreteQ(" + std::to_string(sigma) + "," + std::to_string(n) + "," + pm(sign) + ")";
        case LabelKind::GroupoidCont: return "GroupoidCont(" + cnum(lambda) + "," + std::to_string(epsilon) + ")";
        case LabelKind::GroupoidChar: return "GroupoidChar(" + std::to_string(sigma) + "," + std::to_string(m) + ")";
        case LabelKind::ClassicalPrincipal:
            return "ClassicalPrincipal(" + std::to_string(epsilon) + "," + cnum(lambda) + ")";
        case LabelKind::ClassicalDiscrete: return "ClassicalDiscrete(" + std::to_string(n) + "," + pm(sign) + ")";
        case LabelKind::MotionCont: return "MotionCont(" + cnum(lambda) + "," + std::to_string(epsilon) + ")";
        case LabelKind::MotionChar: return "MotionChar(" + std::to_string(m) + ")";
    }
    return "?";
}

KTypeSet SpectrumPoint::ktypes() const {
    switch (kind) {
        case LabelKind::PrincipalQ:
        case LabelKind::GroupoidCont:
        case LabelKind::ClassicalPrincipal:
        case LabelKind::MotionCont: return KTypeSet::full(epsilon);
        case LabelKind::DiscreteQ:
        case LabelKind::ClassicalDiscrete: return KTypeSet::half((n % 2 == 0) ? -1 : 1, n, sign);
        case LabelKind::GroupoidChar:
        case LabelKind::MotionChar: return KTypeSet::single(m);
    }
    return {};
}

std::vector<int> SpectrumPoint::min_ktypes() const { return ktypes().minimal(); }

namespace {
auto key(const SpectrumPoint& x) {
    return std::make_tuple(int(x.algebra), int(x.kind), x.epsilon, x.sigma, x.n, x.sign, x.m, x.lambda.real(),
                           x.lambda.imag());
}
}  // namespace

bool SpectrumPoint::operator==(const SpectrumPoint& o) const { return key(*this) == key(o); }
bool SpectrumPoint::operator<(const SpectrumPoint& o) const { return key(*this) < key(o); }

SpectrumPoint SpectrumPoint::principal_q(int eps, cplx lambda) {
    check_pm(eps, "epsilon");
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12 || lambda.imag() < -1e-15)
        throw DomainError("PrincipalQ: lambda must lie in U_+");
    if (eps == -1 && std::abs(lambda.imag()) < 1e-15)
        throw DomainError("PrincipalQ(-1, +-1) is not in the spectrum");
    SpectrumPoint x;
    x.algebra = Algebra::QReduced;
    x.kind = LabelKind::PrincipalQ;
    x.epsilon = eps;
    x.lambda = lambda;
    return x;
}

SpectrumPoint SpectrumPoint::discrete_q(int sigma, int n, int sign) {
    check_pm(sigma, "sigma");
    check_pm(sign, "sign");
    if (n < 0) throw DomainError("DiscreteQ: n must be >= 0");
    SpectrumPoint x;
    x.algebra = Algebra::QReduced;
    x.kind = LabelKind::DiscreteQ;
    x.sigma = sigma;
    x.n = n;
    x.sign = sign;
    x.epsilon = (n % 2 == 0) ? -1 : 1;
    return x;
}

SpectrumPoint SpectrumPoint::groupoid_cont(cplx lambda, int eps) {
    check_pm(eps, "epsilon");
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12 || lambda.imag() < 1e-15)
        throw DomainError("GroupoidCont: lambda must lie in U_+ minus {-1,1}");
    SpectrumPoint x;
    x.algebra = Algebra::Groupoid;
    x.kind = LabelKind::GroupoidCont;
    x.epsilon = eps;
    x.lambda = lambda;
    return x;
}

SpectrumPoint SpectrumPoint::groupoid_char(int sigma, int m) {
    check_pm(sigma, "sigma");
    SpectrumPoint x;
    x.algebra = Algebra::Groupoid;
    x.kind = LabelKind::GroupoidChar;
    x.sigma = sigma;
    x.m = m;
    x.epsilon = parity_of(m);
    return x;
}

SpectrumPoint SpectrumPoint::classical_principal(int eps, cplx lambda) {
    check_pm(eps, "epsilon");
    if (std::abs(lambda.real()) > 1e-14 || lambda.imag() < 0.0)
        throw DomainError("ClassicalPrincipal: lambda must lie in iR_+");
    if (eps == -1 && lambda.imag() == 0.0) throw DomainError("ClassicalPrincipal(-1, 0) is reducible");
    SpectrumPoint x;
    x.algebra = Algebra::ClassicalReduced;
    x.kind = LabelKind::ClassicalPrincipal;
    x.epsilon = eps;
    x.lambda = lambda;
    return x;
}

SpectrumPoint SpectrumPoint::classical_discrete(int n, int sign) {
    check_pm(sign, "sign");
    if (n < 0) throw DomainError("ClassicalDiscrete: n must be >= 0");
    SpectrumPoint x;
    x.algebra = Algebra::ClassicalReduced;
    x.kind = LabelKind::ClassicalDiscrete;
    x.n = n;
    x.sign = sign;
    x.epsilon = (n % 2 == 0) ? -1 : 1;
    return x;
}

SpectrumPoint SpectrumPoint::motion_cont(cplx lambda, int eps) {
    check_pm(eps, "epsilon");
    if (std::abs(lambda.real()) > 1e-14 || !(lambda.imag() > 0.0))
        throw DomainError("MotionCont: lambda must lie in iR_+^*");
    SpectrumPoint x;
    x.algebra = Algebra::Motion;
    x.kind = LabelKind::MotionCont;
    x.epsilon = eps;
    x.lambda = lambda;
    return x;
}

SpectrumPoint SpectrumPoint::motion_char(int m) {
    SpectrumPoint x;
    x.algebra = Algebra::Motion;
    x.kind = LabelKind::MotionChar;
    x.m = m;
    x.epsilon = parity_of(m);
    return x;
}

std::vector<cplx> unit_grid(int res) {
    if (res < 3) throw DomainError("unit_grid: resolution must be at least 3");
    std::vector<cplx> g;
    for (int j = 0; j < res; ++j) {
        if (j == 0) g.push_back(1.0);
        else if (j == res - 1) g.push_back(-1.0);
        else g.push_back(std::polar(1.0, std::numbers::pi * j / (res - 1)));
    }
    return g;
}

std::vector<cplx> imaginary_grid(int res, double nu_max) {
    if (res < 2) throw DomainError("imaginary_grid: resolution must be at least 2");
    std::vector<cplx> g;
    for (int j = 0; j < res; ++j) g.push_back(cplx(0.0, nu_max * j / (res - 1)));
    return g;
}

std::vector<SpectrumPoint> enumerate_spectrum(Algebra algebra, double q, double /*t*/, int res, int n_max) {
    if (n_max < 0) throw DomainError("enumerate_spectrum: n_max must be >= 0");
    const bool qone = is_q_one(q);
    std::vector<SpectrumPoint> out;
    switch (algebra) {
        case Algebra::QReduced: {
            if (qone) throw DomainError("enumerate_spectrum: QReduced needs q != 1");
            const auto g = unit_grid(res);
            for (int eps : {1, -1})
                for (size_t j = 0; j < g.size(); ++j) {
                    if (eps == -1 && (j == 0 || j + 1 == g.size())) continue;
                    out.push_back(SpectrumPoint::principal_q(eps, g[j]));
                }
            for (int sigma : {1, -1})
                for (int n = 0; n <= n_max; ++n)
                    for (int sign : {1, -1}) out.push_back(SpectrumPoint::discrete_q(sigma, n, sign));
            break;
        }
        case Algebra::Groupoid: {
            if (qone) throw DomainError("enumerate_spectrum: Groupoid needs q != 1");
            const auto g = unit_grid(res);
            for (int eps : {1, -1})
                for (size_t j = 1; j + 1 < g.size(); ++j) out.push_back(SpectrumPoint::groupoid_cont(g[j], eps));
            for (int sigma : {1, -1})
                for (int m = -(n_max + 1); m <= n_max + 1; ++m) out.push_back(SpectrumPoint::groupoid_char(sigma, m));
            break;
        }
        case Algebra::ClassicalReduced: {
            if (!qone) throw DomainError("enumerate_spectrum: ClassicalReduced needs q = 1");
            const auto g = imaginary_grid(res);
            for (int eps : {1, -1})
                for (size_t j = 0; j < g.size(); ++j) {
                    if (eps == -1 && j == 0) continue;
                    out.push_back(SpectrumPoint::classical_principal(eps, g[j]));
                }
            for (int n = 0; n <= n_max; ++n)
                for (int sign : {1, -1}) out.push_back(SpectrumPoint::classical_discrete(n, sign));
            break;
        }
        case Algebra::Motion: {
            if (!qone) throw DomainError("enumerate_spectrum: Motion needs q = 1");
            const auto g = imaginary_grid(res);
            for (int eps : {1, -1})
                for (size_t j = 1; j < g.size(); ++j) out.push_back(SpectrumPoint::motion_cont(g[j], eps));
            for (int m = -(n_max + 1); m <= n_max + 1; ++m) out.push_back(SpectrumPoint::motion_char(m));
            break;
        }
    }
    return out;
}

std::pair<SpectralPoint, std::vector<int>> locate(const SpectrumPoint& x, double q, int N) {
    if (is_q_one(q)) throw DomainError("locate: needs q != 1");
    auto pick = [&](const SpectralPoint& s, auto pred) {
        for (auto& b : constraint_blocks(s, N))
            if (pred(b)) return std::make_pair(s, b);
        throw DomainError("locate: no block carries " + x.label());
    };
    switch (x.kind) {
        case LabelKind::PrincipalQ: {
            const auto s = SpectralPoint::pri(q, 1.0, x.epsilon, x.lambda);
            return pick(s, [](const std::vector<int>&) { return true; });
        }
        case LabelKind::DiscreteQ: {
            if (x.n == 0) {
                const auto s = SpectralPoint::pri(q, 1.0, -1, double(x.sigma));
                return pick(s, [&](const std::vector<int>& b) { return !b.empty() && x.sign * b.front() > 0; });
            }
            const auto s = SpectralPoint::dis(q, 1.0, x.sigma, x.n, x.sign);
            return pick(s, [](const std::vector<int>&) { return true; });
        }
        case LabelKind::GroupoidCont: {
            const auto s = SpectralPoint::pri(q, 0.0, x.epsilon, x.lambda);
            return pick(s, [](const std::vector<int>&) { return true; });
        }
        case LabelKind::GroupoidChar: {
            const auto s = SpectralPoint::pri(q, 0.0, x.epsilon, double(x.sigma));
            return pick(s, [&](const std::vector<int>& b) { return b.size() == 1 && b[0] == x.m; });
        }
        default: throw DomainError("locate: only QReduced and Groupoid labels are located");
    }
}

SpectrumPoint block_label(const SpectralPoint& s, const std::vector<int>& block) {
    if (block.empty()) throw DomainError("block_label: empty block");
    const Classification c = classify(s);
    const bool tzero = is_t_zero(s.location.t);
    if (s.component == Component::Dis) {
        if (!tzero) return SpectrumPoint::discrete_q(s.sigma, s.n, s.sign);
        return SpectrumPoint::groupoid_char(int(std::lround(c.Lambda.real())), block[0]);
    }
    const bool split = constraint_blocks(s, 1).size() > 1 || (tzero && is_real_lambda(c.Lambda));
    if (!tzero) {
        if (!split) return SpectrumPoint::principal_q(s.epsilon, s.pri_coord);
        return SpectrumPoint::discrete_q(int(std::lround(c.Lambda.real())), 0, block.front() > 0 ? 1 : -1);
    }
    if (!split) return SpectrumPoint::groupoid_cont(s.pri_coord, s.epsilon);
    if (block.size() != 1) throw DomainError("block_label: expected a singleton block");
    return SpectrumPoint::groupoid_char(int(std::lround(c.Lambda.real())), block[0]);
}

int ClosureGraph::find(const SpectrumPoint& x) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    if (it == nodes.end() || !(*it == x)) return -1;
    return int(it - nodes.begin());
}

bool ClosureGraph::has_edge(const SpectrumPoint& a, const SpectrumPoint& b) const {
    const int i = find(a), j = find(b);
    if (i < 0 || j < 0) return false;
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

std::vector<int> ClosureGraph::successors(int i) const {
    std::vector<int> out;
    for (auto [a, b] : edges)
        if (a == i) out.push_back(b);
    return out;
}

std::vector<int> ClosureGraph::predecessors(int i) const {
    std::vector<int> out;
    for (auto [a, b] : edges)
        if (b == i) out.push_back(a);
    return out;
}

std::vector<int> ClosureGraph::isolated() const {
    std::vector<int> deg(nodes.size(), 0);
    for (auto [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    std::vector<int> out;
    for (size_t i = 0; i < nodes.size(); ++i)
        if (deg[i] == 0) out.push_back(int(i));
    return out;
}

int ClosureGraph::nontrivial_components() const {
    std::vector<int> parent(nodes.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
    auto root = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : edges) parent[root(a)] = root(b);
    std::map<int, int> size;
    for (size_t i = 0; i < nodes.size(); ++i) ++size[root(int(i))];
    int n = 0;
    for (auto [r, c] : size)
        if (c > 1) ++n;
    return n;
}

std::string ClosureGraph::to_json() const {
    nlohmann::ordered_json j;
    j["nodes"] = nlohmann::json::array();
    for (const auto& x : nodes) j["nodes"].push_back(x.label());
    j["edges"] = nlohmann::json::array();
    for (auto [a, b] : edges) j["edges"].push_back({nodes[a].label(), nodes[b].label()});
    return j.dump();
}

ClosureGraph closure_graph(Algebra algebra, double q, double t, int n_max, int res) {
    if (algebra != Algebra::QReduced && algebra != Algebra::Groupoid)
        throw DomainError("closure_graph: only QReduced and Groupoid are supported");
    ClosureGraph g;
    g.algebra = algebra;
    g.nodes = enumerate_spectrum(algebra, q, t, res, n_max);
    std::sort(g.nodes.begin(), g.nodes.end());
    const double tf = algebra == Algebra::QReduced ? 1.0 : 0.0;
    const int K = n_max + 1;
    const auto grid = unit_grid(res);
    std::set<std::pair<int, int>> edges;
    for (int eps : {1, -1}) {
        // blocks and labels of every fiber along the family
        std::vector<std::vector<std::vector<int>>> blocks(grid.size());
        std::vector<int> generic(grid.size(), -1);
        for (size_t j = 0; j < grid.size(); ++j) {
            const auto s = SpectralPoint::pri(q, tf, eps, grid[j]);
            blocks[j] = constraint_blocks(s, K);
            if (blocks[j].size() == 1) generic[j] = g.find(block_label(s, blocks[j][0]));
        }
        // a block of a limit fiber lies in the closure of the neighbouring
        // generic points when it is included in their (single) block
        for (size_t j = 0; j < grid.size(); ++j) {
            const auto s = SpectralPoint::pri(q, tf, eps, grid[j]);
            for (int nb : {int(j) - 1, int(j) + 1}) {
                if (nb < 0 || nb >= int(grid.size()) || generic[nb] < 0) continue;
                const auto& host = blocks[nb][0];
                for (const auto& b : blocks[j]) {
                    if (!std::includes(host.begin(), host.end(), b.begin(), b.end())) continue;
                    const int to = g.find(block_label(s, b));
                    if (to < 0) throw NumericalError("closure_graph: block label outside the enumeration");
                    if (to != generic[nb]) edges.insert({generic[nb], to});
                }
            }
        }
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

}  // namespace qsl2r
