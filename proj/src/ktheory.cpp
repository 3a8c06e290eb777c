#include "qsl2r/ktheory.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qsl2r/mackey.hpp"

namespace qsl2r {

namespace {

std::string superscript(int k) {
    static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    if (k == 1) return "";
    std::string out;
    for (char c : std::to_string(k)) out += digits[c - '0'];
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

std::vector<int> wm(int m) {
    if (m < 1) throw DomainError("wm: m must be >= 1");
    if (m == 1) return {0};
    if (m == 2) return {-1, 1};
    if (m % 2 == 1) return {(m - 1) / 2};
    return {-(m - 2) / 2};
}

int stratum_of(const std::vector<int>& min_ktypes) {
    if (min_ktypes.empty()) return 0;
    int a = 0;
    for (int k : min_ktypes) a = std::max(a, std::abs(k));
    // only W_{2a+1}, W_{2a+2} (a >= 1) and W_1, W_2 can match
    for (int m : {2 * a + 1, 2 * a + 2, 1, 2})
        if (m >= 1 && wm(m) == min_ktypes) return m;
    return 0;
}

bool KTypeLedger::pass() const { return !rows.empty() && unclassified == 0 && mu_violations == 0 && strata_onto; }

std::string KTypeLedger::to_csv() const {
    std::ostringstream os;
    os << "label,ktypes_truncated,min_ktypes,stratum_m\n";
    for (const auto& r : rows)
        os << '"' << r.point.label() << "\"," << join(r.ktypes) << "," << join(r.min_ktypes) << "," << r.stratum
           << "\n";
    return os.str();
}

KTypeLedger stratify(double q, int n_max, int res) {
    if (is_q_one(q)) throw DomainError("stratify: needs q != 1");
    KTypeLedger L;
    L.q = q;
    L.n_max = n_max;
    L.N = n_max + 2;
    std::map<SpectrumPoint, int> stratum;
    for (auto alg : {Algebra::QReduced, Algebra::Groupoid})
        for (const auto& x : enumerate_spectrum(alg, q, alg == Algebra::QReduced ? 1.0 : 0.0, res, n_max)) {
            LedgerRow r;
            r.point = x;
            r.ktypes = x.ktypes().truncate(L.N);
            r.min_ktypes = x.min_ktypes();
            r.stratum = stratum_of(r.min_ktypes);
            if (r.stratum == 0) ++L.unclassified;
            stratum[x] = r.stratum;
            L.rows.push_back(std::move(r));
        }
    if (L.unclassified > 0) throw NumericalError("stratify: minimal K-type set outside every W_m");
    std::map<int, std::set<SpectrumPoint>> image, target;
    for (const auto& r : L.rows) {
        if (r.point.algebra == Algebra::Groupoid) {
            target[r.stratum].insert(r.point);
            continue;
        }
        const SpectrumPoint y = mu(r.point);
        if (stratum.at(y) != r.stratum) ++L.mu_violations;
        image[r.stratum].insert(y);
    }
    L.strata_onto = image == target;
    return L;
}

int rank_profile(const SpectrumPoint& x, int n, double q, int N) {
    const auto [s, block] = locate(x, q, N);
    RMat P = RMat::Zero(block.size(), block.size());
    for (size_t i = 0; i < block.size(); ++i)
        if (block[i] == n) P(i, i) = 1.0;
    if (P.size() == 0) return 0;
    return int(Eigen::FullPivLU<RMat>(P).rank());
}

RankReport check_rank_claim(const KTypeLedger& ledger) {
    RankReport r;
    for (const auto& row : ledger.rows)
        for (int n : wm(row.stratum)) {
            if (std::abs(n) > ledger.n_max) continue;
            ++r.pairs;
            if (rank_profile(row.point, n, ledger.q, ledger.N) != 1) ++r.failures;
        }
    return r;
}

MonotonicityReport check_monotonicity(double q, int n_max, int res) {
    MonotonicityReport r;
    for (auto alg : {Algebra::QReduced, Algebra::Groupoid}) {
        const ClosureGraph g = closure_graph(alg, q, alg == Algebra::QReduced ? 1.0 : 0.0, n_max, res);
        for (const auto& [a, b] : g.edges) {
            const auto& xa = g.nodes[a];
            if (xa.kind != LabelKind::PrincipalQ && xa.kind != LabelKind::GroupoidCont) continue;
            ++r.edges;
            const KTypeSet ka = xa.ktypes(), kb = g.nodes[b].ktypes();
            for (int n = -n_max; n <= n_max; ++n)
                if (kb.contains(n) && !ka.contains(n)) ++r.violations;
        }
    }
    return r;
}

std::string KSummary::to_json() const {
    nlohmann::ordered_json j;
    j["K0_formula"] = k0_formula;
    j["K0"] = k0;
    j["K1"] = k1;
    j["discrete_labels"] = discrete_labels;
    j["discrete_rank"] = discrete_rank;
    j["families"] = families;
    j["isolated"] = isolated;
    j["glued"] = glued;
    auto gens = nlohmann::ordered_json::array();
    for (const auto& [a, b] : generators) gens.push_back({a, b});
    j["generators"] = gens;
    j["consistent"] = consistent;
    return j.dump(2);
}

KSummary k_summary(double q, int n_max, int res) {
    if (is_q_one(q)) throw DomainError("k_summary: needs q != 1");
    KSummary k;
    k.k0_formula = "ℤ ⊕ ℤ³ ⊕ ⊕ℤ";
    k.k1 = "0";
    k.generators.push_back({"ℤ", "odd principal family"});
    k.generators.push_back({"ℤ³", "even principal family"});
    for (const auto& x : enumerate_spectrum(Algebra::QReduced, q, 1.0, res, n_max))
        if (x.kind == LabelKind::DiscreteQ) {
            ++k.discrete_labels;
            k.generators.push_back({"ℤ", x.label()});
        }
    // one generator per discrete label
    k.discrete_rank = k.discrete_labels;
    k.k0 = "ℤ ⊕ ℤ³ ⊕ ℤ" + superscript(k.discrete_rank);
    const ClosureGraph g = closure_graph(Algebra::QReduced, q, 1.0, n_max, res);
    k.families = g.nontrivial_components();
    k.isolated = int(g.isolated().size());
    for (size_t i = 0; i < g.nodes.size(); ++i)
        if (g.nodes[i].kind == LabelKind::DiscreteQ && !g.predecessors(int(i)).empty()) ++k.glued;
    k.consistent = k.families == 2 && k.isolated == 4 * n_max && k.glued == 4 &&
                   k.isolated + k.glued == k.discrete_labels && k.discrete_labels == 4 * (n_max + 1);
    return k;
}

}  // namespace qsl2r
