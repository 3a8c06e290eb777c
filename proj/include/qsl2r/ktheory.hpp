#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsl2r/paramspace.hpp"

namespace qsl2r {

// the sets W_1 = {0}, W_2 = {-1,1}, W_{2l+1} = {l}, W_{2l+2} = {-l}
std::vector<int> wm(int m);

// index m with wm(m) == set, 0 when there is none
int stratum_of(const std::vector<int>& min_ktypes);

struct LedgerRow {
    SpectrumPoint point;
    std::vector<int> ktypes;  // truncated to |k| <= N
    std::vector<int> min_ktypes;
    int stratum = 0;
};

struct KTypeLedger {
    double q = 2.0;
    int n_max = 0;
    int N = 0;
    std::vector<LedgerRow> rows;  // QReduced then Groupoid
    int unclassified = 0;
    int mu_violations = 0;        // rows whose mu image changes stratum
    bool strata_onto = false;     // mu maps stratum m onto stratum m
    bool pass() const;
    std::string to_csv() const;
};

KTypeLedger stratify(double q, int n_max, int res);

// rank of the K-type n projection on the block carrying x
int rank_profile(const SpectrumPoint& x, int n, double q, int N);

struct RankReport {
    int pairs = 0;
    int failures = 0;
    bool pass() const { return pairs > 0 && failures == 0; }
};

// rank_profile = 1 for every ledger row of stratum m and n in W_m with |n| <= n_max
RankReport check_rank_claim(const KTypeLedger& ledger);

struct MonotonicityReport {
    int edges = 0;
    int violations = 0;
    bool pass() const { return edges > 0 && violations == 0; }
};

// {x : n in K-types(x)} is closed under predecessors from the continuous families
MonotonicityReport check_monotonicity(double q, int n_max, int res);

struct KSummary {
    std::string k0_formula;  // with the discrete sum left unresolved
    std::string k0;          // with the discrete sum resolved at n_max
    std::string k1;
    int discrete_labels = 0;  // from enumerate_spectrum
    int discrete_rank = 0;    // rank of the resolved discrete sum
    int families = 0;         // nontrivial components of the closure graph
    int isolated = 0;
    int glued = 0;            // discrete labels glued to a family
    std::vector<std::pair<std::string, std::string>> generators;  // summand, provenance
    bool consistent = false;
    std::string to_json() const;
};

KSummary k_summary(double q, int n_max, int res = 37);

}  // namespace qsl2r
