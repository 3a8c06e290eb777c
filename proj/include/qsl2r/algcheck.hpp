#pragma once

#include <string>
#include <vector>

#include "qsl2r/modgen.hpp"

namespace qsl2r {

struct ResidualReport {
    std::string relation;
    double max_abs_residual = 0.0;
    int row_ktype = 0;
    int col_ktype = 0;
    int interior_size = 0;
    bool pass = false;
};

// one CSV row: relation_id,residual,row,col,interior_size
std::string to_csv_row(const ResidualReport& r);
bool all_pass(const std::vector<ResidualReport>& reports);
const ResidualReport& worst(const std::vector<ResidualReport>& reports);

// residual matrix restricted to interior positions, max-abs with location
ResidualReport residual_report(const std::string& id, const Mat& R, const TruncatedModule& m,
                               const std::vector<int>& interior, double tol);

std::vector<ResidualReport> check_relations_uq(const TruncatedModule& m, double tol = 1e-10, int margin = 4);
std::vector<ResidualReport> check_relations_limit(const TruncatedModule& m, double tol = 1e-12, int margin = 4);
ResidualReport check_unitarity(const TruncatedModule& m, double tol = 1e-10, int margin = 4);

// weights of the discrete module forced by the adjoint relation
// (T+_m)* = -T-_m, starting from the lowest K-type; aligned with
// discrete_window(n, sign, N)
std::vector<double> discrete_weight_oracle(double qt, int n, int sign, int N);

}  // namespace qsl2r

namespace qsl2r {

// max_i |w_i - oracle_i| / oracle_i for the closed-form discrete weights
double discrete_weight_discrepancy(double qt, int n, int sign, int N);

struct SubmoduleReport {
    int sigma = 1;
    int n = 0;
    std::vector<std::vector<int>> detected;
    double leak_plus = 0.0, leak_minus = 0.0;
    bool windows_match = false;
    bool pass = false;
};

// principal module of parity n+1 at lambda = sigma qt^n: the D^+ and D^- windows
// are invariant and are exactly the detected minimal subspaces
SubmoduleReport check_submodules(const DeformationPoint& base, int sigma, int n, int N, double tol = 1e-12);

}  // namespace qsl2r
