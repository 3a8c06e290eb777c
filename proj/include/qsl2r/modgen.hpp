#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsl2r/scalars.hpp"
#include "qsl2r/types.hpp"

namespace qsl2r {

enum class Family { PrincipalQ, DiscreteQ, ClassicalPrincipal, Motion, Groupoid };

std::string family_name(Family f);

// order (n, sign) of a discrete module, together with its sign sigma
struct DiscreteOrder {
    int sigma = 1;
    int n = 0;
    int sign = 1;
};

struct TruncatedModule {
    Family family = Family::PrincipalQ;
    DeformationPoint base;
    int epsilon = 1;
    cplx lambda;
    std::optional<DiscreteOrder> order;
    int N = 0;
    std::vector<int> window;     // K-types, ascending
    std::vector<double> weights; // squared norms, aligned with window
    Mat theta, X, Z, Xstar;

    int size() const { return int(window.size()); }
    // position of K-type k in the window, -1 when absent
    int index(int k) const;
    // positions whose K-type satisfies |k| <= N - margin
    std::vector<int> interior(int margin) const;
    // true when the module lives at q^t = 1 (classical dictionary)
    bool classical() const;
};

// K-types of parity eps with |k| <= N
std::vector<int> parity_window(int eps, int N);
// K-types {sign*m : m - n odd, n < m <= N}, ascending
std::vector<int> discrete_window(int n, int sign, int N);

std::vector<double> weights_principal(double qt, int parity, int N);
std::vector<double> weights_discrete(double qt, int n, int sign, int N);

struct Realized {
    Mat X, Xstar, Z, theta;
    double max_condition = 0.0;  // of the equilibrated 3x3 systems
    int worst_ktype = 0;
};

// Solve the change of variables from the T-coefficients to X, X*, Z per
// K-type and band. t_diag, t_up, t_down are aligned with window.
Realized realize_xztheta_from_t(const std::vector<cplx>& t_diag,
                                const std::vector<cplx>& t_up,
                                const std::vector<cplx>& t_down, double qt,
                                const std::vector<int>& window);

TruncatedModule build_principal_q(const DeformationPoint& base, int epsilon, cplx lambda, int N);
TruncatedModule build_discrete_q(const DeformationPoint& base, int sigma, int n, int sign, int N,
                                 double leak_tol = 1e-12);
TruncatedModule build_classical_principal(cplx lambda, int epsilon, int N, double t = 1.0);
TruncatedModule build_motion(cplx lambda, int epsilon, int N);
TruncatedModule build_groupoid(cplx lambda, int epsilon, int N, double q);

// max |A(r,c)| over A in {X, X*, Z}, c in cols, r outside cols
double leakage(const TruncatedModule& m, const std::vector<int>& cols);

// restriction of a module to a subset of its window (positions)
TruncatedModule restrict_module(const TruncatedModule& m, const std::vector<int>& positions);

// minimal invariant coordinate subspaces, as sorted K-type lists
std::vector<std::vector<int>> detect_submodules(const TruncatedModule& m, double tol = 1e-12);

}  // namespace qsl2r
