#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsl2r/fieldsec.hpp"
#include "qsl2r/paramspace.hpp"
#include "qsl2r/types.hpp"

namespace qsl2r {

// diagonal isometry from (window, weights at q^t) to (window, weights at
// q_ref); q_ref = q gives the v_s of the Mackey embedding
RMat v_isometry(const SpectralPoint& s, double q_ref, int N);

// f.e_n with f in {1, T, T+, T-}
struct GroupoidGen {
    enum F { One, T, TPlus, TMinus };
    F f = One;
    int n = 0;
    std::string name() const;
};

// pi_s(g) at the point of S_{q,t} carrying the same component as s1 in
// S_{q,1}, conjugated by v_s; a matrix on fiber(s1, N).window
Mat alpha_t_image(const GroupoidGen& g, const SpectralPoint& s1, double t, int N);
// principal block (Lambda, parity) at q
Mat alpha_t_image(const GroupoidGen& g, double q, double t, cplx Lambda, int parity, int N);

// residual of alpha_t(T-_{n+2}) alpha_t(T+_n) = alpha_t(T_n)^2 - (a + 1/a)^2 alpha_t(e_n),
// a = (q^t)^(n+1), maximised over n with |n| <= N - margin and the points given
double morphism_residual(const std::vector<SpectralPoint>& points, double t, int N, int margin = 4);

// gamma_t: same component, same Lambda on the principal series
SpectralPoint gamma_t(const SpectralPoint& s1, double t);

SpectrumPoint mu(const SpectrumPoint& x);

// the displayed decompositions truncated to |m| <= n_max + 1
std::vector<SpectrumPoint> pullback_decomposition(const SpectrumPoint& x, int n_max);

struct MuTable {
    double q = 2.0;
    int n_max = 0;
    std::vector<std::pair<SpectrumPoint, SpectrumPoint>> rows;
    std::string to_json() const;
};

MuTable mu_table(double q, int res, int n_max);

// mu on the characters re-derived by elimination in order of increasing |m|;
// throws NumericalError when a step is ambiguous
MuTable mu_by_induction(double q, int res, int n_max);

struct MuCheck {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct MuReport {
    double q = 2.0;
    int n_max = 0;
    int res = 0;
    std::vector<MuCheck> checks;
    // witness of the discontinuity of the inverse
    SpectrumPoint witness_char, witness_source;
    double seconds = 0.0;
    bool pass() const;
    std::string to_csv() const;
};

MuReport verify_mu(double q, int n_max, int res = 721);

}  // namespace qsl2r
