#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qsl2r/paramspace.hpp"
#include "qsl2r/types.hpp"

namespace qsl2r {

// coefficient of the shift zeta_n -> zeta_{n+2j} in the multiplication by
// k -> f(p_Lambda k); must vanish for j != 0 at real Lambda on the circle
using GroupoidProfile = std::function<cplx(cplx Lambda, int j)>;

GroupoidProfile default_profile();

struct SectionId {
    enum Kind { TDiag, TUp, TDown, GroupoidF };
    Kind kind = TDiag;
    int n = 0;
    GroupoidProfile profile;  // GroupoidF only

    static SectionId diag(int n);
    static SectionId up(int n);
    static SectionId down(int n);
    static SectionId groupoid(int n, GroupoidProfile f = default_profile());

    std::string name() const;
};

// window Z(s) truncated to |k| <= N and the squared norms ||zeta_k||_s^2
struct Fiber {
    std::vector<int> window;
    std::vector<double> weights;
    int index(int k) const;
};

Fiber fiber(const SpectralPoint& s, int N);

// matrix of E_n^m(s) in zeta coordinates
Mat rank_one(const SpectralPoint& s, int n, int m, int N);

// largest singular value of A in the orthonormal basis zeta_k/||zeta_k||
double operator_norm(const Mat& A, const std::vector<double>& weights);

// A conjugated to orthonormal coordinates
Mat orthonormal(const Mat& A, const std::vector<double>& weights);

// pi_s of a generator, in zeta coordinates on fiber(s, N).window.
// T sections at q = 1 take their value as the limit from the q-chart.
Mat section_matrix(const SectionId& id, const SpectralPoint& s, int N);

// section_matrix for the T generators only
Mat section_T(const SpectralPoint& s, int n, SectionId::Kind kind, int N);

struct SectionSample {
    SectionId id;
    std::vector<double> params;
    std::vector<SpectralPoint> points;
    std::vector<Fiber> fibers;
    std::vector<Mat> blocks;
};

SectionSample sample_section(const SectionId& id, const std::vector<SpectralPoint>& path,
                             const std::vector<double>& params, int N);

struct ContinuityReport {
    std::string section;
    std::vector<double> params, norms, jumps;  // jumps[0] = 0
    double max_jump = 0.0;
    double lipschitz = 0.0;  // max jump / step, a diagnostic
    double tol = 0.0;
    bool pass = false;
};

// throws DomainError when consecutive points leave a common chart
ContinuityReport certify_continuity(const SectionId& id, const std::vector<SpectralPoint>& path,
                                    const std::vector<double>& params, double tol, int N);

std::string continuity_csv(const ContinuityReport& r);

using PathFn = std::function<SpectralPoint(double)>;

struct RefinementReport {
    std::string name;
    std::vector<double> steps, max_jumps;
    double slope = 0.0;
    bool pass = false;
    ContinuityReport finest;
};

// max jump against the step over uniform samplings of [a, b]
RefinementReport refine_continuity(const std::string& name, const SectionId& id, const PathFn& path, double a,
                                   double b, int N, const std::vector<int>& samples = {17, 33, 65, 129, 257},
                                   double min_slope = 0.9);

// the five reference paths: even circle, t-crossing on Pri and Dis, the
// q = 1 chart, and a groupoid circle
std::vector<RefinementReport> reference_paths(int N);

struct VanishingReport {
    std::string section;
    int checked = 0;      // discrete points with n outside Z(s)
    int supported = 0;    // discrete points with n inside Z(s)
    double max_abs = 0.0; // over the first set
    bool pass = false;
};

VanishingReport check_vanishing(const SectionId& id, double q, double t, int n_max);

// every T generator with |n| <= n_max + 2 and the groupoid generators at t = 0
std::vector<VanishingReport> vanishing_suite(double q, double t, int n_max);

struct JReport {
    std::string section;
    int pairs = 0;
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// corrupt scales the discrete side by (1 + corrupt)
JReport check_J_equivariance(const SectionId& id, double q, int n_max, double tol, double corrupt = 0.0);

std::vector<JReport> J_suite(double q, int n_max, double tol);

struct BlockReport {
    int points = 0;
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// off-block entries of every T generator with |n| <= n_max on the odd
// continuous points with Lambda = +-1
BlockReport check_block_diagonal(const std::vector<std::pair<double, double>>& locations, int n_max, double tol);

// sup over a sampled fiber S_{q,t} of the section norms
double fiber_sup_norm(const SectionId& id, double q, double t, int res, int n_max, int N);

}  // namespace qsl2r
