#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsl2r/scalars.hpp"
#include "qsl2r/types.hpp"

namespace qsl2r {

// A set of K-types: all of Z^parity, a half line sign*Z^parity_{>n}, or {m}.
struct KTypeSet {
    enum Kind { Full, Half, Single };
    Kind kind = Full;
    int parity = 1;
    int n = 0;
    int sign = 1;
    int m = 0;

    static KTypeSet full(int parity);
    static KTypeSet half(int parity, int n, int sign);
    static KTypeSet single(int m);

    bool contains(int k) const;
    // members with |k| <= N, ascending
    std::vector<int> truncate(int N) const;
    // members of smallest absolute value
    std::vector<int> minimal() const;
};

enum class Component { Pri, Dis };

struct SpectralPoint {
    Component component = Component::Pri;
    DeformationPoint location;
    int epsilon = 1;  // Pri only
    cplx pri_coord;   // Pri only: lambda in U_+ (q != 1) or in iR_+ (q = 1)
    int sigma = 1, n = 1, sign = 1;  // Dis only

    static SpectralPoint pri(double q, double t, int epsilon, cplx lambda);
    static SpectralPoint dis(double q, double t, int sigma, int n, int sign);
};

// throws DomainError on invalid points
void validate(const SpectralPoint& s);

struct Classification {
    cplx Lambda;
    int parity = 1;
    KTypeSet ktypes;
};

Classification classify(const SpectralPoint& s);

bool is_real_lambda(cplx L);

// blocks of the constraint at s, truncated to |k| <= N
std::vector<std::vector<int>> constraint_blocks(const SpectralPoint& s, int N);

// coordinate projection J_{n,sign} from the parity window onto the
// discrete window, rows indexed by discrete_window(n, sign, N)
RMat jmap_matrix(int n, int sign, int parity, int N);
// J(target, source) with the preconditions of the definition checked
RMat jmap(const SpectralPoint& target, const SpectralPoint& source, int N);

enum class Algebra { QReduced, Groupoid, ClassicalReduced, Motion };
std::string algebra_name(Algebra a);

enum class LabelKind {
    PrincipalQ,
    DiscreteQ,
    GroupoidCont,
    GroupoidChar,
    ClassicalPrincipal,
    ClassicalDiscrete,
    MotionCont,
    MotionChar
};

struct SpectrumPoint {
    Algebra algebra = Algebra::QReduced;
    LabelKind kind = LabelKind::PrincipalQ;
    int epsilon = 1;
    int sigma = 1;
    int n = 0;
    int sign = 1;
    int m = 0;
    cplx lambda;

    std::string label() const;
    KTypeSet ktypes() const;
    std::vector<int> min_ktypes() const;
    bool operator==(const SpectrumPoint& o) const;
    bool operator<(const SpectrumPoint& o) const;

    static SpectrumPoint principal_q(int eps, cplx lambda);
    static SpectrumPoint discrete_q(int sigma, int n, int sign);
    static SpectrumPoint groupoid_cont(cplx lambda, int eps);
    static SpectrumPoint groupoid_char(int sigma, int m);
    static SpectrumPoint classical_principal(int eps, cplx lambda);
    static SpectrumPoint classical_discrete(int n, int sign);
    static SpectrumPoint motion_cont(cplx lambda, int eps);
    static SpectrumPoint motion_char(int m);
};

// angles pi*j/(res-1), j = 0..res-1, on the upper half circle
std::vector<cplx> unit_grid(int res);
// i*nu with nu = nu_max*j/(res-1)
std::vector<cplx> imaginary_grid(int res, double nu_max = 10.0);

// Desk-scale spectrum. Characters of the contractions are kept for
// |m| <= n_max + 1, which matches the images of D(sigma, n <= n_max).
std::vector<SpectrumPoint> enumerate_spectrum(Algebra algebra, double q, double t, int res, int n_max);

// point of S and constraint block carrying an irreducible of the fiber at
// (q,t); t = 1 for QReduced and t = 0 for Groupoid
std::pair<SpectralPoint, std::vector<int>> locate(const SpectrumPoint& x, double q, int N);

// label of the irreducible carried by a block of the fiber at s
SpectrumPoint block_label(const SpectralPoint& s, const std::vector<int>& block);

struct ClosureGraph {
    Algebra algebra = Algebra::QReduced;
    std::vector<SpectrumPoint> nodes;
    std::vector<std::pair<int, int>> edges;  // node indices, from -> to

    int find(const SpectrumPoint& x) const;
    bool has_edge(const SpectrumPoint& a, const SpectrumPoint& b) const;
    // nodes reached by an edge from any member of a family
    std::vector<int> successors(int i) const;
    std::vector<int> predecessors(int i) const;
    std::vector<int> isolated() const;
    // connected components with more than one node
    int nontrivial_components() const;
    std::string to_json() const;
};

ClosureGraph closure_graph(Algebra algebra, double q, double t, int n_max, int res = 721);

}  // namespace qsl2r
