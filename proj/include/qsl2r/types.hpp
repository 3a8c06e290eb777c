#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qsl2r {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

// thrown when an argument lies outside the domain of an operation
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// a numerical consistency check inside a builder failed
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// operation called on a module of the wrong family or at the wrong point
struct FamilyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

constexpr double kQOneTol = 1e-12;
constexpr double kTZeroTol = 1e-12;

inline bool is_q_one(double q) { return std::abs(q - 1.0) < kQOneTol; }
inline bool is_t_zero(double t) { return std::abs(t) < kTZeroTol; }

}  // namespace qsl2r
