#pragma once

#include <string>

#include <json.hpp>

#include "qsl2r/modgen.hpp"

namespace qsl2r {

using ojson = nlohmann::ordered_json;

// nonzero entries as [row, col, re, im], row-major
ojson matrix_entries(const Mat& A);

// {family, q, t, epsilon, lambda, order, window, weights, matrices{theta, X, Z, Xstar}}
// plus "config" when given
ojson module_json(const TruncatedModule& m, const ojson& config = nullptr);
std::string module_to_json(const TruncatedModule& m, const ojson& config = nullptr);

}  // namespace qsl2r
