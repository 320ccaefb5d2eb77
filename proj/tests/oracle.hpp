#pragma once

// Test-only least-squares reference. Deliberately solves the normal
// equations with an explicit Gauss-Jordan inverse so it shares no code path
// with the library's Householder QR.

#include <vector>

#include "fsmodel/core_model.hpp"

namespace oracle {

struct LeastSquares {
    std::vector<double> beta;       // length p+1, intercept first
    std::vector<double> std_errors; // sqrt(sigma^2 * diag((X^T X)^-1))
};

LeastSquares solve(const fsmodel::DesignMatrix& x, const std::vector<double>& y);

} // namespace oracle
