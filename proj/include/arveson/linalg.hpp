#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace arveson {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

/// Relative SVD cutoff used for every rank decision unless the caller overrides it.
inline constexpr double kDefaultTol = 1e-10;

/// Raised for malformed input: dimension mismatches, violated preconditions, bad configs.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation is well-posed but numerically degenerate
/// (singular maps, singular Grams, rank-deficient blocks).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// <x, y> = sum_i x_i conj(y_i): linear in the first slot.
inline Complex inner(const Vec& x, const Vec& y) { return y.dot(x); }

/// Largest singular value; 0 for empty matrices.
double op_norm(const Mat& a);

/// Smallest singular value of a square matrix.
double min_singular(const Mat& a);

/// Singular values in descending order.
RealVec singular_values(const Mat& a);

/// Spectral norm of a Hermitian matrix via its eigenvalues.
double hermitian_norm(const Mat& h);

/// ||u*u - I|| for a square matrix.
double unitarity_defect(const Mat& u);

void require_square(const Mat& a, const std::string& what);

}  // namespace arveson
