#pragma once

#include <Eigen/Dense>

namespace spinlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Largest generalized Rayleigh quotient sup_f (f' A f) / (f' diag(d) f),
// restricted to the coordinates with d > 0. A must be symmetric.
double lambda_max_pencil(const Matrix& a, const Vector& d);

// All eigenvalues (ascending) of a symmetric matrix.
Vector symmetric_eigenvalues(const Matrix& a);

// Smallest eigenvalue of a symmetric matrix.
double lambda_min_symmetric(const Matrix& a);

// Largest real part over eigenvalues of a general square matrix (used as a
// cross-check oracle against the pencil route).
double lambda_max_general(const Matrix& a);

// Dense row-parallel matrix product: each output row is computed by exactly
// one thread in a fixed order, so the result does not depend on the thread
// count. The _reference version is the serial baseline kept for testing.
void matmul(const Matrix& a, const Matrix& b, Matrix& out);
Matrix matmul_reference(const Matrix& a, const Matrix& b);

}  // namespace spinlab
