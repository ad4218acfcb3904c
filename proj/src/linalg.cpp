#include "spinlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

namespace spinlab {

double lambda_max_pencil(const Matrix& a, const Vector& d) {
  std::vector<int> keep;
  for (int i = 0; i < d.size(); ++i)
    if (d[i] > 0) keep.push_back(i);
  if (keep.empty()) return 0.0;
  int k = int(keep.size());
  Matrix s(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      s(i, j) = a(keep[size_t(i)], keep[size_t(j)]) /
                std::sqrt(d[keep[size_t(i)]] * d[keep[size_t(j)]]);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.transpose()));
  return es.eigenvalues().maxCoeff();
}

Vector symmetric_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()));
  return es.eigenvalues();
}

double lambda_min_symmetric(const Matrix& a) { return symmetric_eigenvalues(a).minCoeff(); }

double lambda_max_general(const Matrix& a) {
  Eigen::EigenSolver<Matrix> es(a);
  double mx = -1e300;
  for (int i = 0; i < a.rows(); ++i) mx = std::max(mx, es.eigenvalues()[i].real());
  return mx;
}

void matmul(const Matrix& a, const Matrix& b, Matrix& out) {
  const int n = int(a.rows()), k = int(a.cols()), m = int(b.cols());
  out.setZero(n, m);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < k; ++l) {
      double ail = a(i, l);
      if (ail == 0) continue;
      for (int j = 0; j < m; ++j) out(i, j) += ail * b(l, j);
    }
  }
}

Matrix matmul_reference(const Matrix& a, const Matrix& b) {
  const int n = int(a.rows()), k = int(a.cols()), m = int(b.cols());
  Matrix out = Matrix::Zero(n, m);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) {
      double ail = a(i, l);
      for (int j = 0; j < m; ++j) out(i, j) += ail * b(l, j);
    }
  return out;
}

}  // namespace spinlab
