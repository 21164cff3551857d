#include "vnlw/grid.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace vnlw {

namespace {

// Fix eigenvector signs so results are reproducible across runs: first
// significantly nonzero component made positive.
void canonicalize_columns(Eigen::MatrixXd& q) {
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    const double scale = q.col(c).cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < q.rows(); ++r) {
      if (std::abs(q(r, c)) > 1e-12 * scale) {
        if (q(r, c) < 0.0) q.col(c) = -q.col(c);
        break;
      }
    }
  }
}

}  // namespace

DirichletOperator build_operator(const Grid1D& grid,
                                 const std::optional<Eigen::VectorXd>& potential,
                                 int dim) {
  grid.validate();
  if (dim != 1 && dim != 2) throw ValidationError("build_operator: dim must be 1 or 2");

  const int m = grid.interior_count();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
  if (potential) {
    if (potential->size() != m)
      throw BadDimension("build_operator: potential length " +
                         std::to_string(potential->size()) + " != interior count " +
                         std::to_string(m));
    u = *potential;
  }

  const double h = grid.spacing();
  const double w = 1.0 / (h * h);
  Eigen::MatrixXd a1 = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    a1(i, i) = 2.0 * w + u(i);
    if (i + 1 < m) {
      a1(i, i + 1) = -w;
      a1(i + 1, i) = -w;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a1);
  Eigen::VectorXd lam1 = es.eigenvalues();  // ascending
  Eigen::MatrixXd q1 = es.eigenvectors();
  canonicalize_columns(q1);

  Domain domain{grid, dim};
  if (dim == 1) {
    return DirichletOperator(domain, u, std::move(a1), std::move(lam1), std::move(q1));
  }

  // Kronecker sum A (+) A with exact eigenstructure lambda_p + lambda_q,
  // q_p (x) q_q. Flattened index a = i1*m + i2.
  const int n2 = m * m;
  Eigen::MatrixXd a2 = Eigen::MatrixXd::Zero(n2, n2);
  for (int i1 = 0; i1 < m; ++i1)
    for (int i2 = 0; i2 < m; ++i2) {
      const int row = i1 * m + i2;
      for (int k = 0; k < m; ++k) {
        a2(row, k * m + i2) += a1(i1, k);
        a2(row, i1 * m + k) += a1(i2, k);
      }
    }

  Eigen::VectorXd lam2(n2);
  Eigen::MatrixXd q2(n2, n2);
  std::vector<int> order(n2);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) lam2(p * m + q) = lam1(p) + lam1(q);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lam2(a) < lam2(b); });

  Eigen::VectorXd lam_sorted(n2);
  for (int c = 0; c < n2; ++c) {
    const int src = order[c];
    lam_sorted(c) = lam2(src);
    const int p = src / m, q = src % m;
    for (int i1 = 0; i1 < m; ++i1)
      for (int i2 = 0; i2 < m; ++i2) q2(i1 * m + i2, c) = q1(i1, p) * q1(i2, q);
  }

  return DirichletOperator(domain, u, std::move(a2), std::move(lam_sorted),
                           std::move(q2));
}

}  // namespace vnlw
