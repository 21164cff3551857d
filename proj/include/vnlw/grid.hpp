#pragma once

#include <Eigen/Dense>
#include <optional>

#include "vnlw/errors.hpp"

namespace vnlw {

/// Uniform 1D grid on [0, length] with Dirichlet endpoints. Interior nodes
/// are x_i = i*h, i = 1..n_cells-1.
struct Grid1D {
  double length = 1.0;
  int n_cells = 2;

  double spacing() const { return length / n_cells; }
  int interior_count() const { return n_cells - 1; }
  int closed_count() const { return n_cells + 1; }
  double node(int i) const { return spacing() * i; }  // closed index 0..n_cells

  void validate() const {
    if (!(length > 0.0)) throw ValidationError("Grid1D: length must be positive");
    if (n_cells < 2) throw ValidationError("Grid1D: n_cells must be >= 2");
  }
};

inline bool operator==(const Grid1D& a, const Grid1D& b) {
  return a.length == b.length && a.n_cells == b.n_cells;
}

/// One-particle configuration space: an interval (dim 1) or a square (dim 2)
/// built as the tensor power of the same axis grid. Flattened interior index
/// for dim 2 is a = (i1-1)*m + (i2-1); closed index is a = i1*(N+1) + i2.
struct Domain {
  Grid1D axis;
  int dim = 1;

  int interior_points() const {
    int m = axis.interior_count();
    return dim == 1 ? m : m * m;
  }
  int closed_points() const {
    int c = axis.closed_count();
    return dim == 1 ? c : c * c;
  }
  /// Quadrature weight of one interior node, h^dim.
  double cell_volume() const {
    double h = axis.spacing();
    return dim == 1 ? h : h * h;
  }
  /// Quadrature weight on the product domain, h^(2*dim).
  double pair_volume() const {
    double v = cell_volume();
    return v * v;
  }

  void validate() const {
    axis.validate();
    if (dim != 1 && dim != 2) throw ValidationError("Domain: dim must be 1 or 2");
  }
};

inline bool operator==(const Domain& a, const Domain& b) {
  return a.axis == b.axis && a.dim == b.dim;
}

/// Discrete Dirichlet Hamiltonian -Laplace + U on the interior nodes of a
/// Domain, with its full eigendecomposition (ascending eigenvalues,
/// orthonormal eigenvectors). For dim 2 the operator is the Kronecker sum of
/// the 1D operator with itself, so eigenpairs are exact sums/products of the
/// 1D ones.
class DirichletOperator {
 public:
  DirichletOperator(Domain domain, Eigen::VectorXd axis_potential,
                    Eigen::MatrixXd matrix, Eigen::VectorXd eigenvalues,
                    Eigen::MatrixXd eigenvectors)
      : domain_(domain),
        axis_potential_(std::move(axis_potential)),
        matrix_(std::move(matrix)),
        eigenvalues_(std::move(eigenvalues)),
        eigenvectors_(std::move(eigenvectors)) {}

  const Domain& domain() const { return domain_; }
  const Grid1D& grid() const { return domain_.axis; }
  int dim() const { return domain_.dim; }
  int size() const { return static_cast<int>(matrix_.rows()); }

  /// Per-axis interior potential (zero vector when none was given).
  const Eigen::VectorXd& axis_potential() const { return axis_potential_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

  double min_eigenvalue() const { return eigenvalues_(0); }
  double max_eigenvalue() const { return eigenvalues_(eigenvalues_.size() - 1); }

 private:
  Domain domain_;
  Eigen::VectorXd axis_potential_;
  Eigen::MatrixXd matrix_;        // interior_points x interior_points
  Eigen::VectorXd eigenvalues_;   // ascending
  Eigen::MatrixXd eigenvectors_;  // orthonormal columns, matching order
};

/// Assembles (1/h^2)*tridiag(-1,2,-1) + diag(U) on the interior nodes and
/// eigendecomposes it. For dim 2 the same axis operator is Kronecker-summed;
/// the axis potential (if any) is applied on both axes.
DirichletOperator build_operator(const Grid1D& grid,
                                 const std::optional<Eigen::VectorXd>& potential = {},
                                 int dim = 1);

}  // namespace vnlw
