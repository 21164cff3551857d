#pragma once

#include <Eigen/Dense>

#include "vnlw/aip.hpp"
#include "vnlw/field.hpp"
#include "vnlw/forms.hpp"
#include "vnlw/grid.hpp"

namespace vnlw {

/// Homogeneous-boundary reduction of the boundary value problem: source W
/// (anti-Hermitian under swap, conj(W(x,y)) = -W(y,x)), the closed-grid
/// boundary data F it came from (zero field when the problem was posed with
/// a source directly), and the discrete operator.
struct ReducedProblem {
  BipartiteField source;     // W
  ClosedField boundary_data; // F on the closed grid
  DirichletOperator op;
};

/// Solution of the weak problem in the eigen-tensor basis. C is Hermitian;
/// entries at zero spectral gaps are set to zero (minimum-norm quotient
/// representative). kernel_obstruction is the Frobenius norm of the source
/// content annihilated that way; gap_floor is the smallest |lambda_i -
/// lambda_j| actually divided by.
struct SpectralSolution {
  Eigen::MatrixXcd coefficients;
  BipartiteField theta;
  double kernel_obstruction = 0.0;
  double gap_floor = 0.0;
};

struct GalerkinSolution {
  BipartiteField theta;
  double residual = 0.0;  // quadrature-scaled norm of the unrepresentable part
};

/// W = -(H_x - H_y)F at interior nodes, using F's boundary values in the
/// stencil. F must be Hermitian on the closed grid (throws NotHermitianData).
ReducedProblem reduce_problem(const ClosedField& f, const DirichletOperator& op,
                              double herm_tol = tol::algebra);

/// Poses the homogeneous problem directly from a source (F = 0). Throws
/// ValidationError when W violates conj(W(x,y)) = -W(y,x).
ReducedProblem problem_from_source(const BipartiteField& w,
                                   const DirichletOperator& op,
                                   double sym_tol = tol::algebra);

/// max |conj(W(x,y)) + W(y,x)| <= tol * max|W|.
bool check_source_symmetry(const BipartiteField& w, double tol = tol::algebra);

/// Eigen-tensor solve of the weak problem: C_ij = What_ij / (lambda_i -
/// lambda_j) away from zero gaps, 0 on them. Gaps with |lambda_i - lambda_j|
/// <= gap_cutoff_rel * lambda_max count as zero. Incompatibility is reported
/// via kernel_obstruction, never thrown.
SpectralSolution solve_spectral(const ReducedProblem& p,
                                double gap_cutoff_rel = 1e-9);

/// Direct Galerkin solve on the real Hermitian-field basis of the discrete
/// S^1_0 through the skew system K theta = c (assembled and solved by
/// aip::represent_functional). Throws TooLarge when the basis dimension
/// (N-1)^(2*dim) exceeds max_basis_dim.
GalerkinSolution solve_galerkin(const ReducedProblem& p,
                                int max_basis_dim = 529);

/// Acceptance metric: max over the real basis fields e_k of
/// |anti(e_k, theta) - l(e_k)|, normalized by max(1, ||W||_L2).
double weak_residual(const BipartiteField& theta, const ReducedProblem& p);

/// Discrete Dirichlet problem for -Laplace + U on the one-particle domain:
/// interior values solved from the boundary values of f, boundary copied.
/// Throws SingularSystem if the operator is (near-)singular.
ClosedWave laplace_oracle(const ClosedWave& f, const DirichletOperator& op);

/// Phi = Theta + F: interior sum, boundary taken from F.
ClosedField compose_solution(const BipartiteField& theta, const ClosedField& f);

/// Number of real basis fields of the discrete S^1_0 on this operator's
/// domain: m diagonal fields E_aa, then for each a<b the pair
/// (E_ab + E_ba)/sqrt(2) and i(E_ab - E_ba)/sqrt(2). The enumeration order
/// is part of the contract (shared by the Galerkin solve, weak_residual and
/// hermitian_field_space).
int hermitian_basis_size(int m);
BipartiteField hermitian_basis_field(const Domain& domain, int index);

/// The discrete S^1_0 as an aip::AntiInnerSpace: vectorized Hermitian basis
/// fields with ambient metric G = h^d * (I kron A) (the S-form).
aip::AntiInnerSpace hermitian_field_space(const DirichletOperator& op);

/// Field with the given vectorized values (column-major), inverse of
/// vectorization used by hermitian_field_space.
BipartiteField field_from_ambient(const Domain& domain,
                                  const Eigen::VectorXcd& ambient);

}  // namespace vnlw
