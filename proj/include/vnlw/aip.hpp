#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>

#include "vnlw/errors.hpp"

namespace vnlw::aip {

using Complex = std::complex<double>;

/// Finite-dimensional anti-inner product space: a real-linear subspace V of
/// a complex coordinate space C^d (spanned by `basis` columns, real
/// coefficients) with ambient Hermitian positive definite metric G. The
/// inner product is (x,y) = y^H G x (linear in the first slot); the
/// anti-inner product is <x,y> = (x,y) - (y,x) = 2i*Im(x,y).
class AntiInnerSpace {
 public:
  /// Throws ValidationError when G is not Hermitian positive definite or the
  /// basis columns are not real-linearly independent.
  AntiInnerSpace(Eigen::MatrixXcd basis, Eigen::MatrixXcd metric);

  static AntiInnerSpace with_identity_metric(Eigen::MatrixXcd basis);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXcd& basis() const { return basis_; }
  const Eigen::MatrixXcd& metric() const { return metric_; }

  Complex inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;
  Complex anti_inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;

  /// Element of V with the given real coordinates.
  Eigen::VectorXcd element(const Eigen::VectorXd& coords) const;

  /// K_jk = -i*<e_j, e_k>, the real skew-symmetric Gram matrix of the
  /// anti-inner product in the chosen basis.
  const Eigen::MatrixXd& skew_gram() const { return skew_gram_; }

 private:
  Eigen::MatrixXcd basis_;   // d x k, columns e_j
  Eigen::MatrixXcd metric_;  // d x d, Hermitian positive definite
  Eigen::MatrixXd skew_gram_;
};

/// The 2x2 determinant form on C^2: <(a,b),(c,d)> = a*d - b*c. A complex
/// anti-inner product (complex-linear first slot).
Complex anti_inner_det2(const Eigen::Vector2cd& u, const Eigen::Vector2cd& v);

/// Result of axiom / separation diagnostics. Defects are maxima of absolute
/// violations over the sampled tuples; kernel_basis columns span the
/// radical {y in V : <x,y> = 0 for all x}.
struct AntiProductReport {
  double additivity_defect = 0.0;
  double antisymmetry_defect = 0.0;
  bool separated = false;
  Eigen::MatrixXcd kernel_basis;
};

using FormFn = std::function<Complex(const Eigen::VectorXcd&, const Eigen::VectorXcd&)>;
using SampleFn = std::function<Eigen::VectorXcd(std::mt19937_64&)>;

/// Samples random triples and scalars and records the worst violation of
/// first-slot linearity and antisymmetry. `complex_scalars` selects the
/// scalar field of the linearity test (complex for forms like det2, real for
/// the 2i*Im construction, which is only real-linear).
AntiProductReport check_axioms(const FormFn& form, const SampleFn& sample,
                               int sample_count, std::uint64_t seed,
                               bool complex_scalars);

/// Axiom check for the space's own anti-inner product (real scalars),
/// including the separation diagnostic.
AntiProductReport check_axioms(const AntiInnerSpace& space, int sample_count,
                               std::uint64_t seed);

/// Separation diagnostic: V is separated iff the skew Gram matrix K is
/// nonsingular. Returns the kernel of the form mapped back to ambient
/// vectors. Degeneracy is a reported property, not an error.
AntiProductReport separation_kernel(const AntiInnerSpace& space,
                                    double rank_cutoff = tol::algebra);

struct Representation {
  Eigen::VectorXcd representer;  // y in V (ambient coordinates)
  Eigen::VectorXd coordinates;   // real coordinates of y in the basis
  double residual = 0.0;         // ||K theta - c||_2, c_j = -i*l(e_j)
};

/// Solves <e_j, y> = l(e_j) for y in V in the minimum-norm least-squares
/// sense (pseudoinverse of K with relative singular value cutoff).
/// A residual of ~0 certifies representability; a nonzero residual
/// certifies that l is outside the representable range, possible only for
/// degenerate spaces. Throws NotPurelyImaginary when any |Re l(e_j)| exceeds
/// imag_tol * max|l|.
Representation represent_functional(const AntiInnerSpace& space,
                                    const Eigen::VectorXcd& l_values,
                                    double imag_tol = tol::algebra,
                                    double svd_cutoff = tol::algebra);

}  // namespace vnlw::aip
