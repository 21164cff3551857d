#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "vnlw/grid.hpp"

namespace vnlw {

using Complex = std::complex<double>;

/// Two-argument grid function Psi(x, y) on the interior of the product
/// domain. Row index = x node, column index = y node (flattened for dim 2).
/// Elements of the discrete S^1_0 additionally satisfy
/// conj(Psi(x,y)) = Psi(y,x), i.e. the value matrix is Hermitian.
struct BipartiteField {
  Domain domain;
  Eigen::MatrixXcd values;
};

/// Same, sampled on the closed product grid (boundary nodes included).
/// Carrier for boundary data F.
struct ClosedField {
  Domain domain;
  Eigen::MatrixXcd values;
};

/// One-particle grid function on interior nodes.
struct WaveFunction {
  Domain domain;
  Eigen::VectorXcd values;
};

/// One-particle grid function on the closed grid (boundary data carrier).
struct ClosedWave {
  Domain domain;
  Eigen::VectorXcd values;
};

BipartiteField zero_field(const Domain& domain);

/// Coordinates of a flattened interior / closed node index. For dim 1 only
/// the first component is meaningful.
std::array<double, 2> interior_coord(const Domain& domain, int index);
std::array<double, 2> closed_coord(const Domain& domain, int index);

/// True when the closed index lies on the boundary of the domain.
bool is_boundary_index(const Domain& domain, int closed_index);

/// (S Psi)(x,y) = conj(Psi(y,x)). Involution: S(S Psi) = Psi exactly.
BipartiteField swap_adjoint(const BipartiteField& psi);

/// Projection onto the Hermitian class: (Psi + S Psi)/2. Idempotent,
/// real-linear; output satisfies the S^1_0 symmetry exactly.
BipartiteField hermitian_project(const BipartiteField& psi);

/// max |conj(Psi(x,y)) - Psi(y,x)| over all node pairs.
double hermitian_defect(const BipartiteField& psi);
double hermitian_defect(const ClosedField& f);

/// Interior restriction of a closed-grid field.
BipartiteField interior_part(const ClosedField& f);

double sup_norm(const BipartiteField& psi);

/// Discrete L2 norm, sqrt(h^d * sum |Psi|^2) with d = 2*dim.
double l2_norm(const BipartiteField& psi);
/// One-particle L2 norm, sqrt(h^dim * sum |psi|^2).
double l2_norm(const WaveFunction& psi);

/// Samples f(x, y) on the closed product grid.
template <typename F>
ClosedField sample_closed(const Domain& domain, F&& f) {
  domain.validate();
  const int c = domain.closed_points();
  ClosedField out{domain, Eigen::MatrixXcd(c, c)};
  for (int a = 0; a < c; ++a) {
    const auto xa = closed_coord(domain, a);
    for (int b = 0; b < c; ++b) {
      out.values(a, b) = f(xa, closed_coord(domain, b));
    }
  }
  return out;
}

template <typename F>
BipartiteField sample_interior(const Domain& domain, F&& f) {
  domain.validate();
  const int m = domain.interior_points();
  BipartiteField out{domain, Eigen::MatrixXcd(m, m)};
  for (int a = 0; a < m; ++a) {
    const auto xa = interior_coord(domain, a);
    for (int b = 0; b < m; ++b) {
      out.values(a, b) = f(xa, interior_coord(domain, b));
    }
  }
  return out;
}

/// Rank-one closed field f(x)*g(y) from closed one-particle samples.
ClosedField tensor_field(const ClosedWave& f, const ClosedWave& g);

template <typename F>
ClosedWave sample_closed_wave(const Domain& domain, F&& f) {
  domain.validate();
  const int c = domain.closed_points();
  ClosedWave out{domain, Eigen::VectorXcd(c)};
  for (int a = 0; a < c; ++a) out.values(a) = f(closed_coord(domain, a));
  return out;
}

}  // namespace vnlw
