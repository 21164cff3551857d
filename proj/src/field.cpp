#include "vnlw/field.hpp"

#include <cmath>

namespace vnlw {

BipartiteField zero_field(const Domain& domain) {
  domain.validate();
  const int m = domain.interior_points();
  return {domain, Eigen::MatrixXcd::Zero(m, m)};
}

std::array<double, 2> interior_coord(const Domain& domain, int index) {
  const int m = domain.axis.interior_count();
  if (domain.dim == 1) return {domain.axis.node(index + 1), 0.0};
  return {domain.axis.node(index / m + 1), domain.axis.node(index % m + 1)};
}

std::array<double, 2> closed_coord(const Domain& domain, int index) {
  const int c = domain.axis.closed_count();
  if (domain.dim == 1) return {domain.axis.node(index), 0.0};
  return {domain.axis.node(index / c), domain.axis.node(index % c)};
}

bool is_boundary_index(const Domain& domain, int closed_index) {
  const int n = domain.axis.n_cells;
  if (domain.dim == 1) return closed_index == 0 || closed_index == n;
  const int c = domain.axis.closed_count();
  const int i1 = closed_index / c, i2 = closed_index % c;
  return i1 == 0 || i1 == n || i2 == 0 || i2 == n;
}

BipartiteField swap_adjoint(const BipartiteField& psi) {
  return {psi.domain, psi.values.adjoint()};
}

BipartiteField hermitian_project(const BipartiteField& psi) {
  return {psi.domain, 0.5 * (psi.values + psi.values.adjoint())};
}

double hermitian_defect(const BipartiteField& psi) {
  if (psi.values.size() == 0) return 0.0;
  return (psi.values - psi.values.adjoint().eval()).cwiseAbs().maxCoeff();
}

double hermitian_defect(const ClosedField& f) {
  if (f.values.size() == 0) return 0.0;
  return (f.values - f.values.adjoint().eval()).cwiseAbs().maxCoeff();
}

BipartiteField interior_part(const ClosedField& f) {
  const Domain& d = f.domain;
  const int m = d.interior_points();
  BipartiteField out{d, Eigen::MatrixXcd(m, m)};
  if (d.dim == 1) {
    out.values = f.values.block(1, 1, m, m);
    return out;
  }
  const int ma = d.axis.interior_count();
  const int c = d.axis.closed_count();
  auto closed_of = [&](int a) {
    return (a / ma + 1) * c + (a % ma + 1);
  };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.values(a, b) = f.values(closed_of(a), closed_of(b));
  return out;
}

double sup_norm(const BipartiteField& psi) {
  if (psi.values.size() == 0) return 0.0;
  return psi.values.cwiseAbs().maxCoeff();
}

double l2_norm(const BipartiteField& psi) {
  return std::sqrt(psi.domain.pair_volume() * psi.values.squaredNorm());
}

double l2_norm(const WaveFunction& psi) {
  return std::sqrt(psi.domain.cell_volume() * psi.values.squaredNorm());
}

ClosedField tensor_field(const ClosedWave& f, const ClosedWave& g) {
  if (!(f.domain == g.domain)) throw GridMismatch("tensor_field: domain mismatch");
  return {f.domain, f.values * g.values.transpose()};
}

}  // namespace vnlw
