#include "vnlw/solver.hpp"

#include <cmath>
#include <limits>

namespace vnlw {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Hamiltonian stencil (-Laplace + U per axis) applied in the x argument of a
// closed-grid field, evaluated at interior x nodes; the y argument stays on
// the closed grid. Column b is a closed y index.
Eigen::MatrixXcd apply_closed_x(const ClosedField& f, const DirichletOperator& op) {
  const Domain& d = f.domain;
  const int n = d.axis.n_cells;
  const int mi = d.interior_points();
  const int ci = d.closed_points();
  const double w = 1.0 / (d.axis.spacing() * d.axis.spacing());
  const Eigen::VectorXd& u = op.axis_potential();

  Eigen::MatrixXcd out(mi, ci);
  if (d.dim == 1) {
    for (int i = 1; i < n; ++i)
      for (int b = 0; b < ci; ++b)
        out(i - 1, b) = w * (2.0 * f.values(i, b) - f.values(i - 1, b) -
                             f.values(i + 1, b)) +
                        u(i - 1) * f.values(i, b);
    return out;
  }
  const int c = d.axis.closed_count();
  const int m = d.axis.interior_count();
  for (int i1 = 1; i1 < n; ++i1)
    for (int i2 = 1; i2 < n; ++i2) {
      const int row = (i1 - 1) * m + (i2 - 1);
      const int a = i1 * c + i2;
      for (int b = 0; b < ci; ++b)
        out(row, b) = w * (4.0 * f.values(a, b) - f.values(a - c, b) -
                           f.values(a + c, b) - f.values(a - 1, b) -
                           f.values(a + 1, b)) +
                      (u(i1 - 1) + u(i2 - 1)) * f.values(a, b);
    }
  return out;
}

// Restriction of the closed y index to interior y nodes.
Eigen::MatrixXcd restrict_y(const Eigen::MatrixXcd& vals, const Domain& d) {
  const int n = d.axis.n_cells;
  const int mi = d.interior_points();
  Eigen::MatrixXcd out(vals.rows(), mi);
  if (d.dim == 1) {
    out = vals.middleCols(1, mi);
    return out;
  }
  const int c = d.axis.closed_count();
  int col = 0;
  for (int j1 = 1; j1 < n; ++j1)
    for (int j2 = 1; j2 < n; ++j2) out.col(col++) = vals.col(j1 * c + j2);
  return out;
}

int closed_index_of_interior(const Domain& d, int a) {
  if (d.dim == 1) return a + 1;
  const int m = d.axis.interior_count();
  const int c = d.axis.closed_count();
  return (a / m + 1) * c + (a % m + 1);
}

struct BasisIndex {
  enum Kind { Diag, Sym, Anti } kind;
  int a = 0, b = 0;
};

BasisIndex decode_basis_index(int m, int index) {
  if (index < 0 || index >= hermitian_basis_size(m))
    throw BadDimension("hermitian basis index out of range");
  if (index < m) return {BasisIndex::Diag, index, index};
  int p = (index - m) / 2;
  const bool anti = ((index - m) % 2) == 1;
  // row-major pair enumeration: a outer, b inner, a < b
  int a = 0;
  while (p >= m - 1 - a) {
    p -= m - 1 - a;
    ++a;
  }
  const int b = a + 1 + p;
  return {anti ? BasisIndex::Anti : BasisIndex::Sym, a, b};
}

}  // namespace

int hermitian_basis_size(int m) { return m * m; }

BipartiteField hermitian_basis_field(const Domain& domain, int index) {
  const int m = domain.interior_points();
  const BasisIndex e = decode_basis_index(m, index);
  BipartiteField out{domain, Eigen::MatrixXcd::Zero(m, m)};
  switch (e.kind) {
    case BasisIndex::Diag:
      out.values(e.a, e.a) = 1.0;
      break;
    case BasisIndex::Sym:
      out.values(e.a, e.b) = kInvSqrt2;
      out.values(e.b, e.a) = kInvSqrt2;
      break;
    case BasisIndex::Anti:
      out.values(e.a, e.b) = Complex(0.0, kInvSqrt2);
      out.values(e.b, e.a) = Complex(0.0, -kInvSqrt2);
      break;
  }
  return out;
}

aip::AntiInnerSpace hermitian_field_space(const DirichletOperator& op) {
  const int m = op.size();
  const int n2 = m * m;
  const double hd = op.domain().pair_volume();

  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(n2, n2);
  for (int k = 0; k < n2; ++k) {
    const BasisIndex e = decode_basis_index(m, k);
    // column-major vectorization: entry (r, c) at index r + c*m
    switch (e.kind) {
      case BasisIndex::Diag:
        basis(e.a + e.a * m, k) = 1.0;
        break;
      case BasisIndex::Sym:
        basis(e.a + e.b * m, k) = kInvSqrt2;
        basis(e.b + e.a * m, k) = kInvSqrt2;
        break;
      case BasisIndex::Anti:
        basis(e.a + e.b * m, k) = Complex(0.0, kInvSqrt2);
        basis(e.b + e.a * m, k) = Complex(0.0, -kInvSqrt2);
        break;
    }
  }

  // S-form metric: vec(Phi)^H [h^d (I kron A)] vec(Psi) = h^d tr(Phi^H A Psi)
  Eigen::MatrixXcd metric = Eigen::MatrixXcd::Zero(n2, n2);
  for (int j = 0; j < m; ++j)
    metric.block(j * m, j * m, m, m) = hd * op.matrix().cast<Complex>();

  return aip::AntiInnerSpace(std::move(basis), std::move(metric));
}

BipartiteField field_from_ambient(const Domain& domain,
                                  const Eigen::VectorXcd& ambient) {
  const int m = domain.interior_points();
  if (ambient.size() != m * m)
    throw BadDimension("field_from_ambient: vector size mismatch");
  BipartiteField out{domain, Eigen::MatrixXcd(m, m)};
  out.values = Eigen::Map<const Eigen::MatrixXcd>(ambient.data(), m, m);
  return out;
}

bool check_source_symmetry(const BipartiteField& w, double tol) {
  if (w.values.size() == 0) return true;
  const double scale = w.values.cwiseAbs().maxCoeff();
  const double defect = (w.values + w.values.adjoint().eval()).cwiseAbs().maxCoeff();
  return defect <= tol * std::max(1.0, scale);
}

ReducedProblem reduce_problem(const ClosedField& f, const DirichletOperator& op,
                              double herm_tol) {
  if (!(f.domain == op.domain()))
    throw GridMismatch("reduce_problem: boundary data not on the operator's domain");
  if (f.values.rows() != f.domain.closed_points())
    throw BadDimension("reduce_problem: boundary data must live on the closed grid");
  const double scale = f.values.size() > 0 ? f.values.cwiseAbs().maxCoeff() : 0.0;
  if (hermitian_defect(f) > herm_tol * std::max(1.0, scale))
    throw NotHermitianData(
        "reduce_problem: F violates conj(F(x,y)) = F(y,x) on the closed grid");

  // W = -(H_x - H_y) F = H_y F - H_x F at interior nodes.
  const Eigen::MatrixXcd hx = restrict_y(apply_closed_x(f, op), f.domain);
  // H_y F via the swap symmetry: (H_y F)(x,y) spans from applying the stencil
  // to the y argument, which is the x-application on the transpose.
  const ClosedField ft{f.domain, f.values.transpose()};
  const Eigen::MatrixXcd hy =
      restrict_y(apply_closed_x(ft, op), f.domain).transpose();

  BipartiteField w{f.domain, hy - hx};
  if (!check_source_symmetry(w, 1e-10))
    throw Error("reduce_problem: reduced source lost its swap antisymmetry");
  return ReducedProblem{std::move(w), f, op};
}

ReducedProblem problem_from_source(const BipartiteField& w,
                                   const DirichletOperator& op, double sym_tol) {
  if (!(w.domain == op.domain()))
    throw GridMismatch("problem_from_source: source not on the operator's domain");
  if (w.values.rows() != op.size())
    throw BadDimension("problem_from_source: source must live on interior nodes");
  if (!check_source_symmetry(w, sym_tol))
    throw ValidationError(
        "problem_from_source: source violates conj(W(x,y)) = -W(y,x)");
  const int c = op.domain().closed_points();
  ClosedField f{op.domain(), Eigen::MatrixXcd::Zero(c, c)};
  return ReducedProblem{w, std::move(f), op};
}

SpectralSolution solve_spectral(const ReducedProblem& p, double gap_cutoff_rel) {
  const DirichletOperator& op = p.op;
  const int m = op.size();
  const Eigen::MatrixXd& q = op.eigenvectors();
  const Eigen::VectorXd& lam = op.eigenvalues();

  Eigen::MatrixXcd what = q.transpose() * p.source.values * q;
  // Project onto the skew-Hermitian class (rounding-level correction); keeps
  // the Hermitian-closure identity of the division exact.
  what = 0.5 * (what - what.adjoint().eval());

  const double cutoff = gap_cutoff_rel * lam.cwiseAbs().maxCoeff();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m, m);
  double obstruction2 = 0.0;
  double gap_floor = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double gap = lam(i) - lam(j);
      if (std::abs(gap) > cutoff) {
        c(i, j) = what(i, j) / gap;
        gap_floor = std::min(gap_floor, std::abs(gap));
      } else {
        obstruction2 += std::norm(what(i, j));
      }
    }

  SpectralSolution sol;
  sol.coefficients = c;
  sol.theta = BipartiteField{p.source.domain, q * c * q.transpose()};
  sol.kernel_obstruction = std::sqrt(obstruction2);
  sol.gap_floor = std::isfinite(gap_floor) ? gap_floor : 0.0;
  return sol;
}

GalerkinSolution solve_galerkin(const ReducedProblem& p, int max_basis_dim) {
  const int m = p.op.size();
  const int n2 = hermitian_basis_size(m);
  if (n2 > max_basis_dim)
    throw TooLarge("solve_galerkin: S^1_0 dimension " + std::to_string(n2) +
                   " exceeds the dense limit " + std::to_string(max_basis_dim));

  const aip::AntiInnerSpace space = hermitian_field_space(p.op);

  // l(e_k) = h^d tr(W^H e_k), written out on the elementary basis fields.
  const double hd = p.op.domain().pair_volume();
  const Eigen::MatrixXcd& w = p.source.values;
  Eigen::VectorXcd l_values(n2);
  for (int k = 0; k < n2; ++k) {
    const BasisIndex e = decode_basis_index(m, k);
    switch (e.kind) {
      case BasisIndex::Diag:
        l_values(k) = hd * std::conj(w(e.a, e.a));
        break;
      case BasisIndex::Sym:
        l_values(k) = hd * kInvSqrt2 * (std::conj(w(e.a, e.b)) + std::conj(w(e.b, e.a)));
        break;
      case BasisIndex::Anti:
        l_values(k) = Complex(0.0, hd * kInvSqrt2) *
                      (std::conj(w(e.a, e.b)) - std::conj(w(e.b, e.a)));
        break;
    }
  }

  const aip::Representation rep = aip::represent_functional(space, l_values);
  GalerkinSolution sol;
  sol.theta = field_from_ambient(p.source.domain, rep.representer);
  sol.residual = rep.residual;
  return sol;
}

double weak_residual(const BipartiteField& theta, const ReducedProblem& p) {
  if (!(theta.domain == p.op.domain()))
    throw GridMismatch("weak_residual: candidate not on the operator's domain");
  const int m = p.op.size();
  const double hd = p.op.domain().pair_volume();
  const Eigen::MatrixXd& a = p.op.matrix();
  const Eigen::MatrixXcd& th = theta.values;
  const Eigen::MatrixXcd& w = p.source.values;

  // tr(theta^H A E_ab) and tr(theta^H E_ab A) entrywise.
  auto sx = [&](int ea, int eb) {
    Complex acc(0.0, 0.0);
    for (int r = 0; r < m; ++r) acc += std::conj(th(r, eb)) * a(r, ea);
    return acc;
  };
  auto sy = [&](int ea, int eb) {
    Complex acc(0.0, 0.0);
    for (int cc = 0; cc < m; ++cc) acc += std::conj(th(ea, cc)) * a(eb, cc);
    return acc;
  };

  double worst = 0.0;
  for (int k = 0; k < hermitian_basis_size(m); ++k) {
    const BasisIndex e = decode_basis_index(m, k);
    Complex anti, ell;
    switch (e.kind) {
      case BasisIndex::Diag:
        anti = hd * (sx(e.a, e.a) - sy(e.a, e.a));
        ell = hd * std::conj(w(e.a, e.a));
        break;
      case BasisIndex::Sym:
        anti = hd * kInvSqrt2 *
               (sx(e.a, e.b) + sx(e.b, e.a) - sy(e.a, e.b) - sy(e.b, e.a));
        ell = hd * kInvSqrt2 * (std::conj(w(e.a, e.b)) + std::conj(w(e.b, e.a)));
        break;
      case BasisIndex::Anti:
        anti = Complex(0.0, hd * kInvSqrt2) *
               (sx(e.a, e.b) - sx(e.b, e.a) - sy(e.a, e.b) + sy(e.b, e.a));
        ell = Complex(0.0, hd * kInvSqrt2) *
              (std::conj(w(e.a, e.b)) - std::conj(w(e.b, e.a)));
        break;
    }
    worst = std::max(worst, std::abs(anti - ell));
  }
  return worst / std::max(1.0, l2_norm(p.source));
}

ClosedWave laplace_oracle(const ClosedWave& f, const DirichletOperator& op) {
  if (!(f.domain == op.domain()))
    throw GridMismatch("laplace_oracle: boundary data not on the operator's domain");
  if (f.values.size() != f.domain.closed_points())
    throw BadDimension("laplace_oracle: boundary data must live on the closed grid");

  const Domain& d = f.domain;
  const int mi = d.interior_points();
  const double w = 1.0 / (d.axis.spacing() * d.axis.spacing());
  const int n = d.axis.n_cells;

  // Right-hand side from boundary neighbors of interior nodes.
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(mi);
  if (d.dim == 1) {
    b(0) += w * f.values(0);
    b(mi - 1) += w * f.values(n);
  } else {
    const int m = d.axis.interior_count();
    const int c = d.axis.closed_count();
    for (int i1 = 1; i1 < n; ++i1)
      for (int i2 = 1; i2 < n; ++i2) {
        Complex acc(0.0, 0.0);
        if (i1 == 1) acc += f.values((i1 - 1) * c + i2);
        if (i1 == n - 1) acc += f.values((i1 + 1) * c + i2);
        if (i2 == 1) acc += f.values(i1 * c + i2 - 1);
        if (i2 == n - 1) acc += f.values(i1 * c + i2 + 1);
        b((i1 - 1) * m + (i2 - 1)) = w * acc;
      }
  }

  const Eigen::VectorXd& lam = op.eigenvalues();
  const double lmax = lam.cwiseAbs().maxCoeff();
  if (lam.cwiseAbs().minCoeff() <= 1e-12 * std::max(1.0, lmax))
    throw SingularSystem("laplace_oracle: operator is numerically singular");

  Eigen::VectorXcd bh = op.eigenvectors().transpose() * b;
  bh.array() /= lam.array();
  const Eigen::VectorXcd u = op.eigenvectors() * bh;

  ClosedWave out = f;
  for (int a = 0; a < mi; ++a) out.values(closed_index_of_interior(d, a)) = u(a);
  return out;
}

ClosedField compose_solution(const BipartiteField& theta, const ClosedField& f) {
  if (!(theta.domain == f.domain))
    throw GridMismatch("compose_solution: domain mismatch");
  const Domain& d = f.domain;
  if (f.values.rows() != d.closed_points() || theta.values.rows() != d.interior_points())
    throw BadDimension("compose_solution: field sizes do not match the domain");

  ClosedField phi = f;
  const int mi = d.interior_points();
  for (int a = 0; a < mi; ++a) {
    const int ca = closed_index_of_interior(d, a);
    for (int b = 0; b < mi; ++b)
      phi.values(ca, closed_index_of_interior(d, b)) += theta.values(a, b);
  }
  return phi;
}

}  // namespace vnlw
