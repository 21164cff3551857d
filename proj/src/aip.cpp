#include "vnlw/aip.hpp"

#include <cmath>

namespace vnlw::aip {

AntiInnerSpace::AntiInnerSpace(Eigen::MatrixXcd basis, Eigen::MatrixXcd metric)
    : basis_(std::move(basis)), metric_(std::move(metric)) {
  const int d = static_cast<int>(basis_.rows());
  const int k = static_cast<int>(basis_.cols());
  if (d == 0 || k == 0) throw ValidationError("AntiInnerSpace: empty basis");
  if (metric_.rows() != d || metric_.cols() != d)
    throw ValidationError("AntiInnerSpace: metric size does not match ambient dim");

  const double gscale = metric_.cwiseAbs().maxCoeff();
  if ((metric_ - metric_.adjoint().eval()).cwiseAbs().maxCoeff() > tol::algebra * gscale)
    throw ValidationError("AntiInnerSpace: metric is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ges(metric_);
  if (ges.eigenvalues()(0) <= tol::algebra * std::max(1.0, gscale))
    throw ValidationError("AntiInnerSpace: metric is not positive definite");

  // Full complex Gram M_jk = (e_k, e_j)^- form: M = B^H G B; the real part is
  // the Gram of Re(.,.)_G, whose nonsingularity is real-linear independence,
  // and -2 Im M is the skew Gram of the anti-inner product.
  const Eigen::MatrixXcd gb = metric_ * basis_;
  const Eigen::MatrixXcd m = basis_.adjoint() * gb;
  const Eigen::MatrixXd re_gram = m.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> res(re_gram);
  if (res.eigenvalues()(0) <=
      tol::algebra * std::max(1.0, res.eigenvalues()(k - 1)))
    throw ValidationError("AntiInnerSpace: basis is not real-linearly independent");

  skew_gram_ = -2.0 * m.imag();
}

AntiInnerSpace AntiInnerSpace::with_identity_metric(Eigen::MatrixXcd basis) {
  const Eigen::Index d = basis.rows();
  return AntiInnerSpace(std::move(basis), Eigen::MatrixXcd::Identity(d, d));
}

Complex AntiInnerSpace::inner(const Eigen::VectorXcd& x,
                              const Eigen::VectorXcd& y) const {
  if (x.size() != ambient_dim() || y.size() != ambient_dim())
    throw BadDimension("AntiInnerSpace::inner: vector size mismatch");
  return (y.adjoint() * (metric_ * x))(0, 0);
}

Complex AntiInnerSpace::anti_inner(const Eigen::VectorXcd& x,
                                   const Eigen::VectorXcd& y) const {
  // Literal difference so that <x,x> is exactly zero in floating point.
  return inner(x, y) - inner(y, x);
}

Eigen::VectorXcd AntiInnerSpace::element(const Eigen::VectorXd& coords) const {
  if (coords.size() != dim())
    throw BadDimension("AntiInnerSpace::element: coordinate size mismatch");
  return basis_ * coords.cast<Complex>();
}

Complex anti_inner_det2(const Eigen::Vector2cd& u, const Eigen::Vector2cd& v) {
  return u(0) * v(1) - u(1) * v(0);
}

AntiProductReport check_axioms(const FormFn& form, const SampleFn& sample,
                               int sample_count, std::uint64_t seed,
                               bool complex_scalars) {
  if (sample_count < 1) throw ValidationError("check_axioms: sample_count must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // separation is not decidable from samples; only the space overload
  // fills the separated flag and the kernel
  AntiProductReport report;
  for (int s = 0; s < sample_count; ++s) {
    const Eigen::VectorXcd x = sample(rng);
    const Eigen::VectorXcd y = sample(rng);
    const Eigen::VectorXcd z = sample(rng);
    Complex alpha(gauss(rng), complex_scalars ? gauss(rng) : 0.0);
    Complex beta(gauss(rng), complex_scalars ? gauss(rng) : 0.0);

    const Complex lhs = form(alpha * x + beta * y, z);
    const Complex rhs = alpha * form(x, z) + beta * form(y, z);
    report.additivity_defect = std::max(report.additivity_defect, std::abs(lhs - rhs));
    report.antisymmetry_defect =
        std::max(report.antisymmetry_defect, std::abs(form(x, y) + form(y, x)));
  }
  return report;
}

AntiProductReport check_axioms(const AntiInnerSpace& space, int sample_count,
                               std::uint64_t seed) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int k = space.dim();
  SampleFn sample = [&space, k, gauss](std::mt19937_64& rng) mutable {
    Eigen::VectorXd coords(k);
    for (int i = 0; i < k; ++i) coords(i) = gauss(rng);
    return space.element(coords);
  };
  FormFn form = [&space](const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    return space.anti_inner(x, y);
  };
  // The 2i*Im construction is a real anti-inner product space: real scalars.
  AntiProductReport report = check_axioms(form, sample, sample_count, seed, false);
  AntiProductReport sep = separation_kernel(space);
  report.separated = sep.separated;
  report.kernel_basis = std::move(sep.kernel_basis);
  return report;
}

AntiProductReport separation_kernel(const AntiInnerSpace& space,
                                    double rank_cutoff) {
  const Eigen::MatrixXd& k = space.skew_gram();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;

  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_cutoff * smax && sv(i) > 0.0) ++rank;

  AntiProductReport report;
  report.separated = (rank == space.dim());
  const int nullity = space.dim() - rank;
  report.kernel_basis.resize(space.ambient_dim(), nullity);
  for (int j = 0; j < nullity; ++j) {
    const Eigen::VectorXd coords = svd.matrixV().col(rank + j);
    report.kernel_basis.col(j) = space.element(coords);
  }
  return report;
}

Representation represent_functional(const AntiInnerSpace& space,
                                    const Eigen::VectorXcd& l_values,
                                    double imag_tol, double svd_cutoff) {
  const int k = space.dim();
  if (l_values.size() != k)
    throw BadDimension("represent_functional: need one value per basis vector");

  const double scale = l_values.size() > 0 ? l_values.cwiseAbs().maxCoeff() : 0.0;
  const double re_max = l_values.real().cwiseAbs().maxCoeff();
  if (scale > 0.0 && re_max > imag_tol * scale)
    throw NotPurelyImaginary(
        "represent_functional: functional has a real part (max |Re l| = " +
        std::to_string(re_max) + "), not representable");

  const Eigen::VectorXd c = l_values.imag();  // c_j = -i * l(e_j)

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(space.skew_gram(),
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;

  Eigen::VectorXd ut_c = svd.matrixU().transpose() * c;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > svd_cutoff * smax && sv(i) > 0.0)
      ut_c(i) /= sv(i);
    else
      ut_c(i) = 0.0;  // minimum-norm on the degenerate directions
  }
  Representation rep;
  rep.coordinates = svd.matrixV() * ut_c;
  rep.representer = space.element(rep.coordinates);
  rep.residual = (space.skew_gram() * rep.coordinates - c).norm();
  return rep;
}

}  // namespace vnlw::aip
