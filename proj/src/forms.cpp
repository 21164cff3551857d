#include "vnlw/forms.hpp"

namespace vnlw {

namespace {

void check_compatible(const BipartiteField& psi, const BipartiteField& phi,
                      const DirichletOperator& op) {
  if (!(psi.domain == phi.domain))
    throw GridMismatch("dirichlet_form: field domains differ");
  if (!(psi.domain == op.domain()))
    throw GridMismatch("dirichlet_form: fields not on the operator's domain");
  if (psi.values.rows() != op.size() || phi.values.rows() != op.size())
    throw GridMismatch("dirichlet_form: field size does not match operator");
}

}  // namespace

Complex dirichlet_form(const BipartiteField& psi, const BipartiteField& phi,
                       FormKind which, const DirichletOperator& op) {
  check_compatible(psi, phi, op);
  const double hd = psi.domain.pair_volume();
  const auto a = op.matrix().cast<Complex>();

  const Eigen::MatrixXcd conj_phi = phi.values.conjugate();
  switch (which) {
    case FormKind::S:
      return hd * (a * psi.values).cwiseProduct(conj_phi).sum();
    case FormKind::Full:
      return hd * ((a * psi.values).cwiseProduct(conj_phi).sum() +
                   (psi.values * a).cwiseProduct(conj_phi).sum());
    case FormKind::Anti:
      return hd * ((a * psi.values).cwiseProduct(conj_phi).sum() -
                   (psi.values * a).cwiseProduct(conj_phi).sum());
  }
  throw Error("dirichlet_form: invalid selector");
}

Complex functional_l(const BipartiteField& psi, const BipartiteField& w) {
  if (!(psi.domain == w.domain)) throw GridMismatch("functional_l: domain mismatch");
  return psi.domain.pair_volume() *
         psi.values.cwiseProduct(w.values.conjugate()).sum();
}

BipartiteField apply_pair_operator(const DirichletOperator& op,
                                   const BipartiteField& psi) {
  if (!(psi.domain == op.domain()))
    throw GridMismatch("apply_pair_operator: domain mismatch");
  const auto a = op.matrix().cast<Complex>();
  return {psi.domain, a * psi.values - psi.values * a};
}

double poincare_constant(const DirichletOperator& op) {
  if (op.axis_potential().size() > 0 && op.axis_potential().minCoeff() < 0.0)
    throw ValidationError("poincare_constant: requires potential >= 0");
  return 1.0 / (2.0 * op.min_eigenvalue());
}

}  // namespace vnlw
