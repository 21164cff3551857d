#pragma once

#include "vnlw/field.hpp"
#include "vnlw/grid.hpp"

namespace vnlw {

/// The three Dirichlet pairings on bipartite fields. All are built from the
/// stiffness operator A so that summation by parts is exact:
///   S    : h^d * sum conj(Phi) .* (A_x Psi)        (x-gradient pairing)
///   Full : S(Psi,Phi) + h^d * sum conj(Phi) .* (Psi A_y)
///   Anti : S(Psi,Phi) - h^d * sum conj(Phi) .* (Psi A_y)
/// with d = 2*dim the product-domain dimension. Full is a Hermitian positive
/// definite inner product; Anti restricted to Hermitian fields is the
/// anti-inner product 2i*Im S.
enum class FormKind { Full, S, Anti };

Complex dirichlet_form(const BipartiteField& psi, const BipartiteField& phi,
                       FormKind which, const DirichletOperator& op);

/// l(Psi) = h^d * sum Psi .* conj(W), the load functional of the weak
/// problem.
Complex functional_l(const BipartiteField& psi, const BipartiteField& w);

/// Strong product-domain operator: (A_x - A_y) applied to an interior field,
/// i.e. the matrix commutator [A, Psi]. Zero boundary values are implied.
BipartiteField apply_pair_operator(const DirichletOperator& op,
                                   const BipartiteField& psi);

/// Sharp discrete Poincare constant M = 1/(2*lambda_min):
/// h^d sum |Psi|^2 <= M * Full(Psi,Psi) for every interior field.
/// Requires U >= 0 so that lambda_min > 0.
double poincare_constant(const DirichletOperator& op);

}  // namespace vnlw
