#pragma once

#include <utility>

#include "krein/indefinite.hpp"

namespace krein {

/// A linear operator defined on a subspace: `domain` holds an orthonormal
/// basis of the domain and `action` the images of those basis vectors.
struct PartialOperator {
  Matrix domain;
  Matrix action;

  /// Builds the operator from spanning vectors and their images. The vectors
  /// need not be independent, but the images must be consistent with every
  /// linear relation among them.
  static PartialOperator from_spanning(const Matrix& vectors, const Matrix& images,
                                       const Tolerances& tol = kDefaultTolerances);

  Index ambient_dim() const { return domain.rows(); }
  Index domain_dim() const { return domain.cols(); }

  /// Throws InvalidInput if v is not in the domain.
  Vector apply(const Vector& v, const Tolerances& tol = kDefaultTolerances) const;

  /// Operator on span(action) mapping action columns back to domain columns.
  /// Throws InvalidInput when the operator is not injective.
  PartialOperator inverse(const Tolerances& tol = kDefaultTolerances) const;
};

/// Angular representation T0 = K+- P+ + K-+ P- of a pair of definite
/// subspaces. The domain basis is stored as [M+ | M-] with M± ⊆ H±.
class PartialContraction {
 public:
  /// Validates: consistent action, J-invariant domain, J T0 = -T0 J on the
  /// domain, and ||T0|| <= 1 - strict_contraction (within unity_flag).
  static PartialContraction make(const SignatureSpace& space, const Matrix& domain_vectors,
                                 const Matrix& images,
                                 const Tolerances& tol = kDefaultTolerances);

  const SignatureSpace& space() const { return space_; }
  const Matrix& domain() const { return domain_; }
  const Matrix& action() const { return action_; }
  Index dim_m_plus() const { return k_plus_; }
  Index dim_m_minus() const { return domain_.cols() - k_plus_; }
  Matrix m_plus() const { return domain_.leftCols(k_plus_); }
  Matrix m_minus() const { return domain_.rightCols(dim_m_minus()); }
  /// Images of the M+ basis (vectors in H-) and of the M- basis (in H+).
  Matrix k_plus_minus() const { return action_.leftCols(k_plus_); }
  Matrix k_minus_plus() const { return action_.rightCols(dim_m_minus()); }

  /// Orthonormal basis of H ⊖ D(T0).
  Matrix domain_complement() const { return linalg::complement(domain_); }
  bool full_domain() const { return domain_.cols() == space_.dim(); }
  double norm() const { return norm_; }
  /// ||T0|| lies within unity_flag of 1.
  bool norm_at_unity() const { return at_unity_; }

  PartialOperator as_operator() const { return {domain_, action_}; }

 private:
  PartialContraction(SignatureSpace space, Matrix domain, Matrix action, Index k_plus,
                     double norm, bool at_unity)
      : space_(std::move(space)), domain_(std::move(domain)), action_(std::move(action)),
        k_plus_(k_plus), norm_(norm), at_unity_(at_unity) {}

  SignatureSpace space_;
  Matrix domain_;
  Matrix action_;
  Index k_plus_ = 0;
  double norm_ = 0.0;
  bool at_unity_ = false;
};

/// Angular operator of a positive L+ and negative L- (either may be empty).
PartialContraction extract_angular(const SignatureSpace& space, const Subspace& l_plus,
                                   const Subspace& l_minus,
                                   const Tolerances& tol = kDefaultTolerances);

/// L± = (I + T0) P± D(T0).
std::pair<Subspace, Subspace> reconstruct_subspaces(const PartialContraction& t0);

/// Symmetry of T0 on its domain, i.e. duality of L+ and L-.
bool duality_test(const PartialContraction& t0, const Tolerances& tol = kDefaultTolerances);

/// ||D* T0 D - (D* T0 D)*||; zero iff duality_test passes.
double duality_residual(const PartialContraction& t0);

struct DefinitenessReport {
  double norm = 0.0;
  bool uniformly_definite = false;
  bool definite_not_uniform = false;
  /// Uniformly definite, but 1 - ||T0|| is below approaching_unity.
  bool approaching_non_uniform = false;
  bool maximal = false;
};

DefinitenessReport classify_norm(double norm, bool maximal,
                                 const Tolerances& tol = kDefaultTolerances);
DefinitenessReport definiteness_class(const PartialContraction& t0,
                                      const Tolerances& tol = kDefaultTolerances);

/// C0 (f+ + f-) = f+ - f- on D(C0) = L+ ∔ L-. Requires duality; verifies
/// C0^2 = I and that J C0 is symmetric positive on the domain.
PartialOperator c0_operator(const PartialContraction& t0,
                            const Tolerances& tol = kDefaultTolerances);

/// G0 = (I - T0)(I + T0)^{-1} on (I + T0) D(T0). Throws CayleyUndefined
/// when I + T0 is not injective on the domain.
PartialOperator cayley_g0(const PartialContraction& t0,
                          const Tolerances& tol = kDefaultTolerances);

}  // namespace krein
