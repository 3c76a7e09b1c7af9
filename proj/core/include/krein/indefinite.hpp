#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "krein/linalg.hpp"

namespace krein {

/// C^n with a fundamental symmetry J (J = J*, J^2 = I, J != ±I) and the
/// indefinite product [f, g] = (Jf, g). The ±1 eigenbases of J are computed
/// once at construction; copies share the immutable data.
class SignatureSpace {
 public:
  explicit SignatureSpace(const Matrix& j, const Tolerances& tol = kDefaultTolerances);

  /// J = diag(signs); every entry must be +1 or -1.
  static SignatureSpace diagonal(const std::vector<int>& signs);

  Index dim() const { return data_->j.rows(); }
  const Matrix& J() const { return data_->j; }
  const Matrix& P_plus() const { return data_->p_plus; }
  const Matrix& P_minus() const { return data_->p_minus; }
  /// Orthonormal bases of H+ and H-. For diagonal J these are unit vectors in
  /// index order.
  const Matrix& basis_plus() const { return data_->basis_plus; }
  const Matrix& basis_minus() const { return data_->basis_minus; }
  Index dim_plus() const { return data_->basis_plus.cols(); }
  Index dim_minus() const { return data_->basis_minus.cols(); }

 private:
  struct Data {
    Matrix j, p_plus, p_minus, basis_plus, basis_minus;
  };
  std::shared_ptr<const Data> data_;
};

/// A linear subspace of C^n held by an orthonormal basis.
class Subspace {
 public:
  /// Span of the columns of `vectors`, orthonormalized with a relative
  /// singular-value cutoff.
  static Subspace span(const Matrix& vectors, double rel_cutoff = kDefaultTolerances.rank);
  static Subspace zero(Index ambient_dim);

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  bool empty() const { return basis_.cols() == 0; }
  const Matrix& basis() const { return basis_; }
  Matrix projector() const { return linalg::projector(basis_); }

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// [f, g] = (Jf, g), linear in f.
cplx indefinite_product(const SignatureSpace& space, const Vector& f, const Vector& g);

enum class SubspaceSign { positive, negative, nonnegative, nonpositive, indefinite };

std::string_view to_string(SubspaceSign s);

struct SubspaceClass {
  SubspaceSign kind = SubspaceSign::indefinite;
  /// min |eigenvalue| of the indefinite Gram matrix when sign-definite, else 0.
  double uniform_margin = 0.0;
  /// Some Gram eigenvalue lies within the neutral-margin band around zero.
  bool numerically_neutral = false;
  RealVector gram_eigenvalues;
};

/// Sign class from the eigenvalues of B* J B for an orthonormal basis B.
/// Throws InvalidInput for the zero subspace.
SubspaceClass classify_subspace(const SignatureSpace& space, const Subspace& l,
                                const Tolerances& tol = kDefaultTolerances);

struct FundamentalProjections {
  Matrix plus;
  Matrix minus;
};

FundamentalProjections fundamental_projections(const SignatureSpace& space);

}  // namespace krein
