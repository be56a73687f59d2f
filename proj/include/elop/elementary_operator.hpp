#ifndef ELOP_ELEMENTARY_OPERATOR_HPP
#define ELOP_ELEMENTARY_OPERATOR_HPP

#include <algorithm>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace elop {

/// One term A X B of an elementary operator.
struct Term {
  CMatrix a;
  CMatrix b;
};

/// Ordered coefficient pairs (A_j, B_j), A_j m x m and B_j n x n, J >= 1.
/// Immutable after construction; the square-summability budgets
/// sum ||A_j||^2 and sum ||B_j||^2 are computed once and kept as metadata.
class CoefficientFamily {
public:
  explicit CoefficientFamily(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw DimensionError("coefficient family needs at least one term");
    m_ = terms_.front().a.rows();
    n_ = terms_.front().b.rows();
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      const auto& t = terms_[j];
      const std::string tag = "term " + std::to_string(j);
      if (t.a.rows() != m_ || t.a.cols() != m_)
        throw DimensionError(tag + ": A is " + shape_str(t.a) + ", expected " +
                             std::to_string(m_) + "x" + std::to_string(m_));
      if (t.b.rows() != n_ || t.b.cols() != n_)
        throw DimensionError(tag + ": B is " + shape_str(t.b) + ", expected " +
                             std::to_string(n_) + "x" + std::to_string(n_));
      require_finite(t.a, tag.c_str());
      require_finite(t.b, tag.c_str());
      const double na = op_norm(t.a), nb = op_norm(t.b);
      budget_left_ += na * na;
      budget_right_ += nb * nb;
      norm_product_sum_ += na * nb;
    }
  }

  /// Lüders-style family: B_j = A_j.
  static CoefficientFamily symmetric(const std::vector<CMatrix>& coeffs) {
    std::vector<Term> t;
    t.reserve(coeffs.size());
    for (const auto& c : coeffs) t.push_back({c, c});
    return CoefficientFamily(std::move(t));
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Term& operator[](std::size_t j) const { return terms_[j]; }
  Index left_dim() const { return m_; }
  Index right_dim() const { return n_; }

  double budget_left() const { return budget_left_; }
  double budget_right() const { return budget_right_; }
  /// sum_j ||A_j|| ||B_j||, the natural scale of ||Delta||.
  double norm_product_sum() const { return norm_product_sum_; }

  std::vector<CMatrix> left() const {
    std::vector<CMatrix> out;
    for (const auto& t : terms_) out.push_back(t.a);
    return out;
  }
  std::vector<CMatrix> right() const {
    std::vector<CMatrix> out;
    for (const auto& t : terms_) out.push_back(t.b);
    return out;
  }

private:
  std::vector<Term> terms_;
  Index m_ = 0;
  Index n_ = 0;
  double budget_left_ = 0.0;
  double budget_right_ = 0.0;
  double norm_product_sum_ = 0.0;
};

/// Delta(X) = sum_j A_j X B_j acting on m x n matrices.
///
/// The Kronecker realization K = sum_j B_j^T (x) A_j satisfies
/// vec(Delta(X)) = K vec(X) under column stacking. It is built lazily on first
/// request and shared between copies; concurrent first requests are
/// serialized through std::call_once.
class ElementaryOperator {
public:
  explicit ElementaryOperator(CoefficientFamily family)
      : family_(std::make_shared<const CoefficientFamily>(std::move(family))),
        cache_(std::make_shared<KronCache>()) {}

  const CoefficientFamily& family() const { return *family_; }
  Index left_dim() const { return family_->left_dim(); }
  Index right_dim() const { return family_->right_dim(); }
  /// Dimension of the space the operator acts on (m n).
  Index dim() const { return left_dim() * right_dim(); }

  CMatrix apply(const CMatrix& x) const {
    const Index m = left_dim(), n = right_dim();
    if (x.rows() != m || x.cols() != n)
      throw DimensionError("apply: X is " + shape_str(x) + ", operator acts on " +
                           std::to_string(m) + "x" + std::to_string(n));
    CMatrix out = CMatrix::Zero(m, n);
    for (const auto& t : family_->terms()) out.noalias() += t.a * x * t.b;
    return out;
  }

  CMatrix operator()(const CMatrix& x) const { return apply(x); }

  const CMatrix& kron_matrix(Index cap = default_kron_cap) const {
    if (dim() > cap)
      throw CapacityError("kron_matrix: realization of size " + std::to_string(dim()) +
                          " exceeds cap " + std::to_string(cap));
    std::call_once(cache_->once, [&] {
      CMatrix k = CMatrix::Zero(dim(), dim());
      for (const auto& t : family_->terms()) k.noalias() += kron(t.b.transpose(), t.a, cap);
      cache_->k = std::move(k);
    });
    return cache_->k;
  }

private:
  struct KronCache {
    std::once_flag once;
    CMatrix k;
  };
  std::shared_ptr<const CoefficientFamily> family_;
  std::shared_ptr<KronCache> cache_;
};

inline CMatrix apply(const ElementaryOperator& op, const CMatrix& x) { return op.apply(x); }

inline const CMatrix& kron_matrix(const ElementaryOperator& op, Index cap = default_kron_cap) {
  return op.kron_matrix(cap);
}

/// X -> X on m x n matrices.
inline ElementaryOperator identity_operator(Index m, Index n) {
  return ElementaryOperator(
      CoefficientFamily({{CMatrix::Identity(m, m), CMatrix::Identity(n, n)}}));
}

/// Eigenvalues of the Kronecker realization (the ground-truth spectrum).
inline SpectrumSet spectrum(const ElementaryOperator& op, Tolerance tol = {},
                            Index cap = default_kron_cap) {
  auto s = eig(op.kron_matrix(cap), tol);
  s.provenance = "oracle";
  return s;
}

/// Formal adjoint: X -> sum_j A_j* X B_j*.
inline ElementaryOperator formal_adjoint(const ElementaryOperator& op) {
  std::vector<Term> t;
  t.reserve(op.family().size());
  for (const auto& term : op.family().terms()) t.push_back({term.a.adjoint(), term.b.adjoint()});
  return ElementaryOperator(CoefficientFamily(std::move(t)));
}

/// first o second: X -> first(second(X)), with J1 * J2 terms
/// (A_i A'_j, B'_j B_i), i over `first`, j over `second`.
inline ElementaryOperator compose(const ElementaryOperator& first, const ElementaryOperator& second) {
  if (first.left_dim() != second.left_dim() || first.right_dim() != second.right_dim())
    throw DimensionError("compose: operators act on " + std::to_string(first.left_dim()) + "x" +
                         std::to_string(first.right_dim()) + " and " +
                         std::to_string(second.left_dim()) + "x" +
                         std::to_string(second.right_dim()) + " matrices");
  std::vector<Term> t;
  t.reserve(first.family().size() * second.family().size());
  for (const auto& outer : first.family().terms())
    for (const auto& inner : second.family().terms())
      t.push_back({outer.a * inner.a, inner.b * outer.b});
  return ElementaryOperator(CoefficientFamily(std::move(t)));
}

struct Classification {
  bool formally_selfadjoint = false;
  bool formally_normal = false;
  bool c2_positive = false;
  bool is_luders = false;
  /// ||sum A_j A_j*|| and ||sum B_j* B_j||.
  double haagerup_left = 0.0;
  double haagerup_right = 0.0;
  double selfadjoint_residual = 0.0;
  double normal_residual = 0.0;
};

inline Classification classify(const ElementaryOperator& op, Tolerance tol = {},
                               Index cap = default_kron_cap) {
  Classification c;
  const CMatrix& k = op.kron_matrix(cap);
  const auto herm = is_hermitian(k, tol);
  c.formally_selfadjoint = herm.ok;
  c.selfadjoint_residual = herm.residual;
  const auto normal = is_normal(k, tol);
  c.formally_normal = normal.ok;
  c.normal_residual = normal.residual;
  c.c2_positive = herm.ok && is_psd(k, tol).ok;

  const auto& fam = op.family();
  CMatrix left = CMatrix::Zero(fam.left_dim(), fam.left_dim());
  CMatrix right = CMatrix::Zero(fam.right_dim(), fam.right_dim());
  for (const auto& t : fam.terms()) {
    left.noalias() += t.a * t.a.adjoint();
    right.noalias() += t.b.adjoint() * t.b;
  }
  c.haagerup_left = op_norm(left);
  c.haagerup_right = op_norm(right);

  c.is_luders = fam.left_dim() == fam.right_dim();
  for (const auto& t : fam.terms()) {
    if (!c.is_luders) break;
    const double scale = std::max(op_norm(t.a), op_norm(t.b));
    c.is_luders = tol.passes(op_norm(t.a - t.b), scale) && is_psd(t.a, tol).ok;
  }
  return c;
}

} // namespace elop

#endif // ELOP_ELEMENTARY_OPERATOR_HPP
