#ifndef ELOP_VERIFICATION_HPP
#define ELOP_VERIFICATION_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectral_theorems.hpp"

namespace elop {

// ---------------------------------------------------------------------------
// Instance generators

/// Commuting normal family U diag(d_j) U*, j = 1..terms, sharing one Haar
/// unitary U. Diagonals are complex Gaussian, or real when `real_spectrum`.
inline std::vector<CMatrix> planted_normal_family(Rng& rng, Index n, std::size_t terms,
                                                  bool real_spectrum = false) {
  const CMatrix u = random_unitary(rng, n);
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < terms; ++j) {
    CVector d(n);
    for (Index i = 0; i < n; ++i) d(i) = real_spectrum ? cplx(rng.normal(), 0.0) : rng.cnormal();
    out.push_back(conjugate_diagonal(u, d));
  }
  return out;
}

/// Commuting PSD family: common Haar eigenbasis, eigenvalues uniform in [0, 2).
inline std::vector<CMatrix> planted_psd_family(Rng& rng, Index n, std::size_t terms) {
  const CMatrix u = random_unitary(rng, n);
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < terms; ++j) {
    CVector d(n);
    for (Index i = 0; i < n; ++i) d(i) = rng.uniform(0.0, 2.0);
    out.push_back(conjugate_diagonal(u, d));
  }
  return out;
}

/// Family of unrelated complex Gaussian matrices (real Gaussian when `real_only`).
inline std::vector<CMatrix> random_family(Rng& rng, Index n, std::size_t terms,
                                          bool real_only = false) {
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < terms; ++j) out.push_back(gaussian_matrix(rng, n, n, real_only));
  return out;
}

inline ElementaryOperator make_operator(const std::vector<CMatrix>& left,
                                        const std::vector<CMatrix>& right) {
  std::vector<Term> t;
  for (std::size_t j = 0; j < left.size(); ++j) t.push_back({left[j], right[j]});
  return ElementaryOperator(CoefficientFamily(std::move(t)));
}

// ---------------------------------------------------------------------------
// Harness

enum class Theorem { ComNor, Tens, Luders, Intertwine };

inline const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::ComNor: return "comnor";
    case Theorem::Tens: return "tens";
    case Theorem::Luders: return "luders";
    case Theorem::Intertwine: return "intertwine";
  }
  return "?";
}

inline std::optional<Theorem> parse_theorem(const std::string& s) {
  if (s == "comnor") return Theorem::ComNor;
  if (s == "tens") return Theorem::Tens;
  if (s == "luders") return Theorem::Luders;
  if (s == "intertwine") return Theorem::Intertwine;
  return std::nullopt;
}

/// One verified instance. `hausdorff` is the metric the verdict is based on:
/// formula-vs-oracle Hausdorff distance (comnor, tens), distance of the
/// spectrum from [0, inf) (luders), or the excess of eig(N) over eig(T)
/// (intertwine). `m`, `n` are the left/right dimensions (k, q for intertwine).
struct InstanceRecord {
  std::uint64_t seed = 0;
  std::size_t index = 0;
  Index m = 0;
  Index n = 0;
  std::size_t terms = 0;
  double hausdorff = 0.0;
  double scale = 1.0;
  /// tens only: multiset distance between fiber and product formulas when
  /// both families commute; negative when not applicable.
  double formula_agreement = -1.0;
  bool pass = false;
};

struct VerifyReport {
  Theorem theorem = Theorem::ComNor;
  std::uint64_t seed = 0;
  double threshold = 1e-8;
  std::vector<InstanceRecord> records;

  bool all_pass() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; }));
  }
  double max_metric() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, r.hausdorff / r.scale);
    return m;
  }
};

/// Runs one seeded instance. Instance i draws from the stream
/// derive_seed(seed, i), so results do not depend on evaluation order.
inline InstanceRecord verify_instance(Theorem theorem, std::uint64_t base_seed, std::size_t index,
                                      double threshold, Tolerance tol = {}) {
  InstanceRecord rec;
  rec.index = index;
  rec.seed = derive_seed(base_seed, index);
  Rng rng(rec.seed);
  switch (theorem) {
    case Theorem::ComNor: {
      const Index m = rng.uniform_int(1, 6), n = rng.uniform_int(1, 6);
      const auto terms = static_cast<std::size_t>(rng.uniform_int(1, 4));
      const bool real_left = rng.coin(), real_right = rng.coin();
      const auto left = planted_normal_family(rng, m, terms, real_left);
      const auto right = planted_normal_family(rng, n, terms, real_right);
      const auto op = make_operator(left, right);
      const auto formula = product_spectrum(joint_diagonalize(left, tol, rec.seed),
                                            joint_diagonalize(right, tol, rec.seed + 1), tol);
      const auto oracle = spectrum(op, tol);
      rec.m = m;
      rec.n = n;
      rec.terms = terms;
      rec.scale = std::max(1.0, op_norm(op.kron_matrix()));
      rec.hausdorff = hausdorff(formula, oracle);
      rec.pass = rec.hausdorff <= threshold * rec.scale;
      break;
    }
    case Theorem::Tens: {
      const Index m = rng.uniform_int(1, 6), n = rng.uniform_int(1, 6);
      const auto terms = static_cast<std::size_t>(rng.uniform_int(1, 4));
      const bool both_commute = index % 2 == 1;
      const auto left = planted_normal_family(rng, m, terms, rng.coin());
      const auto right = both_commute ? planted_normal_family(rng, n, terms)
                                      : random_family(rng, n, terms, rng.coin());
      const auto op = make_operator(left, right);
      const auto fiber = fiber_spectrum(op, tol, rec.seed);
      const auto oracle = spectrum(op, tol);
      rec.m = m;
      rec.n = n;
      rec.terms = terms;
      rec.scale = std::max(1.0, op_norm(op.kron_matrix()));
      rec.hausdorff = hausdorff(fiber, oracle);
      rec.pass = rec.hausdorff <= threshold * rec.scale;
      if (both_commute) {
        const auto product = product_spectrum(joint_diagonalize(left, tol, rec.seed),
                                              joint_diagonalize(right, tol, rec.seed + 1), tol);
        rec.formula_agreement = multiset_distance(fiber, product);
        rec.pass = rec.pass && rec.formula_agreement <= threshold * rec.scale;
      }
      break;
    }
    case Theorem::Luders: {
      const Index m = rng.uniform_int(1, 6), n = rng.uniform_int(1, 6);
      const auto terms = static_cast<std::size_t>(rng.uniform_int(1, 4));
      const auto left = planted_psd_family(rng, m, terms);
      std::vector<CMatrix> right;
      for (std::size_t j = 0; j < terms; ++j) right.push_back(random_psd(rng, n));
      const auto op = make_operator(left, right);
      const auto report = luders_check(op, Tolerance(threshold, threshold));
      rec.m = m;
      rec.n = n;
      rec.terms = terms;
      rec.scale = report.scale;
      rec.hausdorff = std::max(std::max(0.0, -report.min_re), report.max_abs_im);
      rec.pass = report.verdict == Verdict::Pass && rec.hausdorff <= threshold * rec.scale;
      break;
    }
    case Theorem::Intertwine: {
      const Index k = rng.uniform_int(1, 4);
      const Index q = rng.uniform_int(static_cast<int>(k), 8);
      const auto inst = make_intertwined_instance(k, q, rec.seed);
      const auto check = check_inclusion(inst, Tolerance(threshold, 0.0));
      rec.m = k;
      rec.n = q;
      rec.terms = 1;
      rec.scale = 1.0;
      rec.hausdorff = check.excess;
      rec.pass = check.holds;
      break;
    }
  }
  return rec;
}

inline VerifyReport verify(Theorem theorem, std::size_t instances, std::uint64_t seed,
                           double threshold = 1e-8, Tolerance tol = {}) {
  VerifyReport rep;
  rep.theorem = theorem;
  rep.seed = seed;
  rep.threshold = threshold;
  rep.records.reserve(instances);
  for (std::size_t i = 0; i < instances; ++i)
    rep.records.push_back(verify_instance(theorem, seed, i, threshold, tol));
  return rep;
}

} // namespace elop

#endif // ELOP_VERIFICATION_HPP
