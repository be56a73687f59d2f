#include <catch_amalgamated.hpp>

#include <elop/schur_multiplier.hpp>

#include "oracles.hpp"

using namespace elop;
using Catch::Matchers::WithinAbs;

namespace {
CMatrix diag(std::initializer_list<cplx> d) {
  CVector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (auto x : d) v(i++) = x;
  return v.asDiagonal();
}

SchurSymbol explicit_symbol(const CMatrix& f) {
  SchurSymbol s;
  s.f = f;
  return s;
}
} // namespace

TEST_CASE("symbol from a diagonal family", "[schur]") {
  const ElementaryOperator op(CoefficientFamily({{diag({1, 2}), diag({3, 4, 5})}, {diag({1, 0}), diag({1, 1, 1})}}));
  const auto s = symbol_from_diagonal_family(op);
  CMatrix expect(2, 3);
  expect << 4, 5, 6, 6, 8, 10;
  REQUIRE(s.f == expect);
  REQUIRE(s.origin == SchurSymbol::Origin::FromFamily);

  // F o X equals the operator application, and the entry multiset its spectrum
  Rng rng(61);
  const CMatrix x = gaussian_matrix(rng, 2, 3);
  REQUIRE((schur_apply(s, x) - op.apply(x)).norm() < 1e-14);
  REQUIRE(multiset_distance(schur_spectrum(s).values, {4, 5, 6, 6, 8, 10}) == 0.0);

  CMatrix px(2, 2);
  px << 0, 1, 1, 0;
  REQUIRE_THROWS_AS(symbol_from_diagonal_family(ElementaryOperator(CoefficientFamily({{px, diag({1, 1})}}))),
                    PreconditionError);
  REQUIRE_THROWS_AS(schur_apply(s, CMatrix::Zero(3, 2)), DimensionError);
}

TEST_CASE("schur_apply matches the entrywise oracle", "[schur][property]") {
  Rng rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const Index m = rng.uniform_int(1, 6), n = rng.uniform_int(1, 6);
    const CMatrix f = gaussian_matrix(rng, m, n), x = gaussian_matrix(rng, m, n);
    const CMatrix y = schur_apply(explicit_symbol(f), x);
    for (Index k = 0; k < n; ++k)
      for (Index i = 0; i < m; ++i) REQUIRE(y(i, k) == f(i, k) * x(i, k));
  }
}

TEST_CASE("schur spectrum equals the Kronecker spectrum of a diagonal family", "[schur][property]") {
  Rng rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = rng.uniform_int(1, 4), n = rng.uniform_int(1, 4);
    std::vector<Term> t;
    for (int j = rng.uniform_int(1, 3); j > 0; --j) {
      CVector a(m), b(n);
      for (Index i = 0; i < m; ++i) a(i) = rng.cnormal();
      for (Index i = 0; i < n; ++i) b(i) = rng.cnormal();
      t.push_back({a.asDiagonal(), b.asDiagonal()});
    }
    const ElementaryOperator op{CoefficientFamily(std::move(t))};
    const auto s = symbol_from_diagonal_family(op);
    CHECK(multiset_distance(schur_spectrum(s).values, spectrum(op).values) <= 1e-12 * (1 + s.f.norm()));
  }
}

TEST_CASE("Toeplitz symbols", "[schur][toeplitz]") {
  const std::vector<Atom> one{{1.0, 0.0}};
  REQUIRE(toeplitz_symbol(one, 4).f == CMatrix::Ones(4, 4));

  const std::vector<Atom> shifted{{2.0, 0.0}, {1.0, 1.0}};
  const auto s = toeplitz_symbol(shifted, 3);
  REQUIRE(s.samples.size() == 5);
  for (Index k = 0; k < 3; ++k)
    for (Index i = 0; i < 3; ++i) {
      const double t = static_cast<double>(k - i);
      CHECK(std::abs(s.f(i, k) - (2.0 + std::exp(cplx(0, -t)))) < 1e-15);
    }

  const std::vector<cplx> samples{1, 2, 3};
  const auto t2 = toeplitz_symbol(samples, 2);
  CMatrix expect(2, 2);
  expect << 2, 3, 1, 2;
  REQUIRE(t2.f == expect);
  REQUIRE_THROWS_AS(toeplitz_symbol(samples, 3), DimensionError);
  REQUIRE_THROWS_AS(toeplitz_symbol(samples, 0), DimensionError);
}

TEST_CASE("reciprocal", "[schur]") {
  const auto s = toeplitz_symbol(std::vector<Atom>{{2.0, 0.0}, {1.0, 1.0}}, 4);
  const auto r = reciprocal(s);
  REQUIRE((r.f.cwiseProduct(s.f) - CMatrix::Ones(4, 4)).norm() < 1e-14);
  for (std::size_t i = 0; i < s.samples.size(); ++i) CHECK(std::abs(r.samples[i] * s.samples[i] - 1.0) < 1e-15);
  REQUIRE_THROWS_AS(reciprocal(explicit_symbol(CMatrix::Zero(2, 2))), PreconditionError);
}

TEST_CASE("upper bound on exact cases", "[schur][norm]") {
  SchurNormOptions opt;
  const auto id = schur_norm_upper(CMatrix::Identity(5, 5), opt);
  REQUIRE(id.certified);
  REQUIRE_THAT(id.value, WithinAbs(1.0, 1e-9));

  // rank one u v*: the multiplier norm is max|u| max|v|
  Rng rng(64);
  const CVector u = gaussian_matrix(rng, 6, 1), v = gaussian_matrix(rng, 5, 1);
  opt.rank = 1;
  const auto r1 = schur_norm_upper(CMatrix(u * v.adjoint()), opt);
  REQUIRE(r1.certified);
  const double exact = u.cwiseAbs().maxCoeff() * v.cwiseAbs().maxCoeff();
  REQUIRE(r1.value <= exact * (1 + 1e-9));
  REQUIRE(r1.value >= exact * (1 - 1e-9));

  const auto ones = schur_norm_upper(CMatrix::Ones(7, 7));
  REQUIRE_THAT(ones.value, WithinAbs(1.0, 1e-9));
  REQUIRE(ones.factor_residual <= 1e-10);
}

TEST_CASE("lower bound never exceeds upper bound", "[schur][norm][property]") {
  SchurNormOptions opt;
  opt.restarts = 2;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const Index m = rng.uniform_int(1, 5), n = rng.uniform_int(1, 5);
    const CMatrix f = gaussian_matrix(rng, m, n);
    opt.seed = seed;
    const auto up = schur_norm_upper(f, opt);
    const double lo = schur_norm_lower(f, 5, seed);
    CHECK(up.certified);
    CHECK(lo <= up.value * (1 + 1e-9));
    CHECK(lo >= f.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("gauge objective gradient matches central differences", "[schur][norm][gradient]") {
  Rng rng(65);
  const CMatrix p0 = gaussian_matrix(rng, 5, 3), q0 = gaussian_matrix(rng, 4, 3);
  const detail::GaugeObjective obj{p0, q0, 8.0};
  Params x(factor_param_count(3));
  pack_factor(CMatrix(CMatrix::Identity(3, 3) + 0.2 * gaussian_matrix(rng, 3, 3)), x, 0);
  Params g;
  obj(x, &g);
  const auto f = [&](const Params& y) { return obj(y, nullptr); };
  for (int k = 0; k < 20; ++k) {
    Params v(x.size());
    for (Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
    v.normalize();
    const double fd = oracle::directional_fd(f, x, v, 1e-6);
    CHECK(std::abs(fd - g.dot(v)) <= 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("reciprocal of 2 + e^{-it} stays bounded", "[schur][probe]") {
  const std::vector<Atom> atoms{{2.0, 0.0}, {1.0, 1.0}};
  const auto rep = wiener_pitt_probe(atoms, {4, 8, 16});
  for (const auto& row : rep.rows) {
    CHECK(row.certified);
    CHECK(row.upper <= 1.1);
    CHECK(row.lower <= row.upper * (1 + 1e-9));
    double lo = 1e300;
    for (Index t = -(row.n - 1); t < row.n; ++t)
      lo = std::min(lo, std::sqrt(5.0 + 4.0 * std::cos(static_cast<double>(t))));
    CHECK_THAT(row.inf_abs_f, WithinAbs(lo, 1e-12));
  }
}

TEST_CASE("probe with a constant symbol", "[schur][probe]") {
  const auto rep = wiener_pitt_probe({{1.0, 0.0}}, {2, 4, 8});
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    CHECK_THAT(row.upper, WithinAbs(1.0, 1e-9));
    CHECK_THAT(row.lower, WithinAbs(1.0, 1e-12));
  }
  REQUIRE_THROWS_AS(wiener_pitt_probe({{1.0, 0.0}, {-1.0, 0.0}}, {2}), PreconditionError);
}
