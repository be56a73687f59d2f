#include <catch_amalgamated.hpp>

#include <elop/random.hpp>

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
} // namespace

TEST_CASE("eig of diagonal and nilpotent matrices", "[matrix][eig]") {
  auto s = eig(diag({1, 2, 3}));
  REQUIRE(multiset_distance(s.values, {1, 2, 3}) < 1e-14);
  CMatrix nil(2, 2);
  nil << 0, 1, 0, 0;
  s = eig(nil);
  REQUIRE(s.size() == 2);
  REQUIRE(s.max_abs() == 0.0);
}

TEST_CASE("eig returns roots of the characteristic polynomial", "[matrix][eig][oracle]") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix m = gaussian_matrix(rng, 5, 5);
    const auto s = eig(m);
    REQUIRE(s.size() == 5);
    for (const auto& lam : s.values)
      CHECK(std::abs(oracle::determinant(m - lam * CMatrix::Identity(5, 5))) <= 1e-6);
    // multiplicities: trace and determinant are the sum and product
    cplx sum = 0.0, prod = 1.0;
    for (const auto& lam : s.values) {
      sum += lam;
      prod *= lam;
    }
    CHECK(std::abs(sum - m.trace()) < 1e-12 * (1 + m.norm()));
    CHECK(std::abs(prod - oracle::determinant(m)) < 1e-10 * (1 + std::abs(prod)));
  }
}

TEST_CASE("eig error paths and degenerate sizes", "[matrix][eig]") {
  REQUIRE_THROWS_AS(eig(CMatrix::Zero(2, 3)), DimensionError);
  REQUIRE(eig(CMatrix(0, 0)).empty());
  CMatrix one(1, 1);
  one << cplx(2, -1);
  REQUIRE(eig(one).values.front() == cplx(2, -1));
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  REQUIRE_THROWS_AS(eig(bad), PreconditionError);
}

TEST_CASE("eig is invariant under unitary similarity", "[matrix][eig][property]") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = rng.uniform_int(1, 8);
    const CMatrix m = gaussian_matrix(rng, n, n);
    const CMatrix u = random_unitary(rng, n);
    const auto a = eig(m), b = eig(u.adjoint() * m * u);
    CHECK(hausdorff(a, b) <= 1e-9 * op_norm(m));
  }
}

TEST_CASE("herm_eig", "[matrix][herm_eig]") {
  auto he = herm_eig(CMatrix::Identity(3, 3));
  REQUIRE((he.values - RVector::Ones(3)).norm() < 1e-15);
  CMatrix px(2, 2);
  px << 0, 1, 1, 0;
  he = herm_eig(px);
  REQUIRE_THAT(he.values(0), WithinAbs(-1.0, 1e-15));
  REQUIRE_THAT(he.values(1), WithinAbs(1.0, 1e-15));

  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix h = random_hermitian(rng, 6);
    he = herm_eig(h);
    for (Index i = 1; i < 6; ++i) CHECK(he.values(i - 1) <= he.values(i));
    const CMatrix rec = he.vectors * he.values.cast<cplx>().asDiagonal() * he.vectors.adjoint();
    CHECK((rec - h).norm() <= 1e-12 * h.norm());
    CHECK((he.vectors.adjoint() * he.vectors - CMatrix::Identity(6, 6)).norm() < 1e-13);
  }

  CMatrix shift(2, 2);
  shift << 0, 1, 0, 0;
  REQUIRE_THROWS_AS(herm_eig(shift), PreconditionError);
}

TEST_CASE("kron", "[matrix][kron]") {
  CMatrix a(1, 1), b(1, 1);
  a << 2;
  b << 3;
  REQUIRE(kron(a, b)(0, 0) == cplx(6));
  REQUIRE(kron(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)) == CMatrix::Identity(4, 4));
  REQUIRE(kron(diag({1, 2}), diag({3, 4})) == diag({3, 4, 6, 8}));
  REQUIRE_THROWS_AS(kron(CMatrix::Zero(70, 70), CMatrix::Zero(70, 70)), CapacityError);
  REQUIRE_THROWS_AS(kron(CMatrix::Zero(3, 3), CMatrix::Zero(3, 3), 8), CapacityError);
}

TEST_CASE("kron matches the index formula and the mixed-product rule", "[matrix][kron][property]") {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const Index p = rng.uniform_int(1, 4), q = rng.uniform_int(1, 4), r = rng.uniform_int(1, 4),
                s = rng.uniform_int(1, 4), t = rng.uniform_int(1, 4), u = rng.uniform_int(1, 4);
    const CMatrix a = gaussian_matrix(rng, p, q), b = gaussian_matrix(rng, r, s);
    const CMatrix c = gaussian_matrix(rng, q, t), d = gaussian_matrix(rng, s, u);
    CHECK(kron(a, b) == oracle::kron_by_index(a, b));
    const CMatrix lhs = kron(a, b) * kron(c, d);
    const CMatrix rhs = kron(a * c, b * d);
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    // bilinearity
    const CMatrix a2 = gaussian_matrix(rng, p, q);
    const cplx alpha(0.3, -1.2);
    const CMatrix lin = kron(alpha * a + a2, b);
    CHECK((lin - (alpha * kron(a, b) + kron(a2, b))).norm() <= 1e-12 * lin.norm());
  }
}

TEST_CASE("vec and unvec", "[matrix][vec]") {
  CMatrix x(2, 2);
  x << 1, 3, 2, 4;
  const CVector v = vec(x);
  for (Index i = 0; i < 4; ++i) REQUIRE(v(i) == cplx(static_cast<double>(i + 1)));
  REQUIRE(unvec(v, 2, 2) == x);
  REQUIRE_THROWS_AS(unvec(v, 3, 2), DimensionError);

  Rng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const Index m = rng.uniform_int(1, 6), n = rng.uniform_int(1, 6);
    const CMatrix a = gaussian_matrix(rng, m, n), b = gaussian_matrix(rng, m, n);
    CHECK(unvec(vec(a), m, n) == a);
    CHECK(std::abs(vec(a).norm() - a.norm()) <= 1e-13 * a.norm());
    const cplx tr = oracle::trace_inner(a, b);
    CHECK(std::abs(tr - vec(b).dot(vec(a))) <= 1e-13 * a.norm() * b.norm());
  }
}

TEST_CASE("op_norm", "[matrix][norm]") {
  REQUIRE_THAT(op_norm(CMatrix::Identity(4, 4)), WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(op_norm(diag({3, -5})), WithinAbs(5.0, 1e-14));
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = rng.uniform_int(1, 20), n = rng.uniform_int(1, 20);
    const CMatrix a = gaussian_matrix(rng, m, n);
    const CMatrix gram = a.adjoint() * a;
    const double ref = std::sqrt(herm_eig(gram).values.maxCoeff());
    CHECK(std::abs(op_norm(a) - ref) <= 1e-10 * ref);
  }
}

TEST_CASE("structural predicates", "[matrix][predicates]") {
  REQUIRE(is_psd(diag({1, 0})).ok);
  REQUIRE_FALSE(is_psd(diag({1, -1})).ok);
  CMatrix up(2, 2), lo(2, 2);
  up << 0, 1, 0, 0;
  lo << 0, 0, 1, 0;
  const auto c = commute(up, lo);
  REQUIRE_FALSE(c.ok);
  REQUIRE_THAT(c.residual, WithinAbs(1.0, 1e-15));
  REQUIRE_FALSE(is_normal(up).ok);
  REQUIRE_THROWS_AS(commute(up, CMatrix::Identity(3, 3)), DimensionError);

  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.uniform_int(1, 8);
    const CMatrix u = random_unitary(rng, n);
    const auto nc = is_normal(u);
    CHECK(nc.ok);
    CHECK(nc.residual <= 1e-13);
    const CMatrix cc = gaussian_matrix(rng, n, rng.uniform_int(1, 8));
    CHECK(is_psd(cc * cc.adjoint()).ok);
    CHECK(is_hermitian(random_hermitian(rng, n)).ok);
  }
}

TEST_CASE("tolerance semantics", "[matrix][tolerance]") {
  const Tolerance t(1e-3, 1e-2);
  REQUIRE(t.passes(0.011, 1.0));
  REQUIRE_FALSE(t.passes(0.0111, 1.0));
  REQUIRE(t.passes(-0.5, 100.0));
  REQUIRE_THROWS_AS(Tolerance(-1.0, 0.0), ConfigError);
}

TEST_CASE("spectrum set distances", "[spectrum]") {
  const std::vector<cplx> a{0, 1}, b{0, 0, 1}, c{0, 1, 1};
  REQUIRE(hausdorff(a, b) == 0.0);
  REQUIRE(std::isinf(multiset_distance(a, b)));
  REQUIRE_THAT(multiset_distance(b, c), WithinAbs(1.0, 0.0));
  REQUIRE(std::isinf(hausdorff(a, {})));
  REQUIRE(contained_in({cplx(0, 1e-9)}, a, 1e-8));
}
