#include <catch_amalgamated.hpp>

#include <thread>

#include <elop/verification.hpp>

using namespace elop;

namespace {
CMatrix diag(std::initializer_list<cplx> d) {
  CVector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (auto x : d) v(i++) = x;
  return v.asDiagonal();
}

ElementaryOperator random_operator(Rng& rng, Index m, Index n, std::size_t terms, bool real_only) {
  std::vector<Term> t;
  for (std::size_t j = 0; j < terms; ++j)
    t.push_back({gaussian_matrix(rng, m, m, real_only), gaussian_matrix(rng, n, n, real_only)});
  return ElementaryOperator(CoefficientFamily(std::move(t)));
}
} // namespace

TEST_CASE("family construction validates shapes", "[elementary]") {
  REQUIRE_THROWS_AS(CoefficientFamily({}), DimensionError);
  REQUIRE_THROWS_AS(CoefficientFamily({{CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)},
                                       {CMatrix::Identity(3, 3), CMatrix::Identity(3, 3)}}),
                    DimensionError);
  REQUIRE_THROWS_AS(CoefficientFamily({{CMatrix::Zero(2, 3), CMatrix::Identity(3, 3)}}),
                    DimensionError);
  const CoefficientFamily fam({{2.0 * CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)},
                               {diag({0, 3}), 0.5 * CMatrix::Identity(3, 3)}});
  REQUIRE(fam.left_dim() == 2);
  REQUIRE(fam.right_dim() == 3);
  REQUIRE(std::abs(fam.budget_left() - 13.0) < 1e-12);
  REQUIRE(std::abs(fam.budget_right() - 1.25) < 1e-12);
}

TEST_CASE("apply", "[elementary][apply]") {
  const auto id = identity_operator(2, 3);
  Rng rng(21);
  const CMatrix x = gaussian_matrix(rng, 2, 3);
  REQUIRE(id.apply(x) == x);

  const ElementaryOperator scale_rows(CoefficientFamily({{diag({1, 2}), CMatrix::Identity(2, 2)}}));
  CMatrix ones = CMatrix::Ones(2, 2), expect(2, 2);
  expect << 1, 1, 2, 2;
  REQUIRE(scale_rows.apply(ones) == expect);
  REQUIRE_THROWS_AS(scale_rows.apply(CMatrix::Ones(3, 2)), DimensionError);
}

TEST_CASE("Kronecker realization matches application", "[elementary][kron][property]") {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = rng.uniform_int(1, 6), n = rng.uniform_int(1, 6);
    const auto terms = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const auto op = random_operator(rng, m, n, terms, rng.coin());
    const CMatrix& k = op.kron_matrix();
    REQUIRE(k.rows() == m * n);
    for (int s = 0; s < 5; ++s) {
      const CMatrix x = gaussian_matrix(rng, m, n);
      const double err = (vec(op.apply(x)) - k * vec(x)).norm();
      CHECK(err <= 1e-12 * op.family().norm_product_sum() * x.norm());
    }
  }
}

TEST_CASE("kron_matrix small cases", "[elementary][kron]") {
  CMatrix a(1, 1), b(1, 1);
  a << 2;
  b << 3;
  const ElementaryOperator op(CoefficientFamily({{a, b}}));
  REQUIRE(op.kron_matrix()(0, 0) == cplx(6));
  const ElementaryOperator d(CoefficientFamily({{diag({1, 2}), diag({3, 4})}}));
  REQUIRE(d.kron_matrix() == diag({3, 6, 4, 8}));
  REQUIRE_THROWS_AS(d.kron_matrix(3), CapacityError);
}

TEST_CASE("kron cache is race-free and shared by copies", "[elementary][kron][concurrency]") {
  Rng rng(23);
  const auto op = random_operator(rng, 5, 4, 3, false);
  const ElementaryOperator copy = op;
  std::vector<const CMatrix*> seen(4);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < seen.size(); ++i)
    threads.emplace_back([&, i] { seen[i] = &(i % 2 ? copy : op).kron_matrix(); });
  for (auto& t : threads) t.join();
  for (const auto* p : seen) REQUIRE(p == seen.front());
}

TEST_CASE("spectrum", "[elementary][spectrum]") {
  REQUIRE(multiset_distance(spectrum(identity_operator(2, 2)).values, {1, 1, 1, 1}) < 1e-14);
  const ElementaryOperator left(CoefficientFamily({{diag({1, 2}), CMatrix::Identity(2, 2)}}));
  REQUIRE(multiset_distance(spectrum(left).values, {1, 1, 2, 2}) < 1e-14);
  const ElementaryOperator d(CoefficientFamily({{diag({1, 2}), diag({3, 4})}}));
  const auto s = spectrum(d);
  REQUIRE(s.provenance == "oracle");
  REQUIRE(multiset_distance(s.values, {3, 4, 6, 8}) < 1e-13);
}

TEST_CASE("formal adjoint", "[elementary][adjoint]") {
  Rng rng(24);
  const CMatrix h1 = random_hermitian(rng, 3), h2 = random_hermitian(rng, 2);
  const ElementaryOperator herm(CoefficientFamily({{h1, h2}}));
  const auto ha = formal_adjoint(herm);
  REQUIRE(ha.family()[0].a == h1);
  REQUIRE(ha.family()[0].b == h2);

  CMatrix a(1, 1), b(1, 1);
  a << cplx(0, 1);
  b << cplx(0, 2);
  const auto sa = formal_adjoint(ElementaryOperator(CoefficientFamily({{a, b}})));
  REQUIRE(sa.family()[0].a(0, 0) == cplx(0, -1));
  REQUIRE(sa.family()[0].b(0, 0) == cplx(0, -2));

  for (int trial = 0; trial < 50; ++trial) {
    const auto op = random_operator(rng, rng.uniform_int(1, 5), rng.uniform_int(1, 5),
                                    static_cast<std::size_t>(rng.uniform_int(1, 4)), false);
    const auto adj = formal_adjoint(op);
    CHECK(adj.kron_matrix() == CMatrix(op.kron_matrix().adjoint()));
    const auto back = formal_adjoint(adj);
    for (std::size_t j = 0; j < op.family().size(); ++j) {
      CHECK(back.family()[j].a == op.family()[j].a);
      CHECK(back.family()[j].b == op.family()[j].b);
    }
  }
}

TEST_CASE("classify", "[elementary][classify]") {
  const auto proj = ElementaryOperator(CoefficientFamily::symmetric({diag({1, 0}), diag({0, 1})}));
  const auto c = classify(proj);
  CHECK(c.formally_selfadjoint);
  CHECK(c.formally_normal);
  CHECK(c.c2_positive);
  CHECK(c.is_luders);
  CHECK(std::abs(c.haagerup_left - 1.0) < 1e-14);
  CHECK(std::abs(c.haagerup_right - 1.0) < 1e-14);
  CHECK(multiset_distance(spectrum(proj).values, {1, 0, 0, 1}) < 1e-14);

  CMatrix s(2, 2);
  s << 0, 1, 0, 0;
  const auto shift = ElementaryOperator(CoefficientFamily::symmetric({s}));
  CHECK_FALSE(classify(shift).formally_selfadjoint);
  CHECK_FALSE(classify(shift).is_luders);

  const ElementaryOperator rect(CoefficientFamily({{CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)}}));
  CHECK_FALSE(classify(rect).is_luders);
  CHECK(classify(rect).c2_positive);
}

TEST_CASE("Lüders families are C2-positive with real non-negative spectrum", "[elementary][classify][property]") {
  Rng rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = rng.uniform_int(1, 5);
    std::vector<CMatrix> coeffs;
    for (int j = rng.uniform_int(1, 4); j > 0; --j) {
      const CMatrix c = gaussian_matrix(rng, n, n);
      coeffs.push_back(c * c.adjoint());
    }
    const auto op = ElementaryOperator(CoefficientFamily::symmetric(coeffs));
    const auto c = classify(op);
    CHECK(c.is_luders);
    CHECK(c.c2_positive);
    const auto s = spectrum(op);
    CHECK(s.is_nonneg());
  }
}

TEST_CASE("self-adjointness is equivalent to a real spectrum on generated families", "[elementary][classify][property]") {
  Rng rng(26);
  for (int trial = 0; trial < 40; ++trial) {
    const Index m = rng.uniform_int(1, 4), n = rng.uniform_int(1, 4);
    // half Hermitian-coefficient families (formally self-adjoint), half generic
    const bool herm = trial % 2 == 0;
    std::vector<Term> t;
    for (int j = rng.uniform_int(1, 3); j > 0; --j)
      t.push_back(herm ? Term{random_hermitian(rng, m), random_hermitian(rng, n)}
                       : Term{gaussian_matrix(rng, m, m), gaussian_matrix(rng, n, n)});
    const ElementaryOperator op{CoefficientFamily(std::move(t))};
    const auto c = classify(op);
    CHECK(c.formally_selfadjoint == herm);
    CHECK(spectrum(op).is_real() == herm);
  }
}

TEST_CASE("compose", "[elementary][compose]") {
  Rng rng(27);
  const auto op = random_operator(rng, 3, 2, 2, false);
  const auto with_id = compose(op, identity_operator(3, 2));
  REQUIRE(with_id.family().size() == op.family().size());
  for (std::size_t j = 0; j < op.family().size(); ++j) {
    CHECK(with_id.family()[j].a == op.family()[j].a);
    CHECK(with_id.family()[j].b == op.family()[j].b);
  }

  const auto p = random_operator(rng, 2, 2, 1, false), q = random_operator(rng, 2, 2, 1, false);
  const auto pq = compose(p, q);
  REQUIRE(pq.family().size() == 1);
  CHECK(pq.family()[0].a == CMatrix(p.family()[0].a * q.family()[0].a));
  CHECK(pq.family()[0].b == CMatrix(q.family()[0].b * p.family()[0].b));

  for (int trial = 0; trial < 30; ++trial) {
    const Index m = rng.uniform_int(1, 4), n = rng.uniform_int(1, 4);
    const auto a = random_operator(rng, m, n, static_cast<std::size_t>(rng.uniform_int(1, 3)), false);
    const auto b = random_operator(rng, m, n, static_cast<std::size_t>(rng.uniform_int(1, 3)), false);
    const CMatrix prod = a.kron_matrix() * b.kron_matrix();
    const double scale = a.kron_matrix().norm() * b.kron_matrix().norm();
    CHECK((compose(a, b).kron_matrix() - prod).norm() <= 1e-12 * scale);
  }
  REQUIRE_THROWS_AS(compose(identity_operator(2, 2), identity_operator(2, 3)), DimensionError);
}
