#include <catch_amalgamated.hpp>

#include <elop/semidiagonality.hpp>

using namespace elop;
using Catch::Matchers::WithinAbs;

TEST_CASE("projection ladder", "[semidiag]") {
  const auto full = ProjectionLadder::full(5);
  REQUIRE(full.ranks() == std::vector<Index>{1, 2, 3, 4});
  REQUIRE_THROWS_AS(ProjectionLadder(4, {1, 1}), DimensionError);
  REQUIRE_THROWS_AS(ProjectionLadder(4, {5}), DimensionError);
  const CMatrix p = coordinate_projection(4, 2);
  REQUIRE((p * p - p).norm() == 0.0);
  REQUIRE(p.trace() == cplx(2));
}

TEST_CASE("shift has budget one at every rung", "[semidiag]") {
  const std::vector<CMatrix> fam{shift_matrix(12)};
  const auto prof = semidiag_profile(fam, ProjectionLadder::full(12));
  for (const auto& pt : prof.points) CHECK_THAT(pt.budget, WithinAbs(1.0, 1e-14));
  CHECK(prof.growth_exponent == 0.0);
}

TEST_CASE("all-ones matrix has budget 2 r (N - r)", "[semidiag]") {
  const std::vector<CMatrix> fam{CMatrix::Ones(16, 16)};
  const auto prof = semidiag_profile(fam, ProjectionLadder::full(16));
  for (const auto& pt : prof.points)
    CHECK_THAT(pt.budget, WithinAbs(2.0 * static_cast<double>(pt.rank * (16 - pt.rank)), 1e-12));
  REQUIRE(prof.argmax_rank == 8);
  REQUIRE_THAT(prof.max_budget, WithinAbs(128.0, 1e-12));
  REQUIRE_THAT(prof.growth_exponent, WithinAbs(1.0, 1e-12));
}

TEST_CASE("commutator budget equals the crossing-entry sum", "[semidiag][property]") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = rng.uniform_int(1, 12);
    std::vector<CMatrix> fam;
    for (int j = rng.uniform_int(1, 4); j > 0; --j) fam.push_back(gaussian_matrix(rng, n, n));
    const Index r = rng.uniform_int(0, static_cast<int>(n));
    const double a = commutator_hs_budget(fam, r), b = crossing_entry_budget(fam, r);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, b));
  }
}

TEST_CASE("band families stay under the band bound", "[semidiag][band][property]") {
  for (Index b : {0, 1, 2, 4}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto fam = band_family(24, b, 3, seed);
      for (const auto& a : fam)
        for (Index k = 0; k < 24; ++k)
          for (Index i = 0; i < 24; ++i) {
            if (std::abs(i - k) > b) REQUIRE(a(i, k) == cplx(0));
            REQUIRE(std::abs(a(i, k)) <= 1.0);
          }
      const double bound = band_bound(fam, b);
      const auto prof = semidiag_profile(fam, ProjectionLadder::full(24));
      for (const auto& pt : prof.points) CHECK(pt.budget <= bound * (1 + 1e-12));
      if (b == 0) CHECK(prof.max_budget == 0.0);
    }
  }
}

TEST_CASE("tridiagonal families of three stay at or below 6", "[semidiag][band]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto prof = semidiag_profile(band_family(32, 1, 3, seed), ProjectionLadder::full(32));
    CHECK(prof.max_budget <= 6.0);
  }
}

TEST_CASE("dense families grow like r (N - r)", "[semidiag][dense]") {
  const Index n = 24;
  std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const auto prof = semidiag_profile(dense_family(n, 2, static_cast<std::uint64_t>(s)),
                                       ProjectionLadder::full(n));
    for (const auto& pt : prof.points) mean[static_cast<std::size_t>(pt.rank)] += pt.budget / seeds;
  }
  for (Index r = 1; r < n; ++r)
    CHECK(mean[static_cast<std::size_t>(r)] >= 0.1 * static_cast<double>(r * (n - r)));
}

TEST_CASE("budget is monotone in the family", "[semidiag][property]") {
  Rng rng(42);
  std::vector<CMatrix> fam;
  double prev = 0.0;
  for (int j = 0; j < 5; ++j) {
    fam.push_back(gaussian_matrix(rng, 10, 10));
    const double s = commutator_hs_budget(fam, 4);
    CHECK(s >= prev);
    prev = s;
  }
}

TEST_CASE("budget argument errors", "[semidiag]") {
  std::vector<CMatrix> fam{CMatrix::Identity(3, 3), CMatrix::Identity(4, 4)};
  REQUIRE_THROWS_AS(commutator_hs_budget(fam, 1), DimensionError);
  REQUIRE_THROWS_AS(commutator_hs_budget({CMatrix::Identity(3, 3)}, 4), DimensionError);
  REQUIRE_THROWS_AS(band_family(4, 4, 1, 0), DimensionError);
  REQUIRE(commutator_hs_budget({}, 0) == 0.0);
}
