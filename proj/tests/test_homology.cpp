#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rsht/generators.hpp"
#include "rsht/homology.hpp"
#include "rsht/io.hpp"

using namespace rsht;

namespace {

HomologyProfile profile(std::vector<std::size_t> betti,
                        std::vector<std::vector<BigInt>> torsion = {}) {
  torsion.resize(betti.size());
  return {std::move(betti), std::move(torsion)};
}

std::vector<std::vector<long long>> product(const std::vector<std::vector<long long>>& a,
                                            const std::vector<std::vector<long long>>& b) {
  std::vector<std::vector<long long>> c(a.size(), std::vector<long long>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

TEST(BoundaryMatrix, SingleTriangleSigns) {
  auto k = Complex::from_facets(std::vector<Simplex>{Simplex{1, 2, 3}});
  auto m = boundary_matrix(k, 2).dense();
  // Rows: 12, 13, 23. Column of 123 = +23 - 13 + 12.
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0][0], 1);
  EXPECT_EQ(m[1][0], -1);
  EXPECT_EQ(m[2][0], 1);
}

TEST(BoundaryMatrix, RangeIsChecked) {
  auto k = boundary_of_simplex(3);
  EXPECT_THROW(boundary_matrix(k, 0), std::out_of_range);
  EXPECT_THROW(boundary_matrix(k, 3), std::out_of_range);
}

TEST(BoundaryMatrix, RankOfTetrahedronBoundary) {
  auto inv = smith_invariants(boundary_matrix(boundary_of_simplex(3), 2));
  EXPECT_EQ(inv.size(), 3u);
}

TEST(BoundaryMatrix, BoundaryOfBoundaryIsZero) {
  std::vector<Complex> ks{abalone(), bing_house_k(3), torus7(), boundary_of_simplex(5),
                          cross_product(torus7(), path_interval(2))};
  for (const auto& k : ks)
    for (int i = 2; i <= k.dimension(); ++i) {
      auto dd = product(boundary_matrix(k, i - 1).dense(), boundary_matrix(k, i).dense());
      for (const auto& row : dd)
        for (long long x : row) ASSERT_EQ(x, 0);
    }
}

TEST(Homology, ProjectivePlaneHasTwoTorsion) {
  auto k = parse_facet_file(std::string(RSHT_TEST_DATA) + "/rp2_6.txt");
  EXPECT_EQ(k.f_vector(), (FVector{6, 15, 10}));
  EXPECT_EQ(homology(k), profile({0, 0, 0}, {{}, {BigInt(2)}, {}}));
}

TEST(Homology, ContractibleBenchmarksAreAcyclic) {
  EXPECT_TRUE(homology(dunce_hat8()).is_trivial());
  EXPECT_TRUE(homology(abalone()).is_trivial());
  EXPECT_TRUE(homology(bing_house2()).is_trivial());
  EXPECT_TRUE(homology(bing_house_k(4)).is_trivial());
}

TEST(Homology, Spheres) {
  EXPECT_EQ(homology(boundary_of_simplex(4)), profile({0, 0, 0, 1}));
  EXPECT_EQ(homology(boundary_of_simplex(1)), profile({1}));
  EXPECT_EQ(homology(circle(9)), profile({0, 1}));
}

TEST(Homology, TorusAndProducts) {
  EXPECT_EQ(homology(torus7()), profile({0, 2, 1}));
  auto t2 = cross_product(boundary_of_simplex(2), boundary_of_simplex(2));
  EXPECT_EQ(t2.euler_characteristic(), 0);
  EXPECT_EQ(homology(t2), profile({0, 2, 1}));
  EXPECT_EQ(homology(sphere_product(2, 1)), profile({0, 1, 1, 1}));
}

TEST(Homology, ReducedEulerMatchesFVector) {
  for (const auto& n : bundled_complexes()) {
    auto h = homology(n.complex);
    EXPECT_EQ(h.reduced_euler(), n.complex.euler_characteristic() - 1) << n.name;
  }
}

TEST(Homology, CapacityLimitFailsLoudly) {
  EXPECT_THROW(homology(abalone(), 50), CapacityError);
  EXPECT_NO_THROW(homology(abalone(), 101));
}

TEST(Homology, EmptyComplexIsRejected) { EXPECT_THROW(homology(Complex{}), TopologyError); }

TEST(Smith, KnownDiagonal) {
  auto inv = smith_invariants(std::vector<std::vector<long long>>{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  ASSERT_EQ(inv.size(), 3u);
  EXPECT_EQ(inv[0], 2);
  EXPECT_EQ(inv[1], 6);
  EXPECT_EQ(inv[2], 12);
}

TEST(Smith, ZeroMatrix) {
  EXPECT_TRUE(smith_invariants(std::vector<std::vector<long long>>{{0, 0}, {0, 0}}).empty());
}

TEST(Smith, AgreesWithDeterminantalDivisors) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % (trial < 50 ? 6 : 8);
    const std::size_t cols = 1 + rng() % (trial < 50 ? 6 : 8);
    std::uniform_int_distribution<int> val(-4, 4);
    std::uniform_int_distribution<int> sparse(0, 2);
    std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols));
    for (auto& row : m)
      for (auto& x : row) x = sparse(rng) ? val(rng) : 0;
    // Duplicate a row now and then to force rank deficiency.
    if (rows > 2 && trial % 4 == 0) m[rows - 1] = m[0];
    auto expected = oracle::invariant_factors(m);
    auto got = smith_invariants(m);
    ASSERT_EQ(got, expected) << "trial " << trial;
  }
}
