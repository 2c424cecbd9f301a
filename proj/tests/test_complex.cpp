#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rsht/complex.hpp"
#include "rsht/generators.hpp"

using namespace rsht;

namespace {

Complex triangle() { return Complex::from_facets(std::vector<Simplex>{Simplex{1, 2, 3}}); }

}  // namespace

TEST(Complex, ClosureAndFVector) {
  auto k = Complex::from_facets(std::vector<std::vector<Vertex>>{{1, 2, 3}, {2, 3, 4}, {4, 5}});
  EXPECT_EQ(k.f_vector(), (FVector{5, 6, 2}));
  EXPECT_EQ(k.dimension(), 2);
  EXPECT_EQ(k.euler_characteristic(), 1);
  EXPECT_TRUE(k.contains(Simplex{2, 3}));
  EXPECT_FALSE(k.contains(Simplex{1, 4}));
  EXPECT_EQ(k.facets(), (std::vector<Simplex>{Simplex{1, 2, 3}, Simplex{2, 3, 4}, Simplex{4, 5}}));
}

TEST(Complex, AbsorbsContainedFacets) {
  auto k = Complex::from_facets(std::vector<std::vector<Vertex>>{{1, 2}, {1, 2, 3}, {2}});
  EXPECT_EQ(k.facets(), (std::vector<Simplex>{Simplex{1, 2, 3}}));
}

TEST(Complex, EmptyInputIsRejected) {
  EXPECT_THROW(Complex::from_facets(std::vector<Simplex>{}), TopologyError);
  Complex empty;
  EXPECT_TRUE(empty.empty());
  EXPECT_EQ(empty.dimension(), -1);
}

TEST(Complex, FreeFacesOfATriangle) {
  auto k = triangle();
  auto pairs = k.free_pairs();
  ASSERT_EQ(pairs.size(), 3u);
  for (const auto& p : pairs) {
    EXPECT_EQ(p.free.dim(), 1);
    EXPECT_EQ(p.coface, (Simplex{1, 2, 3}));
  }
}

TEST(Complex, SinglePointHasNoFreeFaces) {
  auto k = Complex::from_facets(std::vector<Simplex>{Simplex{4}});
  EXPECT_FALSE(k.has_free_faces());
  EXPECT_EQ(k.f_vector(), (FVector{1}));
}

TEST(Complex, BoundaryOfTetrahedronHasNoFreeFaces) {
  EXPECT_FALSE(boundary_of_simplex(3).has_free_faces());
}

TEST(Complex, CollapseValidatesThePair) {
  auto k = triangle();
  EXPECT_THROW(k.collapse(Simplex{1}, Simplex{1, 2}), TopologyError);          // not free
  EXPECT_THROW(k.collapse(Simplex{1, 2}, Simplex{1, 2, 4}), TopologyError);    // wrong coface
  EXPECT_THROW(k.collapse(Simplex{1, 4}, Simplex{1, 2, 4}), TopologyError);    // not a face
  k.bans().add({Simplex{1, 2}, Simplex{1, 2, 3}});
  EXPECT_THROW(k.collapse(Simplex{1, 2}, Simplex{1, 2, 3}), TopologyError);    // banned
  EXPECT_EQ(k.free_pairs().size(), 2u);
  k.bans().clear();
  k.collapse(Simplex{1, 2}, Simplex{1, 2, 3});
  EXPECT_EQ(k.f_vector(), (FVector{3, 2}));
}

TEST(Complex, CollapsingToAPoint) {
  auto k = triangle();
  while (k.free_face_count()) k.collapse_free(k.free_face_at(0));
  EXPECT_EQ(k.num_faces(), 1u);
}

TEST(Complex, InsertRejectsPresentFaces) {
  auto k = triangle();
  EXPECT_THROW(k.insert(Simplex{1, 2}), TopologyError);
  k.insert(Simplex{1, 2, 3, 4});
  EXPECT_EQ(k.f_vector(), (FVector{4, 6, 4, 1}));
  EXPECT_EQ(k.add_closure(Simplex{1, 2}), k.id_of(Simplex{1, 2}));
}

TEST(Complex, RemoveFacetOnlyForMaximalFaces) {
  auto k = triangle();
  EXPECT_THROW(k.remove_facet(Simplex{1, 2}), TopologyError);
  k.remove_facet(Simplex{1, 2, 3});
  EXPECT_EQ(k.f_vector(), (FVector{3, 3}));
  EXPECT_FALSE(k.has_free_faces());
}

TEST(Complex, RemoveOpenStar) {
  auto k = octahedron();
  k.remove_open_star(Simplex{1});
  EXPECT_EQ(k.f_vector(), (FVector{5, 8, 4}));
  EXPECT_FALSE(k.contains(Simplex{1}));
}

TEST(Complex, InducedSubcomplex) {
  auto k = torus7();
  std::vector<Vertex> vs{1, 2, 4};
  auto sub = k.induced_subcomplex(vs);
  EXPECT_EQ(sub.f_vector(), (FVector{3, 3, 1}));
}

TEST(Complex, StarAndDegree) {
  auto k = octahedron();
  EXPECT_EQ(k.facet_degree(Simplex{1}), 4u);
  EXPECT_EQ(k.facet_degree(Simplex{1, 3}), 2u);
  auto star = k.star_facets(Simplex{1, 3});
  EXPECT_EQ(star, (std::vector<Simplex>{Simplex{1, 3, 5}, Simplex{1, 3, 6}}));
}

TEST(Complex, IdsAreRecycledWithoutCorruption) {
  auto k = triangle();
  k.collapse(Simplex{1, 2}, Simplex{1, 2, 3});
  k.insert(Simplex{1, 2, 3, 4});
  EXPECT_EQ(k.f_vector(), (FVector{4, 6, 4, 1}));
  EXPECT_EQ(k.free_pairs(), oracle::free_pairs(k));
}

TEST(Complex, EqualityIsOnFaceSets) {
  auto a = Complex::from_facets(std::vector<std::vector<Vertex>>{{1, 2, 3}, {3, 4}});
  auto b = Complex::from_facets(std::vector<std::vector<Vertex>>{{3, 4}, {2, 3, 1}});
  EXPECT_EQ(a, b);
  b.insert(Simplex{5});
  EXPECT_NE(a, b);
}

TEST(Complex, FreePairsMatchDefinitionOnBenchmarks) {
  for (const auto& n : bundled_complexes()) EXPECT_EQ(n.complex.free_pairs(), oracle::free_pairs(n.complex)) << n.name;
}

TEST(Complex, FreePairsMatchDefinitionUnderRandomEdits) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Simplex> facets;
    std::uniform_int_distribution<Vertex> vd(1, 7);
    std::uniform_int_distribution<int> sd(1, 4);
    for (int i = 0; i < 8; ++i) {
      std::vector<Vertex> vs;
      const int n = sd(rng);
      while (static_cast<int>(vs.size()) < n) {
        Vertex v = vd(rng);
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
      }
      facets.emplace_back(vs);
    }
    auto k = Complex::from_facets(facets);
    for (int step = 0; step < 10; ++step) {
      ASSERT_EQ(k.free_pairs(), oracle::free_pairs(k));
      if (k.free_face_count() && step % 3 != 2) {
        k.collapse_free(k.free_face_at(rng() % k.free_face_count()));
      } else {
        std::vector<Vertex> vs{vd(rng), vd(rng), vd(rng)};
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        k.add_closure(Simplex(vs));
      }
    }
  }
}
