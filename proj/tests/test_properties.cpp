#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "rsht/engine.hpp"
#include "rsht/generators.hpp"
#include "rsht/homology.hpp"
#include "rsht/manifold.hpp"

using namespace rsht;

namespace {

Complex random_complex(std::mt19937_64& rng, Vertex n, int facets, int max_size) {
  std::uniform_int_distribution<Vertex> vd(1, n);
  std::uniform_int_distribution<int> sd(1, max_size);
  std::vector<Simplex> out;
  for (int i = 0; i < facets; ++i) {
    std::vector<Vertex> vs;
    const int m = sd(rng);
    while (static_cast<int>(vs.size()) < m) {
      Vertex v = vd(rng);
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    out.emplace_back(vs);
  }
  return Complex::from_facets(out);
}

}  // namespace

TEST(Properties, CollapseThenReinsertIsIdentity) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto k = random_complex(gen, 8, 6, 4);
    for (const auto& p : k.free_pairs()) {
      auto c = k;
      c.collapse(p.free, p.coface);
      c.insert(p.free);
      c.insert(p.coface);
      ASSERT_EQ(c, k);
      ASSERT_EQ(c.free_pairs(), k.free_pairs());
    }
  }
}

TEST(Properties, PureBallMatchesDefinition) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 60; ++trial) {
    auto k = random_complex(gen, 7, 7, 3);
    const int d = k.dimension();
    if (d < 1) continue;
    auto vs = k.vertices();
    std::vector<std::vector<std::size_t>> picks;
    oracle::combinations(vs.size(), static_cast<std::size_t>(d) + 2, picks);
    for (const auto& pick : picks) {
      std::vector<Vertex> sel;
      for (auto i : pick) sel.push_back(vs[i]);
      const bool expected = oracle::is_pure_ball(k, sel, d);
      ASSERT_EQ(is_pure_ball(k, sel, d).has_value(), expected) << Simplex(sel);
    }
  }
}

TEST(Properties, CandidateListIsExhaustive) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 30; ++trial) {
    auto k = random_complex(gen, 7, 6, 3);
    const int d = k.dimension();
    if (d < 1) continue;
    std::set<Simplex> found;
    for (const auto& b : enumerate_expansion_candidates(k)) found.insert(b.sigma);
    auto vs = k.vertices();
    std::vector<std::vector<std::size_t>> picks;
    oracle::combinations(vs.size(), static_cast<std::size_t>(d) + 2, picks);
    std::set<Simplex> expected;
    for (const auto& pick : picks) {
      std::vector<Vertex> sel;
      for (auto i : pick) sel.push_back(vs[i]);
      if (oracle::is_pure_ball(k, sel, d)) expected.insert(Simplex(sel));
    }
    ASSERT_EQ(found, expected);
  }
}

TEST(Properties, HomologyIsInvariantUnderMoves) {
  std::vector<Complex> inputs{dunce_hat8(), circle(7), torus7(), minus_facet(octahedron()),
                              cross_product(circle(3), path_interval(1))};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto expected = homology(inputs[i]);
    auto k = inputs[i];
    RshtConfig cfg;
    cfg.seed = 100 + i;
    cfg.max_step = 3;
    cfg.total_expansion_cap = 30;
    Rng rng(cfg.seed);
    rsht_run(k, cfg, rng, [&](const Move& m, const Complex& cur) {
      if (m.kind == MoveKind::collapse) return;
      ASSERT_EQ(homology(cur), expected) << "input " << i;
    });
    EXPECT_EQ(homology(k), expected);
  }
}

TEST(Properties, FlipsPreserveManifoldAndHomology) {
  Rng rng(31);
  auto s = octahedron();
  for (int i = 0; i < 10; ++i) s = stellar_subdivide(s, s.facets()[uniform_index(rng, s.facets().size())]);
  const auto expected = homology(s);
  for (int step = 0; step < 50; ++step) {
    auto flips = admissible_flips(s);
    ASSERT_FALSE(flips.empty());
    s = bistellar_flip(s, flips[uniform_index(rng, flips.size())]);
    ASSERT_TRUE(is_closed_surface(s));
    ASSERT_EQ(homology(s), expected);
  }
}

TEST(Properties, BatchIsThreadCountIndependent) {
  RshtConfig cfg;
  cfg.seed = 55;
  auto one = rsht_batch(dunce_hat8(), 12, cfg, {1, false});
  auto four = rsht_batch(dunce_hat8(), 12, cfg, {4, false});
  ASSERT_EQ(one.results.size(), four.results.size());
  for (std::size_t i = 0; i < one.results.size(); ++i) {
    EXPECT_EQ(one.results[i].seed, four.results[i].seed);
    EXPECT_EQ(one.results[i].report, four.results[i].report);
  }
}
