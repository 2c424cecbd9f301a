#include <gtest/gtest.h>

#include <set>

#include "rsht/simplex.hpp"

using rsht::Simplex;
using rsht::TopologyError;

TEST(Simplex, SortsAndReportsDimension) {
  Simplex s{6, 1, 3};
  EXPECT_EQ(s.to_string(), "1 3 6");
  EXPECT_EQ(s.dim(), 2);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
}

TEST(Simplex, SingleVertexIsDimensionZero) {
  Simplex v{7};
  EXPECT_EQ(v.dim(), 0);
  EXPECT_EQ(v.to_string(), "7");
}

TEST(Simplex, RejectsMalformedInput) {
  EXPECT_THROW(Simplex(std::vector<rsht::Vertex>{}), TopologyError);
  EXPECT_THROW((Simplex{0, 1}), TopologyError);
  EXPECT_THROW((Simplex{2, 2, 3}), TopologyError);
}

TEST(Simplex, FaceRelations) {
  Simplex t{1, 2, 3};
  EXPECT_TRUE((Simplex{1, 3}).is_face_of(t));
  EXPECT_TRUE(t.is_face_of(t));
  EXPECT_FALSE((Simplex{1, 4}).is_face_of(t));
  EXPECT_EQ(t.facet_opposite(0), (Simplex{2, 3}));
  EXPECT_EQ(t.facet_opposite(2), (Simplex{1, 2}));
  EXPECT_EQ(t.without(2), (Simplex{1, 3}));
  EXPECT_EQ(t.with(5), (Simplex{1, 2, 3, 5}));
  EXPECT_THROW(t.without(9), TopologyError);
  EXPECT_THROW(t.with(2), TopologyError);
  EXPECT_THROW((Simplex{4}).without(4), TopologyError);
}

TEST(Simplex, SetOperations) {
  Simplex a{1, 2, 5}, b{2, 3, 5};
  EXPECT_EQ(a.join(b), (Simplex{1, 2, 3, 5}));
  EXPECT_EQ(a.minus(b), (std::vector<rsht::Vertex>{1}));
  EXPECT_EQ(a.intersect(b), (std::vector<rsht::Vertex>{2, 5}));
}

TEST(Simplex, LexicographicOrder) {
  EXPECT_LT((Simplex{1, 2}), (Simplex{1, 2, 3}));
  EXPECT_LT((Simplex{1, 2, 9}), (Simplex{1, 3}));
  EXPECT_EQ((Simplex{3, 1}), (Simplex{1, 3}));
}

TEST(Simplex, ForEachFaceVisitsAllSubsetsOnce) {
  Simplex s{2, 4, 6, 8};
  std::set<Simplex> seen;
  std::size_t last = 0;
  rsht::for_each_face(s, [&](const Simplex& f) {
    EXPECT_GE(f.size(), last);
    last = f.size();
    EXPECT_TRUE(f.is_face_of(s));
    EXPECT_TRUE(seen.insert(f).second);
  });
  EXPECT_EQ(seen.size(), 15u);
}

TEST(Simplex, HashAgreesWithEquality) {
  rsht::SimplexHash h;
  EXPECT_EQ(h(Simplex{3, 1, 2}), h(Simplex{1, 2, 3}));
  EXPECT_NE(h(Simplex{1, 2}), h(Simplex{1, 3}));
}
