#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsht/complex.hpp"
#include "rsht/engine.hpp"
#include "rsht/manifold.hpp"

namespace rsht {

struct NamedComplex {
  std::string name;
  Complex complex;
  std::optional<FVector> expected_f;
};

namespace detail {

using Triangles = std::vector<std::array<Vertex, 3>>;

inline Complex from_triangles(const Triangles& ts) {
  std::vector<Simplex> s;
  s.reserve(ts.size());
  for (const auto& t : ts) s.emplace_back(std::span<const Vertex>(t));
  return Complex::from_facets(s);
}

}  // namespace detail

/// 15-vertex Abalone (Bing's house with one room).
inline Complex abalone() {
  return detail::from_triangles({
      {1, 2, 7},    {1, 2, 9},    {1, 3, 8},    {1, 3, 9},    {1, 4, 7},    {1, 4, 8},
      {1, 4, 9},    {2, 3, 7},    {2, 3, 15},   {2, 9, 15},   {3, 7, 8},    {3, 9, 14},
      {3, 14, 15},  {4, 5, 7},    {4, 5, 8},    {4, 6, 7},    {4, 6, 9},    {5, 6, 9},
      {5, 6, 10},   {5, 7, 10},   {5, 8, 9},    {6, 7, 11},   {6, 10, 11},  {7, 8, 10},
      {7, 8, 11},   {8, 9, 12},   {8, 9, 13},   {8, 10, 12},  {8, 11, 13},  {8, 12, 13},
      {9, 12, 14},  {9, 13, 15},  {10, 11, 12}, {11, 12, 13}, {12, 13, 14}, {13, 14, 15},
  });
}

/// 19-vertex Bing's house with two rooms, f = (19, 65, 47).
inline Complex bing_house2() {
  return detail::from_triangles({
      {1, 2, 5},    {1, 2, 7},    {1, 3, 4},    {1, 3, 9},    {1, 4, 5},    {1, 7, 9},
      {2, 3, 6},    {2, 3, 8},    {2, 5, 6},    {2, 7, 8},    {3, 4, 6},    {3, 4, 13},
      {3, 8, 9},    {3, 9, 13},   {4, 5, 10},   {4, 6, 13},   {4, 10, 13},
      {5, 6, 10},   {6, 10, 12},  {6, 12, 13},  {7, 8, 11},   {7, 8, 15},   {7, 9, 13},
      {7, 9, 14},   {7, 10, 11},  {7, 10, 13},  {7, 14, 15},  {8, 9, 12},   {8, 9, 16},
      {8, 11, 12},  {8, 11, 15},  {8, 15, 16},  {9, 12, 13},  {9, 14, 16},  {10, 11, 17},
      {10, 12, 17}, {11, 12, 18}, {11, 15, 18}, {11, 17, 18}, {12, 17, 19}, {12, 18, 19},
      {14, 15, 17}, {14, 16, 19}, {14, 17, 19}, {15, 16, 18}, {15, 17, 18}, {16, 18, 19},
  });
}

namespace detail {

// Bing's house with k rooms. The ground floor is k congruent sectors
// around vertex 1; each sector holds five vertices (orbits A..E) and one
// triangular hole. A room sits on three consecutive sectors and adds nine
// vertices r0..r8.
enum BhOrbit : int { kA = 0, kB, kC, kD, kE };

struct BhRef {
  enum Kind { centre, floor, room } kind;
  int a = 0;  // orbit, or room-local index
  int offset = 0;  // sector offset for floor vertices
};

constexpr BhRef c0{BhRef::centre, 0, 0};
constexpr BhRef fl(int orbit, int off) { return {BhRef::floor, orbit, off}; }
constexpr BhRef rm(int i) { return {BhRef::room, i, 0}; }

inline const std::vector<std::array<BhRef, 3>>& bh_floor_template() {
  static const std::vector<std::array<BhRef, 3>> t = {
      {c0, fl(kA, 0), fl(kC, 0)},           {c0, fl(kA, 0), fl(kD, -1)},
      {c0, fl(kC, 0), fl(kE, 0)},           {c0, fl(kD, 0), fl(kE, 0)},
      {fl(kA, 0), fl(kB, 0), fl(kC, 0)},    {fl(kA, 0), fl(kB, -1), fl(kD, -1)},
      {fl(kB, 0), fl(kC, 0), fl(kD, 0)},
  };
  return t;
}

inline const std::vector<std::array<BhRef, 3>>& bh_room_template() {
  static const std::vector<std::array<BhRef, 3>> t = {
      {c0, fl(kA, 0), rm(0)},          {c0, fl(kA, 2), rm(0)},
      {fl(kA, 0), fl(kB, 0), rm(1)},   {fl(kA, 0), fl(kC, 0), rm(1)},
      {fl(kA, 0), rm(0), rm(1)},       {fl(kB, 0), fl(kA, 1), rm(2)},
      {fl(kB, 0), rm(1), rm(2)},       {fl(kA, 1), fl(kB, 1), rm(3)},
      {fl(kA, 1), rm(2), rm(3)},       {fl(kC, 0), fl(kD, 0), rm(4)},
      {fl(kC, 0), fl(kE, 0), rm(4)},   {fl(kC, 0), rm(1), rm(4)},
      {fl(kD, 0), fl(kE, 0), rm(5)},   {fl(kD, 0), rm(4), rm(5)},
      {fl(kE, 0), rm(4), rm(6)},       {fl(kE, 0), rm(5), rm(6)},
      {fl(kB, 1), fl(kA, 2), rm(7)},   {fl(kB, 1), rm(3), rm(7)},
      {fl(kA, 2), rm(0), rm(8)},       {fl(kA, 2), rm(7), rm(8)},
      {rm(0), rm(1), rm(4)},           {rm(0), rm(3), rm(5)},
      {rm(0), rm(3), rm(7)},           {rm(0), rm(4), rm(6)},
      {rm(0), rm(5), rm(6)},           {rm(0), rm(7), rm(8)},
      {rm(1), rm(2), rm(4)},           {rm(2), rm(3), rm(5)},
      {rm(2), rm(4), rm(5)},
  };
  return t;
}

/// Floor labels of sectors 0, 1, 2 as in the three-room house; further
/// sectors are numbered after the rooms.
inline Vertex bh_floor_label(int k, int sector, int orbit) {
  static constexpr Vertex first[3][5] = {
      {2, 3, 5, 6, 7}, {4, 8, 10, 11, 12}, {9, 13, 14, 15, 16}};
  if (sector < 3) return first[sector][orbit];
  return static_cast<Vertex>(17 + 9 * k + 5 * (sector - 3) + orbit);
}

inline Vertex bh_label(int k, int sector, const BhRef& ref, int room) {
  switch (ref.kind) {
    case BhRef::centre:
      return 1;
    case BhRef::floor:
      return bh_floor_label(k, ((sector + ref.offset) % k + k) % k, ref.a);
    case BhRef::room:
      return static_cast<Vertex>(17 + 9 * room + ref.a);
  }
  return 0;
}

}  // namespace detail

/// Bing's house with k >= 3 rooms, f = (14k+1, 50k, 36k). For k = 3 the
/// labels coincide with the explicit three-room lists.
inline Complex bing_house_k(int k) {
  if (k < 3) throw TopologyError("bing_house_k: need k >= 3, got " + std::to_string(k));
  std::vector<Simplex> facets;
  facets.reserve(36 * static_cast<std::size_t>(k));
  for (int s = 0; s < k; ++s) {
    for (const auto& t : detail::bh_floor_template())
      facets.push_back(Simplex{detail::bh_label(k, s, t[0], s), detail::bh_label(k, s, t[1], s),
                               detail::bh_label(k, s, t[2], s)});
    for (const auto& t : detail::bh_room_template())
      facets.push_back(Simplex{detail::bh_label(k, s, t[0], s), detail::bh_label(k, s, t[1], s),
                               detail::bh_label(k, s, t[2], s)});
  }
  return Complex::from_facets(facets);
}

/// 8-vertex Dunce Hat whose only anticollapse candidates are 1245 and 1367.
inline Complex dunce_hat8() {
  return detail::from_triangles({
      {1, 2, 4}, {1, 2, 5}, {1, 2, 8}, {1, 3, 6}, {1, 3, 7}, {1, 3, 8},
      {1, 4, 5}, {1, 6, 7}, {2, 3, 4}, {2, 3, 5}, {2, 3, 7}, {2, 7, 8},
      {3, 4, 8}, {3, 5, 6}, {4, 5, 8}, {5, 6, 8}, {6, 7, 8},
  });
}

/// The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline Complex torus7() {
  detail::Triangles ts;
  for (Vertex i = 0; i < 7; ++i) {
    ts.push_back({i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1});
    ts.push_back({i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1});
  }
  for (auto& t : ts) std::sort(t.begin(), t.end());
  return detail::from_triangles(ts);
}

/// All proper faces of the n-simplex on 1..n+1.
inline Complex boundary_of_simplex(int n) {
  if (n < 1) throw TopologyError("boundary_of_simplex: need n >= 1");
  std::vector<Vertex> all(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i + 1);
  Simplex full(all);
  std::vector<Simplex> facets;
  for (std::size_t i = 0; i < full.size(); ++i) facets.push_back(full.facet_opposite(i));
  return Complex::from_facets(facets);
}

/// The full n-simplex on 1..n+1.
inline Complex simplex_complex(int n) {
  if (n < 0) throw TopologyError("simplex_complex: need n >= 0");
  std::vector<Vertex> all(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i + 1);
  return Complex::from_facets(std::vector<Simplex>{Simplex(all)});
}

/// Path with m edges on 1..m+1.
inline Complex path_interval(int m) {
  if (m < 1) throw TopologyError("path_interval: need m >= 1");
  std::vector<Simplex> edges;
  for (Vertex i = 1; i <= static_cast<Vertex>(m); ++i) edges.push_back(Simplex{i, i + 1});
  return Complex::from_facets(edges);
}

/// Cycle on n >= 3 vertices.
inline Complex circle(int n) {
  if (n < 3) throw TopologyError("circle: need n >= 3");
  std::vector<Simplex> edges;
  for (Vertex i = 1; i <= static_cast<Vertex>(n); ++i)
    edges.push_back(Simplex{i, i % static_cast<Vertex>(n) + 1});
  return Complex::from_facets(edges);
}

/// Boundary of the octahedron; antipodal pairs (1,2), (3,4), (5,6).
inline Complex octahedron() {
  detail::Triangles ts;
  for (Vertex a : {1u, 2u})
    for (Vertex b : {3u, 4u})
      for (Vertex c : {5u, 6u}) ts.push_back({a, b, c});
  return detail::from_triangles(ts);
}

/// Staircase triangulation of |K| x |L|. Vertex (a, b) with sorted indices
/// i, j gets label i * |V(L)| + j + 1.
inline Complex cross_product(const Complex& k, const Complex& l) {
  if (k.empty() || l.empty()) throw TopologyError("cross_product: empty factor");
  const auto vk = k.vertices();
  const auto vl = l.vertices();
  auto index = [](const std::vector<Vertex>& vs, Vertex v) {
    return static_cast<Vertex>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  const auto nl = static_cast<Vertex>(vl.size());
  std::vector<Simplex> out;
  std::vector<Vertex> cell;
  for (const Simplex& s : k.facets()) {
    for (const Simplex& t : l.facets()) {
      const std::size_t p = s.size() - 1, q = t.size() - 1;
      // Each path is a choice of which of the p+q steps move in K.
      std::vector<bool> step_in_k(p + q, false);
      std::fill(step_in_k.begin(), step_in_k.begin() + static_cast<std::ptrdiff_t>(p), true);
      do {
        cell.clear();
        std::size_t a = 0, b = 0;
        cell.push_back(index(vk, s[a]) * nl + index(vl, t[b]) + 1);
        for (bool in_k : step_in_k) {
          (in_k ? a : b)++;
          cell.push_back(index(vk, s[a]) * nl + index(vl, t[b]) + 1);
        }
        out.emplace_back(cell);
      } while (std::prev_permutation(step_in_k.begin(), step_in_k.end()));
    }
  }
  return Complex::from_facets(out);
}

/// Connected sum of two closed surfaces. The lexicographically smallest
/// triangle is removed from each; B's vertices are relabelled after max(A),
/// the removed triangles being identified in label order.
inline Complex connected_sum(const Complex& a, const Complex& b) {
  if (!is_closed_surface(a) || !is_closed_surface(b))
    throw TopologyError("connected_sum: both summands must be closed surfaces");
  auto fa = a.facets();
  auto fb = b.facets();
  const Simplex ta = fa.front();
  const Simplex tb = fb.front();
  std::map<Vertex, Vertex> relabel;
  for (std::size_t i = 0; i < 3; ++i) relabel[tb[i]] = ta[i];
  Vertex next = a.max_vertex() + 1;
  for (Vertex v : b.vertices())
    if (!relabel.count(v)) relabel[v] = next++;
  std::vector<Simplex> out(fa.begin() + 1, fa.end());
  for (auto it = fb.begin() + 1; it != fb.end(); ++it) {
    std::vector<Vertex> vs;
    for (Vertex v : *it) vs.push_back(relabel.at(v));
    out.emplace_back(vs);
  }
  return Complex::from_facets(out);
}

/// Orientable closed surface of genus g: the 4-vertex sphere, the 7-vertex
/// torus, or iterated connected sums of tori.
inline Complex surface_of_genus(int g) {
  if (g < 0) throw TopologyError("surface_of_genus: need g >= 0");
  if (g == 0) return boundary_of_simplex(3);
  Complex s = torus7();
  for (int i = 1; i < g; ++i) s = connected_sum(s, torus7());
  return s;
}

/// Edge flips available on a closed surface, sorted.
inline std::vector<FlipDescriptor> surface_edge_flips(const Complex& k) {
  std::vector<FlipDescriptor> out;
  for (const Simplex& e : k.faces_of_dim(1)) {
    auto star = k.star_facets(e);
    if (star.size() != 2) continue;
    auto c = star[0].minus(e);
    auto d = star[1].minus(e);
    if (c.size() != 1 || d.size() != 1) continue;
    Simplex opp{c[0], d[0]};
    if (k.contains(opp)) continue;
    out.push_back({e, opp});
  }
  return out;
}

/// `steps` uniformly chosen edge flips on a closed surface.
inline Complex random_flip_walk(const Complex& k, std::size_t steps, Rng& rng) {
  if (!is_closed_surface(k)) throw TopologyError("random_flip_walk: input must be a closed surface");
  Complex cur = k;
  for (std::size_t i = 0; i < steps; ++i) {
    auto flips = surface_edge_flips(cur);
    if (flips.empty()) throw TopologyError("random_flip_walk: no admissible edge flip");
    cur = bistellar_flip(cur, flips[uniform_index(rng, flips.size())]);
  }
  return cur;
}

/// `steps` uniformly chosen bistellar flips of any type (stellar
/// subdivisions of facets excluded).
inline Complex random_bistellar_walk(const Complex& k, std::size_t steps, Rng& rng) {
  Complex cur = k;
  for (std::size_t i = 0; i < steps; ++i) {
    auto flips = admissible_flips(cur);
    if (flips.empty()) throw TopologyError("random_bistellar_walk: no admissible flip");
    cur = bistellar_flip(cur, flips[uniform_index(rng, flips.size())]);
  }
  return cur;
}

/// Stellar subdivision of a top facet with a fresh vertex.
inline Complex stellar_subdivide(const Complex& k, const Simplex& facet) {
  return bistellar_flip(k, {facet, Simplex{k.max_vertex() + 1}});
}

/// Removes one top facet (the lexicographically smallest by default).
inline Complex minus_facet(const Complex& k, std::optional<Simplex> facet = std::nullopt) {
  Complex out = k;
  if (!facet) {
    const int d = k.dimension();
    for (const Simplex& f : k.facets())
      if (f.dim() == d) {
        facet = f;
        break;
      }
  }
  out.remove_facet(*facet);
  return out;
}

/// S^p x S^q as the staircase product of simplex boundaries.
inline Complex sphere_product(int p, int q) {
  return cross_product(boundary_of_simplex(p + 1), boundary_of_simplex(q + 1));
}

/// Named bundled complexes with their expected f-vectors.
inline std::vector<NamedComplex> bundled_complexes() {
  return {
      {"dunce-hat", dunce_hat8(), FVector{8, 24, 17}},
      {"abalone", abalone(), FVector{15, 50, 36}},
      {"bing-house", bing_house2(), FVector{19, 65, 47}},
      {"bh3", bing_house_k(3), FVector{43, 150, 108}},
      {"torus7", torus7(), FVector{7, 21, 14}},
      {"octahedron", octahedron(), FVector{6, 12, 8}},
  };
}

}  // namespace rsht
