#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rsht/complex.hpp"
#include "rsht/engine.hpp"

namespace rsht {

/// Link of r: the faces tau disjoint from r with tau + r in K. Empty when r
/// is absent or maximal.
inline std::optional<Complex> link(const Complex& k, const Simplex& r) {
  if (!k.contains(r)) return std::nullopt;
  std::vector<Simplex> parts;
  for (const Simplex& f : k.star_facets(r)) {
    auto rest = f.minus(r);
    if (!rest.empty()) parts.emplace_back(rest);
  }
  if (parts.empty()) return std::nullopt;
  return Complex::from_facets(parts);
}

inline bool is_connected(const Complex& k) {
  auto vs = k.vertices();
  if (vs.empty()) return false;
  std::vector<std::size_t> parent(vs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  std::size_t components = vs.size();
  for (const Simplex& e : k.faces_of_dim(1)) {
    auto a = find(index(e[0])), b = find(index(e[1]));
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

/// Closed combinatorial manifold test for dimension at most three: pure,
/// every ridge in exactly two facets, and every vertex link a sphere of
/// one dimension less (connected, for surfaces also of Euler
/// characteristic two). Connectedness of K itself is not required.
inline bool is_closed_manifold_low_dim(const Complex& k) {
  const int d = k.dimension();
  if (d > 3)
    throw TopologyError("manifold test supports dimension <= 3, got " + std::to_string(d));
  if (d < 0) return false;
  if (d == 0) return true;
  for (const Simplex& f : k.facets())
    if (f.dim() != d) return false;
  for (const Simplex& ridge : k.faces_of_dim(d - 1))
    if (k.cofaces(k.id_of(ridge)).size() != 2) return false;
  if (d == 1) return true;
  for (Vertex v : k.vertices()) {
    auto lk = link(k, Simplex{v});
    if (!lk || !is_connected(*lk)) return false;
    if (d == 3) {
      if (!is_closed_manifold_low_dim(*lk)) return false;
      if (lk->euler_characteristic() != 2) return false;
    }
  }
  return true;
}

inline bool is_closed_surface(const Complex& k) {
  return k.dimension() == 2 && is_closed_manifold_low_dim(k);
}

/// A bistellar move replacing r * boundary(C) by boundary(r) * C.
struct FlipDescriptor {
  Simplex r;
  Simplex complement;

  friend bool operator==(const FlipDescriptor&, const FlipDescriptor&) = default;
  friend auto operator<=>(const FlipDescriptor&, const FlipDescriptor&) = default;
};

inline std::vector<Simplex> flip_removed_facets(const FlipDescriptor& fd) {
  std::vector<Simplex> out;
  if (fd.complement.size() == 1) return {fd.r};
  for (Vertex c : fd.complement) out.push_back(fd.r.join(fd.complement.without(c)));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Simplex> flip_added_facets(const FlipDescriptor& fd) {
  std::vector<Simplex> out;
  if (fd.r.size() == 1) return {fd.complement};
  for (Vertex x : fd.r) out.push_back(fd.complement.join(fd.r.without(x)));
  std::sort(out.begin(), out.end());
  return out;
}

/// Applies the flip to a copy of K. Throws unless the star of r is exactly
/// r * boundary(C) and C is not already a face.
inline Complex bistellar_flip(const Complex& k, const FlipDescriptor& fd) {
  const int d = k.dimension();
  if (!fd.r.intersect(fd.complement).empty())
    throw TopologyError("flip: r and C must be disjoint");
  if (static_cast<int>(fd.r.size() + fd.complement.size()) != d + 2)
    throw TopologyError("flip: |r| + |C| must equal dim + 2");
  if (k.contains(fd.complement))
    throw TopologyError("flip: C = [" + fd.complement.to_string() + "] is already a face");
  if (!k.contains(fd.r)) throw TopologyError("flip: r is not a face");
  if (k.star_facets(fd.r) != flip_removed_facets(fd))
    throw TopologyError("flip: star of [" + fd.r.to_string() + "] is not r * boundary(C)");
  Complex out = k;
  out.remove_open_star(fd.r);
  for (const Simplex& f : flip_added_facets(fd)) out.add_closure(f);
  return out;
}

/// All flips with |r| >= 2 (stellar subdivisions of facets excluded), sorted.
inline std::vector<FlipDescriptor> admissible_flips(const Complex& k) {
  std::vector<FlipDescriptor> out;
  const int d = k.dimension();
  if (d < 1) return out;
  for (const Simplex& r : k.faces()) {
    if (r.dim() == d) continue;
    auto star = k.star_facets(r);
    std::vector<Vertex> lv;
    bool pure = true;
    for (const Simplex& f : star) {
      if (f.dim() != d) pure = false;
      for (Vertex v : f.minus(r)) lv.push_back(v);
    }
    if (!pure) continue;
    std::sort(lv.begin(), lv.end());
    lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
    if (lv.size() != static_cast<std::size_t>(d) + 2 - r.size()) continue;
    if (star.size() != lv.size()) continue;
    Simplex c(lv);
    if (k.contains(c)) continue;
    out.push_back({r, c});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Checks on one candidate that expansion followed by exhaustive collapse
/// reproduces the matching bistellar flip. K must have no free faces, and
/// for dimension <= 3 must be a closed manifold.
inline bool verify_expansion_equals_flip(const Complex& k, const BallDescriptor& ball,
                                         std::uint64_t seed) {
  const int d = k.dimension();
  if (d > 6) throw TopologyError("expansion/flip check supports dimension <= 6");
  if (k.has_free_faces()) throw TopologyError("expansion/flip check needs a complex without free faces");
  if (d <= 3 && !is_closed_manifold_low_dim(k))
    throw TopologyError("expansion/flip check needs a closed manifold");
  Complex expanded = k;
  Rng rng(seed);
  pure_expansion_step(expanded, ball, rng);
  collapse_until_stuck(expanded, rng, CollapsePolicy::uniform_pair);
  Complex flipped = [&] {
    try {
      return bistellar_flip(k, {ball.base, ball.complement()});
    } catch (const TopologyError&) {
      return Complex{};
    }
  }();
  return !flipped.empty() && expanded == flipped;
}

/// Random collapse attempts; returns the first sequence of collapses that
/// ends at a single vertex.
inline std::optional<std::vector<FreePair>> collapsibility_search(const Complex& k,
                                                                  std::size_t tries, Rng& rng) {
  for (std::size_t t = 0; t < tries; ++t) {
    Complex c = k;
    std::vector<FreePair> trace;
    while (auto m = random_collapse(c, rng, CollapsePolicy::uniform_pair))
      trace.push_back({m->face, m->coface});
    if (c.num_faces() == 1) return trace;
  }
  return std::nullopt;
}

}  // namespace rsht
