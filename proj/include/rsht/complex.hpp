#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "rsht/simplex.hpp"

namespace rsht {

/// Face counts per dimension, (f0, f1, ..., fd).
class FVector {
 public:
  FVector() = default;
  explicit FVector(std::vector<std::size_t> counts) : counts_(std::move(counts)) {}
  FVector(std::initializer_list<std::size_t> counts) : counts_(counts) {}

  const std::vector<std::size_t>& counts() const { return counts_; }
  std::size_t size() const { return counts_.size(); }
  std::size_t operator[](std::size_t i) const { return counts_.at(i); }
  bool empty() const { return counts_.empty(); }

  std::size_t total() const {
    std::size_t t = 0;
    for (auto c : counts_) t += c;
    return t;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i)
      chi += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(counts_[i]);
    return chi;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(counts_[i]);
    }
    return out;
  }

  friend bool operator==(const FVector&, const FVector&) = default;
  friend auto operator<=>(const FVector&, const FVector&) = default;

 private:
  std::vector<std::size_t> counts_;
};

/// A free face together with its unique coface.
struct FreePair {
  Simplex free;
  Simplex coface;

  friend bool operator==(const FreePair&, const FreePair&) = default;
  friend auto operator<=>(const FreePair&, const FreePair&) = default;
};

/// Pairs temporarily excluded from collapsing.
class BanList {
 public:
  void add(FreePair p) { pairs_.push_back(std::move(p)); }
  void clear() { pairs_.clear(); }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<FreePair>& pairs() const { return pairs_; }

  bool contains(const Simplex& free, const Simplex& coface) const {
    return std::any_of(pairs_.begin(), pairs_.end(), [&](const FreePair& p) {
      return p.free == free && p.coface == coface;
    });
  }

 private:
  std::vector<FreePair> pairs_;
};

/// A finite abstract simplicial complex stored as its Hasse diagram.
///
/// Every face carries links to its codimension-one faces (down) and cofaces
/// (up). A face is free iff it has exactly one coface; the set of free faces
/// is maintained incrementally so collapses cost O(dim) lattice updates.
class Complex {
 public:
  using FaceId = std::uint32_t;
  static constexpr FaceId npos = std::numeric_limits<FaceId>::max();

  Complex() = default;

  /// Downward closure of the given facets. Facets contained in other
  /// facets are absorbed.
  static Complex from_facets(std::span<const Simplex> facets) {
    if (facets.empty()) throw TopologyError("from_facets: empty facet list");
    Complex k;
    // Inserting large simplices first avoids re-linking absorbed ones.
    std::vector<const Simplex*> order;
    order.reserve(facets.size());
    for (const auto& f : facets) order.push_back(&f);
    std::stable_sort(order.begin(), order.end(),
                     [](const Simplex* a, const Simplex* b) { return a->size() > b->size(); });
    for (const Simplex* f : order) k.add_closure(*f);
    return k;
  }

  static Complex from_facets(const std::vector<Simplex>& facets) {
    return from_facets(std::span<const Simplex>(facets));
  }

  static Complex from_facets(const std::vector<std::vector<Vertex>>& facets) {
    std::vector<Simplex> s;
    s.reserve(facets.size());
    for (const auto& f : facets) s.emplace_back(f);
    return from_facets(s);
  }

  bool empty() const { return alive_ == 0; }
  std::size_t num_faces() const { return alive_; }

  /// Highest face dimension, -1 for the empty complex.
  int dimension() const {
    for (std::size_t i = counts_.size(); i-- > 0;)
      if (counts_[i] > 0) return static_cast<int>(i);
    return -1;
  }

  FVector f_vector() const {
    const int d = dimension();
    return FVector(std::vector<std::size_t>(counts_.begin(), counts_.begin() + (d + 1)));
  }

  long long euler_characteristic() const { return f_vector().euler_characteristic(); }

  bool contains(const Simplex& s) const { return index_.contains(s); }

  std::optional<FaceId> find(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  FaceId id_of(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw TopologyError("face " + s.to_string() + " not in complex");
    return it->second;
  }

  const Simplex& simplex(FaceId id) const { return nodes_[id].simplex; }
  std::span<const FaceId> cofaces(FaceId id) const { return nodes_[id].up; }
  std::span<const FaceId> boundary_faces(FaceId id) const {
    return {nodes_[id].down.data(), nodes_[id].down.size()};
  }
  bool is_maximal(FaceId id) const { return nodes_[id].up.empty(); }
  bool is_maximal(const Simplex& s) const { return is_maximal(id_of(s)); }

  /// Calls fn(FaceId) on every face, in storage order.
  template <typename Fn>
  void for_each_face_id(Fn&& fn) const {
    for (FaceId id = 0; id < nodes_.size(); ++id)
      if (nodes_[id].alive) fn(id);
  }

  /// All faces, sorted by dimension then lexicographically.
  std::vector<Simplex> faces() const {
    std::vector<Simplex> out;
    out.reserve(alive_);
    for_each_face_id([&](FaceId id) { out.push_back(nodes_[id].simplex); });
    std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
  }

  /// Faces of dimension i, sorted lexicographically.
  std::vector<Simplex> faces_of_dim(int i) const {
    std::vector<Simplex> out;
    for_each_face_id([&](FaceId id) {
      if (nodes_[id].simplex.dim() == i) out.push_back(nodes_[id].simplex);
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Maximal faces, sorted lexicographically.
  std::vector<Simplex> facets() const {
    std::vector<Simplex> out;
    for_each_face_id([&](FaceId id) {
      if (nodes_[id].up.empty()) out.push_back(nodes_[id].simplex);
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Maximal faces of dimension dimension(), in storage order.
  std::vector<FaceId> top_facet_ids() const {
    std::vector<FaceId> out;
    const int d = dimension();
    for_each_face_id([&](FaceId id) {
      if (nodes_[id].simplex.dim() == d) out.push_back(id);
    });
    return out;
  }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for_each_face_id([&](FaceId id) {
      if (nodes_[id].simplex.size() == 1) out.push_back(nodes_[id].simplex.front());
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Largest vertex label present, 0 for the empty complex.
  Vertex max_vertex() const {
    Vertex m = 0;
    for_each_face_id([&](FaceId id) {
      if (nodes_[id].simplex.size() == 1) m = std::max(m, nodes_[id].simplex.front());
    });
    return m;
  }

  // -- free faces ---------------------------------------------------------

  /// Number of free faces, ignoring bans. Each free face has one coface.
  std::size_t free_face_count() const { return free_.size(); }

  /// The i-th free face in internal order (stable for a fixed history).
  FaceId free_face_at(std::size_t i) const { return free_[i]; }

  bool is_free(FaceId id) const { return nodes_[id].free_pos != npos; }

  /// All free pairs not on the ban list, sorted.
  std::vector<FreePair> free_pairs() const {
    std::vector<FreePair> out;
    out.reserve(free_.size());
    for (FaceId f : free_) {
      const Simplex& tau = nodes_[f].simplex;
      const Simplex& sigma = nodes_[nodes_[f].up.front()].simplex;
      if (!bans_.contains(tau, sigma)) out.push_back({tau, sigma});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_free_faces() const {
    if (bans_.empty()) return !free_.empty();
    return !free_pairs().empty();
  }

  BanList& bans() { return bans_; }
  const BanList& bans() const { return bans_; }

  // -- mutation -----------------------------------------------------------

  /// Elementary collapse of the free pair (tau, sigma).
  void collapse(const Simplex& tau, const Simplex& sigma) {
    auto t = find(tau);
    if (!t) throw TopologyError("collapse: " + tau.to_string() + " is not a face");
    if (!is_free(*t))
      throw TopologyError("collapse: " + tau.to_string() + " is not a free face");
    if (nodes_[nodes_[*t].up.front()].simplex != sigma)
      throw TopologyError("collapse: the unique coface of " + tau.to_string() + " is " +
                          nodes_[nodes_[*t].up.front()].simplex.to_string() + ", not " +
                          sigma.to_string());
    if (bans_.contains(tau, sigma))
      throw TopologyError("collapse: pair (" + tau.to_string() + ", " + sigma.to_string() +
                          ") is banned");
    collapse_free(*t);
  }

  /// Collapses the free face with the given id together with its coface.
  /// Returns the coface's simplex.
  Simplex collapse_free(FaceId tau) {
    const FaceId sigma = nodes_[tau].up.front();
    Simplex removed = nodes_[sigma].simplex;
    kill(sigma);
    kill(tau);
    return removed;
  }

  /// Adds sigma and all of its missing faces. Throws if sigma is present.
  FaceId insert(const Simplex& sigma) {
    if (contains(sigma)) throw TopologyError("insert: " + sigma.to_string() + " already present");
    return add_closure(sigma);
  }

  /// Adds sigma and all of its missing faces; no-op for faces already there.
  FaceId add_closure(const Simplex& sigma) {
    if (auto it = index_.find(sigma); it != index_.end()) return it->second;
    boost::container::small_vector<FaceId, 8> down;
    if (sigma.size() > 1)
      for (std::size_t i = 0; i < sigma.size(); ++i)
        down.push_back(add_closure(sigma.facet_opposite(i)));
    const FaceId id = allocate(sigma);
    Node& n = nodes_[id];
    n.down = std::move(down);
    for (FaceId f : nodes_[id].down) {
      nodes_[f].up.push_back(id);
      refresh_free(f);
    }
    return id;
  }

  /// Removes a single maximal face.
  void remove_facet(const Simplex& sigma) {
    auto id = find(sigma);
    if (!id) throw TopologyError("remove_facet: " + sigma.to_string() + " is not a face");
    if (!is_maximal(*id))
      throw TopologyError("remove_facet: " + sigma.to_string() + " is not maximal");
    kill(*id);
  }

  /// Removes every face containing r (the open star of r).
  void remove_open_star(const Simplex& r) {
    auto id = find(r);
    if (!id) throw TopologyError("remove_open_star: " + r.to_string() + " is not a face");
    std::vector<FaceId> star;
    std::unordered_set<FaceId> seen{*id};
    star.push_back(*id);
    for (std::size_t i = 0; i < star.size(); ++i)
      for (FaceId c : nodes_[star[i]].up)
        if (seen.insert(c).second) star.push_back(c);
    std::sort(star.begin(), star.end(), [&](FaceId a, FaceId b) {
      return nodes_[a].simplex.size() > nodes_[b].simplex.size();
    });
    for (FaceId f : star) kill(f);
  }

  // -- queries ------------------------------------------------------------

  /// The subcomplex of all faces whose vertices lie in vs.
  Complex induced_subcomplex(std::span<const Vertex> vs) const {
    std::vector<Vertex> sorted(vs.begin(), vs.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<FaceId> keep;
    std::unordered_set<FaceId> seen;
    for (Vertex v : sorted) {
      auto id = find(Simplex{v});
      if (!id || !seen.insert(*id).second) continue;
      keep.push_back(*id);
    }
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (FaceId c : nodes_[keep[i]].up) {
        if (seen.contains(c)) continue;
        const Simplex& s = nodes_[c].simplex;
        if (std::includes(sorted.begin(), sorted.end(), s.begin(), s.end())) {
          seen.insert(c);
          keep.push_back(c);
        }
      }
    Complex out;
    std::sort(keep.begin(), keep.end(), [&](FaceId a, FaceId b) {
      return nodes_[a].simplex.size() > nodes_[b].simplex.size();
    });
    for (FaceId f : keep) out.add_closure(nodes_[f].simplex);
    return out;
  }

  /// Number of maximal faces containing r.
  std::size_t facet_degree(const Simplex& r) const {
    const FaceId start = id_of(r);
    std::vector<FaceId> stack{start};
    std::unordered_set<FaceId> seen{start};
    std::size_t count = 0;
    while (!stack.empty()) {
      FaceId f = stack.back();
      stack.pop_back();
      if (nodes_[f].up.empty()) ++count;
      for (FaceId c : nodes_[f].up)
        if (seen.insert(c).second) stack.push_back(c);
    }
    return count;
  }

  /// Maximal faces containing r, sorted.
  std::vector<Simplex> star_facets(const Simplex& r) const {
    const FaceId start = id_of(r);
    std::vector<FaceId> stack{start};
    std::unordered_set<FaceId> seen{start};
    std::vector<Simplex> out;
    while (!stack.empty()) {
      FaceId f = stack.back();
      stack.pop_back();
      if (nodes_[f].up.empty()) out.push_back(nodes_[f].simplex);
      for (FaceId c : nodes_[f].up)
        if (seen.insert(c).second) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Same face sets.
  friend bool operator==(const Complex& a, const Complex& b) {
    if (a.alive_ != b.alive_) return false;
    bool same = true;
    a.for_each_face_id([&](FaceId id) {
      if (same && !b.contains(a.nodes_[id].simplex)) same = false;
    });
    return same;
  }

 private:
  struct Node {
    explicit Node(Simplex s) : simplex(std::move(s)) {}
    Simplex simplex;
    boost::container::small_vector<FaceId, 8> down;
    std::vector<FaceId> up;
    FaceId free_pos = npos;
    bool alive = true;
  };

  FaceId allocate(const Simplex& s) {
    FaceId id;
    if (!recycled_.empty()) {
      id = recycled_.back();
      recycled_.pop_back();
      nodes_[id] = Node(s);
    } else {
      id = static_cast<FaceId>(nodes_.size());
      nodes_.emplace_back(s);
    }
    index_.emplace(s, id);
    const auto dim = static_cast<std::size_t>(s.dim());
    if (counts_.size() <= dim) counts_.resize(dim + 1, 0);
    ++counts_[dim];
    ++alive_;
    return id;
  }

  // Removes a face that has no cofaces.
  void kill(FaceId id) {
    Node& n = nodes_[id];
    if (!n.up.empty()) throw TopologyError("internal: removing a face that has cofaces");
    if (n.free_pos != npos) drop_free(id);
    for (FaceId f : n.down) {
      auto& up = nodes_[f].up;
      auto it = std::find(up.begin(), up.end(), id);
      *it = up.back();
      up.pop_back();
      refresh_free(f);
    }
    --counts_[static_cast<std::size_t>(n.simplex.dim())];
    --alive_;
    index_.erase(n.simplex);
    n.alive = false;
    n.down.clear();
    recycled_.push_back(id);
  }

  void refresh_free(FaceId id) {
    Node& n = nodes_[id];
    const bool should = n.up.size() == 1;
    if (should && n.free_pos == npos) {
      n.free_pos = static_cast<FaceId>(free_.size());
      free_.push_back(id);
    } else if (!should && n.free_pos != npos) {
      drop_free(id);
    }
  }

  void drop_free(FaceId id) {
    const FaceId pos = nodes_[id].free_pos;
    const FaceId last = free_.back();
    free_[pos] = last;
    nodes_[last].free_pos = pos;
    free_.pop_back();
    nodes_[id].free_pos = npos;
  }

  std::vector<Node> nodes_;
  std::vector<FaceId> recycled_;
  std::unordered_map<Simplex, FaceId, SimplexHash> index_;
  std::vector<std::size_t> counts_;
  std::vector<FaceId> free_;
  std::size_t alive_ = 0;
  BanList bans_;
};

}  // namespace rsht
