#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace rsht {

/// Opaque positive vertex label.
using Vertex = std::uint32_t;

/// Raised for malformed simplices and complexes and for operations whose
/// preconditions do not hold on the given complex.
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simplex: a non-empty, strictly increasing sequence of vertex labels.
class Simplex {
 public:
  using Storage = boost::container::small_vector<Vertex, 8>;

  Simplex(std::initializer_list<Vertex> vertices)
      : Simplex(std::span<const Vertex>(vertices.begin(), vertices.size())) {}

  explicit Simplex(std::span<const Vertex> vertices)
      : v_(vertices.begin(), vertices.end()) {
    normalize();
  }

  explicit Simplex(const std::vector<Vertex>& vertices)
      : Simplex(std::span<const Vertex>(vertices)) {}

  /// Builds from a range that is already strictly increasing; no checks.
  static Simplex from_sorted(std::span<const Vertex> sorted) {
    Simplex s;
    s.v_.assign(sorted.begin(), sorted.end());
    return s;
  }

  int dim() const { return static_cast<int>(v_.size()) - 1; }
  std::size_t size() const { return v_.size(); }
  std::span<const Vertex> vertices() const { return {v_.data(), v_.size()}; }
  Vertex operator[](std::size_t i) const { return v_[i]; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  Vertex front() const { return v_.front(); }
  Vertex back() const { return v_.back(); }

  bool contains(Vertex v) const {
    return std::binary_search(v_.begin(), v_.end(), v);
  }

  bool is_face_of(const Simplex& other) const {
    return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
  }

  /// The codimension-one face opposite to position i.
  Simplex facet_opposite(std::size_t i) const {
    Simplex s;
    s.v_.reserve(v_.size() - 1);
    for (std::size_t j = 0; j < v_.size(); ++j)
      if (j != i) s.v_.push_back(v_[j]);
    return s;
  }

  /// Removes v; the result must stay non-empty.
  Simplex without(Vertex v) const {
    auto it = std::lower_bound(v_.begin(), v_.end(), v);
    if (it == v_.end() || *it != v)
      throw TopologyError("vertex " + std::to_string(v) + " not in simplex " + to_string());
    if (v_.size() == 1) throw TopologyError("cannot remove the only vertex of a simplex");
    return facet_opposite(static_cast<std::size_t>(it - v_.begin()));
  }

  Simplex with(Vertex v) const {
    if (v == 0) throw TopologyError("vertex labels must be positive");
    auto it = std::lower_bound(v_.begin(), v_.end(), v);
    if (it != v_.end() && *it == v)
      throw TopologyError("vertex " + std::to_string(v) + " already in simplex " + to_string());
    Simplex s(*this);
    s.v_.insert(s.v_.begin() + (it - v_.begin()), v);
    return s;
  }

  /// Union of vertex sets.
  Simplex join(const Simplex& other) const {
    Simplex s;
    std::set_union(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                   std::back_inserter(s.v_));
    return s;
  }

  /// Vertices of this simplex not in other. Empty result means "no simplex";
  /// callers get the raw vertex list.
  std::vector<Vertex> minus(const Simplex& other) const {
    std::vector<Vertex> out;
    std::set_difference(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                        std::back_inserter(out));
    return out;
  }

  std::vector<Vertex> intersect(const Simplex& other) const {
    std::vector<Vertex> out;
    std::set_intersection(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                          std::back_inserter(out));
    return out;
  }

  /// Space separated labels, e.g. "1 3 6".
  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < v_.size(); ++i) os << (i ? " " : "") << v_[i];
    return os.str();
  }

  friend bool operator==(const Simplex& a, const Simplex& b) {
    return std::equal(a.v_.begin(), a.v_.end(), b.v_.begin(), b.v_.end());
  }

  /// Lexicographic on the vertex sequence.
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    return std::lexicographical_compare_three_way(a.v_.begin(), a.v_.end(), b.v_.begin(),
                                                  b.v_.end());
  }

  friend std::ostream& operator<<(std::ostream& os, const Simplex& s) {
    return os << '[' << s.to_string() << ']';
  }

 private:
  Simplex() = default;

  void normalize() {
    if (v_.empty()) throw TopologyError("a simplex must have at least one vertex");
    std::sort(v_.begin(), v_.end());
    if (v_.front() == 0) throw TopologyError("vertex labels must be positive");
    if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
      throw TopologyError("duplicate vertex label in simplex");
  }

  Storage v_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Vertex v : s) {
      h ^= v;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// Calls fn on every non-empty subset of s, smallest first.
template <typename Fn>
void for_each_face(const Simplex& s, Fn&& fn) {
  const std::size_t n = s.size();
  std::vector<Vertex> buf;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      buf.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) buf.push_back(s[i]);
      fn(Simplex::from_sorted(buf));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
}

}  // namespace rsht
