#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rsht/complex.hpp"

namespace rsht {

using BigInt = boost::multiprecision::cpp_int;

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column-major sparse integer matrix.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, long long>>> columns;

  std::vector<std::vector<long long>> dense() const {
    std::vector<std::vector<long long>> out(rows, std::vector<long long>(cols, 0));
    for (std::size_t c = 0; c < cols; ++c)
      for (auto [r, v] : columns[c]) out[r][c] = v;
    return out;
  }
};

/// Simplicial boundary map C_i -> C_{i-1}. Rows and columns follow the
/// lexicographic order of faces; the face omitting position j gets (-1)^j.
inline SparseIntMatrix boundary_matrix(const Complex& k, int i) {
  if (i < 1 || i > k.dimension())
    throw std::out_of_range("boundary_matrix: dimension " + std::to_string(i) +
                            " out of range 1.." + std::to_string(k.dimension()));
  auto lower = k.faces_of_dim(i - 1);
  auto upper = k.faces_of_dim(i);
  std::unordered_map<Simplex, std::uint32_t, SimplexHash> row_of;
  row_of.reserve(lower.size());
  for (std::uint32_t r = 0; r < lower.size(); ++r) row_of.emplace(lower[r], r);
  SparseIntMatrix m;
  m.rows = lower.size();
  m.cols = upper.size();
  m.columns.resize(upper.size());
  for (std::size_t c = 0; c < upper.size(); ++c) {
    auto& col = m.columns[c];
    for (std::size_t j = 0; j < upper[c].size(); ++j)
      col.emplace_back(row_of.at(upper[c].facet_opposite(j)), j % 2 == 0 ? 1 : -1);
    std::sort(col.begin(), col.end());
  }
  return m;
}

namespace detail {

inline BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

/// Invariant factors of a dense matrix by elimination with the smallest
/// non-zero entry as pivot.
inline std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> a) {
  std::vector<BigInt> out;
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  auto smallest = [&](std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    BigInt best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (!found || abs_big(a[i][j]) < best)) {
          best = abs_big(a[i][j]);
          pi = i;
          pj = j;
          found = true;
        }
    return found;
  };
  auto move_to = [&](std::size_t t, std::size_t i, std::size_t j) {
    std::swap(a[t], a[i]);
    for (std::size_t r = 0; r < m; ++r) std::swap(a[r][t], a[r][j]);
  };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!smallest(t, pi, pj)) break;
    move_to(t, pi, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot is left in row t or column t.
        std::size_t bi = t, bj = t;
        BigInt best = abs_big(a[t][t]);
        for (std::size_t i = t + 1; i < m; ++i)
          if (a[i][t] != 0 && abs_big(a[i][t]) < best) best = abs_big(a[i][t]), bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[t][j] != 0 && abs_big(a[t][j]) < best) best = abs_big(a[t][j]), bi = t, bj = j;
        move_to(t, bi, bj);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t c = t; c < n; ++c) a[t][c] += a[i][c];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs_big(a[t][t]));
  }
  return out;
}

}  // namespace detail

/// Non-zero invariant factors (Smith normal form diagonal) of a sparse
/// integer matrix, in divisibility order. Unit pivots are eliminated
/// sparsely first; what remains is reduced densely.
inline std::vector<BigInt> smith_invariants(const SparseIntMatrix& mat) {
  using Col = std::vector<std::pair<std::uint32_t, BigInt>>;
  std::vector<Col> cols(mat.cols);
  std::vector<std::unordered_set<std::uint32_t>> row_cols(mat.rows);
  for (std::size_t c = 0; c < mat.cols; ++c)
    for (auto [r, v] : mat.columns[c])
      if (v != 0) {
        cols[c].emplace_back(r, BigInt(v));
        row_cols[r].insert(static_cast<std::uint32_t>(c));
      }
  for (auto& col : cols) std::sort(col.begin(), col.end(), [](auto& x, auto& y) {
    return x.first < y.first;
  });

  std::vector<bool> col_alive(mat.cols, true);
  std::size_t units = 0;
  for (;;) {
    // Markowitz-style choice: sparsest column holding a unit, then the
    // unit whose row is sparsest.
    std::size_t best_c = mat.cols, best_cost = static_cast<std::size_t>(-1);
    std::uint32_t best_r = 0;
    for (std::size_t c = 0; c < mat.cols; ++c) {
      if (!col_alive[c] || cols[c].empty() || cols[c].size() > best_cost) continue;
      for (auto& [r, v] : cols[c]) {
        if (v != 1 && v != -1) continue;
        const std::size_t cost = (cols[c].size() - 1) * (row_cols[r].size() - 1);
        if (best_c == mat.cols || cost < best_cost) {
          best_c = c;
          best_r = r;
          best_cost = cost;
        }
      }
    }
    if (best_c == mat.cols) break;
    const Col pivot_col = cols[best_c];
    BigInt unit;
    for (auto& [r, v] : pivot_col)
      if (r == best_r) unit = v;
    std::vector<std::uint32_t> touched(row_cols[best_r].begin(), row_cols[best_r].end());
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t c2 : touched) {
      if (c2 == best_c) continue;
      BigInt a;
      for (auto& [r, v] : cols[c2])
        if (r == best_r) a = v;
      const BigInt factor = a * unit;  // unit is its own inverse
      // cols[c2] -= factor * pivot_col, merged by row.
      Col merged;
      merged.reserve(cols[c2].size() + pivot_col.size());
      std::size_t x = 0, y = 0;
      auto& cur = cols[c2];
      while (x < cur.size() || y < pivot_col.size()) {
        if (y == pivot_col.size() || (x < cur.size() && cur[x].first < pivot_col[y].first)) {
          merged.push_back(std::move(cur[x++]));
        } else if (x == cur.size() || pivot_col[y].first < cur[x].first) {
          const auto r = pivot_col[y].first;
          merged.emplace_back(r, -factor * pivot_col[y].second);
          row_cols[r].insert(c2);
          ++y;
        } else {
          const auto r = cur[x].first;
          BigInt v = cur[x].second - factor * pivot_col[y].second;
          if (v != 0) {
            merged.emplace_back(r, std::move(v));
          } else {
            row_cols[r].erase(c2);
          }
          ++x;
          ++y;
        }
      }
      cur = std::move(merged);
    }
    for (auto& [r, v] : pivot_col) row_cols[r].erase(static_cast<std::uint32_t>(best_c));
    cols[best_c].clear();
    col_alive[best_c] = false;
    ++units;
  }

  // Dense remainder.
  std::vector<std::uint32_t> live_rows;
  for (std::uint32_t r = 0; r < mat.rows; ++r)
    if (!row_cols[r].empty()) live_rows.push_back(r);
  std::vector<std::size_t> live_cols;
  for (std::size_t c = 0; c < mat.cols; ++c)
    if (col_alive[c] && !cols[c].empty()) live_cols.push_back(c);
  std::vector<BigInt> out(units, BigInt(1));
  if (!live_rows.empty() && !live_cols.empty()) {
    std::unordered_map<std::uint32_t, std::size_t> ri;
    for (std::size_t i = 0; i < live_rows.size(); ++i) ri[live_rows[i]] = i;
    std::vector<std::vector<BigInt>> dense(live_rows.size(),
                                           std::vector<BigInt>(live_cols.size(), 0));
    for (std::size_t j = 0; j < live_cols.size(); ++j)
      for (auto& [r, v] : cols[live_cols[j]]) dense[ri.at(r)][j] = v;
    for (auto& d : detail::dense_smith(std::move(dense))) out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<BigInt> smith_invariants(const std::vector<std::vector<long long>>& dense) {
  SparseIntMatrix m;
  m.rows = dense.size();
  m.cols = dense.empty() ? 0 : dense[0].size();
  m.columns.resize(m.cols);
  for (std::size_t c = 0; c < m.cols; ++c)
    for (std::size_t r = 0; r < m.rows; ++r)
      if (dense[r][c] != 0) m.columns[c].emplace_back(static_cast<std::uint32_t>(r), dense[r][c]);
  return smith_invariants(m);
}

/// Reduced integral homology: Betti numbers and torsion coefficients per
/// dimension 0..dim(K).
struct HomologyProfile {
  std::vector<std::size_t> betti;
  std::vector<std::vector<BigInt>> torsion;

  bool is_trivial() const {
    for (auto b : betti)
      if (b) return false;
    for (auto& t : torsion)
      if (!t.empty()) return false;
    return true;
  }

  /// Alternating sum of reduced Betti numbers; equals chi - 1.
  long long reduced_euler() const {
    long long s = 0;
    for (std::size_t i = 0; i < betti.size(); ++i)
      s += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(betti[i]);
    return s;
  }

  /// Drops trailing all-zero dimensions so profiles of complexes of
  /// different dimension compare by their groups alone.
  HomologyProfile trimmed() const {
    HomologyProfile p = *this;
    while (!p.betti.empty() && p.betti.back() == 0 && p.torsion.back().empty()) {
      p.betti.pop_back();
      p.torsion.pop_back();
    }
    return p;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < betti.size(); ++i) {
      if (i) s += ", ";
      s += "H" + std::to_string(i) + "=Z^" + std::to_string(betti[i]);
      for (auto& t : torsion[i]) s += "+Z/" + t.str();
    }
    return s;
  }

  /// Compares the groups; trailing trivial dimensions are ignored.
  friend bool operator==(const HomologyProfile& a, const HomologyProfile& b) {
    const auto ta = a.trimmed(), tb = b.trimmed();
    return ta.betti == tb.betti && ta.torsion == tb.torsion;
  }

  friend std::ostream& operator<<(std::ostream& os, const HomologyProfile& h) {
    return os << h.to_string();
  }
};

constexpr std::size_t kDefaultHomologyFaceLimit = 200000;

inline HomologyProfile homology(const Complex& k,
                                std::size_t face_limit = kDefaultHomologyFaceLimit) {
  if (k.empty()) throw TopologyError("homology: empty complex");
  if (k.num_faces() > face_limit)
    throw CapacityError("homology: " + std::to_string(k.num_faces()) +
                        " faces exceed the limit of " + std::to_string(face_limit));
  const int d = k.dimension();
  const auto f = k.f_vector();
  // rank[i] = rank of the boundary out of dimension i; rank[0] is the
  // augmentation.
  std::vector<std::size_t> rank(static_cast<std::size_t>(d) + 2, 0);
  std::vector<std::vector<BigInt>> divisors(static_cast<std::size_t>(d) + 2);
  rank[0] = 1;
  for (int i = 1; i <= d; ++i) {
    divisors[i] = smith_invariants(boundary_matrix(k, i));
    rank[i] = divisors[i].size();
  }
  HomologyProfile p;
  for (int i = 0; i <= d; ++i) {
    p.betti.push_back(f[i] - rank[i] - rank[i + 1]);
    std::vector<BigInt> tors;
    for (auto& x : divisors[i + 1])
      if (x > 1) tors.push_back(x);
    p.torsion.push_back(std::move(tors));
  }
  return p;
}

}  // namespace rsht
