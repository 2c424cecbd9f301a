#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "rsht/complex.hpp"

namespace rsht {

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// SplitMix64 finaliser; used to derive independent per-round seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t round_seed(std::uint64_t seed, std::size_t round) {
  return mix64(mix64(seed) ^ (static_cast<std::uint64_t>(round) * 0xd1b54a32d192ed03ULL));
}

/// An induced pure d-ball on d+2 vertices: k of the d-faces of sigma, all
/// containing base, i.e. B = base * boundary(sigma - base).
struct BallDescriptor {
  Simplex sigma;
  std::vector<Simplex> facets;
  Simplex base;

  std::size_t k() const { return facets.size(); }
  int d() const { return sigma.dim() - 1; }
  /// sigma minus base; never empty since k >= 1.
  Simplex complement() const { return Simplex(sigma.minus(base)); }

  friend bool operator==(const BallDescriptor&, const BallDescriptor&) = default;
};

enum class CandidatePolicy { global, local };
enum class CollapsePolicy { uniform_pair, uniform_coface };

struct RshtConfig {
  /// Budget of (S) steps. 0 disables subdivisions.
  std::size_t max_step = 1000;
  /// Hard cap on (E) + (S) steps together.
  std::size_t total_expansion_cap = 100000;
  std::uint64_t seed = 0;
  CandidatePolicy candidates = CandidatePolicy::global;
  CollapsePolicy collapses = CollapsePolicy::uniform_pair;
  bool record_trace = false;

  void validate() const {
    if (total_expansion_cap < max_step)
      throw std::invalid_argument("total_expansion_cap must be >= max_step");
    if (total_expansion_cap == 0) throw std::invalid_argument("total_expansion_cap must be >= 1");
  }
};

enum class MoveKind { collapse, expansion, subdivision };

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::collapse: return "C";
    case MoveKind::expansion: return "E";
    case MoveKind::subdivision: return "S";
  }
  return "?";
}

/// One composite move. For a collapse: (free face, coface). For (E)+(CC)
/// and (S): (the old facet removed in (CC), the added simplex sigma).
struct Move {
  MoveKind kind;
  Simplex face;
  Simplex coface;

  friend bool operator==(const Move&, const Move&) = default;
};

struct RunReport {
  std::size_t expansions = 0;
  std::size_t subdivisions = 0;
  std::size_t collapses = 0;  // (C) and (CC)
  FVector final_f;
  bool reduced_to_point = false;
  bool cap_hit = false;
  /// Digest of the full move sequence, computed even when no trace is kept.
  std::uint64_t digest = 0;
  std::vector<Move> trace;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Incremental FNV-1a digest over moves.
class TraceHasher {
 public:
  void add(const Move& m) {
    feed(static_cast<std::uint64_t>(m.kind));
    feed(m.face.size());
    for (Vertex v : m.face) feed(v);
    feed(m.coface.size());
    for (Vertex v : m.coface) feed(v);
  }
  std::uint64_t value() const { return h_; }

 private:
  void feed(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (x >> (8 * i)) & 0xff;
      h_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t trace_digest(std::span<const Move> trace) {
  TraceHasher h;
  for (const Move& m : trace) h.add(m);
  return h.value();
}

using MoveObserver = std::function<void(const Move&, const Complex&)>;

// ---------------------------------------------------------------------------
// Pure balls and candidates

/// Is the subcomplex induced on the d+2 vertices vs a pure d-ball with
/// 1 <= k <= d+1 facets? A lookup of the d+2 facets of sigma plus one
/// lookup of the complement of their intersection.
inline std::optional<BallDescriptor> is_pure_ball(const Complex& k,
                                                  std::span<const Vertex> vs, int d) {
  if (d < 0 || vs.size() != static_cast<std::size_t>(d) + 2)
    throw TopologyError("is_pure_ball: need exactly d+2 vertices");
  Simplex sigma(vs);
  if (sigma.size() != vs.size()) throw TopologyError("is_pure_ball: repeated vertices");
  if (k.contains(sigma)) return std::nullopt;
  BallDescriptor ball{sigma, {}, sigma};
  std::vector<Vertex> apexes;  // v with sigma - v present
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    Simplex f = sigma.facet_opposite(i);
    if (k.contains(f)) {
      ball.facets.push_back(std::move(f));
      apexes.push_back(sigma[i]);
    }
  }
  const std::size_t kk = ball.facets.size();
  if (kk == 0 || kk == sigma.size()) return std::nullopt;
  // Any induced face outside the k facets contains all apexes.
  Simplex apex_face(apexes);
  if (k.contains(apex_face)) return std::nullopt;
  ball.base = Simplex(sigma.minus(apex_face));
  std::sort(ball.facets.begin(), ball.facets.end());
  return ball;
}

namespace detail {

inline void candidates_at(const Complex& k, Complex::FaceId rho, int d,
                          std::unordered_set<Simplex, SimplexHash>& seen,
                          std::vector<BallDescriptor>& out) {
  const Simplex& rs = k.simplex(rho);
  for (Complex::FaceId ridge : k.boundary_faces(rho)) {
    for (Complex::FaceId other : k.cofaces(ridge)) {
      if (other == rho) continue;
      const Simplex& os = k.simplex(other);
      if (os.dim() != d) continue;
      Simplex sigma = rs.join(os);
      if (!seen.insert(sigma).second) continue;
      if (auto ball = is_pure_ball(k, sigma.vertices(), d)) out.push_back(std::move(*ball));
    }
  }
}

}  // namespace detail

/// All pure induced d-balls on d+2 vertices spanned by two top facets
/// sharing a ridge, sorted by sigma.
inline std::vector<BallDescriptor> enumerate_expansion_candidates(const Complex& k) {
  std::vector<BallDescriptor> out;
  const int d = k.dimension();
  if (d < 1) return out;
  std::unordered_set<Simplex, SimplexHash> seen;
  for (Complex::FaceId rho : k.top_facet_ids()) detail::candidates_at(k, rho, d, seen, out);
  std::sort(out.begin(), out.end(),
            [](const BallDescriptor& a, const BallDescriptor& b) { return a.sigma < b.sigma; });
  return out;
}

/// Candidates using one fixed top facet rho.
inline std::vector<BallDescriptor> local_expansion_candidates(const Complex& k,
                                                              const Simplex& rho) {
  std::vector<BallDescriptor> out;
  const int d = k.dimension();
  if (d < 1) return out;
  const auto id = k.id_of(rho);
  if (k.simplex(id).dim() != d) throw TopologyError("local candidates need a top facet");
  std::unordered_set<Simplex, SimplexHash> seen;
  detail::candidates_at(k, id, d, seen, out);
  std::sort(out.begin(), out.end(),
            [](const BallDescriptor& a, const BallDescriptor& b) { return a.sigma < b.sigma; });
  return out;
}

// ---------------------------------------------------------------------------
// Moves

/// Picks one free pair at random under the given policy and collapses it.
/// Bans are honoured. Returns nullopt when there is nothing to collapse.
inline std::optional<Move> random_collapse(Complex& k, Rng& rng,
                                           CollapsePolicy policy = CollapsePolicy::uniform_pair) {
  if (!k.bans().empty()) {
    auto pairs = k.free_pairs();
    if (pairs.empty()) return std::nullopt;
    const FreePair& p = pairs[uniform_index(rng, pairs.size())];
    Move m{MoveKind::collapse, p.free, p.coface};
    k.collapse(p.free, p.coface);
    return m;
  }
  const std::size_t n = k.free_face_count();
  if (n == 0) return std::nullopt;
  Complex::FaceId tau;
  if (policy == CollapsePolicy::uniform_pair) {
    tau = k.free_face_at(uniform_index(rng, n));
  } else {
    // Cofaces in order of first appearance, then one of their free faces.
    std::vector<Complex::FaceId> cofaces;
    std::unordered_set<Complex::FaceId> seen;
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = k.cofaces(k.free_face_at(i)).front();
      if (seen.insert(c).second) cofaces.push_back(c);
    }
    const auto sigma = cofaces[uniform_index(rng, cofaces.size())];
    std::vector<Complex::FaceId> mine;
    for (std::size_t i = 0; i < n; ++i)
      if (k.cofaces(k.free_face_at(i)).front() == sigma) mine.push_back(k.free_face_at(i));
    tau = mine[uniform_index(rng, mine.size())];
  }
  Simplex free = k.simplex(tau);
  Simplex coface = k.collapse_free(tau);
  return Move{MoveKind::collapse, std::move(free), std::move(coface)};
}

/// (C) until no free faces remain. Returns the number of collapses.
inline std::size_t collapse_until_stuck(Complex& k, Rng& rng,
                                        CollapsePolicy policy = CollapsePolicy::uniform_pair,
                                        std::vector<Move>* trace = nullptr,
                                        const MoveObserver& observer = {}) {
  std::size_t count = 0;
  while (auto m = random_collapse(k, rng, policy)) {
    ++count;
    if (observer) observer(*m, k);
    if (trace) trace->push_back(std::move(*m));
  }
  return count;
}

/// (E) + (CC): glue ball.sigma, then collapse it away together with one of
/// the k old facets chosen uniformly. While sigma exists the new facets of
/// sigma (those not containing the base) are banned, so (CC) cannot undo (E).
inline Move pure_expansion_step(Complex& k, const BallDescriptor& ball, Rng& rng) {
  if (k.contains(ball.sigma))
    throw TopologyError("pure_expansion_step: " + ball.sigma.to_string() + " already present");
  const int d = ball.d();
  if (k.dimension() != d)
    throw TopologyError("pure_expansion_step: descriptor dimension does not match complex");
  auto fresh = is_pure_ball(k, ball.sigma.vertices(), d);
  if (!fresh || *fresh != ball)
    throw TopologyError("pure_expansion_step: stale ball descriptor for " +
                        ball.sigma.to_string());
  k.insert(ball.sigma);
  for (Vertex u : ball.base) k.bans().add({ball.sigma.without(u), ball.sigma});
  const Simplex& old = ball.facets[uniform_index(rng, ball.facets.size())];
  k.collapse(old, ball.sigma);
  k.bans().clear();
  return Move{MoveKind::expansion, old, ball.sigma};
}

/// (S): stellar subdivision of a top facet with a fresh vertex, done as
/// (E) + (CC) on the k = 1 ball consisting of the facet alone.
inline Move subdivision_step(Complex& k, const Simplex& facet, Rng& rng) {
  const auto id = k.find(facet);
  if (!id) throw TopologyError("subdivision_step: " + facet.to_string() + " is not a face");
  if (!k.is_maximal(*id) || facet.dim() != k.dimension())
    throw TopologyError("subdivision_step: " + facet.to_string() + " is not a top facet");
  const Vertex v = k.max_vertex() + 1;
  Simplex sigma = facet.with(v);
  auto ball = is_pure_ball(k, sigma.vertices(), facet.dim());
  if (!ball) throw TopologyError("subdivision_step: internal error building the k=1 ball");
  Move m = pure_expansion_step(k, *ball, rng);
  m.kind = MoveKind::subdivision;
  return m;
}

// ---------------------------------------------------------------------------
// Main loop

namespace detail {

inline std::optional<BallDescriptor> pick_candidate(const Complex& k, CandidatePolicy policy,
                                                    Rng& rng) {
  if (policy == CandidatePolicy::global) {
    auto all = enumerate_expansion_candidates(k);
    if (all.empty()) return std::nullopt;
    return all[uniform_index(rng, all.size())];
  }
  auto tops = k.top_facet_ids();
  std::vector<Simplex> order;
  order.reserve(tops.size());
  for (auto id : tops) order.push_back(k.simplex(id));
  std::sort(order.begin(), order.end());
  std::shuffle(order.begin(), order.end(), rng);
  for (const Simplex& rho : order) {
    auto local = local_expansion_candidates(k, rho);
    if (!local.empty()) return local[uniform_index(rng, local.size())];
  }
  return std::nullopt;
}

}  // namespace detail

/// Random Simple-Homotopy on k, in place.
///
/// Loop: collapse until stuck; stop at dimension 0; otherwise perform (E)+(CC)
/// on a random candidate ball, or, if there is none and the (S) budget is not
/// spent, a subdivision of a random top facet. Stops when neither is possible
/// or when total_expansion_cap moves of type (E)/(S) have been made.
inline RunReport rsht_run(Complex& k, const RshtConfig& cfg, Rng& rng,
                          const MoveObserver& observer = {}) {
  cfg.validate();
  if (k.empty()) throw TopologyError("rsht_run: empty complex");
  RunReport report;
  std::vector<Move>* trace = cfg.record_trace ? &report.trace : nullptr;
  TraceHasher hasher;
  const MoveObserver hashing = [&](const Move& m, const Complex& c) {
    hasher.add(m);
    if (observer) observer(m, c);
  };
  for (;;) {
    report.collapses += collapse_until_stuck(k, rng, cfg.collapses, trace, hashing);
    const int d = k.dimension();
    if (d <= 0) break;
    if (report.expansions + report.subdivisions >= cfg.total_expansion_cap) {
      report.cap_hit = true;
      break;
    }
    std::optional<Move> m;
    if (auto ball = detail::pick_candidate(k, cfg.candidates, rng)) {
      m = pure_expansion_step(k, *ball, rng);
      ++report.expansions;
    } else if (report.subdivisions < cfg.max_step) {
      auto tops = k.top_facet_ids();
      std::vector<Simplex> facets;
      for (auto id : tops) facets.push_back(k.simplex(id));
      std::sort(facets.begin(), facets.end());
      m = subdivision_step(k, facets[uniform_index(rng, facets.size())], rng);
      ++report.subdivisions;
    } else {
      break;
    }
    ++report.collapses;  // the (CC) collapse
    hashing(*m, k);
    if (trace) trace->push_back(std::move(*m));
  }
  report.final_f = k.f_vector();
  report.reduced_to_point = k.num_faces() == 1;
  report.digest = hasher.value();
  return report;
}

/// Seeds a fresh generator from cfg.seed.
inline RunReport rsht_run(Complex& k, const RshtConfig& cfg) {
  Rng rng(cfg.seed);
  return rsht_run(k, cfg, rng);
}

// ---------------------------------------------------------------------------
// Batches

struct RoundResult {
  std::size_t round = 0;
  std::uint64_t seed = 0;
  RunReport report;
  std::optional<Complex> final_complex;
};

struct BatchSummary {
  std::size_t rounds = 0;
  std::size_t successes = 0;
  std::size_t min_expansions = 0;
  std::size_t max_expansions = 0;
  double mean_expansions = 0;
  std::size_t min_subdivisions = 0;
  std::size_t max_subdivisions = 0;
  double mean_subdivisions = 0;
  double success_rate() const {
    return rounds ? static_cast<double>(successes) / static_cast<double>(rounds) : 0.0;
  }
};

struct BatchReport {
  RshtConfig config;
  std::vector<RoundResult> results;

  BatchSummary summary() const {
    BatchSummary s;
    s.rounds = results.size();
    if (results.empty()) return s;
    s.min_expansions = s.min_subdivisions = static_cast<std::size_t>(-1);
    std::size_t exp_sum = 0, sub_sum = 0;
    for (const auto& r : results) {
      const auto& rep = r.report;
      s.successes += rep.reduced_to_point ? 1 : 0;
      s.min_expansions = std::min(s.min_expansions, rep.expansions);
      s.max_expansions = std::max(s.max_expansions, rep.expansions);
      s.min_subdivisions = std::min(s.min_subdivisions, rep.subdivisions);
      s.max_subdivisions = std::max(s.max_subdivisions, rep.subdivisions);
      exp_sum += rep.expansions;
      sub_sum += rep.subdivisions;
    }
    s.mean_expansions = static_cast<double>(exp_sum) / static_cast<double>(s.rounds);
    s.mean_subdivisions = static_cast<double>(sub_sum) / static_cast<double>(s.rounds);
    return s;
  }
};

struct BatchOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  bool keep_final_complexes = false;
};

/// Runs `rounds` independent RSHT runs on copies of k. Round i uses the
/// seed round_seed(cfg.seed, i), so results do not depend on scheduling.
inline BatchReport rsht_batch(const Complex& k, std::size_t rounds, const RshtConfig& cfg,
                              const BatchOptions& opts = {}) {
  if (rounds == 0) throw std::invalid_argument("rsht_batch: rounds must be >= 1");
  cfg.validate();
  BatchReport out;
  out.config = cfg;
  out.results.resize(rounds);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rounds; i = next++) {
      RoundResult& r = out.results[i];
      r.round = i;
      r.seed = round_seed(cfg.seed, i);
      Complex copy = k;
      Rng rng(r.seed);
      r.report = rsht_run(copy, cfg, rng);
      if (opts.keep_final_complexes) r.final_complex = std::move(copy);
    }
  };
  unsigned n = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, rounds));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace rsht
