#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rsht/engine.hpp"
#include "rsht/generators.hpp"
#include "rsht/io.hpp"

namespace rsht {

/// Named batch experiment. Expectations are one-sided bounds on checkable
/// quantities, never equalities on means.
struct ExperimentPreset {
  std::string name;
  std::string description;
  /// Generator for the input; empty when the input is a file.
  std::function<Complex()> generate;
  std::optional<std::filesystem::path> input_file;
  bool delete_facet = false;
  std::size_t flip_walk_steps = 0;
  std::size_t rounds = 100;
  RshtConfig config;

  bool expect_all_reduced = false;
  bool expect_some_reduced = false;
  std::optional<std::size_t> expect_min_expansions_at_most;
  /// At least one round must end at dimension <= this.
  std::optional<int> expect_some_final_dim_at_most;
  std::optional<FVector> reference_f;
};

struct PresetOutcome {
  Complex input;
  BatchReport batch;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline Complex resolve_input(const ExperimentPreset& p, std::uint64_t seed) {
  Complex k;
  if (p.input_file) {
    if (!std::filesystem::exists(*p.input_file))
      throw std::runtime_error("preset " + p.name + ": missing input file " +
                               p.input_file->string());
    k = parse_facet_file(*p.input_file);
  } else if (p.generate) {
    k = p.generate();
  } else {
    throw std::runtime_error("preset " + p.name + ": no input source");
  }
  if (p.flip_walk_steps) {
    Rng rng(mix64(seed ^ 0x5eedf11bULL));
    k = random_flip_walk(k, p.flip_walk_steps, rng);
  }
  if (p.delete_facet) k = minus_facet(k);
  return k;
}

inline std::vector<ExperimentPreset> builtin_presets() {
  std::vector<ExperimentPreset> out;
  auto add = [&](ExperimentPreset p) { out.push_back(std::move(p)); };

  ExperimentPreset dh;
  dh.name = "dunce-hat";
  dh.description = "8-vertex Dunce Hat";
  dh.generate = dunce_hat8;
  dh.rounds = 1000;
  dh.expect_all_reduced = true;
  dh.expect_min_expansions_at_most = 2;
  dh.reference_f = FVector{8, 24, 17};
  add(dh);

  ExperimentPreset ab;
  ab.name = "abalone";
  ab.description = "15-vertex Abalone";
  ab.generate = abalone;
  ab.rounds = 100;
  ab.config.candidates = CandidatePolicy::local;
  ab.config.total_expansion_cap = 20000;
  ab.expect_some_reduced = true;
  ab.reference_f = FVector{15, 50, 36};
  add(ab);

  ExperimentPreset bh;
  bh.name = "bing-house";
  bh.description = "Bing's house with two rooms";
  bh.generate = bing_house2;
  bh.rounds = 100;
  bh.config.candidates = CandidatePolicy::local;
  bh.config.total_expansion_cap = 20000;
  bh.expect_some_reduced = true;
  bh.reference_f = FVector{19, 65, 47};
  add(bh);

  for (int k = 3; k <= 7; ++k) {
    ExperimentPreset p;
    p.name = "bh" + std::to_string(k);
    p.description = "Bing's house with " + std::to_string(k) + " rooms";
    p.generate = [k] { return bing_house_k(k); };
    p.rounds = 20;
    p.config.candidates = CandidatePolicy::local;
    p.config.total_expansion_cap = 5000;
    p.reference_f = FVector{14 * static_cast<std::size_t>(k) + 1,
                            50 * static_cast<std::size_t>(k), 36 * static_cast<std::size_t>(k)};
    add(p);
  }

  struct Prod {
    const char* name;
    int p, q;
  };
  for (const Prod& s : {Prod{"s2xs1-minus-facet", 2, 1}, Prod{"s3xs1-minus-facet", 3, 1},
                        Prod{"s2xs2-minus-facet", 2, 2}, Prod{"s3xs2-minus-facet", 3, 2}}) {
    ExperimentPreset p;
    p.name = s.name;
    p.description = "staircase S^" + std::to_string(s.p) + " x S^" + std::to_string(s.q) +
                    " minus a facet";
    p.generate = [s] { return sphere_product(s.p, s.q); };
    p.delete_facet = true;
    p.rounds = 100;
    p.config.max_step = 0;
    p.expect_some_final_dim_at_most = std::max(s.p, s.q);
    add(p);
  }

  ExperimentPreset tx;
  tx.name = "torus-x-interval";
  tx.description = "7-vertex torus times a 10-edge interval";
  tx.generate = [] { return cross_product(torus7(), path_interval(10)); };
  tx.rounds = 100;
  tx.config.max_step = 0;
  tx.expect_some_final_dim_at_most = 2;
  tx.reference_f = FVector{7, 21, 14};
  add(tx);

  ExperimentPreset gx;
  gx.name = "surface-x-interval";
  gx.description = "genus-2 surface times a 10-edge interval";
  gx.generate = [] { return cross_product(surface_of_genus(2), path_interval(10)); };
  gx.rounds = 10;
  gx.config.max_step = 0;
  gx.expect_some_final_dim_at_most = 2;
  add(gx);

  ExperimentPreset sp;
  sp.name = "sphere-flip-walk";
  sp.description = "octahedron after 200 random edge flips";
  sp.generate = octahedron;
  sp.flip_walk_steps = 200;
  sp.delete_facet = true;
  sp.rounds = 100;
  sp.expect_all_reduced = true;
  add(sp);

  return out;
}

/// File-based preset for inputs supplied by the user (for example the
/// manifold triangulations minus a facet).
inline ExperimentPreset file_preset(const std::filesystem::path& path, bool delete_facet,
                                    std::size_t rounds) {
  ExperimentPreset p;
  p.name = "file:" + path.filename().string();
  p.description = "facet file " + path.string();
  p.input_file = path;
  p.delete_facet = delete_facet;
  p.rounds = rounds;
  return p;
}

inline std::optional<ExperimentPreset> find_preset(const std::string& name) {
  for (auto& p : builtin_presets())
    if (p.name == name) return p;
  return std::nullopt;
}

inline std::vector<std::string> check_expectations(const ExperimentPreset& p,
                                                   const BatchReport& b) {
  std::vector<std::string> fails;
  const auto s = b.summary();
  if (p.expect_all_reduced && s.successes != s.rounds)
    fails.push_back("expected every round to reach a point; " + std::to_string(s.successes) +
                    "/" + std::to_string(s.rounds) + " did");
  if (p.expect_some_reduced && s.successes == 0)
    fails.push_back("expected at least one round to reach a point; none did");
  if (p.expect_min_expansions_at_most && s.min_expansions > *p.expect_min_expansions_at_most)
    fails.push_back("expected min expansions <= " +
                    std::to_string(*p.expect_min_expansions_at_most) + ", got " +
                    std::to_string(s.min_expansions));
  if (p.expect_some_final_dim_at_most) {
    bool any = false;
    for (const auto& r : b.results)
      if (static_cast<int>(r.report.final_f.size()) - 1 <= *p.expect_some_final_dim_at_most)
        any = true;
    if (!any)
      fails.push_back("expected some round to end in dimension <= " +
                      std::to_string(*p.expect_some_final_dim_at_most));
  }
  return fails;
}

inline PresetOutcome run_preset(const ExperimentPreset& p, const BatchOptions& opts = {},
                                RunLog* log = nullptr) {
  PresetOutcome out;
  out.input = resolve_input(p, p.config.seed);
  out.batch = rsht_batch(out.input, p.rounds, p.config, opts);
  out.failures = check_expectations(p, out.batch);
  if (log) log->append(p.name, out.batch);
  return out;
}

}  // namespace rsht
