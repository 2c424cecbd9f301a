#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsht/complex.hpp"
#include "rsht/engine.hpp"
#include "rsht/homology.hpp"

namespace rsht {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Facet list: one simplex per line as whitespace separated positive
/// labels. '#' starts a comment; blank lines are skipped.
inline std::vector<Simplex> parse_facets(std::istream& in, const std::string& source = "<input>") {
  std::vector<Simplex> facets;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Vertex> vs;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || tok[0] == '-' || tok[0] == '+')
        throw ParseError(source, lineno, "not a vertex label: '" + tok + "'");
      if (v == 0 || v > std::numeric_limits<Vertex>::max())
        throw ParseError(source, lineno, "vertex label out of range: '" + tok + "'");
      vs.push_back(static_cast<Vertex>(v));
    }
    if (vs.empty()) continue;
    try {
      facets.emplace_back(vs);
    } catch (const TopologyError& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  if (facets.empty()) throw ParseError(source, lineno, "no facets");
  return facets;
}

inline Complex parse_complex(std::istream& in, const std::string& source = "<input>") {
  return Complex::from_facets(parse_facets(in, source));
}

inline Complex parse_facet_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return parse_complex(in, path.string());
}

/// Relabels vertices to 1..n by first appearance in the sorted facet list.
inline Complex normalize_labels(const Complex& k) {
  std::map<Vertex, Vertex> to;
  auto facets = k.facets();
  for (const Simplex& f : facets)
    for (Vertex v : f)
      if (!to.count(v)) to.emplace(v, static_cast<Vertex>(to.size() + 1));
  std::vector<Simplex> out;
  for (const Simplex& f : facets) {
    std::vector<Vertex> vs;
    for (Vertex v : f) vs.push_back(to.at(v));
    out.emplace_back(vs);
  }
  return Complex::from_facets(out);
}

inline void write_facets(std::ostream& out, const Complex& k, bool normalize = false) {
  if (k.empty()) throw TopologyError("write_facets: empty complex");
  const Complex& src = normalize ? normalize_labels(k) : k;
  for (const Simplex& f : src.facets()) out << f.to_string() << '\n';
}

inline void write_facet_file(const Complex& k, const std::filesystem::path& path,
                             bool normalize = false) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_facets(out, k, normalize);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Reports

inline void write_batch_csv(std::ostream& out, const BatchReport& b) {
  out << "round,expansions,subdivisions,collapses,reduced_to_point,final_f\n";
  for (const auto& r : b.results)
    out << r.round << ',' << r.report.expansions << ',' << r.report.subdivisions << ','
        << r.report.collapses << ',' << (r.report.reduced_to_point ? 1 : 0) << ','
        << r.report.final_f.to_string() << '\n';
}

inline const char* to_string(CandidatePolicy p) {
  return p == CandidatePolicy::global ? "global" : "local";
}

inline const char* to_string(CollapsePolicy p) {
  return p == CollapsePolicy::uniform_pair ? "uniform_pair" : "uniform_coface";
}

inline nlohmann::json config_json(const RshtConfig& c) {
  return {{"max_step", c.max_step},
          {"total_expansion_cap", c.total_expansion_cap},
          {"seed", c.seed},
          {"candidates", to_string(c.candidates)},
          {"collapses", to_string(c.collapses)}};
}

inline nlohmann::json report_json(const RunReport& r) {
  return {{"expansions", r.expansions},
          {"subdivisions", r.subdivisions},
          {"collapses", r.collapses},
          {"final_f", r.final_f.counts()},
          {"reduced_to_point", r.reduced_to_point},
          {"cap_hit", r.cap_hit},
          {"digest", r.digest}};
}

inline nlohmann::json summary_json(const BatchReport& b) {
  const auto s = b.summary();
  return {{"rounds", s.rounds},
          {"successes", s.successes},
          {"success_rate", s.success_rate()},
          {"expansions", {{"min", s.min_expansions}, {"max", s.max_expansions},
                          {"mean", s.mean_expansions}}},
          {"subdivisions", {{"min", s.min_subdivisions}, {"max", s.max_subdivisions},
                            {"mean", s.mean_subdivisions}}},
          {"seed", b.config.seed},
          {"config", config_json(b.config)}};
}

inline nlohmann::json homology_json(const HomologyProfile& h) {
  nlohmann::json dims = nlohmann::json::array();
  for (std::size_t i = 0; i < h.betti.size(); ++i) {
    std::vector<std::string> tors;
    for (const auto& t : h.torsion[i]) tors.push_back(t.str());
    dims.push_back({{"dim", i}, {"betti", h.betti[i]}, {"torsion", tors}});
  }
  return {{"reduced", true}, {"dimensions", dims}};
}

// ---------------------------------------------------------------------------
// Run log

/// Append-only newline-delimited JSON log, one record per round.
class RunLog {
 public:
  explicit RunLog(std::filesystem::path path) : path_(std::move(path)) {}

  struct Entry {
    std::string timestamp;
    std::string preset;
    std::uint64_t seed = 0;
    RshtConfig config;
    RunReport report;
  };

  static std::string now_utc() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
  }

  void append(const std::string& preset, const BatchReport& b) {
    std::lock_guard lock(mu_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to " + path_.string());
    const auto ts = now_utc();
    for (const auto& r : b.results) {
      nlohmann::json j = {{"timestamp", ts},   {"preset", preset},
                          {"round", r.round},  {"seed", r.seed},
                          {"config", config_json(b.config)},
                          {"report", report_json(r.report)}};
      out << j.dump() << '\n';
    }
  }

  std::vector<Entry> read() const {
    std::ifstream in(path_);
    if (!in) throw std::runtime_error("cannot read " + path_.string());
    std::vector<Entry> out;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line);
      Entry e;
      e.timestamp = j.at("timestamp").get<std::string>();
      e.preset = j.at("preset").get<std::string>();
      e.seed = j.at("seed").get<std::uint64_t>();
      const auto& c = j.at("config");
      e.config.max_step = c.at("max_step").get<std::size_t>();
      e.config.total_expansion_cap = c.at("total_expansion_cap").get<std::size_t>();
      e.config.seed = c.at("seed").get<std::uint64_t>();
      e.config.candidates = c.at("candidates").get<std::string>() == "local"
                                ? CandidatePolicy::local
                                : CandidatePolicy::global;
      e.config.collapses = c.at("collapses").get<std::string>() == "uniform_coface"
                               ? CollapsePolicy::uniform_coface
                               : CollapsePolicy::uniform_pair;
      const auto& r = j.at("report");
      e.report.expansions = r.at("expansions").get<std::size_t>();
      e.report.subdivisions = r.at("subdivisions").get<std::size_t>();
      e.report.collapses = r.at("collapses").get<std::size_t>();
      e.report.final_f = FVector(r.at("final_f").get<std::vector<std::size_t>>());
      e.report.reduced_to_point = r.at("reduced_to_point").get<bool>();
      e.report.cap_hit = r.at("cap_hit").get<bool>();
      e.report.digest = r.at("digest").get<std::uint64_t>();
      out.push_back(std::move(e));
    }
    return out;
  }

  /// Re-runs a logged round on the same input; true iff the report,
  /// including the move digest, is reproduced.
  static bool replay(const Complex& input, const Entry& e) {
    Complex k = input;
    Rng rng(e.seed);
    RshtConfig cfg = e.config;
    cfg.record_trace = false;
    return rsht_run(k, cfg, rng) == e.report;
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mu_;
};

}  // namespace rsht
