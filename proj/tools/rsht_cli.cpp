// Command-line front end: generators, RSHT batches, homology, flips and
// presets over facet-list files.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rsht/rsht.hpp"

namespace {

using namespace rsht;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

Simplex parse_simplex_arg(const std::string& s) {
  std::istringstream in(s);
  auto facets = parse_facets(in, "<argument>");
  if (facets.size() != 1) throw std::invalid_argument("expected one simplex, got '" + s + "'");
  return facets.front();
}

void emit(const Complex& k, const std::string& out, bool normalize) {
  if (out.empty() || out == "-") {
    write_facets(std::cout, k, normalize);
  } else {
    write_facet_file(k, out, normalize);
  }
}

Complex load(const std::string& path) {
  if (path == "-") return parse_complex(std::cin, "<stdin>");
  return parse_facet_file(path);
}

struct GenerateArgs {
  std::string name;
  int rooms = 2;
  int genus = 1;
  int n = 3;
  int p = 2, q = 1;
  std::string out;
  bool normalize = false;
};

Complex generate(const GenerateArgs& a) {
  if (a.name == "abalone") return abalone();
  if (a.name == "bing-house") return a.rooms == 2 ? bing_house2() : bing_house_k(a.rooms);
  if (a.name == "dunce-hat") return dunce_hat8();
  if (a.name == "torus7") return torus7();
  if (a.name == "octahedron") return octahedron();
  if (a.name == "simplex-boundary") return boundary_of_simplex(a.n);
  if (a.name == "simplex") return simplex_complex(a.n);
  if (a.name == "interval") return path_interval(a.n);
  if (a.name == "circle") return circle(a.n);
  if (a.name == "surface") return surface_of_genus(a.genus);
  if (a.name == "sphere-product") return sphere_product(a.p, a.q);
  throw CLI::ValidationError("generate", "unknown complex '" + a.name + "'");
}

struct BatchArgs {
  std::size_t rounds = 1;
  std::size_t max_step = RshtConfig{}.max_step;
  std::size_t cap = RshtConfig{}.total_expansion_cap;
  std::uint64_t seed = 0;
  std::string policy = "global";
  std::string collapse_policy = "uniform_pair";
  std::string trace;
  std::string csv;
  std::string json;
  std::string log;
  unsigned threads = 0;
};

void add_batch_options(CLI::App* cmd, BatchArgs& a, bool with_defaults) {
  auto* r = cmd->add_option("--rounds", a.rounds, "Number of independent rounds");
  cmd->add_option("--seed", a.seed, "Base seed; round i uses a seed derived from (seed, i)");
  cmd->add_option("--csv", a.csv, "Write the per-round CSV here (default: stdout)");
  cmd->add_option("--json", a.json, "Write the JSON summary here");
  cmd->add_option("--log", a.log, "Append NDJSON run records to this file");
  cmd->add_option("--threads", a.threads, "Worker threads (0: hardware concurrency)");
  if (with_defaults) {
    r->check(CLI::PositiveNumber);
    cmd->add_option("--max-step", a.max_step, "Budget of subdivision steps");
    cmd->add_option("--cap", a.cap, "Cap on expansion plus subdivision steps");
    cmd->add_option("--policy", a.policy, "Candidate policy")
        ->check(CLI::IsMember({"global", "local"}));
    cmd->add_option("--collapse-policy", a.collapse_policy, "Random collapse policy")
        ->check(CLI::IsMember({"uniform_pair", "uniform_coface"}));
    cmd->add_option("--trace", a.trace, "Write every move of every round to this file");
  }
}

RshtConfig make_config(const BatchArgs& a) {
  RshtConfig c;
  c.max_step = a.max_step;
  c.total_expansion_cap = a.cap;
  c.seed = a.seed;
  c.candidates = a.policy == "local" ? CandidatePolicy::local : CandidatePolicy::global;
  c.collapses =
      a.collapse_policy == "uniform_coface" ? CollapsePolicy::uniform_coface : CollapsePolicy::uniform_pair;
  c.record_trace = !a.trace.empty();
  return c;
}

void write_outputs(const BatchArgs& a, const BatchReport& b, const std::string& label) {
  if (a.csv.empty() || a.csv == "-") {
    write_batch_csv(std::cout, b);
  } else {
    std::ofstream out(a.csv);
    if (!out) throw std::runtime_error("cannot write " + a.csv);
    write_batch_csv(out, b);
  }
  if (!a.json.empty()) {
    std::ofstream out(a.json);
    if (!out) throw std::runtime_error("cannot write " + a.json);
    out << summary_json(b).dump(2) << '\n';
  }
  if (!a.trace.empty()) {
    std::ofstream out(a.trace);
    if (!out) throw std::runtime_error("cannot write " + a.trace);
    for (const auto& r : b.results)
      for (const auto& m : r.report.trace)
        out << r.round << ' ' << to_string(m.kind) << ' ' << m.face.to_string() << " | "
            << m.coface.to_string() << '\n';
  }
  if (!a.log.empty()) {
    RunLog log(a.log);
    log.append(label, b);
  }
}

void print_summary(std::ostream& os, const std::string& label, const BatchReport& b) {
  const auto s = b.summary();
  os << label << ": " << s.successes << "/" << s.rounds << " reduced to a point; expansions min "
     << s.min_expansions << " mean " << s.mean_expansions << " max " << s.max_expansions << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"Random simple-homotopy toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a bundled or parametrized complex as a facet list");
  g->add_option("name", gen.name,
                "abalone | bing-house | dunce-hat | torus7 | octahedron | simplex-boundary | "
                "simplex | interval | circle | surface | sphere-product")
      ->required();
  g->add_option("--rooms", gen.rooms, "Rooms for bing-house (2, or >= 3)");
  g->add_option("--genus", gen.genus, "Genus for surface");
  g->add_option("--n", gen.n, "Size parameter for simplex-boundary, simplex, interval, circle");
  g->add_option("--p", gen.p, "First sphere dimension for sphere-product");
  g->add_option("--q", gen.q, "Second sphere dimension for sphere-product");
  g->add_option("-o,--output", gen.out, "Output file (default: stdout)");
  g->add_flag("--normalize", gen.normalize, "Relabel vertices to 1..n");

  std::string input;
  BatchArgs batch;
  auto* r = app.add_subcommand("rsht", "Run RSHT rounds on a facet file and report per-round CSV");
  r->add_option("input", input, "Facet file ('-' for stdin)")->required();
  add_batch_options(r, batch, true);

  std::string fv_input;
  auto* fv = app.add_subcommand("fvector", "Print the f-vector");
  fv->add_option("input", fv_input, "Facet file")->required();

  std::string h_input;
  std::size_t h_limit = kDefaultHomologyFaceLimit;
  auto* h = app.add_subcommand("homology", "Print reduced integral homology as JSON");
  h->add_option("input", h_input, "Facet file")->required();
  h->add_option("--limit", h_limit, "Maximum number of faces");

  std::string fl_input, fl_r, fl_c, fl_out;
  bool fl_list = false;
  auto* fl = app.add_subcommand("flip", "Apply a bistellar flip r -> C, or list admissible flips");
  fl->add_option("input", fl_input, "Facet file")->required();
  fl->add_option("--r", fl_r, "The face r, e.g. \"1 2\"");
  fl->add_option("--c", fl_c, "The complementary face C, e.g. \"3 4\"");
  fl->add_flag("--list", fl_list, "List admissible flips instead");
  fl->add_option("-o,--output", fl_out, "Output file (default: stdout)");

  std::string pa, pb, p_out;
  bool p_norm = false;
  auto* pr = app.add_subcommand("product", "Staircase product triangulation of two complexes");
  pr->add_option("first", pa, "Facet file")->required();
  pr->add_option("second", pb, "Facet file")->required();
  pr->add_option("-o,--output", p_out, "Output file (default: stdout)");
  pr->add_flag("--normalize", p_norm, "Relabel vertices to 1..n");

  std::string ca, cb, c_out;
  auto* cs = app.add_subcommand("connsum", "Connected sum of two closed surfaces");
  cs->add_option("first", ca, "Facet file")->required();
  cs->add_option("second", cb, "Facet file")->required();
  cs->add_option("-o,--output", c_out, "Output file (default: stdout)");

  std::string d_input, d_facet, d_out;
  auto* df = app.add_subcommand("delete-facet", "Remove one top facet (smallest by default)");
  df->add_option("input", d_input, "Facet file")->required();
  df->add_option("--facet", d_facet, "Facet to remove, e.g. \"1 2 3\"");
  df->add_option("-o,--output", d_out, "Output file (default: stdout)");

  std::string preset_name, preset_file;
  bool preset_list = false, preset_delete = false;
  BatchArgs pbatch;
  std::optional<std::size_t> preset_rounds;
  auto* ps = app.add_subcommand("preset", "Run a named experiment and check its expectations");
  ps->add_option("name", preset_name, "Preset name (see --list)");
  ps->add_flag("--list", preset_list, "List presets");
  ps->add_option("--file", preset_file, "Run on a user-supplied facet file instead");
  ps->add_flag("--delete-facet", preset_delete, "With --file: remove a facet first");
  ps->add_option("--rounds", preset_rounds, "Override the preset's round count");
  ps->add_option("--seed", pbatch.seed, "Base seed");
  ps->add_option("--csv", pbatch.csv, "Write the per-round CSV here");
  ps->add_option("--json", pbatch.json, "Write the JSON summary here");
  ps->add_option("--log", pbatch.log, "Append NDJSON run records to this file");
  ps->add_option("--threads", pbatch.threads, "Worker threads (0: hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*g) {
    emit(generate(gen), gen.out, gen.normalize);
    return kOk;
  }
  if (*r) {
    const Complex k = load(input);
    const auto b = rsht_batch(k, batch.rounds, make_config(batch), {batch.threads, false});
    write_outputs(batch, b, "file:" + input);
    if (!batch.csv.empty() && batch.csv != "-") print_summary(std::cout, input, b);
    return kOk;
  }
  if (*fv) {
    std::cout << load(fv_input).f_vector().to_string() << '\n';
    return kOk;
  }
  if (*h) {
    std::cout << homology_json(homology(load(h_input), h_limit)).dump() << '\n';
    return kOk;
  }
  if (*fl) {
    const Complex k = load(fl_input);
    if (fl_list) {
      for (const auto& f : admissible_flips(k))
        std::cout << f.r.to_string() << " -> " << f.complement.to_string() << '\n';
      return kOk;
    }
    if (fl_r.empty() || fl_c.empty()) throw CLI::ValidationError("flip", "need --r and --c, or --list");
    emit(bistellar_flip(k, {parse_simplex_arg(fl_r), parse_simplex_arg(fl_c)}), fl_out, false);
    return kOk;
  }
  if (*pr) {
    emit(cross_product(load(pa), load(pb)), p_out, p_norm);
    return kOk;
  }
  if (*cs) {
    emit(connected_sum(load(ca), load(cb)), c_out, false);
    return kOk;
  }
  if (*df) {
    const Complex k = load(d_input);
    emit(minus_facet(k, d_facet.empty() ? std::nullopt : std::optional(parse_simplex_arg(d_facet))),
         d_out, false);
    return kOk;
  }
  if (*ps) {
    if (preset_list) {
      for (const auto& p : builtin_presets())
        std::cout << p.name << "\t" << p.rounds << " rounds\t" << p.description << '\n';
      return kOk;
    }
    ExperimentPreset p;
    if (!preset_file.empty()) {
      p = file_preset(preset_file, preset_delete, 100);
    } else if (auto found = find_preset(preset_name)) {
      p = *found;
    } else {
      std::cerr << "unknown preset '" << preset_name << "'; see preset --list\n";
      return kUsage;
    }
    if (preset_rounds) p.rounds = *preset_rounds;
    p.config.seed = pbatch.seed;
    std::unique_ptr<RunLog> log;
    if (!pbatch.log.empty()) log = std::make_unique<RunLog>(pbatch.log);
    const auto outcome = run_preset(p, {pbatch.threads, false}, log.get());
    BatchArgs quiet = pbatch;
    quiet.log.clear();
    if (!quiet.csv.empty()) write_outputs(quiet, outcome.batch, p.name);
    else if (!quiet.json.empty()) {
      std::ofstream out(quiet.json);
      out << summary_json(outcome.batch).dump(2) << '\n';
    }
    std::cout << "input f = (" << outcome.input.f_vector().to_string() << ")\n";
    print_summary(std::cout, p.name, outcome.batch);
    for (const auto& f : outcome.failures) std::cout << "EXPECTATION FAILED: " << f << '\n';
    return outcome.ok() ? kOk : kFailed;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
}
