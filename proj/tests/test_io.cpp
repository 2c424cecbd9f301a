#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rsht/generators.hpp"
#include "rsht/io.hpp"

using namespace rsht;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rsht_test_" + name);
}

}  // namespace

TEST(Parse, CommentsAndBlankLines) {
  std::istringstream in("1 2 3\n# c\n\n2 3 4\n");
  auto k = parse_complex(in);
  EXPECT_EQ(k.f_vector(), (FVector{4, 5, 2}));
}

TEST(Parse, ErrorsCarryTheLine) {
  std::istringstream in("1 2 x\n");
  try {
    parse_complex(in, "bad.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("bad.txt"), std::string::npos);
  }
  std::istringstream dup("1 2 3\n4 4 5\n");
  try {
    parse_complex(dup);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream zero("0 1 2\n");
  EXPECT_THROW(parse_complex(zero), ParseError);
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(parse_complex(empty), ParseError);
}

TEST(Parse, MissingFile) {
  EXPECT_THROW(parse_facet_file("/nonexistent/rsht/file.txt"), std::runtime_error);
}

TEST(Write, RoundTripOnBundledComplexes) {
  for (const auto& n : bundled_complexes()) {
    std::stringstream buf;
    write_facets(buf, n.complex);
    EXPECT_EQ(parse_complex(buf), n.complex) << n.name;
  }
}

TEST(Write, DunceHatIsOneFacetPerLine) {
  std::ostringstream out;
  write_facets(out, dunce_hat8());
  const auto text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 17);
  EXPECT_EQ(text.substr(0, 6), "1 2 4\n");
}

TEST(Write, NormalizeRelabelsConsecutively) {
  auto k = Complex::from_facets(std::vector<std::vector<Vertex>>{{3, 10, 42}, {10, 42, 77}});
  auto n = normalize_labels(k);
  EXPECT_EQ(n.facets(), (std::vector<Simplex>{Simplex{1, 2, 3}, Simplex{2, 3, 4}}));
}

TEST(Write, FileRoundTrip) {
  auto p = temp_path("torus.txt");
  write_facet_file(torus7(), p);
  EXPECT_EQ(parse_facet_file(p), torus7());
  std::filesystem::remove(p);
}

TEST(Reports, CsvHasOneRowPerRound) {
  RshtConfig cfg;
  cfg.seed = 3;
  auto b = rsht_batch(dunce_hat8(), 5, cfg, {1, false});
  std::ostringstream out;
  write_batch_csv(out, b);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "round,expansions,subdivisions,collapses,reduced_to_point,final_f");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",1,1"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 5);
}

TEST(Reports, JsonSummaryIsRecomputable) {
  RshtConfig cfg;
  cfg.seed = 12;
  auto b = rsht_batch(dunce_hat8(), 8, cfg, {2, false});
  auto j = summary_json(b);
  double total = 0;
  for (const auto& r : b.results) total += static_cast<double>(r.report.expansions);
  EXPECT_DOUBLE_EQ(j["expansions"]["mean"].get<double>(), total / 8.0);
  EXPECT_EQ(j["rounds"].get<std::size_t>(), 8u);
  EXPECT_EQ(j["config"]["candidates"], "global");
  auto rj = report_json(b.results[0].report);
  EXPECT_EQ(rj["final_f"], nlohmann::json::array({1}));
}

TEST(Reports, HomologyJson) {
  HomologyProfile h{{0, 0, 0}, {{}, {BigInt(2)}, {}}};
  auto j = homology_json(h);
  EXPECT_TRUE(j["reduced"].get<bool>());
  EXPECT_EQ(j["dimensions"][1]["torsion"], nlohmann::json::array({"2"}));
}

TEST(RunLogFile, AppendReadReplay) {
  auto p = temp_path("log.ndjson");
  std::filesystem::remove(p);
  RshtConfig cfg;
  cfg.seed = 77;
  auto input = dunce_hat8();
  auto b = rsht_batch(input, 4, cfg, {1, false});
  RunLog log(p);
  log.append("dunce-hat", b);
  auto entries = log.read();
  ASSERT_EQ(entries.size(), 4u);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    EXPECT_EQ(entries[i].preset, "dunce-hat");
    EXPECT_EQ(entries[i].seed, b.results[i].seed);
    EXPECT_EQ(entries[i].report.digest, b.results[i].report.digest);
    EXPECT_TRUE(RunLog::replay(input, entries[i]));
  }
  auto tampered = entries[0];
  tampered.report.expansions += 1;
  EXPECT_FALSE(RunLog::replay(input, tampered));
  std::filesystem::remove(p);
}
