#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "algebra_file.hpp"
#include "cli.hpp"
#include "cli_golden.hpp"
#include "dgla/errors.hpp"

using namespace dgla;
using namespace dgla::cli;
using namespace dgla::testing::golden;

TEST(CliCorpus, EveryFileRoundTrips) {
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    std::ifstream in(entry.path());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const AlgebraFile f = parse_algebra(json::parse(text));
    EXPECT_EQ(to_json(f).dump(2) + "\n", text) << entry.path();
    // and the normalized form parses back to the same thing
    const AlgebraFile g = parse_algebra(json::parse(to_json(f).dump()));
    EXPECT_EQ(to_json(g), to_json(f)) << entry.path();
  }
  EXPECT_EQ(seen, 9u);
}

TEST(CliCorpus, EveryFileChecks) {
  for (const auto& entry : fs::directory_iterator(corpus)) {
    const Outcome o = invoke({"check", entry.path().string(), "--json"});
    EXPECT_EQ(o.code, 0) << entry.path() << o.err;
    EXPECT_TRUE(json::parse(o.out).at("valid").get<bool>());
  }
}

TEST(CliCorpus, NormalizationIsCanonical) {
  // i > j entries and unreduced fractions serialize to i < j, lowest terms
  const json doc = json::parse(R"({"kind": "lie", "dim": 2,
      "structure": [{"i": 1, "j": 0, "k": 1, "value": "-2/2"}]})");
  const ordered_json out = to_json(parse_algebra(doc));
  EXPECT_EQ(out["structure"].dump(), R"([{"i":0,"j":1,"k":1,"value":"1"}])");
}

TEST(CliContract, RigiditySo3) {
  const Outcome o = invoke({"rigidity", "corpus/so3.json", "--json"});
  ASSERT_EQ(o.code, 0);
  const json j = json::parse(o.out);
  EXPECT_EQ(j.at("passes"), true);
  EXPECT_EQ(j.at("H2"), 0);
  EXPECT_EQ(j.at("tangent_dim"), 3);
}

TEST(CliContract, BorelSubalgebraMatchesExactOracle) {
  // H^2_CE(b, sl2/b): sl2/b is 1-dimensional, and the exact route gives 0
  const Outcome o = invoke({"stability", "corpus/sl2_borel.json", "--mode", "subalgebra", "--json"});
  ASSERT_EQ(o.code, 0);
  const json j = json::parse(o.out);
  const Outcome c = invoke({"cohomology", "corpus/sl2_borel.json", "--module", "quotient:borel", "--json"});
  const json k = json::parse(c.out);
  for (const char* h : {"H0", "H1", "H2"}) EXPECT_EQ(j.at(h), k.at(h)) << h;
  EXPECT_EQ(j.at("H2"), 0);
  EXPECT_EQ(j.at("passes"), true);
}

TEST(CliContract, ExitCodesAndLocations) {
  const std::vector<std::tuple<std::string, int, std::string>> files = {
      {"bad_rational.json", 1, "structure[1].value"},
      {"float_value.json", 1, "structure[1].value"},
      {"index_out_of_range.json", 1, "structure[1].k"},
      {"duplicate_entry.json", 1, "structure[1]"},
      {"unknown_kind.json", 1, "kind"},
      {"unexpected_key.json", 1, "unexpected key \"unit\""},
      {"wrong_matrix_shape.json", 1, "matrix"},
      {"not_json.json", 1, "invalid JSON"},
      {"non_jacobi.json", 2, "Jacobi identity fails on basis triple (0,1,2)"},
      {"antisymmetry.json", 2, "structure[0]"},
      {"non_assoc.json", 2, "associativity fails on basis triple (0,0,0)"},
      {"bad_unit.json", 2, "unit: unit fails"},
      {"non_morphism.json", 2, "morphism identity fails on basis pair (0,1)"},
      {"non_closed_subspace.json", 2, "subspaces.ef"},
      {"dependent_subspace.json", 2, "subspaces.dup"},
  };
  for (const auto& [file, code, where] : files) {
    const Outcome text = invoke({"check", "bad/" + file});
    EXPECT_EQ(text.code, code) << file;
    EXPECT_NE(text.err.find(where), std::string::npos) << file << ": " << text.err;
    const Outcome js = invoke({"check", "bad/" + file, "--json"});
    EXPECT_EQ(js.code, code) << file;
    const json j = json::parse(js.out);
    EXPECT_EQ(j.at("valid"), false);
    EXPECT_EQ(j.at("exit_code"), code);
    EXPECT_NE(j.at("error").get<std::string>().find(where), std::string::npos) << file;
  }
  EXPECT_EQ(invoke({"check", "bad/missing.json"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate", "corpus/so3.json"}).code, 1);
  EXPECT_EQ(invoke({"stability", "corpus/so3.json", "--mode", "sideways"}).code, 1);
  EXPECT_EQ(invoke({"stability", "corpus/sl2_borel.json", "--subspace", "nope"}).code, 1);
  EXPECT_EQ(invoke({"cohomology", "corpus/so3.json", "--degrees", "2..1"}).code, 1);
  EXPECT_EQ(invoke({"cohomology", "corpus/so3.json", "--complex", "hochschild"}).code, 1);
  EXPECT_EQ(invoke({"normalize", "corpus/so3.json", "--epsilon", "-1"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({"--json", "rigidity", "corpus/so3.json"}).code, 0);
}

TEST(CliContract, NormalizeReportsGaugeResult) {
  const Outcome o = invoke({"normalize", "corpus/m2k.json", "--perturb-seed", "5", "--epsilon", "1e-3", "--json"});
  ASSERT_EQ(o.code, 0) << o.out;
  const json j = json::parse(o.out);
  EXPECT_EQ(j.at("converged"), true);
  EXPECT_LE(j.at("residual").get<double>(), 1e-9);
  EXPECT_LE(j.at("iterations").get<int>(), 20);
  // g^0 = End(V) for dim V = 4, h^0 = maps killing the unit: codim 4
  EXPECT_EQ(j.at("v").size(), 4u);
  EXPECT_EQ(j.at("x").size(), 16u);

  const Outcome fail = invoke({"normalize", "corpus/heisenberg3.json", "--json"});
  EXPECT_EQ(fail.code, 3);
  EXPECT_EQ(json::parse(fail.out).at("passes"), false);

  const Outcome stuck = invoke({"normalize", "corpus/sl2.json", "--max-iter", "0", "--json"});
  EXPECT_EQ(stuck.code, 4);
  EXPECT_EQ(json::parse(stuck.out).at("converged"), false);
}

TEST(CliContract, NoColorMeansPlainText) {
  ::setenv("NO_COLOR", "1", 1);
  EXPECT_FALSE(color_enabled(true));
  ::setenv("NO_COLOR", "", 1);
  EXPECT_TRUE(color_enabled(true));
  ::unsetenv("NO_COLOR");
  EXPECT_TRUE(color_enabled(true));
  EXPECT_FALSE(color_enabled(false));

  std::ostringstream out, err;
  run({"rigidity", (corpus / "so3.json").string()}, out, err, true);
  EXPECT_NE(out.str().find("\x1b["), std::string::npos);
  std::ostringstream plain, err2;
  run({"rigidity", (corpus / "so3.json").string()}, plain, err2, false);
  EXPECT_EQ(plain.str().find("\x1b["), std::string::npos);
}

TEST(CliGolden, JsonAndTextAgreeNumberForNumber) {
  for (const Case& c : cases())
    for (const auto& m : render_mismatches(c)) ADD_FAILURE() << m;
}

TEST(CliGolden, ReportsMatchGoldenFile) {
  const bool update = std::getenv("DGLA_UPDATE_GOLDEN") != nullptr;
  const ordered_json expected = load_golden();
  ordered_json fresh;
  for (const Case& c : cases()) {
    const auto mismatches = golden_mismatches(expected, c, &fresh);
    if (!update)
      for (const auto& m : mismatches) ADD_FAILURE() << m;
  }
  if (update) {
    std::ofstream out(golden_file);
    out << fresh.dump(2) << "\n";
  }
}
