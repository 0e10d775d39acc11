#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "scaledgauge/config.hpp"
#include "scaledgauge/runner.hpp"

namespace sg = scaledgauge;

namespace {

sg::ErrorKind kind_of(const std::string& text) {
  try {
    (void)sg::parse_config_text(text);
  } catch (const sg::Error& e) {
    return e.kind();
  }
  return sg::ErrorKind::kInvalidArgument;
}

std::string rendered(const std::vector<sg::ExperimentReport>& reports) {
  std::string out;
  for (const auto& r : reports)
    for (const auto& t : r.tables) out += r.name + "/" + t.name() + "\n" + t.render();
  return out;
}

}  // namespace

TEST(Config, RejectsBadInput) {
  for (const char* text : {"", "   \n", "{", "[]", R"({"sede": 1})", R"({"lattice": {"dims": 5}})",
                           R"({"lattice": {"dims": 2, "extent": [8, 8], "spacing": -1}})",
                           R"({"field": {"kind": "monopole"}})", R"({"scales": [1, 0]})", R"({"workers": 0})",
                           R"({"delta_series": [0.1]})", R"({"couplings": {"g_I": 0}})", R"({"lagrangian": "proca"})",
                           R"({"tolerances": {"slop": 1}})", R"({"anchors": [[9, 9]]})", R"({"seed": "x"})",
                           R"({"expect_nonintegrable": 1})"}) {
    EXPECT_EQ(kind_of(text), sg::ErrorKind::kConfig) << text;
  }
  EXPECT_THROW(sg::load_config("/nonexistent/config.json"), sg::Error);
}

TEST(Config, ParsesOverrides) {
  const auto cfg = sg::parse_config_text(R"({
    "seed": 7, "workers": 3,
    "lattice": {"dims": 3, "extent": [4, 5, 6], "spacing": 0.2, "boundary": "clamped"},
    "field": {"kind": "vortex", "vortex_strength": 0.2},
    "couplings": {"g_R": 0.1, "g_I": 0.2, "g": 0.3, "mass": 0.4, "lambda": 0.5},
    "tolerances": {"slope": 0.95},
    "lagrangian": "dirac", "expect_nonintegrable": true, "output": "elsewhere"})");
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.workers, 3);
  EXPECT_EQ(cfg.lattice.dims, 3);
  EXPECT_EQ(cfg.lattice.extent[2], 6);
  EXPECT_EQ(cfg.lattice.boundary, sg::Boundary::kClamped);
  EXPECT_EQ(cfg.field_kind, sg::FieldKind::kVortex);
  EXPECT_EQ(cfg.field.vortex_strength, 0.2);
  EXPECT_EQ(cfg.couplings.g_i, 0.2);
  EXPECT_EQ(cfg.tol.slope, 0.95);
  EXPECT_EQ(cfg.tol.axiom, 1e-9);
  EXPECT_EQ(cfg.lagrangian, sg::LagrangianKind::kDirac);
  EXPECT_TRUE(cfg.expect_nonintegrable);
  EXPECT_EQ(cfg.output, "elsewhere");

  const auto d = sg::parse_config_text("{}");
  EXPECT_EQ(d.seed, sg::ExperimentConfig{}.seed);
  EXPECT_EQ(d.delta_series.size(), 4u);
}

TEST(Config, FieldSeedDerivesFromRunSeed) {
  auto a = sg::parse_config_text(R"({"seed": 1, "field": {"kind": "seeded-random"}})");
  auto b = sg::parse_config_text(R"({"seed": 2, "field": {"kind": "seeded-random"}})");
  EXPECT_NE(a.resolved_field().seed, b.resolved_field().seed);
  EXPECT_FALSE(a.make_field() == b.make_field());
  auto c = sg::parse_config_text(R"({"seed": 2, "field": {"kind": "seeded-random", "seed": 5}})");
  EXPECT_EQ(c.resolved_field().seed, 5u);
}

TEST(Runner, SubcommandSelection) {
  EXPECT_EQ(sg::select_experiments("all").size(), 8u);
  EXPECT_EQ(sg::select_experiments("hilbert").size(), 1u);
  EXPECT_THROW(sg::select_experiments("everything"), sg::Error);
  EXPECT_EQ(sg::subcommand_names().back(), "all");

  sg::ExperimentConfig clamped;
  clamped.lattice.boundary = sg::Boundary::kClamped;
  try {
    (void)sg::run_experiments("action", clamped, 1);
    FAIL();
  } catch (const sg::Error& e) {
    EXPECT_EQ(e.kind(), sg::ErrorKind::kConfig);
  }
}

TEST(Runner, AllIsUnionOfSubcommandsAndDeterministic) {
  sg::ExperimentConfig cfg;
  const auto serial = sg::run_experiments("all", cfg, 1);
  const auto parallel = sg::run_experiments("all", cfg, 4);
  EXPECT_EQ(rendered(serial), rendered(parallel));

  std::size_t k = 0;
  for (const auto& entry : sg::experiment_registry()) {
    const auto single = sg::run_experiments(entry.name, cfg, 1);
    ASSERT_EQ(single.size(), 1u);
    ASSERT_EQ(single[0].name, serial[k].name);
    ASSERT_EQ(single[0].checks.size(), serial[k].checks.size());
    for (std::size_t c = 0; c < single[0].checks.size(); ++c) {
      EXPECT_EQ(single[0].checks[c].name, serial[k].checks[c].name);
      EXPECT_EQ(single[0].checks[c].observed, serial[k].checks[c].observed);
      EXPECT_EQ(single[0].checks[c].pass, serial[k].checks[c].pass);
    }
    EXPECT_TRUE(serial[k].passed()) << serial[k].name;
    ++k;
  }
}

TEST(Runner, ExpectedNonintegrableFlipsVerdict) {
  sg::ExperimentConfig cfg;
  cfg.lattice.boundary = sg::Boundary::kClamped;
  cfg.lattice.extent = {4, 4, 1, 1};
  cfg.field_kind = sg::FieldKind::kVortex;
  std::ostringstream log;
  const auto dir = std::filesystem::temp_directory_path() / "scaledgauge-runner-test";
  EXPECT_EQ(sg::run_subcommand("integrability", cfg, dir, 1, log), sg::kExitCheckFailure);
  EXPECT_NE(log.str().find("FAIL"), std::string::npos);
  cfg.expect_nonintegrable = true;
  EXPECT_EQ(sg::run_subcommand("integrability", cfg, dir, 1, log), sg::kExitPass);
  EXPECT_TRUE(std::filesystem::exists(dir / "integrability" / "summary.json"));
  std::filesystem::remove_all(dir);
}

TEST(Report, CsvAndChecks) {
  sg::CsvTable t("x", {"a", "b"});
  t.add_row({"1", "2"});
  EXPECT_THROW(t.add_row({"1"}), sg::Error);
  EXPECT_EQ(t.render(), "a,b\n1,2\n");
  EXPECT_TRUE(sg::make_check("c", 1.0, sg::Relation::kAtMost, 1.0).pass);
  EXPECT_FALSE(sg::make_check("c", 1.0, sg::Relation::kGreater, 1.0).pass);
  EXPECT_FALSE(sg::make_check("c", NAN, sg::Relation::kAtMost, 1.0).pass);
  sg::ExperimentReport r;
  EXPECT_TRUE(r.passed());
  r.check("c", 2.0, sg::Relation::kAtLeast, 3.0);
  EXPECT_FALSE(r.passed());
}
