#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "wormkit/errors.hpp"
#include "wormkit_cli/commands.hpp"
#include "wormkit_cli/config.hpp"
#include "wormkit_cli/report.hpp"

using namespace wormkit;
using namespace wormkit::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wormkit_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST(Config, DefaultsAndNesting) {
  const ExperimentConfig cfg = config_from_text(R"({
    "command": "muntz",
    "worm": {"mu": 2.0, "c0": 0.5},
    "quad": {"radial_nodes": 40, "seed": 9},
    "params": {"sigma": [0.3, 0.1], "n_values": [1, 2]},
    "format": "json"
  })");
  EXPECT_EQ(cfg.command, Command::kMuntz);
  EXPECT_EQ(cfg.mu, 2.0);
  EXPECT_EQ(cfg.c0, 0.5);
  EXPECT_EQ(cfg.quad.radial_nodes, 40);
  EXPECT_EQ(cfg.quad.angular_nodes, QuadConfig{}.angular_nodes);
  EXPECT_EQ(cfg.quad.seed, 9u);
  EXPECT_EQ(cfg.params.sigma, cplx(0.3, 0.1));
  EXPECT_EQ(cfg.params.n_values, (std::vector<int>{1, 2}));
  EXPECT_EQ(cfg.format, Format::kJson);
}

TEST(Config, UnknownKeysAreRejectedWithPath) {
  try {
    config_from_text(R"({"worm": {"mu": 1, "radius": 2}})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "worm.radius");
  }
  try {
    // k_max belongs to bessel-defect, not muntz.
    config_from_text(R"({"command": "muntz", "params": {"k_max": 3}})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "params.k_max");
  }
  EXPECT_THROW(config_from_text(R"({"colour": 1})"), ValidationError);
}

TEST(Config, TypeErrorsNameTheField) {
  try {
    config_from_text(R"({"quad": {"radial_nodes": "many"}})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "quad.radial_nodes");
  }
  try {
    config_from_text(R"({"command": "gram", "params": {"basis": [{"ell": 1, "alpha": 2}]}})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "params.basis[0]");
  }
}

TEST(Config, SyntaxErrorReportsLine) {
  try {
    config_from_text("{\n  \"command\": \"verify\",\n  oops\n}");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, CommandOverrideAppliesBeforeParamCheck) {
  const ExperimentConfig cfg =
      config_from_text(R"({"params": {"k_max": 60}})", Command::kBesselDefect);
  EXPECT_EQ(cfg.command, Command::kBesselDefect);
  EXPECT_EQ(cfg.params.k_max, 60);
}

TEST(Config, ValidateChecksWormAndQuad) {
  ExperimentConfig cfg;
  cfg.mu = -1.0;
  try {
    cfg.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "WormParams.mu");
  }
  cfg = ExperimentConfig{};
  cfg.quad.s_nodes = 1;
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(Config, DefaultsFillEmptyLists) {
  ExperimentConfig cfg;
  cfg.command = Command::kBesselDefect;
  apply_defaults(cfg);
  EXPECT_EQ(cfg.params.m_values.size(), 5u);
  EXPECT_EQ(cfg.params.j_values.size(), 5u);
}

TEST(Report, CsvQuotingAndNumbers) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0 / 0.0), "inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
}

TEST(Report, CsvAndJsonShapes) {
  Report r;
  r.command = "demo";
  r.claim = "x";
  r.columns = {"name", "value", "pass"};
  r.add_row({std::string("a,1"), 0.5, true});
  r.add_row({std::string("b"), 1.0 / 0.0, false});
  EXPECT_FALSE(r.all_pass());
  EXPECT_THROW(r.add_row({1LL}), std::logic_error);

  std::ostringstream csv;
  write_csv(r, csv);
  EXPECT_EQ(csv.str(),
            "# meta: {\"command\":\"demo\",\"claim\":\"x\"}\n"
            "name,value,pass\n"
            "\"a,1\",0.5,true\n"
            "b,inf,false\n");

  std::ostringstream js;
  write_json(r, js);
  const auto doc = nlohmann::json::parse(js.str());
  EXPECT_EQ(doc["meta"]["command"], "demo");
  ASSERT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["rows"][0]["value"], 0.5);
  EXPECT_EQ(doc["rows"][1]["value"], "inf");
}

TEST(Cli, NegativeMuExitsOneNamingField) {
  const Outcome o = invoke({"verify", "--mu", "-1"});
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_NE(o.err.find("WormParams.mu"), std::string::npos) << o.err;
}

TEST(Cli, BadConfigFileExitsOne) {
  const std::string path = temp_path("bad.json");
  write_file(path, R"({"command": "verify", "worm": {"mu": -1}})");
  const Outcome o = invoke({"--config", path});
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_NE(o.err.find("WormParams.mu"), std::string::npos);
  EXPECT_EQ(invoke({"no-such-command"}).code, kExitValidation);
  EXPECT_EQ(invoke({"verify", "--bogus"}).code, kExitValidation);
}

TEST(Cli, FlagsOverrideConfig) {
  const std::string path = temp_path("pi2.json");
  write_file(path, R"({"command": "pi2-series", "params": {"m_values": [0, 1], "n_terms": 10}})");
  const Outcome o = invoke({"--config", path, "--n-terms", "20000", "--format", "json"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  EXPECT_EQ(doc["meta"]["inputs"]["params"]["n_terms"], 20000);
  EXPECT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["rows"][0]["pass"], true);
}

TEST(Cli, NumericalFailureExitsTwo) {
  // Too few nodes for an oscillatory disk integrand: the oracle cannot converge.
  const std::string path = temp_path("hard.json");
  write_file(path, R"({
    "command": "inner-product",
    "quad": {"radial_nodes": 4, "angular_nodes": 4, "rel_tol": 1e-12, "abs_tol": 1e-14},
    "params": {"space": "disk", "pairs": [{"a": {"alpha": [-0.5, 2]}, "b": {"alpha": [-0.5, -2]}}]}
  })");
  const Outcome o = invoke({"--config", path});
  EXPECT_EQ(o.code, kExitNumerical);
  EXPECT_NE(o.err.find("quad_disk_inner"), std::string::npos) << o.err;
}

TEST(Cli, OrthogonalityEvenSystem) {
  const Outcome o =
      invoke({"orthogonality-check", "--mu", "3.14159265", "--c0", "0", "--j", "0", "--even"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("\"parity\":\"even\""), std::string::npos);
  // 7 even indices in [0, 12] give 21 pairs, all predicted orthogonal.
  EXPECT_NE(o.out.find("\"orthogonal_pairs\":21"), std::string::npos) << o.out.substr(0, 600);
}

TEST(Cli, ReportsAreByteIdentical) {
  const std::vector<std::string> args = {"muntz", "--format", "json"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, WritesOutputFile) {
  const std::string path = temp_path("out.csv");
  std::filesystem::remove(path);
  const Outcome o = invoke({"not-a-basis", "--n-max", "4", "--output", path});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::ifstream in(path);
  std::string meta, header, first;
  std::getline(in, meta);
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(meta.rfind("# meta: ", 0), 0u);
  EXPECT_EQ(header, "n,residual,condition_estimate,ill_conditioned");
  EXPECT_EQ(first.rfind("1,0.801187", 0), 0u) << first;
}

TEST(Cli, EveryCommandRuns) {
  for (const char* c : {"inner-product", "gram", "bessel-defect", "completeness"}) {
    const Outcome o = invoke({c, "--n-max", "4", "--m", "0"});
    EXPECT_EQ(o.code, kExitOk) << c << ": " << o.err;
  }
}

TEST(Cli, HelpExitsZero) {
  const Outcome o = invoke({"--help"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("--config"), std::string::npos);
}
