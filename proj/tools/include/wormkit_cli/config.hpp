#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wormkit/diagnostics.hpp"
#include "wormkit/geometry.hpp"
#include "wormkit/monomials.hpp"

namespace wormkit::cli {

enum class Command {
  kInnerProduct,
  kGram,
  kOrthogonalityCheck,
  kBesselDefect,
  kPi2Series,
  kMuntz,
  kNotABasis,
  kCompleteness,
  kVerify,
};

enum class Format { kCsv, kJson };

// Oracle(s) used by inner-product.
enum class OracleChoice { kNone, kQuad, kMc, kBoth };

// A monomial given either by index (H_{ell,j}) or by exponent (F_{alpha,j}).
struct SpecRef {
  std::optional<int> ell;
  cplx alpha{0.0, 0.0};
  int j = 0;

  PowerSpec resolve(const WormParams& params) const;
};

struct PairRef {
  SpecRef a;
  SpecRef b;
};

// Command-specific parameters. Every command reads only the keys it lists in
// docs/config.md; the others are rejected at parse time.
struct CommandParams {
  // inner-product
  std::vector<PairRef> pairs;
  bool disk = false;
  OracleChoice oracle = OracleChoice::kQuad;
  // gram
  std::optional<SpecRef> target;
  std::vector<SpecRef> basis;
  // orthogonality-check, bessel-defect
  std::vector<int> j_values;
  int ell_max = 12;
  SpanParity parity = SpanParity::kAll;
  std::vector<int> m_values;
  int k_max = 50;
  // pi2-series
  int n_terms = 10000;
  // muntz
  cplx sigma{0.3, 0.0};
  double a = 0.5;
  std::optional<double> muntz_c0;
  double b = 0.0;
  std::vector<int> n_values;
  // not-a-basis, completeness
  int j = 0;
  int n_max = 24;
  std::vector<SpecRef> targets;
};

struct ExperimentConfig {
  Command command = Command::kVerify;
  double mu = 3.14159265358979323846;
  double c0 = 0.0;
  QuadConfig quad;
  CommandParams params;
  std::string output_path;  // empty: standard output
  Format format = Format::kCsv;

  WormParams worm() const { return WormParams(mu, c0); }
  // Throws ValidationError on the first invalid field.
  void validate() const;
};

const char* command_name(Command c);
// Throws ValidationError("command") for unknown names.
Command parse_command(const std::string& name);

// Builds a config from a parsed document. Unknown keys and wrongly typed
// values throw ValidationError naming the dotted key path. `command`, when
// set, replaces the document's command before params are checked.
ExperimentConfig config_from_json(const nlohmann::json& doc,
                                  std::optional<Command> command = std::nullopt);

// Parses UTF-8 text. Syntax errors throw ValidationError("config") with the
// line and column of the failure.
ExperimentConfig config_from_text(const std::string& text,
                                  std::optional<Command> command = std::nullopt);
ExperimentConfig config_from_file(const std::string& path,
                                  std::optional<Command> command = std::nullopt);

// Fills empty lists and missing targets with the per-command defaults listed
// in docs/config.md.
void apply_defaults(ExperimentConfig& cfg);

// The resolved config as a document; stored in every report's meta block.
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);

}  // namespace wormkit::cli
