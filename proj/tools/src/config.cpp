#include "wormkit_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wormkit/errors.hpp"

namespace wormkit::cli {

using nlohmann::json;

namespace {

struct CommandEntry {
  Command command;
  const char* name;
};

constexpr CommandEntry kCommands[] = {
    {Command::kInnerProduct, "inner-product"},
    {Command::kGram, "gram"},
    {Command::kOrthogonalityCheck, "orthogonality-check"},
    {Command::kBesselDefect, "bessel-defect"},
    {Command::kPi2Series, "pi2-series"},
    {Command::kMuntz, "muntz"},
    {Command::kNotABasis, "not-a-basis"},
    {Command::kCompleteness, "completeness"},
    {Command::kVerify, "verify"},
};

// Keys of the "params" object accepted by each command.
std::set<std::string> param_keys(Command c) {
  switch (c) {
    case Command::kInnerProduct:
      return {"pairs", "space", "oracle"};
    case Command::kGram:
      return {"target", "basis"};
    case Command::kOrthogonalityCheck:
      return {"j_values", "ell_max", "parity"};
    case Command::kBesselDefect:
      return {"m_values", "j_values", "k_max"};
    case Command::kPi2Series:
      return {"m_values", "n_terms"};
    case Command::kMuntz:
      return {"sigma", "a", "c0", "b", "n_values"};
    case Command::kNotABasis:
      return {"j", "n_max"};
    case Command::kCompleteness:
      return {"j", "n_max", "parity", "targets"};
    case Command::kVerify:
      return {};
  }
  return {};
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw ValidationError(path.empty() ? key : path + "." + key,
                            "unknown key");
    }
  }
}

double get_double(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "expected a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ValidationError(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < -1'000'000'000LL || x > 1'000'000'000LL) {
    throw ValidationError(path, "integer out of range");
  }
  return static_cast<int>(x);
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError(path, "expected a string");
  return v.get<std::string>();
}

// A complex number is a bare number or a [re, im] pair.
cplx get_complex(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ValidationError(path, "expected a number or [re, im]");
}

std::vector<int> get_int_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_int(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

SpecRef get_spec(const json& v, const std::string& path) {
  reject_unknown(v, {"ell", "alpha", "j"}, path);
  SpecRef s;
  if (v.contains("ell") == v.contains("alpha")) {
    throw ValidationError(path, "give exactly one of ell or alpha");
  }
  if (v.contains("ell")) s.ell = get_int(v["ell"], path + ".ell");
  if (v.contains("alpha")) s.alpha = get_complex(v["alpha"], path + ".alpha");
  if (v.contains("j")) s.j = get_int(v["j"], path + ".j");
  return s;
}

std::vector<SpecRef> get_spec_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError(path, "expected an array");
  std::vector<SpecRef> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_spec(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

SpanParity get_parity(const json& v, const std::string& path) {
  const std::string s = get_string(v, path);
  if (s == "all") return SpanParity::kAll;
  if (s == "even") return SpanParity::kEven;
  if (s == "odd") return SpanParity::kOdd;
  throw ValidationError(path, "expected all, even or odd");
}

const char* parity_name(SpanParity p) {
  switch (p) {
    case SpanParity::kAll: return "all";
    case SpanParity::kEven: return "even";
    case SpanParity::kOdd: return "odd";
  }
  return "all";
}

const char* oracle_name(OracleChoice o) {
  switch (o) {
    case OracleChoice::kNone: return "none";
    case OracleChoice::kQuad: return "quad";
    case OracleChoice::kMc: return "mc";
    case OracleChoice::kBoth: return "both";
  }
  return "quad";
}

void read_params(const json& p, Command command, CommandParams& out) {
  reject_unknown(p, param_keys(command), "params");
  for (const auto& [key, v] : p.items()) {
    const std::string path = "params." + key;
    if (key == "pairs") {
      if (!v.is_array()) throw ValidationError(path, "expected an array");
      out.pairs.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string ip = path + "[" + std::to_string(i) + "]";
        reject_unknown(v[i], {"a", "b"}, ip);
        if (!v[i].contains("a") || !v[i].contains("b")) {
          throw ValidationError(ip, "needs both a and b");
        }
        out.pairs.push_back({get_spec(v[i]["a"], ip + ".a"),
                             get_spec(v[i]["b"], ip + ".b")});
      }
    } else if (key == "space") {
      const std::string s = get_string(v, path);
      if (s != "worm" && s != "disk") {
        throw ValidationError(path, "expected worm or disk");
      }
      out.disk = s == "disk";
    } else if (key == "oracle") {
      const std::string s = get_string(v, path);
      if (s == "none") out.oracle = OracleChoice::kNone;
      else if (s == "quad") out.oracle = OracleChoice::kQuad;
      else if (s == "mc") out.oracle = OracleChoice::kMc;
      else if (s == "both") out.oracle = OracleChoice::kBoth;
      else throw ValidationError(path, "expected none, quad, mc or both");
    } else if (key == "target") {
      out.target = get_spec(v, path);
    } else if (key == "basis") {
      out.basis = get_spec_list(v, path);
    } else if (key == "targets") {
      out.targets = get_spec_list(v, path);
    } else if (key == "j_values") {
      out.j_values = get_int_list(v, path);
    } else if (key == "m_values") {
      out.m_values = get_int_list(v, path);
    } else if (key == "n_values") {
      out.n_values = get_int_list(v, path);
    } else if (key == "ell_max") {
      out.ell_max = get_int(v, path);
    } else if (key == "parity") {
      out.parity = get_parity(v, path);
    } else if (key == "k_max") {
      out.k_max = get_int(v, path);
    } else if (key == "n_terms") {
      out.n_terms = get_int(v, path);
    } else if (key == "sigma") {
      out.sigma = get_complex(v, path);
    } else if (key == "a") {
      out.a = get_double(v, path);
    } else if (key == "c0") {
      out.muntz_c0 = get_double(v, path);
    } else if (key == "b") {
      out.b = get_double(v, path);
    } else if (key == "j") {
      out.j = get_int(v, path);
    } else if (key == "n_max") {
      out.n_max = get_int(v, path);
    }
  }
}

void read_quad(const json& q, QuadConfig& out) {
  reject_unknown(q,
                 {"radial_nodes", "angular_nodes", "s_nodes", "max_subdivision",
                  "abs_tol", "rel_tol", "mc_samples", "seed"},
                 "quad");
  for (const auto& [key, v] : q.items()) {
    const std::string path = "quad." + key;
    if (key == "radial_nodes") out.radial_nodes = get_int(v, path);
    else if (key == "angular_nodes") out.angular_nodes = get_int(v, path);
    else if (key == "s_nodes") out.s_nodes = get_int(v, path);
    else if (key == "max_subdivision") out.max_subdivision = get_int(v, path);
    else if (key == "abs_tol") out.abs_tol = get_double(v, path);
    else if (key == "rel_tol") out.rel_tol = get_double(v, path);
    else if (key == "mc_samples") {
      if (!v.is_number_integer()) throw ValidationError(path, "expected an integer");
      out.mc_samples = v.get<long>();
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) {
        throw ValidationError(path, "expected a non-negative integer");
      }
      out.seed = v.get<std::uint64_t>();
    }
  }
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

nlohmann::ordered_json spec_json(const SpecRef& s) {
  nlohmann::ordered_json o;
  if (s.ell) o["ell"] = *s.ell;
  else o["alpha"] = complex_json(s.alpha);
  o["j"] = s.j;
  return o;
}

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

}  // namespace

PowerSpec SpecRef::resolve(const WormParams& params) const {
  if (ell) return wormkit::resolve({*ell, j}, params);
  return {alpha, j};
}

const char* command_name(Command c) {
  for (const auto& e : kCommands) {
    if (e.command == c) return e.name;
  }
  return "verify";
}

Command parse_command(const std::string& name) {
  for (const auto& e : kCommands) {
    if (name == e.name) return e.command;
  }
  throw ValidationError("command", "unknown command '" + name + "'");
}

void ExperimentConfig::validate() const {
  (void)worm();
  quad.validate();
  const CommandParams& p = params;
  require(p.ell_max >= 1 && p.ell_max <= 200, "params.ell_max", "must be in [1, 200]");
  require(p.k_max >= 1 && p.k_max <= 100000, "params.k_max", "must be in [1, 100000]");
  require(p.n_terms >= 0 && p.n_terms <= 100000000, "params.n_terms",
          "must be in [0, 1e8]");
  require(p.n_max >= 0 && p.n_max <= 200, "params.n_max", "must be in [0, 200]");
  for (int m : p.m_values) require(m >= 0, "params.m_values", "entries must be >= 0");
  for (int n : p.n_values) require(n >= -1, "params.n_values", "entries must be >= -1");
  if (command == Command::kBesselDefect) {
    for (int m : p.m_values) {
      require(p.k_max >= m + 2, "params.k_max", "must be >= m + 2 for every m");
    }
  }
  if (command == Command::kNotABasis) {
    require(p.n_max >= 1, "params.n_max", "must be >= 1");
  }
  if (command == Command::kMuntz) {
    require(p.a > 0.0 && p.a < 1.0, "params.a", "must satisfy 0 < a < 1");
    require(p.sigma.real() > -1.0, "params.sigma", "Re(sigma) must be > -1");
    require(std::isfinite(p.b), "params.b", "must be finite");
  }
}

void apply_defaults(ExperimentConfig& cfg) {
  CommandParams& p = cfg.params;
  switch (cfg.command) {
    case Command::kInnerProduct:
      if (p.pairs.empty()) {
        if (p.disk) {
          p.pairs.push_back({{std::nullopt, {0.0, 0.0}, 0}, {std::nullopt, {0.0, 0.0}, 0}});
          p.pairs.push_back({{std::nullopt, {1.0, 0.0}, 0}, {std::nullopt, {1.0, 0.0}, 0}});
        } else {
          p.pairs.push_back({{0, {}, 0}, {0, {}, 0}});
          p.pairs.push_back({{0, {}, 0}, {1, {}, 0}});
        }
      }
      break;
    case Command::kGram:
      if (!p.target) p.target = SpecRef{0, {}, p.j};
      if (p.basis.empty()) {
        for (int ell = 1; ell <= 4; ++ell) p.basis.push_back({ell, {}, p.target->j});
      }
      break;
    case Command::kOrthogonalityCheck:
      if (p.j_values.empty()) p.j_values = {-3, -2, -1, 0, 1, 2, 3};
      break;
    case Command::kBesselDefect:
      if (p.m_values.empty()) p.m_values = {0, 1, 2, 3, 4};
      if (p.j_values.empty()) p.j_values = {-2, -1, 0, 1, 2};
      break;
    case Command::kPi2Series:
      if (p.m_values.empty()) p.m_values = {0, 1, 2, 3, 4, 5};
      break;
    case Command::kMuntz:
      if (p.n_values.empty()) p.n_values = {1, 2, 4, 8, 16};
      if (!p.muntz_c0) p.muntz_c0 = cfg.c0;
      break;
    case Command::kCompleteness:
      if (p.targets.empty()) {
        // Off-grid exponent halfway between H_{0,j} and H_{1,j}.
        const double nu = cfg.worm().nu();
        p.targets.push_back({std::nullopt, {cfg.c0 + 0.5 * nu, (p.j + 1) / 2.0}, p.j});
      }
      break;
    case Command::kNotABasis:
    case Command::kVerify:
      break;
  }
}

ExperimentConfig config_from_json(const json& doc, std::optional<Command> command) {
  reject_unknown(doc, {"command", "worm", "quad", "params", "output_path", "format"},
                 "");
  ExperimentConfig cfg;
  if (doc.contains("command")) {
    cfg.command = parse_command(get_string(doc["command"], "command"));
  }
  if (command) cfg.command = *command;
  if (doc.contains("worm")) {
    const json& w = doc["worm"];
    reject_unknown(w, {"mu", "c0"}, "worm");
    if (w.contains("mu")) cfg.mu = get_double(w["mu"], "worm.mu");
    if (w.contains("c0")) cfg.c0 = get_double(w["c0"], "worm.c0");
  }
  if (doc.contains("quad")) read_quad(doc["quad"], cfg.quad);
  if (doc.contains("params")) read_params(doc["params"], cfg.command, cfg.params);
  if (doc.contains("output_path")) {
    cfg.output_path = get_string(doc["output_path"], "output_path");
  }
  if (doc.contains("format")) {
    const std::string f = get_string(doc["format"], "format");
    if (f == "csv") cfg.format = Format::kCsv;
    else if (f == "json") cfg.format = Format::kJson;
    else throw ValidationError("format", "expected csv or json");
  }
  return cfg;
}

ExperimentConfig config_from_text(const std::string& text,
                                  std::optional<Command> command) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError("config", "syntax error at line " + std::to_string(line) +
                                        ", column " + std::to_string(col));
  }
  return config_from_json(doc, command);
}

ExperimentConfig config_from_file(const std::string& path,
                                  std::optional<Command> command) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("config", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_text(buf.str(), command);
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json o;
  o["command"] = command_name(cfg.command);
  o["worm"] = {{"mu", cfg.mu}, {"c0", cfg.c0}};
  o["quad"] = {{"radial_nodes", cfg.quad.radial_nodes},
               {"angular_nodes", cfg.quad.angular_nodes},
               {"s_nodes", cfg.quad.s_nodes},
               {"max_subdivision", cfg.quad.max_subdivision},
               {"abs_tol", cfg.quad.abs_tol},
               {"rel_tol", cfg.quad.rel_tol},
               {"mc_samples", cfg.quad.mc_samples},
               {"seed", cfg.quad.seed}};
  const CommandParams& p = cfg.params;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  auto specs = [](const std::vector<SpecRef>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& s : v) a.push_back(spec_json(s));
    return a;
  };
  switch (cfg.command) {
    case Command::kInnerProduct: {
      nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
      for (const auto& pr : p.pairs) {
        pairs.push_back({{"a", spec_json(pr.a)}, {"b", spec_json(pr.b)}});
      }
      params["pairs"] = pairs;
      params["space"] = p.disk ? "disk" : "worm";
      params["oracle"] = oracle_name(p.oracle);
      break;
    }
    case Command::kGram:
      if (p.target) params["target"] = spec_json(*p.target);
      params["basis"] = specs(p.basis);
      break;
    case Command::kOrthogonalityCheck:
      params["j_values"] = p.j_values;
      params["ell_max"] = p.ell_max;
      params["parity"] = parity_name(p.parity);
      break;
    case Command::kBesselDefect:
      params["m_values"] = p.m_values;
      params["j_values"] = p.j_values;
      params["k_max"] = p.k_max;
      break;
    case Command::kPi2Series:
      params["m_values"] = p.m_values;
      params["n_terms"] = p.n_terms;
      break;
    case Command::kMuntz:
      params["sigma"] = {p.sigma.real(), p.sigma.imag()};
      params["a"] = p.a;
      params["c0"] = p.muntz_c0.value_or(cfg.c0);
      params["b"] = p.b;
      params["n_values"] = p.n_values;
      break;
    case Command::kNotABasis:
      params["j"] = p.j;
      params["n_max"] = p.n_max;
      break;
    case Command::kCompleteness:
      params["j"] = p.j;
      params["n_max"] = p.n_max;
      params["parity"] = parity_name(p.parity);
      params["targets"] = specs(p.targets);
      break;
    case Command::kVerify:
      break;
  }
  o["params"] = params;
  o["format"] = cfg.format == Format::kCsv ? "csv" : "json";
  return o;
}

}  // namespace wormkit::cli
