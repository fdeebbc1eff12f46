#include "wormkit_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wormkit::cli {

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("report row has " + std::to_string(row.size()) +
                           " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

bool Report::all_pass() const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] != "pass") continue;
    for (const auto& row : rows) {
      if (const bool* b = std::get_if<bool>(&row[c]); b && !*b) return false;
    }
  }
  return true;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

namespace {

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      // JSON has no inf/nan; keep them as the CSV spelling.
      if (!std::isfinite(v)) return format_double(v);
      return v;
    }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json full_meta(const Report& r) {
  nlohmann::ordered_json m;
  m["command"] = r.command;
  m["claim"] = r.claim;
  for (const auto& [k, v] : r.meta.items()) m[k] = v;
  return m;
}

}  // namespace

void write_csv(const Report& r, std::ostream& out) {
  out << "# meta: " << full_meta(r).dump() << '\n';
  for (std::size_t c = 0; c < r.columns.size(); ++c) {
    out << (c ? "," : "") << csv_field(r.columns[c]);
  }
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << csv_field(cell_text(row[c]));
    }
    out << '\n';
  }
}

void write_json(const Report& r, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["meta"] = full_meta(r);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    for (std::size_t c = 0; c < row.size(); ++c) o[r.columns[c]] = cell_json(row[c]);
    doc["rows"].push_back(std::move(o));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace wormkit::cli
