#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace wormkit::cli {

using Cell = std::variant<long long, double, std::string, bool>;

// A fixed-column table plus a metadata block (claim, resolved inputs,
// summary). Column sets per command are listed in docs/reports.md.
struct Report {
  std::string command;
  std::string claim;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  // False if any "pass" column holds false.
  bool all_pass() const;
};

// Doubles as %.17g; inf/nan spelled "inf", "-inf", "nan".
std::string format_double(double x);

// RFC-4180 field quoting: quoted only when it contains a comma, quote or line
// break; embedded quotes doubled.
std::string csv_field(const std::string& s);

// "# meta: {...}" first, then the header and one line per row, CRLF-free.
void write_csv(const Report& r, std::ostream& out);
// {"meta": {...}, "rows": [{column: value, ...}, ...]}
void write_json(const Report& r, std::ostream& out);

}  // namespace wormkit::cli
