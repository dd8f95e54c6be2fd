#pragma once

// JSON instance files and solution reports.
//
//   {"dim": 2, "variant": "min-max",
//    "tp1": {"generators": [["-3", "-1"], ...]}, "tp2": {...},
//    "a": ["0", "0"], "b": ["0", "0"]}
//
// Coordinates are decimal strings (or integers); "-inf" is BOTTOM.
// Binary floating-point numbers are rejected.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tropbilevel/bilevel.hpp"

namespace tropbilevel::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

BilevelInstance parse_instance(std::string_view text, const std::string& source = "<input>");
BilevelInstance load_instance(const std::filesystem::path& path);

nlohmann::ordered_json instance_to_json(const BilevelInstance& inst);

/// "(-3, -1)", "-3,-1", "[-3, -1]" or with "-inf" entries.
TropVector parse_vector(std::string_view text);

nlohmann::ordered_json vector_to_json(const TropVector& v);
nlohmann::ordered_json certificate_to_json(const Certificate& c);
nlohmann::ordered_json solution_to_json(const BilevelInstance& inst, const BilevelSolution& s);

std::string describe_certificate(const Certificate& c);

}  // namespace tropbilevel::io
