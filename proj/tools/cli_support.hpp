#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace qsub::cli {

/// Comma-separated items, each a number or an inclusive range start:stop:step.
/// Throws std::invalid_argument on malformed input.
std::vector<double> parse_values(const std::string& spec);

/// %.17g, with "inf"/"nan" spelled out.
std::string format_number(double v);

/// Minimal CSV writer: header first, then rows in call order.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Merges a JSON config object into the argument list. Keys become --key
/// flags (arrays are comma-joined, true booleans become bare flags); keys
/// already given on the command line are skipped. A "subcommand" key is used
/// when no subcommand appears among `args`.
std::vector<std::string> merge_config(const nlohmann::json& config, const std::vector<std::string>& args,
                                      const std::vector<std::string>& subcommands);

}  // namespace qsub::cli
