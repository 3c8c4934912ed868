#include "cli_support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qsub::cli {

namespace {

double parse_number(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  s = first == std::string::npos ? "" : s.substr(first, s.find_last_not_of(" \t") - first + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::vector<double> parse_values(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty value list");
  std::vector<double> out;
  for (const auto& item : split(spec, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_number(parts[0]));
      continue;
    }
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step, got '" + item + "'");
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double step = parse_number(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("range step must be positive in '" + item + "'");
    if (start > stop + 1e-12) throw std::invalid_argument("range start exceeds stop in '" + item + "'");
    for (long i = 0;; ++i) {
      double v = start + static_cast<double>(i) * step;
      if (v > stop + 1e-12) break;
      if (std::abs(v - stop) <= 1e-12) v = stop;
      out.push_back(v);
      if (i > 10000000) throw std::invalid_argument("range too long: '" + item + "'");
    }
  }
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size()) throw std::logic_error("csv row width does not match header");
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  auto join = [](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
      if (quote) {
        line += '"';
        for (char c : cells[i]) line += c == '"' ? std::string("\"\"") : std::string(1, c);
        line += '"';
      } else {
        line += cells[i];
      }
    }
    return line + '\n';
  };
  std::string out = join(header_);
  for (const auto& r : rows_) out += join(r);
  return out;
}

std::vector<std::string> merge_config(const nlohmann::json& config, const std::vector<std::string>& args,
                                      const std::vector<std::string>& subcommands) {
  if (!config.is_object()) throw std::invalid_argument("config must be a JSON object");
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  auto scalar = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number()) return format_number(v.get<double>());
    throw std::invalid_argument("config values must be strings, numbers, booleans or lists");
  };

  std::vector<std::string> from_config;
  for (const auto& [key, value] : config.items()) {
    if (key == "subcommand") continue;
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) from_config.push_back(flag);
      continue;
    }
    std::string text;
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) text += (i ? "," : "") + scalar(value[i]);
    } else {
      text = scalar(value);
    }
    from_config.push_back(flag);
    from_config.push_back(text);
  }

  std::vector<std::string> out;
  auto sub = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
    return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
  });
  if (sub == args.end()) {
    if (config.contains("subcommand")) out.push_back(config["subcommand"].get<std::string>());
    out.insert(out.end(), from_config.begin(), from_config.end());
    out.insert(out.end(), args.begin(), args.end());
  } else {
    out.insert(out.end(), args.begin(), sub + 1);
    out.insert(out.end(), from_config.begin(), from_config.end());
    out.insert(out.end(), sub + 1, args.end());
  }
  return out;
}

}  // namespace qsub::cli
