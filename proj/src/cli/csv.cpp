#include "mbuw/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "mbuw/errors.hpp"

namespace mbuw::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ',' && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i < line.size() && line[i] == ',') ++i;
  }
  return out;
}

bool parse_number(std::string_view field, double& value) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  return ec == std::errc() && ptr == field.data() + field.size();
}

// Calls row(fields, line_number) for every data record.
template <typename Row>
void scan_records(const std::string& path, std::size_t min_fields, Row&& row) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::string raw;
  std::size_t line_no = 0;
  bool seen_record = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    std::vector<double> numbers;
    bool numeric = fields.size() >= min_fields;
    for (std::size_t k = 0; numeric && k < min_fields; ++k) {
      double v = 0.0;
      numeric = parse_number(fields[k], v);
      numbers.push_back(v);
    }
    if (!numeric) {
      if (!seen_record) {
        seen_record = true;
        continue;  // header
      }
      std::ostringstream msg;
      msg << path << ": line " << line_no << ": expected " << min_fields << " numeric field"
          << (min_fields > 1 ? "s" : "") << ", got '" << line << "'";
      throw InputError(msg.str());
    }
    seen_record = true;
    row(numbers, line_no);
  }
  if (in.bad()) throw InputError("error while reading " + path);
}

}  // namespace

Column read_column(const std::string& path) {
  Column col;
  scan_records(path, 1, [&](const std::vector<double>& v, std::size_t line) {
    col.values.push_back(v[0]);
    col.lines.push_back(line);
  });
  if (col.values.empty()) throw InputError(path + ": no data values");
  return col;
}

SampleData load_sample(const std::string& path) {
  const Column col = read_column(path);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < col.values.size(); ++i) {
    const double v = col.values[i];
    if (!(v > 0.0 && v < 1.0)) bad.push_back(i);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << path << ": " << bad.size() << " value" << (bad.size() > 1 ? "s" : "") << " outside (0, 1) on line"
        << (bad.size() > 1 ? "s" : "");
    const std::size_t shown = std::min<std::size_t>(bad.size(), 20);
    for (std::size_t k = 0; k < shown; ++k) {
      msg << (k ? ", " : " ") << col.lines[bad[k]] << " (" << col.values[bad[k]] << ")";
    }
    if (shown < bad.size()) msg << ", ...";
    throw DomainError(msg.str());
  }
  return SampleData(col.values);
}

std::vector<std::pair<double, double>> read_pairs(const std::string& path) {
  std::vector<std::pair<double, double>> out;
  scan_records(path, 2, [&](const std::vector<double>& v, std::size_t) { out.emplace_back(v[0], v[1]); });
  if (out.empty()) throw InputError(path + ": no (alpha, beta) pairs");
  return out;
}

}  // namespace mbuw::cli
