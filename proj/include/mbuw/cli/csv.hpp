#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mbuw/distribution.hpp"

namespace mbuw::cli {

/// First-column values of a delimited text file plus the 1-based file line
/// each value came from. Commas or whitespace separate fields, '#' starts a
/// comment and a single non-numeric first record is taken as a header.
struct Column {
  std::vector<double> values;
  std::vector<std::size_t> lines;
};

Column read_column(const std::string& path);

/// read_column, then range checks that report file line numbers: exit-code 3
/// errors list every offending line (up to 20).
SampleData load_sample(const std::string& path);

/// Two numeric columns (alpha, beta), same lexical rules as read_column.
std::vector<std::pair<double, double>> read_pairs(const std::string& path);

}  // namespace mbuw::cli
